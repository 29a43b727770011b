import math

import numpy as np
import pytest

from fermi_rpa import (
    DomainError,
    ModelParams,
    a_constants,
    assemble_error_budget,
    epsilon_bounds,
    make_potential,
    optimal_kernel_magnitudes,
    particle_number_constant,
    scale_coupling,
)
from fermi_rpa.error_budget import C_SMALL
from fermi_rpa.rpa_delocalized import BogoliubovKernel, optimal_kernel, quadratic_coefficients


def test_c_small_value():
    assert C_SMALL == pytest.approx(4.0 * (9.0 * math.pi / 16.0) ** (2.0 / 3.0), rel=1e-16)


def test_a_constants_zero_potential_counts_support():
    v = make_potential({(1, 0, 0): 0.0})
    a1, a2, a3, a4, a5 = a_constants(v)
    assert (a1, a2, a3, a4) == (0.0, 0.0, 0.0, 0.0)
    assert a5 == 2.0  # two unit modes at |k| = 1


def test_a_constants_single_pair():
    v = make_potential({(1, 0, 0): 1.0})
    a1, *_ = a_constants(v)
    assert a1 == pytest.approx(2.0 * math.log(1.0 + C_SMALL), rel=1e-15)


def test_a_constants_monotone_in_coupling(demo_potential):
    grid = np.linspace(0.1, 2.0, 8)
    prev = None
    for s in grid:
        values = a_constants(scale_coupling(demo_potential, float(s)))
        if prev is not None:
            assert all(b >= a - 1e-15 for a, b in zip(prev, values))
        prev = values


def test_a_constants_domain_error():
    v = make_potential({(1, 0, 0): -0.5})  # 1 + c*V < 0
    with pytest.raises(DomainError):
        a_constants(v)


def test_kernel_zero_potential():
    v = make_potential({(1, 0, 0): 0.0})
    xi = optimal_kernel_magnitudes(v, ModelParams(33))
    assert all(x == 0.0 for x in xi.values.values())


def test_kernel_exponent_identity(demo_potential):
    xi = optimal_kernel_magnitudes(demo_potential, ModelParams(33))
    for k in demo_potential.correlation_support():
        lhs = math.exp(2.0 * abs(xi.value(k)))
        rhs = math.sqrt(1.0 + C_SMALL * demo_potential.value(k))
        assert lhs == pytest.approx(rhs, rel=1e-14)


def test_kernel_exact_backend_shares_minimizer_path(ball7):
    v = make_potential({(1, 0, 0): 1.0})
    xi = optimal_kernel_magnitudes(v, ball7, backend="exact")
    c = quadratic_coefficients(ball7, v, (1, 0, 0), backend="exact")
    assert xi.value((1, 0, 0)) == optimal_kernel(c)


def test_particle_number_constant_values():
    zero = BogoliubovKernel({(1, 0, 0): 0.0, (-1, 0, 0): 0.0})
    assert particle_number_constant(zero, 3) == 0.0
    unit = BogoliubovKernel({(1, 0, 0): 0.5, (-1, 0, 0): 0.5})  # sum |X| = 1
    assert particle_number_constant(unit, 3) == pytest.approx(3000.0, rel=1e-15)


def test_particle_number_constant_750_a1(demo_potential):
    a1, *_ = a_constants(demo_potential)
    xi = optimal_kernel_magnitudes(demo_potential, ModelParams(33))
    assert particle_number_constant(xi, 3) == pytest.approx(750.0 * a1, rel=1e-13)


def test_bounds_zero_potential():
    v = make_potential({(1, 0, 0): 0.0})
    xi = optimal_kernel_magnitudes(v, ModelParams(33))
    bounds = epsilon_bounds(ModelParams(33), v, xi)
    assert bounds.log_eps1 == -math.inf
    assert bounds.log_eps2 == -math.inf
    assert bounds.log_quartic == -math.inf
    assert bounds.log_total == -math.inf


def test_total_is_sum_of_parts(weak_potential):
    params = ModelParams(257)
    xi = optimal_kernel_magnitudes(weak_potential, params)
    bounds = epsilon_bounds(params, weak_potential, xi)
    recombined = np.logaddexp.reduce(
        [bounds.log_eps1, math.log(2.0) + bounds.log_eps2, bounds.log_quartic]
    )
    assert bounds.log_total == pytest.approx(recombined, abs=1e-13)


def test_total_times_n_stable_across_shells(weak_potential):
    logs = []
    for radius_sq in (4, 16, 64, 256, 1024):
        from fermi_rpa import closed_shell_sizes

        n = dict(closed_shell_sizes(radius_sq))[radius_sq]
        params = ModelParams(n)
        xi = optimal_kernel_magnitudes(weak_potential, params)
        logs.append(epsilon_bounds(params, weak_potential, xi).log_total_times_n)
    assert max(logs) - min(logs) < math.log(1.1)


def test_bounds_monotone_in_coupling(weak_potential):
    params = ModelParams(257)
    prev = None
    for s in np.linspace(0.5, 3.0, 6):
        v = scale_coupling(weak_potential, float(s))
        xi = optimal_kernel_magnitudes(v, params)
        b = epsilon_bounds(params, v, xi)
        current = (b.log_eps1, b.log_eps2, b.log_quartic)
        if prev is not None:
            assert all(y >= x - 1e-12 for x, y in zip(prev, current))
        prev = current


def test_kernel_outside_support_rejected(weak_potential):
    params = ModelParams(33)
    foreign = BogoliubovKernel({(2, 0, 0): 0.1, (-2, 0, 0): 0.1})
    with pytest.raises(DomainError):
        epsilon_bounds(params, weak_potential, foreign)


def test_exact_backend_runs(ball33, weak_potential):
    xi = optimal_kernel_magnitudes(weak_potential, ball33)
    bounds = epsilon_bounds(ball33, weak_potential, xi, backend="exact")
    assert math.isfinite(bounds.log_total)


def test_budget_reports_crossover(demo_potential):
    budget = assemble_error_budget(ModelParams(257), demo_potential)
    # worst-case constants: certification crossover far beyond desk scale
    assert budget.log_crossover_n > math.log(1e12)
    # at desk scale the bound exceeds the signal
    assert budget.bounds.log_total > budget.log_signal
    payload = budget.as_dict()
    assert set(payload) >= {
        "a_constants",
        "c_small",
        "c_n",
        "log_eps1_bound",
        "log_total",
        "log_total_times_n",
        "log_crossover_n",
    }
