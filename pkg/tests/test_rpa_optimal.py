import math

import numpy as np
import pytest

from fermi_rpa import (
    ConvergenceFailure,
    DomainError,
    ModelParams,
    gmb_correlation,
    gmb_integral,
    gmb_integrand,
    make_potential,
    scale_coupling,
    second_order_optimal,
    second_order_ratio,
)
from fermi_rpa.quadrature import integrate_adaptive
from fermi_rpa.rpa_optimal import KAPPA, _inner_factor, tail_bound


def test_integrand_zero_coupling():
    for lam in (0.0, 0.3, 2.0, 50.0):
        assert gmb_integrand(0.0, lam) == 0.0


def test_integrand_at_zero_frequency():
    assert gmb_integrand(1.0, 0.0) == pytest.approx(math.log(2.0), rel=1e-15)


def test_integrand_large_frequency_decay():
    # ~ a/(3 lambda^2) for large lambda
    for lam in (1e3, 1e5, 1e7):
        assert gmb_integrand(2.0, lam) == pytest.approx(2.0 / (3 * lam * lam), rel=1e-4)


def test_integrand_domain_error():
    with pytest.raises(DomainError):
        gmb_integrand(-1.5, 0.0)


def test_inner_factor_series_matches_direct_at_crossover():
    # both branches are accurate near the switch, so they must agree there
    for lam in (1.999999, 2.0, 2.000001, 3.0):
        u = 1.0 / lam
        direct = 1.0 - lam * math.atan(u)
        assert _inner_factor(lam) == pytest.approx(direct, rel=1e-12)


def test_inner_factor_bounds():
    for lam in (0.0, 0.2, 1.0, 7.0, 1e4):
        g = _inner_factor(lam)
        assert 0.0 <= g <= 1.0
        if lam >= 1.0:
            assert g <= 1.0 / (3.0 * lam * lam)


def test_integral_zero():
    assert gmb_integral(0.0).value == 0.0


def test_integral_error_estimate_respected():
    for a in (0.5, 2.0, 7.0):
        res = gmb_integral(a, tol=1e-10)
        assert res.error <= 1e-10
        finer = gmb_integral(a, tol=5e-11)
        assert abs(res.value - finer.value) <= res.error


def test_integral_linear_coefficient():
    # I(a)/a -> 1/4 as a -> 0 (the lambda integral of the inner factor is pi/4)
    values = [gmb_integral(a, tol=1e-14).value / a for a in (1e-3, 1e-4, 1e-5)]
    deviations = [abs(v - 0.25) for v in values]
    assert deviations[0] > deviations[1] > deviations[2]
    assert deviations[-1] < 1e-6


def test_integral_quadratic_coefficient():
    # (I(a) - a/4)/a^2 -> -(1 - log 2)/6
    target = -(1.0 - math.log(2.0)) / 6.0
    values = [
        (gmb_integral(a, tol=1e-15).value - a / 4.0) / (a * a)
        for a in (1e-3, 1e-4)
    ]
    assert values[-1] == pytest.approx(target, rel=1e-3)


def test_tail_bound_dominates_directly_computed_tail():
    for cutoff in (10.0, 100.0, 1000.0):
        for a in (0.5, 3.0):
            direct = integrate_adaptive(
                lambda lam: gmb_integrand(a, lam), cutoff, 2 * cutoff, tol=1e-14
            )
            assert direct.value / math.pi <= tail_bound(a, cutoff)


# 50-digit quadrature references with analytic tails (error < 1e-19)
FROZEN_INTEGRALS = [
    (1.0, 0.2133639048250704062480335),
    (0.9744442724301884897408677, 0.2085867614123441319878434),  # 2 pi kappa / 4
    (1.948888544860376979481735, 0.3750181323753130689995501),  # 2 pi kappa / 2
]


@pytest.mark.parametrize("a,reference", FROZEN_INTEGRALS)
def test_integral_frozen_references(a, reference):
    res = gmb_integral(a, tol=1e-12)
    assert res.error <= 1e-12
    assert abs(res.value - reference) <= res.error


def test_integral_rejects_bad_coupling():
    with pytest.raises(DomainError):
        gmb_integral(-1.0)


def test_convergence_failure_budget():
    with pytest.raises(ConvergenceFailure):
        integrate_adaptive(lambda x: math.sin(1e6 * x), 0.0, 1000.0, 1e-14, max_panels=8)


def test_correlation_zero_potential():
    v = make_potential({(1, 0, 0): 0.0})
    result = gmb_correlation(v, ModelParams(33))
    assert result.total == 0.0


def test_correlation_brackets_nonpositive(demo_potential):
    result = gmb_correlation(demo_potential, ModelParams(33), tol=1e-12)
    for k, bracket in result.per_k.items():
        assert bracket <= 1e-14
    assert result.total < 0.0


def test_linear_order_cancellation(demo_potential):
    # per-momentum brackets are quadratic in the coupling: slope >= 1.9
    params = ModelParams(33)
    scales = [2.0 ** (-j) for j in range(3, 9)]
    mags = []
    for s in scales:
        res = gmb_correlation(scale_coupling(demo_potential, s), params, tol=1e-15)
        mags.append(abs(res.per_k[(1, 0, 0)]))
    slope = np.polyfit(np.log(scales), np.log(mags), 1)[0]
    assert slope >= 1.9


def test_small_coupling_matches_second_order(demo_potential):
    params = ModelParams(2109)
    scales = [2.0 ** (-j) for j in range(3, 9)]
    deviations = []
    for s in scales:
        scaled = scale_coupling(demo_potential, s)
        total = gmb_correlation(scaled, params, tol=1e-15).total
        so = second_order_optimal(scaled, params)
        deviations.append(abs(total / so - 1.0))
    slope = np.polyfit(np.log(scales), np.log(deviations), 1)[0]
    assert slope >= 0.9


def test_second_order_prefactor(demo_potential):
    params = ModelParams(257)
    weight = sum(
        demo_potential.value(k) ** 2 * math.sqrt(sum(c * c for c in k))
        for k in demo_potential.correlation_support()
    )
    value = second_order_optimal(demo_potential, params)
    assert value / (-params.hbar * weight) == pytest.approx(
        (math.pi / 2.0) * (1.0 - math.log(2.0)), rel=1e-14
    )


def test_second_order_quadratic_homogeneity(demo_potential):
    params = ModelParams(257)
    base = second_order_optimal(demo_potential, params)
    scaled = second_order_optimal(scale_coupling(demo_potential, 3.0), params)
    assert scaled == pytest.approx(9.0 * base, rel=1e-14)


def test_ratio_window():
    value = second_order_ratio()
    assert 0.91 < value < 0.92


def test_ratio_equals_second_order_quotient(demo_potential):
    from fermi_rpa import second_order_delocalized

    params = ModelParams(2109)
    quotient = second_order_delocalized(
        params, demo_potential, backend="asymptotic"
    ) / second_order_optimal(demo_potential, params)
    assert quotient == pytest.approx(second_order_ratio(), abs=1e-12)


def test_kappa_value():
    assert KAPPA == pytest.approx((3.0 / (4.0 * math.pi)) ** (1.0 / 3.0), rel=1e-16)
