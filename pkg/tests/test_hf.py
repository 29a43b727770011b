import math

import pytest

from fermi_rpa import (
    ModelParams,
    ShapeMismatch,
    build_fermi_ball,
    closed_shell_sizes,
    exchange_norm_bound,
    hf_energy,
    make_potential,
    scale_coupling,
)
from fermi_rpa.lattice import norm_sq

from conftest import brute_force_ball


def test_single_mode_free():
    ball = build_fermi_ball(1)
    v = make_potential({(0, 0, 0): 0.0})
    energy = hf_energy(ball, v, ModelParams(1))
    assert (energy.kinetic, energy.direct, energy.exchange, energy.total) == (
        0.0,
        0.0,
        0.0,
        0.0,
    )


def test_single_mode_contact():
    # one plane wave: the double sums collapse to V(0), so direct cancels exchange
    ball = build_fermi_ball(1)
    v = make_potential({(0, 0, 0): 1.0})
    energy = hf_energy(ball, v, ModelParams(1))
    assert energy.kinetic == 0.0
    assert energy.direct == 1.0
    assert energy.exchange == 1.0
    assert energy.total == 0.0


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        hf_energy(build_fermi_ball(7), make_potential({(0, 0, 0): 1.0}), ModelParams(33))


def test_exchange_double_sum_brute_force(demo_potential):
    ball = build_fermi_ball(33)
    pts = brute_force_ball(ball.shell_radius_sq)
    expected = (
        sum(
            demo_potential.value(
                (h[0] - g[0], h[1] - g[1], h[2] - g[2])
            )
            for h in pts
            for g in pts
        )
        / ball.n
    )
    energy = hf_energy(ball, demo_potential, ModelParams(33))
    assert energy.exchange == pytest.approx(expected, rel=1e-13)


def test_exchange_symmetric_in_reversal(demo_potential, ball33):
    # reversing the potential-support iteration cannot move the compensated sum
    energy = hf_energy(ball33, demo_potential, ModelParams(33))
    flipped = make_potential(
        dict(reversed(list(demo_potential.coeffs.items()))),
        support_radius_sq=demo_potential.support_radius_sq,
    )
    again = hf_energy(ball33, flipped, ModelParams(33))
    assert energy.exchange == again.exchange


def test_half_prefactor_switch(demo_potential, ball33):
    full = hf_energy(ball33, demo_potential, ModelParams(33))
    half = hf_energy(ball33, demo_potential, ModelParams(33), half_prefactor=True)
    assert half.direct == pytest.approx(0.5 * full.direct, rel=1e-15)
    assert half.exchange == pytest.approx(0.5 * full.exchange, rel=1e-15)
    assert half.kinetic == full.kinetic


def test_kinetic_density_limit():
    limit = (4 * math.pi / 5) * (3 / (4 * math.pi)) ** (5 / 3)
    v = make_potential({(0, 0, 0): 0.0})
    rel_errors = []
    for radius_sq in (4, 16, 64, 256):
        n = dict(closed_shell_sizes(radius_sq))[radius_sq]
        ball = build_fermi_ball(n)
        energy = hf_energy(ball, v, ModelParams(n))
        rel_errors.append(abs(energy.kinetic / n / limit - 1.0))
    assert rel_errors[-1] < 0.02
    assert rel_errors[-1] < rel_errors[0]


def test_exchange_is_lower_order(demo_potential):
    ratios = []
    for radius_sq in (4, 16, 64):
        n = dict(closed_shell_sizes(radius_sq))[radius_sq]
        ball = build_fermi_ball(n)
        energy = hf_energy(ball, demo_potential, ModelParams(n))
        ratios.append(energy.exchange / n)
    assert ratios[0] > ratios[1] > ratios[2]
    assert ratios[-1] < 0.01


def test_exchange_norm_bound_examples(demo_potential):
    assert exchange_norm_bound(scale_coupling(demo_potential, 0.0), 10) == 0.0
    v = make_potential({(1, 0, 0): 0.5})  # l1 norm 1
    assert exchange_norm_bound(v, 1000) == pytest.approx(
        (2 * math.pi) ** (-1.5) / 1000, rel=1e-15
    )
    assert exchange_norm_bound(v, 2000) == pytest.approx(
        0.5 * exchange_norm_bound(v, 1000), rel=1e-15
    )


def test_kinetic_is_hbar2_times_shell_sum(ball33):
    v = make_potential({(0, 0, 0): 0.0})
    params = ModelParams(33)
    shell_sum = sum(norm_sq(h) for h in ball33.modes)
    energy = hf_energy(ball33, v, params)
    assert energy.kinetic == pytest.approx(params.hbar ** 2 * shell_sum, rel=1e-15)
    assert energy.kinetic >= 0.0
