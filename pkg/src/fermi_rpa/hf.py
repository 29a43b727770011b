"""Hartree-Fock energy of the plane-wave Slater determinant.

With plane waves f_k(x) = (2pi)^(-3/2) exp(ikx) on the torus [0, 2pi]^3
and the Fourier convention V(x) = sum_k V(k) exp(ikx), the three parts of
the Hartree-Fock functional evaluate in closed form:

* kinetic   = hbar^2 * sum_{h in B_F} |h|^2,
* direct    = (1/N) * int V(x-y) rho(x) rho(y) = N * V(0)
  (rho(x) = N (2pi)^{-3} and each torus integral contributes (2pi)^3,
  so all 2pi factors cancel against the plane-wave normalization),
* exchange  = (1/N) * sum_{h,h' in B_F} V(h-h')
            = (1/N) * sum_k V(k) * #{h : h in B_F and h+k in B_F}.

The functional carries prefactor 1/N (no 1/2) on both interaction terms;
the ``half_prefactor`` switch multiplies both by 1/2 for comparison with
the pair-summed convention.  The exchange double sum is reduced to
O(N * |support|) by counting, per transfer momentum, the modes that stay
inside the ball; the count is an exact integer, so the final reduction
is a deterministic compensated sum of exact products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch
from .lattice import FermiBall, ModelParams
from .potential import Potential, l1_norm


@dataclass(frozen=True)
class HFEnergy:
    kinetic: float
    direct: float
    exchange: float
    total: float


def hf_energy(
    ball: FermiBall,
    v: Potential,
    params: ModelParams,
    half_prefactor: bool = False,
) -> HFEnergy:
    """Evaluate the plane-wave Hartree-Fock energy, total = kin + dir - exch."""
    if ball.n != params.n:
        raise ShapeMismatch(f"ball has {ball.n} modes but params.n = {params.n}")
    arr = ball.mode_array
    kinetic = params.hbar ** 2 * float(int(np.einsum("ij,ij->", arr, arr)))
    direct = ball.n * v.value((0, 0, 0))
    exchange = math.fsum(
        v.coeffs[k] * _stay_count(ball, k) for k in v.support()
    ) / ball.n
    if half_prefactor:
        direct *= 0.5
        exchange *= 0.5
    return HFEnergy(
        kinetic=kinetic,
        direct=direct,
        exchange=exchange,
        total=kinetic + direct - exchange,
    )


def _stay_count(ball: FermiBall, k) -> int:
    """#{h in B_F : h + k in B_F}, exact."""
    shifted = ball.mode_array + np.asarray(k, dtype=np.int64)
    inside = np.einsum("ij,ij->i", shifted, shifted) <= ball.shell_radius_sq
    return int(np.count_nonzero(inside))


def exchange_norm_bound(v: Potential, n: int) -> float:
    """Operator-norm bound (2pi)^(-3/2) |V|_l1 / n for the exchange term."""
    if n < 1:
        raise ShapeMismatch(f"particle count must be positive, got {n}")
    return (2.0 * math.pi) ** (-1.5) * l1_norm(v) / n
