"""Correlation-energy upper bound from completely delocalized pair bosons.

Treating the delocalized particle-hole pair operators as exact bosons
turns the Hamiltonian into a sum of independent quadratic forms, one per
transfer momentum k, with coefficients

    beta_k  = V(k) n_k^2 / N,
    alpha_k = hbar^2 k.f(k) + beta_k            (exact backend),

or their continuum limits

    beta_k  = hbar (3 sqrt(pi)/4)^(2/3) V(k) |k|,
    alpha_k = hbar |k| (4/(3 sqrt(pi)))^(2/3) + beta_k   (asymptotic).

For a real even kernel X the quadratic energy is

    E(X) = sum_k alpha_k sinh(X(k))^2 + beta_k sinh(X(k)) cosh(X(k)),

minimized in closed form at X0(k) = -(1/2) artanh(beta_k/alpha_k) with
minimum sum_k (1/2)(sqrt(alpha_k^2 - beta_k^2) - alpha_k) < 0.  Expanding
the minimum to second order in the potential gives

    -(1/(2 hbar^2 N^2)) sum_k V(k)^2 n_k^4 / (2 k.f(k))     (exact)
    -hbar (pi/2)(9/32) sum_k V(k)^2 |k|                     (asymptotic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Union

from .errors import (
    DegenerateCoefficients,
    DomainError,
    MissingCoefficient,
)
from .lattice import (
    FermiBall,
    KINETIC_SHAPE_CONSTANT,
    LUNE_SHAPE_CONSTANT,
    ModelParams,
    Momentum,
    kinetic_coefficient,
    lune_count,
    mode_sort_key,
    norm_sq,
)
from .potential import Potential

SECOND_ORDER_PREFACTOR = (math.pi / 2.0) * (9.0 / 32.0)

BallOrParams = Union[FermiBall, ModelParams]


@dataclass(frozen=True)
class QuadraticCoefficients:
    """Per-momentum quadratic-form coefficients, 0 <= |beta| and beta <= alpha."""

    k: Momentum
    alpha: float
    beta: float


@dataclass(frozen=True)
class BogoliubovKernel:
    """Real even kernel k -> X(k) defining the pair-quadratic trial state."""

    values: Dict[Momentum, float]

    def __post_init__(self):
        for k, x in self.values.items():
            mirror = self.values.get((-k[0], -k[1], -k[2]))
            if mirror is None or mirror != x:
                raise DomainError(f"kernel must be even: X{k} = {x}, X(-k) = {mirror}")

    def value(self, k: Momentum) -> float:
        return self.values.get(tuple(k), 0.0)

    def support(self) -> List[Momentum]:
        return sorted(self.values, key=mode_sort_key)

    def abs_sum(self) -> float:
        return math.fsum(abs(self.values[k]) for k in self.support())


def _params_of(source: BallOrParams) -> ModelParams:
    if isinstance(source, ModelParams):
        return source
    return ModelParams(source.n)


def quadratic_coefficients(
    source: BallOrParams,
    v: Potential,
    k: Momentum,
    backend: str = "exact",
) -> QuadraticCoefficients:
    """Coefficients (alpha_k, beta_k) from exact lattice sums or continuum forms."""
    if norm_sq(k) == 0:
        raise DomainError("quadratic coefficients undefined at k = 0")
    params = _params_of(source)
    if backend == "exact":
        if not isinstance(source, FermiBall):
            raise TypeError("exact backend requires a FermiBall")
        nk2 = lune_count(source, k).count
        kdotf = kinetic_coefficient(source, k).kdotf  # raises EmptyLune at nk2 = 0
        beta = v.value(k) * nk2 / params.n
        alpha = params.hbar ** 2 * kdotf + beta
    elif backend == "asymptotic":
        kn = math.sqrt(norm_sq(k))
        beta = params.hbar * LUNE_SHAPE_CONSTANT * v.value(k) * kn
        alpha = params.hbar * kn * KINETIC_SHAPE_CONSTANT + beta
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return QuadraticCoefficients(k=tuple(int(c) for c in k), alpha=alpha, beta=beta)


def coefficient_table(
    source: BallOrParams, v: Potential, backend: str = "exact"
) -> List[QuadraticCoefficients]:
    """Coefficients for every nonzero support momentum, in mode order."""
    return [
        quadratic_coefficients(source, v, k, backend)
        for k in v.correlation_support()
    ]


def optimal_kernel(c: QuadraticCoefficients) -> float:
    """Closed-form minimizer -(1/2) artanh(beta/alpha) of the quadratic form.

    Evaluated as -(1/4)[log1p(t) - log1p(-t)] with t = beta/alpha for
    accuracy at small coupling.
    """
    if abs(c.beta) >= c.alpha:
        raise DegenerateCoefficients(
            f"|beta| = {abs(c.beta)} >= alpha = {c.alpha} at k = {c.k}"
        )
    t = c.beta / c.alpha
    return -0.25 * (math.log1p(t) - math.log1p(-t))


def optimal_kernel_table(coeffs: Sequence[QuadraticCoefficients]) -> BogoliubovKernel:
    return BogoliubovKernel(values={c.k: optimal_kernel(c) for c in coeffs})


def bosonized_functional(
    coeffs: Sequence[QuadraticCoefficients], xi: BogoliubovKernel
) -> float:
    """Quadratic trial-state energy sum_k alpha sinh^2 X + beta sinh X cosh X."""
    known = {c.k for c in coeffs}
    missing = [k for k in xi.support() if k not in known]
    if missing:
        raise MissingCoefficient(f"no quadratic coefficients for {missing[0]}")
    terms = []
    for c in coeffs:
        x = xi.value(c.k)
        sh, ch = math.sinh(x), math.cosh(x)
        terms.append(c.alpha * sh * sh + c.beta * sh * ch)
    return math.fsum(terms)


def _minimum_term(c: QuadraticCoefficients) -> float:
    # (1/2)(sqrt(a^2-b^2) - a) rewritten as -b^2 / (2(sqrt(a^2-b^2) + a)),
    # stable for |b| << a
    if abs(c.beta) >= c.alpha:
        raise DegenerateCoefficients(
            f"|beta| = {abs(c.beta)} >= alpha = {c.alpha} at k = {c.k}"
        )
    root = math.sqrt((c.alpha - c.beta) * (c.alpha + c.beta))
    return -c.beta * c.beta / (2.0 * (root + c.alpha))


def minimum_energy(coeffs: Sequence[QuadraticCoefficients]) -> float:
    """Minimum of the quadratic energy, sum_k (1/2)(sqrt(a^2-b^2) - a)."""
    return math.fsum(_minimum_term(c) for c in coeffs)


def correlation_delocalized(
    source: BallOrParams, v: Potential, backend: str = "exact"
) -> float:
    """Optimal delocalized-pair correlation energy for a whole potential."""
    return minimum_energy(coefficient_table(source, v, backend))


def second_order_delocalized(
    source: BallOrParams, v: Potential, backend: str = "exact"
) -> float:
    """Second-order expansion of the minimum in the potential strength."""
    params = _params_of(source)
    if backend == "exact":
        if not isinstance(source, FermiBall):
            raise TypeError("exact backend requires a FermiBall")
        terms = []
        for k in v.correlation_support():
            nk2 = lune_count(source, k).count
            kdotf = kinetic_coefficient(source, k).kdotf
            terms.append(v.value(k) ** 2 * nk2 * nk2 / (2.0 * kdotf))
        return -math.fsum(terms) / (2.0 * params.hbar ** 2 * params.n ** 2)
    if backend == "asymptotic":
        acc = math.fsum(
            v.value(k) ** 2 * math.sqrt(norm_sq(k)) for k in v.correlation_support()
        )
        return -params.hbar * SECOND_ORDER_PREFACTOR * acc
    raise ValueError(f"unknown backend {backend!r}")
