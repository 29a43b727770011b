"""Fermi ball construction and exact lattice counts on Z^3.

The ground-state Slater determinant of the mean-field Fermi gas occupies
the N lattice momenta of smallest norm (the Fermi ball B_F).  Two exact
lattice quantities drive everything downstream:

* the lune count n_k^2 = #{h in B_F : h+k not in B_F}, the squared norm
  of the delocalized pair-creation operator applied to the vacuum, and
* the kinetic coefficient k.f(k) = (1/n_k^2) * sum over pairs of k.(p+h),
  a positive rational number.

Both have continuum asymptotics obtained by replacing the counts with
volumes (overlap of two balls of Fermi radius displaced by k):

    n_k^2 ~ pi*k_F^2*|k| - (pi/12)*|k|^3,      k_F = (3N/4pi)^(1/3),
    k.f(k) ~ |k| * N^(1/3) * (4/(3*sqrt(pi)))^(2/3).

All lattice sums are integer-exact; floats appear only on output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, EmptyLune, NotClosedShell

Momentum = Tuple[int, int, int]

# (4/(3*sqrt(pi)))^(2/3): continuum value of k.f(k) / (|k| N^(1/3))
KINETIC_SHAPE_CONSTANT = (4.0 / (3.0 * math.sqrt(math.pi))) ** (2.0 / 3.0)
# (3*sqrt(pi)/4)^(2/3): continuum value of n_k^2 / (|k| N hbar)
LUNE_SHAPE_CONSTANT = (3.0 * math.sqrt(math.pi) / 4.0) ** (2.0 / 3.0)


def norm_sq(k: Momentum) -> int:
    return k[0] * k[0] + k[1] * k[1] + k[2] * k[2]


def negate(k: Momentum) -> Momentum:
    return (-k[0], -k[1], -k[2])


def add(a: Momentum, b: Momentum) -> Momentum:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def mode_sort_key(k: Momentum) -> Tuple[int, int, int, int]:
    """Global total order on modes: (|k|^2, lexicographic).

    Fixed once and used everywhere a deterministic ordering matters
    (fermionic signs, reproducible reductions).
    """
    return (norm_sq(k), k[0], k[1], k[2])


@dataclass(frozen=True)
class ModelParams:
    """Particle count and the semiclassical parameter hbar = n^(-1/3)."""

    n: int
    hbar: float = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"particle count must be positive, got {self.n}")
        object.__setattr__(self, "hbar", float(self.n) ** (-1.0 / 3.0))


def _enumerate_cube(radius: int) -> np.ndarray:
    """All integer vectors in [-radius, radius]^3 as an (m, 3) array."""
    ax = np.arange(-radius, radius + 1, dtype=np.int64)
    x, y, z = np.meshgrid(ax, ax, ax, indexing="ij")
    return np.stack([x.ravel(), y.ravel(), z.ravel()], axis=1)


def _sorted_ball_array(radius_sq: int) -> np.ndarray:
    """Lattice points with |h|^2 <= radius_sq in the global mode order."""
    r = math.isqrt(radius_sq) if radius_sq > 0 else 0
    pts = _enumerate_cube(r)
    nsq = np.einsum("ij,ij->i", pts, pts)
    pts = pts[nsq <= radius_sq]
    nsq = nsq[nsq <= radius_sq]
    order = np.lexsort((pts[:, 2], pts[:, 1], pts[:, 0], nsq))
    return pts[order]


def closed_shell_sizes(max_radius_sq: int) -> List[Tuple[int, int]]:
    """Cumulative lattice-ball sizes for every attained radius level.

    Returns (radius_sq, count) pairs for each integer s <= max_radius_sq
    that is actually realized as |h|^2 of a lattice point; counts are the
    sizes of the closed shells and are strictly increasing.
    """
    if max_radius_sq < 0:
        raise DomainError("max_radius_sq must be >= 0")
    r = math.isqrt(max_radius_sq)
    pts = _enumerate_cube(r)
    nsq = np.einsum("ij,ij->i", pts, pts)
    nsq = nsq[nsq <= max_radius_sq]
    per_level = np.bincount(nsq, minlength=max_radius_sq + 1)
    cumulative = np.cumsum(per_level)
    return [
        (s, int(cumulative[s]))
        for s in range(max_radius_sq + 1)
        if per_level[s] > 0
    ]


@dataclass(frozen=True)
class FermiBall:
    """The closed-shell set B_F of the n lowest lattice modes.

    modes is exactly {h : |h|^2 <= shell_radius_sq}, sorted by the global
    mode order; kf_continuum = (3n/4pi)^(1/3) is the continuum Fermi
    momentum used by the asymptotic formulas.
    """

    n: int
    shell_radius_sq: int
    modes: Tuple[Momentum, ...]
    kf_continuum: float
    _array: np.ndarray = field(repr=False, compare=False)

    def contains(self, k: Momentum) -> bool:
        # closed shell: membership is exactly the norm test
        return norm_sq(k) <= self.shell_radius_sq

    @property
    def mode_array(self) -> np.ndarray:
        return self._array


def build_fermi_ball(n: int) -> FermiBall:
    """Construct the Fermi ball with exactly n modes.

    Raises NotClosedShell when no radius yields exactly n lattice points
    (e.g. n = 2); every formula downstream assumes a completely filled
    shell.
    """
    if n < 1:
        raise DomainError(f"particle count must be positive, got {n}")
    # initial radius guess from the continuum volume, grown if needed
    guess = int(math.ceil((3.0 * n / (4.0 * math.pi)) ** (1.0 / 3.0))) + 2
    while True:
        levels = closed_shell_sizes(guess * guess)
        if levels[-1][1] >= n:
            break
        guess *= 2
    for radius_sq, count in levels:
        if count == n:
            arr = _sorted_ball_array(radius_sq)
            modes = tuple((int(a), int(b), int(c)) for a, b, c in arr)
            kf = (3.0 * n / (4.0 * math.pi)) ** (1.0 / 3.0)
            return FermiBall(n, radius_sq, modes, kf, arr)
        if count > n:
            raise NotClosedShell(
                f"no closed shell with exactly {n} modes; "
                f"nearest shells have {_previous_count(levels, n)} and {count}"
            )
    raise AssertionError("unreachable")


def _previous_count(levels: Sequence[Tuple[int, int]], n: int) -> int:
    prev = 0
    for _, count in levels:
        if count > n:
            return prev
        prev = count
    return prev


@dataclass(frozen=True)
class LuneCount:
    """Exact count of B_F modes pushed out of the ball by a shift k."""

    k: Momentum
    count: int
    pairs: Optional[Tuple[Tuple[Momentum, Momentum], ...]] = None


def lune_count(ball: FermiBall, k: Momentum, with_pairs: bool = False) -> LuneCount:
    """Count holes h in B_F with h+k outside B_F; optionally list (p, h).

    The count equals the squared vacuum norm of the delocalized pair
    creation operator with transfer momentum k; it is even in k and
    vanishes only at k = 0.
    """
    arr = ball.mode_array
    shifted = arr + np.asarray(k, dtype=np.int64)
    out = np.einsum("ij,ij->i", shifted, shifted) > ball.shell_radius_sq
    count = int(np.count_nonzero(out))
    pairs = None
    if with_pairs:
        hs = arr[out]
        ps = shifted[out]
        pairs = tuple(
            ((int(p[0]), int(p[1]), int(p[2])), (int(h[0]), int(h[1]), int(h[2])))
            for p, h in zip(ps, hs)
        )
    return LuneCount(k=tuple(int(c) for c in k), count=count, pairs=pairs)


def nk_asymptotic(params: ModelParams, k: Momentum) -> float:
    """Continuum lune norm sqrt(pi k_F^2 |k| - (pi/12)|k|^3).

    Valid while the displaced balls overlap, |k| <= 2 k_F.
    """
    kf = (3.0 * params.n / (4.0 * math.pi)) ** (1.0 / 3.0)
    kn = math.sqrt(norm_sq(k))
    if kn > 2.0 * kf:
        raise DomainError(
            f"|k| = {kn:.6g} exceeds the lens-formula domain 2*k_F = {2 * kf:.6g}"
        )
    value = math.pi * kf * kf * kn - (math.pi / 12.0) * kn ** 3
    return math.sqrt(max(0.0, value))


@dataclass(frozen=True)
class KineticCoefficient:
    """Exact k.f(k) together with the pair-averaged vector f(k).

    kdotf carries the exact integer numerator/denominator; the float
    field is numerator/count rounded once on output.
    """

    k: Momentum
    count: int
    numerator: int
    f_numerator: Tuple[int, int, int]

    @property
    def kdotf(self) -> float:
        return self.numerator / self.count

    @property
    def kdotf_exact(self) -> Fraction:
        return Fraction(self.numerator, self.count)

    @property
    def f_vec(self) -> Tuple[float, float, float]:
        return tuple(c / self.count for c in self.f_numerator)


def kinetic_coefficient(ball: FermiBall, k: Momentum) -> KineticCoefficient:
    """Exact k.f(k) = (1/n_k^2) sum over pairs of k.(2h+k).

    Integer arithmetic throughout; raises EmptyLune when no pair carries
    the transfer momentum k (in particular for k = 0).
    """
    arr = ball.mode_array
    kvec = np.asarray(k, dtype=np.int64)
    shifted = arr + kvec
    out = np.einsum("ij,ij->i", shifted, shifted) > ball.shell_radius_sq
    count = int(np.count_nonzero(out))
    if count == 0:
        raise EmptyLune(f"no particle-hole pair with transfer momentum {tuple(k)}")
    hs = arr[out]
    # p + h = 2h + k summed componentwise; exact in int64, well below overflow
    psum = 2 * hs.sum(axis=0) + count * kvec
    numerator = int(kvec @ psum)
    return KineticCoefficient(
        k=tuple(int(c) for c in k),
        count=count,
        numerator=numerator,
        f_numerator=(int(psum[0]), int(psum[1]), int(psum[2])),
    )


def kinetic_coefficient_asymptotic(params: ModelParams, k: Momentum) -> float:
    """Continuum kinetic coefficient |k| N^(1/3) (4/(3 sqrt(pi)))^(2/3)."""
    if norm_sq(k) == 0:
        raise DomainError("kinetic coefficient undefined at k = 0")
    return math.sqrt(norm_sq(k)) * params.n ** (1.0 / 3.0) * KINETIC_SHAPE_CONSTANT
