"""Interaction potentials given by finitely many Fourier coefficients.

A potential is the even, real, finitely supported map k -> V(k) on Z^3.
The on-disk document is JSON:

    {"support_radius_sq": 2,
     "coeffs": [{"k": [1, 0, 0], "v": 0.5}, ...]}

Missing -k entries are completed by evenness; explicit entries that
disagree with their mirror raise SymmetryError.  The zero mode V(0) is
allowed (it feeds the Hartree-Fock direct term) but every correlation
sum runs over the support with k = 0 removed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Dict, IO, List, Union

from .errors import ParseError, SymmetryError
from .lattice import Momentum, mode_sort_key, negate, norm_sq


@dataclass(frozen=True)
class Potential:
    coeffs: Dict[Momentum, float]
    support_radius_sq: int

    def __post_init__(self):
        for k, v in self.coeffs.items():
            if norm_sq(k) > self.support_radius_sq:
                raise ParseError(
                    f"coefficient at {k} lies outside support radius^2 "
                    f"{self.support_radius_sq}"
                )
            if not math.isfinite(v):
                raise ValueError(f"non-finite coefficient at {k}: {v}")
            mirror = self.coeffs.get(negate(k))
            if mirror is None or mirror != v:
                raise SymmetryError(f"evenness violated at {k}: {v} vs {mirror}")

    def value(self, k: Momentum) -> float:
        return self.coeffs.get(tuple(k), 0.0)

    def support(self) -> List[Momentum]:
        """Stored momenta in the global mode order (zeros retained)."""
        return sorted(self.coeffs, key=mode_sort_key)

    def correlation_support(self) -> List[Momentum]:
        """Support minus the zero mode, in the global mode order."""
        return [k for k in self.support() if norm_sq(k) > 0]

    def is_nonnegative(self) -> bool:
        return all(v >= 0.0 for v in self.coeffs.values())

    def require_positive(self) -> None:
        """Validation flag for results that assume V(k) > 0 on the support."""
        bad = [k for k in self.correlation_support() if self.value(k) <= 0.0]
        if bad:
            raise ValueError(f"potential not strictly positive at {bad[0]}")


def make_potential(
    entries: Dict[Momentum, float], support_radius_sq: int = None
) -> Potential:
    """Build a potential from {k: value}, completing -k by evenness."""
    coeffs: Dict[Momentum, float] = {}
    for k, v in entries.items():
        k = tuple(int(c) for c in k)
        v = float(v)
        for key in (k, negate(k)):
            if key in coeffs and coeffs[key] != v:
                raise SymmetryError(
                    f"entries at {key} and {negate(key)} disagree: "
                    f"{coeffs[key]} vs {v}"
                )
            coeffs[key] = v
    if support_radius_sq is None:
        support_radius_sq = max((norm_sq(k) for k in coeffs), default=0)
    return Potential(coeffs=coeffs, support_radius_sq=int(support_radius_sq))


def load_potential(source: Union[str, bytes, IO]) -> Potential:
    """Parse and validate a potential document (path, bytes, or stream)."""
    try:
        if hasattr(source, "read"):
            raw = source.read()
        elif isinstance(source, (bytes, bytearray)):
            raw = bytes(source)
        else:
            with open(source, "rb") as fh:
                raw = fh.read()
        doc = json.loads(raw.decode("utf-8") if isinstance(raw, bytes) else raw)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"unreadable potential document: {exc}") from exc

    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise ParseError("potential document must be an object with a 'coeffs' array")
    try:
        radius_sq = int(doc["support_radius_sq"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("missing or invalid 'support_radius_sq'") from exc

    explicit: Dict[Momentum, float] = {}
    for item in doc["coeffs"]:
        try:
            k = tuple(int(c) for c in item["k"])
            v = float(item["v"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed coefficient entry {item!r}") from exc
        if len(k) != 3:
            raise ParseError(f"momentum must have three components, got {item['k']}")
        if not math.isfinite(v):
            raise ValueError(f"non-finite coefficient at {k}: {v}")
        if k in explicit:
            raise ParseError(f"duplicate coefficient entry for {k}")
        explicit[k] = v

    coeffs: Dict[Momentum, float] = {}
    for k, v in explicit.items():
        mk = negate(k)
        if mk in explicit and explicit[mk] != v:
            raise SymmetryError(
                f"explicit entries at {k} and {mk} disagree: {v} vs {explicit[mk]}"
            )
        coeffs[k] = v
        coeffs.setdefault(mk, v)
    return Potential(coeffs=coeffs, support_radius_sq=radius_sq)


def serialize_potential(v: Potential) -> str:
    """Canonical JSON document; floats keep full round-trip precision."""
    entries = [
        {"k": list(k), "v": v.coeffs[k]} for k in v.support()
    ]
    return json.dumps(
        {"support_radius_sq": v.support_radius_sq, "coeffs": entries},
        separators=(", ", ": "),
    )


def scale_coupling(v: Potential, s: float) -> Potential:
    """Multiply every coefficient by s; the support set is unchanged."""
    if not math.isfinite(s):
        raise ValueError(f"coupling scale must be finite, got {s}")
    return Potential(
        coeffs={k: s * val for k, val in v.coeffs.items()},
        support_radius_sq=v.support_radius_sq,
    )


def l1_norm(v: Potential) -> float:
    return math.fsum(abs(v.coeffs[k]) for k in v.support())
