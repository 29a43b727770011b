"""Run configuration: versioned defaults, JSON overrides, worker cap.

The physical defaults (quadrature tolerance, oracle pair cap, shell
grid) live in the packaged ``data/default_config.json`` and can be
overridden by a user-supplied JSON file of the same dialect or by CLI
flags.  ``FERMI_RPA_THREADS`` caps the worker count used for per-k
integrals; reductions stay deterministic regardless of the cap.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from importlib import resources
from typing import Optional, Tuple

from .errors import ParseError

CONFIG_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    version: int = CONFIG_VERSION
    tol: float = 1e-10
    max_pairs: int = 2
    shell_grid: Tuple[int, ...] = (4, 16, 64, 256, 1024)


def default_config() -> RunConfig:
    with resources.files("fermi_rpa").joinpath("data/default_config.json").open(
        "rb"
    ) as fh:
        return _parse_config(fh.read())


def load_config(path: Optional[str] = None) -> RunConfig:
    if path is None:
        return default_config()
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"unreadable config file {path}: {exc}") from exc
    base = default_config()
    override = _parse_config(raw, partial=True)
    return replace(
        base,
        **{
            field: getattr(override, field)
            for field in ("tol", "max_pairs", "shell_grid")
            if getattr(override, field) is not None
        },
    )


def _parse_config(raw: bytes, partial: bool = False):
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"malformed config document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("config document must be a JSON object")
    if partial:
        return _PartialConfig(
            tol=float(doc["tol"]) if "tol" in doc else None,
            max_pairs=int(doc["max_pairs"]) if "max_pairs" in doc else None,
            shell_grid=tuple(int(s) for s in doc["shell_grid"])
            if "shell_grid" in doc
            else None,
        )
    try:
        return RunConfig(
            version=int(doc["version"]),
            tol=float(doc["tol"]),
            max_pairs=int(doc["max_pairs"]),
            shell_grid=tuple(int(s) for s in doc["shell_grid"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid config document: {exc}") from exc


@dataclass(frozen=True)
class _PartialConfig:
    tol: Optional[float]
    max_pairs: Optional[int]
    shell_grid: Optional[Tuple[int, ...]]


def worker_count() -> int:
    """Worker cap from FERMI_RPA_THREADS; defaults to 1 (sequential)."""
    raw = os.environ.get("FERMI_RPA_THREADS")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)
