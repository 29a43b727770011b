"""Assembled per-N energy reports for tables and convergence studies."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import List

from .error_budget import assemble_error_budget
from .hf import HFEnergy, hf_energy
from .lattice import ModelParams, build_fermi_ball
from .potential import Potential, serialize_potential
from .rpa_delocalized import correlation_delocalized, second_order_delocalized
from .rpa_optimal import gmb_correlation, second_order_optimal, second_order_ratio


def potential_digest(v: Potential) -> str:
    """Short stable identifier of the potential document."""
    return hashlib.sha256(serialize_potential(v).encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class EnergyReport:
    n: int
    hbar: float
    potential: str
    hf: HFEnergy
    corr_delocalized_exact: float
    corr_delocalized_asymptotic: float
    corr_optimal: float
    so_delocalized: float
    so_optimal: float
    so_ratio: float
    log_error_total: float
    log_error_total_times_n: float

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "hbar": self.hbar,
            "potential": self.potential,
            "hf_kinetic": self.hf.kinetic,
            "hf_direct": self.hf.direct,
            "hf_exchange": self.hf.exchange,
            "hf_total": self.hf.total,
            "corr_delocalized_exact": self.corr_delocalized_exact,
            "corr_delocalized_asymptotic": self.corr_delocalized_asymptotic,
            "corr_optimal": self.corr_optimal,
            "so_delocalized": self.so_delocalized,
            "so_optimal": self.so_optimal,
            "so_ratio": self.so_ratio,
            "log_error_total": self.log_error_total,
            "log_error_total_times_n": self.log_error_total_times_n,
        }


CSV_COLUMNS = [
    "n",
    "hbar",
    "potential",
    "hf_kinetic",
    "hf_direct",
    "hf_exchange",
    "hf_total",
    "corr_delocalized_exact",
    "corr_delocalized_asymptotic",
    "corr_optimal",
    "so_delocalized",
    "so_optimal",
    "so_ratio",
    "log_error_total",
    "log_error_total_times_n",
]


def energy_report(n: int, v: Potential, tol: float = 1e-10) -> EnergyReport:
    """Full comparison record at one particle count."""
    ball = build_fermi_ball(n)
    params = ModelParams(n)
    so_deloc = second_order_delocalized(params, v, backend="asymptotic")
    so_opt = second_order_optimal(v, params)
    budget = assemble_error_budget(params, v, backend="asymptotic")
    return EnergyReport(
        n=n,
        hbar=params.hbar,
        potential=potential_digest(v),
        hf=hf_energy(ball, v, params),
        corr_delocalized_exact=correlation_delocalized(ball, v, backend="exact"),
        corr_delocalized_asymptotic=correlation_delocalized(
            params, v, backend="asymptotic"
        ),
        corr_optimal=gmb_correlation(v, params, tol=tol).total,
        so_delocalized=so_deloc,
        so_optimal=so_opt,
        so_ratio=(so_deloc / so_opt) if so_opt != 0.0 else second_order_ratio(),
        log_error_total=budget.bounds.log_total,
        log_error_total_times_n=budget.bounds.log_total_times_n,
    )


def format_float(x: float) -> str:
    """17-significant-digit decimal, round-trip stable."""
    return f"{x:.17g}"


def report_csv(reports: List[EnergyReport]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for rep in reports:
        row = rep.as_dict()
        cells = []
        for col in CSV_COLUMNS:
            val = row[col]
            cells.append(
                format_float(val) if isinstance(val, float) else str(val)
            )
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
