import json

import pytest

from fermi_rpa import energy_report, second_order_ratio
from fermi_rpa.report import CSV_COLUMNS, report_csv


def test_report_invariants(demo_potential):
    rep = energy_report(33, demo_potential)
    assert rep.hbar == pytest.approx(33 ** (-1.0 / 3.0))
    assert rep.corr_delocalized_exact <= 0.0
    assert rep.corr_delocalized_asymptotic <= 0.0
    assert rep.corr_optimal <= 0.0
    assert rep.so_ratio == pytest.approx(second_order_ratio(), abs=1e-12)
    assert rep.hf.total == pytest.approx(
        rep.hf.kinetic + rep.hf.direct - rep.hf.exchange
    )
    # the delocalized bound cannot undercut the optimal correlation energy
    assert rep.so_delocalized >= rep.so_optimal


def test_report_serialization(demo_potential):
    rep = energy_report(33, demo_potential)
    payload = rep.as_dict()
    assert set(payload) == set(CSV_COLUMNS)
    json.dumps(payload)  # JSON-safe
    csv_text = report_csv([rep])
    lines = csv_text.strip().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 2


def test_digest_tracks_potential(demo_potential, weak_potential):
    a = energy_report(33, demo_potential).potential
    b = energy_report(33, weak_potential).potential
    assert a != b
    assert len(a) == 16
