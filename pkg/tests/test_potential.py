import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from fermi_rpa import (
    ParseError,
    SymmetryError,
    l1_norm,
    load_potential,
    make_potential,
    scale_coupling,
    serialize_potential,
)


def doc_bytes(obj) -> io.BytesIO:
    return io.BytesIO(json.dumps(obj).encode("utf-8"))


def test_load_single_zero_mode():
    v = load_potential(
        doc_bytes({"support_radius_sq": 0, "coeffs": [{"k": [0, 0, 0], "v": 1.0}]})
    )
    assert v.coeffs == {(0, 0, 0): 1.0}


def test_load_completes_evenness():
    v = load_potential(
        doc_bytes({"support_radius_sq": 1, "coeffs": [{"k": [1, 0, 0], "v": 0.5}]})
    )
    assert v.value((1, 0, 0)) == 0.5
    assert v.value((-1, 0, 0)) == 0.5
    assert len(v.coeffs) == 2


def test_load_rejects_symmetry_violation():
    with pytest.raises(SymmetryError):
        load_potential(
            doc_bytes(
                {
                    "support_radius_sq": 1,
                    "coeffs": [
                        {"k": [1, 0, 0], "v": 0.5},
                        {"k": [-1, 0, 0], "v": 0.4},
                    ],
                }
            )
        )


def test_load_rejects_duplicates():
    with pytest.raises(ParseError):
        load_potential(
            doc_bytes(
                {
                    "support_radius_sq": 1,
                    "coeffs": [
                        {"k": [1, 0, 0], "v": 0.5},
                        {"k": [1, 0, 0], "v": 0.5},
                    ],
                }
            )
        )


def test_load_rejects_garbage():
    with pytest.raises(ParseError):
        load_potential(io.BytesIO(b"not json"))
    with pytest.raises(ParseError):
        load_potential(doc_bytes({"support_radius_sq": 1}))
    with pytest.raises(ParseError):
        load_potential(
            doc_bytes({"support_radius_sq": 0, "coeffs": [{"k": [1, 0, 0], "v": 1.0}]})
        )


def test_load_rejects_nonfinite():
    with pytest.raises(ValueError):
        load_potential(
            doc_bytes({"support_radius_sq": 1, "coeffs": [{"k": [1, 0, 0], "v": float("nan")}]})
        )


def test_round_trip(demo_potential):
    again = load_potential(serialize_potential(demo_potential).encode("utf-8"))
    assert again == demo_potential


def test_scale_identity(demo_potential):
    assert scale_coupling(demo_potential, 1.0) == demo_potential


def test_scale_zero_keeps_support(demo_potential):
    zero = scale_coupling(demo_potential, 0.0)
    assert set(zero.coeffs) == set(demo_potential.coeffs)
    assert all(val == 0.0 for val in zero.coeffs.values())


def test_scale_rejects_nonfinite(demo_potential):
    with pytest.raises(ValueError):
        scale_coupling(demo_potential, float("inf"))


def test_l1_norm_examples(demo_potential):
    assert l1_norm(scale_coupling(demo_potential, 0.0)) == 0.0
    v = make_potential({(1, 0, 0): 0.5})
    assert l1_norm(v) == 1.0
    assert l1_norm(scale_coupling(demo_potential, 2.0)) == pytest.approx(
        2.0 * l1_norm(demo_potential), rel=1e-15
    )


def test_positivity_flag(demo_potential):
    demo_potential.require_positive()  # all support coefficients > 0
    mixed = make_potential({(1, 0, 0): 0.5, (0, 1, 0): -0.1})
    assert not mixed.is_nonnegative()
    with pytest.raises(ValueError):
        mixed.require_positive()


@st.composite
def random_potentials(draw):
    n_entries = draw(st.integers(1, 6))
    entries = {}
    for _ in range(n_entries):
        k = tuple(draw(st.integers(-2, 2)) for _ in range(3))
        val = draw(
            st.floats(-4, 4, allow_nan=False, allow_infinity=False).filter(
                lambda x: x == 0.0 or abs(x) > 1e-30
            )
        )
        entries[k] = val
        entries[tuple(-c for c in k)] = val
    return make_potential(entries, support_radius_sq=12)


@given(random_potentials())
@settings(max_examples=50, deadline=None)
def test_round_trip_random(v):
    assert load_potential(serialize_potential(v).encode("utf-8")) == v


@given(random_potentials(), st.floats(-3, 3, allow_nan=False))
@settings(max_examples=50, deadline=None)
def test_evenness_preserved_under_scaling(v, s):
    scaled = scale_coupling(v, s)
    for k in scaled.support():
        assert scaled.value(k) == scaled.value(tuple(-c for c in k))
