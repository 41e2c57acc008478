import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2quandle.diagrams import Coloring, GroupWord
from sl2quandle.longitudinal import (
    InvalidColoring,
    apply_inner,
    coloring_to_representation,
    evaluate_word,
    expected_longitudinal,
    family_from_images,
    log_scale_error,
    longitude_record,
    longitudinal_value,
    relative_error,
)
from sl2quandle.quandle import ValidationError
from sl2quandle.sl2r import conjugate, identity, mat, mat_det, mat_trace, max_abs, random_sl2
from sl2quandle.torus import build_family, hyperbolic_js, trivial_family

GRID = [(r, n, j) for r in (0.5, 1.0, 2.0) for n in (3, 5, 7, 9) for j in hyperbolic_js(n)]


def naive_longitude(x, y, n):
    """x^(-2n) (xy)^n with numpy's inverse and power, independent of the word machinery."""
    return np.linalg.matrix_power(np.linalg.inv(x), 2 * n) @ np.linalg.matrix_power(x @ y, n)


def test_relators_hold_on_families():
    for r, n, j in GRID:
        rep = coloring_to_representation(build_family(r, n, j, 1.0).coloring(), r)
        assert len(rep.images) == n


def test_perturbed_arc_rejected():
    c = build_family(1.0, 5, 1, 1.0).coloring()
    vals = list(c.values)
    vals[2] = vals[2] + np.array([[1e-2, 0.0], [0.0, 0.0]])
    with pytest.raises(InvalidColoring):
        coloring_to_representation(Coloring(vals))


def test_wrong_meridian_trace_rejected():
    c = build_family(1.0, 3, 1, 1.0).coloring()
    with pytest.raises(InvalidColoring):
        coloring_to_representation(c, r=1.5)


def test_wrong_arc_count_rejected():
    c = build_family(1.0, 3, 1, 1.0).coloring()
    with pytest.raises(InvalidColoring):
        longitudinal_value(c, 5)


def test_evaluate_trivial_words():
    rep = coloring_to_representation(build_family(1.0, 3, 1, 1.0).coloring())
    assert np.array_equal(evaluate_word(GroupWord([]), rep), identity())
    got = evaluate_word(GroupWord([(0, 1), (0, -1)]), rep)
    assert max_abs(got - identity()) <= 1e-12


def test_trefoil_longitude_value():
    f = build_family(1.0, 3, 1, 1.0)
    val = longitudinal_value(f.coloring(), 3, 1.0)
    assert val[0, 0] == pytest.approx(-0.0024787521766663585, rel=1e-9)
    assert val[1, 1] == pytest.approx(-403.4287934927351, rel=1e-9)
    assert abs(val[0, 1]) <= 1e-9 and abs(val[1, 0]) <= 1e-9


@pytest.mark.parametrize("r,n,j", GRID)
def test_longitude_matches_closed_form_and_oracle(r, n, j):
    f = build_family(r, n, j, -2.0)
    val = longitudinal_value(f.coloring(), n, r)
    want = expected_longitudinal(r, n, "hyperbolic")
    assert relative_error(val, want) <= 1e-6
    assert relative_error(naive_longitude(f.x, f.y, n), want) <= 1e-6


@pytest.mark.parametrize("r,n", [(0.5, 3), (1.0, 7), (2.0, 9)])
def test_trivial_longitude_is_identity(r, n):
    f = trivial_family(r, n)
    assert max_abs(longitudinal_value(f.coloring(), n, r) - identity()) <= 1e-9
    rec = longitude_record(f)
    assert rec.passed and rec.max_abs_err <= 1e-9


def test_expected_rejects_unknown_kind():
    with pytest.raises(ValidationError):
        expected_longitudinal(1.0, 3, "parabolic")


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.sampled_from(GRID))
def test_inner_automorphism_equivariance(seed, rnj):
    r, n, j = rnj
    f = build_family(r, n, j, 1.0)
    g = random_sl2(seed)
    c = apply_inner(g, f.coloring())
    val = longitudinal_value(c, n, r)
    assert relative_error(val, conjugate(longitudinal_value(f.coloring(), n, r), g)) <= 1e-6
    rec = longitude_record(f, g)
    assert rec.passed
    # the longitude commutes with the meridian and lies in SL(2, R)
    assert rec.commutator <= 1e-6
    # ad - bc cancels products of size max_abs(val)^2
    assert abs(mat_det(val) - 1) <= 1e-9 * max(1.0, max_abs(val)) ** 2
    assert mat_trace(val) == pytest.approx(-2 * math.cosh(2 * n * r), rel=1e-8)


def test_record_paths():
    small = longitude_record(build_family(0.5, 9, 1, 1.0))
    assert small.comparison == "absolute" and small.passed
    big = longitude_record(build_family(2.0, 9, 1, 1.0))
    assert big.comparison == "log" and big.passed
    assert set(big.to_json()) >= {"longitude", "expected", "max_abs_err", "rel_err", "pass"}


def test_error_metrics():
    e = np.diag([-1e-8, -1e8])
    assert relative_error(e, e) == 0
    assert relative_error(e * (1 + 1e-7), e) == pytest.approx(1e-7)
    assert log_scale_error(-e, e) == math.inf
    assert log_scale_error(e * math.e, e) == pytest.approx(1.0)
    assert relative_error(np.zeros((2, 2)), np.zeros((2, 2))) == 0


def test_family_from_images_round_trip():
    f = build_family(1.0, 5, 3, 1.0)
    c = f.coloring()
    back = family_from_images(c.values, 1.0)
    assert all(np.array_equal(u, v) for u, v in zip(back.values, c.values))
    with pytest.raises(InvalidColoring):
        family_from_images([mat(1, 0, 0, 1)] * 2 + [c.values[2]], 1.0)
