import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2quandle.quandle import ValidationError
from sl2quandle.sl2r import (
    D,
    SingularMatrixError,
    azcan_fenn_op,
    conj_op,
    conjugate,
    from_json,
    hyperboloid_point,
    identity,
    in_class,
    involutory_counterexample,
    involutory_deviation,
    iwasawa,
    lorentz_form,
    mat,
    mat_det,
    mat_inv,
    mat_trace,
    max_abs,
    random_hyperboloid,
    random_sl2,
    sample_class,
    to_json,
)

iwasawa_params = st.tuples(
    st.floats(0, 2 * math.pi), st.floats(-2, 2), st.floats(-2, 2)
).map(lambda p: iwasawa(*p))
radii = st.floats(0.05, 3.0)
hyperboloid = st.tuples(st.floats(-2, 2), st.floats(0, 2 * math.pi)).map(lambda p: hyperboloid_point(*p))


def close(u, v, tol):
    """max-entry difference, relative to the larger of the two operands."""
    return max_abs(u - v) <= tol * max(1.0, max_abs(u), max_abs(v))


def test_inverse_and_trace():
    assert np.allclose(D(1.3) @ mat_inv(D(1.3)), identity(), atol=1e-15)
    # e + 1/e
    assert mat_trace(D(1.0)) == pytest.approx(3.0861612696304874, abs=1e-12)
    assert mat_det(D(2.5)) == pytest.approx(1.0, abs=1e-12)


def test_singular_inverse():
    with pytest.raises(SingularMatrixError):
        mat_inv(mat(1, 2, 2, 4))


def test_general_inverse():
    m = mat(2, 1, 1, 3)
    assert np.allclose(m @ mat_inv(m), identity())


@given(iwasawa_params, iwasawa_params)
def test_conjugation_preserves_det(g, m):
    assert mat_det(conjugate(m, g)) == pytest.approx(mat_det(m), abs=1e-9)


def test_conj_op_basics():
    x = sample_class(1.0, 3)
    assert close(conj_op(x, x), x, 1e-12)
    assert close(conj_op(D(1.0), D(0.3)), D(1.0), 1e-15)


@given(iwasawa_params, iwasawa_params)
def test_conj_op_keeps_trace(x, y):
    assert mat_trace(conj_op(x, y)) == pytest.approx(mat_trace(x), abs=1e-12 * max(1, max_abs(x)) * 1e3)


def test_D_rejects_nonpositive():
    with pytest.raises(ValidationError):
        D(0.0)
    with pytest.raises(ValidationError):
        D(-1.0)


def test_in_class():
    assert in_class(D(0.7), 0.7)
    assert not in_class(identity(), 0.7)
    g = random_sl2(11)
    assert in_class(conjugate(D(0.7), g), 0.7, 1e-9)


def test_sample_class():
    for seed in range(20):
        assert in_class(sample_class(1.2, seed), 1.2, 1e-9)
    assert np.array_equal(sample_class(1.2, 5), sample_class(1.2, 5))
    assert np.array_equal(sample_class(1.2, g=identity()), D(1.2))


def test_matrix_json():
    m = mat(1.5, -2, 0.25, 1)
    assert np.array_equal(from_json(to_json(m)), m)


@settings(max_examples=200)
@given(iwasawa_params, iwasawa_params, iwasawa_params)
def test_conjugation_quandle_axioms(x, y, z):
    assert close(conj_op(x, x), x, 1e-9)
    # Q2: conjugating back by y^-1 undoes the operation
    assert close(conj_op(conj_op(x, y), mat_inv(y)), x, 1e-9)
    assert close(conj_op(conj_op(x, y), z), conj_op(conj_op(x, z), conj_op(y, z)), 1e-9)


@settings(max_examples=200)
@given(radii, iwasawa_params, iwasawa_params)
def test_class_membership_is_conjugation_invariant(r, g, h):
    m = conjugate(D(r), h)
    assert in_class(conjugate(m, g), r, 1e-6 * max(1.0, max_abs(m)))


def test_lorentz_form():
    assert lorentz_form([0, 1, 0], [0, 1, 0]) == 1
    assert lorentz_form([1, 0, 0], [1, 0, 0]) == -1
    rng = np.random.default_rng(0)
    for _ in range(100):
        u, v = rng.normal(size=3), rng.normal(size=3)
        assert abs(lorentz_form(u, v) - lorentz_form(v, u)) <= 1e-12


def test_azcan_fenn_examples():
    x = np.array([0.0, 1.0, 0.0])
    y = np.array([0.0, 0.0, 1.0])
    assert np.allclose(azcan_fenn_op(x, y), [0.0, -1.0, 0.0])
    p = random_hyperboloid(4)
    assert np.allclose(azcan_fenn_op(p, p), p)
    with pytest.raises(ValidationError):
        azcan_fenn_op([1.0, 0.0, 0.0], x)


@settings(max_examples=300)
@given(hyperboloid, hyperboloid, hyperboloid)
def test_azcan_fenn_is_a_kei(x, y, z):
    xy = azcan_fenn_op(x, y)
    assert abs(lorentz_form(xy, xy) - 1) <= 1e-9 * max(1.0, max_abs(xy)) ** 2
    assert close(azcan_fenn_op(xy, y), x, 1e-9)
    assert close(azcan_fenn_op(xy, z), azcan_fenn_op(azcan_fenn_op(x, z), azcan_fenn_op(y, z)), 1e-9)


def test_involutory_counterexample_found():
    w = involutory_counterexample(1.0, trials=100, seed=0)
    assert w is not None and w.deviation > 1e-6
    assert in_class(w.x, 1.0) and in_class(w.y, 1.0)
    assert involutory_deviation(w.x, w.y) == w.deviation


def test_involutory_non_examples():
    assert involutory_deviation(D(1.0), D(1.0)) == 0
    assert involutory_deviation(D(1.0), np.diag([2.0, 0.5])) == 0
    assert involutory_counterexample(1.0, trials=0) is None


def test_counterexample_is_deterministic():
    a = involutory_counterexample(0.5, 30, seed=9)
    b = involutory_counterexample(0.5, 30, seed=9)
    assert a.deviation == b.deviation and np.array_equal(a.x, b.x)
