"""2x2 real matrices, the hyperbolic conjugacy class S²₁(r), and the Lorentzian kei.

Matrices are plain ``(2, 2)`` float64 numpy arrays; a Lorentz vector is a
length-3 array ``(x0, x1, x2)`` with form ``-x0*y0 + x1*y1 + x2*y2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .quandle import ValidationError

TOL = 1e-9
CONJ_TOL = 1e-6

SeedLike = Union[int, np.random.Generator, None]


class SingularMatrixError(ValidationError):
    pass


def mat(a, b, c, d) -> np.ndarray:
    return np.array([[a, b], [c, d]], dtype=float)


def identity() -> np.ndarray:
    return np.eye(2)


def mat_det(m) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def mat_trace(m) -> float:
    return float(m[0, 0] + m[1, 1])


def mat_mul(x, y) -> np.ndarray:
    return np.asarray(x) @ np.asarray(y)


def mat_inv(m, tol: float = 1e-12) -> np.ndarray:
    """Adjugate inverse; exact swap-and-negate for determinant-one input."""
    det = mat_det(m)
    if abs(det) <= tol:
        raise SingularMatrixError(f"matrix is singular (det = {det:g})")
    adj = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=float)
    return adj if det == 1.0 else adj / det


def conjugate(m, g) -> np.ndarray:
    """g^-1 m g, the action of the inner automorphism attached to g."""
    return mat_inv(g) @ m @ g


def conj_op(x, y) -> np.ndarray:
    """Quandle operation of Conj(SL(2,R)): x ▷ y = y^-1 x y."""
    return conjugate(x, y)


def D(r: float) -> np.ndarray:
    if not r > 0:
        raise ValidationError(f"r must be positive, got {r}")
    return np.diag([np.exp(r), np.exp(-r)])


def in_class(m, r: float, tol: float = TOL) -> bool:
    """Membership in S²₁(r): determinant one and trace 2cosh r."""
    if not r > 0:
        raise ValidationError(f"r must be positive, got {r}")
    return abs(mat_det(m) - 1.0) <= tol and abs(mat_trace(m) - 2.0 * np.cosh(r)) <= tol


def max_abs(m) -> float:
    return float(np.max(np.abs(m)))


def rng_from(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def iwasawa(phi: float, s: float, t: float) -> np.ndarray:
    """K(phi) A(s) N(t)."""
    k = mat(np.cos(phi), -np.sin(phi), np.sin(phi), np.cos(phi))
    a = np.diag([np.exp(s), np.exp(-s)])
    n = mat(1.0, t, 0.0, 1.0)
    return k @ a @ n


def random_sl2(seed: SeedLike = None) -> np.ndarray:
    """Bounded random element: phi in [0, 2pi), s and t in [-2, 2]."""
    rng = rng_from(seed)
    return iwasawa(rng.uniform(0.0, 2 * np.pi), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))


def sample_class(r: float, seed: SeedLike = None, g: Optional[np.ndarray] = None) -> np.ndarray:
    """A point of S²₁(r) as g^-1 D(r) g; ``g`` is drawn from ``seed`` unless given."""
    if g is None:
        g = random_sl2(seed)
    return conjugate(D(r), g)


def to_json(m) -> dict:
    return {"a": float(m[0, 0]), "b": float(m[0, 1]), "c": float(m[1, 0]), "d": float(m[1, 1])}


def from_json(data: dict) -> np.ndarray:
    try:
        return mat(data["a"], data["b"], data["c"], data["d"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"bad matrix JSON: {exc}") from exc


# -- the hyperboloid of one sheet ---------------------------------------------

_SIGNATURE = np.array([-1.0, 1.0, 1.0])


def lorentz_form(x, y) -> float:
    return float(np.sum(_SIGNATURE * np.asarray(x, dtype=float) * np.asarray(y, dtype=float)))


def on_hyperboloid(x, tol: float = TOL) -> bool:
    return abs(lorentz_form(x, x) - 1.0) <= tol


def azcan_fenn_op(x, y, tol: float = TOL) -> np.ndarray:
    """x ▷ y = 2<x, y> y - x on the unit hyperboloid."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if not (on_hyperboloid(x, tol) and on_hyperboloid(y, tol)):
        raise ValidationError("both arguments must lie on the hyperboloid <v, v> = 1")
    return 2.0 * lorentz_form(x, y) * y - x


def hyperboloid_point(u: float, phi: float) -> np.ndarray:
    return np.array([np.sinh(u), np.cosh(u) * np.cos(phi), np.cosh(u) * np.sin(phi)])


def random_hyperboloid(seed: SeedLike = None, height: float = 2.0) -> np.ndarray:
    rng = rng_from(seed)
    return hyperboloid_point(rng.uniform(-height, height), rng.uniform(0.0, 2 * np.pi))


@dataclass
class InvolutoryWitness:
    x: np.ndarray
    y: np.ndarray
    deviation: float


def involutory_deviation(x, y) -> float:
    """max-entry size of (x ▷ y) ▷ y - x in Conj(SL(2,R))."""
    return max_abs(conj_op(conj_op(x, y), y) - x)


def involutory_counterexample(
    r: float, trials: int = 100, seed: SeedLike = 0, threshold: float = 1e-6
) -> Optional[InvolutoryWitness]:
    """Sample pairs in S²₁(r) and return the one breaking the kei identity worst.

    Returns ``None`` if no sampled pair deviates by more than ``threshold``.
    """
    rng = rng_from(seed)
    best = None
    for _ in range(trials):
        x = sample_class(r, rng)
        y = sample_class(r, rng)
        dev = involutory_deviation(x, y)
        if best is None or dev > best.deviation:
            best = InvolutoryWitness(x, y, dev)
    if best is None or best.deviation <= threshold:
        return None
    return best
