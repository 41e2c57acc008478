"""Representations of the torus-knot group from S²₁(r)-colorings, and f(𝔩).

A coloring becomes a homomorphism on Wirtinger generators by sending each
arc to its matrix. The longitude is 𝔩 = α_0^(-2n) (α_0 α_1)^n, so the
longitudinal value of a coloring is x^(-2n) (xy)^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .diagrams import Coloring, GroupWord, evaluate, longitude_word, torus_diagram
from .quandle import ValidationError
from .sl2r import D, conjugate, identity, mat_det, mat_inv, mat_trace, max_abs
from .sl2r import to_json as mat_json
from .torus import ColoringFamily

TOL = 1e-8
ATOL = 1e-6
RTOL = 1e-6
# above this n*r the comparison runs on sign and log|entry|
LOG_SCALE_THRESHOLD = 10.0


class InvalidColoring(ValidationError):
    """Arc images that break a Wirtinger relator or the meridian trace."""


@dataclass
class RepresentationOnGenerators:
    images: list

    def relator_residuals(self) -> list[float]:
        """max-entry size of α_{i+2}^-1 α_{i+1}^-1 α_i α_{i+1} - I around the diagram."""
        n = len(self.images)
        out = []
        for i in range(n):
            a0, a1, a2 = self.images[i], self.images[(i + 1) % n], self.images[(i + 2) % n]
            out.append(max_abs(mat_inv(a2) @ mat_inv(a1) @ a0 @ a1 - identity()))
        return out


def coloring_to_representation(c: Coloring, r: Optional[float] = None, tol: float = TOL) -> RepresentationOnGenerators:
    """Send arc i to C(α_i); checks every relator and, given r, trace f(α_0) = 2cosh r.

    Relators are compared at ``tol`` scaled by the largest arc entry.
    """
    images = [np.asarray(v, dtype=float) for v in c.values]
    if len(images) < 3:
        raise InvalidColoring("a torus-knot coloring needs at least three arcs")
    rep = RepresentationOnGenerators(images)
    scale = max(1.0, max(max_abs(m) for m in images)) ** 2
    residuals = rep.relator_residuals()
    worst = int(np.argmax(residuals))
    if residuals[worst] > tol * scale:
        raise InvalidColoring(f"relator {worst} violated by {residuals[worst]:.3g}")
    if r is not None and abs(mat_trace(images[0]) - 2 * math.cosh(r)) > tol * scale:
        raise InvalidColoring("meridian image does not have trace 2cosh r")
    return rep


def evaluate_word(w: GroupWord, rep: RepresentationOnGenerators) -> np.ndarray:
    return evaluate(w, rep.images, lambda u, v: u @ v, mat_inv, identity())


def longitudinal_value(c: Coloring, n: int, r: Optional[float] = None, tol: float = TOL) -> np.ndarray:
    """f(𝔩) for the representation attached to ``c``."""
    if len(c) != n:
        raise InvalidColoring(f"coloring has {len(c)} arcs, the diagram has {n}")
    torus_diagram(n)
    rep = coloring_to_representation(c, r, tol)
    return evaluate_word(longitude_word(n), rep)


def expected_longitudinal(r: float, n: int, kind: str, g: Optional[np.ndarray] = None) -> np.ndarray:
    """I for the constant coloring; g^-1 diag(-e^(-2nr), -e^(2nr)) g otherwise."""
    if kind == "trivial":
        return identity()
    if kind != "hyperbolic":
        raise ValidationError(f"unknown family kind {kind!r}")
    value = np.diag([-math.exp(-2 * n * r), -math.exp(2 * n * r)])
    return value if g is None else conjugate(value, g)


def apply_inner(g, c: Coloring) -> Coloring:
    """Conjugate every arc value by g (the inner automorphism v -> g^-1 v g)."""
    mat_inv(g)
    return Coloring([conjugate(v, g) for v in c.values])


def commutator_residual(u, v) -> float:
    return max_abs(u @ v - v @ u) / max(1.0, max_abs(u) * max_abs(v))


def relative_error(computed, expected, floor: float = 1e-9) -> float:
    """Entry-wise relative error.

    Entries of ``expected`` smaller than ``floor`` times its largest entry
    are numerically zero at this scale and are measured against the
    largest entry instead.
    """
    computed = np.asarray(computed, dtype=float)
    expected = np.asarray(expected, dtype=float)
    scale = max_abs(expected)
    if scale == 0:
        return max_abs(computed)
    ref = np.where(np.abs(expected) >= floor * scale, np.abs(expected), scale)
    return float(np.max(np.abs(computed - expected) / ref))


def log_scale_error(computed, expected, floor: float = 1e-9) -> float:
    """Largest |log|c| - log|e|| over significant entries (inf on a sign flip);
    the remaining entries contribute their error relative to the largest entry."""
    computed = np.asarray(computed, dtype=float)
    expected = np.asarray(expected, dtype=float)
    scale = max_abs(expected)
    big = np.abs(expected) >= floor * scale
    worst = 0.0
    for cv, ev, significant in zip(computed.flat, expected.flat, big.flat):
        if significant:
            if np.sign(cv) != np.sign(ev):
                return math.inf
            worst = max(worst, abs(math.log(abs(cv)) - math.log(abs(ev))))
        else:
            worst = max(worst, abs(cv - ev) / scale)
    return worst


@dataclass
class LongitudeRecord:
    family: ColoringFamily
    longitude: np.ndarray
    expected: np.ndarray
    max_abs_err: float
    rel_err: float
    comparison: str
    error: float
    passed: bool
    det: float
    trace: float
    commutator: float

    def to_json(self) -> dict:
        return {
            "family": self.family.to_json(),
            "longitude": mat_json(self.longitude),
            "expected": mat_json(self.expected),
            "max_abs_err": self.max_abs_err,
            "rel_err": self.rel_err,
            "comparison": self.comparison,
            "error": self.error,
            "det": self.det,
            "trace": self.trace,
            "commutator": self.commutator,
            "pass": self.passed,
        }


def longitude_record(
    family: ColoringFamily,
    g: Optional[np.ndarray] = None,
    atol: float = ATOL,
    rtol: float = RTOL,
    tol: float = TOL,
) -> LongitudeRecord:
    """Compute f(𝔩) for ``family`` (conjugated by ``g``) and compare with the closed form.

    Small values (n*r <= 10, no conjugator) are compared absolutely at
    ``atol``; otherwise sign and log-magnitude are compared at ``rtol``.
    """
    c = family.coloring(tol)
    if g is not None:
        c = apply_inner(g, c)
    value = longitudinal_value(c, family.n, family.r, tol)
    expected = expected_longitudinal(family.r, family.n, family.kind, g)
    abs_err = max_abs(value - expected)
    rel = relative_error(value, expected)
    if family.n * family.r > LOG_SCALE_THRESHOLD or g is not None:
        comparison, err, limit = "log", log_scale_error(value, expected), rtol
    else:
        comparison, err, limit = "absolute", abs_err, atol
    return LongitudeRecord(
        family, value, expected, abs_err, rel, comparison, err, err <= limit,
        mat_det(value), mat_trace(value), commutator_residual(value, c.values[0]),
    )


def family_from_images(images: Sequence[np.ndarray], r: float) -> Coloring:
    """Round trip for the representation side: recover the coloring from generator images."""
    c = Coloring([np.asarray(m, dtype=float) for m in images])
    coloring_to_representation(c, r)
    return c
