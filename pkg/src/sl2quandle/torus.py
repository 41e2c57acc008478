"""Closed-form S²₁(r)-colorings of (2, n)-torus knots.

With x = D(r) and y = (a b; c d) in S²₁(r), a seed pair colors the (2, n)
diagram iff (xy)^k x = y (xy)^k for n = 2k + 1. Up to conjugation the
solutions are the constant coloring and the families indexed by odd
j in [1, n-2], b != 0 free and c fixed by the product bc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .diagrams import Coloring, _check_torus_n, coloring_from_pair
from .quandle import ValidationError
from .sl2r import D, conj_op, identity, mat, mat_trace, max_abs, rng_from
from .sl2r import to_json as mat_json

# |λ - μ| below this dispatches to the repeated-root (Jordan) formula.
DEGENERATE_TOL = 1e-7
TOL = 1e-8


def hyperbolic_js(n: int) -> list[int]:
    _check_torus_n(n)
    return list(range(1, n - 1, 2))


def _check_j(n: int, j: int):
    _check_torus_n(n)
    if j not in hyperbolic_js(n):
        raise ValidationError(f"j must be odd with 1 <= j <= n-2, got j={j} for n={n}")


def _check_r(r: float):
    if not (r > 0 and math.isfinite(r)):
        raise ValidationError(f"r must be a positive real, got {r}")


def theta(n: int, j: int) -> float:
    _check_j(n, j)
    return math.pi * j / (2 * n)


def family_params(r: float, n: int, j: int) -> tuple[float, float, float]:
    """(a, d, bc) of the non-trivial family j."""
    _check_r(r)
    th = theta(n, j)
    sh, ch = math.sinh(r), math.cosh(r)
    cos2 = math.cos(2 * th)
    a = (-math.exp(-r) * ch + cos2) / sh
    d = (math.exp(r) * ch - cos2) / sh
    s2 = math.sin(th) ** 2
    bc = -4.0 * s2 * (s2 + sh * sh) / (sh * sh)
    return a, d, bc


@dataclass
class ColoringFamily:
    kind: str
    r: float
    n: int
    x: np.ndarray
    y: np.ndarray
    j: Optional[int] = None
    b: Optional[float] = None
    c: Optional[float] = None
    bc: Optional[float] = field(default=None, repr=False)

    @property
    def k(self) -> int:
        return (self.n - 1) // 2

    @property
    def hyperbolic(self) -> bool:
        return self.kind == "hyperbolic"

    def coloring(self, tol: float = TOL) -> Coloring:
        return coloring_from_pair(self.x, self.y, self.n, conj_op, tol=tol)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "r": self.r,
            "n": self.n,
            "j": self.j,
            "b": self.b,
            "c": self.c,
            "y": mat_json(self.y),
        }


def trivial_family(r: float, n: int) -> ColoringFamily:
    _check_r(r)
    _check_torus_n(n)
    return ColoringFamily("trivial", r, n, D(r), D(r))


def build_family(r: float, n: int, j: int, b: float) -> ColoringFamily:
    if b == 0 or not math.isfinite(b):
        raise ValidationError("b must be a nonzero real")
    a, d, bc = family_params(r, n, j)
    c = bc / b
    return ColoringFamily("hyperbolic", r, n, D(r), mat(a, b, c, d), j=j, b=float(b), c=c, bc=bc)


def all_families(r: float, n: int, b: float = 1.0) -> list[ColoringFamily]:
    """The trivial family followed by one representative per admissible j."""
    return [trivial_family(r, n)] + [build_family(r, n, j, b) for j in hyperbolic_js(n)]


def equation_residual(x, y, k: int) -> float:
    """max-entry size of (xy)^k x - y (xy)^k, by repeated multiplication."""
    xy = x @ y
    p = identity()
    for _ in range(k):
        p = p @ xy
    return max_abs(p @ x - y @ p)


def verify_equation(x, y, k: int, tol: float = TOL) -> bool:
    if k < 1:
        raise ValidationError("k must be a positive integer")
    return equation_residual(x, y, k) <= tol


# -- powers of xy --------------------------------------------------------------


@dataclass
class RootPair:
    lam: complex
    mu: complex

    @property
    def repeated(self) -> bool:
        return abs(self.lam - self.mu) < DEGENERATE_TOL


def _diag_entries(x):
    if x[0, 1] != 0 or x[1, 0] != 0:
        raise ValidationError("closed forms need a diagonal first matrix")
    return float(x[0, 0]), float(x[1, 1])


def char_roots(x, y) -> RootPair:
    """Roots of t^2 - trace(xy) t + 1; ``lam`` has the larger imaginary, then real, part."""
    t = mat_trace(x @ y)
    sq = np.sqrt(complex(t * t - 4.0))
    lam, mu = (t + sq) / 2, (t - sq) / 2
    if (mu.imag, mu.real) > (lam.imag, lam.real):
        lam, mu = mu, lam
    return RootPair(complex(lam), complex(mu))


def power_branch(x, y, degenerate_tol: float = DEGENERATE_TOL) -> str:
    """One of ``"b=0"``, ``"c=0"``, ``"distinct"``, ``"repeated"``."""
    if y[0, 1] == 0:
        return "b=0"
    if y[1, 0] == 0:
        return "c=0"
    roots = char_roots(x, y)
    return "repeated" if abs(roots.lam - roots.mu) < degenerate_tol else "distinct"


def xy_power_closed(x, y, m: int, degenerate_tol: float = DEGENERATE_TOL) -> np.ndarray:
    """(xy)^m for diagonal x and y in SL(2, R), without repeated multiplication.

    In the repeated-root branch the root is taken as trace(xy)/2 = ±1 and
    (xy)^m = m λ^(m-1) xy - (m-1) λ^m I.
    """
    if m < 1:
        raise ValidationError("m must be a positive integer")
    p, q = _diag_entries(x)
    a, b, c, d = float(y[0, 0]), float(y[0, 1]), float(y[1, 0]), float(y[1, 1])
    ap, dq = a * p, d * q
    branch = power_branch(x, y, degenerate_tol)

    if branch in ("b=0", "c=0"):
        geo = sum(ap**i * dq ** (m - i - 1) for i in range(m))
        if branch == "b=0":
            return mat(ap**m, 0.0, c * q * geo, dq**m)
        return mat(ap**m, b * p * geo, 0.0, dq**m)

    if branch == "repeated":
        lam = 1.0 if ap + dq > 0 else -1.0
        lm1 = lam ** (m - 1)
        return mat(
            (ap * m - (m - 1) * lam) * lm1,
            b * p * m * lm1,
            c * q * m * lm1,
            ((m + 1) * lam - ap * m) * lm1,
        )

    roots = char_roots(x, y)
    lam, mu = roots.lam, roots.mu
    span = lam - mu
    s_m = (lam**m - mu**m) / span
    s_prev = (lam ** (m - 1) - mu ** (m - 1)) / span
    s_next = (lam ** (m + 1) - mu ** (m + 1)) / span
    out = np.array(
        [
            [-s_prev + ap * s_m, b * p * s_m],
            [c * q * s_m, s_next - ap * s_m],
        ]
    )
    return out.real.copy()


def xy_power_iterated(x, y, m: int) -> np.ndarray:
    xy = x @ y
    out = identity()
    for _ in range(m):
        out = out @ xy
    return out


def lambda_solutions(m: int) -> list[complex]:
    """exp(πj i/(2m+1)) for odd j in [1, 4m+1], j != 2m+1."""
    if m < 1:
        raise ValidationError("m must be a positive integer")
    js = [j for j in range(1, 4 * m + 2, 2) if j != 2 * m + 1]
    return [complex(np.exp(1j * math.pi * j / (2 * m + 1))) for j in js]


def minus_identity_residual(f: ColoringFamily) -> float:
    return max_abs(np.linalg.matrix_power(f.x @ f.y, f.n) + identity())


def verify_minus_identity(f: ColoringFamily, tol: float = TOL) -> bool:
    """(x y)^n = -I for a non-trivial family."""
    if not f.hyperbolic:
        raise ValidationError("(xy)^n = -I only holds for the non-trivial families")
    return minus_identity_residual(f) <= tol


# -- the case analysis, checked on grids -------------------------------------------


def _signed_grid(lo_exp: float, hi_exp: float, count: int) -> np.ndarray:
    mags = np.logspace(lo_exp, hi_exp, count)
    return np.concatenate([-mags[::-1], mags])


@dataclass
class DichotomyReport:
    r: float
    n: int
    trivial_residual: float
    inverse_diagonal_residual: float
    triangular_min_residual: float
    triangular_points: int
    repeated_min_residual: float
    repeated_points: int
    family_max_residual: float
    spurious: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.spurious

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "n": self.n,
            "trivial_residual": self.trivial_residual,
            "inverse_diagonal_residual": self.inverse_diagonal_residual,
            "triangular_min_residual": self.triangular_min_residual,
            "triangular_points": self.triangular_points,
            "repeated_min_residual": self.repeated_min_residual,
            "repeated_points": self.repeated_points,
            "family_max_residual": self.family_max_residual,
            "spurious": self.spurious,
            "ok": self.ok,
        }


def case_dichotomies(
    r: float,
    n: int,
    grid: Optional[np.ndarray] = None,
    zero_tol: float = 1e-6,
    repeated_floor: float = 1e-3,
    tol: float = TOL,
) -> DichotomyReport:
    """Residual scans over the three branches of the case analysis.

    * b = 0 or c = 0: trace and determinant force a in {e^r, e^-r}; the
      remaining off-diagonal entry runs over ``grid``. Only (e^r, 0, 0, e^-r)
      may have zero residual.
    * b, c != 0 with a repeated root: trace(xy) = -2 (trace(xy) = 2 forces
      bc = 0), b runs over ``grid``; the residual must stay above
      ``repeated_floor``.
    * the non-trivial families must have residual below ``tol``.
    """
    _check_r(r)
    _check_torus_n(n)
    k = (n - 1) // 2
    if grid is None:
        grid = _signed_grid(-2, 1, 31)
    x = D(r)
    er, emr = math.exp(r), math.exp(-r)
    spurious = []

    trivial = equation_residual(x, mat(er, 0, 0, emr), k)
    if trivial > tol:
        spurious.append({"branch": "trivial", "residual": trivial})
    inverse_diag = equation_residual(x, mat(emr, 0, 0, er), k)
    if inverse_diag <= zero_tol:
        spurious.append({"branch": "diagonal", "a": emr, "residual": inverse_diag})

    tri = []
    for a, d in ((er, emr), (emr, er)):
        for s in grid:
            for y, label in ((mat(a, 0, s, d), "c"), (mat(a, s, 0, d), "b")):
                res = equation_residual(x, y, k)
                tri.append(res)
                if res <= zero_tol:
                    spurious.append({"branch": "triangular", "a": a, label: float(s), "residual": res})

    ch, sh = math.cosh(r), math.sinh(r)
    a = (-2.0 - 2.0 * ch * emr) / (2.0 * sh)
    d = 2.0 * ch - a
    bc = a * d - 1.0
    rep = []
    for b in grid:
        if b == 0:
            continue
        y = mat(a, b, bc / b, d)
        res = equation_residual(x, y, k)
        rep.append(res)
        if res <= repeated_floor:
            spurious.append({"branch": "repeated", "b": float(b), "residual": res})

    fam = max(equation_residual(x, build_family(r, n, j, 1.0).y, k) for j in hyperbolic_js(n))
    if fam > tol:
        spurious.append({"branch": "family", "residual": fam})

    return DichotomyReport(
        r, n, trivial, inverse_diag, min(tri), len(tri), min(rep), len(rep), fam, spurious
    )


POWER_BRANCHES = ("b=0", "c=0", "distinct", "repeated")


def random_power_instance(branch: str, seed=None) -> tuple[np.ndarray, np.ndarray]:
    """A pair (D(r), y) with y in SL(2, R) landing in the requested branch of
    :func:`xy_power_closed`; r is drawn from [0.1, 2]."""
    if branch not in POWER_BRANCHES:
        raise ValidationError(f"unknown branch {branch!r}")
    rng = rng_from(seed)
    r = rng.uniform(0.1, 2.0)
    x = D(r)
    p, q = x[0, 0], x[1, 1]

    def nonzero():
        while True:
            v = rng.uniform(-3.0, 3.0)
            if abs(v) > 0.1:
                return v

    while True:
        if branch in ("b=0", "c=0"):
            a = nonzero()
            off = nonzero()
            y = mat(a, 0.0, off, 1 / a) if branch == "b=0" else mat(a, off, 0.0, 1 / a)
        elif branch == "distinct":
            a, b, d = nonzero(), nonzero(), nonzero()
            y = mat(a, b, (a * d - 1) / b, d)
        else:
            t = 2.0 if rng.uniform() < 0.5 else -2.0
            a, b = nonzero(), nonzero()
            d = (t - a * p) / q
            y = mat(a, b, (a * d - 1) / b, d)
        if branch in ("b=0", "c=0") or (y[1, 0] != 0 and power_branch(x, y) == branch):
            return x, y
