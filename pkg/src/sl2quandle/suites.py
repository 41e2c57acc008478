"""Grid and randomized checks of the closed forms, shared by the CLI and the tests."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .sl2r import in_class, mat_det, mat_trace, max_abs, rng_from
from .torus import (
    POWER_BRANCHES,
    build_family,
    case_dichotomies,
    char_roots,
    equation_residual,
    hyperbolic_js,
    lambda_solutions,
    minus_identity_residual,
    random_power_instance,
    xy_power_closed,
    xy_power_iterated,
)

DEFAULT_RS = (0.5, 1.0, 2.0)
DEFAULT_NS = (3, 5, 7, 9)
DEFAULT_BS = (1.0, -2.0)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    worst: float = 0.0
    details: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def record(self, good: bool, value: float = 0.0, **info):
        if good:
            self.passed += 1
        else:
            self.failed += 1
            self.details.append(dict(info, value=value))
        if not math.isnan(value):
            self.worst = max(self.worst, value)

    def to_json(self) -> dict:
        return {
            "lemma": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "worst": self.worst,
            "ok": self.ok,
            "failures": self.details,
        }


def roots_suite(ms, tol: float = 1e-10) -> SuiteResult:
    """Each listed λ solves λ^(2m+1) = -1, λ != -1, λ^m - μ^m = λ^(m+1) - μ^(m+1)
    with μ = 1/λ; there are 2m of them and λ + μ hits every 2cos(πj/(2m+1))."""
    res = SuiteResult("roots")
    for m in ms:
        roots = lambda_solutions(m)
        res.record(len(roots) == 2 * m, float(abs(len(roots) - 2 * m)), m=m, check="count")
        for lam in roots:
            mu = 1 / lam
            err = max(
                abs(lam ** (2 * m + 1) + 1),
                abs((lam**m - mu**m) - (lam ** (m + 1) - mu ** (m + 1))),
            )
            res.record(err <= tol and abs(lam + 1) > tol, err, m=m, root=str(lam))
        sums = sorted({round((lam + 1 / lam).real, 12) for lam in roots})
        want = sorted(round(2 * math.cos(math.pi * j / (2 * m + 1)), 12) for j in range(1, 2 * m, 2))
        res.record(sums == want, 0.0 if sums == want else 1.0, m=m, check="cosines")
    return res


def power_suite(max_m: int = 50, instances: int = 200, seed=0, tol: float = 1e-7) -> SuiteResult:
    """Closed-form (xy)^m against repeated multiplication, spread over the four branches.

    Error is max-entry difference over max(1, max-entry of the iterated product).
    """
    res = SuiteResult("power")
    rng = rng_from(seed)
    for i in range(instances):
        branch = POWER_BRANCHES[i % len(POWER_BRANCHES)]
        x, y = random_power_instance(branch, rng)
        worst = 0.0
        for m in range(1, max_m + 1):
            it = xy_power_iterated(x, y, m)
            worst = max(worst, max_abs(xy_power_closed(x, y, m) - it) / max(1.0, max_abs(it)))
        res.record(worst <= tol, worst, branch=branch, instance=i)
    return res


def family_suite(rs=DEFAULT_RS, ns=DEFAULT_NS, bs=DEFAULT_BS, tol: float = 1e-8) -> SuiteResult:
    """trace y = 2cosh r, det y = 1, the closure equation and (xy)^n = -I on the grid."""
    res = SuiteResult("families")
    for r in rs:
        for n in ns:
            for j in hyperbolic_js(n):
                for b in bs:
                    f = build_family(r, n, j, b)
                    checks = {
                        "trace": abs(mat_trace(f.y) - 2 * math.cosh(r)),
                        "det": abs(mat_det(f.y) - 1),
                        "equation": equation_residual(f.x, f.y, f.k),
                        "minus_identity": minus_identity_residual(f),
                    }
                    worst = max(checks.values())
                    res.record(worst <= tol and in_class(f.y, r, tol) and f.bc < 0, worst, r=r, n=n, j=j, b=b, **checks)
    return res


def char_root_suite(rs=DEFAULT_RS, ns=DEFAULT_NS, tol: float = 1e-8) -> SuiteResult:
    """Roots of the family's characteristic polynomial are exp(±iπj/n)."""
    res = SuiteResult("char-roots")
    for r in rs:
        for n in ns:
            for j in hyperbolic_js(n):
                f = build_family(r, n, j, 1.0)
                roots = char_roots(f.x, f.y)
                want = np.exp(1j * math.pi * j / n)
                err = max(abs(roots.lam - want), abs(roots.mu - np.conj(want)), abs(roots.lam * roots.mu - 1))
                res.record(err <= tol, err, r=r, n=n, j=j)
    return res


def dichotomy_suite(rs=DEFAULT_RS, ns=DEFAULT_NS) -> SuiteResult:
    res = SuiteResult("dichotomy")
    for r in rs:
        for n in ns:
            rep = case_dichotomies(r, n)
            res.record(rep.ok, float(len(rep.spurious)), r=r, n=n, spurious=rep.spurious)
    return res


SUITES = ("roots", "power", "families", "char-roots", "dichotomy")


def run_suites(names=SUITES, rs=DEFAULT_RS, ns=DEFAULT_NS, m=None, instances: int = 200, seed=0) -> list[SuiteResult]:
    out = []
    for name in names:
        if name == "roots":
            out.append(roots_suite([m] if m else range(1, 11)))
        elif name == "power":
            out.append(power_suite(m or 50, instances, seed))
        elif name == "families":
            out.append(family_suite(rs, ns))
        elif name == "char-roots":
            out.append(char_root_suite(rs, ns))
        elif name == "dichotomy":
            out.append(dichotomy_suite(rs, ns))
        else:
            raise ValueError(f"unknown suite {name!r}")
    return out
