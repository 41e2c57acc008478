"""Knot diagrams as crossing lists, quandle colorings, and Wirtinger words.

Crossing convention for the (2, n)-torus diagram: crossing ``i`` has over-arc
``α_{i+1}``, incoming under-arc ``α_i`` and outgoing under-arc ``α_{i+2}``
(indices mod n), so a coloring obeys ``C(α_{i+2}) = C(α_i) ▷ C(α_{i+1})``,
i.e. ``C(α_{i+1})^-1 C(α_i) C(α_{i+1})`` in a conjugation quandle. The
mirror diagram uses the inverse operation; only this chirality is built.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence, Union

import numpy as np

from .quandle import FiniteQuandle, ValidationError
from .sl2r import to_json as mat_json

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """The search space is larger than the configured candidate budget."""


class ClosureError(ValidationError):
    """A seed pair whose recurrence does not close up around the diagram.

    ``index`` is the first arc position (``n`` or ``n + 1``) where the
    propagated value disagrees with ``α_0`` or ``α_1``.
    """

    def __init__(self, index: int, message: str = ""):
        super().__init__(message or f"closure fails at arc index {index}")
        self.index = index


@dataclass(frozen=True)
class Diagram:
    arc_count: int
    crossings: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.arc_count < 1:
            raise ValidationError("a diagram needs at least one arc")
        crossings = tuple(tuple(int(v) for v in c) for c in self.crossings)
        for c in crossings:
            if len(c) != 3 or any(not 0 <= v < self.arc_count for v in c):
                raise ValidationError(f"crossing {c} references an arc outside 0..{self.arc_count - 1}")
        object.__setattr__(self, "crossings", crossings)

    def is_knot_diagram(self) -> bool:
        """Each arc ends (as outgoing under-arc) at exactly one crossing."""
        outs = sorted(c[2] for c in self.crossings)
        return outs == list(range(self.arc_count))

    def to_json(self) -> dict:
        return {"arcs": self.arc_count, "crossings": [list(c) for c in self.crossings]}

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        try:
            return cls(int(data["arcs"]), tuple(tuple(c) for c in data["crossings"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad diagram JSON: {exc}") from exc


@dataclass
class Coloring:
    """Arc values: ints for finite quandles, 2x2 arrays for S²₁(r)."""

    values: list

    def __len__(self):
        return len(self.values)

    def to_json(self) -> dict:
        return {"values": [mat_json(v) if isinstance(v, np.ndarray) else v for v in self.values]}


def _check_torus_n(n: int):
    if not isinstance(n, (int, np.integer)) or n < 3 or n % 2 == 0:
        raise ValidationError(f"(2, n)-torus knots need odd n >= 3, got {n}")


def torus_diagram(n: int) -> Diagram:
    _check_torus_n(n)
    return Diagram(n, tuple(((i + 1) % n, i, (i + 2) % n) for i in range(n)))


def torus_order(d: Diagram) -> Optional[int]:
    """n when ``d`` is exactly :func:`torus_diagram` (n), else None."""
    n = d.arc_count
    if n < 3 or n % 2 == 0:
        return None
    return n if d.crossings == torus_diagram(n).crossings else None


QuandleOps = Union[FiniteQuandle, Callable[[Any, Any], Any]]


def _array_eq(tol: float, scale: float = 1.0):
    def eq(u, v):
        return float(np.max(np.abs(np.asarray(u) - np.asarray(v)))) <= tol * scale
    return eq


def _op_and_eq(q: QuandleOps, eq, tol: float, scale: float = 1.0):
    if isinstance(q, FiniteQuandle):
        return q.op, eq or (lambda u, v: u == v)
    return q, eq or _array_eq(tol, scale)


def _magnitude(values) -> float:
    return max(1.0, max(float(np.max(np.abs(np.asarray(v)))) for v in values))


def check_coloring(d: Diagram, values: Sequence, q: QuandleOps, eq=None, tol: float = 1e-9) -> Optional[int]:
    """Index of the first crossing whose relation fails, or None if ``values`` colors ``d``.

    Array values are compared at ``tol`` times their largest entry.
    """
    if len(values) != d.arc_count:
        raise ValidationError("one value per arc is required")
    scale = 1.0 if isinstance(q, FiniteQuandle) else _magnitude(values)
    op, eq = _op_and_eq(q, eq, tol, scale)
    for idx, (over, under_in, under_out) in enumerate(d.crossings):
        if not eq(op(values[under_in], values[over]), values[under_out]):
            return idx
    return None


def _propagate(x, y, n: int, op) -> list:
    """C(α_0..α_{n+1}) from C(α_{i+2}) = C(α_i) ▷ C(α_{i+1})."""
    seq = [x, y]
    for i in range(n):
        seq.append(op(seq[i], seq[i + 1]))
    return seq


def _closure_failure(seq: list, n: int, eq) -> Optional[int]:
    if not eq(seq[n], seq[0]):
        return n
    if not eq(seq[n + 1], seq[1]):
        return n + 1
    return None


def coloring_from_pair(x, y, n: int, q: QuandleOps, eq=None, tol: float = 1e-9) -> Coloring:
    """The coloring of the (2, n)-torus diagram seeded by C(α_0)=x, C(α_1)=y.

    Raises :class:`ClosureError` when the pair does not satisfy the wrap-around
    condition, which is the quandle form of (xy)^k x = y (xy)^k with n = 2k+1.
    For matrix values the wrap-around is tested at ``tol`` times the largest
    entry met along the way, since rounding error grows with it.
    """
    _check_torus_n(n)
    if isinstance(q, FiniteQuandle):
        op, eq = _op_and_eq(q, eq, tol)
        seq = _propagate(x, y, n, op)
    else:
        seq = _propagate(x, y, n, q)
        eq = eq or _array_eq(tol, _magnitude(seq))
    bad = _closure_failure(seq, n, eq)
    if bad is not None:
        raise ClosureError(bad)
    return Coloring(seq[:n])


def enumerate_colorings(
    d: Diagram, q: FiniteQuandle, budget: int = DEFAULT_BUDGET, method: str = "auto"
) -> list[Coloring]:
    """All colorings of ``d`` by ``q``, lexicographic in the arc values.

    ``method="auto"`` seeds torus diagrams from (α_0, α_1) pairs and falls
    back to full search otherwise; ``"brute"`` forces the full search.
    """
    n = torus_order(d)
    if method not in ("auto", "brute", "propagate"):
        raise ValidationError(f"unknown method {method!r}")
    if method == "propagate" and n is None:
        raise ValidationError("seed propagation needs a (2, n)-torus diagram")

    if method != "brute" and n is not None:
        if q.size**2 > budget:
            raise BudgetExceeded(f"{q.size**2} seed pairs exceed the budget {budget}")
        out = []
        for x, y in itertools.product(range(q.size), repeat=2):
            seq = _propagate(x, y, n, q.op)
            if seq[n] == seq[0] and seq[n + 1] == seq[1]:
                out.append(Coloring(seq[:n]))
        return out

    if q.size**d.arc_count > budget:
        raise BudgetExceeded(f"{q.size}^{d.arc_count} assignments exceed the budget {budget}")
    t = q.table
    out = []
    for values in itertools.product(range(q.size), repeat=d.arc_count):
        if all(t[values[a], values[o]] == values[b] for o, a, b in d.crossings):
            out.append(Coloring(list(values)))
    return out


# -- words in the knot group ---------------------------------------------------


@dataclass
class GroupWord:
    """A product of generator powers, read left to right."""

    letters: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.letters = [(int(g), int(e)) for g, e in self.letters]
        if any(e == 0 for _, e in self.letters):
            raise ValidationError("word exponents must be nonzero")

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "GroupWord":
        if k < 0:
            return self.inverse() ** (-k)
        return GroupWord(self.letters * k)

    def inverse(self) -> "GroupWord":
        return GroupWord([(g, -e) for g, e in reversed(self.letters)])

    def exponent_sum(self, generator: Optional[int] = None) -> int:
        return sum(e for g, e in self.letters if generator is None or g == generator)

    def reduced(self) -> "GroupWord":
        """Free reduction: merge neighbouring powers of one generator."""
        out: list[list[int]] = []
        for g, e in self.letters:
            if out and out[-1][0] == g:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([g, e])
        return GroupWord([tuple(p) for p in out])

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"a{g}" if e == 1 else f"a{g}^{e}" for g, e in self.letters)

    def to_json(self) -> list:
        return [list(p) for p in self.letters]


def generator(g: int) -> GroupWord:
    return GroupWord([(g, 1)])


def longitude_word(n: int) -> GroupWord:
    """α_0^(-2n) (α_0 α_1)^n."""
    _check_torus_n(n)
    return GroupWord([(0, -2 * n)]) * (generator(0) * generator(1)) ** n


def wirtinger_arc_words(n: int) -> list[GroupWord]:
    """Arc ``m`` as a word in α_0, α_1: (α_0α_1)^-j α_{m mod 2} (α_0α_1)^j with j = m // 2."""
    _check_torus_n(n)
    loop = generator(0) * generator(1)
    return [loop ** -(m // 2) * generator(m % 2) * loop ** (m // 2) for m in range(n)]


def evaluate(word: GroupWord, images: Sequence, mul: Callable, inv: Callable, one):
    """Evaluate ``word`` in any group given images of the generators.

    The product is accumulated from the right end of the word.
    """
    acc = one
    for g, e in reversed(word.letters):
        if not 0 <= g < len(images):
            raise ValidationError(f"generator a{g} has no image")
        base = images[g] if e > 0 else inv(images[g])
        for _ in range(abs(e)):
            acc = mul(base, acc)
    return acc


def load_diagram(path) -> Diagram:
    with open(path) as fh:
        try:
            return Diagram.from_json(json.load(fh))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: {exc}") from exc
