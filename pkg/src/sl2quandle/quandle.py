"""Finite quandles given by operation tables, plus the axiom checkers.

Elements are dense indices ``0..size-1`` and ``table[x][y]`` is ``x ▷ y``.
Every check here is exhaustive, so sizes are capped (``MAX_SIZE``) unless the
caller passes ``max_size`` explicitly.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

MAX_SIZE = 64


class ValidationError(ValueError):
    """Raised for malformed tables and out-of-range parameters."""


def _as_table(table, size: int) -> np.ndarray:
    arr = np.asarray(table)
    if arr.shape != (size, size):
        raise ValidationError(f"table must be {size}x{size}, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValidationError("table entries must be integers")
        arr = arr.astype(np.int64)
    bad = np.argwhere((arr < 0) | (arr >= size))
    if len(bad):
        x, y = bad[0]
        raise ValidationError(f"table[{x}][{y}] = {arr[x, y]} is out of range 0..{size - 1}")
    arr = arr.astype(np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteQuandle:
    """A finite binary-operation table, not necessarily satisfying Q1-Q3.

    Construction only checks shape and range; use :func:`verify_axioms` to
    test whether the table actually is a quandle.
    """

    size: int
    table: np.ndarray
    name: str = ""

    def __post_init__(self):
        if self.size < 1:
            raise ValidationError("quandle size must be positive")
        object.__setattr__(self, "table", _as_table(self.table, self.size))

    def op(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def __eq__(self, other):
        if not isinstance(other, FiniteQuandle):
            return NotImplemented
        return self.size == other.size and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.size, self.table.tobytes()))

    def to_json(self) -> dict:
        return {"size": self.size, "table": self.table.tolist()}

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "FiniteQuandle":
        try:
            size = int(data["size"])
            table = data["table"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad quandle JSON: {exc}") from exc
        return cls(size, table, name)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group by its multiplication table; ``mul[g][h]`` is ``g*h``."""

    size: int
    mul: np.ndarray
    inv: np.ndarray
    id: int
    name: str = ""

    def __post_init__(self):
        if self.size < 1:
            raise ValidationError("group size must be positive")
        object.__setattr__(self, "mul", _as_table(self.mul, self.size))
        inv = np.asarray(self.inv, dtype=np.int64)
        if inv.shape != (self.size,) or np.any((inv < 0) | (inv >= self.size)):
            raise ValidationError("inverse table has wrong shape or out-of-range entries")
        inv.setflags(write=False)
        object.__setattr__(self, "inv", inv)
        if not 0 <= self.id < self.size:
            raise ValidationError("identity index out of range")

    def to_json(self) -> dict:
        return {"size": self.size, "mul": self.mul.tolist(), "inv": self.inv.tolist(), "id": self.id}

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "FiniteGroup":
        try:
            return cls(int(data["size"]), data["mul"], data["inv"], int(data["id"]), name)
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad group JSON: {exc}") from exc


def group_errors(g: FiniteGroup) -> list[str]:
    """List the violated group laws (empty when ``g`` is a group)."""
    m, e = g.mul, g.id
    errors = []
    idx = np.arange(g.size)
    if not (np.array_equal(m[e, :], idx) and np.array_equal(m[:, e], idx)):
        errors.append("identity")
    if not (np.all(m[idx, g.inv] == e) and np.all(m[g.inv, idx] == e)):
        errors.append("inverse")
    # (gh)k == g(hk) for all triples, vectorised over the last two indices
    left = m[m[:, :, None], idx[None, None, :]]
    right = m[idx[:, None, None], m[None, :, :]]
    if not np.array_equal(left, right):
        errors.append("associativity")
    return errors


@dataclass
class AxiomReport:
    q1: bool
    q2: bool
    q3: bool
    q1_counterexample: Optional[tuple] = None
    q2_counterexample: Optional[tuple] = None
    q3_counterexample: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return self.q1 and self.q2 and self.q3

    def to_json(self) -> dict:
        out = {"q1": self.q1, "q2": self.q2, "q3": self.q3, "ok": self.ok}
        for key in ("q1", "q2", "q3"):
            cx = getattr(self, f"{key}_counterexample")
            out[f"{key}_counterexample"] = None if cx is None else list(cx)
        return out


def _check_size(q: FiniteQuandle, max_size: Optional[int]):
    cap = MAX_SIZE if max_size is None else max_size
    if q.size > cap:
        raise ValidationError(f"size {q.size} exceeds the exhaustive-check cap {cap}")


def verify_axioms(q: FiniteQuandle, max_size: Optional[int] = None) -> AxiomReport:
    """Exhaustively check Q1-Q3.

    Counterexamples are the lexicographically first violating tuple:
    ``(x,)`` for Q1, ``(x1, x2, y)`` with ``x1 ▷ y == x2 ▷ y`` for Q2, and
    ``(x, y, z)`` for Q3.
    """
    _check_size(q, max_size)
    t = q.table
    n = q.size

    diag = t[np.arange(n), np.arange(n)]
    bad1 = np.flatnonzero(diag != np.arange(n))
    q1_cx = (int(bad1[0]),) if len(bad1) else None

    q2_cx = None
    for y in range(n):
        col = t[:, y]
        hits = np.argwhere(np.triu(col[:, None] == col[None, :], 1))
        if len(hits):
            cand = (int(hits[0][0]), int(hits[0][1]), y)
            if q2_cx is None or cand < q2_cx:
                q2_cx = cand

    # lhs[x,y,z] = (x▷y)▷z ; rhs[x,y,z] = (x▷z)▷(y▷z)
    lhs = t[t[:, :, None], np.arange(n)[None, None, :]]
    rhs = t[t[:, None, :], t[None, :, :]]
    bad3 = np.argwhere(lhs != rhs)
    q3_cx = tuple(int(v) for v in bad3[0]) if len(bad3) else None

    return AxiomReport(q1_cx is None, q2_cx is None, q3_cx is None, q1_cx, q2_cx, q3_cx)


def make_trivial(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValidationError("trivial quandle needs n >= 1")
    return FiniteQuandle(n, np.repeat(np.arange(n)[:, None], n, axis=1), f"trivial:{n}")


def make_dihedral(n: int) -> FiniteQuandle:
    """R_n: x ▷ y = 2y - x mod n."""
    if n < 1:
        raise ValidationError("dihedral quandle needs n >= 1")
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    return FiniteQuandle(n, (2 * y - x) % n, f"dihedral:{n}")


def make_conjugation(g: FiniteGroup) -> FiniteQuandle:
    """Conj(G) with g ▷ h = h^-1 g h."""
    errors = group_errors(g)
    if errors:
        raise ValidationError(f"not a group: {', '.join(errors)} law fails")
    m = g.mul
    x = np.arange(g.size)[:, None]
    y = np.arange(g.size)[None, :]
    table = m[g.inv[y], m[x, y]]
    return FiniteQuandle(g.size, table, f"conj({g.name})" if g.name else "")


def is_involutory(q: FiniteQuandle) -> tuple[bool, Optional[tuple[int, int]]]:
    """Check the kei identity (x ▷ y) ▷ y = x; returns (flag, first bad pair)."""
    t = q.table
    n = q.size
    twice = t[t, np.arange(n)[None, :]]
    bad = np.argwhere(twice != np.arange(n)[:, None])
    if len(bad):
        return False, (int(bad[0][0]), int(bad[0][1]))
    return True, None


def is_subquandle(subset: Iterable[int], q: FiniteQuandle) -> bool:
    s = sorted(set(int(v) for v in subset))
    if any(v < 0 or v >= q.size for v in s):
        raise ValidationError("subset is not contained in the carrier")
    members = set(s)
    return all(q.op(x, y) in members for x in s for y in s)


def restrict(q: FiniteQuandle, subset: Sequence[int]) -> FiniteQuandle:
    """The subquandle on ``subset``, relabelled to ``0..len(subset)-1`` in the given order."""
    elems = list(subset)
    if not is_subquandle(elems, q):
        raise ValidationError("subset is not closed under the operation")
    pos = {v: i for i, v in enumerate(elems)}
    table = [[pos[q.op(x, y)] for y in elems] for x in elems]
    return FiniteQuandle(len(elems), table, f"{q.name}|sub" if q.name else "")


@dataclass
class HomomorphismReport:
    homomorphism: bool
    isomorphism: bool
    counterexample: Optional[tuple[int, int]] = None


def check_homomorphism(f: Sequence[int], src: FiniteQuandle, dst: FiniteQuandle) -> HomomorphismReport:
    """Check f(x ▷ y) = f(x) ▷ f(y) on every pair; also flags bijectivity."""
    fm = np.asarray(f, dtype=np.int64)
    if fm.shape != (src.size,) or np.any((fm < 0) | (fm >= dst.size)):
        raise ValidationError("map must send every source element into the target")
    lhs = fm[src.table]
    rhs = dst.table[fm[:, None], fm[None, :]]
    bad = np.argwhere(lhs != rhs)
    hom = len(bad) == 0
    cx = (int(bad[0][0]), int(bad[0][1])) if not hom else None
    bij = src.size == dst.size and len(set(fm.tolist())) == src.size
    return HomomorphismReport(hom, hom and bij, cx)


@dataclass
class AugmentedQuandleData:
    """(X, G, kappa) with a right action ``action[x][g] = x·g``."""

    carrier: list[int]
    group: FiniteGroup
    action: np.ndarray
    kappa: np.ndarray

    def __post_init__(self):
        self.carrier = list(self.carrier)
        n = len(self.carrier)
        self.action = np.asarray(self.action, dtype=np.int64)
        self.kappa = np.asarray(self.kappa, dtype=np.int64)
        if self.action.shape != (n, self.group.size):
            raise ValidationError("action table must be |X| x |G|")
        if np.any((self.action < 0) | (self.action >= n)):
            raise ValidationError("action leaves the carrier")
        if self.kappa.shape != (n,) or np.any((self.kappa < 0) | (self.kappa >= self.group.size)):
            raise ValidationError("kappa must map each carrier element into G")


@dataclass
class AugmentedReport:
    equivariant: bool
    fixes_own_kappa: bool
    faithful: bool
    quandle: Optional[FiniteQuandle]
    axioms: Optional[AxiomReport]
    witness: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return self.equivariant and self.fixes_own_kappa and self.axioms is not None and self.axioms.ok


def check_augmented(aq: AugmentedQuandleData) -> AugmentedReport:
    """Check kappa(x·g) = g^-1 kappa(x) g and x·kappa(x) = x, then build x ▷ y = x·kappa(y).

    Carrier positions (``0..|X|-1``) index the induced quandle.
    """
    g = aq.group
    n = len(aq.carrier)
    witness = None
    equivariant = True
    for x, h in itertools.product(range(n), range(g.size)):
        lhs = aq.kappa[aq.action[x, h]]
        rhs = g.mul[g.inv[h], g.mul[aq.kappa[x], h]]
        if lhs != rhs:
            equivariant = False
            witness = ("equivariance", x, h)
            break
    fixes = True
    for x in range(n):
        if aq.action[x, aq.kappa[x]] != x:
            fixes = False
            witness = witness or ("fixed point", x)
            break
    faithful = len(set(aq.kappa.tolist())) == n
    table = aq.action[np.arange(n)[:, None], aq.kappa[None, :]]
    q = FiniteQuandle(n, table, "augmented")
    return AugmentedReport(equivariant, fixes, faithful, q, verify_axioms(q, max_size=max(n, MAX_SIZE)), witness)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValidationError("cyclic group needs n >= 1")
    i = np.arange(n)
    return FiniteGroup(n, (i[:, None] + i[None, :]) % n, (-i) % n, 0, f"C{n}")


def symmetric_group(k: int) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """S_k on permutations of ``range(k)`` in lexicographic order; composition is
    ``(p*q)(i) = q(p(i))`` (apply p first), matching a right action."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    mul = np.empty((size, size), dtype=np.int64)
    for a, p in enumerate(perms):
        for b, q in enumerate(perms):
            mul[a, b] = index[tuple(q[p[i]] for i in range(k))]
    inv = np.empty(size, dtype=np.int64)
    for a, p in enumerate(perms):
        pinv = [0] * k
        for i, v in enumerate(p):
            pinv[v] = i
        inv[a] = index[tuple(pinv)]
    return FiniteGroup(size, mul, inv, index[tuple(range(k))], f"S{k}"), perms


def s3() -> FiniteGroup:
    return symmetric_group(3)[0]


def transpositions_s3() -> list[int]:
    """Indices of the three transpositions inside :func:`s3`."""
    _, perms = symmetric_group(3)
    return [i for i, p in enumerate(perms) if sum(a != b for a, b in zip(p, range(3))) == 2]


def conjugation_augmented(g: FiniteGroup, subset: Sequence[int]) -> AugmentedQuandleData:
    """(X, G, i_X) for a conjugation-closed subset X of G; G acts by x·h = h^-1 x h."""
    pos = {v: i for i, v in enumerate(subset)}
    action = np.empty((len(subset), g.size), dtype=np.int64)
    for i, x in enumerate(subset):
        for h in range(g.size):
            v = int(g.mul[g.inv[h], g.mul[x, h]])
            if v not in pos:
                raise ValidationError("subset is not closed under conjugation")
            action[i, h] = pos[v]
    return AugmentedQuandleData(list(subset), g, action, np.asarray(subset))


def builtin(name: str) -> FiniteQuandle:
    """Resolve ``trivial:N``, ``dihedral:N``, ``conj-s3``, ``conj-cN`` and
    ``transpositions-s3``."""
    try:
        if name.startswith("trivial:"):
            return make_trivial(int(name.split(":", 1)[1]))
        if name.startswith("dihedral:"):
            return make_dihedral(int(name.split(":", 1)[1]))
        if name == "conj-s3":
            q = make_conjugation(s3())
            return FiniteQuandle(q.size, q.table, name)
        if name.startswith("conj-c"):
            q = make_conjugation(cyclic_group(int(name[len("conj-c"):])))
            return FiniteQuandle(q.size, q.table, name)
        if name == "transpositions-s3":
            q = restrict(make_conjugation(s3()), transpositions_s3())
            return FiniteQuandle(q.size, q.table, name)
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"bad builtin quandle name {name!r}") from exc
    raise ValidationError(f"unknown builtin quandle {name!r}")


def load_quandle(path) -> FiniteQuandle:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: {exc}") from exc
    return FiniteQuandle.from_json(data, name=str(path))


__all__ = [
    "AugmentedQuandleData", "AugmentedReport", "AxiomReport", "FiniteGroup", "FiniteQuandle",
    "HomomorphismReport", "MAX_SIZE", "ValidationError", "builtin", "check_augmented",
    "check_homomorphism", "conjugation_augmented", "cyclic_group", "group_errors", "is_involutory",
    "is_subquandle", "load_quandle", "make_conjugation", "make_dihedral", "make_trivial", "restrict",
    "s3", "symmetric_group", "transpositions_s3", "verify_axioms",
]
