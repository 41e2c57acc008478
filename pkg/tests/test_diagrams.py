import itertools

import numpy as np
import pytest

from sl2quandle.diagrams import (
    BudgetExceeded,
    ClosureError,
    Diagram,
    GroupWord,
    check_coloring,
    coloring_from_pair,
    enumerate_colorings,
    evaluate,
    longitude_word,
    torus_diagram,
    wirtinger_arc_words,
)
from sl2quandle.quandle import (
    FiniteQuandle,
    ValidationError,
    builtin,
    make_conjugation,
    make_dihedral,
    make_trivial,
    s3,
    transpositions_s3,
)
from sl2quandle.sl2r import conj_op, identity, mat_inv, max_abs
from sl2quandle.torus import build_family


def naive_colorings(d, table):
    """Plain product search over every assignment; no propagation."""
    size = len(table)
    out = []
    for vals in itertools.product(range(size), repeat=d.arc_count):
        if all(table[vals[a]][vals[o]] == vals[b] for o, a, b in d.crossings):
            out.append(list(vals))
    return out


def test_trefoil_crossings():
    d = torus_diagram(3)
    assert d.arc_count == 3
    assert d.crossings == ((1, 0, 2), (2, 1, 0), (0, 2, 1))
    assert d.is_knot_diagram()


def test_torus_five():
    d = torus_diagram(5)
    assert d.arc_count == 5 and len(d.crossings) == 5


@pytest.mark.parametrize("n", [4, 1, 2, 0, -3])
def test_torus_rejects_bad_n(n):
    with pytest.raises(ValidationError):
        torus_diagram(n)


def test_diagram_validation_and_json():
    with pytest.raises(ValidationError):
        Diagram(2, ((0, 1, 2),))
    d = torus_diagram(7)
    assert Diagram.from_json(d.to_json()) == d


def test_trefoil_dihedral3_count():
    # oracle: 27 assignments searched directly
    assert len(naive_colorings(torus_diagram(3), make_dihedral(3).table.tolist())) == 9
    assert len(enumerate_colorings(torus_diagram(3), make_dihedral(3))) == 9


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_trivial_quandle_gives_constant_colorings(k):
    cols = enumerate_colorings(torus_diagram(5), make_trivial(k))
    assert [c.values for c in cols] == [[v] * 5 for v in range(k)]


def test_trefoil_dihedral2():
    cols = enumerate_colorings(torus_diagram(3), make_dihedral(2))
    assert [c.values for c in cols] == [[0, 0, 0], [1, 1, 1]]
    assert len(naive_colorings(torus_diagram(3), make_dihedral(2).table.tolist())) == 2


def test_torus5_dihedral5_count():
    assert len(naive_colorings(torus_diagram(5), make_dihedral(5).table.tolist())) == 25
    assert len(enumerate_colorings(torus_diagram(5), make_dihedral(5))) == 25


@pytest.mark.parametrize("name", ["dihedral:3", "dihedral:5", "conj-s3", "trivial:3", "dihedral:4"])
@pytest.mark.parametrize("n", [3, 5, 7])
def test_propagation_matches_brute_force(name, n):
    q = builtin(name)
    fast = [c.values for c in enumerate_colorings(torus_diagram(n), q, method="propagate")]
    slow = [c.values for c in enumerate_colorings(torus_diagram(n), q, method="brute")]
    assert fast == slow == naive_colorings(torus_diagram(n), q.table.tolist())


def test_every_coloring_rechecked():
    q = make_conjugation(s3())
    d = torus_diagram(5)
    for c in enumerate_colorings(d, q):
        assert check_coloring(d, c.values, q) is None


def test_non_torus_diagram_uses_search():
    # figure-eight knot: 4 arcs, Fox 5-colorings number 25
    figure_eight = Diagram(4, ((2, 0, 1), (3, 1, 2), (0, 2, 3), (1, 3, 0)))
    got = enumerate_colorings(figure_eight, make_dihedral(5))
    assert len(got) == len(naive_colorings(figure_eight, make_dihedral(5).table.tolist())) == 25
    for c in got:
        assert check_coloring(figure_eight, c.values, make_dihedral(5)) is None


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        enumerate_colorings(torus_diagram(9), make_dihedral(9), budget=1000, method="brute")
    with pytest.raises(BudgetExceeded):
        enumerate_colorings(torus_diagram(9), make_dihedral(40), budget=1000)


def test_rotation_relabelling_keeps_count():
    base = make_dihedral(3)
    for shift in range(3):
        perm = [(v + shift) % 3 for v in range(3)]
        t = np.empty((3, 3), dtype=int)
        for x in range(3):
            for y in range(3):
                t[perm[x], perm[y]] = perm[base.table[x, y]]
        for n in (3, 5, 7):
            assert len(enumerate_colorings(torus_diagram(n), FiniteQuandle(3, t))) == len(
                enumerate_colorings(torus_diagram(n), base)
            )


def test_pair_constant():
    c = coloring_from_pair(2, 2, 5, make_dihedral(7))
    assert c.values == [2] * 5


def test_pair_trefoil_r3():
    assert coloring_from_pair(0, 1, 3, make_dihedral(3)).values == [0, 1, 2]


def test_pair_rejected_r5():
    with pytest.raises(ClosureError) as info:
        coloring_from_pair(0, 1, 3, make_dihedral(5))
    assert info.value.index == 3
    seeds = {tuple(c.values[:2]) for c in enumerate_colorings(torus_diagram(3), make_dihedral(5))}
    assert (0, 1) not in seeds


SMALL_QUANDLES = ["trivial:1", "trivial:2", "trivial:5", "dihedral:3", "dihedral:4", "dihedral:5",
                  "conj-c4", "transpositions-s3"]


@pytest.mark.parametrize("name", SMALL_QUANDLES)
@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_pair_acceptance_equivalence(name, n):
    q = builtin(name)
    if q.size**n > 400_000:
        pytest.skip("naive oracle too large")
    seeds = {tuple(v[:2]) for v in naive_colorings(torus_diagram(n), q.table.tolist())}
    for x, y in itertools.product(range(q.size), repeat=2):
        try:
            coloring_from_pair(x, y, n, q)
            accepted = True
        except ClosureError:
            accepted = False
        assert accepted == ((x, y) in seeds)


def test_longitude_words():
    w3 = longitude_word(3)
    assert w3.letters == [(0, -6)] + [(0, 1), (1, 1)] * 3
    w5 = longitude_word(5)
    assert w5.letters == [(0, -10)] + [(0, 1), (1, 1)] * 5
    for n in (3, 5, 7, 9, 11):
        assert longitude_word(n).exponent_sum() == 0
    with pytest.raises(ValidationError):
        longitude_word(4)


def test_longitude_under_abelian_image_is_identity():
    g = s3()
    for h in range(g.size):
        val = evaluate(longitude_word(5), [h, h], lambda a, b: int(g.mul[a, b]), lambda a: int(g.inv[a]), g.id)
        assert val == g.id


def test_arc_words_shape():
    words = wirtinger_arc_words(5)
    assert words[0].reduced().letters == [(0, 1)]
    assert words[1].reduced().letters == [(1, 1)]
    conj = GroupWord([(0, 1), (1, 1)])
    assert words[2].letters == (conj.inverse() * GroupWord([(0, 1)]) * conj).letters
    assert str(words[2].reduced()) == "a1^-1 a0 a1"


def test_word_algebra():
    w = GroupWord([(0, 2), (1, -1)])
    assert (w * w.inverse()).reduced().letters == []
    assert (w ** -2).letters == w.inverse().letters * 2
    with pytest.raises(ValidationError):
        GroupWord([(0, 0)])


def test_arc_words_reproduce_s3_colorings():
    g = s3()
    mul = lambda a, b: int(g.mul[a, b])  # noqa: E731
    inv = lambda a: int(g.inv[a])  # noqa: E731
    conj = make_conjugation(g)
    for n in (3, 5, 7, 9):
        words = wirtinger_arc_words(n)
        cols = enumerate_colorings(torus_diagram(n), conj)
        assert any(set(c.values) <= set(transpositions_s3()) and len(set(c.values)) > 1 for c in cols) == (n % 3 == 0)
        for c in cols:
            got = [evaluate(w, c.values[:2], mul, inv, g.id) for w in words]
            assert got == c.values


def test_arc_words_reproduce_matrix_colorings():
    for r, n, j, b in [(1.0, 3, 1, 1.0), (0.5, 7, 3, 2.0), (2.0, 9, 5, -2.0)]:
        fam = build_family(r, n, j, b)
        c = fam.coloring()
        for w, v in zip(wirtinger_arc_words(n), c.values):
            got = evaluate(w, c.values[:2], lambda u, v: u @ v, mat_inv, identity())
            assert max_abs(got - v) <= 1e-9 * max(1.0, max_abs(v))


def test_matrix_pair_rejected():
    fam = build_family(1.0, 5, 1, 1.0)
    with pytest.raises(ClosureError):
        coloring_from_pair(fam.x, fam.y + 1e-3, 5, conj_op)
