import pytest
from hypothesis import given
from hypothesis import strategies as st

from largecover.diagram import SymplecticClass
from largecover.whitehead import (
    Multiword,
    WhiteheadMove,
    all_type1_moves,
    all_type2_moves,
    diskbusting,
    independence_test,
    is_diskbusting,
    is_primitive,
    minimize,
    rational_rank,
    whitehead_graph,
    witness_disk_class,
)
from largecover.words import CyclicWord, Substitution, abelianize, parse
from oracles import brute_force_diskbusting, sympy_rank


def mw(*words, rank=2):
    return Multiword.of(rank, [parse(w, rank) for w in words])


def edge_set(g):
    return {(u, v): m for u, v, m in g.edges()}


# -- graph ----------------------------------------------------------------------

def test_commutator_graph_is_a_four_cycle():
    g = whitehead_graph(mw("xyXY"))
    assert edge_set(g) == {(1, 2): 1, (1, -2): 1, (-1, 2): 1, (-1, -2): 1}
    assert g.is_connected() and not g.cut_vertices()


def test_single_letter_graph():
    g = whitehead_graph(mw("x"))
    assert edge_set(g) == {(1, -1): 1}
    assert g.degree(2) == 0


def test_two_letter_graph():
    assert edge_set(whitehead_graph(mw("xy"))) == {(1, -2): 1, (-1, 2): 1}


def test_cut_capacity():
    g = whitehead_graph(mw("xyXY"))
    assert g.cut_capacity({1}) == g.degree(1) == 2
    assert g.cut_capacity({1, 2}) == 2


# -- moves ----------------------------------------------------------------------

def test_move_validation():
    with pytest.raises(ValueError):
        WhiteheadMove(2, 1, frozenset({1, -1}))
    with pytest.raises(ValueError):
        WhiteheadMove(2, 1, frozenset({2}))
    with pytest.raises(ValueError):
        WhiteheadMove(2, 0, frozenset())


def test_move_counts():
    # 2r multipliers times 2^(2r-2) subsets, minus identity and conjugation
    assert sum(1 for _ in all_type2_moves(2)) == 4 * (4 - 2)
    assert sum(1 for _ in all_type2_moves(3)) == 6 * (16 - 2)
    assert sum(1 for _ in all_type1_moves(2)) == 8


@pytest.mark.parametrize("rank", [2, 3])
def test_move_inverse(rank):
    w = parse("x1x2x2X1x3X2" if rank == 3 else "xyyXYxy", rank)
    for mv in list(all_type2_moves(rank)) + list(all_type1_moves(rank)):
        back = mv.inverse().substitution()
        assert back(mv.substitution()(w)) == w


@pytest.mark.parametrize("rank", [2, 3])
def test_cut_formula(rank):
    W = mw("x1x2x2X1x3X2", "x3x3x1", rank=3) if rank == 3 else mw("xyyXYxy", "xY")
    g = whitehead_graph(W)
    for mv in all_type2_moves(rank):
        after = W.apply(mv.substitution())
        assert after.length - W.length == g.cut_capacity(mv.A) - g.degree(mv.a)


# -- minimization -----------------------------------------------------------------

def test_minimize_primitive():
    t = minimize(mw("xy"))
    assert t.final.length == 1
    assert t.lengths == (2, 1)
    assert t.final.apply(t.substitution.inverse).canonical() == mw("xy").canonical()


def test_minimize_leaves_commutator():
    t = minimize(mw("xyXY"))
    assert t.moves == () and t.final == mw("xyXY")


def test_minimize_single_letter():
    assert minimize(mw("x")).moves == ()


# -- disk busting -------------------------------------------------------------------

def test_missing_generator_witness():
    r = diskbusting(mw("x"))
    assert not r
    assert r.witness.kind == "missing-generator"
    assert r.witness.disk_class == (0, 1)
    assert witness_disk_class(r.trace, r.witness) == (0, 1)


def test_commutator_is_busting():
    assert is_diskbusting(mw("xyXY"))
    assert brute_force_diskbusting(mw("xyXY"))


def test_squares_split():
    r = diskbusting(mw("xx", "yy"))
    assert not r
    assert r.witness.kind == "disconnected-graph"
    # only the separating disk misses both squares
    assert r.witness.separating


def test_split_factors_are_busting():
    # each factor is connected and cut-vertex free, so the only disjoint
    # disk is the one separating the factors
    r = diskbusting(mw("x1x2X1X2", "x3x3", rank=3), limit=4)
    assert not r
    assert r.witness.kind == "disconnected-graph"
    assert r.witness.separating and r.alternatives == ()


def test_single_move_transport():
    r = diskbusting(mw("xy"))
    (mv,) = r.trace.moves
    M = mv.substitution().matrix()
    e = (1, 0) if r.witness.generator == 0 else (0, 1)
    # moving back is the transpose of the forward matrix, i.e. the
    # inverse transpose of the backward move
    expected = tuple(sum(M[i][j] * e[i] for i in range(2)) for j in range(2))
    assert r.witness.disk_class == expected
    Minv = mv.inverse().substitution().matrix()
    assert all(
        sum(Minv[j][i] * expected[j] for j in range(2)) == e[i] for i in range(2)
    )


def test_witness_rejects_mismatch():
    r = diskbusting(mw("x"))
    bad = r.witness.__class__("missing-generator", (1, 0), 0)
    with pytest.raises(ValueError):
        witness_disk_class(r.trace, bad)
    with pytest.raises(ValueError):
        witness_disk_class(r.trace, r.witness.__class__("missing-generator", (0, 0, 1), 2))


# -- independence ---------------------------------------------------------------------

def test_independence_examples():
    b_only = [SymplecticClass((0, 0, 0), (1, 2, 0)), SymplecticClass((0, 0, 0), (0, 1, 1))]
    assert independence_test((1, 0, 0), b_only)
    same = SymplecticClass((2, -1, 0), (0, 0, 0))
    assert not independence_test((2, -1, 0), [same])
    assert independence_test((1, 0), [])
    assert not independence_test((0, 0), [])
    with pytest.raises(ValueError):
        independence_test((1, 0), [SymplecticClass((0, 0, 0), (0, 0, 1))])


def test_primitive_check():
    assert is_primitive((2, 3)) and not is_primitive((2, 4)) and not is_primitive((0, 0))


small = st.integers(-3, 3)


@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.tuples(st.lists(small, min_size=n, max_size=n), st.lists(small, min_size=n, max_size=n)), max_size=4),
        st.lists(small, min_size=n, max_size=n),
    )
))
def test_independence_matches_sympy(data):
    curves, disk = data
    classes = [SymplecticClass(tuple(a), tuple(b)) for a, b in curves]
    rows = [tuple(a) + tuple(b) for a, b in curves]
    probe = tuple(disk) + (0,) * len(disk)
    expected = sympy_rank(rows + [probe]) == sympy_rank(rows) + 1
    assert independence_test(disk, classes) == expected
    assert rational_rank(rows) == sympy_rank(rows)


# -- properties ------------------------------------------------------------------------

def multiwords(max_rank=3, max_words=3, max_len=6):
    def build(rank):
        letter = st.integers(1, rank).flatmap(lambda g: st.sampled_from([g, -g]))
        word = st.lists(letter, min_size=1, max_size=max_len).map(CyclicWord).filter(len)
        return st.lists(word, min_size=1, max_size=max_words).map(lambda ws: Multiword(rank, tuple(ws)))

    return st.integers(1, max_rank).flatmap(build)


@given(multiwords())
def test_minimize_is_a_local_minimum(W):
    t = minimize(W)
    assert all(a > b for a, b in zip(t.lengths, t.lengths[1:]))
    assert t.final.length <= W.length
    assert W.apply(t.substitution).canonical() == t.final.canonical()
    for mv in all_type2_moves(W.rank):
        assert t.final.apply(mv.substitution()).length >= t.final.length


@given(multiwords(), st.lists(st.integers(0, 10**6), max_size=3))
def test_decision_is_automorphism_invariant(W, picks):
    moves = list(all_type2_moves(W.rank)) + list(all_type1_moves(W.rank))
    sigma = Substitution.identity(W.rank)
    for p in picks:
        sigma = sigma.then(moves[p % len(moves)].substitution())
    assert is_diskbusting(W.apply(sigma)) == is_diskbusting(W)


@given(multiwords())
def test_witness_properties(W):
    r = diskbusting(W, limit=3)
    if r:
        return
    final_used = r.trace.final.generators_used()
    if r.witness.kind == "missing-generator":
        assert r.witness.generator not in final_used
    for w in (r.witness,) + r.alternatives:
        v = w.disk_class
        assert len(v) == W.rank
        if w.separating:
            continue
        assert is_primitive(v)
        # a disjoint disk has zero algebraic intersection with every element
        for e in W.elements:
            assert sum(x * y for x, y in zip(v, abelianize(e, W.rank))) == 0


@given(multiwords(max_len=5))
def test_agrees_with_brute_force(W):
    assert is_diskbusting(W) == brute_force_diskbusting(W)
