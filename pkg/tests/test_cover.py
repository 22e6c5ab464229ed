import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ROOT
from curvegen import random_curve
from largecover.cli import parse_records
from largecover.cover import (
    MissingGenerator,
    NotB1One,
    Presentation,
    compute_phi,
    cover_presentation,
    is_fibered,
    lift_curve_class,
    lifted_relator,
    normalize,
    normalize_with_trace,
    staggered_rewrite,
    surgery_bound,
    surgery_bound_from,
    width,
    word_width,
)
from largecover.diagram import DualCurves, curve_class, realize
from largecover.words import CyclicWord, Word, abelianize, letter_count, parse, to_string

TREFOIL = "xyxYXY"


def pres(s, meridian=None, longitude=None):
    return Presentation(
        "t",
        CyclicWord(parse(s)),
        parse(meridian) if meridian else None,
        parse(longitude) if longitude else None,
    )


def stagger(s):
    return staggered_rewrite(CyclicWord(parse(s)))


def census():
    records, errors = parse_records((ROOT / "fixtures" / "census.txt").read_text())
    assert not errors
    return {r.presentation.name: r.presentation for r in records}


# -- phi and normalization ----------------------------------------------------

@pytest.mark.parametrize(
    "relator, phi",
    [("xY", (1, 1)), ("yyy", (1, 0)), ("xxyXXy", (1, 0)), ("XXXXXyy", (2, 5))],
)
def test_compute_phi(relator, phi):
    p = compute_phi(pres(relator))
    assert (p.phi_x, p.phi_y) == phi
    assert p.b1_ok


def test_compute_phi_rejects_null_homologous():
    with pytest.raises(NotB1One):
        compute_phi(pres("xyXY"))


def test_trefoil_normalization():
    q, sub = normalize(pres(TREFOIL))
    p = compute_phi(q)
    assert (p.phi_x, p.phi_y) == (1, 0)
    # the relator is rewritten by y -> y x, so the new basis element is y x^-1
    assert sub(parse("y")) == parse("yx")
    assert sub.inverse(parse("y")) == parse("yX")
    assert to_string(q.relator) == "xyxYXXY"


def test_normalized_input_gets_identity():
    q, sub = normalize(pres("xxyXXy"))
    assert sub(parse("x")) == parse("x") and sub(parse("y")) == parse("y")
    assert q.relator == pres("xxyXXy").relator


def test_euclid_chain():
    chain = normalize_with_trace(pres("XXXXXyy")).phi_chain
    assert chain[:3] == ((2, 5), (2, 1), (0, 1))
    assert chain[-1] == (1, 0)
    assert len(chain) - 1 == 3


def test_peripherals_follow_the_substitution():
    q, sub = normalize(pres(TREFOIL, "x", "xy"))
    assert q.meridian == sub(parse("x"))
    assert q.longitude == sub(parse("xy"))


# -- staggered relator --------------------------------------------------------

def test_commutator_stagger():
    s = stagger("xyXY")
    assert s.mu == (2, 1)
    assert s.k == 2 == width(s)
    assert s.lifted_word == CyclicWord([2, -1])
    assert is_fibered(s)


def test_square_stagger():
    s = stagger("xxyXXy")
    assert s.mu == (3, 1)
    assert s.k == 3


@pytest.mark.parametrize("s", ["y", "yyY", "xX"])
def test_missing_generator(s):
    with pytest.raises(MissingGenerator):
        staggered_rewrite(CyclicWord(parse(s)) if parse(s) else CyclicWord(()))


def test_unnormalized_relator_rejected():
    with pytest.raises(ValueError):
        stagger("xyy")


def test_repeated_minimum_not_fibered():
    s = stagger("xxyXXyy")
    assert s.mu == (3, 1, 1)
    assert letter_count(s.lifted_word, 0) == 2
    assert not is_fibered(s)


def test_trefoil_fibered():
    s = staggered_rewrite(normalize(pres(TREFOIL))[0])
    assert s.mu == (2, 3, 1)
    assert is_fibered(s)


def test_m006_width():
    q, _ = normalize(census()["m006"])
    assert staggered_rewrite(q).k == 3


def test_word_width():
    assert word_width(parse("")) == 0
    assert word_width(parse("yy")) == 1
    assert word_width(parse("xyXy")) == 2
    with pytest.raises(ValueError):
        word_width(parse("xy"))


# -- covers ---------------------------------------------------------------------

def test_cover_presentation_counts():
    s = stagger("xxyXXy")
    c = cover_presentation(s, 4)
    assert len(c.relators) == 2 and c.rank == 4
    assert {abs(a) for a in c.relators[0]} == {1, 3}
    assert {abs(a) for a in c.relators[1]} == {2, 4}
    assert len(cover_presentation(s, 3).relators) == 1
    assert len(cover_presentation(stagger("xyXY"), 5).relators) == 4
    with pytest.raises(ValueError):
        cover_presentation(s, 2)


def test_lifted_relator_range():
    s = stagger("xyXY")
    assert lifted_relator(s, 3, 2) == CyclicWord([3, -2])
    with pytest.raises(IndexError):
        lifted_relator(s, 3, 3)


def test_lift_b_part():
    w = CyclicWord(parse("xyXY"))
    s = staggered_rewrite(w)
    c = lift_curve_class(realize(w), s, 3, 1)
    assert c.b == (-1, 1, 0)
    with pytest.raises(IndexError):
        lift_curve_class(realize(w), s, 3, 3)


def test_lift_rejects_foreign_diagram():
    with pytest.raises(ValueError):
        lift_curve_class(realize(CyclicWord(parse("xxyXXy"))), stagger("xyXY"), 3, 1)


# -- surgery --------------------------------------------------------------------

def test_surgery_bound_arithmetic():
    assert surgery_bound_from(3, 2, 2, 1) == 4
    assert surgery_bound_from(5, 5, 3, 1) == 9


def test_surgery_bound_on_presentation():
    # longitude xyXy lifts with width 2, meridian has b = 1
    p = pres("xxyXXy", "xy", "xyXy")
    n, text = surgery_bound(3, 1, p)
    assert n == max(3, 4, 3)
    assert str(n) in text


def test_surgery_bound_errors():
    with pytest.raises(ValueError):
        surgery_bound(3, 1, pres("xxyXXy"))
    with pytest.raises(ValueError):
        surgery_bound(3, 1, pres("xxyXXy", "x", "xy"))


# -- properties -------------------------------------------------------------------

def letters(min_size=1, max_size=14):
    return st.lists(st.sampled_from([1, -1, 2, -2]), min_size=min_size, max_size=max_size)


def b1_presentations():
    return letters().map(lambda ls: CyclicWord(ls)).filter(
        lambda w: any(abelianize(w, 2)) and len(w) > 0
    )


@given(b1_presentations())
def test_normalize_idempotent(w):
    q, _ = normalize(Presentation("h", w))
    r, sub = normalize(q)
    assert r.relator == q.relator
    assert sub(parse("x")) == parse("x") and sub(parse("y")) == parse("y")


@given(b1_presentations())
def test_normalize_kills_x_exponent(w):
    q, sub = normalize(Presentation("h", w))
    assert abelianize(q.relator, 2)[0] == 0
    assert sub.inverse(sub(Word(w))) == Word(w)


def normalized_words():
    return b1_presentations().map(lambda w: normalize(Presentation("h", w))[0].relator).filter(
        lambda w: letter_count(w, 0) and letter_count(w, 1)
    )


@given(normalized_words(), st.integers(0, 40))
def test_width_is_rotation_invariant(w, r):
    rots = list(w.rotations())
    s, t = staggered_rewrite(w), staggered_rewrite(CyclicWord(rots[r % len(rots)]))
    assert s.k == t.k >= 2
    assert sorted(s.mu) == sorted(t.mu)


@given(normalized_words())
def test_fibered_invariant_under_inversion(w):
    s = staggered_rewrite(w)
    inv = staggered_rewrite(CyclicWord(~Word(w)))
    assert is_fibered(s) == is_fibered(inv)
    assert s.k == inv.k


@given(normalized_words())
def test_fibered_invariant_under_level_reversal(w):
    # conjugating by x -> x^-1 reverses every level
    mirrored = CyclicWord(-a if abs(a) == 1 else a for a in w)
    s, t = staggered_rewrite(w), staggered_rewrite(mirrored)
    assert is_fibered(s) == is_fibered(t)
    assert sorted(s.k + 1 - v for v in s.mu) == sorted(t.mu)


@given(normalized_words(), st.integers(0, 3))
def test_cover_relators_are_shifts(w, extra):
    s = staggered_rewrite(w)
    c = cover_presentation(s, s.k + extra)
    vecs = [abelianize(r, c.n) for r in c.relators]
    for j, v in enumerate(vecs):
        assert v == (0,) * j + vecs[0][: c.n - j]
        used = {abs(a) for a in c.relators[j]}
        assert (min(used), max(used)) == (j + 1, j + s.k)


@given(st.integers(0, 10**6))
def test_lift_classes_on_random_diagrams(seed):
    rng = random.Random(seed)
    while True:
        w, d = random_curve(rng, arcs=10)
        if abelianize(w, 2)[0] == 0 and letter_count(w, 0) and letter_count(w, 1):
            break
    s = staggered_rewrite(w)
    duals = DualCurves(d)
    base = curve_class(d, duals=duals)
    for n in range(s.k, 7):
        lifts = [lift_curve_class(d, s, n, j, duals) for j in range(1, n - s.k + 2)]
        for i, ci in enumerate(lifts):
            assert sum(ci.a) == base.a[1]
            assert ci.b == abelianize(lifted_relator(s, n, i + 1), n)
            for cj in lifts:
                assert ci.pair(cj) == 0


@pytest.mark.parametrize("name", ["m006", "m007", "m015", "m017", "m287"])
def test_fixture_lifts_are_isotropic(name):
    q, _ = normalize(census()[name])
    d = realize(q.relator)
    assert d
    s = staggered_rewrite(q)
    n = s.k + 4
    lifts = [lift_curve_class(d, s, n, j) for j in range(1, n - s.k + 2)]
    assert all(a.pair(b) == 0 for a in lifts for b in lifts)
    # deck equivariance: a-parts are shifts of one another
    for j, c in enumerate(lifts):
        assert c.a == (0,) * j + lifts[0].a[: n - j]
