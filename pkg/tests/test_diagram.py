import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvegen import random_curve
from largecover.diagram import (
    CURVES,
    DiagramError,
    DualCurves,
    NotRealizable,
    PlanarDiagram,
    all_diagrams,
    crossing_count,
    curve_class,
    diagnose,
    is_nonseparating,
    realize,
    validate,
)
from largecover.words import CyclicWord, parse
from oracles import complement_components


def word(s):
    return CyclicWord(parse(s, 2))


@pytest.mark.parametrize("s", ["xyXY", "x", "xxyXXy", "xyxYXY", "xyxyyXXyy", "xxyy"])
def test_realize_validates(s):
    d = realize(word(s))
    assert d
    assert validate(d)


@pytest.mark.parametrize("s", ["xyyxYYXY", "xxyXXyXy", "xyXYxy", "xxyyXYY", "xxyxYY"])
def test_not_realizable(s):
    r = realize(word(s))
    assert isinstance(r, NotRealizable)
    assert not r
    assert r.nodes_searched > 0
    assert not any(validate(d) for d in all_diagrams(word(s)))


def test_single_letter_diagram():
    d = realize(word("x"))
    assert d.n_edges == 1
    assert d.endpoint_orders[2] == () and d.endpoint_orders[3] == ()


def test_serialization_round_trip():
    d = realize(word("xyxyyXXyy"))
    assert PlanarDiagram.deserialize(d.serialize()) == d


@pytest.mark.parametrize(
    "text",
    [
        "relator xyXY\nx+ 3:1 2:0\nx- 0:0 1:1\ny+ 0:1 3:0",
        "relator yXYx\nx+ 3:1 2:0\nx- 0:0 1:1\ny+ 0:1 3:0\ny- 1:0 2:1",
        "relator xyXY\nx+ 3:1 2:0\nx- 0:0 1:1\nq+ 0:1 3:0\ny- 1:0 2:1",
    ],
)
def test_deserialize_rejects(text):
    with pytest.raises(DiagramError):
        PlanarDiagram.deserialize(text)


def test_validate_catches_corruption():
    d = realize(word("xxyXXy"))
    orders = list(d.endpoint_orders)
    orders[0] = orders[0][::-1]
    swapped = PlanarDiagram(d.relator, tuple(orders))
    assert diagnose(swapped) is not None
    orders = list(d.endpoint_orders)
    orders[0], orders[2] = orders[2], orders[0]
    assert "wrong circle" in diagnose(PlanarDiagram(d.relator, tuple(orders)))
    orders = list(d.endpoint_orders)
    orders[1] = orders[1][1:]
    assert diagnose(PlanarDiagram(d.relator, tuple(orders))) is not None


def test_realize_rejects_bad_input():
    with pytest.raises(DiagramError):
        realize(CyclicWord(()))
    with pytest.raises(DiagramError):
        realize(CyclicWord(parse("x1x3", 3)))


def test_commutator_is_separating():
    # the commutator curve cuts the genus-2 surface into two one-holed tori
    d = realize(word("xyXY"))
    assert curve_class(d).is_zero()
    assert not is_nonseparating(d)
    assert complement_components(d) == 2


def test_nonseparating_examples():
    for s in ("x", "xxyXXy", "xyxYXY"):
        d = realize(word(s))
        assert is_nonseparating(d)
        assert complement_components(d) == 1


def test_known_classes():
    # frozen values, checked against the separation oracle above
    assert curve_class(realize(word("x"))).a == (0, 0)
    assert curve_class(realize(word("x"))).b == (1, 0)
    c = curve_class(realize(word("xxyXXy")))
    assert (c.a, c.b) == ((-1, 1), (0, 2))
    c = curve_class(realize(word("xyxYXY")))
    assert (c.a, c.b) == ((0, 0), (1, -1))


def test_unknown_curve_name():
    d = realize(word("xy"))
    with pytest.raises(DiagramError):
        curve_class(d, "gamma")


@given(st.integers(0, 10**6))
def test_random_curve_class_matches_separation(seed):
    w, d = random_curve(random.Random(seed), arcs=8)
    assert validate(d)
    separates = complement_components(d) == 2
    assert complement_components(d) in (1, 2)
    assert curve_class(d).is_zero() == separates


@given(st.integers(0, 10**6))
def test_pairing_matches_crossings(seed):
    w, d = random_curve(random.Random(seed), arcs=8)
    duals = DualCurves(d)
    classes = {c: curve_class(d, c, duals) for c in CURVES}
    for a in CURVES:
        for b in CURVES:
            assert classes[a].pair(classes[b]) == crossing_count(d, a, b, duals)


@given(st.integers(0, 10**6))
def test_b_part_is_exponent_vector(seed):
    from largecover.words import abelianize

    w, d = random_curve(random.Random(seed), arcs=8)
    assert curve_class(d).b == abelianize(w, 2)
