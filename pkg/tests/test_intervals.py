from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from plorders.intervals import IntervalSet, RationalSet
from plorders.rationals import NEG_INF, POS_INF, canonical_rationals

half = Fraction(1, 2)


@st.composite
def interval_sets(draw):
    cuts = sorted(set(draw(st.lists(rationals(12, 3), max_size=6))))
    bounds = [NEG_INF, *cuts, POS_INF]
    pieces = [(a, b) for a, b in zip(bounds, bounds[1:]) if draw(st.booleans())]
    return IntervalSet(tuple(pieces))


def probe(*sets):
    pts = {Fraction(0)}
    for s in sets:
        pts.update(s.endpoints())
    pts = sorted(pts)
    mids = [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    return pts + mids + [pts[0] - 1, pts[-1] + 1]


def test_overlaps_merge_but_touching_intervals_stay_apart():
    s = IntervalSet.of((0, 2), (1, 3))
    assert s.intervals == ((0, 3),)
    t = IntervalSet.of((0, 1), (1, 2))
    assert len(t) == 2
    assert 1 not in t and half in t


def test_full_empty_and_strings():
    assert IntervalSet.full().is_full()
    assert IntervalSet.empty().is_empty()
    assert IntervalSet.of(("-inf", "1/2")).intervals == ((NEG_INF, half),)


def test_density():
    assert IntervalSet.of(("-inf", 0), (0, "inf")).is_dense()
    assert not IntervalSet.of(("-inf", 0), (1, "inf")).is_dense()
    assert not IntervalSet.of((0, "inf")).is_dense()


def test_exterior():
    assert IntervalSet.of((0, "inf")).exterior() == IntervalSet.of(("-inf", 0))
    assert IntervalSet.of((0, 1), (1, 2)).exterior() == IntervalSet.of(("-inf", 0), (2, "inf"))
    assert IntervalSet.full().exterior().is_empty()
    assert IntervalSet.empty().exterior().is_full()


def test_symmetric_difference_keeps_boundary_points():
    a = IntervalSet.of((0, 2))
    b = IntervalSet.of((0, 1), (1, 2))
    d = a.symmetric_difference(b)
    assert d.opens == () and d.points == (Fraction(1),)
    assert d.first_canonical() == (1, Fraction(1))


def test_first_canonical():
    assert IntervalSet.of((-2, -1)).first_canonical() == (10, Fraction(-3, 2))
    assert IntervalSet.empty().first_canonical() is None


@given(interval_sets(), interval_sets())
def test_union_and_intersection_pointwise(a, b):
    for x in probe(a, b):
        assert (x in a | b) == (x in a or x in b)
        assert (x in a & b) == (x in a and x in b)


@given(interval_sets(), interval_sets())
def test_boolean_combinations_pointwise(a, b):
    sd, diff = a.symmetric_difference(b), a.difference(b)
    for x in probe(a, b):
        assert (x in sd) == ((x in a) != (x in b))
        assert (x in diff) == (x in a and x not in b)


@given(interval_sets())
def test_exterior_is_outside_the_closure(a):
    ext = a.exterior()
    for x in probe(a):
        assert (x in ext) == (not a.closure_contains(x))


@given(interval_sets())
def test_first_canonical_is_the_earliest_member(a):
    hit = a.first_canonical()
    if a.is_empty():
        assert hit is None
        return
    k, q = hit
    assert q in a and canonical_rationals(k) == q
    assert all(canonical_rationals(j) not in a for j in range(min(k, 3000)))


@given(interval_sets())
def test_json_roundtrip(a):
    assert IntervalSet.from_json(a.to_json()) == a


@given(interval_sets(), interval_sets())
def test_rational_set_interior(a, b):
    inner = RationalSet.combine([a, b], lambda x, y: x or y).interior()
    assert inner == a | b
