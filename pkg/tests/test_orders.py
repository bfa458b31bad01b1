import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import compact_homeos, homeos, rationals
from oracles import canonical_by_recurrence, first_difference_naive
from plorders.intervals import IntervalSet
from plorders.orders import (
    CompositeOrdering,
    GermOrdering,
    InvalidOrdering,
    InvalidPair,
    PointStream,
    SignAssignment,
    Stage,
    StagedOrdering,
    StandardOrdering,
    Undecided,
    compare_staged,
    compare_standard,
    germ_sign,
    relevant_prefix,
    sign_composite,
    typicality_probe,
    verify_positive_cone,
)
from plorders.pl import IDENTITY, AffineGerm, PLHomeo, Sign, compose, invert, pl_bump
from plorders.rationals import count_canonical_below
from plorders.sampling import matched_pair, random_homeo, random_staged, random_standard
from plorders.witnesses import separating_pair

F = Fraction
P, N, Z = Sign.POSITIVE, Sign.NEGATIVE, Sign.ZERO
shift = PLHomeo.translation(1)
down21 = pl_bump((-2, -1), F(-1, 4))
POS = IntervalSet.of((0, "inf"))
NEG = IntervalSet.of(("-inf", 0))
intro = StagedOrdering.build([(POS, (), {}, P), (NEG, (), {}, P)])
CANON = canonical_by_recurrence(4000)


def naive_stream(prefix, region, count):
    out = list(prefix)
    for q in CANON:
        if len(out) >= count:
            break
        if q in region and q not in prefix:
            out.append(q)
    return out


class TestStandardExamples:
    def test_translation_decided_at_zero(self):
        assert compare_standard(StandardOrdering(), shift, IDENTITY) == (P, 0)

    def test_equal_maps(self):
        assert compare_standard(StandardOrdering(), shift, shift) == (Z, None)

    def test_down_bump_decided_at_index_ten(self):
        assert compare_standard(StandardOrdering(), down21, IDENTITY) == (N, 10)

    def test_sign_table_flips(self):
        o = StandardOrdering.build([], {0: N})
        assert o.sign(shift) == N

    def test_prefix_must_be_distinct(self):
        with pytest.raises(InvalidOrdering):
            PointStream((F(1), F(1)))

    def test_zero_signs_rejected(self):
        with pytest.raises(InvalidOrdering):
            SignAssignment({0: Z})


class TestStagedExamples:
    def test_negative_bump_decided_in_second_stage(self):
        sign, (stage, index) = compare_staged(intro, down21, IDENTITY)
        assert sign == N and stage == 1
        assert intro.stages[1].stream.point(index) == F(-3, 2)

    def test_translation_decided_at_first_positive_point(self):
        assert compare_staged(intro, shift, IDENTITY) == (P, (0, 0))

    def test_equal(self):
        assert compare_staged(intro, shift, shift) == (Z, None)

    def test_regions_must_be_dense(self):
        with pytest.raises(InvalidOrdering):
            StagedOrdering.build([(POS, (), {}, P), (IntervalSet.of(("-inf", -1)), (), {}, P)])


class TestRelevantPrefix:
    def test_single_stage_all_relevant(self):
        o = StagedOrdering.build([(IntervalSet.full(), (), {}, P)])
        assert all(p.is_relevant for p in relevant_prefix(o, 10))

    def test_negative_stage_point_is_relevant(self):
        pts = {p.point: p for p in relevant_prefix(intro, 5)}
        assert pts[F(-3, 2)].stage == 1 and pts[F(-3, 2)].is_relevant

    def test_duplicated_region_is_irrelevant(self):
        o = StagedOrdering.build([(POS, (), {}, P), (POS, (), {}, P), (NEG, (), {}, P)])
        assert not any(p.is_relevant for p in relevant_prefix(o, 6) if p.stage == 1)


class TestGerms:
    def test_examples(self):
        ea, el = GermOrdering.eventually_above(), GermOrdering.eval_lex([1, 0])
        assert germ_sign(ea, AffineGerm(1, 1)) == P
        assert germ_sign(el, AffineGerm(2, -1)) == N
        assert germ_sign(el, AffineGerm(1, 1)) == P
        assert germ_sign(ea, AffineGerm(1, 0)) == Z

    def test_single_point_can_be_undecided(self):
        with pytest.raises(Undecided):
            germ_sign(GermOrdering.eval_lex([1]), AffineGerm(2, -1))

    def test_composite_examples(self):
        f, g = separating_pair()
        ea = CompositeOrdering(GermOrdering.eventually_above(), StandardOrdering())
        el = CompositeOrdering(GermOrdering.eval_lex([1, 0]), StandardOrdering())
        assert sign_composite(ea, f) == P
        assert sign_composite(el, g) == N
        up = pl_bump((0, 1), F(1, 4))
        interior = StandardOrdering.build([], {3: N})
        assert sign_composite(CompositeOrdering(GermOrdering.eventually_above(), interior), up) == N

    @pytest.mark.parametrize("ord", [GermOrdering.eventually_above(),
                                     GermOrdering.eval_lex([1, 0]),
                                     GermOrdering.eval_lex([F(-3), F(1, 2)])])
    def test_germ_orderings_are_positive_cones(self, ord):
        # affine maps form the affine germ group, with the same composition
        rng = random.Random(3)
        maps = [PLHomeo.affine(F(rng.randint(1, 8), rng.randint(1, 4)),
                               F(rng.randint(-6, 6), rng.randint(1, 3))) for _ in range(30)]
        maps = [m for m in maps if not m.is_identity()]
        rep = verify_positive_cone(lambda h: germ_sign(ord, h.germ()), maps)
        assert rep.ok, rep.violations[:3]

    @given(homeos())
    def test_eventually_above_positive_when_above_near_infinity(self, f):
        A = f.above
        germ = f.germ()
        if not germ.is_trivial() and A.intervals and A.intervals[-1][1] == float("inf"):
            assert germ_sign(GermOrdering.eventually_above(), germ) == P


class TestHarnesses:
    def test_standard_cone_on_random_samples(self):
        rng = random.Random(11)
        samples = [random_homeo(rng, 5) for _ in range(50)]
        assert verify_positive_cone(random_standard(rng).sign, samples).ok

    def test_composite_cone_on_mixed_samples(self):
        rng = random.Random(12)
        samples = [random_homeo(rng, 4) for _ in range(20)]
        samples += [pl_bump((i, i + 2), F(1, 2) if i % 2 else F(-1, 3)) for i in range(-5, 5)]
        comp = CompositeOrdering(GermOrdering.eventually_above(), random_standard(rng))
        assert verify_positive_cone(comp.sign, samples).ok

    def test_corrupted_sign_is_caught(self):
        victim = pl_bump((0, 1), F(1, 4))
        base = StandardOrdering()

        def corrupted(f):
            return N if f == victim else base.sign(f)

        rep = verify_positive_cone(corrupted, [victim, shift])
        assert any(v.kind == "trichotomy" for v in rep.violations)

    def test_typicality_standard(self):
        rng = random.Random(5)
        pairs = []
        for _ in range(100):
            f = random_homeo(rng, 5)
            pairs.append((f, matched_pair(rng, f)))
        assert typicality_probe(random_standard(rng).sign, pairs).ok

    def test_typicality_mismatch_for_eval_lex(self):
        f, g = separating_pair()
        comp = CompositeOrdering(GermOrdering.eval_lex([1, 0]), StandardOrdering())
        assert len(typicality_probe(comp.sign, [(f, g)]).mismatches) == 1

    def test_identical_pair_never_mismatches(self):
        assert typicality_probe(StandardOrdering().sign, [(shift, shift)]).ok

    def test_unmatched_pair_rejected(self):
        with pytest.raises(InvalidPair):
            typicality_probe(StandardOrdering().sign, [(shift, down21)])


@st.composite
def standard_orderings(draw):
    prefix = draw(st.lists(rationals(20, 4), unique=True, max_size=5))
    table = draw(st.dictionaries(st.integers(0, 8), st.sampled_from([P, N]), max_size=5))
    return StandardOrdering.build(prefix, table, draw(st.sampled_from([P, N])))


@st.composite
def staged_orderings(draw):
    return random_staged(random.Random(draw(st.integers(0, 10**6))))


@given(standard_orderings(), homeos(), homeos())
def test_standard_matches_linear_scan(o, f, g):
    pts = naive_stream(o.stream.prefix, IntervalSet.full(), 3000)
    i = first_difference_naive(pts, f, g)
    sign, idx = compare_standard(o, f, g)
    if i is None:
        assert idx is None or idx >= len(pts)
    else:
        assert idx == i and sign == Sign.of(f(pts[i]) - g(pts[i])) * o.signs(i)


@given(staged_orderings(), homeos(max_breaks=4))
def test_staged_matches_linear_scan(o, f):
    sign, where = compare_staged(o, f, IDENTITY)
    if f.is_identity():
        assert where is None
        return
    j, idx = where
    for st_ in o.stages[:j]:
        pts = naive_stream(st_.stream.prefix, st_.region, 300)
        assert first_difference_naive(pts, f, IDENTITY) is None
    pts = naive_stream(o.stages[j].stream.prefix, o.stages[j].region, 3000)
    i = first_difference_naive(pts, f, IDENTITY)
    if i is not None:
        assert idx == i


@given(standard_orderings(), homeos(), homeos(), homeos())
def test_left_invariance(o, f, g, h):
    assert compare_standard(o, compose(h, f), compose(h, g))[0] == compare_standard(o, f, g)[0]


@given(staged_orderings(), homeos(4), homeos(4), homeos(4))
def test_staged_left_invariance(o, f, g, h):
    assert o.compare(compose(h, f), compose(h, g)) == o.compare(f, g)


@given(standard_orderings(), homeos(), homeos())
def test_antisymmetry(o, f, g):
    a, b = o.compare(f, g), o.compare(g, f)
    assert a == -b and (a == Z) == (f == g)


@given(staged_orderings(), homeos(4), homeos(4), homeos(4))
def test_transitivity(o, f, g, h):
    items = [f, g, h]
    for a, b, c in itertools.permutations(items):
        if o.compare(a, b) == P and o.compare(b, c) == P:
            assert o.compare(a, c) == P


@given(standard_orderings(), homeos(), homeos())
def test_single_stage_agrees_with_standard(o, f, g):
    staged = StagedOrdering((Stage(o.stream, o.signs),))
    assert staged.compare(f, g) == o.compare(f, g)


@given(st.integers(0, 3000), st.lists(rationals(12, 3), max_size=4))
def test_index_counting_matches_enumeration(k, cuts):
    cuts = sorted(set(cuts))
    bounds = [float("-inf"), *cuts, float("inf")]
    region = IntervalSet(tuple(p for i, p in enumerate(zip(bounds, bounds[1:])) if i % 2 == 0))
    assert count_canonical_below(k, region.intervals) == sum(1 for q in CANON[:k] if q in region)


def test_deep_first_hit_is_found_without_scanning():
    o = StagedOrdering.build([(IntervalSet.of((1, "inf")), (), {}, P),
                              (IntervalSet.of(("-inf", 1)), (), {}, P)])
    f = pl_bump((39, 39 + F(1, 9)), F(1, 100))
    sign, (stage, idx) = compare_staged(o, f, IDENTITY)
    assert sign == P and stage == 0 and idx > 10**12


@given(compact_homeos())
def test_composite_interior_fallback(f):
    interior = StandardOrdering.build([], {0: N, 1: N})
    comp = CompositeOrdering(GermOrdering.eval_lex([1, 0]), interior)
    assert comp.sign(f) == interior.sign(f)
    assert comp.sign(invert(f)) == -comp.sign(f)
