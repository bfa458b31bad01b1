import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import homeos, rationals
from oracles import theta_pointwise
from plorders.intervals import IntervalSet
from plorders.orders import StandardOrdering, compare_standard
from plorders.pl import IDENTITY, PLHomeo, Sign, compose, invert, pl_bump, plus_part
from plorders.sampling import random_anb_instance, random_standard
from plorders.witnesses import (
    InvalidIntervals,
    NotAPlusPart,
    NotJointlyPositivizable,
    PreconditionViolated,
    alternating_bump,
    approximate_typical,
    approximate_typical_trace,
    construct_anb,
    construct_g,
    construct_h,
    relevance_bump,
    same_germ_pair,
    separating_pair,
    solve_t,
    theta_in_t,
)

F = Fraction
P, N = Sign.POSITIVE, Sign.NEGATIVE
shift = PLHomeo.translation(1)
up01, down12 = pl_bump((0, 1), F(1, 4)), pl_bump((1, 2), F(-1, 4))
down01, up12 = pl_bump((0, 1), F(-1, 4)), pl_bump((1, 2), F(1, 4))
TWO_BUMPS = [compose(up01, down12), compose(down01, up12)]
A_TWO = IntervalSet.of((0, 1), (1, 2))


@pytest.fixture(scope="module")
def two_bump_result():
    return construct_anb(TWO_BUMPS)


class TestTheta:
    def test_single_translation(self):
        th = theta_in_t([shift], 3)
        assert all(th(t) == 3 + 1 - t for t in (F(0), F(1, 3), F(5)))

    def test_two_translations(self):
        th = theta_in_t([shift, shift], F(1, 2))
        assert all(th(t) == F(1, 2) + 2 - 2 * t for t in (F(0), F(7, 4), F(-2)))

    def test_identity(self):
        th = theta_in_t([IDENTITY], 4)
        assert th(F(3)) == 1

    def test_rejects_non_plus_parts(self):
        with pytest.raises(NotAPlusPart):
            theta_in_t([down01], 0)

    def test_solve_examples(self):
        assert solve_t([shift], F(17, 3)) == 1
        assert solve_t([IDENTITY], 5) == 0
        assert solve_t([shift, shift], -4) == 1

    @given(st.lists(homeos(4), min_size=1, max_size=3), rationals(), rationals())
    def test_theta_matches_pointwise_substitution(self, fs, x, t):
        pluses = [plus_part(f) for f in fs]
        assert theta_in_t(pluses, x)(t) == theta_pointwise(pluses, x, t)

    @given(st.lists(homeos(4), min_size=1, max_size=3), rationals())
    def test_solution_is_a_nonnegative_root(self, fs, x):
        pluses = [plus_part(f) for f in fs]
        t = solve_t(pluses, x)
        assert t >= 0 and theta_pointwise(pluses, x, t) == x
        assert (t == 0) == (all(p(x) == x for p in pluses))

    @given(st.lists(homeos(4), min_size=1, max_size=3), rationals(), st.integers(1, 64))
    def test_root_moves_continuously(self, fs, x, k):
        # |t_x - t_x'| <= (M + 1) |x - x'| / s, with M bounding the x-slope of Θ
        # and s the least t-slope magnitude of Θ(x', .)
        pluses = [plus_part(f) for f in fs]
        delta = F(1, k)
        x2 = x + delta
        M = 1
        for p in pluses:
            M *= max(p.slopes)
        th2 = theta_in_t(pluses, x2).function
        s = min(abs(v) for v in th2.slopes)
        assert abs(solve_t(pluses, x2) - solve_t(pluses, x)) <= (M + 1) * delta / s


class TestConstructG:
    def test_two_bump_certificate(self, two_bump_result):
        r = two_bump_result
        assert r.region == A_TWO
        assert r.g.above == A_TWO and r.g.below.is_empty()
        assert r.h.above.is_empty() and r.h.below == A_TWO
        for f, gp in zip(TWO_BUMPS, r.g_parts):
            assert (gp.above, gp.below) == (f.above, f.below)
        for k, hp in enumerate(r.h_parts):
            f = TWO_BUMPS[r.h_index_map[k]]
            assert (hp.above, hp.below) == (f.above, f.below)

    def test_gamma_sets(self, two_bump_result):
        assert two_bump_result.gamma.above.is_empty()
        assert two_bump_result.gamma.below == A_TWO

    def test_products_are_the_parts(self, two_bump_result):
        r = two_bump_result
        assert r.g == compose(*r.g_parts) and r.h == compose(*r.h_parts)

    def test_identity_input(self):
        g, h = construct_g([IDENTITY]), construct_h([IDENTITY])
        assert g.product == IDENTITY and h.product == IDENTITY

    def test_translation_fails_precondition(self):
        with pytest.raises(PreconditionViolated) as err:
            construct_g([shift])
        assert err.value.certificate.opens == ((float("-inf"), float("inf")),)

    def test_whole_line_region(self):
        r = construct_anb([shift, PLHomeo.translation(-1)])
        assert r.g.above == IntervalSet.full() and r.h.below == IntervalSet.full()

    def test_opposite_signs_under_standard_orderings(self, two_bump_result):
        rng = random.Random(2)
        for _ in range(30):
            o = random_standard(rng)
            assert o.sign(two_bump_result.g) == -o.sign(two_bump_result.h)

    @pytest.mark.parametrize("seed", range(4))
    def test_random_instances(self, seed):
        fs = random_anb_instance(random.Random(seed))
        r = construct_anb(fs)
        A = r.region
        assert r.g.above == A and r.g.below.is_empty()
        assert r.h.above.is_empty() and r.h.below == A
        assert r.gamma.above.is_empty() and r.gamma.below == A


class TestApproximate:
    def test_single_bump(self):
        t = approximate_typical_trace([up01])
        assert t.points[0] == F(1, 2) and t.signs[0] == P

    def test_translation_and_negative_bump(self):
        t = approximate_typical_trace([shift, pl_bump((-2, -1), F(-1, 4))])
        assert t.points == [0, F(-3, 2)] and t.signs == [P, N]

    def test_obstruction(self):
        with pytest.raises(NotJointlyPositivizable) as err:
            approximate_typical(TWO_BUMPS)
        assert err.value.stage == 1

    def test_identity_rejected(self):
        with pytest.raises(ValueError):
            approximate_typical([IDENTITY])

    @given(st.lists(homeos(4), min_size=1, max_size=5))
    def test_output_makes_everything_positive(self, fs):
        fs = [f for f in fs if not f.is_identity()]
        if not fs:
            return
        ref = StandardOrdering()
        fs = [f if ref.sign(f) == P else invert(f) for f in fs]
        try:
            o = approximate_typical(fs)
        except NotJointlyPositivizable as err:
            A, B = err.certificate
            assert A == B
            return
        assert len(o.stream.prefix) == len(fs)
        assert all(compare_standard(o, f, IDENTITY)[0] == P for f in fs)


class TestNamedMaps:
    def test_relevance_bump(self):
        f = relevance_bump(0, 1)
        assert f.above == IntervalSet.of((-1, 1)) and f(0) == F(1, 2) and f(-1) == -1

    def test_alternating_bump(self):
        f = alternating_bump([(0, 1), (2, 3)], P)
        assert f.above == IntervalSet.of((0, 1)) and f.below == IntervalSet.of((2, 3))
        assert alternating_bump([], P) == IDENTITY
        g = alternating_bump([(0, 1)], N)
        assert g.above.is_empty() and g.below == IntervalSet.of((0, 1))
        with pytest.raises(InvalidIntervals):
            alternating_bump([(0, 2), (1, 3)])

    def test_same_germ_pair(self):
        up, down = same_germ_pair(0)
        assert up(0) == F(1, 2) and down(0) == F(-1, 2)
        assert up.germ() == down.germ() and (up.germ().a, up.germ().b) == (1, 1)
        assert up(-3) == -3 and up(5) == 6

    @given(rationals())
    def test_same_germ_pair_shape(self, x):
        up, down = same_germ_pair(x)
        assert set(up.xs) <= {x - 2, x, x + 2} and set(down.xs) <= {x - 2, x, x + 2}
        assert down(x) < x < up(x)

    def test_separating_pair(self):
        f, g = separating_pair()
        assert g.above == IntervalSet.full() and g.below.is_empty()
        assert g(5) == 9 and g(5) > compose(f, compose(f, f))(5) == 8
        assert (g.germ().a, g.germ().b) == (2, -1)
        for n in range(1, 8):
            x = F(n + 2)
            assert g(x) > x + n
