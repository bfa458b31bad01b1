from fractions import Fraction

from plorders.hierarchy import (
    NEGATIVES,
    POSITIVES,
    hierarchy_demo,
    intro_ordering,
    sample_points,
    standard_vs_staged,
    staged_vs_typical,
    typical_vs_all,
)
from plorders.orders import relevant_prefix


def test_intro_ordering_stages():
    o = intro_ordering()
    assert [s.region for s in o.stages] == [POSITIVES, NEGATIVES]


def test_negative_points_are_relevant():
    pts = relevant_prefix(intro_ordering(), 3)
    assert [p.point for p in pts if p.stage == 1] == [-1, Fraction(-1, 2), -2]
    assert all(p.is_relevant for p in pts)
    # 0 is the only accumulation point shared by the two regions
    assert POSITIVES.closure_contains(0) and not POSITIVES.closure_contains(Fraction(-1, 2))


def test_standard_vs_staged():
    out = standard_vs_staged()
    assert out["ok"]
    assert out["decided_at"][0] == 1
    assert out["stage2_relevant_outside_closure"][:2] == ["-1/1", "-1/2"]


def test_staged_vs_typical():
    out = staged_vs_typical(sample_points(6, seed=3), stagings=4, seed=3)
    assert out["ok"]
    for row in out["rows"]:
        assert row["composite"] == ["+", "+"]
        assert all(a != b for a, b in row["staged"])


def test_typical_vs_all():
    out = typical_vs_all()
    assert out["ok"]
    assert (out["sign_f"], out["sign_g"]) == ("+", "-")
    assert out["mismatches"] == 1


def test_sample_points_distinct():
    xs = sample_points(30, seed=1)
    assert len(set(xs)) == 30
    assert xs == sample_points(30, seed=1)


def test_demo_all_ok():
    out = hierarchy_demo(seed=2, samples=5)
    assert out["ok"] and all(out[k]["ok"] for k in
                             ("standard_vs_staged", "staged_vs_typical", "typical_vs_all"))
