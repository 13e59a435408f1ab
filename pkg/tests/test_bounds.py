import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zqforce import families as F
from zqforce.bounds import (
    bound_report,
    caterpillar_bounds,
    compare_tree_vs_corona_bound,
    edge_deletion_interval,
    recurrence_iterate,
    recurrence_l,
    recurrence_threshold,
    reports_csv,
    smallest_even_above,
    star_forest_zq,
    tree_bound_at,
    tree_upper_bound,
    z1_tree_formula,
    z2_cnk_bounds,
    z_star,
    zq_cnk_bounds,
)
from zqforce.solver import zq

from oracles import zero_forcing_number


def test_z_star_values():
    assert [z_star(n) for n in (1, 2, 3, 4, 5, 9)] == [1, 1, 1, 2, 3, 7]
    for n in range(2, 9):
        assert z_star(n) == zero_forcing_number(F.star(n))
    with pytest.raises(ValueError):
        z_star(0)


def test_star_forest_formula_examples():
    assert star_forest_zq([5, 4, 3], 1) == 5
    assert star_forest_zq([4, 3], 5) == 3
    assert star_forest_zq([3, 3, 3], 0) == 3
    with pytest.raises(ValueError, match="descending"):
        star_forest_zq([3, 4], 1)
    with pytest.raises(ValueError):
        star_forest_zq([1, 3], 1)


def test_tree_bound_examples():
    for q in range(4):
        assert tree_upper_bound(F.path(5), q)[0] == 1
    star = F.star(5)
    assert tree_bound_at(star, 1, 0) == 4
    assert tree_bound_at(star, 1, 1) == 3
    assert tree_upper_bound(star, 1) == (3, 1)
    binary = F.kary(2, 2)
    assert zq(binary, 1) <= tree_upper_bound(binary, 1)[0]
    with pytest.raises(ValueError):
        tree_upper_bound(F.cycle(4), 1)


@pytest.mark.parametrize("n", range(3, 10))
def test_z1_formula_on_paths_and_small_trees(n):
    assert z1_tree_formula(F.path(n)) == 1
    for t in F.all_trees(n)[:8]:
        assert z1_tree_formula(t) == zq(t, 1)


def test_z1_formula_examples():
    assert z1_tree_formula(F.star(5)) == zq(F.star(5), 1)
    assert z1_tree_formula(F.spider([2, 2, 2])) == zq(F.spider([2, 2, 2]), 1)
    with pytest.raises(ValueError):
        z1_tree_formula(F.path(2))


def test_edge_deletion_interval():
    assert edge_deletion_interval(3) == (1, 4, "")
    lo, hi, note = edge_deletion_interval(1)
    assert (lo, hi) == (0, 2) and "clamped" in note
    p = F.path(6)
    assert zq(p.delete_edge(2, 3), 1) == 2 == zq(p, 1) + 1


def test_cnk_bound_values():
    b = z2_cnk_bounds(3, 2)
    assert b.lower == pytest.approx(2.585, abs=1e-3) and b.upper == 5
    assert (b.lower_int, b.upper_int) == (3, 5)
    b = z2_cnk_bounds(4, 2)
    assert (b.lower, b.upper) == (3, 6)
    assert zq_cnk_bounds(1024, 2, 3).upper == 26
    assert zq_cnk_bounds(1024, 2, 3).p == 4
    assert zq_cnk_bounds(1024, 2, 4).p == 6
    assert caterpillar_bounds(1024, 2, 3).upper == 27
    assert caterpillar_bounds(8, 2, 3).lower == 1.0
    with pytest.raises(ValueError):
        z2_cnk_bounds(2, 2)
    with pytest.raises(ValueError):
        zq_cnk_bounds(5, 2, 1)


def test_lower_bound_flag():
    assert zq_cnk_bounds(500, 2, 3).note == ""
    assert "q=3" in zq_cnk_bounds(500, 2, 2).note
    # the lower bound only turns positive past n=200
    assert zq_cnk_bounds(200, 2, 3).lower == pytest.approx(0)
    assert zq_cnk_bounds(800, 2, 3).lower == pytest.approx(2 * math.log(2, 3) * 2)


@given(st.integers(0, 40))
def test_smallest_even_above(q):
    p = smallest_even_above(q)
    assert p % 2 == 0 and q + 1 <= p <= q + 2


def test_recurrence_examples():
    assert [recurrence_l(i, 7) for i in range(4)] == [7, 3, 1, 0]
    assert recurrence_l(0, Fraction(13, 3)) == Fraction(13, 3)
    assert recurrence_threshold(8) == 3
    assert recurrence_threshold(1) == 0
    with pytest.raises(ValueError):
        recurrence_l(-1, 3)


@given(st.integers(1, 200), st.integers(0, 60))
def test_recurrence_closed_form(l0, i):
    assert recurrence_l(i, l0) == recurrence_iterate(i, l0)


@given(st.integers(2, 4096))
def test_threshold_is_ceil_log2(n):
    assert recurrence_threshold(n) == (n - 1).bit_length()


def test_tree_vs_corona_comparison():
    r = compare_tree_vs_corona_bound(101, 2, 2)
    assert r["tree_floor"] == 200
    assert r["caterpillar_upper"] == pytest.approx(2 * math.log2(101) + 4 + 2 - 2 + 2 + 1)
    assert r["better"] == "caterpillar"
    assert compare_tree_vs_corona_bound(3, 2, 2)["better"] == "tree"
    with pytest.raises(ValueError):
        compare_tree_vs_corona_bound(4, 2, 2)


@pytest.mark.parametrize("graph", [
    "star-forest:5/4/3", "path:6", "kary:k=2,depth=2", "corona:n=4,k=2",
    "cnk:n=3,k=2", "cnk:n=4,k=2", "pnk:n=4,k=2", "spider:2/2/2", "random-tree:n=9,seed=2",
])
@pytest.mark.parametrize("q", [1, 2, 3])
def test_bound_reports_are_consistent(graph, q):
    g = F.build(graph)
    r = bound_report(g, q, zq(g, q))
    assert r.consistent(), r


def test_unproved_lower_bound_never_wins():
    r = bound_report(F.cnk(4, 2), 2)
    assert not r.lower_src.endswith("-unproved")
    r = bound_report(F.cnk(4, 2), 4)
    assert r.lower_src == "trivial" and any("q=3" in n for n in r.notes)


def test_reports_csv_layout():
    text = reports_csv([bound_report(F.path(4), 1, 1), bound_report(F.star(5), 2)])
    lines = text.split("\n")
    assert lines[0] == "graph,q,lower,lower_src,upper,upper_src,exact"
    assert lines[1].startswith("path:4,1,1,") and lines[1].endswith(",1")
    assert lines[2].endswith(",") and text.endswith("\n") and "\r" not in text
