import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import assume, given, strategies as st

from zqforce import families as F
from zqforce.engine import (
    Force,
    IllegalMove,
    Offer,
    Spend,
    apply_move,
    closure_in_view,
    deactivate,
    deactivation_candidates,
    enumerate_offers,
    find_winning_offer,
    guaranteed_offer_forest,
    legal_forces,
    offer_is_winning,
    resolve_rule3,
    responses,
    rule2_closure,
)
from zqforce.graph import GameState, Graph, activity, active_vertices, bits, mask_of, members, white_components

from oracles import nx_graph, zf_closure
from test_graph import graph_and_blue


@st.composite
def forest_and_blue(draw, max_n=10):
    n = draw(st.integers(2, max_n))
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    edges = [(v, rng.randrange(v)) for v in range(1, n) if rng.random() < 0.85]
    g = Graph.from_edges(n, edges)
    blue = mask_of(v for v in range(n) if rng.random() < 0.4)
    return g, blue


# -- examples ----------------------------------------------------------------


def test_legal_forces_examples():
    assert legal_forces(GameState(F.path(3), 0b001)) == [(0, 1)]
    assert legal_forces(GameState(F.star(5), 0b1)) == []
    assert legal_forces(GameState(F.path(4), 0b0010)) == []


def test_apply_move_examples():
    p3 = GameState(F.path(3))
    s, c = apply_move(p3, Spend(0))
    assert (s.blue, c) == (0b001, 1)
    s, c = apply_move(s, Force(0, 1))
    assert (s.blue, c) == (0b011, 0)
    with pytest.raises(IllegalMove, match="already blue"):
        apply_move(s, Spend(0))
    with pytest.raises(IllegalMove, match="unique white neighbor"):
        apply_move(GameState(F.star(5), 1), Force(0, 1))


def test_rule2_closure_examples():
    assert rule2_closure(GameState(F.path(7), 1)).done()
    s = rule2_closure(GameState(F.star(5), 0b10))
    assert members(s.blue) == (0, 1)


def test_enumerate_offers_counts():
    star = GameState(F.star(5), 1)  # 4 singleton leaves
    assert len(enumerate_offers(star, 1)) == 6
    assert len(enumerate_offers(star, 1, minimal_only=False)) == 11
    three = GameState(F.star(4), 1)
    assert len(enumerate_offers(three, 1)) == 3
    assert enumerate_offers(GameState(F.path(5), 0b00100), 2) == []


def test_resolve_rule3_star_examples():
    s = GameState(F.star(5), 1)
    offer = Offer((0, 1), 1)
    assert resolve_rule3(s, offer, (0, 1)) == []
    assert resolve_rule3(s, offer, (1,)) == [(0, 2)]
    assert not offer_is_winning(s, offer, 1)


def test_resolve_rule3_two_tails():
    # blue roots 0 and 3 of two disjoint paths 0-1-2 and 3-4-5
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    s = GameState(g, mask_of([0, 3]))
    assert resolve_rule3(s, Offer((0, 1), 1), (0, 1)) == [(0, 1), (3, 4)]


def test_offer_and_response_validation():
    s = GameState(F.star(5), 1)
    with pytest.raises(IllegalMove):
        Offer((0,), 1)
    with pytest.raises(IllegalMove):
        Offer((0, 0), 0)
    with pytest.raises(IllegalMove):
        resolve_rule3(s, Offer((0, 1), 1), ())
    with pytest.raises(IllegalMove):
        resolve_rule3(s, Offer((0, 1), 1), (2,))
    assert find_winning_offer(GameState(F.path(4), 1), 0) is not None
    assert find_winning_offer(GameState(F.cycle(5), 0), 0) is None


def test_guaranteed_offer_examples():
    stars = F.star_forest([3, 3, 3])
    centers = F.star_centers([3, 3, 3])
    s = GameState(stars, mask_of(centers))
    o = guaranteed_offer_forest(s, 2)
    assert len(o.components) == 3 and offer_is_winning(s, o, 2)
    comps = white_components(s)
    assert len({next(c for c in range(3) if comps[i] >> centers[c] + 1 & 1 or comps[i] >> centers[c] + 2 & 1)
                for i in o.components}) == 3
    spider = F.spider([2, 2, 2])
    # a blue body alone is one active vertex, so only q=0 applies
    body = GameState(spider, 1)
    o = guaranteed_offer_forest(body, 0)
    assert len(o.components) == 1 and offer_is_winning(body, o, 0)
    with pytest.raises(ValueError):
        guaranteed_offer_forest(body, 2)
    # body plus the first vertex of each leg, legs extended to length 3
    long = F.spider([3, 3, 3])
    s = GameState(long, mask_of([0, 1, 4, 7]))
    assert activity(s) == 0
    s = GameState(long, mask_of([1, 4, 7]))
    o = guaranteed_offer_forest(s, 2)
    assert len(o.components) == 3 and offer_is_winning(s, o, 2)
    with pytest.raises(ValueError):
        guaranteed_offer_forest(GameState(F.cycle(6), 0b1001), 0)


def test_deactivate_examples():
    stars = F.star_forest([3, 3])
    s = GameState(stars, mask_of(F.star_centers([3, 3])))
    out, colored = deactivate(s, 0, lambda st_, c: c[0])
    # White may waste a pick on an already inactive center's leaf
    assert activity(out) == 0 and colored == [1, 2, 4]

    def thrifty(st_, cands):
        act = active_vertices(st_)
        return next(v for v in cands if st_.graph.nbr[v] & act)

    out, colored = deactivate(s, 0, thrifty)
    assert activity(out) == 0 and colored == [1, 4]
    # activity exactly q+1: one coloring is enough
    out, colored = deactivate(GameState(F.star(3), 1), 0, lambda st_, c: c[0])
    assert colored == [1]
    with pytest.raises(IllegalMove):
        deactivate(GameState(F.star(3), 1), 1, lambda st_, c: c[0])
    with pytest.raises(IllegalMove, match="not a blue-adjacent"):
        deactivate(GameState(F.star(3), 1), 0, lambda st_, c: 0)


# -- properties --------------------------------------------------------------


@given(graph_and_blue(), st.integers(0, 1000))
def test_rule2_closure_confluent_and_idempotent(gb, seed):
    g, blue = gb
    rng = random.Random(seed)
    state = GameState(g, blue)
    # apply forces in a random order until none is left
    s = state
    while True:
        fs = legal_forces(s)
        if not fs:
            break
        s, _ = apply_move(s, Force(*rng.choice(fs)))
    closed = rule2_closure(state)
    assert s == closed
    assert rule2_closure(closed) == closed
    assert set(members(closed.blue)) == zf_closure(nx_graph(g), members(blue))


@given(graph_and_blue())
def test_moves_grow_blue_by_one(gb):
    g, blue = gb
    s = GameState(g, blue)
    for v in members(s.white)[:3]:
        t, c = apply_move(s, Spend(v))
        assert t.blue == s.blue | 1 << v and c == 1
    for u, w in legal_forces(s):
        t, c = apply_move(s, Force(u, w))
        assert t.blue == s.blue | 1 << w and c == 0


def _view_forces_oracle(g, blue, view):
    h = nx_graph(g).subgraph(set(members(blue)) | set(members(view)))
    out = []
    for u in sorted(members(blue)):
        white = [w for w in h[u] if not blue >> w & 1]
        if len(white) == 1:
            out.append((u, white[0]))
    return out


@given(graph_and_blue(8), st.integers(0, 2), st.data())
def test_resolve_rule3_matches_induced_subgraph(gb, q, data):
    g, blue = gb
    s = GameState(g, blue)
    comps = white_components(s)
    assume(len(comps) >= q + 1)
    offer = data.draw(st.sampled_from(enumerate_offers(s, q, minimal_only=False)))
    resp = data.draw(st.sampled_from(responses(offer)))
    view = 0
    for i in resp:
        view |= comps[i]
    assert resolve_rule3(s, offer, resp) == _view_forces_oracle(g, blue, view)
    closed = closure_in_view(s, view)
    h = nx_graph(g).subgraph(set(members(blue)) | set(members(view)))
    assert set(members(closed.blue)) == zf_closure(h, members(blue))


@given(graph_and_blue(8), st.integers(0, 2))
def test_blue_blue_edges_are_irrelevant(gb, q):
    g, blue = gb
    inner = [(u, v) for u, v in g.edges if blue >> u & 1 and blue >> v & 1]
    assume(inner)
    s = GameState(g, blue)
    for u, v in inner:
        t = GameState(g.delete_edge(u, v), blue)
        assert legal_forces(s) == legal_forces(t)
        assert white_components(s) == white_components(t)
        offers = enumerate_offers(s, q, minimal_only=False)
        assert offers == enumerate_offers(t, q, minimal_only=False)
        for o in offers[:4]:
            for r in responses(o):
                assert resolve_rule3(s, o, r) == resolve_rule3(t, o, r)


@given(forest_and_blue(), st.integers(0, 3))
def test_guaranteed_offer_wins_on_forests(gb, q):
    g, blue = gb
    s = GameState(g, blue)
    assume(activity(s) >= 1)
    q = min(q, activity(s) - 1)
    o = guaranteed_offer_forest(s, q)
    assert len(o.components) == q + 1
    assert offer_is_winning(s, o, q)


@pytest.mark.parametrize("n", range(2, 10))
def test_activity_zero_tree_states_close_to_all_blue(n):
    for t in F.all_trees(n):
        for blue in range(1, t.full + 1):
            s = GameState(t, blue)
            if activity(rule2_closure(s)) == 0:
                assert rule2_closure(s).done()


@given(st.integers(3, 6), st.integers(1, 3), st.data())
def test_only_centers_can_be_active_on_cnk(n, k, data):
    g = F.corona(n, k)
    blue = data.draw(st.integers(0, g.full))
    assert active_vertices(GameState(g, blue)) & ~mask_of(range(n)) == 0


@given(graph_and_blue(8))
def test_deactivation_reaches_activity_at_most_q(gb):
    g, blue = gb
    s = GameState(g, blue)
    for q in range(3):
        if activity(s) >= q + 1:
            out, colored = deactivate(s, q, lambda st_, c: c[-1])
            assert activity(out) <= q
            assert out.blue & s.blue == s.blue
