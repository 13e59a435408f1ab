from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zqforce import families as F
from zqforce.bounds import smallest_even_above, zq_cnk_bounds
from zqforce.certify import certify_lower, certify_upper
from zqforce.engine import Offer
from zqforce.graph import GameState, mask_of, members, white_components
from zqforce.simulate import simulate
from zqforce.solver import zq
from zqforce.strategies import AdaptedBlue, BlueCnkGeneral, BluePolicy, make_blue, make_white
from zqforce.strategies.base import lowest_white
from zqforce.strategies.caterpillar import (
    Q2,
    Q3,
    brute_protected,
    classify_centers,
    phi,
    protected_paths,
    white_center_runs,
)


def pendants(g, pos):
    return g.layout.pendants[pos]


# -- centers and protected paths ---------------------------------------------


def test_classify_examples():
    g = F.cnk(3, 2)
    assert classify_centers(GameState(g)).bad == (False,) * 3
    leaf = pendants(g, 1)[0]
    assert classify_centers(GameState(g, 1 << leaf)).bad == (False, True, False)
    assert classify_centers(GameState(g, 1 << 2)).bad == (False, False, True)
    with pytest.raises(ValueError):
        classify_centers(GameState(F.path(4)))


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (6, 3), (9, 2)])
def test_phi_seed_values(n, k):
    g = F.cnk(n, k)
    assert phi(GameState(g), Q2) == n - 1
    # two opening tokens on pendants of adjacent centers
    blue = mask_of([pendants(g, 0)[0], pendants(g, 1)[0]])
    assert phi(GameState(g, blue), Q2) == n - 2
    assert phi(GameState(g, mask_of(range(n))), Q2) == 0
    assert phi(GameState(g, mask_of(range(n))), Q3) == 0


def _brute_phi(state, variant):
    labels = classify_centers(state)
    best = 0
    for pos in brute_protected(state, variant):
        if variant == Q2:
            best = max(best, len(pos) - 2)
        else:
            best = max(best, sum(1 for p in pos[1:-1] if not labels.bad[p]))
    return best


@st.composite
def caterpillar_states(draw):
    n = draw(st.integers(3, 7))
    k = draw(st.integers(2, 3))
    cyclic = draw(st.booleans())
    seed = draw(st.integers(0, 1000))
    g = F.cnk(n, k, seed=seed) if cyclic else F.pnk(n, k, seed=seed)
    # bias towards sparse blue sets so long paths survive
    picks = draw(st.lists(st.integers(0, g.n - 1), max_size=g.n // 2))
    return GameState(g, mask_of(picks))


@given(caterpillar_states(), st.sampled_from([Q2, Q3]))
def test_protected_paths_match_definition(state, variant):
    brute = set(brute_protected(state, variant))
    fast = protected_paths(state, variant)
    for p in fast:
        assert p.positions in brute
    # every brute path sits inside some reported maximal path
    for pos in brute:
        assert any(_inside(pos, p.positions) for p in fast)
    assert phi(state, variant) == _brute_phi(state, variant)


def _inside(small, big):
    m = len(small)
    return any(tuple(big[i:i + m]) == small for i in range(len(big) - m + 1))


# -- the drop bounds fail when a token empties a center's pendants -----------


def test_q2_drop_counterexample():
    g = F.cnk(3, 2)
    a, b = pendants(g, 0)
    before = GameState(g, 1 << a)
    after = before.with_blue(1 << b)
    assert phi(before, Q2) == 2  # the full cycle
    assert phi(after, Q2) == 0  # center 0 lost its last white pendant
    assert 2 * phi(after, Q2) < phi(before, Q2) - 1


@pytest.mark.parametrize("n", range(4, 10))
def test_q2_full_cycle_drop_is_two(n):
    # the same move on larger cycles loses exactly two, within (phi-1)/2
    g = F.cnk(n, 2)
    a, b = pendants(g, 0)
    before, after = GameState(g, 1 << a), GameState(g, 1 << a | 1 << b)
    assert (phi(before, Q2), phi(after, Q2)) == (n - 1, n - 3)


def test_q3_drop_counterexample():
    g = F.cnk(5, 2)
    a, b = pendants(g, 2)
    before = GameState(g, mask_of([0, 4, a]))
    after = before.with_blue(1 << b)
    assert phi(before, Q3) == 2  # path 0..4 with bad center 2 inside
    assert phi(after, Q3) == 0
    assert 3 * Fraction(phi(after, Q3)) < phi(before, Q3) - 1


def test_q3_drop_seen_in_simulation():
    g = F.cnk(10, 2)
    before = GameState(g, mask_of([0, 1, 2, 3, 4, 5, 6, 11, 14, 16, 17, 18, 19, 20, 21, 22, 27]))
    a, b = phi(before, Q3), phi(before.with_blue(1 << 26), Q3)
    assert 3 * b < a - 1


# -- White protected-path policy ---------------------------------------------


def test_white_returns_both_pendants_of_a_bad_center():
    g = F.cnk(4, 2)
    s = GameState(g, 1)  # center 0 blue, its pendants isolated
    comps = white_components(s)
    w = make_white("protected-q2", g, 2)
    assert w.respond(s, Offer((0, 1, 2), 2), comps) == (1, 2)
    assert w.last_flag == "option2" and w.method == "pair"


def test_white_option1_returns_an_outside_component():
    g = F.cnk(6, 2)
    # center 3 blue with pendants isolated; the path avoids center 3
    s = GameState(g, mask_of([3, 0]))
    comps = white_components(s)
    w = make_white("protected-q2", g, 2)
    path = w.commitment(s)
    assert 3 not in path.positions[1:-1]
    outside = [i for i, c in enumerate(comps) if members(c)[0] in pendants(g, 3)]
    inside = [i for i, c in enumerate(comps) if i not in outside]
    offer = Offer(tuple(sorted(outside[:1] + inside[:2])), 2)
    resp = w.respond(s, offer, comps)
    assert w.last_flag == "option1" and len(resp) == 1


def test_white_phi_zero_falls_back_to_whole_offer():
    g = F.cnk(3, 2)
    s = GameState(g, mask_of(range(3)))
    comps = white_components(s)
    w = make_white("protected-q3", g, 3)
    assert w.respond(s, Offer((0, 1, 2, 3), 3), comps) == (0, 1, 2, 3)
    assert w.last_flag == "fallback-phi0"


# -- Blue policies -----------------------------------------------------------


def test_general_opening_positions():
    pol = BlueCnkGeneral(F.cnk(8, 2), 3)
    assert pol.p == 4 and pol.opening == [0, 1, 4, 5]
    assert smallest_even_above(3) == 4 and smallest_even_above(4) == 6


@pytest.mark.parametrize("n", [8, 12, 16, 24])
@pytest.mark.parametrize("q", [2, 3, 4])
def test_general_option3_needs_few_runs(n, q):
    g = F.cnk(n, 2)
    blue = make_blue("cnk-general", g, q)
    res = simulate(g, q, blue, make_white("random", g, q, seed=n + q))
    assert res.final_blue == g.full
    p = smallest_even_above(q)
    for t in res.trace:
        if t.option == "option3":
            assert len(white_center_runs(GameState(g, t.before))) <= p // 2 - 1
    assert res.tokens <= zq_cnk_bounds(n, 2, q).upper


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_q2_end_phase_spends_2k_minus_2(n, k):
    g = F.cnk(n, k, counts=[k] * n)
    lay = g.layout
    for a, b in ((0, 1), (0, 2 % n)):
        blue = mask_of(lay.centers)
        for p in range(n):
            if p not in (a, b):
                blue |= mask_of(lay.pendants[p])
        assert certify_upper(g, 2, make_blue("cnk-q2", g, 2), initial_blue=blue) == 2 * k - 2


@pytest.mark.parametrize("sizes", [[5, 4, 3], [3, 3, 3, 3, 3], [6]])
@pytest.mark.parametrize("q", [0, 1, 2])
def test_star_policies_terminate_and_meet(sizes, q):
    g = F.star_forest(sizes)
    res = simulate(g, q, make_blue("star", g, q), make_white("star", g, q))
    assert res.final_blue == g.full
    want = zq(g, q)
    assert certify_upper(g, q, make_blue("star", g, q)) == want
    assert certify_lower(g, q, make_white("star", g, q)) == want


def test_star_policies_reject_other_graphs():
    with pytest.raises(ValueError):
        make_blue("star", F.cycle(5), 1)


@pytest.mark.parametrize("n,k", [(3, 2), (3, 3), (4, 2)])
def test_z1_corona_policies(n, k):
    g = F.corona(n, k)
    assert certify_upper(g, 1, make_blue("z1-corona", g, 1)) <= k + 1
    assert certify_lower(g, 1, make_white("z1-corona", g, 1)) >= k + 1


def test_tree_policy_examples():
    p = F.path(6)
    assert certify_upper(p, 1, make_blue("tree:root=0", p, 1), variant="star") == 1
    s = F.star(5)
    assert certify_upper(s, 1, make_blue("tree:root=0", s, 1), variant="star") <= 4
    with pytest.raises(ValueError):
        make_blue("tree", p, 1)


def test_adapted_policy_cycle_to_path():
    for n in range(3, 8):
        g = F.cycle(n)
        base = certify_upper(g, 1, make_blue("optimal", g, 1))
        h = g.delete_edge(0, n - 1)
        cost = certify_upper(h, 1, AdaptedBlue(make_blue("optimal", g, 1), g, (0, n - 1), 1))
        assert cost <= base + 1


class SpendAll(BluePolicy):
    """Colors the lowest white vertex every turn; never touches an edge."""

    def decide(self, state):
        return lowest_white(state.white)


def test_adapted_policy_is_free_when_edge_unused():
    g = F.cnk(3, 2)
    for e in g.edges:
        base = certify_upper(g, 2, SpendAll())
        h = g.delete_edge(*e)
        assert certify_upper(h, 2, AdaptedBlue(SpendAll(), g, e, 2)) == base == g.n
