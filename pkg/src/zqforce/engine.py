"""Legal moves and transitions of the Z_q-forcing game.

Rule 1 (``Spend``) costs a token, Rule 2 (``Force``) is free, Rule 3 is an
offer of white components answered by White, and ``Deactivate`` is the
Rule 3* variant in which White colors blue-adjacent vertices until the
activity drops to at most ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence, Union

from .graph import GameState, active_vertices, activity, bits, lowest, white_components

SINGLE = "single"
EXHAUSTIVE = "exhaustive"


class IllegalMove(ValueError):
    pass


@dataclass(frozen=True)
class Spend:
    v: int


@dataclass(frozen=True)
class Force:
    u: int
    w: int


@dataclass(frozen=True)
class Offer:
    """Indices into the canonical white-component partition of a state."""

    components: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        if len(set(self.components)) != len(self.components):
            raise IllegalMove("offer repeats a component")
        if len(self.components) < self.q + 1:
            raise IllegalMove(f"offer needs at least q+1={self.q + 1} components")


@dataclass(frozen=True)
class Rule3:
    offer: Offer


@dataclass(frozen=True)
class Deactivate:
    pass


Move = Union[Spend, Force, Rule3, Deactivate]
Pair = tuple[int, int]


def legal_forces(state: GameState) -> list[Pair]:
    """All Rule 2 forces ``(u, w)``: ``u`` blue with ``w`` its only white neighbor."""
    g, white = state.graph, state.white
    out = []
    for u in bits(state.blue):
        wn = g.nbr[u] & white
        if wn and wn & (wn - 1) == 0:
            out.append((u, lowest(wn)))
    return out


def forces_in_view(state: GameState, view_white: int) -> list[Pair]:
    """Forces legal in ``G[B ∪ view_white]``; ``view_white`` must be white."""
    g = state.graph
    out = []
    for u in bits(state.blue):
        wn = g.nbr[u] & view_white
        if wn and wn & (wn - 1) == 0:
            out.append((u, lowest(wn)))
    return out


def apply_move(state: GameState, move: Move) -> tuple[GameState, int]:
    """Apply a Spend or Force; returns (new state, token cost)."""
    if isinstance(move, Spend):
        if not 0 <= move.v < state.graph.n:
            raise IllegalMove(f"SPEND {move.v}: vertex out of range")
        if state.is_blue(move.v):
            raise IllegalMove(f"SPEND {move.v}: vertex is already blue")
        return state.with_blue(1 << move.v), 1
    if isinstance(move, Force):
        u, w = move.u, move.w
        n = state.graph.n
        if not (0 <= u < n and 0 <= w < n):
            raise IllegalMove(f"FORCE {u} {w}: vertex out of range")
        if not state.is_blue(u):
            raise IllegalMove(f"FORCE {u} {w}: forcing vertex is white")
        if state.is_blue(w):
            raise IllegalMove(f"FORCE {u} {w}: target is already blue")
        wn = state.graph.nbr[u] & state.white
        if wn != 1 << w:
            raise IllegalMove(f"FORCE {u} {w}: target is not the unique white neighbor")
        return state.with_blue(1 << w), 0
    raise IllegalMove(f"apply_move does not handle {type(move).__name__}; use resolve_rule3/deactivate")


def rule2_closure(state: GameState) -> GameState:
    g = state.graph
    blue = state.blue
    changed = True
    while changed:
        changed = False
        white = g.full & ~blue
        for u in bits(blue):
            wn = g.nbr[u] & white
            if wn and wn & (wn - 1) == 0:
                blue |= wn
                white &= ~wn
                changed = True
    return GameState(g, blue)


def enumerate_offers(state: GameState, q: int, minimal_only: bool = True, components: Sequence[int] | None = None) -> list[Offer]:
    comps = white_components(state) if components is None else components
    k = len(comps)
    sizes = [q + 1] if minimal_only else range(q + 1, k + 1)
    out = []
    for size in sizes:
        if size > k:
            break
        out.extend(Offer(c, q) for c in combinations(range(k), size))
    return out


def _check_offer(offer: Offer, comps: Sequence[int]) -> None:
    for i in offer.components:
        if not 0 <= i < len(comps):
            raise IllegalMove(f"offer names component {i}, only {len(comps)} exist")


def _check_response(offer: Offer, response: Sequence[int]) -> None:
    if not response:
        raise IllegalMove("White must return a nonempty subset")
    if len(set(response)) != len(response):
        raise IllegalMove("response repeats a component")
    if not set(response) <= set(offer.components):
        raise IllegalMove("response contains a component that was not offered")


def responses(offer: Offer) -> list[tuple[int, ...]]:
    """Every nonempty subset of the offer, smallest first."""
    out = []
    for size in range(1, len(offer.components) + 1):
        out.extend(combinations(offer.components, size))
    return out


def resolve_rule3(state: GameState, offer: Offer, response: Sequence[int], components: Sequence[int] | None = None) -> list[Pair]:
    """Forces available in ``G[B ∪ union of returned components]``."""
    comps = white_components(state) if components is None else components
    _check_offer(offer, comps)
    _check_response(offer, response)
    view = 0
    for i in response:
        view |= comps[i]
    return forces_in_view(state, view)


def closure_in_view(state: GameState, view_white: int) -> GameState:
    """Exhaustive Rule 2 inside ``G[B ∪ view_white]``."""
    g = state.graph
    blue = state.blue
    live = view_white
    changed = True
    while changed:
        changed = False
        for u in bits(blue):
            wn = g.nbr[u] & live
            if wn and wn & (wn - 1) == 0:
                blue |= wn
                live &= ~wn
                changed = True
    return GameState(g, blue)


def rule3_outcomes(state: GameState, offer: Offer, response: Sequence[int], semantics: str = SINGLE,
                   components: Sequence[int] | None = None) -> list[int]:
    """Blue sets Blue may move to after White answers ``response``.

    Single-force semantics: one successor per conceded force.  Exhaustive:
    the unique closure inside the view (empty list if nothing changes).
    """
    comps = white_components(state) if components is None else components
    forces = resolve_rule3(state, offer, response, comps)
    if semantics == SINGLE:
        return sorted({state.blue | 1 << w for _, w in forces})
    view = 0
    for i in response:
        view |= comps[i]
    after = closure_in_view(state, view).blue
    return [after] if after != state.blue else []


def offer_is_winning(state: GameState, offer: Offer, q: int | None = None, components: Sequence[int] | None = None) -> bool:
    """True iff every nonempty response concedes at least one force."""
    comps = white_components(state) if components is None else components
    if q is not None and len(offer.components) < q + 1:
        return False
    return all(resolve_rule3(state, offer, r, comps) for r in responses(offer))


def _forest_parents(state: GameState, roots: Sequence[int]) -> dict[int, int]:
    g = state.graph
    parent = {}
    for r in roots:
        if r in parent:
            continue
        parent[r] = -1
        stack = [r]
        while stack:
            u = stack.pop()
            for w in bits(g.nbr[u]):
                if w not in parent:
                    parent[w] = u
                    stack.append(w)
    return parent


def guaranteed_offer_forest(state: GameState, q: int) -> Offer:
    """The guaranteed winning offer on a forest with at least q+1 active vertices.

    Each tree holding an active vertex is rooted at its lowest active vertex;
    every chosen active vertex is assigned the component of its lowest white
    child.  Distinctness of those components follows from acyclicity.
    """
    g = state.graph
    if not g.is_forest():
        raise ValueError("guaranteed_offer_forest needs a forest")
    act = list(bits(active_vertices(state)))
    if len(act) < q + 1:
        raise ValueError(f"need at least q+1={q + 1} active vertices, found {len(act)}")
    comps = white_components(state)
    comp_of = {}
    for i, c in enumerate(comps):
        for v in bits(c):
            comp_of[v] = i
    roots = []
    seen = 0
    for a in act:
        if not seen >> a & 1:
            roots.append(a)
            seen |= g.reach(a)
    parent = _forest_parents(state, roots)
    chosen = []
    for a in act[: q + 1]:
        kids = [w for w in bits(g.nbr[a] & state.white) if parent.get(w) == a]
        # an active vertex always has a white child: at most one white neighbor is its parent
        chosen.append(comp_of[kids[0]])
    if len(set(chosen)) != len(chosen):
        raise AssertionError("forest offer components collided; graph is not a forest?")
    return Offer(tuple(sorted(chosen)), q)


def _private_offer(state: GameState, q: int, comps: Sequence[int]) -> Offer | None:
    # Pick q+1 (active vertex, component) pairs where the component meets the
    # vertex in exactly one white neighbor and meets no other chosen vertex.
    # Any response then contains one such pair, whose vertex can force.
    g = state.graph
    act = list(bits(active_vertices(state)))
    cand = []
    for a in act:
        opts = [i for i, c in enumerate(comps) if (g.nbr[a] & c).bit_count() == 1]
        cand.append((a, opts))
    cand.sort(key=lambda t: (len(t[1]), t[0]))
    pick: list[tuple[int, int]] = []

    def ok(a: int, i: int) -> bool:
        for b, j in pick:
            if i == j or g.nbr[a] & comps[j] or g.nbr[b] & comps[i]:
                return False
        return True

    def search(idx: int) -> bool:
        if len(pick) == q + 1:
            return True
        if len(cand) - idx < q + 1 - len(pick):
            return False
        a, opts = cand[idx]
        for i in opts:
            if ok(a, i):
                pick.append((a, i))
                if search(idx + 1):
                    return True
                pick.pop()
        return search(idx + 1)

    if search(0):
        return Offer(tuple(sorted(i for _, i in pick)), q)
    return None


def usable_components(state: GameState, components: Sequence[int] | None = None) -> list[int]:
    """Indices of components in which some blue vertex has exactly one white
    neighbor.  White can answer any offer holding another component with
    that component alone and concede nothing."""
    comps = white_components(state) if components is None else components
    g = state.graph
    out = []
    for i, c in enumerate(comps):
        for u in bits(state.blue):
            inside = g.nbr[u] & c
            if inside and inside & (inside - 1) == 0:
                out.append(i)
                break
    return out


def find_winning_offer(state: GameState, q: int, components: Sequence[int] | None = None,
                       enumeration_cap: int | None = None) -> Offer | None:
    """A size-(q+1) winning offer, or None.

    Tries the private-neighbor construction, then the forest construction,
    then enumerates minimal offers over usable components in canonical order
    (all of them unless ``enumeration_cap`` is given).
    """
    comps = white_components(state) if components is None else components
    if len(comps) < q + 1:
        return None
    offer = _private_offer(state, q, comps)
    if offer is not None:
        return offer
    if activity(state) >= q + 1 and state.graph.is_forest():
        return guaranteed_offer_forest(state, q)
    for count, offer in enumerate(combinations(usable_components(state, comps), q + 1)):
        if enumeration_cap is not None and count >= enumeration_cap:
            break
        o = Offer(offer, q)
        if offer_is_winning(state, o, q, comps):
            return o
    return None


def deactivation_candidates(state: GameState) -> list[int]:
    """White vertices with a blue neighbor."""
    g = state.graph
    touch = 0
    for u in bits(state.blue):
        touch |= g.nbr[u]
    return list(bits(touch & state.white))


def deactivate(state: GameState, q: int, white_choice: Callable[[GameState, list[int]], int]) -> tuple[GameState, list[int]]:
    """Rule 3*: White colors blue-adjacent vertices until activity <= q."""
    if activity(state) < q + 1:
        raise IllegalMove(f"deactivation needs activity >= q+1={q + 1}")
    colored = []
    while activity(state) >= q + 1:
        cands = deactivation_candidates(state)
        v = white_choice(state, cands)
        if v not in cands:
            raise IllegalMove(f"White chose {v}, which is not a blue-adjacent white vertex")
        state = state.with_blue(1 << v)
        colored.append(v)
    return state, colored
