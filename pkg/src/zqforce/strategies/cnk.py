"""Strategies on caterpillar cycles C_{n,k}.

White guards a protected path: it keeps a committed path while that path is
still protected and still realizes the potential, otherwise it recommits to
a maximizer with the smallest start.  Blue has a q=2 strategy that halves
the unique protected path, and a general-q strategy that seeds p/2 pairs of
adjacent blue centers and then splits the white runs between them.
"""

from __future__ import annotations

from ..engine import Force, Offer, Rule3, Spend, find_winning_offer, legal_forces, resolve_rule3
from ..bounds import smallest_even_above
from ..graph import GameState, Graph, activity, active_vertices, bits
from .base import BluePolicy, ClaimViolation, WhitePolicy
from .caterpillar import (
    Q2,
    Q3,
    ProtectedPath,
    best_path,
    classify_centers,
    layout_of,
    path_is_protected,
    phi,
    white_center_runs,
    zone,
)


def _lowest_white_pendant(state: GameState, pos: int):
    lay = layout_of(state.graph)
    for x in lay.pendants[pos]:
        if not state.is_blue(x):
            return x
    return None


class WhiteProtected(WhitePolicy):
    """Protected-path White for q=2 (``variant='q2'``) or q=3 (``'q3'``)."""

    memoryless = False

    def __init__(self, graph: Graph, variant: str):
        super().__init__()
        layout_of(graph)
        self.variant = variant
        self.name = f"protected-{variant}"
        self.path: ProtectedPath | None = None
        self.method = ""

    def get_memory(self):
        return self.path

    def set_memory(self, memory):
        self.path = memory

    def commitment(self, state: GameState) -> ProtectedPath | None:
        """Refresh the committed path for ``state`` and return it."""
        target = phi(state, self.variant)
        p = self.path
        if p is not None and path_is_protected(state, p):
            if p.phi(classify_centers(state)) == target:
                return p
        self.path = best_path(state, self.variant)
        return self.path

    def respond(self, state, offer, comps):
        path = self.commitment(state)
        labels = classify_centers(state)
        if path is None or path.phi(labels) <= 0:
            self.last_flag = "fallback-phi0"
            return tuple(offer.components)
        g = state.graph
        z = zone(g, path)
        for i in offer.components:
            if not comps[i] & z:
                self.last_flag = "option1"
                return (i,)
        self.last_flag = "option2"
        for cand, how in self._claim_candidates(state, path, labels, offer, comps):
            if self._safe(state, path, labels, offer, cand, comps):
                self.method = how
                return cand
        raise ClaimViolation(f"no safe response to offer {offer.components} on path {path.positions}")

    # -- safe responses: concede nothing inside the zone --------

    def _claim_candidates(self, state, path, labels, offer, comps):
        lay = layout_of(state.graph)
        offered = list(offer.components)
        single = {}
        for i in offered:
            c = comps[i]
            if c & (c - 1) == 0:
                single[i] = c.bit_length() - 1
        # two isolated pendants of one blue center of the path
        for p in dict.fromkeys(path.positions):
            if not state.is_blue(lay.centers[p]):
                continue
            pend = set(lay.pendants[p])
            mine = [i for i in offered if i in single and single[i] in pend]
            if len(mine) >= 2:
                yield tuple(sorted(mine[:2])), "pair"
        if self.variant == Q2:
            yield tuple(offered), "whole"
            return
        # q=3 zones: blue bad centers b_0 < b_1 < ... cut the path into
        # pendant zones (at each b_j) and gap zones (between b_j, b_{j+1})
        pos = list(path.positions)
        blue_at = [j for j, p in enumerate(pos) if state.is_blue(lay.centers[p])]

        def pendant_zone(j):
            pend = set(lay.pendants[pos[j]])
            return [i for i in offered if i in single and single[i] in pend]

        def gap_zone(a, b):
            inner = 0
            for j in range(a + 1, b):
                inner |= 1 << lay.centers[pos[j]]
                for x in lay.pendants[pos[j]]:
                    inner |= 1 << x
            return [i for i in offered if comps[i] & inner]

        for a, b in zip(blue_at, blue_at[1:]):
            pick = pendant_zone(a) + gap_zone(a, b) + pendant_zone(b)
            yield tuple(sorted(set(pick))), f"zones{a}-{b}"
        if len(blue_at) >= 3:
            skip = set()
            for j in blue_at[1:-1]:
                skip.update(pendant_zone(j))
            yield tuple(i for i in offered if i not in skip), "zones-outer"
        yield tuple(offered), "whole"

    def _safe(self, state, path, labels, offer, cand, comps) -> bool:
        if not cand:
            return False
        lay = layout_of(state.graph)
        harmless = {lay.centers[p] for p in path.positions if labels.bad[p]}
        z = zone(state.graph, path)
        for _, w in resolve_rule3(state, offer, cand, comps):
            if z >> w & 1 and w not in harmless:
                return False
        return True


class BlueCnkQ2(BluePolicy):
    """Two opening tokens on pendants of centers 0 and 1, then: Rule 2; a
    winning offer; with fewer than 3 active vertices a token splitting the
    best protected path in the middle; otherwise any white pendant."""

    name = "cnk-q2"

    def __init__(self, graph: Graph, q: int = 2):
        super().__init__()
        self.lay = layout_of(graph)
        self.q = q

    def _untouched(self, state, pos):
        c = self.lay.centers[pos]
        return not state.is_blue(c) and not any(state.is_blue(x) for x in self.lay.pendants[pos])

    def decide(self, state):
        for pos in (0, 1):
            if self._untouched(state, pos) and not (state.blue & ~self._opening_mask(pos)):
                self.last_option = "opening"
                return Spend(_lowest_white_pendant(state, pos))
        f = legal_forces(state)
        if f:
            self.last_option = "option1"
            return Force(*f[0])
        offer = find_winning_offer(state, self.q)
        if offer is not None:
            self.last_option = "option2"
            return Rule3(offer)
        if activity(state) < self.q + 1:
            path = best_path(state, Q2)
            if path is not None and path.length >= 3:
                ell = path.length
                x = -(-ell // 2)  # 1-based middle
                pos = path.positions[x - 1]
                self.last_option = "option3"
                return Spend(_lowest_white_pendant(state, pos))
        self.last_option = "option4"
        for pend in self.lay.pendants:
            for x in pend:
                if not state.is_blue(x):
                    return Spend(x)
        return Spend(next(bits(state.white)))

    def _opening_mask(self, pos):
        # the opening only fires while earlier opening tokens are all that is blue
        m = 0
        for p in range(pos):
            m |= 1 << self.lay.centers[p]
            for x in self.lay.pendants[p]:
                m |= 1 << x
        return m


class BlueCnkGeneral(BluePolicy):
    """General-q strategy.  Memory: (queued center tokens, Option 3 count,
    fallback count)."""

    name = "cnk-general"
    memoryless = False

    def __init__(self, graph: Graph, q: int):
        super().__init__()
        if q < 2:
            raise ValueError("general strategy needs q >= 2")
        self.lay = layout_of(graph)
        self.q = q
        self.p = smallest_even_above(q)
        n = self.lay.size
        seeds = []
        for i in range(self.p // 2):
            a = (2 * n * i) // self.p
            for pos in (a % n, (a + 1) % n):
                if pos not in seeds:
                    seeds.append(pos)
        self.opening = seeds
        self.pending: tuple[int, ...] = ()
        self.option3 = 0
        self.fallbacks = 0

    def get_memory(self):
        return (self.pending, self.option3, self.fallbacks)

    def set_memory(self, memory):
        self.pending, self.option3, self.fallbacks = memory

    def decide(self, state):
        cen = self.lay.centers
        for pos in self.opening:
            if not state.is_blue(cen[pos]):
                self.last_option = "opening"
                return Spend(cen[pos])
        while self.pending and state.is_blue(cen[self.pending[0]]):
            self.pending = self.pending[1:]
        if self.pending:
            pos, self.pending = self.pending[0], self.pending[1:]
            self.last_option = "option3-token"
            return Spend(cen[pos])
        offer = find_winning_offer(state, self.q)
        if offer is not None:
            self.last_option = "option1"
            return Rule3(offer)
        f = legal_forces(state)
        if f:
            self.last_option = "option2"
            return Force(*f[0])
        runs = white_center_runs(state)
        if runs:
            if len(runs) <= self.p // 2 - 1:
                queue = []
                for run in runs:
                    if len(run) <= 2:
                        queue.extend(run)
                    else:
                        mid = (len(run) - 1) // 2
                        queue.extend(run[mid: mid + 2])
                self.option3 += 1
                self.pending = tuple(queue[1:])
                self.last_option = "option3"
                return Spend(cen[queue[0]])
            self.fallbacks += 1
            self.last_option = "fallback"
            return Spend(cen[runs[0][0]])
        # every center is blue: finish on pendants of active centers
        act = active_vertices(state)
        for pos, pend in enumerate(self.lay.pendants):
            if act >> cen[pos] & 1:
                for x in pend:
                    if not state.is_blue(x):
                        self.last_option = "end"
                        return Spend(x)
        self.fallbacks += 1
        self.last_option = "fallback"
        return Spend(next(bits(state.white)))
