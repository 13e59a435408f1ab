"""Strategies pinning Z_1 of the cycle corona C_n ∘ kK_1 at k + 1."""

from __future__ import annotations

from ..engine import Force, Rule3, Spend, find_winning_offer, legal_forces
from ..graph import Graph, activity, bits
from .base import BluePolicy, WhitePolicy
from .caterpillar import layout_of


def _pendant_masks(g: Graph):
    lay = layout_of(g)
    return lay, [sum(1 << x for x in pend) for pend in lay.pendants]


class BlueZ1Corona(BluePolicy):
    """Rule 2; otherwise a winning offer; otherwise, with fewer than q+1
    active vertices, a token on a pendant whose center is white."""

    name = "z1-corona"

    def __init__(self, graph: Graph, q: int = 1):
        super().__init__()
        self.q = q
        self.lay, self.pmask = _pendant_masks(graph)

    def decide(self, state):
        f = legal_forces(state)
        if f:
            self.last_option = "option1"
            return Force(*f[0])
        offer = find_winning_offer(state, self.q)
        if offer is not None:
            self.last_option = "option2"
            return Rule3(offer)
        if activity(state) < self.q + 1:
            for c, pm in zip(self.lay.centers, self.pmask):
                if not state.is_blue(c) and pm & state.white:
                    self.last_option = "option3"
                    return Spend(next(bits(pm & state.white)))
        self.last_option = "finish"
        for pm in self.pmask:
            if pm & state.white:
                return Spend(next(bits(pm & state.white)))
        return Spend(next(bits(state.white)))


class WhiteZ1Corona(WhitePolicy):
    """Once Blue has spent two tokens, guard one white center with no blue
    pendant (the lowest such) and never let Blue reach its pendants for free.
    Memory is (tokens seen, capped at 2; guarded center position)."""

    name = "z1-corona"
    memoryless = False

    def __init__(self, graph: Graph):
        super().__init__()
        self.lay, self.pmask = _pendant_masks(graph)
        self.spent = 0
        self.c0 = None

    def get_memory(self):
        return (self.spent, self.c0)

    def set_memory(self, memory):
        self.spent, self.c0 = memory if memory is not None else (0, None)

    def observe_spend(self, state, v):
        if self.spent < 2:
            self.spent += 1
            if self.spent == 2:
                self.c0 = self._commit(state)

    def _commit(self, state):
        for i, (c, pm) in enumerate(zip(self.lay.centers, self.pmask)):
            if not state.is_blue(c) and not pm & state.blue:
                return i
        return None

    def respond(self, state, offer, comps):
        if self.c0 is None:
            self.last_flag = "uncommitted"
            return tuple(offer.components)
        c = self.lay.centers[self.c0]
        pm = self.pmask[self.c0]
        if not state.is_blue(c):
            for i in offer.components:
                if not comps[i] >> c & 1:
                    self.last_flag = "option1"
                    return (i,)
        if all(comps[i] & ~pm == 0 for i in offer.components):
            self.last_flag = "option2"
            return tuple(offer.components)
        for i in offer.components:
            if not comps[i] & pm:
                self.last_flag = "option3"
                return (i,)
        self.last_flag = "fallback"
        return tuple(offer.components)
