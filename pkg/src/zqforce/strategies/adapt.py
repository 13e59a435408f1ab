"""Turn a Blue policy for G into one for G - e, paying at most one extra
token.

Every move of the base policy is translated: tokens stay tokens, forces
not along e stay forces, a force along e becomes a token on its target,
and an offer whose component was split by deleting e is replaced by
whichever of the two split offers is winning.
"""

from __future__ import annotations

from ..engine import Force, Offer, Rule3, Spend, offer_is_winning, resolve_rule3
from ..graph import GameState, Graph, white_components
from .base import BluePolicy, PolicyError


class AdaptationFailure(PolicyError):
    """Neither split offer wins: the translation argument broke down."""


class AdaptedBlue(BluePolicy):
    name = "adapted"
    memoryless = False

    def __init__(self, base: BluePolicy, graph: Graph, edge: tuple[int, int], q: int):
        super().__init__()
        v, w = edge
        if not graph.has_edge(v, w):
            raise ValueError(f"edge {edge} not in base graph")
        self.base = base
        self.g = graph
        self.h = graph.delete_edge(v, w)
        self.e = (min(v, w), max(v, w))
        self.q = q
        self.pending = None  # a token owed after declining an e-force
        self.adapt3 = 0
        self.last_adaptation = 0
        self._split = None  # (offer in G, components in G) behind the current Rule 3

    def get_memory(self):
        return (self.base.get_memory(), self.pending, self.adapt3, self._split)

    def set_memory(self, memory):
        base_mem, self.pending, self.adapt3, self._split = memory
        self.base.set_memory(base_mem)

    def _in_g(self, state: GameState) -> GameState:
        return GameState(self.g, state.blue)

    def decide(self, state):
        self._split = None
        if self.pending is not None and not state.is_blue(self.pending):
            y, self.pending = self.pending, None
            self.adapt3 += 1
            self.last_adaptation = 3
            self.last_option = "adaptation3"
            return Spend(y)
        self.pending = None
        move = self.base.decide(self._in_g(state))
        if isinstance(move, Spend):
            self.last_adaptation = 1
            self.last_option = "adaptation1"
            return move
        if isinstance(move, Force):
            if (min(move.u, move.w), max(move.u, move.w)) == self.e:
                self.adapt3 += 1
                self.last_adaptation = 3
                self.last_option = "adaptation3"
                return Spend(move.w)
            self.last_adaptation = 2
            self.last_option = "adaptation2"
            return move
        if isinstance(move, Rule3):
            return Rule3(self._translate_offer(state, move.offer))
        self.last_option = "passthrough"
        return move

    def _translate_offer(self, state, offer_g: Offer) -> Offer:
        comps_g = white_components(self._in_g(state))
        comps_h = white_components(state)
        index_h = {c: i for i, c in enumerate(comps_h)}
        mapped, split = [], None
        for i in offer_g.components:
            c = comps_g[i]
            if c in index_h:
                mapped.append(index_h[c])
            else:
                split = c
        if split is None:
            self.last_adaptation = 4
            self.last_option = "adaptation4"
            self._split = (offer_g, tuple(comps_g))
            return Offer(tuple(sorted(mapped)), offer_g.q)
        parts = [i for i, c in enumerate(comps_h) if c & split]
        for j in parts:
            cand = Offer(tuple(sorted(mapped + [j])), offer_g.q)
            if offer_is_winning(state, cand, self.q, comps_h):
                self.last_adaptation = 5
                self.last_option = "adaptation5"
                self._split = (offer_g, tuple(comps_g))
                return cand
        raise AdaptationFailure(f"neither split offer wins at blue={state.blue:#x}")

    def choose_force(self, state, offer, response, forces):
        offer_g, comps_g = self._split
        comps_h = white_components(state)
        resp_mask = 0
        for i in response:
            resp_mask |= comps_h[i]
        resp_g = tuple(i for i in offer_g.components if comps_g[i] & resp_mask)
        gstate = self._in_g(state)
        forces_g = resolve_rule3(gstate, offer_g, resp_g, comps_g)
        pick = self.base.choose_force(gstate, offer_g, resp_g, forces_g) if forces_g else None
        if pick is not None and (min(pick), max(pick)) == self.e:
            # declined: pay for the target with a token next turn
            self.pending = pick[1]
            return None
        if pick is not None and tuple(pick) in {tuple(f) for f in forces}:
            return tuple(pick)
        return forces[0] if forces else None
