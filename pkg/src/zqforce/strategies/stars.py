"""Blue and White strategies that settle Z_q on forests of stars."""

from __future__ import annotations

from dataclasses import dataclass

from ..engine import Force, Rule3, Spend, guaranteed_offer_forest, legal_forces
from ..graph import GameState, Graph, activity, bits, lowest
from .base import BluePolicy, WhitePolicy


@dataclass(frozen=True)
class StarPiece:
    center: int
    mask: int

    @property
    def size(self) -> int:
        return self.mask.bit_count()


def star_pieces(g: Graph) -> list[StarPiece]:
    """The stars of a star forest, largest first (ties by center index)."""
    pieces = []
    rest = g.full
    while rest:
        comp = g.reach(lowest(rest))
        rest &= ~comp
        vs = list(bits(comp))
        center = max(vs, key=lambda v: (g.degree(v), -v))
        if len(vs) < 2 or any(g.degree(v) != 1 for v in vs if v != center) or g.degree(center) != len(vs) - 1:
            raise ValueError("graph is not a forest of stars with at least 2 vertices each")
        pieces.append(StarPiece(center, comp))
    pieces.sort(key=lambda p: (-p.size, p.center))
    return pieces


class BlueStar(BluePolicy):
    """Leaf token on every star, free forces, Rule 3 while more than q
    vertices are active, then tokens on the leftover stars."""

    name = "star"

    def __init__(self, graph: Graph, q: int):
        super().__init__()
        self.q = q
        self.pieces = star_pieces(graph)

    def decide(self, state):
        f = legal_forces(state)
        if f:
            self.last_option = "rule2"
            return Force(*f[0])
        for p in sorted(self.pieces, key=lambda p: p.center):
            if not p.mask & state.blue:
                leaves = p.mask & ~(1 << p.center)
                self.last_option = "phase1"
                return Spend(lowest(leaves))
        if activity(state) >= self.q + 1:
            self.last_option = "rule3"
            return Rule3(guaranteed_offer_forest(state, self.q))
        self.last_option = "phase3"
        return Spend(lowest(state.white))


class WhiteStar(WhitePolicy):
    """Guards the m = min(k, q) largest stars: two components from one
    guarded star when every offered component lies in guarded stars,
    otherwise a component outside them."""

    name = "star"

    def __init__(self, graph: Graph, q: int):
        super().__init__()
        pieces = star_pieces(graph)
        m = min(len(pieces), q)
        self.guarded = pieces[:m]
        self.guard_mask = 0
        for p in self.guarded:
            self.guard_mask |= p.mask

    def respond(self, state, offer, comps):
        outside = [i for i in offer.components if comps[i] & ~self.guard_mask]
        if outside:
            self.last_flag = "option2"
            return (outside[0],)
        for p in self.guarded:
            inside = [i for i in offer.components if comps[i] & p.mask]
            if len(inside) >= 2:
                self.last_flag = "option1"
                return tuple(inside[:2])
        raise AssertionError("pigeonhole failed: offer larger than guarded stars allow")
