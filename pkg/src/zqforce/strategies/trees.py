"""Blue's rooted level-by-level strategy for trees under the deactivation
rule.  Its worst-case spend for root v is at most
deg(v) + sum over heights of the q largest max(0, deg - 2) values."""

from __future__ import annotations

from ..engine import Deactivate, Force, Spend, legal_forces
from ..graph import Graph, activity, active_vertices, bits, lowest, rooted_heights
from .base import BluePolicy


class BlueTree(BluePolicy):
    name = "tree"

    def __init__(self, graph: Graph, q: int, root: int):
        super().__init__()
        if not graph.is_tree():
            raise ValueError("tree policy needs a tree")
        self.q = q
        self.root = root
        self.height, _ = rooted_heights(graph, root)

    def decide(self, state):
        g = state.graph
        if not state.is_blue(self.root):
            self.last_option = "root"
            return Spend(self.root)
        if activity(state) >= self.q + 1:
            self.last_option = "deactivate"
            return Deactivate()
        f = legal_forces(state)
        if f:
            self.last_option = "rule2"
            return Force(*f[0])
        act = list(bits(active_vertices(state)))
        if act:
            a = min(act, key=lambda v: (self.height[v], v))
            kids = [w for w in bits(g.nbr[a] & state.white) if self.height[w] > self.height[a]]
            self.last_option = "level"
            return Spend(kids[0] if kids else lowest(g.nbr[a] & state.white))
        # activity 0 with nothing to force only happens once all is blue
        self.last_option = "fallback"
        return Spend(lowest(state.white))
