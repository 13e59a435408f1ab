"""General-purpose policies: solver-optimal, greedy, seeded random, and
the trivial White responses."""

from __future__ import annotations

import random

from ..engine import SINGLE, Deactivate, Force, Offer, Rule3, Spend, find_winning_offer, legal_forces, responses
from ..graph import GameState, Graph, bits, white_components
from ..solver import STANDARD, SolveConfig, Solver
from .base import BluePolicy, WhitePolicy


class OptimalBlue(BluePolicy):
    """Plays the solver's principal move from every state."""

    name = "optimal"

    def __init__(self, graph: Graph, q: int, variant: str = STANDARD, rule3: str = SINGLE):
        super().__init__()
        self.solver = Solver(graph, SolveConfig(q=q, variant=variant, rule3=rule3))

    def decide(self, state):
        step, _, _ = self.solver.best_step(state.blue)
        self.last_option = step.kind.lower()
        if step.kind == "SPEND":
            return Spend(step.vertices[0])
        if step.kind == "FORCE":
            return Force(*step.vertices)
        if step.kind == "DEACTIVATE":
            return Deactivate()
        return Rule3(Offer(step.offer, self.solver.cfg.q))

    def choose_force(self, state, offer, response, forces):
        if not forces:
            return None
        return min(forces, key=lambda f: (self.solver.value(state.blue | 1 << f[1]), f))


class GreedyBlue(BluePolicy):
    """Rule 2, then any winning offer, then a token on the lowest-degree
    white vertex.  On a path this is the one-endpoint strategy."""

    name = "greedy"

    def __init__(self, q: int):
        super().__init__()
        self.q = q

    def decide(self, state):
        f = legal_forces(state)
        if f:
            self.last_option = "rule2"
            return Force(*f[0])
        offer = find_winning_offer(state, self.q)
        if offer is not None:
            self.last_option = "rule3"
            return Rule3(offer)
        g = state.graph
        self.last_option = "spend"
        v = min(bits(state.white), key=lambda x: (g.degree(x), x))
        return Spend(v)


class RandomBlue(BluePolicy):
    """Seeded random legal play.  Offers are arbitrary q+1 components, so
    White may concede nothing; simulations record those as null steps."""

    name = "random"
    memoryless = False

    def __init__(self, q: int, seed: int = 0, p_offer: float = 0.4):
        super().__init__()
        self.q = q
        self.rng = random.Random(seed)
        self.p_offer = p_offer

    def decide(self, state):
        f = legal_forces(state)
        comps = white_components(state)
        r = self.rng.random()
        if f and r < 0.5:
            self.last_option = "rule2"
            return Force(*self.rng.choice(f))
        if len(comps) >= self.q + 1 and r < 0.5 + self.p_offer:
            self.last_option = "rule3"
            pick = sorted(self.rng.sample(range(len(comps)), self.q + 1))
            return Rule3(Offer(tuple(pick), self.q))
        self.last_option = "spend"
        return Spend(self.rng.choice(list(bits(state.white))))

    def choose_force(self, state, offer, response, forces):
        return self.rng.choice(list(forces)) if forces else None

    def get_memory(self):
        return self.rng.getstate()

    def set_memory(self, memory):
        self.rng.setstate(memory)


class FullWhite(WhitePolicy):
    """Always hands the whole offer back."""

    name = "full"

    def respond(self, state, offer, comps):
        self.last_flag = "full"
        return tuple(offer.components)


class RandomWhite(WhitePolicy):
    name = "random"
    memoryless = False

    def __init__(self, seed: int = 0):
        super().__init__()
        self.rng = random.Random(seed)

    def respond(self, state, offer, comps):
        cs = list(offer.components)
        size = self.rng.randint(1, len(cs))
        self.last_flag = "random"
        return tuple(sorted(self.rng.sample(cs, size)))

    def choose_vertex(self, state, candidates):
        return self.rng.choice(list(candidates))

    def get_memory(self):
        return self.rng.getstate()

    def set_memory(self, memory):
        self.rng.setstate(memory)


class OptimalWhite(WhitePolicy):
    """Answers with the response whose best conceded force is worst for Blue
    according to the exact solver; a non-conceding response wins outright."""

    name = "optimal"

    def __init__(self, graph: Graph, q: int, rule3: str = SINGLE):
        super().__init__()
        self.solver = Solver(graph, SolveConfig(q=q, rule3=rule3))

    def respond(self, state, offer, comps):
        s = self.solver
        inf = s.info(state.blue)
        best, best_val = None, -1
        for resp in responses(offer):
            succ = s.response_successors(state.blue, inf, resp)
            if not succ:
                self.last_flag = "deny"
                return resp
            v = min(s.value(b) for b in succ)
            if v > best_val:
                best, best_val = resp, v
        self.last_flag = "optimal"
        return best
