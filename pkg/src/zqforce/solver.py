"""Memoized minimax values Z_q(G, B) and Z*_q(G, B).

The state of the game is the blue set alone, and every explored move grows
it, so the search space is a DAG over subsets of V(G).  Values are computed
with a cap: ``_value(blue, cap)`` is exact when below ``cap`` and otherwise
only certifies that the true value is at least ``cap``.  Both facts are
memoized, which gives best-so-far pruning without losing exactness.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from itertools import combinations

from .engine import EXHAUSTIVE, SINGLE
from .graph import GameState, Graph, bits, lowest
from .transcript import Step, force, format_transcript, rule3, spend

STANDARD = "standard"
STAR = "star"
INF = 1 << 30

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class BudgetExceeded(RuntimeError):
    """The search expanded more states than the configured budget."""


@dataclass(frozen=True)
class SolveConfig:
    q: int
    variant: str = STANDARD
    rule3: str = SINGLE
    minimal_offers_only: bool = True
    budget: int = 2_000_000
    # prune with blue-set monotonicity; results must not change when toggled
    assume_monotone: bool = False

    def __post_init__(self) -> None:
        if self.q < 0:
            raise ValueError("q must be non-negative")
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.variant not in (STANDARD, STAR):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.rule3 not in (SINGLE, EXHAUSTIVE):
            raise ValueError(f"unknown rule3 semantics {self.rule3!r}")


@dataclass
class SolveStats:
    expanded: int = 0
    memo_hits: int = 0
    seconds: float = 0.0


@dataclass(frozen=True)
class SolveResult:
    value: int
    principal_line: tuple[Step, ...]
    stats: SolveStats = field(compare=False)

    def transcript(self) -> str:
        return format_transcript(self.principal_line)


@dataclass
class _Info:
    white: int
    comps: list[int]
    forces: list[tuple[int, int]]
    # per component: (u, w) where w is u's only white neighbor inside it
    cand: list[list[tuple[int, int]]]
    touch: dict[int, int]
    usable: list[int]
    activity: int


class Solver:
    """Exact game values for one graph and configuration."""

    def __init__(self, graph: Graph, cfg: SolveConfig):
        self.g = graph
        self.cfg = cfg
        self.full = graph.full
        self.stats = SolveStats()
        self._exact: dict[int, int] = {}
        self._lower: dict[int, int] = {}
        self._dexact: dict[int, int] = {}
        self._dlower: dict[int, int] = {}
        self._infos: dict[int, _Info] = {}

    # -- structural data ---------------------------------------------------

    def info(self, blue: int) -> _Info:
        got = self._infos.get(blue)
        if got is not None:
            return got
        g = self.g
        white = self.full & ~blue
        comps = []
        comp_of = {}
        rest = white
        while rest:
            c = g.reach(lowest(rest), white)
            for v in bits(c):
                comp_of[v] = len(comps)
            comps.append(c)
            rest &= ~c
        forces = []
        cand: list[list[tuple[int, int]]] = [[] for _ in comps]
        touch = {}
        act = 0
        for u in bits(blue):
            wn = g.nbr[u] & white
            if not wn:
                continue
            if wn & (wn - 1) == 0:
                forces.append((u, lowest(wn)))
            else:
                act += 1
            t = 0
            for c_idx in {comp_of[w] for w in bits(wn)}:
                t |= 1 << c_idx
                inside = wn & comps[c_idx]
                if inside & (inside - 1) == 0:
                    cand[c_idx].append((u, lowest(inside)))
            touch[u] = t
        usable = [i for i, c in enumerate(cand) if c]
        got = _Info(white, comps, forces, cand, touch, usable, act)
        self._infos[blue] = got
        return got

    def _tick(self) -> None:
        self.stats.expanded += 1
        if self.stats.expanded > self.cfg.budget:
            raise BudgetExceeded(f"state budget {self.cfg.budget} exhausted")

    def _offers(self, inf: _Info):
        q = self.cfg.q
        # a component with no private force lets White concede nothing
        pool = inf.usable
        if len(pool) < q + 1:
            return
        top = q + 1 if self.cfg.minimal_offers_only else len(pool)
        for size in range(q + 1, top + 1):
            yield from combinations(pool, size)

    def response_forces(self, inf: _Info, resp: tuple[int, ...]) -> list[tuple[int, int]]:
        """Single forces conceded when White returns the components ``resp``."""
        smask = 0
        for c in resp:
            smask |= 1 << c
        out = []
        for c in resp:
            for u, w in inf.cand[c]:
                if inf.touch[u] & smask == 1 << c:
                    out.append((u, w))
        return sorted(out)

    def response_successors(self, blue: int, inf: _Info, resp: tuple[int, ...]) -> list[int]:
        """Blue sets reachable after White returns the components ``resp``."""
        if self.cfg.rule3 == EXHAUSTIVE:
            view = 0
            for c in resp:
                view |= inf.comps[c]
            after = _closure(self.g, blue, view)
            return [after] if after != blue else []
        return sorted({blue | 1 << w for _, w in self.response_forces(inf, resp)})

    # -- values ------------------------------------------------------------

    def value(self, blue: int = 0) -> int:
        return self._value(blue, INF)

    def _value(self, blue: int, cap: int) -> int:
        if blue == self.full:
            return 0
        hit = self._exact.get(blue)
        if hit is not None:
            self.stats.memo_hits += 1
            return hit
        lb = self._lower.get(blue, 0)
        if lb >= cap:
            self.stats.memo_hits += 1
            return lb
        self._tick()
        inf = self.info(blue)
        best = cap

        for _, w in inf.forces:
            v = self._value(blue | 1 << w, best)
            if v < best:
                best = v
            if best == 0 or self.cfg.assume_monotone:
                break

        if best > 0 and not (self.cfg.assume_monotone and inf.forces):
            if self.cfg.variant == STANDARD:
                for offer in self._offers(inf):
                    ov = self._offer_value(blue, inf, offer, best)
                    if ov < best:
                        best = ov
                        if best == 0:
                            break
            elif inf.activity >= self.cfg.q + 1:
                dv = self._dvalue(blue, best)
                if dv < best:
                    best = dv

        if best > 1 and not (self.cfg.assume_monotone and inf.forces):
            for v in bits(inf.white):
                c = self._value(blue | 1 << v, best - 1)
                if c + 1 < best:
                    best = c + 1
                    if best == 1:
                        break

        if best < cap:
            self._exact[blue] = best
            return best
        self._lower[blue] = max(lb, cap)
        return cap

    def _offer_value(self, blue: int, inf: _Info, offer: tuple[int, ...], cap: int) -> int:
        """max over responses of min over successors, or >= cap."""
        worst = -1
        for size in range(1, len(offer) + 1):
            for resp in combinations(offer, size):
                succ = self.response_successors(blue, inf, resp)
                if not succ:
                    return INF
                rv = cap
                for nb in succ:
                    c = self._value(nb, rv)
                    if c < rv:
                        rv = c
                    if rv <= worst:
                        break
                if rv >= cap:
                    return cap
                if rv > worst:
                    worst = rv
        return worst

    def _dvalue(self, blue: int, cap: int) -> int:
        """Value of invoking Rule 3* at ``blue`` (White maximizes), or >= cap."""
        hit = self._dexact.get(blue)
        if hit is not None:
            return hit
        lb = self._dlower.get(blue, 0)
        if lb >= cap:
            return lb
        self._tick()
        q = self.cfg.q
        inf = self.info(blue)
        touch = 0
        for u in bits(blue):
            touch |= self.g.nbr[u]
        worst = -1
        for w in bits(touch & inf.white):
            nb = blue | 1 << w
            if nb == self.full:
                c = 0
            elif self.info(nb).activity >= q + 1:
                c = self._dvalue(nb, cap)
            else:
                c = self._value(nb, cap)
            if c >= cap:
                self._dlower[blue] = max(lb, cap)
                return cap
            worst = max(worst, c)
        self._dexact[blue] = worst
        return worst

    # -- principal line ----------------------------------------------------

    def deactivation_line(self, blue: int) -> tuple[list[int], int]:
        """White's worst-case coloring sequence for Rule 3* and the end state."""
        q = self.cfg.q
        target = self._dvalue(blue, INF)
        seq = []
        while True:
            touch = 0
            for u in bits(blue):
                touch |= self.g.nbr[u]
            for w in bits(touch & self.full & ~blue):
                nb = blue | 1 << w
                deeper = nb != self.full and self.info(nb).activity >= q + 1
                c = self._dvalue(nb, INF) if deeper else self._value(nb, INF)
                if c == target:
                    seq.append(w)
                    blue = nb
                    break
            else:
                raise AssertionError("deactivation line lost its value")
            if not deeper:
                return seq, blue

    def best_step(self, blue: int) -> tuple[Step, int, int]:
        """An optimal move at ``blue``: (step, cost, successor blue set)."""
        target = self.value(blue)
        inf = self.info(blue)
        for u, w in inf.forces:
            if self.value(blue | 1 << w) == target:
                return force(u, w), 0, blue | 1 << w
        if self.cfg.variant == STANDARD:
            for offer in self._offers(inf):
                ov = self._offer_value(blue, inf, offer, INF)
                if ov != target:
                    continue
                worst_resp, worst_val = None, -1
                for size in range(1, len(offer) + 1):
                    for resp in combinations(offer, size):
                        rv = min(self.value(nb) for nb in self.response_successors(blue, inf, resp))
                        if rv > worst_val:
                            worst_resp, worst_val = resp, rv
                if self.cfg.rule3 == EXHAUSTIVE:
                    nb = self.response_successors(blue, inf, worst_resp)[0]
                    return rule3(offer, worst_resp, _closure_forces(self.g, blue, nb)), 0, nb
                u, w = min(self.response_forces(inf, worst_resp), key=lambda f: (self.value(blue | 1 << f[1]), f))
                return rule3(offer, worst_resp, [(u, w)]), 0, blue | 1 << w
        elif inf.activity >= self.cfg.q + 1 and self._dvalue(blue, INF) == target:
            seq, nb = self.deactivation_line(blue)
            return Step("DEACTIVATE", tuple(seq)), 0, nb
        for v in bits(inf.white):
            if 1 + self.value(blue | 1 << v) == target:
                return spend(v), 1, blue | 1 << v
        raise AssertionError("no move realizes the computed value")

    def principal_line(self, blue: int = 0) -> list[Step]:
        line = []
        while blue != self.full:
            step, _, blue = self.best_step(blue)
            line.append(step)
        return line


def _closure(g: Graph, blue: int, live: int) -> int:
    changed = True
    while changed:
        changed = False
        for u in bits(blue):
            wn = g.nbr[u] & live
            if wn and wn & (wn - 1) == 0:
                blue |= wn
                live &= ~wn
                changed = True
    return blue


def _closure_forces(g: Graph, blue: int, target: int) -> list[tuple[int, int]]:
    # recover an ordered force list that turns `blue` into `target` inside the view
    out = []
    live = target & ~blue
    changed = True
    while changed:
        changed = False
        for u in bits(blue):
            wn = g.nbr[u] & live
            if wn and wn & (wn - 1) == 0:
                out.append((u, lowest(wn)))
                blue |= wn
                live &= ~wn
                changed = True
    return out


def _solve(graph: Graph, cfg: SolveConfig, initial_blue: int) -> SolveResult:
    t0 = time.perf_counter()
    s = Solver(graph, cfg)
    GameState(graph, initial_blue)  # validates the blue set
    v = s.value(initial_blue)
    line = s.principal_line(initial_blue)
    s.stats.seconds = time.perf_counter() - t0
    return SolveResult(v, tuple(line), s.stats)


def zq_value(graph: Graph, cfg: SolveConfig | int, initial_blue: int = 0) -> SolveResult:
    """Z_q(G, B) under the standard rules."""
    if isinstance(cfg, int):
        cfg = SolveConfig(q=cfg)
    if cfg.variant != STANDARD:
        raise ValueError("zq_value needs variant='standard'; use zq_star_value")
    return _solve(graph, cfg, initial_blue)


def zq_star_value(graph: Graph, cfg: SolveConfig | int, initial_blue: int = 0) -> SolveResult:
    """Z*_q(G, B): Rule 3 replaced by the deactivation rule."""
    if isinstance(cfg, int):
        cfg = SolveConfig(q=cfg, variant=STAR)
    if cfg.variant != STAR:
        raise ValueError("zq_star_value needs variant='star'")
    return _solve(graph, cfg, initial_blue)


def zq(graph: Graph, q: int, **kw) -> int:
    """Shorthand for the integer Z_q(G)."""
    return Solver(graph, SolveConfig(q=q, **kw)).value(0)
