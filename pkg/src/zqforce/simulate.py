"""Play one Blue policy against one White policy and record everything."""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import (
    EXHAUSTIVE,
    SINGLE,
    Deactivate,
    Force,
    Rule3,
    Spend,
    apply_move,
    closure_in_view,
    deactivate,
    resolve_rule3,
)
from .graph import GameState, Graph, white_components
from .solver import _closure_forces
from .strategies.base import BluePolicy, PolicyError, WhitePolicy
from .transcript import Step, force, rule3, spend


@dataclass(frozen=True)
class Transition:
    before: int
    after: int
    cost: int
    kind: str
    option: str = ""
    white_flag: str = ""

    @property
    def null(self) -> bool:
        return self.before == self.after


@dataclass
class SimResult:
    tokens: int
    final_blue: int
    steps: list[Step] = field(default_factory=list)
    trace: list[Transition] = field(default_factory=list)
    blue_memory: object = None


def simulate(g: Graph, q: int, blue: BluePolicy, white: WhitePolicy, initial_blue: int = 0,
             semantics: str = SINGLE, max_steps: int | None = None) -> SimResult:
    state = GameState(g, initial_blue)
    limit = max_steps if max_steps is not None else 20 * g.n + 50
    res = SimResult(0, initial_blue)
    # a memoryless Blue repeating a null step is stuck; a stateful one (seeded
    # random play) may just be unlucky, so it gets a much longer leash
    null_cap = 4 * g.n + 10 if getattr(blue, "memoryless", True) else 10_000
    nulls = steps = 0
    while True:
        if state.done():
            break
        if steps >= limit:
            raise PolicyError(f"game did not finish within {limit} steps")
        move = blue.decide(state)
        opt = blue.last_option
        before = state.blue
        flag = ""
        if isinstance(move, (Spend, Force)):
            state, cost = apply_move(state, move)
            if cost:
                white.observe_spend(state, move.v)
            res.tokens += cost
            res.steps.append(spend(move.v) if isinstance(move, Spend) else force(move.u, move.w))
            res.trace.append(Transition(before, state.blue, cost, res.steps[-1].kind, opt))
            nulls = 0
            steps += 1
            continue
        if isinstance(move, Deactivate):
            state, colored = deactivate(state, q, white.choose_vertex)
            res.steps.append(Step("DEACTIVATE", tuple(colored)))
            res.trace.append(Transition(before, state.blue, 0, "DEACTIVATE", opt))
            steps += 1
            continue
        if not isinstance(move, Rule3):
            raise PolicyError(f"{blue.name} returned {move!r}")
        comps = white_components(state)
        resp = tuple(white.respond(state, move.offer, comps))
        flag = white.last_flag
        forces = resolve_rule3(state, move.offer, resp, comps)
        if semantics == EXHAUSTIVE:
            view = 0
            for i in resp:
                view |= comps[i]
            nxt = closure_in_view(state, view)
            done = _closure_forces(g, state.blue, nxt.blue)
            state = nxt
        else:
            mem = blue.get_memory()
            f = blue.choose_force(state, move.offer, resp, forces) if forces else None
            if f is None and forces and blue.get_memory() == mem:
                raise PolicyError(f"{blue.name} declined every conceded force")
            done = [tuple(f)] if f is not None else []
            if f is not None:
                if tuple(f) not in {tuple(x) for x in forces}:
                    raise PolicyError(f"{blue.name} chose unconceded force {f}")
                state = state.with_blue(1 << f[1])
        res.steps.append(rule3(move.offer.components, resp, done))
        res.trace.append(Transition(before, state.blue, 0, "RULE3", opt, flag))
        nulls = nulls + 1 if state.blue == before else 0
        if nulls > null_cap:
            raise PolicyError("too many Rule 3 invocations without progress")
        if not nulls:
            steps += 1
    res.final_blue = state.blue
    res.blue_memory = blue.get_memory()
    return res
