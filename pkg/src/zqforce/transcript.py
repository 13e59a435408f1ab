"""Game transcripts: one move per line.

    SPEND v
    FORCE u w
    RULE3 offer=<ids> response=<ids> force=u,w|none
    DEACTIVATE v1 v2 ...

Component ids refer to the canonical white-component partition of the state
in which the RULE3 line is played.  Under exhaustive Rule 3 semantics the
force field lists every force of the closure, separated by ``;``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import (
    EXHAUSTIVE,
    SINGLE,
    Force,
    IllegalMove,
    Offer,
    Spend,
    apply_move,
    closure_in_view,
    deactivation_candidates,
    resolve_rule3,
)
from .graph import GameState, Graph, activity, white_components


@dataclass(frozen=True)
class Step:
    kind: str
    vertices: tuple[int, ...] = ()
    offer: tuple[int, ...] = ()
    response: tuple[int, ...] = ()
    forces: tuple[tuple[int, int], ...] = ()

    def cost(self) -> int:
        return 1 if self.kind == "SPEND" else 0

    def format(self) -> str:
        if self.kind == "SPEND":
            return f"SPEND {self.vertices[0]}"
        if self.kind == "FORCE":
            return f"FORCE {self.vertices[0]} {self.vertices[1]}"
        if self.kind == "DEACTIVATE":
            return "DEACTIVATE " + " ".join(map(str, self.vertices))
        forces = ";".join(f"{u},{w}" for u, w in self.forces) or "none"
        return (
            f"RULE3 offer={','.join(map(str, self.offer))} "
            f"response={','.join(map(str, self.response))} force={forces}"
        )


def spend(v: int) -> Step:
    return Step("SPEND", (v,))


def force(u: int, w: int) -> Step:
    return Step("FORCE", (u, w))


def rule3(offer, response, forces) -> Step:
    return Step("RULE3", offer=tuple(offer), response=tuple(response), forces=tuple(forces))


def format_transcript(steps) -> str:
    return "".join(s.format() + "\n" for s in steps)


def _ids(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t)


def parse_transcript(text: str) -> list[Step]:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, *rest = line.split()
        try:
            if head == "SPEND" and len(rest) == 1:
                steps.append(spend(int(rest[0])))
            elif head == "FORCE" and len(rest) == 2:
                steps.append(force(int(rest[0]), int(rest[1])))
            elif head == "DEACTIVATE":
                steps.append(Step("DEACTIVATE", tuple(int(t) for t in rest)))
            elif head == "RULE3" and len(rest) == 3:
                fields = dict(part.split("=", 1) for part in rest)
                ftxt = fields["force"]
                forces = () if ftxt == "none" else tuple(
                    tuple(int(x) for x in pair.split(",")) for pair in ftxt.split(";")
                )
                steps.append(rule3(_ids(fields["offer"]), _ids(fields["response"]), forces))
            else:
                raise ValueError
        except (ValueError, KeyError):
            raise ValueError(f"transcript line {lineno}: cannot parse {line!r}") from None
    return steps


def replay(graph: Graph, steps, q: int, initial_blue: int = 0, semantics: str = SINGLE) -> tuple[GameState, int]:
    """Re-run a transcript, checking legality; returns (final state, tokens)."""
    state = GameState(graph, initial_blue)
    tokens = 0
    for i, step in enumerate(steps):
        try:
            if step.kind == "SPEND":
                state, c = apply_move(state, Spend(step.vertices[0]))
                tokens += c
            elif step.kind == "FORCE":
                state, _ = apply_move(state, Force(*step.vertices))
            elif step.kind == "DEACTIVATE":
                if activity(state) < q + 1:
                    raise IllegalMove("deactivation with activity <= q")
                for v in step.vertices:
                    if v not in deactivation_candidates(state):
                        raise IllegalMove(f"deactivation colored {v}, not blue-adjacent")
                    state = state.with_blue(1 << v)
                if activity(state) > q:
                    raise IllegalMove("deactivation stopped early")
            else:
                comps = white_components(state)
                offer = Offer(step.offer, q)
                conceded = resolve_rule3(state, offer, step.response, comps)
                if semantics == EXHAUSTIVE:
                    view = 0
                    for j in step.response:
                        view |= comps[j]
                    state = closure_in_view(state, view)
                else:
                    for f in step.forces:
                        if tuple(f) not in conceded:
                            raise IllegalMove(f"force {f} not conceded by the response")
                        state = state.with_blue(1 << f[1])
        except IllegalMove as exc:
            raise IllegalMove(f"step {i} ({step.format()}): {exc}") from None
    return state, tokens
