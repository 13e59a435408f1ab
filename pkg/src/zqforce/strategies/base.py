"""Policy interfaces shared by every Blue and White strategy.

Policies may carry hidden state.  Whatever they remember must be exposed
through ``get_memory``/``set_memory`` as a hashable value so that the
policy-fixed searches can branch on White (or Blue) choices and rewind.
"""

from __future__ import annotations

from typing import Sequence

from ..engine import Force, Offer, Rule3, Spend, legal_forces
from ..graph import GameState, bits


class PolicyError(RuntimeError):
    """A policy proposed an illegal or non-progressing action."""


class ClaimViolation(PolicyError):
    """White's protected-path strategy could not find a safe response."""


class BluePolicy:
    name = "blue"
    memoryless = True

    def __init__(self) -> None:
        self.last_option = ""

    def decide(self, state: GameState):
        raise NotImplementedError

    def choose_force(self, state: GameState, offer: Offer, response: Sequence[int], forces: Sequence[tuple[int, int]]):
        """Pick one conceded force; ``None`` declines (memory must change)."""
        return forces[0] if forces else None

    def get_memory(self):
        return None

    def set_memory(self, memory) -> None:
        pass


class WhitePolicy:
    name = "white"
    memoryless = True

    def __init__(self) -> None:
        self.last_flag = ""

    def respond(self, state: GameState, offer: Offer, comps: Sequence[int]) -> tuple[int, ...]:
        raise NotImplementedError

    def choose_vertex(self, state: GameState, candidates: Sequence[int]) -> int:
        return candidates[0]

    def observe_spend(self, state: GameState, v: int) -> None:
        """Called after Blue spends a token on ``v``; ``state`` already has it blue."""

    def get_memory(self):
        return None

    def set_memory(self, memory) -> None:
        pass


def lowest_force(state: GameState):
    f = legal_forces(state)
    return Force(*f[0]) if f else None


def rule3(offer: Offer) -> Rule3:
    return Rule3(offer)


def lowest_white(mask: int) -> Spend | None:
    for v in bits(mask):
        return Spend(v)
    return None
