"""Policy registry.  Names accept ``key=value`` options after a colon, e.g.
``tree:root=3``, ``random:seed=5``, ``protected-q2``."""

from __future__ import annotations

from ..engine import SINGLE
from ..graph import Graph
from .adapt import AdaptationFailure, AdaptedBlue
from .base import BluePolicy, ClaimViolation, PolicyError, WhitePolicy
from .cnk import BlueCnkGeneral, BlueCnkQ2, WhiteProtected
from .corona import BlueZ1Corona, WhiteZ1Corona
from .simple import FullWhite, GreedyBlue, OptimalBlue, OptimalWhite, RandomBlue, RandomWhite
from .stars import BlueStar, WhiteStar
from .trees import BlueTree

BLUE_NAMES = ("optimal", "greedy", "random", "star", "tree", "z1-corona", "cnk-q2", "cnk-general")
WHITE_NAMES = ("full", "random", "optimal", "star", "z1-corona", "protected-q2", "protected-q3")


def _split(name: str) -> tuple[str, dict[str, str]]:
    head, _, rest = name.partition(":")
    opts = {}
    for part in filter(None, rest.split(",")):
        if "=" not in part:
            raise ValueError(f"policy option {part!r} needs key=value")
        k, v = part.split("=", 1)
        opts[k] = v
    return head, opts


def make_blue(name: str, graph: Graph, q: int, seed: int = 0, variant: str = "standard",
              rule3: str = SINGLE) -> BluePolicy:
    head, opts = _split(name)
    if head == "optimal":
        return OptimalBlue(graph, q, variant=variant, rule3=rule3)
    if head == "greedy":
        return GreedyBlue(q)
    if head == "random":
        return RandomBlue(q, seed=int(opts.get("seed", seed)))
    if head == "star":
        return BlueStar(graph, q)
    if head == "tree":
        if "root" not in opts:
            raise ValueError("tree policy needs root=<vertex>")
        return BlueTree(graph, q, int(opts["root"]))
    if head == "z1-corona":
        return BlueZ1Corona(graph, q)
    if head == "cnk-q2":
        return BlueCnkQ2(graph, q)
    if head == "cnk-general":
        return BlueCnkGeneral(graph, q)
    raise ValueError(f"unknown Blue policy {name!r}; choose from {', '.join(BLUE_NAMES)}")


def make_white(name: str, graph: Graph, q: int, seed: int = 0, rule3: str = SINGLE) -> WhitePolicy:
    head, opts = _split(name)
    if head == "full":
        return FullWhite()
    if head == "random":
        return RandomWhite(seed=int(opts.get("seed", seed)))
    if head == "optimal":
        return OptimalWhite(graph, q, rule3=rule3)
    if head == "star":
        return WhiteStar(graph, q)
    if head == "z1-corona":
        return WhiteZ1Corona(graph)
    if head == "protected-q2":
        return WhiteProtected(graph, "q2")
    if head == "protected-q3":
        return WhiteProtected(graph, "q3")
    raise ValueError(f"unknown White policy {name!r}; choose from {', '.join(WHITE_NAMES)}")


__all__ = [
    "AdaptationFailure", "AdaptedBlue", "BluePolicy", "ClaimViolation", "PolicyError", "WhitePolicy",
    "BlueCnkGeneral", "BlueCnkQ2", "WhiteProtected", "BlueZ1Corona", "WhiteZ1Corona", "FullWhite",
    "GreedyBlue", "OptimalBlue", "OptimalWhite", "RandomBlue", "RandomWhite", "BlueStar", "WhiteStar",
    "BlueTree", "make_blue", "make_white", "BLUE_NAMES", "WHITE_NAMES",
]
