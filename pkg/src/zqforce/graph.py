"""Simple undirected graphs on dense vertex indices, and colored game states.

Vertex sets are plain ``int`` bitmasks throughout: bit ``v`` set means vertex
``v`` is a member.  This keeps game states hashable and cheap to copy, which
the memoized searches rely on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Yield the members of a bitmask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class CaterpillarLayout:
    """Center/pendant labeling of a caterpillar cycle or path.

    ``centers`` lists center vertices in cycle (or path) order and
    ``pendants[i]`` the degree-one neighbors of ``centers[i]``.
    """

    centers: tuple[int, ...]
    pendants: tuple[tuple[int, ...], ...]
    cyclic: bool

    @property
    def size(self) -> int:
        return len(self.centers)

    def position(self, center: int) -> int:
        return self.centers.index(center)

    def step(self, i: int, delta: int) -> int | None:
        """Center position ``i + delta``; ``None`` when it walks off a path."""
        j = i + delta
        if self.cyclic:
            return j % self.size
        return j if 0 <= j < self.size else None


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]
    nbr: tuple[int, ...] = field(repr=False, compare=False)
    name: str = field(default="", compare=False)
    layout: CaterpillarLayout | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        *,
        name: str = "",
        layout: CaterpillarLayout | None = None,
    ) -> "Graph":
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        seen: set[tuple[int, int]] = set()
        nbr = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        return cls(n, tuple(sorted(seen)), tuple(nbr), name=name, layout=layout)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return members(self.nbr[v])

    def degree(self, v: int) -> int:
        return self.nbr[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.nbr[u] >> v & 1)

    def reach(self, start: int, within: int | None = None) -> int:
        """Vertices reachable from ``start`` inside the vertex mask ``within``."""
        within = self.full if within is None else within
        comp = 1 << start
        frontier = comp
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= self.nbr[v]
            frontier = grow & within & ~comp
            comp |= frontier
        return comp

    def is_connected(self) -> bool:
        return self.n == 0 or self.reach(0) == self.full

    def is_forest(self) -> bool:
        comps = 0
        rest = self.full
        while rest:
            comp = self.reach(lowest(rest))
            rest &= ~comp
            comps += 1
        return self.m == self.n - comps

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not (0 <= u < self.n and 0 <= v < self.n) or not self.has_edge(u, v):
            raise ValueError(f"edge ({u}, {v}) not in graph")
        e = (min(u, v), max(u, v))
        layout = _layout_after_deletion(self.layout, e)
        return Graph.from_edges(
            self.n,
            [f for f in self.edges if f != e],
            name=f"{self.name}-e{e[0]}_{e[1]}" if self.name else "",
            layout=layout,
        )

    def relabel_name(self, name: str) -> "Graph":
        return Graph(self.n, self.edges, self.nbr, name=name, layout=self.layout)


def _layout_after_deletion(layout: CaterpillarLayout | None, e: tuple[int, int]) -> CaterpillarLayout | None:
    # Cutting a cycle edge between consecutive centers leaves a caterpillar path.
    if layout is None or not layout.cyclic:
        return None
    c = layout.centers
    size = len(c)
    for i in range(size):
        a, b = c[i], c[(i + 1) % size]
        if (min(a, b), max(a, b)) == e:
            order = list(range(i + 1, size)) + list(range(0, i + 1))
            return CaterpillarLayout(
                tuple(c[j] for j in order),
                tuple(layout.pendants[j] for j in order),
                cyclic=False,
            )
    return None


@dataclass(frozen=True)
class GameState:
    """A graph plus the set of blue vertices (bitmask)."""

    graph: Graph
    blue: int = 0

    def __post_init__(self) -> None:
        if self.blue & ~self.graph.full:
            raise ValueError("blue set contains vertices outside the graph")

    @property
    def white(self) -> int:
        return self.graph.full & ~self.blue

    def is_blue(self, v: int) -> bool:
        return bool(self.blue >> v & 1)

    def done(self) -> bool:
        return self.blue == self.graph.full

    def with_blue(self, extra: int) -> "GameState":
        return GameState(self.graph, self.blue | extra)


def white_components(state: GameState) -> list[int]:
    """Connected components of the white-induced subgraph as bitmasks,
    ordered by ascending minimum vertex."""
    g = state.graph
    rest = state.white
    out = []
    while rest:
        comp = g.reach(lowest(rest), state.white)
        out.append(comp)
        rest &= ~comp
    return out


def active_vertices(state: GameState) -> int:
    """Blue vertices with at least two white neighbors."""
    white = state.white
    act = 0
    for v in bits(state.blue):
        if (state.graph.nbr[v] & white).bit_count() >= 2:
            act |= 1 << v
    return act


def activity(state: GameState) -> int:
    return active_vertices(state).bit_count()


def rooted_heights(tree: Graph, root: int) -> tuple[list[int], int]:
    """Breadth-first distances from ``root``; returns (heights, tree height)."""
    if not tree.is_tree():
        raise ValueError("rooted_heights needs a tree")
    if not 0 <= root < tree.n:
        raise ValueError(f"root {root} out of range")
    height = [-1] * tree.n
    height[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in tree.neighbors(u):
            if height[w] < 0:
                height[w] = height[u] + 1
                queue.append(w)
    return height, max(height)


def parse_graph_text(text: str) -> Graph:
    """Parse the ``n m`` / ``u v`` edge-list format; ``#`` lines are comments."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise ValueError("empty graph text")
    lineno, head = rows[0]
    if len(head) != 2:
        raise ValueError(f"line {lineno}: expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ValueError(f"line {lineno}: non-integer header") from None
    body = rows[1:]
    if len(body) != m:
        raise ValueError(f"header declares {m} edges, found {len(body)}")
    edges = []
    for lineno, parts in body:
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer vertex") from None
        if not 0 <= u < v < n:
            raise ValueError(f"line {lineno}: need 0 <= u < v < n, got {u} {v}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_graph_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"

