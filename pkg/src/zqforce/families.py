"""Graph families with canonical labeling, plus tree enumeration.

Labeling conventions: for caterpillar cycles/paths and coronas the centers
are ``0..n-1`` in cycle (path) order and pendants follow, grouped by center.
Stars put the center at 0.  Star forests concatenate stars in the given
order.

Family strings (the ``--graph`` grammar)::

    path:5            cycle:6            star:5
    star-forest:5/4/3 kary:k=2,depth=2   spider:2/2/2
    corona:n=4,k=2[,base=path]
    cnk:n=6,k=3[,seed=7 | counts=2/3/2/2/3/2]
    pnk:n=6,k=3[,seed=7 | counts=...]
    random-tree:n=9,seed=4             random-graph:n=7,seed=1[,p=0.4]
"""

from __future__ import annotations

import random
from itertools import product
from typing import Iterator, Sequence

from .graph import CaterpillarLayout, Graph


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"path:{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"cycle:{n}")


def star(n: int) -> Graph:
    """Star on ``n`` vertices (``n - 1`` leaves), center 0."""
    if n < 1:
        raise ValueError("star needs n >= 1")
    return Graph.from_edges(n, [(0, j) for j in range(1, n)], name=f"star:{n}")


def star_forest(sizes: Sequence[int]) -> Graph:
    """Disjoint stars with the given vertex counts; returns centers in order."""
    if not sizes or any(s < 2 for s in sizes):
        raise ValueError("star forest needs stars with at least 2 vertices")
    edges = []
    base = 0
    for s in sizes:
        edges.extend((base, base + j) for j in range(1, s))
        base += s
    return Graph.from_edges(base, edges, name="star-forest:" + "/".join(map(str, sizes)))


def star_centers(sizes: Sequence[int]) -> list[int]:
    out, base = [], 0
    for s in sizes:
        out.append(base)
        base += s
    return out


def kary(k: int, depth: int) -> Graph:
    """Complete k-ary tree of the given depth, breadth-first labels, root 0."""
    if k < 1 or depth < 0:
        raise ValueError("kary needs k >= 1 and depth >= 0")
    edges = []
    n = 1
    level = [0]
    for _ in range(depth):
        nxt = []
        for p in level:
            for _ in range(k):
                edges.append((p, n))
                nxt.append(n)
                n += 1
        level = nxt
    return Graph.from_edges(n, edges, name=f"kary:k={k},depth={depth}")


def spider(legs: Sequence[int]) -> Graph:
    """Body vertex 0 with legs of the given lengths."""
    if not legs or any(x < 1 for x in legs):
        raise ValueError("spider legs must have length >= 1")
    edges = []
    n = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, n))
            prev = n
            n += 1
    return Graph.from_edges(n, edges, name="spider:" + "/".join(map(str, legs)))


def caterpillar(counts: Sequence[int], cyclic: bool, name: str = "") -> Graph:
    """Cycle (or path) of centers with ``counts[i]`` pendants on center ``i``."""
    n = len(counts)
    if cyclic and n < 3:
        raise ValueError("caterpillar cycle needs n >= 3")
    if n < 1 or any(c < 0 for c in counts):
        raise ValueError("bad pendant counts")
    edges = [(i, i + 1) for i in range(n - 1)]
    if cyclic:
        edges.append((0, n - 1))
    pendants = []
    v = n
    for i, c in enumerate(counts):
        mine = tuple(range(v, v + c))
        edges.extend((i, x) for x in mine)
        pendants.append(mine)
        v += c
    layout = CaterpillarLayout(tuple(range(n)), tuple(pendants), cyclic)
    return Graph.from_edges(v, edges, name=name, layout=layout)


def corona(n: int, k: int, base: str = "cycle") -> Graph:
    """``C_n ∘ kK_1`` (or ``P_n ∘ kK_1`` with ``base='path'``)."""
    if k < 0:
        raise ValueError("corona needs k >= 0")
    if base not in ("cycle", "path"):
        raise ValueError(f"corona base must be cycle or path, got {base!r}")
    return caterpillar([k] * n, base == "cycle", name=f"corona:n={n},k={k},base={base}")


def _check_counts(counts: Sequence[int], k: int) -> None:
    if k < 2:
        raise ValueError("need k >= 2")
    bad = [c for c in counts if not 2 <= c <= k]
    if bad:
        raise ValueError(f"pendant counts must lie in [2, {k}], got {bad}")


def cnk(n: int, k: int, counts: Sequence[int] | None = None, seed: int | None = None) -> Graph:
    """A caterpillar cycle ``C_{n,k}``; all counts ``k`` unless given or seeded."""
    if n < 3:
        raise ValueError("C_{n,k} needs n >= 3")
    counts = _pick_counts(n, k, counts, seed)
    tag = ",counts=" + "/".join(map(str, counts))
    return caterpillar(counts, True, name=f"cnk:n={n},k={k}{tag}")


def pnk(n: int, k: int, counts: Sequence[int] | None = None, seed: int | None = None) -> Graph:
    if n < 1:
        raise ValueError("P_{n,k} needs n >= 1")
    counts = _pick_counts(n, k, counts, seed)
    tag = ",counts=" + "/".join(map(str, counts))
    return caterpillar(counts, False, name=f"pnk:n={n},k={k}{tag}")


def _pick_counts(n, k, counts, seed):
    if counts is None:
        if seed is None:
            counts = [k] * n
        else:
            rng = random.Random(seed)
            counts = [rng.randint(2, k) for _ in range(n)] if k >= 2 else [k] * n
    counts = list(counts)
    if len(counts) != n:
        raise ValueError(f"expected {n} pendant counts, got {len(counts)}")
    _check_counts(counts, k)
    return counts


def random_cnk(n: int, k: int, seed: int) -> Graph:
    return cnk(n, k, seed=seed)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labeled tree via a random Prüfer sequence."""
    if n < 1:
        raise ValueError("tree needs n >= 1")
    rng = random.Random(seed)
    if n == 1:
        return Graph.from_edges(1, [], name=f"random-tree:n=1,seed={seed}")
    if n == 2:
        return Graph.from_edges(2, [(0, 1)], name=f"random-tree:n=2,seed={seed}")
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return Graph.from_edges(n, prufer_decode(seq, n), name=f"random-tree:n={n},seed={seed}")


def random_connected_graph(n: int, seed: int, p: float = 0.4) -> Graph:
    """A random tree plus independent extra edges with probability ``p``."""
    rng = random.Random(seed)
    edges = set(random_tree(n, rng.randrange(1 << 30)).edges)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges), name=f"random-graph:n={n},seed={seed}")


def prufer_decode(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(i for i in range(n) if degree[i] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    edges.append((u, v))
    return edges


def _ahu(g: Graph, root: int, parent: int = -1) -> str:
    return "(" + "".join(sorted(_ahu(g, w, root) for w in g.neighbors(root) if w != parent)) + ")"


def tree_canonical_form(g: Graph) -> str:
    """Isomorphism-invariant string for a tree (AHU encoding at its center)."""
    if g.n <= 2:
        return f"n{g.n}"
    deg = [g.degree(v) for v in range(g.n)]
    alive = set(range(g.n))
    layer = [v for v in alive if deg[v] <= 1]
    while len(alive) > 2:
        for v in layer:
            alive.discard(v)
        nxt = []
        for v in layer:
            for w in g.neighbors(v):
                if w in alive:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return min(_ahu(g, c) for c in alive)


def labeled_trees(n: int) -> Iterator[Graph]:
    if n > 10:
        raise ValueError("labeled tree enumeration is limited to n <= 10")
    if n == 1:
        yield Graph.from_edges(1, [])
        return
    if n == 2:
        yield Graph.from_edges(2, [(0, 1)])
        return
    for seq in product(range(n), repeat=n - 2):
        yield Graph.from_edges(n, prufer_decode(seq, n))


def all_trees(n: int, dedup: bool = True) -> list[Graph]:
    """All trees on ``n`` vertices; one per isomorphism class when ``dedup``."""
    if n < 1:
        raise ValueError("need n >= 1")
    if not dedup:
        return list(labeled_trees(n))
    if n > 10:
        raise ValueError("tree enumeration is limited to n <= 10")
    # Generating unlabeled trees by leaf extension is far cheaper than
    # decoding all n^(n-2) Prüfer sequences once n reaches 9 or 10.
    reps = {tree_canonical_form(t): t for t in _grow_trees(n)}
    return [reps[k].relabel_name(f"tree{n}#{i}") for i, k in enumerate(sorted(reps))]


def _grow_trees(n: int) -> list[Graph]:
    level = {"n1": Graph.from_edges(1, [])}
    for size in range(2, n + 1):
        nxt = {}
        for t in level.values():
            for v in range(t.n):
                g = Graph.from_edges(size, list(t.edges) + [(v, size - 1)])
                nxt.setdefault(tree_canonical_form(g), g)
        level = nxt
    return list(level.values())


def connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on ``n <= 7`` vertices up to isomorphism."""
    import networkx as nx

    if not 1 <= n <= 7:
        raise ValueError("connected graph enumeration covers 1 <= n <= 7")
    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == n and nx.is_connected(h):
            out.append(Graph.from_edges(n, [tuple(e) for e in h.edges()], name=f"atlas{n}#{len(out)}"))
    return out


# -- family strings --------------------------------------------------------

def _kv(body: str) -> dict[str, str]:
    out = {}
    for part in body.split(","):
        if not part:
            continue
        if "=" not in part:
            raise ValueError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split("/") if t]


def build(spec: str) -> Graph:
    """Build a graph from a family string (see module docstring)."""
    if ":" not in spec:
        raise ValueError(f"family string needs 'family:params', got {spec!r}")
    fam, body = spec.split(":", 1)
    try:
        if fam == "path":
            return path(int(body))
        if fam == "cycle":
            return cycle(int(body))
        if fam == "star":
            return star(int(body))
        if fam == "star-forest":
            return star_forest(_ints(body))
        if fam == "spider":
            return spider(_ints(body))
        kv = _kv(body)
        if fam == "kary":
            return kary(int(kv["k"]), int(kv["depth"]))
        if fam == "corona":
            return corona(int(kv["n"]), int(kv["k"]), kv.get("base", "cycle"))
        if fam in ("cnk", "pnk"):
            make = cnk if fam == "cnk" else pnk
            counts = _ints(kv["counts"]) if "counts" in kv else None
            seed = int(kv["seed"]) if "seed" in kv else None
            return make(int(kv["n"]), int(kv["k"]), counts=counts, seed=seed)
        if fam == "random-tree":
            return random_tree(int(kv["n"]), int(kv.get("seed", 0)))
        if fam == "random-graph":
            return random_connected_graph(int(kv["n"]), int(kv.get("seed", 0)), float(kv.get("p", 0.4)))
    except KeyError as exc:
        raise ValueError(f"{fam}: missing parameter {exc.args[0]}") from None
    raise ValueError(f"unknown family {fam!r}")
