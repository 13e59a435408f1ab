"""Closed-form bounds on Z_q and small brute-force formula evaluators."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import Graph, bits, rooted_heights

# -- stars -------------------------------------------------------------------


def z_star(n: int) -> int:
    """Zero forcing number of the star on ``n`` vertices."""
    if n < 1:
        raise ValueError("a star needs at least one vertex")
    return 1 if n <= 3 else n - 2


def star_forest_zq(sizes: Sequence[int], q: int) -> int:
    """Z_q of a forest of stars with ``sizes`` vertices each (largest first)."""
    sizes = list(sizes)
    if q < 0:
        raise ValueError("q must be non-negative")
    if not sizes or any(s < 2 for s in sizes):
        raise ValueError("every star needs at least 2 vertices")
    if sizes != sorted(sizes, reverse=True):
        raise ValueError(f"star sizes must be sorted in descending order, got {sizes}")
    k = len(sizes)
    if q < k:
        return k - q + sum(z_star(s) for s in sizes[:q])
    return sum(z_star(s) for s in sizes)


# -- trees -------------------------------------------------------------------


def tree_bound_at(tree: Graph, q: int, root: int) -> int:
    """The level bound for one root: deg(root) plus, per inner height, the q
    largest max(0, deg - 2) terms."""
    height, h = rooted_heights(tree, root)
    total = tree.degree(root)
    for level in range(1, h):
        degs = sorted((tree.degree(v) for v in range(tree.n) if height[v] == level), reverse=True)
        total += sum(max(0, d - 2) for d in degs[:q])
    return total


def tree_upper_bound(tree: Graph, q: int) -> tuple[int, int]:
    """(bound, best root), minimizing the level bound over all roots."""
    if not tree.is_tree():
        raise ValueError("tree_upper_bound needs a tree")
    if tree.n < 2:
        raise ValueError("tree_upper_bound needs at least 2 vertices")
    return min((tree_bound_at(tree, q, v), v) for v in range(tree.n))


def connected_subtrees(tree: Graph, v: int) -> Iterable[int]:
    """Every connected vertex set of ``tree`` containing ``v``, as masks."""
    seen = set()

    def grow(mask: int, frontier: int):
        if mask in seen:
            return
        seen.add(mask)
        yield mask
        for w in bits(frontier):
            nm = mask | 1 << w
            yield from grow(nm, (frontier | tree.nbr[w]) & ~nm)

    yield from grow(1 << v, tree.nbr[v])


def _min_path_sum(tree: Graph, sub: int, v: int) -> int:
    deg = {w: (tree.nbr[w] & sub).bit_count() for w in bits(sub)}
    if sub == 1 << v:
        return deg[v] - 2
    best = None
    # maximal paths from v end at a leaf of the subtree other than v
    stack = [(v, -1, deg[v] - 2)]
    while stack:
        u, parent, acc = stack.pop()
        kids = [w for w in bits(tree.nbr[u] & sub) if w != parent]
        if not kids:
            if u != v and (best is None or acc < best):
                best = acc
            continue
        for w in kids:
            stack.append((w, u, acc + deg[w] - 2))
    return best


def z1_tree_formula(tree: Graph, max_n: int = 14) -> int:
    """Z_1 of a tree via the subtree/maximal-path formula, by brute force."""
    if not tree.is_tree() or tree.n < 3:
        raise ValueError("z1_tree_formula needs a tree on at least 3 vertices")
    if tree.n > max_n:
        raise ValueError(f"z1_tree_formula limited to {max_n} vertices")
    best = None
    for v in range(tree.n):
        for sub in connected_subtrees(tree, v):
            val = _min_path_sum(tree, sub, v)
            if best is None or val > best:
                best = val
    return 2 + best


# -- edge deletion -----------------------------------------------------------


def edge_deletion_interval(zq: int) -> tuple[int, int, str]:
    """Range for Z_q(G - e) given Z_q(G); lower end clamped at 0."""
    lo = zq - 2
    note = ""
    if lo < 0:
        lo, note = 0, f"lower end {zq - 2} clamped to 0"
    return lo, zq + 1, note


# -- caterpillar cycles ------------------------------------------------------


def smallest_even_above(q: int) -> int:
    """Smallest even integer at least q + 1."""
    return q + 1 + (q + 1) % 2


@dataclass(frozen=True)
class RealBound:
    lower: float
    upper: float
    p: int | None = None
    note: str = ""

    @property
    def lower_int(self) -> int:
        return math.ceil(self.lower - 1e-12)

    @property
    def upper_int(self) -> int:
        return math.floor(self.upper + 1e-12)


def z2_cnk_bounds(n: int, k: int) -> RealBound:
    if n < 3 or k < 2:
        raise ValueError("needs n >= 3 and k >= 2")
    return RealBound(math.log2(n) + 1, math.log2(n - 2) + 2 * k + 1)


def zq_cnk_bounds(n: int, k: int, q: int) -> RealBound:
    if n < 3 or k < 2 or q < 2:
        raise ValueError("needs n >= 3, k >= 2 and q >= 2")
    p = smallest_even_above(q)
    lower = 2 * math.log(2, 3) * math.log2(n / 200)
    upper = (p - 2) * math.log2(n) + p + k - q + q * (k - 1)
    note = "" if q == 3 else "lower bound proved only for q=3"
    return RealBound(lower, upper, p, note)


def caterpillar_bounds(n: int, k: int, q: int) -> RealBound:
    """Bounds for the path version, shifted by the edge-deletion sandwich."""
    b = zq_cnk_bounds(n, k, q)
    return RealBound(max(1.0, b.lower - 2), b.upper + 1, b.p, b.note)


def recurrence_l(i: int, l0) -> Fraction:
    """Closed form of l_i = (l_{i-1} - 1) / 2."""
    if i < 0:
        raise ValueError("i must be non-negative")
    return (Fraction(l0) + 1) / 2 ** i - 1


def recurrence_iterate(i: int, l0) -> Fraction:
    x = Fraction(l0)
    for _ in range(i):
        x = (x - 1) / 2
    return x


def recurrence_threshold(n: int) -> int:
    """Smallest j with l_j <= 0 when l_0 = n - 1."""
    if n < 1:
        raise ValueError("n must be positive")
    j = 0
    while recurrence_l(j, n - 1) > 0:
        j += 1
    return j


def compare_tree_vs_corona_bound(n: int, k: int, q: int) -> dict:
    """Tree-bound floor on P_n ∘ kK_1 against the caterpillar upper bound."""
    if n % 2 == 0 or n < 3:
        raise ValueError("comparison is stated for odd n >= 3")
    tree_floor = k + 2 + (n - 3) * k
    cat = caterpillar_bounds(n, k, q).upper
    return {
        "n": n, "k": k, "q": q,
        "tree_floor": tree_floor,
        "caterpillar_upper": cat,
        "better": "caterpillar" if cat < tree_floor else "tree",
    }


# -- reports -----------------------------------------------------------------


@dataclass
class BoundReport:
    graph: str
    q: int
    lower: int
    lower_src: str
    upper: int
    upper_src: str
    exact: int | None = None
    notes: list[str] = field(default_factory=list)

    def consistent(self) -> bool:
        if self.lower > self.upper:
            return False
        return self.exact is None or self.lower <= self.exact <= self.upper

    def row(self) -> list:
        return [self.graph, self.q, self.lower, self.lower_src, self.upper, self.upper_src,
                "" if self.exact is None else self.exact]


CSV_HEADER = ["graph", "q", "lower", "lower_src", "upper", "upper_src", "exact"]


def reports_csv(reports: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        w.writerow(r.row())
    return buf.getvalue()


def _star_sizes(g: Graph) -> list[int] | None:
    from .strategies.stars import star_pieces

    try:
        return [p.size for p in star_pieces(g)]
    except ValueError:
        return None


def bound_report(g: Graph, q: int, exact: int | None = None) -> BoundReport:
    """Best applicable closed-form bounds for ``g`` at ``q``."""
    lows: list[tuple[int, str]] = [(1 if g.n else 0, "trivial")]
    ups: list[tuple[int, str]] = [(max(g.n - 1, 1) if g.m else g.n, "trivial")]
    notes = []
    sizes = _star_sizes(g) if g.n else None
    if sizes:
        v = star_forest_zq(sizes, q)
        lows.append((v, "star-forest"))
        ups.append((v, "star-forest"))
    if g.n >= 2 and g.is_tree():
        b, root = tree_upper_bound(g, q)
        ups.append((b, f"tree-levels(root={root})"))
        if q == 1 and g.n >= 3 and g.n <= 14:
            v = z1_tree_formula(g)
            lows.append((v, "z1-tree"))
            ups.append((v, "z1-tree"))
    lay = g.layout
    if lay is not None and lay.size >= 3:
        counts = [len(p) for p in lay.pendants]
        n, k = lay.size, max(counts)
        if lay.cyclic and q == 1 and len(set(counts)) == 1 and k >= 1:
            lows.append((k + 1, "corona-z1"))
            ups.append((k + 1, "corona-z1"))
        if min(counts) >= 2:
            if lay.cyclic and q == 2:
                b = z2_cnk_bounds(n, k)
                lows.append((b.lower_int, "cnk-q2-potential"))
                ups.append((b.upper_int, "cnk-q2-strategy"))
            elif q >= 2:
                b = zq_cnk_bounds(n, k, q) if lay.cyclic else caterpillar_bounds(n, k, q)
                tag = "cnk" if lay.cyclic else "pnk"
                lows.append((b.lower_int, f"{tag}-potential" + ("" if q == 3 else "-unproved")))
                ups.append((b.upper_int, f"{tag}-general-strategy"))
                if b.note:
                    notes.append(b.note)
    # an unproved lower bound never wins over a proved one
    lo = max((x for x in lows if not x[1].endswith("-unproved")), key=lambda t: t[0])
    hi = min(ups, key=lambda t: t[0])
    return BoundReport(g.name or f"graph(n={g.n})", q, lo[0], lo[1], hi[0], hi[1], exact, notes)
