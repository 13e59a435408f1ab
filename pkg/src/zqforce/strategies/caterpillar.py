"""Center classification and protected paths on caterpillar cycles/paths.

A center is *bad* when it is blue or has a blue pendant, *good* otherwise,
and *eligible* when it still has a white pendant.  Paths are stored as a
start position on the center sequence plus a length; on a cycle positions
wrap.  The q=2 full-cycle path repeats its first center at the end, so it
has ``n + 1`` entries.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..graph import CaterpillarLayout, GameState, Graph

Q2 = "q2"
Q3 = "q3"


def layout_of(g: Graph) -> CaterpillarLayout:
    if g.layout is None:
        raise ValueError("graph carries no caterpillar layout (build it with families.cnk/pnk/corona)")
    return g.layout


@dataclass(frozen=True)
class CenterLabels:
    bad: tuple[bool, ...]
    eligible: tuple[bool, ...]

    @property
    def good(self) -> tuple[bool, ...]:
        return tuple(not b for b in self.bad)


def classify_centers(state: GameState) -> CenterLabels:
    lay = layout_of(state.graph)
    bad, elig = [], []
    for c, pend in zip(lay.centers, lay.pendants):
        blue_pend = any(state.is_blue(x) for x in pend)
        bad.append(state.is_blue(c) or blue_pend)
        elig.append(any(not state.is_blue(x) for x in pend))
    return CenterLabels(tuple(bad), tuple(elig))


@dataclass(frozen=True)
class ProtectedPath:
    start: int
    length: int
    variant: str
    n: int
    cyclic: bool

    @property
    def positions(self) -> tuple[int, ...]:
        if self.cyclic:
            return tuple((self.start + j) % self.n for j in range(self.length))
        return tuple(range(self.start, self.start + self.length))

    @property
    def full_cycle(self) -> bool:
        return self.length == self.n + 1

    def contains(self, other: "ProtectedPath") -> bool:
        d = (other.start - self.start) % self.n if self.cyclic else other.start - self.start
        return d >= 0 and d + other.length <= self.length

    def bad_positions(self, labels: CenterLabels) -> list[int]:
        """Indices into ``positions`` of the bad centers."""
        return [j for j, p in enumerate(self.positions) if labels.bad[p]]

    def phi(self, labels: CenterLabels) -> int:
        if self.variant == Q2:
            return self.length - 2
        return sum(1 for p in self.positions[1:-1] if not labels.bad[p])


def _extend(labels: CenterLabels, s: int, variant: str, n: int, cyclic: bool) -> int:
    """Longest valid path length starting at position ``s`` (0 if none)."""
    bad, elig = labels.bad, labels.eligible
    if not elig[s]:
        return 0
    limit = n - s if not cyclic else n
    m = 1
    internal_bad = 0
    while m < limit:
        p = (s + m) % n
        prev = (s + m - 1) % n
        if not elig[p]:
            break
        if variant == Q2:
            if m >= 2 and bad[prev]:
                break
        else:
            if bad[p] and bad[prev]:
                break
            if m >= 2 and bad[prev]:
                if internal_bad:
                    break
                internal_bad = 1
        m += 1
    if variant == Q2 and cyclic and m == n and (n < 2 or not bad[(s + n - 1) % n]):
        # wrap back onto c_1: every non-start center is internal and good
        return n + 1
    return m


def protected_paths(state: GameState, variant: str) -> list[ProtectedPath]:
    """All maximal protected paths, ordered by start position."""
    if variant not in (Q2, Q3):
        raise ValueError(f"variant must be {Q2!r} or {Q3!r}")
    lay = layout_of(state.graph)
    labels = classify_centers(state)
    n, cyclic = lay.size, lay.cyclic
    cands = []
    for s in range(n):
        m = _extend(labels, s, variant, n, cyclic)
        if m:
            cands.append(ProtectedPath(s, m, variant, n, cyclic))
    return [p for p in cands if not any(o is not p and o.contains(p) for o in cands)]


def phi(state: GameState, variant: str) -> int:
    labels = classify_centers(state)
    return max([0] + [p.phi(labels) for p in protected_paths(state, variant)])


def best_path(state: GameState, variant: str) -> ProtectedPath | None:
    """A maximal protected path of largest potential; smallest start on ties."""
    labels = classify_centers(state)
    best, best_phi = None, None
    for p in protected_paths(state, variant):
        v = p.phi(labels)
        if best_phi is None or v > best_phi:
            best, best_phi = p, v
    return best


def path_is_protected(state: GameState, path: ProtectedPath) -> bool:
    labels = classify_centers(state)
    return path.length <= _extend(labels, path.start, path.variant, path.n, path.cyclic)


def brute_protected(state: GameState, variant: str) -> list[tuple[int, ...]]:
    """Every protected path as a tuple of positions, by direct definition."""
    lay = layout_of(state.graph)
    labels = classify_centers(state)
    n, cyclic = lay.size, lay.cyclic
    out = []
    lengths = range(1, n + 2) if (variant == Q2 and cyclic) else range(1, n + 1)
    for s in range(n):
        for m in lengths:
            if not cyclic and s + m > n:
                break
            pos = tuple((s + j) % n for j in range(m))
            if m == n + 1:
                ok_shape = True
            else:
                ok_shape = len(set(pos)) == m
            if not ok_shape or not all(labels.eligible[p] for p in pos):
                continue
            inner = pos[1:-1]
            if variant == Q2:
                if any(labels.bad[p] for p in inner):
                    continue
            else:
                if sum(labels.bad[p] for p in inner) > 1:
                    continue
                if any(labels.bad[a] and labels.bad[b] for a, b in zip(pos, pos[1:])):
                    continue
            out.append(pos)
    return out


def zone(g: Graph, path: ProtectedPath) -> int:
    """Bitmask of the path's centers and their pendants."""
    lay = layout_of(g)
    z = 0
    for p in set(path.positions):
        z |= 1 << lay.centers[p]
        for x in lay.pendants[p]:
            z |= 1 << x
    return z


def white_center_runs(state: GameState) -> list[list[int]]:
    """Maximal runs of consecutive white centers, as position lists."""
    lay = layout_of(state.graph)
    n = lay.size
    white = [not state.is_blue(c) for c in lay.centers]
    if all(white):
        return [list(range(n))]
    runs = []
    if lay.cyclic:
        first_blue = white.index(False)
        order = [(first_blue + j) % n for j in range(n)]
    else:
        order = list(range(n))
    cur: list[int] = []
    for p in order:
        if white[p]:
            cur.append(p)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs
