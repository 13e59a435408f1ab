"""Inertia of small real symmetric matrices and the star-forest witnesses.

Eigenvalues come from a plain cyclic Jacobi sweep; matrices here are at most
a few dozen rows, so no attempt is made at anything cleverer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph


class NoConvergence(ArithmeticError):
    pass


@dataclass(frozen=True)
class SymmetricMatrix:
    rows: tuple[tuple[float, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "SymmetricMatrix":
        rows = tuple(tuple(float(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"entry ({i},{j}) differs from ({j},{i})")
        return cls(rows)

    @classmethod
    def zeros(cls, n: int) -> "SymmetricMatrix":
        return cls(tuple((0.0,) * n for _ in range(n)))

    @property
    def order(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def shifted(self, c: float) -> "SymmetricMatrix":
        return SymmetricMatrix(tuple(
            tuple(x + (c if i == j else 0.0) for j, x in enumerate(r)) for i, r in enumerate(self.rows)
        ))

    def trace(self) -> float:
        return sum(self.rows[i][i] for i in range(self.order))

    def frobenius_sq(self) -> float:
        return sum(x * x for r in self.rows for x in r)


def direct_sum(blocks: Sequence[SymmetricMatrix]) -> SymmetricMatrix:
    n = sum(b.order for b in blocks)
    rows = [[0.0] * n for _ in range(n)]
    at = 0
    for b in blocks:
        for i in range(b.order):
            rows[at + i][at:at + b.order] = b.rows[i]
        at += b.order
    return SymmetricMatrix(tuple(tuple(r) for r in rows))


def adjacency(g: Graph) -> SymmetricMatrix:
    rows = [[0.0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        rows[u][v] = rows[v][u] = 1.0
    return SymmetricMatrix(tuple(tuple(r) for r in rows))


def eigenvalues_symmetric(m: SymmetricMatrix, tol: float = 1e-12, max_sweeps: int = 100) -> list[float]:
    """Eigenvalues, ascending, by cyclic Jacobi rotations."""
    n = m.order
    a = [list(r) for r in m.rows]
    scale = math.sqrt(m.frobenius_sq()) or 1.0
    for _ in range(max_sweeps):
        off = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= tol * scale:
            return sorted(a[i][i] for i in range(n))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    nullity: int


def inertia_of(m: SymmetricMatrix, zero_tol: float = 1e-8) -> Inertia:
    """Eigenvalue sign counts; |λ| <= zero_tol * max|λ| counts as zero."""
    ev = eigenvalues_symmetric(m)
    big = max((abs(x) for x in ev), default=0.0)
    thr = zero_tol * big if big else zero_tol
    pos = sum(1 for x in ev if x > thr)
    neg = sum(1 for x in ev if x < -thr)
    return Inertia(pos, neg, len(ev) - pos - neg)


def pattern_matches(m: SymmetricMatrix, g: Graph) -> bool:
    """Off-diagonal nonzeros sit exactly on the edges of ``g``."""
    if m.order != g.n:
        raise ValueError(f"order {m.order} does not match {g.n} vertices")
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if (m[i, j] != 0.0) != g.has_edge(i, j):
                return False
    return True


def star_adjacency(leaves: int) -> SymmetricMatrix:
    """Adjacency of the star with ``leaves`` leaves, center first."""
    n = leaves + 1
    rows = [[0.0] * n for _ in range(n)]
    for v in range(1, n):
        rows[0][v] = rows[v][0] = 1.0
    return SymmetricMatrix(tuple(tuple(r) for r in rows))


def star_witness(leaf_counts: Sequence[int], q: int) -> SymmetricMatrix:
    """Block-diagonal witness: the q largest stars keep their adjacency, the
    rest are shifted by sqrt(leaves) so that they lose their negative
    eigenvalue and keep a single zero."""
    counts = list(leaf_counts)
    if counts != sorted(counts, reverse=True) or any(c < 1 for c in counts):
        raise ValueError("leaf counts must be positive and in descending order")
    blocks = []
    for i, m in enumerate(counts):
        a = star_adjacency(m)
        blocks.append(a if i < q else a.shifted(math.sqrt(m)))
    return direct_sum(blocks)


def star_forest_of_leaves(leaf_counts: Sequence[int]) -> Graph:
    """Star forest laid out block by block like ``star_witness``."""
    edges, at = [], 0
    for m in leaf_counts:
        edges.extend((at, at + j) for j in range(1, m + 1))
        at += m + 1
    return Graph.from_edges(at, edges, name="stars-leaves:" + "/".join(map(str, leaf_counts)))


def expected_witness_inertia(leaf_counts: Sequence[int], q: int) -> tuple[int, int]:
    """(negatives, nullity) claimed for the witness."""
    k = len(leaf_counts)
    if q < k:
        return q, sum(m - 1 for m in leaf_counts[:q]) + k - q
    return k, sum(m - 1 for m in leaf_counts)


@dataclass
class RemarkReport:
    leaf_counts: tuple[int, ...]
    q: int
    inertia: Inertia
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.checks)


def verify_remark(leaf_counts: Sequence[int], q: int, zq: int | None = None) -> RemarkReport:
    """Check the witness for a star forest: pattern, negatives, nullity, and
    (when ``zq`` is given) nullity <= Z_q."""
    counts = tuple(leaf_counts)
    m = star_witness(counts, q)
    g = star_forest_of_leaves(counts)
    inert = inertia_of(m)
    neg, nul = expected_witness_inertia(counts, q)
    rep = RemarkReport(counts, q, inert)
    rep.checks.append(("pattern", pattern_matches(m, g), ""))
    rep.checks.append(("negatives", inert.negative == neg, f"{inert.negative} vs {neg}"))
    rep.checks.append(("at-most-q-negatives", inert.negative <= q, f"{inert.negative} <= {q}"))
    rep.checks.append(("nullity", inert.nullity == nul, f"{inert.nullity} vs {nul}"))
    if zq is not None:
        rep.checks.append(("nullity<=Zq", inert.nullity <= zq, f"{inert.nullity} <= {zq}"))
    return rep
