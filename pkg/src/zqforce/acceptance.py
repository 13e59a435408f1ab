"""The acceptance checks, shared by ``zqforce verify`` and the test suite.

Each check returns a ``CheckResult``; nothing here raises on a failed
comparison, so a report always covers every criterion.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import families as F
from .bounds import (
    recurrence_iterate,
    recurrence_l,
    recurrence_threshold,
    star_forest_zq,
    tree_upper_bound,
    z1_tree_formula,
    z2_cnk_bounds,
    zq_cnk_bounds,
)
from .certify import certify_lower, certify_upper
from .engine import find_winning_offer, legal_forces
from .graph import GameState, Graph
from .inertia import star_forest_of_leaves, verify_remark
from .simulate import simulate
from .solver import SolveConfig, zq, zq_value
from .strategies import make_blue, make_white
from .strategies.adapt import AdaptedBlue
from .strategies.caterpillar import Q2, Q3, brute_protected, classify_centers, phi, protected_paths


@dataclass
class CheckResult:
    index: int
    title: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.index:2d} {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _partitions(total: int, smallest: int = 2, largest: int | None = None):
    """Descending partitions of ``total`` into parts >= ``smallest``."""
    largest = total if largest is None else largest
    if total == 0:
        yield []
        return
    for part in range(min(total, largest), smallest - 1, -1):
        for rest in _partitions(total - part, smallest, part):
            yield [part] + rest


def star_forest_sizes(max_total: int = 12) -> list[list[int]]:
    return [p for t in range(2, max_total + 1) for p in _partitions(t)]


# -- trace invariants for the protected-path policies ----------------------


def _phi_without_internal_bad(state: GameState) -> int:
    """Best q3 potential over protected paths with no internal bad center."""
    labels = classify_centers(state)
    best = 0
    for pos in brute_protected(state, Q3):
        if any(labels.bad[p] for p in pos[1:-1]):
            continue
        best = max(best, sum(1 for p in pos[1:-1] if not labels.bad[p]))
    return best


def phi_trace_violations(g: Graph, trace, variant: str) -> list[str]:
    """Check the potential's behaviour along a simulated trace.

    Free transitions must keep it fixed.  For q2 a token may drop it to no
    less than (phi-1)/2.  For q3 a token drops it to no less than (phi-1)/3,
    to no less than phi-1 when a maximizer has no internal bad center, and
    two tokens from such a state leave at least (phi-2)/3.
    """
    out = []
    token_marks = []  # (phi before the token, before-state had a clean maximizer)
    for i, t in enumerate(trace):
        if t.null:
            continue
        before, after = GameState(g, t.before), GameState(g, t.after)
        a, b = phi(before, variant), phi(after, variant)
        if t.cost == 0:
            if a != b:
                out.append(f"step {i}: free move changed phi {a} -> {b}")
            continue
        if variant == Q2:
            if 2 * b < a - 1:
                out.append(f"step {i}: token dropped phi {a} -> {b} below (phi-1)/2")
            continue
        if 3 * b < a - 1:
            out.append(f"step {i}: token dropped phi {a} -> {b} below (phi-1)/3")
        clean = a > 0 and _phi_without_internal_bad(before) == a
        if clean and b < a - 1:
            out.append(f"step {i}: token from a clean maximizer dropped phi {a} -> {b}")
        if token_marks and token_marks[-1][1] and 3 * b < token_marks[-1][0] - 2:
            out.append(f"step {i}: two tokens dropped phi {token_marks[-1][0]} -> {b} below (phi-2)/3")
        token_marks.append((a, clean))
    return out


def free_move_available(state: GameState, q: int) -> bool:
    return bool(legal_forces(state)) or find_winning_offer(state, q) is not None


def two_paths_violation(state: GameState) -> bool:
    """Two maximal protected paths of length >= 1 and three bad centers,
    yet nothing can be colored for free."""
    paths = [p for p in protected_paths(state, Q2) if p.length >= 2]
    nbad = sum(classify_centers(state).bad)
    return len(paths) >= 2 and nbad >= 3 and not free_move_available(state, 2)


def end_state_violation(g: Graph, blue: int) -> bool:
    """The q=2 Blue policy only reaches its last option once every center is
    blue and at most two centers still have white neighbors."""
    lay = g.layout
    state = GameState(g, blue)
    if any(not state.is_blue(c) for c in lay.centers):
        return True
    return sum(1 for c in lay.centers if g.nbr[c] & state.white) > 2


def bookend_violation(g: Graph, blue: int) -> bool:
    """Some blue center has no blue center beside it."""
    lay = g.layout
    n = lay.size
    for i, c in enumerate(lay.centers):
        if blue >> c & 1:
            if not (blue >> lay.centers[(i - 1) % n] & 1 or blue >> lay.centers[(i + 1) % n] & 1):
                return True
    return False


def general_trace_violations(g: Graph, res) -> list[str]:
    """Trace checks for the general-q Blue policy.

    After the opening every blue center has a blue neighbor on the cycle
    (states in the middle of a two-token split are skipped, the split being
    one step of the strategy), Option 3 fires at most log2(n) times, and
    the policy never falls back to an unplanned token.
    """
    out = []
    opened = False
    n = g.layout.size
    for i, t in enumerate(res.trace):
        if t.option != "opening":
            opened = True
        if opened and t.option != "option3-token" and bookend_violation(g, t.before):
            out.append(f"step {i}: isolated blue center")
    opt3 = sum(1 for t in res.trace if t.option == "option3")
    if opt3 > math.log2(n):
        out.append(f"Option 3 fired {opt3} times, more than log2({n})")
    falls = sum(1 for t in res.trace if t.option == "fallback")
    if falls:
        out.append(f"{falls} fallback tokens")
    return out


# -- the criteria ----------------------------------------------------------


def check_star_forests() -> tuple[bool, str]:
    bad, count = [], 0
    for sizes in star_forest_sizes(12):
        g = F.star_forest(sizes)
        for q in range(4):
            count += 1
            got, want = zq(g, q), star_forest_zq(sizes, q)
            if got != want:
                bad.append(f"{sizes} q={q}: {got} != {want}")
    return not bad, f"{count} solves" + ("; " + "; ".join(bad[:3]) if bad else ", all equal the formula")


def check_corona() -> tuple[bool, str]:
    vals = {n: zq(F.corona(n, 2), 1) for n in (3, 4)}
    return all(v == 3 for v in vals.values()), f"Z_1(C_3∘2K_1)={vals[3]}, Z_1(C_4∘2K_1)={vals[4]}, k+1=3"


def check_cnk_q2() -> tuple[bool, str]:
    ok, parts = True, []
    for n in (3, 4):
        g, k = F.cnk(n, 2), 2
        b = z2_cnk_bounds(n, k)
        lo, hi = b.lower_int, b.upper_int
        exact = zq(g, 2)
        low = certify_lower(g, 2, make_white("protected-q2", g, 2))
        up = certify_upper(g, 2, make_blue("cnk-q2", g, 2))
        need = math.ceil(math.log2(n)) + 1
        good = lo <= exact <= hi and low >= need and up <= hi
        ok &= good
        parts.append(f"n={n}: exact {exact} in [{lo},{hi}], white {low}>={need}, blue {up}<={hi}")
    return ok, "; ".join(parts)


def check_tree_bound() -> tuple[bool, str]:
    bad, count = [], 0
    for n in range(2, 11):
        for g in F.all_trees(n):
            for q in (1, 2):
                count += 1
                v, (b, _) = zq(g, q), tree_upper_bound(g, q)
                if v > b:
                    bad.append(f"{g.edges} q={q}: {v} > {b}")
    return not bad, f"{count} (tree, q) pairs" + ("; " + "; ".join(bad[:3]) if bad else ", all within the bound")


def check_z1_formula() -> tuple[bool, str]:
    bad, count = [], 0
    for n in range(3, 10):
        for g in F.all_trees(n):
            count += 1
            a, b = zq(g, 1), z1_tree_formula(g)
            if a != b:
                bad.append(f"{g.edges}: solver {a} formula {b}")
    return not bad, f"{count} trees" + ("; " + "; ".join(bad[:3]) if bad else ", solver equals formula")


def check_edge_deletion() -> tuple[bool, str]:
    graphs = [g for n in range(2, 9) for g in F.all_trees(n)] + [F.cycle(n) for n in range(3, 8)]
    bad, count, adapted = [], 0, 0
    for g in graphs:
        for q in (1, 2):
            base = zq(g, q)
            for e in g.edges:
                count += 1
                h = g.delete_edge(*e)
                v = zq(h, q)
                if not base - 2 <= v <= base + 1:
                    bad.append(f"{g.edges} -{e} q={q}: {v} vs {base}")
                pol = AdaptedBlue(make_blue("optimal", g, q), g, e, q)
                cost = certify_upper(h, q, pol)
                adapted += 1
                if cost > base + 1:
                    bad.append(f"{g.edges} -{e} q={q}: adapted {cost} > {base}+1")
    tight = []
    for n in range(2, 9):
        g = F.path(n)
        for e in g.edges:
            if zq(g.delete_edge(*e), 1) == zq(g, 1) + 1:
                tight.append(f"P_{n}-{e}")
                break
    ok = not bad and bool(tight)
    detail = f"{count} deletions, {adapted} adapted policies certified; +1 attained on {tight[0] if tight else 'none'}"
    return ok, detail + ("; " + "; ".join(bad[:3]) if bad else "")


def check_monotone() -> tuple[bool, str]:
    graphs = [g for n in range(1, 9) for g in F.all_trees(n)]
    graphs += [F.random_connected_graph(2 + s % 6, seed=s) for s in range(50)]
    bad = []
    for g in graphs:
        vals = [zq(g, q) for q in range(g.n + 1)]
        if vals != sorted(vals):
            bad.append(f"{g.name or g.edges}: {vals}")
    return not bad, f"{len(graphs)} graphs, chains Z_0..Z_n" + ("; " + "; ".join(bad[:3]) if bad else " nondecreasing")


def trace_runs(count: int = 50):
    """Seeded (graph, q, blue name, white name, seed) tuples for the trace check."""
    blues = {2: ("random", "cnk-q2", "greedy"), 3: ("random", "cnk-general", "greedy")}
    for s in range(count):
        n = 3 + s % 10
        q = 2 if s % 2 == 0 else 3
        yield F.cnk(n, 2), q, blues[q][(s // 2) % 3], f"protected-q{q}", s


def check_traces() -> tuple[bool, str]:
    bad, transitions, games = [], 0, 0
    for g, q, bname, wname, s in trace_runs(50):
        blue = make_blue(bname, g, q, seed=s)
        res = simulate(g, q, blue, make_white(wname, g, q, seed=s))
        transitions += len(res.trace)
        msgs = phi_trace_violations(g, res.trace, Q2 if q == 2 else Q3)
        games += bool(msgs)
        bad += [f"n={g.layout.size} q={q} {bname} seed={s}: {m}" for m in msgs]
    head = f"50 games, {transitions} transitions"
    if not bad:
        return True, head + ", all invariants hold"
    return False, head + f"; {len(bad)} violations in {games} games, e.g. " + "; ".join(bad[:2])


def check_general_q() -> tuple[bool, str]:
    bad, parts = [], []
    q, k = 3, 2
    for n in (8, 16, 32, 64):
        g = F.cnk(n, k)
        bound = zq_cnk_bounds(n, k, q).upper
        for wname in ("protected-q3", "random"):
            res = simulate(g, q, make_blue("cnk-general", g, q), make_white(wname, g, q, seed=n))
            if res.tokens > bound:
                bad.append(f"n={n} vs {wname}: {res.tokens} tokens > {bound:.2f}")
            bad += [f"n={n} vs {wname}: {m}" for m in general_trace_violations(g, res)]
            parts.append(f"n={n}/{wname}: {res.tokens}<={bound:.1f}")
    return not bad, "; ".join(bad or parts)


REMARK_LISTS = ([3], [4, 3], [5, 4, 3], [3, 3, 3, 3])


def check_inertia() -> tuple[bool, str]:
    bad, count = [], 0
    for leaves in REMARK_LISTS:
        g = star_forest_of_leaves(leaves)
        for q in (0, 1, 2, 5):
            count += 1
            rep = verify_remark(leaves, q, zq(g, q))
            if not rep.ok:
                bad.append(f"{leaves} q={q}: " + ", ".join(f"{n} {d}" for n, p, d in rep.checks if not p))
    return not bad, f"{count} witnesses" + ("; " + "; ".join(bad[:3]) if bad else ", inertia and nullity as claimed")


def check_recurrence() -> tuple[bool, str]:
    bad = []
    for l0 in range(1, 201):
        for i in range(61):
            if recurrence_l(i, l0) != recurrence_iterate(i, l0):
                bad.append(f"l0={l0} i={i}")
    for n in range(2, 1025):
        if recurrence_threshold(n) != math.ceil(math.log2(n)):
            bad.append(f"threshold({n})")
    assert isinstance(recurrence_l(3, 7), Fraction)
    return not bad, "12200 closed-form values, 1023 thresholds" + ("; " + ", ".join(bad[:5]) if bad else " exact")


def check_offer_minimality() -> tuple[bool, str]:
    bad, count = [], 0
    for n in range(1, 7):
        for g in F.connected_graphs(n):
            for q in (1, 2):
                count += 1
                a = zq_value(g, SolveConfig(q)).value
                b = zq_value(g, SolveConfig(q, minimal_offers_only=False)).value
                if a != b:
                    bad.append(f"{g.edges} q={q}: {a} vs {b}")
    return not bad, f"{count} (graph, q) pairs" + ("; " + "; ".join(bad[:3]) if bad else ", minimal offers suffice")


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "star-forest exactness", check_star_forests),
    (2, "Z_1 of cycle coronas", check_corona),
    (3, "C_{n,2} q=2 sandwich", check_cnk_q2),
    (4, "tree upper bound", check_tree_bound),
    (5, "Z_1 tree formula", check_z1_formula),
    (6, "edge deletion", check_edge_deletion),
    (7, "monotonicity in q", check_monotone),
    (8, "potential traces", check_traces),
    (9, "general-q strategy", check_general_q),
    (10, "inertia witnesses", check_inertia),
    (11, "recurrence", check_recurrence),
    (12, "offer minimality", check_offer_minimality),
]

SUITES = {
    "all": [c[0] for c in CRITERIA],
    "stars": [1, 10],
    "trees": [4, 5, 6, 7],
    "cnk": [2, 3, 8, 9],
    "solver": [7, 12],
    "traces": [8, 9],
    "quick": [2, 3, 5, 9, 11, 12],
}


def run_check(index: int) -> CheckResult:
    for i, title, fn in CRITERIA:
        if i == index:
            t = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failed criterion, reported as such
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            return CheckResult(i, title, ok, detail, time.perf_counter() - t)
    raise KeyError(f"no criterion {index}")


def run_suite(name: str = "all") -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return [run_check(i) for i in SUITES[name]]
