"""Policy-fixed game values.

``certify_upper`` fixes Blue's policy and lets White answer every offer in
every possible way, so its value bounds Z_q from above.  ``certify_lower``
fixes White's policy and minimizes over all Blue play, so its value bounds
Z_q from below.  Both memoize on (blue set, policy memory): a policy's
future behavior is a function of the state and what it remembers.
"""

from __future__ import annotations

from itertools import combinations

from .engine import (
    EXHAUSTIVE,
    SINGLE,
    Deactivate,
    Force,
    IllegalMove,
    Offer,
    Rule3,
    Spend,
    apply_move,
    closure_in_view,
    deactivation_candidates,
    resolve_rule3,
    responses,
)
from .graph import GameState, Graph, activity, bits, white_components
from .solver import INF, STANDARD, STAR, BudgetExceeded
from .strategies.base import BluePolicy, PolicyError, WhitePolicy


class _Search:
    def __init__(self, g: Graph, q: int, budget: int):
        self.g, self.q, self.budget = g, q, budget
        self.expanded = 0

    def tick(self):
        self.expanded += 1
        if self.expanded > self.budget:
            raise BudgetExceeded(f"state budget {self.budget} exhausted")


def deactivation_ends(g: Graph, q: int, blue: int, memo: dict | None = None) -> set[int]:
    """Every blue set in which a deactivation started at ``blue`` can stop."""
    memo = {} if memo is None else memo
    if blue in memo:
        return memo[blue]
    out: set[int] = set()
    state = GameState(g, blue)
    for w in deactivation_candidates(state):
        nb = blue | 1 << w
        if activity(GameState(g, nb)) <= q:
            out.add(nb)
        else:
            out |= deactivation_ends(g, q, nb, memo)
    memo[blue] = out
    return out


def certify_upper(g: Graph, q: int, policy: BluePolicy, initial_blue: int = 0, semantics: str = SINGLE,
                  variant: str = STANDARD, budget: int = 2_000_000) -> int:
    """Worst case over all White behavior of the tokens ``policy`` spends."""
    search = _Search(g, q, budget)
    memo: dict = {}
    on_stack: set = set()
    dmemo: dict = {}
    full = g.full
    start_mem = policy.get_memory()

    def fail(blue, msg):
        raise PolicyError(f"{policy.name} at blue={sorted(bits(blue))}: {msg}")

    def value(blue: int, mem) -> int:
        if blue == full:
            return 0
        key = (blue, mem)
        if key in memo:
            return memo[key]
        if key in on_stack:
            fail(blue, "policy cycles without progress")
        search.tick()
        on_stack.add(key)
        policy.set_memory(mem)
        state = GameState(g, blue)
        move = policy.decide(state)
        mem1 = policy.get_memory()
        if isinstance(move, (Spend, Force)):
            try:
                nxt, cost = apply_move(state, move)
            except IllegalMove as exc:
                fail(blue, str(exc))
            best = cost + value(nxt.blue, mem1)
        elif isinstance(move, Rule3):
            if variant != STANDARD:
                fail(blue, "Rule 3 offered in the deactivation variant")
            best = _offer_worst(state, move.offer, mem1)
        elif isinstance(move, Deactivate):
            if variant != STAR:
                fail(blue, "deactivation requested in the standard game")
            if activity(state) < q + 1:
                fail(blue, "deactivation with activity at most q")
            best = max(value(e, mem1) for e in deactivation_ends(g, q, blue, dmemo))
        else:
            fail(blue, f"unknown move {move!r}")
        on_stack.discard(key)
        memo[key] = best
        return best

    def _offer_worst(state, offer, mem1):
        comps = white_components(state)
        if offer.q != q or any(not 0 <= i < len(comps) for i in offer.components):
            fail(state.blue, f"malformed offer {offer}")
        worst = -1
        for resp in responses(offer):
            forces = resolve_rule3(state, offer, resp, comps)
            if semantics == EXHAUSTIVE:
                view = 0
                for i in resp:
                    view |= comps[i]
                nb = closure_in_view(state, view).blue
                if nb == state.blue and (nb, mem1) in on_stack:
                    fail(state.blue, f"offer {offer.components} is not winning (response {resp})")
                v = value(nb, mem1)
            else:
                policy.set_memory(mem1)
                f = policy.choose_force(state, offer, resp, forces)
                mem2 = policy.get_memory()
                if f is None:
                    # a null outcome is fine as long as the policy moves on
                    if (state.blue, mem2) in on_stack:
                        fail(state.blue, f"offer {offer.components} is not winning (response {resp})")
                    v = value(state.blue, mem2)
                else:
                    if tuple(f) not in {tuple(x) for x in forces}:
                        fail(state.blue, f"force {f} not conceded by response {resp}")
                    v = value(state.blue | 1 << f[1], mem2)
            worst = max(worst, v)
        return worst

    try:
        return value(initial_blue, start_mem)
    finally:
        policy.set_memory(start_mem)


class LowerSearch:
    """Exhaustive Blue against a fixed White policy, memoized on
    (blue set, White memory).  ``line`` reconstructs an optimal Blue play."""

    def __init__(self, g: Graph, q: int, policy: WhitePolicy, minimal_offers_only: bool = False,
                 semantics: str = SINGLE, budget: int = 2_000_000):
        self.g, self.q, self.policy = g, q, policy
        self.minimal_offers_only, self.semantics = minimal_offers_only, semantics
        self.search = _Search(g, q, budget)
        self.exact: dict = {}
        self.lower: dict = {}

    def successors(self, state, offer, wmem):
        comps = white_components(state)
        self.policy.set_memory(wmem)
        resp = tuple(self.policy.respond(state, offer, comps))
        wmem2 = self.policy.get_memory()
        if not resp or not set(resp) <= set(offer.components) or len(set(resp)) != len(resp):
            raise PolicyError(f"{self.policy.name} returned illegal response {resp} to {offer.components}")
        if self.semantics == EXHAUSTIVE:
            view = 0
            for i in resp:
                view |= comps[i]
            nb = closure_in_view(state, view).blue
            return resp, ([nb] if nb != state.blue else []), wmem2
        forces = resolve_rule3(state, offer, resp, comps)
        return resp, sorted({state.blue | 1 << w for _, w in forces}), wmem2

    def moves(self, blue, wmem):
        """Yield (label, cost, next blue, next memory) in search order."""
        g = self.g
        white = g.full & ~blue
        for u in bits(blue):
            wn = g.nbr[u] & white
            if wn and wn & (wn - 1) == 0:
                yield f"FORCE {u} {wn.bit_length() - 1}", 0, blue | wn, wmem
        state = GameState(g, blue)
        k = len(white_components(state))
        top = self.q + 1 if self.minimal_offers_only else k
        for size in range(self.q + 1, top + 1):
            for combo in combinations(range(k), size):
                resp, succ, wmem2 = self.successors(state, Offer(combo, self.q), wmem)
                for nb in succ:
                    w = (nb & ~blue).bit_length() - 1
                    yield f"RULE3 offer={combo} response={resp} -> {w}", 0, nb, wmem2
        for v in bits(white):
            nb = blue | 1 << v
            self.policy.set_memory(wmem)
            self.policy.observe_spend(GameState(g, nb), v)
            yield f"SPEND {v}", 1, nb, self.policy.get_memory()

    def value(self, blue: int, wmem, cap: int = INF) -> int:
        if blue == self.g.full:
            return 0
        key = (blue, wmem)
        if key in self.exact:
            return self.exact[key]
        lb = self.lower.get(key, 0)
        if lb >= cap:
            return lb
        self.search.tick()
        best = cap
        for _, cost, nb, wm in self.moves(blue, wmem):
            if cost >= best:
                continue
            c = cost + self.value(nb, wm, best - cost)
            if c < best:
                best = c
                if best == 0:
                    break
        if best < cap:
            self.exact[key] = best
            return best
        self.lower[key] = max(lb, cap)
        return cap

    def line(self, blue: int, wmem) -> list[str]:
        out = []
        while blue != self.g.full:
            target = self.value(blue, wmem)
            for label, cost, nb, wm in self.moves(blue, wmem):
                if cost + self.value(nb, wm) == target:
                    out.append(label)
                    blue, wmem = nb, wm
                    break
        return out


def certify_lower(g: Graph, q: int, policy: WhitePolicy, initial_blue: int = 0,
                  minimal_offers_only: bool = False, semantics: str = SINGLE,
                  budget: int = 2_000_000) -> int:
    """Fewest tokens any Blue play needs against the fixed White ``policy``.

    Offers of every size are explored by default: a fixed White policy need
    not treat a super-offer like its sub-offers.  Responses that concede
    nothing are dominated null moves and are skipped.
    """
    start_mem = policy.get_memory()
    try:
        return LowerSearch(g, q, policy, minimal_offers_only, semantics, budget).value(initial_blue, start_mem)
    finally:
        policy.set_memory(start_mem)
