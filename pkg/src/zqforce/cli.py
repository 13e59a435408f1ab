"""Command-line entry point: ``zqforce <command> [options]``.

Exit codes: 0 ok, 1 bad input, 2 state budget exhausted, 3 a check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

from . import families
from .bounds import CSV_HEADER, bound_report
from .certify import certify_lower, certify_upper
from .engine import EXHAUSTIVE, SINGLE, Force, IllegalMove, Offer, Spend, apply_move, legal_forces, resolve_rule3
from .graph import GameState, Graph, bits, format_graph_text, mask_of, parse_graph_text, white_components
from .inertia import star_forest_of_leaves, verify_remark
from .simulate import simulate
from .solver import STANDARD, STAR, BudgetExceeded, SolveConfig, zq_star_value, zq_value
from .strategies import BLUE_NAMES, WHITE_NAMES, PolicyError, make_blue, make_white
from .transcript import Step, format_transcript, force, rule3, spend

OK, INPUT_ERROR, BUDGET, CHECK_FAILED = 0, 1, 2, 3


class CheckFailed(Exception):
    pass


def load_graph(source: str) -> Graph:
    """A family string such as ``cnk:n=4,k=2`` or a path to a graph file."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            g = parse_graph_text(fh.read())
        return g.relabel_name(os.path.basename(source))
    return families.build(source)


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def _set_text(mask: int) -> str:
    return " ".join(map(str, bits(mask)))


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands ----------------------------------------------------------------


def cmd_solve(args) -> int:
    g = load_graph(args.graph)
    variant = STAR if args.variant == "star" else STANDARD
    cfg = SolveConfig(args.q, variant=variant, rule3=args.rule3, budget=args.budget,
                      minimal_offers_only=not args.all_offers)
    blue = mask_of(_ints(args.initial_blue)) if args.initial_blue else 0
    res = (zq_star_value if variant == STAR else zq_value)(g, cfg, blue)
    if args.format == "csv":
        _write(args, _csv([[g.name, args.q, variant, res.value]], ["graph", "q", "variant", "value"]))
        return OK
    text = (
        f"graph: {g.name or '(file)'} (n={g.n}, m={g.m})\n"
        f"q: {args.q}  variant: {variant}  rule3: {args.rule3}\n"
        f"value: {res.value}\n"
        f"states expanded: {res.stats.expanded}  memo hits: {res.stats.memo_hits}  "
        f"time: {res.stats.seconds:.3f}s\n"
        "principal line:\n" + format_transcript(res.principal_line)
    )
    _write(args, text)
    return OK


def cmd_bound(args) -> int:
    reports = []
    for src in args.graph:
        g = load_graph(src)
        for q in _ints(args.q):
            exact = None
            if args.exact:
                exact = zq_value(g, SolveConfig(q, budget=args.budget)).value
            reports.append(bound_report(g, q, exact))
    bad = [r for r in reports if not r.consistent()]
    if args.format == "csv":
        _write(args, _csv([r.row() for r in reports], CSV_HEADER))
    else:
        lines = []
        for r in reports:
            ex = "" if r.exact is None else f"  exact {r.exact}"
            note = "".join(f"  [{n}]" for n in r.notes)
            lines.append(f"{r.graph} q={r.q}: {r.lower} ({r.lower_src}) <= Z_q <= {r.upper} ({r.upper_src}){ex}{note}")
        _write(args, "\n".join(lines) + "\n")
    if bad:
        raise CheckFailed(f"{len(bad)} report(s) with lower > exact or exact > upper")
    return OK


def cmd_certify(args) -> int:
    if not args.blue and not args.white:
        raise ValueError("certify needs --blue and/or --white")
    g = load_graph(args.graph)
    q = int(args.q)
    lines, rows = [], []
    lo = hi = None
    if args.blue:
        variant = STAR if args.variant == "star" else STANDARD
        pol = make_blue(args.blue, g, q, seed=args.seed, variant=variant, rule3=args.rule3)
        hi = certify_upper(g, q, pol, semantics=args.rule3, variant=variant, budget=args.budget)
        lines.append(f"upper bound from Blue policy {args.blue}: {hi}")
        rows.append(["upper", args.blue, hi])
    if args.white:
        pol = make_white(args.white, g, q, seed=args.seed, rule3=args.rule3)
        lo = certify_lower(g, q, pol, semantics=args.rule3, budget=args.budget)
        lines.append(f"lower bound from White policy {args.white}: {lo}")
        rows.append(["lower", args.white, lo])
    exact = None
    if args.exact:
        exact = zq_value(g, SolveConfig(q, rule3=args.rule3, budget=args.budget)).value
        lines.append(f"exact Z_q: {exact}")
        rows.append(["exact", "solver", exact])
    if args.format == "csv":
        _write(args, _csv([[g.name, q] + r for r in rows], ["graph", "q", "kind", "source", "value"]))
    else:
        _write(args, f"graph: {g.name} q={q}\n" + "\n".join(lines) + "\n")
    if exact is not None and ((lo is not None and lo > exact) or (hi is not None and hi < exact)):
        raise CheckFailed("certified bound contradicts the exact value")
    if lo is not None and hi is not None and lo > hi:
        raise CheckFailed("certified lower bound exceeds certified upper bound")
    return OK


def cmd_simulate(args) -> int:
    g = load_graph(args.graph)
    q = int(args.q)
    blue = make_blue(args.blue, g, q, seed=args.seed, rule3=args.rule3)
    white = make_white(args.white, g, q, seed=args.seed, rule3=args.rule3)
    res = simulate(g, q, blue, white, semantics=args.rule3, max_steps=args.max_steps)
    if args.format == "csv":
        rows = [
            [i, s.format(), t.cost, t.option, t.white_flag, _set_text(t.after & ~t.before)]
            for i, (s, t) in enumerate(zip(res.steps, res.trace))
        ]
        _write(args, _csv(rows, ["step", "move", "cost", "option", "white_flag", "colored"]))
        return OK
    opts = {}
    for t in res.trace:
        opts[t.option] = opts.get(t.option, 0) + 1
    summary = ", ".join(f"{k or '-'} x{v}" for k, v in sorted(opts.items()))
    text = (
        f"graph: {g.name} q={q}  blue={args.blue} white={args.white}\n"
        f"tokens: {res.tokens}\n"
        f"options: {summary}\n"
        "transcript:\n" + format_transcript(res.steps)
    )
    _write(args, text)
    return OK


def cmd_gen(args) -> int:
    g = load_graph(args.graph)
    text = f"# {g.name}\n" + format_graph_text(g) if g.name else format_graph_text(g)
    _write(args, text)
    return OK


def cmd_inertia(args) -> int:
    leaves = _ints(args.leaves)
    q = int(args.q)
    zq = None
    if args.exact:
        zq = zq_value(star_forest_of_leaves(leaves), SolveConfig(q, budget=args.budget)).value
    rep = verify_remark(leaves, q, zq)
    i = rep.inertia
    lines = [f"leaves={leaves} q={q}", f"inertia: (+{i.positive}, -{i.negative}, 0x{i.nullity})"]
    if zq is not None:
        lines.append(f"Z_q: {zq}")
    lines += [f"  [{'PASS' if p else 'FAIL'}] {name} {detail}".rstrip() for name, p, detail in rep.checks]
    _write(args, "\n".join(lines) + "\n")
    if not rep.ok:
        raise CheckFailed("inertia checks failed")
    return OK


def cmd_verify(args) -> int:
    from .acceptance import run_suite

    results = []
    for r in run_suite(args.suite):
        results.append(r)
        if not args.out and args.format != "csv":
            print(r.line(), flush=True)
    if args.format == "csv":
        _write(args, _csv([[r.index, r.title, "pass" if r.ok else "fail", r.detail] for r in results],
                          ["criterion", "title", "result", "detail"]))
    elif args.out:
        _write(args, "".join(r.line() + "\n" for r in results))
    failed = [r.index for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed", file=sys.stderr)
    if failed:
        raise CheckFailed(f"failed criteria: {failed}")
    return OK


# -- interactive play ---------------------------------------------------------


PLAY_HELP = """commands:
  spend v            pay a token to color v
  force u w          color w, the only white neighbor of u
  offer i j ...      offer white components (ids as listed) to White
  respond i j ...    (as White) hand back these offered components
  show               print the state again
  quit               stop and save the transcript
"""


def _describe(state: GameState, tokens: int) -> str:
    comps = white_components(state)
    lines = [f"tokens spent: {tokens}", f"blue: {_set_text(state.blue) or '-'}"]
    lines += [f"  component {i}: {_set_text(c)}" for i, c in enumerate(comps)]
    forces = legal_forces(state)
    lines.append("forces: " + (", ".join(f"{u}->{w}" for u, w in forces) or "none"))
    return "\n".join(lines)


def play(g: Graph, q: int, human: str, opponent, inp, out, semantics: str = SINGLE) -> tuple[list[Step], int]:
    """Run a game with one human side; returns (transcript, tokens)."""
    state, tokens, steps = GameState(g, 0), 0, []

    def ask(prompt):
        out(prompt)
        line = inp()
        if line is None:
            raise EOFError
        return line.strip()

    try:
        while not state.done():
            if human == "blue":
                out(_describe(state, tokens))
                cmd = ask("blue> ").split()
                if not cmd:
                    continue
                head, rest = cmd[0].lower(), cmd[1:]
                try:
                    if head == "quit":
                        break
                    if head == "help":
                        out(PLAY_HELP)
                    elif head == "show":
                        continue
                    elif head == "spend" and len(rest) == 1:
                        state, c = apply_move(state, Spend(int(rest[0])))
                        tokens += c
                        opponent.observe_spend(state, int(rest[0]))
                        steps.append(spend(int(rest[0])))
                    elif head == "force" and len(rest) == 2:
                        state, _ = apply_move(state, Force(int(rest[0]), int(rest[1])))
                        steps.append(force(int(rest[0]), int(rest[1])))
                    elif head == "offer" and rest:
                        comps = white_components(state)
                        offer = Offer(tuple(sorted(set(int(x) for x in rest))), q)
                        if len(offer.components) < q + 1 or any(not 0 <= i < len(comps) for i in offer.components):
                            raise IllegalMove(f"an offer needs at least {q + 1} listed components")
                        resp = tuple(opponent.respond(state, offer, comps))
                        conceded = resolve_rule3(state, offer, resp, comps)
                        out(f"White hands back {list(resp)}; forces: "
                            + (", ".join(f"{u}->{w}" for u, w in conceded) or "none"))
                        chosen = ()
                        if conceded:
                            pick = conceded[0]
                            if len(conceded) > 1:
                                ans = ask("pick u w (blank for first)> ").split()
                                if ans and (int(ans[0]), int(ans[1])) in conceded:
                                    pick = (int(ans[0]), int(ans[1]))
                            state = state.with_blue(1 << pick[1])
                            chosen = (pick,)
                        steps.append(rule3(offer.components, resp, chosen))
                    else:
                        out("unrecognised command; type help")
                except (IllegalMove, ValueError) as exc:
                    out(f"illegal: {exc}")
            else:
                move = opponent.decide(state)
                if isinstance(move, (Spend, Force)):
                    state, c = apply_move(state, move)
                    tokens += c
                    steps.append(spend(move.v) if isinstance(move, Spend) else force(move.u, move.w))
                    out(steps[-1].format())
                    continue
                comps = white_components(state)
                offer = move.offer
                out(_describe(state, tokens))
                out(f"Blue offers components {list(offer.components)}")
                while True:
                    ans = ask("white> ").split()
                    if ans and ans[0] == "quit":
                        raise EOFError
                    ids = ans[1:] if ans and ans[0] == "respond" else ans
                    try:
                        resp = tuple(sorted(set(int(x) for x in ids)))
                    except ValueError:
                        resp = ()
                    if resp and set(resp) <= set(offer.components):
                        break
                    out("respond with a nonempty subset of the offered component ids")
                conceded = resolve_rule3(state, offer, resp, comps)
                f = opponent.choose_force(state, offer, resp, conceded) if conceded else None
                if f is not None:
                    state = state.with_blue(1 << f[1])
                steps.append(rule3(offer.components, resp, (tuple(f),) if f is not None else ()))
                out(steps[-1].format())
    except EOFError:
        pass
    out(f"game {'over' if state.done() else 'stopped'}; tokens spent: {tokens}")
    return steps, tokens


def cmd_play(args) -> int:
    g = load_graph(args.graph)
    q = int(args.q)
    if args.human == "blue":
        opp = make_white(args.white or "full", g, q, seed=args.seed, rule3=args.rule3)
    else:
        opp = make_blue(args.blue or "greedy", g, q, seed=args.seed, rule3=args.rule3)

    def inp():
        line = sys.stdin.readline()
        return line if line else None

    steps, _ = play(g, q, args.human, opp, inp, print, args.rule3)
    text = format_transcript(steps)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"transcript saved to {args.out}")
    else:
        sys.stdout.write(text)
    return OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", default="1", help="game parameter (bound accepts a comma list)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("text", "csv"), default="text")
    common.add_argument("--rule3", choices=(SINGLE, EXHAUSTIVE), default=SINGLE)
    common.add_argument("--budget", type=int, default=2_000_000)

    p = argparse.ArgumentParser(prog="zqforce", description="Z_q-forcing game solver and toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="exact Z_q(G) with an optimal line")
    s.add_argument("--variant", choices=("standard", "star"), default="standard")
    s.add_argument("--all-offers", action="store_true", help="explore offers of every size")
    s.add_argument("--initial-blue", default="", help="comma list of initially blue vertices")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bound", parents=[common], help="closed-form bounds as CSV or text")
    b.add_argument("--graph", action="append", help="family string or graph file (repeatable)")
    b.add_argument("--exact", action="store_true", help="also run the exact solver")
    b.set_defaults(func=cmd_bound)

    c = sub.add_parser("certify", parents=[common], help="policy-fixed upper/lower bounds")
    c.add_argument("--blue", help=f"Blue policy ({', '.join(BLUE_NAMES)})")
    c.add_argument("--white", help=f"White policy ({', '.join(WHITE_NAMES)})")
    c.add_argument("--variant", choices=("standard", "star"), default="standard")
    c.add_argument("--exact", action="store_true")
    c.set_defaults(func=cmd_certify)

    m = sub.add_parser("simulate", parents=[common], help="play two policies against each other")
    m.add_argument("--blue", required=True)
    m.add_argument("--white", required=True)
    m.add_argument("--max-steps", type=int)
    m.set_defaults(func=cmd_simulate)

    gsub = sub.add_parser("gen", parents=[common], help="write a family member in graph text format")
    gsub.set_defaults(func=cmd_gen)

    i = sub.add_parser("inertia", parents=[common], help="check a star-forest inertia witness")
    i.add_argument("--leaves", required=True, help="leaf counts, descending, e.g. 5,4,3")
    i.add_argument("--exact", action="store_true", help="compare nullity with the solver's Z_q")
    i.set_defaults(func=cmd_inertia)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    v.add_argument("--suite", default="all")
    v.set_defaults(func=cmd_verify)

    pl = sub.add_parser("play", parents=[common], help="play interactively against a policy")
    pl.add_argument("--human", choices=("blue", "white"), default="blue")
    pl.add_argument("--blue", help="Blue policy when the human plays White")
    pl.add_argument("--white", help="White policy when the human plays Blue")
    pl.set_defaults(func=cmd_play)

    graph_help = "family string (e.g. cnk:n=4,k=2) or graph file"
    for sp in (s, c, m, gsub, pl):
        sp.add_argument("--graph", help=graph_help)
    for sp in (i, v):
        sp.set_defaults(graph=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors, which is our budget code
        return OK if exc.code in (0, None) else INPUT_ERROR
    if not args.graph and args.command not in ("inertia", "verify"):
        print(f"error: {args.command} needs --graph", file=sys.stderr)
        return INPUT_ERROR
    if args.command not in ("bound",):
        try:
            if "," in args.q or int(args.q) < 0:
                raise ValueError
        except ValueError:
            print(f"error: --q must be a single non-negative integer for {args.command}", file=sys.stderr)
            return INPUT_ERROR
        args.q = int(args.q)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except (CheckFailed, PolicyError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return CHECK_FAILED
    except (ValueError, KeyError, OSError, IllegalMove) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
