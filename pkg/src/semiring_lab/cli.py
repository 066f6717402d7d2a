"""Command-line front end.

Exit codes: 0 found / ok, 1 error, 2 not found, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import constructions as cons
from . import finite as fs
from .cyclic import lemma12_bound
from .engine import (
    REFERENCE_BUDGET,
    Budget,
    BudgetExhausted,
    InvalidStep,
    detect_unit,
    divisibility_witness,
    find_finite_order,
    format_derivation,
    parse_derivation,
    prove_equal,
    replay,
)
from .enumeration import enumerate_semirings, FILTERS, SEMIRING_LIMIT
from .io import (
    RunRecord,
    census_record,
    digest,
    dumps_semiring,
    loads_semiring,
    parse_presentation,
    read_semiring,
)
from .prufer import PruferElement, prufer_add, prufer_div_witnesses
from .terms import TermError

EXIT_OK, EXIT_ERROR, EXIT_NOT_FOUND, EXIT_BUDGET = 0, 1, 2, 3
MAX_BOUND_M = 20


class _Run:
    """Collects artifacts and writes a run record when ``--out`` is set."""

    def __init__(self, args, argv, input_text=None):
        self.args = args
        self.argv = list(argv)
        self.input_digest = digest(input_text) if input_text is not None else None
        self.t0 = time.perf_counter()
        self.artifacts: list[str] = []
        self.out = Path(args.out) if getattr(args, "out", None) else None
        args.run = self
        if self.out:
            self.out.mkdir(parents=True, exist_ok=True)

    def write(self, name: str, text: str) -> str | None:
        if self.out is None:
            return None
        path = self.out / name
        path.write_text(text, encoding="utf-8")
        self.artifacts.append(str(path))
        return str(path)

    def finish(self, outcome: str, budget: Budget | None = None) -> None:
        if self.out is None:
            return
        RunRecord(self.argv, self.input_digest, asdict(budget) if budget else None,
                  round(time.perf_counter() - self.t0, 6), outcome,
                  self.artifacts).append_to(self.out / "runs.jsonl")


def _budget(args) -> Budget:
    return Budget(args.max_degree, args.max_coeff, args.max_universe, args.max_rounds)


def _load_presentation(path):
    text = Path(path).read_text(encoding="utf-8")
    return parse_presentation(text), text


def _report_proof(run: _Run, p, d, name="proof.txt") -> None:
    text = format_derivation(d)
    where = run.write(name, text)
    if where:
        print(f"proof: {where} ({len(d)} steps)")
    else:
        print(text, end="")


def cmd_prove(args, argv) -> int:
    p, text = _load_presentation(args.presentation)
    run = _Run(args, argv, text)
    b = _budget(args)
    lhs, rhs = p.term(args.lhs), p.term(args.rhs)
    d = prove_equal(p, lhs, rhs, b)
    if d is None:
        print(f"NOT-FOUND: {p.fmt(lhs)} ~ {p.fmt(rhs)}")
        run.finish("not-found", b)
        return EXIT_NOT_FOUND
    replay(d)
    print(f"FOUND: {p.fmt(lhs)} ~ {p.fmt(rhs)}")
    _report_proof(run, p, d)
    run.finish("found", b)
    return EXIT_OK


def cmd_order(args, argv) -> int:
    p, text = _load_presentation(args.presentation)
    run = _Run(args, argv, text)
    b = _budget(args)
    target = p.term(args.target) if args.target else p.term(p.generators[0])
    w = find_finite_order(p, target, b)
    if w is None:
        print(f"NOT-FOUND: no m < n with m({p.fmt(target)}) ~ n({p.fmt(target)})")
        run.finish("not-found", b)
        return EXIT_NOT_FOUND
    replay(w.derivation)
    print(f"FOUND: ({w.m},{w.n})  {w.m}({p.fmt(target)}) ~ {w.n}({p.fmt(target)})")
    _report_proof(run, p, w.derivation)
    run.finish(f"found ({w.m},{w.n})", b)
    return EXIT_OK


def cmd_divisible(args, argv) -> int:
    p, text = _load_presentation(args.presentation)
    run = _Run(args, argv, text)
    b = _budget(args)
    target = p.term(args.target) if args.target else p.term(p.generators[0])
    w = divisibility_witness(p, args.n, target, b)
    if w is None:
        print(f"NOT-FOUND: no f with {p.fmt(target)} ~ {args.n}f")
        run.finish("not-found", b)
        return EXIT_NOT_FOUND
    replay(w.derivation)
    print(f"FOUND: f = {p.fmt(w.term)}")
    _report_proof(run, p, w.derivation)
    run.finish(f"found f = {p.fmt(w.term)}", b)
    return EXIT_OK


def cmd_unit(args, argv) -> int:
    p, text = _load_presentation(args.presentation)
    run = _Run(args, argv, text)
    b = _budget(args)
    w = detect_unit(p, b)
    if w is None:
        print("NOT-FOUND: no u with w ~ wu")
        run.finish("not-found", b)
        return EXIT_NOT_FOUND
    replay(w.derivation)
    print(f"FOUND: unit = {p.fmt(w.term)}")
    _report_proof(run, p, w.derivation)
    run.finish(f"found unit = {p.fmt(w.term)}", b)
    return EXIT_OK


def cmd_replay(args, argv) -> int:
    p, text = _load_presentation(args.presentation)
    run = _Run(args, argv, text)
    d = parse_derivation(Path(args.proof).read_text(encoding="utf-8"), p)
    try:
        end = replay(d)
    except InvalidStep as exc:
        print(f"INVALID: {exc}")
        run.finish("invalid")
        return EXIT_ERROR
    print(f"VALID: {p.fmt(d.start)} ~ {p.fmt(end)} ({len(d)} steps)")
    run.finish("valid")
    return EXIT_OK


def _flags(s: fs.FiniteSemiring) -> dict[str, bool]:
    return {name: bool(pred(s)) for name, pred in FILTERS.items()}


def cmd_analyze(args, argv) -> int:
    text = Path(args.table).read_text(encoding="utf-8")
    run = _Run(args, argv, text)
    s = loads_semiring(text)
    problems = fs.validate(s)
    if problems:
        print("INVALID")
        for msg in problems:
            print(f"  {msg}")
        run.finish("invalid")
        return EXIT_ERROR
    print(f"order: {s.n}")
    for name, val in _flags(s).items():
        print(f"{name}: {str(val).lower()}")
    print(f"max-ord: {fs.is_bounded_report(s)}")
    orders = ", ".join(f"{s.label(a)}:({c.type.k},{c.type.t})"
                       for a in range(s.n) for c in [fs.element_order(s, a)])
    print(f"element (index,period): {orders}")
    sigma = fs.sigma_congruence(s)
    label = "id" if sigma == fs.identity_partition(s.n) else str(
        [[s.label(x) for x in b] for b in fs.partition_blocks(sigma)])
    print(f"sigma: {label}")
    unit = fs.mul_unit(s)
    print(f"unit: {'none' if unit is None else s.label(unit)}")
    gens = fs.one_generators(s)
    print(f"one-generators: {[s.label(g) for g in gens]}")
    if s.n <= fs.IDEAL_LIMIT:
        print(f"ideals: {len(fs.ideals(s))}  ideal-simple: {str(fs.is_ideal_simple(s)).lower()}")
    if s.n <= fs.CONGRUENCE_LIMIT:
        print(f"congruences: {len(fs.enumerate_congruences(s))}")
    wit = fs.idempotent_ideal_witness(s)
    shown = "none" if wit is None else ("0" if wit is fs.ADJOINED_ZERO else s.label(wit))
    print(f"idempotent-ideal-witness: {shown}")
    run.finish("ok")
    return EXIT_OK


def cmd_enumerate(args, argv) -> int:
    run = _Run(args, argv)
    lines = []
    for s in enumerate_semirings(args.order, up_to_iso=args.up_to_iso,
                                 filters=args.filter or (), jobs=args.jobs):
        lines.append(census_record(s, _flags(s)))
    body = "\n".join(lines) + ("\n" if lines else "")
    where = run.write(f"census-{args.order}.jsonl", body)
    if where is None:
        sys.stdout.write(body)
    print(f"count: {len(lines)}", file=sys.stderr if where is None else sys.stdout)
    run.finish(f"count {len(lines)}")
    return EXIT_OK


# conjA: divisible but not idempotent; equiv: idempotent/divisible/uniquely divisible disagree
HARNESSES = ("conjA", "equiv")


def cmd_harness(args, argv) -> int:
    run = _Run(args, argv)
    if args.max_order > SEMIRING_LIMIT:
        print(f"error: --max-order is limited to {SEMIRING_LIMIT}", file=sys.stderr)
        return EXIT_ERROR
    hits = []
    total = 0
    for n in range(1, args.max_order + 1):
        for s in enumerate_semirings(n, jobs=args.jobs):
            total += 1
            if args.name == "conjA":
                bad = fs.is_add_divisible(s) and not fs.is_add_idempotent(s)
            else:
                vals = {fs.is_add_idempotent(s), fs.is_add_divisible(s), fs.is_uniquely_divisible(s)}
                bad = len(vals) != 1
            if bad:
                hits.append(s)
    body = "".join(dumps_semiring(s) for s in hits)
    if hits:
        run.write(f"harness-{args.name}-hits.json", body)
    print(f"harness {args.name}: checked {total} semirings of order <= {args.max_order}, "
          f"{len(hits)} counterexamples")
    run.finish(f"{len(hits)} hits")
    return EXIT_OK if not hits else EXIT_ERROR


def _parse_group(text: str) -> np.ndarray:
    factors = text.replace(" ", "").split("x")
    table = None
    for f in factors:
        m = re.fullmatch(r"Z(\d+)", f)
        if not m or int(m.group(1)) < 1:
            raise ValueError(f"bad group {text!r}; use forms like Z2, Z2xZ3")
        g = cons.cyclic_group(int(m.group(1)))
        table = g if table is None else cons.group_product(table, g)
    return table


def _parse_prufer(text: str, p: int):
    q = Fraction(text)
    den = q.denominator
    e = 0
    while den % p == 0:
        den //= p
        e += 1
    if den != 1:
        raise ValueError(f"{text} is not a p-power fraction for p={p}")
    return PruferElement.make(p, q.numerator, e)


def cmd_construct(args, argv) -> int:
    run = _Run(args, argv)
    kind = args.kind
    if kind == "prufer":
        x = _parse_prufer(args.x, args.p)
        if args.y is not None:
            y = _parse_prufer(args.y, args.p)
            print(f"{x} + {y} = {prufer_add(x, y)}")
        if args.n is not None:
            sols = prufer_div_witnesses(x, args.n)
            print(f"{args.n}b = {x}: {len(sols)} solutions: {', '.join(map(str, sols))}")
        run.finish("ok")
        return EXIT_OK
    if kind == "uofg":
        s = cons.u_of_group(_parse_group(args.group))
    elif kind == "zeromult":
        s = cons.zero_mult_semiring(_parse_group(args.group))
    elif kind == "constmult":
        base = read_semiring(args.table) if args.table else None
        add = base.add if base is not None else _parse_group(args.group)
        s = cons.const_mult_semiring(add, args.e)
    elif kind == "product":
        s = cons.product(read_semiring(args.tables[0]), read_semiring(args.tables[1]))
    elif kind == "usemi":
        base = read_semiring(args.table)
        els = list(cons.u_elements(base, args.max_n))
        action = [[cons.u_act(base, a, x) for x in range(base.n)] for a in els]
        doc = {"elements": [f"({a.n},{'o' if a.a is None else base.label(a.a)})" for a in els],
               "acts_on": list(base.labels), "action": action,
               "axiom_violations": cons.u_axiom_violations(base, min(args.max_n, 2))}
        text = json.dumps(doc, indent=1)
        if run.write("usemi.json", text) is None:
            print(text)
        run.finish("ok")
        return EXIT_OK
    elif kind == "ts":
        ts = cons.t_s_semiring(read_semiring(args.table), args.w)
        s = ts.semiring
        print(f"# identity: {s.label(ts.identity)}  phi_w: {s.label(ts.phi_w)}", file=sys.stderr)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(kind)
    problems = fs.validate(s)
    text = dumps_semiring(s)
    if run.write(f"{kind}.json", text) is None:
        sys.stdout.write(text)
    if problems:
        print("warning: " + "; ".join(problems), file=sys.stderr)
    run.finish("ok" if not problems else "invalid")
    return EXIT_OK if not problems else EXIT_ERROR


def cmd_bound(args, argv) -> int:
    if not 1 <= args.m <= MAX_BOUND_M:
        print(f"error: m must be in 1..{MAX_BOUND_M}", file=sys.stderr)
        return EXIT_ERROR
    r, n = lemma12_bound(args.m)
    print(f"r = {r}\nn = {n}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors must not collide with the NOT-FOUND exit code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ref = REFERENCE_BUDGET
    common = _Parser(add_help=False)
    common.add_argument("--out", help="directory for proof/census files and runs.jsonl")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    budget = _Parser(add_help=False)
    budget.add_argument("--max-degree", type=int, default=ref.max_degree)
    budget.add_argument("--max-coeff", type=int, default=ref.max_coeff)
    budget.add_argument("--max-universe", type=int, default=ref.max_universe)
    budget.add_argument("--max-rounds", type=int, default=ref.max_rounds)

    ap = _Parser(prog="semiring-lab", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("prove", parents=[common, budget], help="search a derivation lhs ~ rhs")
    sp.add_argument("presentation")
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp.set_defaults(func=cmd_prove)

    sp = sub.add_parser("order", parents=[common, budget], help="search m < n with m t ~ n t")
    sp.add_argument("presentation")
    sp.add_argument("--target")
    sp.set_defaults(func=cmd_order)

    sp = sub.add_parser("divisible", parents=[common, budget], help="search f with t ~ n f")
    sp.add_argument("presentation")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--target")
    sp.set_defaults(func=cmd_divisible)

    sp = sub.add_parser("unit", parents=[common, budget], help="search u with w ~ wu")
    sp.add_argument("presentation")
    sp.set_defaults(func=cmd_unit)

    sp = sub.add_parser("replay", parents=[common], help="check a proof file")
    sp.add_argument("presentation")
    sp.add_argument("proof")
    sp.set_defaults(func=cmd_replay)

    sp = sub.add_parser("analyze", parents=[common], help="report predicates of a semiring table")
    sp.add_argument("table")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("enumerate", parents=[common], help="census of semirings of one order")
    sp.add_argument("--order", type=int, required=True, help=f"1..{SEMIRING_LIMIT}")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--up-to-iso", dest="up_to_iso", action="store_true", default=True)
    grp.add_argument("--labelled", dest="up_to_iso", action="store_false")
    sp.add_argument("--filter", action="append",
                    help=f"repeatable; one of {sorted(FILTERS)}, optionally prefixed 'not-'")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("harness", parents=[common], help="finite counterexample search")
    sp.add_argument("name", choices=HARNESSES)
    sp.add_argument("--max-order", type=int, default=3)
    sp.set_defaults(func=cmd_harness)

    sp = sub.add_parser("construct", parents=[common], help="build a semiring construction")
    sp.add_argument("kind", choices=["uofg", "zeromult", "constmult", "product", "usemi", "ts",
                                     "prufer"])
    sp.add_argument("tables", nargs="*", help="table files (product takes two)")
    sp.add_argument("--group", help="finite abelian group such as Z2 or Z2xZ2")
    sp.add_argument("--table", help="semiring table file")
    sp.add_argument("--e", type=int, default=0, help="idempotent for constmult")
    sp.add_argument("--w", type=int, default=0, help="generator index for ts")
    sp.add_argument("--max-n", type=int, default=3, help="truncation for usemi")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--x", default="0")
    sp.add_argument("--y")
    sp.add_argument("--n", type=int)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("bound", help=f"factorial order bound; m is capped at {MAX_BOUND_M}")
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=cmd_bound)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, argv)
    except BudgetExhausted as exc:
        print(f"BUDGET-EXHAUSTED: {exc.reason}")
        run = getattr(args, "run", None)
        if run is not None:
            run.finish(f"budget-exhausted: {exc.reason}", _budget(args))
        return EXIT_BUDGET
    except (TermError, fs.SemiringError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
