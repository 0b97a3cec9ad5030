"""Command-line front end.

Exit codes: 0 success, 1 failed verification or failed grid, 2 usage or
parse errors (including malformed certificate files), 3 fuel exhaustion,
4 resource caps (memo table, saturation entries).
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import product
from pathlib import Path

from .core import (ClosedFormUnavailable, FuelExhausted, ResourceCapExceeded,
                   ack_closed, ack_memo, ack_naive)
from .domain import (DomCertificate, certificate_build, certificate_verify,
                     domain_saturate_U, graph_saturate_ack, graph_saturate_U)
from .machine import RuleId, Stack, ackloop, acklist, trace_render
from .rewrite import (Mode, RuleSyntaxError, divergence_search, parse_rules,
                      replay_witness, run)

DEFAULT_FUEL = 10**6

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_FUEL = 3
EXIT_CAP = 4


def _nat(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a decimal integer")
    if value < 0:
        raise argparse.ArgumentTypeError("value must be non-negative")
    return value


def _parse_stack(text: str) -> Stack:
    items = text.split()
    try:
        stack = tuple(int(x, 10) for x in items)
    except ValueError:
        raise ValueError(f"stack must be space-separated decimals, got {text!r}")
    if any(x < 0 for x in stack):
        raise ValueError("stack elements must be non-negative")
    return stack


def _stack_strings(s: Stack) -> list[str]:
    return [str(x) for x in s]


def trace_to_json(states, steps) -> dict:
    return {
        "format": "trace",
        "version": 1,
        "states": [_stack_strings(st) for st in states],
        "steps": [r.name for r in steps],
    }


def certificate_to_json(cert: DomCertificate) -> dict:
    return {
        "format": "certificate",
        "version": 1,
        "conclusion": _stack_strings(cert.conclusion),
        "chain": [_stack_strings(st) for st in cert.chain],
        "rules": [r.name for r in cert.rules],
    }


def certificate_from_json(doc: dict) -> DomCertificate:
    if not isinstance(doc, dict) or doc.get("format") != "certificate":
        raise ValueError("not a certificate document")
    try:
        chain = tuple(tuple(int(x, 10) for x in st) for st in doc["chain"])
        rules = tuple(RuleId[name] for name in doc["rules"])
        conclusion = tuple(int(x, 10) for x in doc["conclusion"])
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed certificate: {e}")
    return DomCertificate(chain=chain, rules=rules, conclusion=conclusion)


def cmd_compute(args) -> int:
    m, n, fuel = args.m, args.n, args.fuel
    steps = None
    if args.method == "naive":
        r = ack_naive(m, n, fuel)
        value, steps = r.value, r.calls
    elif args.method == "memo":
        value = ack_memo(m, n, args.memo_cap)
    elif args.method == "closed":
        value = ack_closed(m, n)
    elif args.method == "loop":
        r2 = ackloop((n, m), fuel, record_trace=False)
        value, steps = r2.value, r2.steps
    else:
        value = acklist((n, m), args.memo_cap)
    print(value)
    if args.verbose and not args.quiet and steps is not None:
        print(f"steps: {steps}")
    return EXIT_OK


def cmd_trace(args) -> int:
    result = ackloop((args.n, args.m), args.fuel, record_trace=True)
    assert result.trace is not None
    if args.format == "text":
        sys.stdout.write(trace_render(result.trace))
    else:
        print(json.dumps(trace_to_json(result.trace.states, result.trace.steps)))
    return EXIT_OK


def cmd_cert(args) -> int:
    if args.verify is not None:
        raw = Path(args.verify).read_text()
        try:
            cert = certificate_from_json(json.loads(raw))
        except (json.JSONDecodeError, ValueError) as e:
            print(f"malformed certificate file: {e}", file=sys.stderr)
            return EXIT_USAGE
        verdict = certificate_verify(cert)
        if verdict.valid:
            print("Valid")
            return EXIT_OK
        print(f"Invalid at position {verdict.position}: {verdict.reason}")
        return EXIT_FAIL
    if args.m is None or args.n is None:
        print("cert: m and n are required unless --verify is given", file=sys.stderr)
        return EXIT_USAGE
    result = ackloop((args.n, args.m), args.fuel, record_trace=True)
    assert result.trace is not None
    doc = json.dumps(certificate_to_json(certificate_build(result.trace)))
    if args.output:
        Path(args.output).write_text(doc + "\n")
        print(f"wrote certificate with {result.steps + 1} chain entries to {args.output}")
    else:
        print(doc)
    return EXIT_OK


def cmd_equiv(args) -> int:
    from .report import equivalence_grid

    cells = equivalence_grid(args.max_m, args.max_n, args.fuel)
    failed = [c for c in cells if not c.agree]
    if not args.quiet:
        for c in cells:
            status = "ok" if c.agree else f"FAIL({c.note})"
            value = "-" if c.value is None else c.value
            print(f"m={c.m} n={c.n} value={value} {status}")
    if failed:
        print(f"FAIL: {len(failed)} of {len(cells)} cells")
        return EXIT_FAIL
    print(f"PASS: all {len(cells)} cells agree")
    return EXIT_OK


def cmd_graph(args) -> int:
    relation = graph_saturate_ack(args.max_m, args.max_n, args.max_val, args.entry_cap)
    ok = relation.single_valued()
    if args.verbose:
        for (m, n), v in sorted(relation.entries):
            print(f"({m},{n}) -> {v}")
    print(f"entries: {len(relation)}")
    print(f"functionality: {'OK' if ok else 'VIOLATED'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dom_u(args) -> int:
    g = graph_saturate_U(args.fuel)
    d = domain_saturate_U(args.fuel)
    if args.verbose:
        print(f"graph entries: {len(g)}")
        print(f"domain members: {len(d)}")
    print("empty" if not g.entries and not d else "nonempty")
    return EXIT_OK if not g.entries and not d else EXIT_FAIL


def cmd_rewrite(args) -> int:
    try:
        system = parse_rules(Path(args.rules).read_text(), Mode(args.mode))
    except RuleSyntaxError as e:
        print(f"{args.rules}: {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.search:
        if system.mode is not Mode.FREE:
            print("--search requires --mode free", file=sys.stderr)
            return EXIT_USAGE
        starts = [()] + [t for length in range(1, args.max_len + 1)
                         for t in product(range(args.max_elem + 1), repeat=length)]
        witness = divergence_search(system, starts, args.fuel, args.threshold)
        if witness is None:
            if args.format == "structured":
                print(json.dumps({"format": "witness", "version": 1, "found": False}))
            else:
                print("none found")
            return EXIT_OK
        replays = replay_witness(system, witness, args.threshold)
        if args.format == "structured":
            print(json.dumps({
                "format": "witness", "version": 1, "found": True,
                "start": _stack_strings(witness.start),
                "positions": list(witness.positions),
                "kind": witness.kind, "pivot": witness.pivot,
                "replays": replays,
            }))
        else:
            print(f"witness: start [{' '.join(_stack_strings(witness.start))}] "
                  f"positions {list(witness.positions)} kind {witness.kind}"
                  f" (replays: {'yes' if replays else 'NO'})")
        return EXIT_OK

    stack = _parse_stack(args.stack if args.stack is not None else "")
    positions = None
    if args.positions is not None:
        positions = [int(x, 10) for x in args.positions.split()]
    result = run(system, stack, args.fuel, positions=positions,
                 record_trace=args.format == "structured")
    if args.format == "structured":
        assert result.states is not None and result.applied is not None
        print(json.dumps({
            "format": "run", "version": 1,
            "final": _stack_strings(result.stack),
            "steps": result.steps,
            "states": [_stack_strings(st) for st in result.states],
            "applied": [[p, i] for p, i in result.applied],
        }))
    else:
        print(" ".join(_stack_strings(result.stack)))
    return EXIT_OK


def cmd_report(args) -> int:
    from .report import write_report

    summary = write_report(args.max_m, args.max_n, args.fuel, Path(args.out_dir))
    print(f"wrote {summary['csv']}")
    for fig in summary["figures"]:
        print(f"wrote {fig}")
    print("all cells agree" if summary["all_agree"] else "some cells disagree")
    return EXIT_OK if summary["all_agree"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ackstack",
        description="Ackermann's function as head rewriting over a stack: "
                    "evaluators, traces, termination certificates, graph "
                    "saturation and a small generic rewrite engine.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_fuel(p, default=DEFAULT_FUEL):
        p.add_argument("--fuel", type=_nat, default=default,
                       help=f"step budget (default {default})")

    p = sub.add_parser("compute", help="compute A(m, n) by a chosen method")
    p.add_argument("m", type=_nat)
    p.add_argument("n", type=_nat)
    p.add_argument("--method", choices=["naive", "memo", "closed", "loop", "list"],
                   default="loop")
    p.add_argument("--memo-cap", type=_nat, default=1_000_000)
    p.add_argument("-v", "--verbose", action="store_true", help="also print step counts")
    p.add_argument("--quiet", action="store_true", help="print the value only")
    add_fuel(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("trace", help="print the full rewrite trace for [n, m]")
    p.add_argument("m", type=_nat)
    p.add_argument("n", type=_nat)
    p.add_argument("--format", choices=["text", "structured"], default="text")
    add_fuel(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("cert", help="build or verify a termination certificate")
    p.add_argument("m", type=_nat, nargs="?")
    p.add_argument("n", type=_nat, nargs="?")
    p.add_argument("--verify", metavar="FILE", help="verify a certificate file instead of building")
    p.add_argument("-o", "--output", metavar="FILE", help="write the certificate to FILE")
    add_fuel(p)
    p.set_defaults(func=cmd_cert)

    p = sub.add_parser("equiv", help="agreement grid across all evaluation methods")
    p.add_argument("max_m", type=_nat)
    p.add_argument("max_n", type=_nat)
    p.add_argument("--quiet", action="store_true", help="summary line only")
    add_fuel(p, default=10**7)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("graph", help="saturate the Ackermann graph rules within bounds")
    p.add_argument("max_m", type=_nat)
    p.add_argument("max_n", type=_nat)
    p.add_argument("max_val", type=_nat)
    p.add_argument("--entry-cap", type=_nat, default=200_000)
    p.add_argument("-v", "--verbose", action="store_true", help="list every entry")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("dom-u", help="saturate graph and domain of U(x) = U(x) + 1")
    p.add_argument("--fuel", type=_nat, default=1000)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_dom_u)

    p = sub.add_parser("rewrite", help="run or search a rule file")
    p.add_argument("rules", help="rule file path")
    p.add_argument("stack", nargs="?", help="input stack, e.g. \"3 2\" (quote it; empty for [])")
    p.add_argument("--mode", choices=["anchored", "free"], default="anchored")
    p.add_argument("--positions", metavar="SEQ",
                   help="explicit space-separated position sequence to apply")
    p.add_argument("--search", action="store_true",
                   help="search for divergence evidence instead of running")
    p.add_argument("--threshold", type=_nat, default=50,
                   help="stack length that counts as unbounded growth (default 50)")
    p.add_argument("--max-len", type=_nat, default=3,
                   help="search start stacks up to this length (default 3)")
    p.add_argument("--max-elem", type=_nat, default=2,
                   help="search start elements up to this value (default 2)")
    p.add_argument("--format", choices=["text", "structured"], default="text")
    add_fuel(p, default=10**4)
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("report", help="write the agreement grid as CSV plus figures")
    p.add_argument("max_m", type=_nat)
    p.add_argument("max_n", type=_nat)
    p.add_argument("--out-dir", default="report", help="output directory (default ./report)")
    add_fuel(p, default=10**7)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FuelExhausted as e:
        print(f"fuel exhausted after {e.steps} steps", file=sys.stderr)
        return EXIT_FUEL
    except ResourceCapExceeded as e:
        print(f"resource cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except ClosedFormUnavailable as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
