"""``wirelabels`` command line.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 timeout (``bench``
still writes its CSV, leaving the timed-out cells blank).
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .adders import generate_adder
from .bench import ENGINES, bench_circuit, emit_csv, naive_transform, parse_adder_range
from .circuit import CircuitError
from .flush import flush
from .naive import EagerCircuit, eager_recycle_rounds
from .recycle import RecyclePlan, recycle
from .rewrite import RewriteError, decompose_toffoli, load_rules, to_icm
from .textio import ParseError, read_circuit, write_circuit

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_TIMEOUT = 0, 1, 2, 3

log = logging.getLogger("wirelabels")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _cmd_gen_adder(args) -> int:
    write_circuit(generate_adder(args.bits), args.out)
    return EXIT_OK


def _cmd_transform(args) -> int:
    circuit = read_circuit(args.input)
    rules = load_rules(args.templates)
    if args.engine == "fast":
        decompose_toffoli(circuit, rules)
        out = flush(to_icm(circuit, rules))
    else:
        out = naive_transform(EagerCircuit.from_circuit(circuit), rules)
    write_circuit(out, args.out)
    log.info("%d wires, %d ops, %d teleportations", out.n_wires, len(out), out.counters["teleports"])
    return EXIT_OK


def _cmd_recycle(args) -> int:
    circuit = read_circuit(args.input)
    if args.engine == "fast":
        out, plans = recycle(circuit, args.rounds)
    else:
        out, plans = eager_recycle_rounds(EagerCircuit.from_circuit(circuit), args.rounds)
    write_circuit(out, args.out)
    if args.plan:
        first = plans[0] if plans else RecyclePlan()
        Path(args.plan).write_text(first.to_csv(), encoding="utf-8")
    log.info("%d -> %d wires in %d round(s)", circuit.n_wires, out.n_wires, len(plans))
    return EXIT_OK


def _cmd_bench(args) -> int:
    engines = ENGINES if args.engine == "both" else (args.engine,)
    jobs = []
    if args.adders:
        jobs += [(f"add{n}", lambda n=n: generate_adder(n)) for n in parse_adder_range(args.adders)]
    for path in args.input or ():
        jobs.append((Path(path).stem, lambda p=path: read_circuit(p)))
    if not jobs:
        raise _UsageError("bench needs --adders and/or --input")
    rows = []
    timed_out = False
    for name, make in jobs:
        row = bench_circuit(name, make(), engines, args.reps, args.timeout, args.templates,
                            args.rounds)
        if row.timeouts:
            timed_out = True
            log.warning("%s: timed out (%s)", name, ", ".join(sorted(row.timeouts)))
        log.info("%s done", name)
        rows.append(row)
    emit_csv(rows, args.csv)
    return EXIT_TIMEOUT if timed_out else EXIT_OK


class _UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wirelabels", description="Fast ICM transformation and wire recycling.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen-adder", help="write a ripple-carry adder circuit")
    g.add_argument("--bits", type=_positive_int, required=True)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_gen_adder)

    t = sub.add_parser("transform", help="Toffoli -> Clifford+T -> ICM")
    t.add_argument("--in", dest="input", required=True)
    t.add_argument("--engine", choices=ENGINES, default="fast")
    t.add_argument("--out", required=True)
    t.add_argument("--templates")
    t.set_defaults(func=_cmd_transform)

    r = sub.add_parser("recycle", help="recycle wires of an ICM circuit")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--engine", choices=ENGINES, default="fast")
    r.add_argument("--out", required=True)
    r.add_argument("--rounds", type=_positive_int, default=1)
    r.add_argument("--plan", help="also write the first round's plan as CSV")
    r.set_defaults(func=_cmd_recycle)

    b = sub.add_parser("bench", help="time both engines and write a CSV")
    b.add_argument("--adders", help="adder widths, A..B[,step]")
    b.add_argument("--input", nargs="+", metavar="FILE")
    b.add_argument("--engine", choices=ENGINES + ("both",), default="both")
    b.add_argument("--timeout", type=float, default=None, help="seconds per phase")
    b.add_argument("--csv", required=True)
    b.add_argument("--reps", type=_positive_int, default=3)
    b.add_argument("--rounds", type=_positive_int, default=1)
    b.add_argument("--templates")
    b.set_defaults(func=_cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (_UsageError, ValueError, CircuitError, RewriteError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
