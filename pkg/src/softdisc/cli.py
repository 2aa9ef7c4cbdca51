"""Command-line front end.

Exit codes: 0 success, 1 invalid or infeasible input, 2 usage error,
3 internal invariant violation (including a failed ``verify`` criterion).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .canonical import canonical_configuration
from .config import DEFAULT_DELTA, Configuration, PotentialParams, check_delta, format_real, parse_configuration, serialize_configuration
from .energy import decompose, total_energy
from .errors import InvariantViolation, SoftDiscError
from .lemmas import g_suite, vertex_inequality_suite, zmax

EXIT_OK, EXIT_INPUT, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _delta(text: str) -> float:
    try:
        return check_delta(float(Fraction(text)))
    except (ValueError, ZeroDivisionError, SoftDiscError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="softdisc", description="Soft-disc crystallization toolkit")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--delta", type=_delta, default=None, help="bond range (default 1/24; 0 is sticky-disc mode)")
        sp.add_argument("--out", default="-", help="output file, '-' for stdout")
        return sp

    sp = verb("canonical", "emit the canonical configuration")
    sp.add_argument("--n", type=_positive, required=True)
    for name, help_ in (("energy", "print the total energy"), ("decompose", "print the energy breakdown as JSON")):
        sp = verb(name, help_)
        sp.add_argument("--in", dest="inp", required=True, help="configuration file, '-' for stdin")
    sp = verb("minimize", "exhaustive or stochastic minimum search")
    sp.add_argument("--n", type=_positive, required=True)
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--basin-hop", action="store_true")
    sp.add_argument("--iters", type=_positive, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=_positive, default=1)
    sp = verb("sample", "emit a random feasible configuration")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--box", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp = verb("lemmas", "run the lemma probes and print margins")
    sp.add_argument("--iters", type=_positive, default=10**5, help="random fans to sample")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--figure", default=None, help="also write an SVG plot of g")
    sp = verb("verify", "run the acceptance battery")
    sp.add_argument("--max-n", type=_positive, default=None)
    sp.add_argument("--threads", type=_positive, default=1)
    sp = verb("render", "draw a configuration as SVG")
    sp.add_argument("--in", dest="inp", required=True)
    return parser


def _read(path: str, delta: float | None) -> Configuration:
    if path == "-":
        c = parse_configuration(sys.stdin.read())
    else:
        with open(path, encoding="utf-8") as fh:
            c = parse_configuration(fh.read())
    return c if delta is None else c.with_delta(delta)


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _config_text(c: Configuration) -> str:
    return serialize_configuration(c, header=c.delta != DEFAULT_DELTA)


def _run(args) -> int:
    delta = DEFAULT_DELTA if args.delta is None else args.delta
    if args.verb == "canonical":
        _write(args.out, _config_text(canonical_configuration(args.n, delta)))
    elif args.verb == "energy":
        c = _read(args.inp, args.delta)
        e = total_energy(c)
        _write(args.out, format_real(e) + "\n")
        if math.isinf(e):
            print("infeasible: two points closer than 1", file=sys.stderr)
            return EXIT_INPUT
    elif args.verb == "decompose":
        _write(args.out, _dump(decompose(_read(args.inp, args.delta)).to_dict()))
    elif args.verb == "minimize":
        from .search import basin_hop, lattice_minimum

        if args.exhaustive:
            rep = lattice_minimum(args.n, delta, args.threads)
        else:
            rep = basin_hop(args.n, PotentialParams(delta), args.seed, args.iters)
        _write(args.out, _dump(rep.to_dict()))
    elif args.verb == "sample":
        from .search import random_feasible_configuration

        _write(args.out, _config_text(random_feasible_configuration(args.n, args.box, args.seed, delta)))
    elif args.verb == "lemmas":
        report = {"zmax": zmax(delta)}
        if delta > 0:
            report["g"] = g_suite(delta)
        report["vertex_inequality"] = vertex_inequality_suite(delta, args.iters, args.seed)
        if args.figure:
            from .plotting import render_g_function

            render_g_function([delta] if delta > 0 else [DEFAULT_DELTA], args.figure)
        _write(args.out, _dump(report))
        if not report["vertex_inequality"]["passed"] or not report.get("g", {"passed": True})["passed"]:
            return EXIT_INVARIANT
    elif args.verb == "verify":
        from .verify import run_battery

        results = run_battery(args.max_n, args.threads)
        for r in results:
            print(r.line(), file=sys.stderr)
        # timings are excluded so the report is reproducible
        _write(args.out, _dump([{k: v for k, v in r.to_dict().items() if k != "seconds"} for r in results]))
        if not all(r.passed for r in results):
            return EXIT_INVARIANT
    elif args.verb == "render":
        from .plotting import render_configuration

        if args.out == "-":
            print("render needs --out FILE.svg", file=sys.stderr)
            return EXIT_USAGE
        summary = render_configuration(_read(args.inp, args.delta), args.out)
        sys.stdout.write(_dump({"svg": args.out, **summary}))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (SoftDiscError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
