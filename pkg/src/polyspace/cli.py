"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 inadmissible input (non-generic
lengths or a degree mismatch, with the failing sign vector or the degree in
the message), 3 internal disagreement (engine mismatch or a parity failure —
never expected on a healthy build).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .errors import DegreeMismatchError, NonGenericError, ParityViolationError
from .lengths import (
    ExponentVector,
    LengthVector,
    chamber_data,
    degenerate_sign_vector,
    is_empty,
)
from .oracles import equilateral_pairing, sigma1_pairing
from .pairings import PairingQuery, pairing_table
from .triangular import enumerate_triangular, format_subset
from .verify import ENGINE_NAMES, run_corpus, run_engine, run_random_verification
from .volume import volume_exact, volume_witten_numeric

FORMATS = ("plain", "json", "tsv")


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the CLI contract wants 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _default_threads() -> int:
    env = os.environ.get("POLYSPACE_THREADS")
    if env:
        try:
            n = int(env)
            if n >= 1:
                return n
        except ValueError:
            pass
    return os.cpu_count() or 1


def _rational_str(value) -> str:
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else str(f)


def _emit(
    record: dict,
    plain_lines: list[str],
    rows: list[tuple[str, str, str, str]],
    args,
    started: float,
) -> None:
    record["threads"] = args.threads
    record["elapsed_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    if args.format == "json":
        print(json.dumps(record, indent=2))
    elif args.format == "tsv":
        # Fixed column order: lengths, exponents, engine, value.
        for row in rows:
            print("\t".join(row))
    else:
        for line in plain_lines:
            print(line)


def _cmd_pairing(args) -> int:
    started = time.perf_counter()
    alpha = LengthVector.parse(args.lengths)
    k = ExponentVector.parse(args.exponents)
    query = PairingQuery(alpha, k)
    names = ENGINE_NAMES if args.engine == "all" else (args.engine,)
    results = [
        {"engine": name, "value": str(run_engine(name, query, threads=args.threads))}
        for name in names
    ]
    match = len({r["value"] for r in results}) == 1
    record = {
        "command": "pairing",
        "lengths": [str(e) for e in alpha],
        "exponents": list(k),
        "engine": args.engine,
        "results": results,
        "match": match,
    }
    plain = [f"{r['engine']} {r['value']}" for r in results]
    if args.engine == "all":
        plain.append(f"match {str(match).lower()}")
    rows = [
        (alpha.serialize(), k.serialize(), r["engine"], r["value"]) for r in results
    ]
    _emit(record, plain, rows, args, started)
    if not match:
        print("engine disagreement; this is a bug", file=sys.stderr)
        return 3
    return 0


def _cmd_table(args) -> int:
    started = time.perf_counter()
    alpha = LengthVector.parse(args.lengths)
    table = pairing_table(alpha, threads=args.threads)
    entries = [
        {"exponents": list(ev), "value": str(value)} for ev, value in table.items()
    ]
    record = {
        "command": "table",
        "lengths": [str(e) for e in alpha],
        "entries": entries,
    }
    plain = [f"{ev.serialize()} {value}" for ev, value in table.items()]
    rows = [
        (alpha.serialize(), ev.serialize(), "explicit", str(value))
        for ev, value in table.items()
    ]
    _emit(record, plain, rows, args, started)
    return 0


def _cmd_triangular(args) -> int:
    started = time.perf_counter()
    alpha = LengthVector.parse(args.lengths)
    family = enumerate_triangular(alpha, threads=args.threads)
    subsets = [format_subset(int(mask)) for mask in family.masks]
    record = {
        "command": "triangular",
        "lengths": [str(e) for e in alpha],
        "count": len(family),
        "subsets": subsets,
    }
    plain = [" ".join(subsets) if subsets else "(empty family)"]
    rows = [(alpha.serialize(), "-", "triangular", s) for s in subsets]
    _emit(record, plain, rows, args, started)
    return 0


def _cmd_volume(args) -> int:
    started = time.perf_counter()
    alpha = LengthVector.parse(args.lengths)
    value = volume_exact(alpha)
    record = {
        "command": "volume",
        "lengths": [str(e) for e in alpha],
        "value": _rational_str(value),
    }
    plain = [_rational_str(value)]
    rows = [(alpha.serialize(), "-", "volume", _rational_str(value))]
    if args.series:
        estimate = volume_witten_numeric(alpha, args.series)
        record["series"] = {
            "terms": args.series,
            "value": estimate.value,
            "tail_bound": estimate.tail_bound,
        }
        plain.append(f"series {estimate.value!r} tail_bound {estimate.tail_bound!r}")
        rows.append((alpha.serialize(), "-", "series", repr(estimate.value)))
    _emit(record, plain, rows, args, started)
    return 0


def _cmd_equilateral(args) -> int:
    started = time.perf_counter()
    degrees = ExponentVector.parse(args.degrees)
    value = equilateral_pairing(args.m, degrees)
    record = {
        "command": "equilateral",
        "m": args.m,
        "degrees": list(degrees),
        "value": str(value),
    }
    rows = [(",".join(["1"] * args.m), degrees.serialize(), "equilateral", str(value))]
    _emit(record, [str(value)], rows, args, started)
    return 0


def _cmd_sigma1(args) -> int:
    started = time.perf_counter()
    value = sigma1_pairing(args.m, args.k)
    record = {
        "command": "sigma1",
        "m": args.m,
        "k": args.k,
        "value": str(value),
    }
    rows = [(",".join(["1"] * args.m), str(args.k), "sigma1", str(value))]
    _emit(record, [str(value)], rows, args, started)
    return 0


def _cmd_generic(args) -> int:
    started = time.perf_counter()
    alpha = LengthVector.parse(args.lengths)
    data = chamber_data(alpha)
    witness = degenerate_sign_vector(alpha)
    generic = witness is None
    record = {
        "command": "generic",
        "lengths": [str(e) for e in alpha],
        "generic": generic,
        "radius": _rational_str(data.radius),
        "empty": is_empty(alpha),
    }
    if generic:
        plain = [f"generic radius={record['radius']} empty={record['empty']}"]
    else:
        signs = ",".join(f"{s:+d}" for s in witness)
        record["degenerate_signs"] = signs
        plain = [f"non-generic signs=({signs})"]
    rows = [(alpha.serialize(), "-", "generic", str(generic).lower())]
    _emit(record, plain, rows, args, started)
    return 0


def _cmd_verify(args) -> int:
    if args.corpus:
        report = run_corpus(threads=args.threads)
        label = "corpus"
    else:
        report = run_random_verification(
            max_m=args.max_m, cases=args.cases, seed=args.seed, threads=args.threads
        )
        label = f"random (max-m {args.max_m}, cases {args.cases}, seed {args.seed})"
    if report.ok:
        print(f"verify {label}: {report.cases} cases, all agree")
        return 0
    print(f"verify {label}: {len(report.mismatches)} mismatch(es)", file=sys.stderr)
    for mismatch in report.mismatches:
        print(f"  reproduce: {mismatch}", file=sys.stderr)
    return 3


def _build_parser() -> _Parser:
    parser = _Parser(prog="polyspace", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, exponents=False):
        p.add_argument("--lengths", required=True, help="comma-separated rationals")
        if exponents:
            p.add_argument("--exponents", required=True, help="comma-separated integers")
        p.add_argument("--format", choices=FORMATS, default="plain")
        p.add_argument("--threads", type=int, default=_default_threads())

    p = sub.add_parser("pairing", help="intersection pairing of one multidegree")
    common(p, exponents=True)
    p.add_argument("--engine", choices=ENGINE_NAMES + ("all",), default="explicit")
    p.set_defaults(func=_cmd_pairing)

    p = sub.add_parser("table", help="pairings of every multidegree")
    common(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("triangular", help="the triangular subset family")
    common(p)
    p.set_defaults(func=_cmd_triangular)

    p = sub.add_parser("volume", help="exact symplectic volume")
    common(p)
    p.add_argument("--series", type=int, default=0, help="also sum N sine-series terms")
    p.set_defaults(func=_cmd_volume)

    p = sub.add_parser("equilateral", help="unit-length pairing closed form")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--degrees", required=True, help="comma-separated integers")
    p.add_argument("--format", choices=FORMATS, default="plain")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=_cmd_equilateral)

    p = sub.add_parser("sigma1", help="symmetric-class pairing on the quotient")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=FORMATS, default="plain")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=_cmd_sigma1)

    p = sub.add_parser("generic", help="genericity, chamber radius, emptiness")
    common(p)
    p.set_defaults(func=_cmd_generic)

    p = sub.add_parser("verify", help="cross-validate engines and invariants")
    p.add_argument("--max-m", type=int, default=8)
    p.add_argument("--cases", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corpus", action="store_true", help="replay the frozen corpus")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except (NonGenericError, DegreeMismatchError) as exc:
        print(f"polyspace: {exc}", file=sys.stderr)
        return 2
    except (ParityViolationError, ArithmeticError) as exc:
        print(f"polyspace: internal consistency failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"polyspace: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
