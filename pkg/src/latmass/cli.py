"""Command-line interface.

Subcommands: car, masses, trace, dims, mu, verify.  Exit status is 0 on
success, 1 on a computational failure (enumeration bound exceeded,
verification failure, bad input data), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .cycpoly import enumerate_car, format_notation, parse_notation
from .reptheory import parse_partition, trace_KT
from .umbral import catalog, get_record, niemeier_mass
from .lattice import algorithm_A, algorithm_B, gram_named, load_gram
from .dims import dim_table, mu, render_dim_table
from . import checks


def _cmd_car(args) -> int:
    polys = enumerate_car(args.n)
    if args.count:
        print(len(polys))
    else:
        for p in polys:
            print(format_notation(p))
    return 0


def _cmd_masses(args) -> int:
    if args.catalog:
        m = niemeier_mass(get_record(args.catalog))
    else:
        if args.gram_name:
            gram = gram_named(args.gram_name)
        else:
            with open(args.gram) as fh:
                gram = load_gram(fh.read())
        if args.algo == "A":
            m = algorithm_A(gram, args.bound)
        else:
            # auto and B coincide: B delegates to A when there are no roots
            m = algorithm_B(gram, args.bound)
    json.dump(m.to_json_dict(), sys.stdout, indent=1)
    print()
    return 0


def _cmd_trace(args) -> int:
    p = parse_notation(args.poly)
    lam = parse_partition(args.lam)
    print(trace_KT(p, lam))
    return 0


def _cmd_dims(args) -> int:
    if args.n != 24:
        raise ValueError("only the rank-24 genus catalog is available")
    maps = [niemeier_mass(rec) for rec in catalog()]
    entries = dim_table(maps, args.n, args.lmax)
    if args.json:
        rows = [
            {"lambda": list(e.lam), "dim": e.d, "dim_associate": e.d_ass}
            for e in entries
        ]
        json.dump(rows, sys.stdout, indent=1)
        print()
    else:
        print(render_dim_table(entries, args.n))
    return 0


def _cmd_mu(args) -> int:
    print(mu(args.n))
    return 0


def _cmd_verify(args) -> int:
    return 0 if checks.run_all(long=args.long) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="latmass",
        description="Characteristic masses of integral lattices and "
        "invariant dimensions, in exact rational arithmetic.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("car", help="enumerate degree-n cyclotomic products")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", action="store_true", help="print only the cardinality")
    p.set_defaults(func=_cmd_car)

    p = sub.add_parser("masses", help="mass map of a lattice isometry group")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--gram", help="Gram matrix file (JSON rows, or dim + entries)")
    src.add_argument("--gram-name", help='built-in Gram, e.g. "E8" or "A2+A2"')
    src.add_argument("--catalog", help="rank-24 catalog name, e.g. D24 or leech")
    p.add_argument("--algo", choices=["auto", "A", "B"], default="auto")
    p.add_argument("--bound", type=int, default=10**7, help="enumeration bound")
    p.set_defaults(func=_cmd_masses)

    p = sub.add_parser("trace", help="trace of a characteristic polynomial on W_lambda")
    p.add_argument("--poly", required=True, help='cyclotomic notation, e.g. "1^2 3"')
    p.add_argument("--lambda", dest="lam", required=True, help='partition, e.g. "3 1"')
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("dims", help="nonzero invariant dimensions of the genus")
    p.add_argument("--n", type=int, default=24)
    p.add_argument("--lmax", type=int, required=True, help="largest allowed part")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_dims)

    p = sub.add_parser("mu", help="mass constant of the rank-n genus")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_mu)

    p = sub.add_parser("verify", help="run the self-verification suites")
    p.add_argument("--long", action="store_true", help="include slow enumerations")
    p.set_defaults(func=_cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError, KeyError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
