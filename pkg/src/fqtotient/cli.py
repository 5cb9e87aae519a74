"""Command-line surface.

Every subcommand prints deterministic rows in one of three formats
(table, tsv, or json-lines), selected by --output or the
FQTOTIENT_OUTPUT environment variable.  Numeric values are emitted as
decimal strings.  Exit codes: 0 success, 1 domain error, 2 resource
error, 3 integrity/verification failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .arith import phi, phi_tilde, sigma, sigma_nm, sigma_tilde
from .errors import (
    DomainError,
    FqError,
    IntegrityError,
    ParseError,
    ResourceError,
    UsageError,
)
from .exceptional import realize, solve_profiles
from .families import FamilyVector, instantiate, verify_identity
from .field import SUPPORTED_Q, FieldSpec
from .irreducibles import build_table, count_irreducibles, default_table, factor
from .poly import format_poly, parse_poly
from .search import certificate_to_json, decompose, search, verify_certificate
from .zsigmondy import decompose_product, primitive_prime_report

ENV_OUTPUT = "FQTOTIENT_OUTPUT"

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_RESOURCE = 2
EXIT_INTEGRITY = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _field_from_args(args) -> FieldSpec:
    q = args.q
    if q not in SUPPORTED_Q:
        raise DomainError(f"unsupported q={q}; supported: {SUPPORTED_Q}")
    modulus = getattr(args, "modulus", None)
    if modulus is None:
        return FieldSpec.for_q(q)
    probe = FieldSpec.for_q(q)
    if probe.k == 1:
        raise UsageError("--modulus is only meaningful for non-prime q")
    digits = parse_poly(modulus, FieldSpec.for_q(probe.p)).coeffs
    return FieldSpec.for_q(q, tuple(digits))


def _emit(rows: list[dict[str, str]], fmt: str, out) -> None:
    if not rows:
        return
    if fmt == "json":
        for row in rows:
            print(json.dumps(row), file=out)
        return
    header = list(rows[0].keys())
    if fmt == "tsv":
        print("\t".join(header), file=out)
        for row in rows:
            print("\t".join(str(row[k]) for k in header), file=out)
        return
    widths = {k: max(len(k), *(len(str(r[k])) for r in rows)) for k in header}
    print("  ".join(k.ljust(widths[k]) for k in header).rstrip(), file=out)
    for row in rows:
        print("  ".join(str(row[k]).ljust(widths[k]) for k in header).rstrip(), file=out)


def _profile_label(prof) -> str:
    if prof.q == 3:
        return ",".join(map(str, prof.mapped_tuple()))
    return (
        "f:" + ",".join(map(str, prof.f))
        + "|g:" + ",".join(map(str, prof.g))
        + "|heads:" + ",".join(map(str, prof.heads))
    )


def _cmd_pi(args, fmt, out) -> int:
    field = _field_from_args(args)
    rows = [
        {"degree": str(d), "count": str(count_irreducibles(field, d))}
        for d in range(1, args.max_degree + 1)
    ]
    _emit(rows, fmt, out)
    return EXIT_OK


def _cmd_factor(args, fmt, out) -> int:
    field = _field_from_args(args)
    poly = parse_poly(args.poly, field)
    table = (
        build_table(field, max(1, int(poly.degree) // 2), max_cells=args.budget)
        if not poly.is_constant
        else default_table(field, 1)
    )
    fac = factor(poly, table)
    parts = [f"({p})" if e == 1 else f"({p})^{e}" for p, e in fac.factors]
    rows = [{
        "poly": format_poly(poly),
        "unit": str(fac.unit),
        "factors": " * ".join(parts) if parts else "1",
    }]
    _emit(rows, fmt, out)
    return EXIT_OK


_ARITH = {
    "phi": (phi, "decimal"),
    "sigma": (sigma, "decimal"),
    "sigma-nm": (sigma_nm, "decimal"),
    "sigma-tilde": (sigma_tilde, "poly"),
    "phi-tilde": (phi_tilde, "poly"),
}


def _cmd_arith(name):
    def run(args, fmt, out) -> int:
        field = _field_from_args(args)
        poly = parse_poly(args.poly, field)
        if poly.is_zero:
            raise DomainError("arithmetic functions are undefined at 0")
        table = (
            build_table(field, max(1, int(poly.degree) // 2), max_cells=args.budget)
            if not poly.is_constant
            else default_table(field, 1)
        )
        fac = factor(poly, table)
        func, kind = _ARITH[name]
        value = func(fac)
        text = format_poly(value) if kind == "poly" else str(value)
        _emit([{"poly": format_poly(poly), name: text}], fmt, out)
        return EXIT_OK

    return run


def _cmd_search(args, fmt, out) -> int:
    field = _field_from_args(args)
    pairs = search(
        field,
        args.max_deg_f,
        args.max_deg_g,
        max_cells=args.budget,
        jobs=args.jobs,
    )
    rows = []
    bad = 0
    for pair in pairs:
        row = {"F": format_poly(pair.F), "G": format_poly(pair.G), "value": str(pair.value)}
        if args.certify:
            cert = decompose(field, pair.F, pair.G)
            report = verify_certificate(cert)
            row["certified"] = "1" if report.ok else "0"
            bad += 0 if report.ok else 1
        rows.append(row)
    _emit(rows, fmt, out)
    if args.certify and bad:
        print(f"{bad} of {len(rows)} solutions failed certification", file=sys.stderr)
        return EXIT_INTEGRITY
    return EXIT_OK


def _cmd_certify(args, fmt, out) -> int:
    field = _field_from_args(args)
    F = parse_poly(args.f, field)
    G = parse_poly(args.g, field)
    cert = decompose(field, F, G)
    report = verify_certificate(cert)
    print(certificate_to_json(cert), file=out)
    if not report.ok:
        for failure in report.failures:
            print(f"verification failure: {failure}", file=sys.stderr)
        return EXIT_INTEGRITY
    return EXIT_OK


def _cmd_family(args, fmt, out) -> int:
    field = _field_from_args(args)
    try:
        entries = tuple(int(x) for x in args.v.split(","))
    except ValueError as exc:
        raise DomainError(f"bad family vector {args.v!r}") from exc
    vector = FamilyVector(entries)
    depth = vector.degree_ladder()[-1]
    table = build_table(field, depth, max_cells=args.budget)
    inst = instantiate(field, vector, table, index=args.index)
    row = {
        "v": str(vector),
        "index": str(args.index),
        "F": format_poly(inst.F),
        "G": format_poly(inst.G),
    }
    code = EXIT_OK
    if args.verify:
        report = verify_identity(field, inst)
        row["identity"] = report.detail
        row["holds"] = {True: "1", False: "0", None: "n/a"}[report.holds]
        if report.applicable and not report.holds:
            code = EXIT_INTEGRITY
    _emit([row], fmt, out)
    return code


def _cmd_exceptional(args, fmt, out) -> int:
    if args.q not in (2, 3):
        raise DomainError("exceptional analysis is defined for q in {2, 3}")
    rows = []
    for prof in solve_profiles(args.q):
        row = {
            "profile": _profile_label(prof),
            "n": str(prof.n),
            "heads": ",".join(map(str, prof.head_multiset())) or "-",
        }
        if args.realize:
            witness = realize(args.q, prof)
            if witness is None:
                row.update({"F0": "-", "G0": "-", "value": "-"})
            else:
                row.update(
                    {
                        "F0": format_poly(witness.f0.monic_value()),
                        "G0": format_poly(witness.g0.monic_value()),
                        "value": str(witness.value),
                    }
                )
        rows.append(row)
    _emit(rows, fmt, out)
    return EXIT_OK


def _cmd_zsigmondy(args, fmt, out) -> int:
    rows = []
    for n in range(1, args.max_n + 1):
        report = primitive_prime_report(args.a, args.b, n)
        rows.append(
            {
                "n": str(n),
                "term": str(args.a**n - args.b**n),
                "primitive_primes": ",".join(map(str, report.primitive_primes)) or "-",
                "exception": report.exception or "-",
            }
        )
    _emit(rows, fmt, out)
    return EXIT_OK


def _cmd_decompose(args, fmt, out) -> int:
    result = decompose_product(args.a, args.value)
    _emit(
        [
            {
                "a": str(args.a),
                "value": str(args.value),
                "forced": ",".join(map(str, result.forced.entries)) or "-",
                "residual": str(result.residual),
            }
        ],
        fmt,
        out,
    )
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="fqtotient", description=__doc__)
    parser.add_argument(
        "--output",
        choices=("table", "tsv", "json"),
        default=None,
        help=f"output format (default: ${ENV_OUTPUT} or table)",
    )
    parser.add_argument("--out", metavar="FILE", default=None, help="write rows to FILE")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled runs")
    parser.add_argument(
        "--budget",
        type=int,
        default=None,
        metavar="N",
        help="max polynomial count for sieves and searches",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_q(p, choices=None):
        p.add_argument("--q", type=int, required=True, choices=choices)
        p.add_argument("--modulus", default=None, help="modulus override (non-prime q)")

    p = sub.add_parser("pi", help="count monic irreducibles per degree")
    add_q(p)
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(run=_cmd_pi)

    p = sub.add_parser("factor", help="factor a polynomial")
    add_q(p)
    p.add_argument("poly")
    p.set_defaults(run=_cmd_factor)

    for name in _ARITH:
        p = sub.add_parser(name, help=f"evaluate {name} of a polynomial")
        add_q(p)
        p.add_argument("poly")
        p.set_defaults(run=_cmd_arith(name))

    p = sub.add_parser("search", help="exhaustive solution search")
    add_q(p)
    p.add_argument("--max-deg-f", type=int, required=True)
    p.add_argument("--max-deg-g", type=int, required=True)
    p.add_argument("--certify", action="store_true")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(run=_cmd_search)

    p = sub.add_parser("certify", help="decompose and verify one solution pair")
    add_q(p)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.set_defaults(run=_cmd_certify)

    p = sub.add_parser("family", help="instantiate a telescoping family")
    add_q(p)
    p.add_argument("--v", required=True, help="comma-separated vector, e.g. 1,1,2")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(run=_cmd_family)

    p = sub.add_parser("exceptional", help="enumerate exceptional profiles")
    p.add_argument("--q", type=int, required=True, choices=(2, 3))
    p.add_argument("--realize", action="store_true")
    p.set_defaults(run=_cmd_exceptional)

    p = sub.add_parser("zsigmondy", help="primitive prime divisors of a^n - b^n")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(run=_cmd_zsigmondy)

    p = sub.add_parser("decompose", help="recover exponents of prod(a^n - 1)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--value", type=int, required=True)
    p.set_defaults(run=_cmd_decompose)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.output or os.environ.get(ENV_OUTPUT, "table")
    if fmt not in ("table", "tsv", "json"):
        print(f"unknown output format {fmt!r}", file=sys.stderr)
        return EXIT_USAGE
    out = sys.stdout
    handle = None
    try:
        if args.out:
            handle = open(args.out, "w")
            out = handle
        return args.run(args, fmt, out)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN if isinstance(exc, ParseError) else EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except FqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    finally:
        if handle is not None:
            handle.close()


if __name__ == "__main__":
    sys.exit(main())
