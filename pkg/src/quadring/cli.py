"""Command-line interface.

Exit codes: 0 success; 1 invalid input; 2 excluded n (no quadruple exists or
the residue class is excluded); 3 nothing found within bounds; 4 verification
failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Optional

from . import builder, certdoc, oracle, pell
from .builder import SupportStatus, SupportTag
from .ring import InvalidRing, RingContext, RingElement

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_EXCLUDED = 2
EXIT_NOT_FOUND = 3
EXIT_UNVERIFIED = 4


class CLIError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _parse_element(raw: str) -> RingElement:
    parts = raw.split(",")
    if len(parts) != 2:
        raise CLIError(EXIT_INVALID, f"expected X,Y got {raw!r}")
    try:
        return RingElement(int(parts[0]), int(parts[1]))
    except ValueError:
        raise CLIError(EXIT_INVALID, f"non-integer component in {raw!r}")


def _context(d: int) -> RingContext:
    try:
        return RingContext(d)
    except InvalidRing as err:
        raise CLIError(EXIT_INVALID, str(err))


def _require_admissible(ctx: RingContext, force: bool) -> None:
    if force or pell.is_admissible(ctx.d):
        return
    raise CLIError(
        EXIT_INVALID,
        f"d={ctx.d} is not admissible (needs x^2-{ctx.d}y^2 = -1 and 6 solvable); "
        "pass --force to proceed anyway",
    )


def _pair(e: RingElement) -> list[str]:
    return [str(e.x), str(e.y)]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_pell(args) -> int:
    ctx = _context(args.d)
    cf = pell.cf_expand(ctx)
    unit = pell.fundamental_unit(ctx)
    neg = pell.fundamental_neg(ctx)
    doc = {
        "d": str(ctx.d),
        "cf_a0": str(cf.a0),
        "cf_period": [str(a) for a in cf.period],
        "period_length": str(cf.period_length),
        "fundamental_unit": _pair(unit.value),
        "fundamental_neg": _pair(neg.value) if neg else None,
    }
    print(certdoc.dumps(doc), end="")
    return EXIT_OK


def cmd_norm6(args) -> int:
    ctx = _context(args.d)
    target = 6 if args.sign == "+" else -6
    sols = pell.solve_norm6(ctx, target)
    doc = {
        "d": str(ctx.d),
        "target": str(target),
        "representatives": [_pair(s.value) for s in sols],
    }
    print(certdoc.dumps(doc), end="")
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.limit < 10:
        print(certdoc.dumps({"limit": str(args.limit), "admissible_d": []}), end="")
        return EXIT_OK
    ds = pell.admissible_d_scan(args.limit)
    doc = {
        "limit": str(args.limit),
        "count": str(len(ds)),
        "admissible_d": [str(d) for d in ds],
    }
    print(certdoc.dumps(doc), end="")
    return EXIT_OK


def _emit_document(cert, out: Optional[str]) -> None:
    ctx = RingContext(cert.d)
    verified = oracle.verify_quadruple(cert.elements, cert.n, ctx).ok
    text = certdoc.dumps(certdoc.to_document(cert, verified))
    print(text, end="")
    if out:
        with open(out, "w") as fh:
            fh.write(text)


def cmd_construct(args) -> int:
    ctx = _context(args.d)
    _require_admissible(ctx, args.force)
    n = _parse_element(args.n)
    if not n:
        raise CLIError(EXIT_INVALID, "n must be non-zero")
    bounds = builder.SearchBounds(
        factor_norm_bound=args.factor_norm_bound,
        a_norm_bound=args.a_norm_bound,
        unit_power_bound=args.unit_power_bound,
    )
    try:
        if args.method == "auto":
            cert = builder.construct_auto(ctx, n, bounds=bounds, t=args.t)
        elif args.method == "thm12":
            cert = builder.construct_thm12(ctx, n)
        elif args.method == "thm13":
            cert = builder.construct_thm13(ctx, n)
        elif args.method in ("ex3", "ex4"):
            exc = builder.classify_d10_exceptional(n)
            if exc is None or exc.kind != args.method:
                raise CLIError(
                    EXIT_INVALID, f"n={args.n} is not in the {args.method} family"
                )
            cert = builder.construct_d10(ctx, n, args.t)
        else:  # search
            cert = builder.lemma21_search(ctx, n, bounds)
            if cert is None:
                raise CLIError(
                    EXIT_NOT_FOUND, f"no certificate within search bounds for n={args.n}"
                )
    except builder.ExcludedError as err:
        raise CLIError(EXIT_EXCLUDED, f"{err.status.tag.value}: {err.status.detail}")
    except builder.SearchExhausted as err:
        raise CLIError(EXIT_NOT_FOUND, f"{err.status.tag.value}: {err}")
    except builder.WrongClassError as err:
        raise CLIError(EXIT_INVALID, str(err))
    except builder.ConstructionError as err:
        raise CLIError(EXIT_NOT_FOUND, str(err))
    _emit_document(cert, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.inline:
        text = args.inline
    else:
        if not args.path:
            raise CLIError(EXIT_INVALID, "need a document path or --inline JSON")
        try:
            with open(args.path) as fh:
                text = fh.read()
        except OSError as err:
            raise CLIError(EXIT_INVALID, f"cannot read {args.path}: {err}")
    try:
        cert = certdoc.parse_document(certdoc.loads(text))
        ctx = _context(cert.d)
    except certdoc.DocumentError as err:
        raise CLIError(EXIT_INVALID, str(err))
    outcome = oracle.verify_quadruple(cert.elements, cert.n, ctx)
    if outcome.ok:
        for key, root in zip(builder.PAIR_KEYS, outcome.certificate.witnesses):
            print(f"pair {key}: root {ctx.render(root)}")
        print("verified: true")
        return EXIT_OK
    print(f"verified: false ({outcome.reason})")
    return EXIT_UNVERIFIED


def cmd_search(args) -> int:
    ctx = _context(args.d)
    n = _parse_element(args.n)
    if not n:
        raise CLIError(EXIT_INVALID, "n must be non-zero")
    certs = oracle.brute_force_search(ctx, n, args.bound, args.limit)
    docs = []
    for cert in certs:
        docs.append(certdoc.to_document(cert, True))
    doc = {
        "d": str(ctx.d),
        "n": _pair(n),
        "bound": str(args.bound),
        "count": str(len(docs)),
        "certificates": docs,
    }
    text = certdoc.dumps(doc)
    print(text, end="")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# coverage sweep
# ---------------------------------------------------------------------------

_FAMILY_FORMULAS = {
    "thm12": lambda m, k: RingElement(4 * m, 4 * k),
    "thm13": lambda m, k: RingElement(4 * m + 2, 4 * k),
    "s1": lambda m, k: RingElement(4 * (12 * m + 5), 4 * (6 * k + 3)),
    "s2": lambda m, k: RingElement(4 * (12 * m + 11), 4 * (6 * k + 3)),
    "s3": lambda m, k: RingElement(4 * (12 * m + 9) + 2, 4 * (6 * k + 3)),
    "s4": lambda m, k: RingElement(48 * m + 2, 24 * k),
}

_FAMILY_DESC = {
    "thm12": "(4m, 4k)",
    "thm13": "(4m+2, 4k)",
    "s1": "4(12m+5, 6k+3)",
    "s2": "4(12m+11, 6k+3)",
    "s3": "(4(12m+9)+2, 4(6k+3))",
    "s4": "(48m+2, 24k)",
}


def _coverage_row(ctx: RingContext, family: str, m: int, k: int) -> Optional[dict]:
    n = _FAMILY_FORMULAS[family](m, k)
    if not n:
        return None  # zero n carries no class
    status = builder.classify_support(n, ctx)
    provenance = ""
    verified = ""
    if family in ("s1", "s2", "s3", "s4"):
        exc = builder.classify_d10_exceptional(n)
        if exc is None:
            raise AssertionError(f"family formula left its class: {n!r}")
        if exc.kind in ("ex3", "ex4"):
            cert = builder.construct_d10(ctx, n)
            ok = oracle.verify_quadruple(cert.elements, cert.n, ctx).ok
            status = SupportStatus(SupportTag.CONSTRUCTIBLE_HERE, exc.kind)
            provenance, verified = cert.provenance, "yes" if ok else "no"
        elif exc.kind in ("ex1", "ex2"):
            status = SupportStatus(
                SupportTag.DELEGATED_PRIOR_WORK,
                f"{exc.kind}: reduces by d to a scaled prior-work class",
            )
        else:
            status = SupportStatus(
                SupportTag.OPEN_S0, f"S0 member (family {exc.family})"
            )
    elif status.tag is SupportTag.CONSTRUCTIBLE_HERE:
        if family == "thm12":
            cert = builder.construct_thm12(ctx, n)
        else:
            cert = builder.construct_thm13(ctx, n)
        ok = oracle.verify_quadruple(cert.elements, cert.n, ctx).ok
        provenance, verified = cert.provenance, "yes" if ok else "no"
    return {
        "m": m,
        "k": k,
        "class": _FAMILY_DESC[family],
        "n": f"{n.x},{n.y}",
        "status": status.tag.value,
        "detail": provenance or status.detail,
        "verified": verified,
    }


def _parse_range(raw: str) -> range:
    try:
        lo, hi = raw.split(":")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise CLIError(EXIT_INVALID, f"expected LO:HI got {raw!r}")


def cmd_coverage(args) -> int:
    ctx = _context(args.d)
    _require_admissible(ctx, args.force)
    family = args.family
    if family.startswith("s") and ctx.d != 10:
        raise CLIError(EXIT_INVALID, "exceptional families are defined for d=10 only")
    rows = []
    for m in _parse_range(args.m_range):
        for k in _parse_range(args.k_range):
            row = _coverage_row(ctx, family, m, k)
            if row is not None:
                rows.append(row)
    fields = ["m", "k", "class", "n", "status", "detail", "verified"]
    widths = {
        f: max(len(f), *(len(str(r[f])) for r in rows)) if rows else len(f)
        for f in fields
    }
    print("  ".join(f.ljust(widths[f]) for f in fields))
    for r in rows:
        print("  ".join(str(r[f]).ljust(widths[f]) for f in fields))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=fields)
            writer.writeheader()
            writer.writerows(rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadring",
        description="D(n)-quadruples in Z[sqrt(d)]: construct, search, verify",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pell", help="continued fraction and Pell fundamentals")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("norm6", help="representatives of x^2 - d y^2 = +-6")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--sign", choices=["+", "-"], required=True)
    p.set_defaults(func=cmd_norm6)

    p = sub.add_parser("scan", help="admissible d up to a limit")
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("construct", help="build a D(n)-quadruple certificate")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", required=True, metavar="X,Y")
    p.add_argument(
        "--method",
        choices=["auto", "thm12", "thm13", "ex3", "ex4", "search"],
        default="auto",
    )
    p.add_argument("--t", type=int, default=None, help="unit power for ex3/ex4")
    p.add_argument("--factor-norm-bound", type=int, default=36)
    p.add_argument("--a-norm-bound", type=int, default=36)
    p.add_argument("--unit-power-bound", type=int, default=3)
    p.add_argument("--force", action="store_true", help="skip the admissibility check")
    p.add_argument("--out", default=None, help="also write the document here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="re-verify a certificate document")
    p.add_argument("path", nargs="?", default=None)
    p.add_argument("--inline", default=None, help="document JSON on the command line")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustive box search (brute-force oracle)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", required=True, metavar="X,Y")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("coverage", help="per-class status/verification sweep")
    p.add_argument("--d", type=int, required=True)
    p.add_argument(
        "--family", choices=["thm12", "thm13", "s1", "s2", "s3", "s4"], required=True
    )
    p.add_argument("--m-range", required=True, metavar="LO:HI")
    p.add_argument("--k-range", required=True, metavar="LO:HI")
    p.add_argument("--csv", default=None, help="also write rows as CSV here")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_coverage)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CLIError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except InvalidRing as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
