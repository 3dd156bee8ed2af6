"""Command-line front end.

Subcommands::

    involtrace field       --field SPEC [--s S]
    involtrace btable      --field SPEC --u COEFFS [--s S] [--method M] [--format csv|json]
    involtrace kloosterman --field SPEC --u COEFFS
    involtrace verify      --field SPEC --u COEFFS [--s S]
    involtrace prng        [--field SPEC --u COEFFS] [--s S] --count N [--width W]
                           [--mode strict|relaxed] [--entropy os|file:PATH|seed:HEX]
    involtrace audit       --bins B [--low L] [--significance A] [--input PATH]

SPEC is ``p=<int> m=<int> modulus=<c0,...,cm>`` (constant term first) or
``@path`` naming a file holding that line.  COEFFS is a comma-separated
coefficient list in the same basis.

Exit codes: 0 success, 1 a verification or audit failed, 2 bad input,
3 arithmetic inconsistency, 4 entropy exhausted.  Errors are written to
standard error as a single ``error: <Kind>: <message>`` line.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import errors
from .finite_field import parse_field_spec, subfield_view
from .kloosterman import spectrum
from .prng import FileEntropy, PrngConfig, PrngStream, audit_uniformity, parse_entropy, reduction_stream
from .trace_partition import (
    b_0h_closed_form,
    btable_bruteforce,
    btable_closed_form,
    btable_indicator,
    btable_kloosterman,
    verify_all,
)

METHODS = ("bruteforce", "kloosterman", "indicator", "closed-form", "all")

EXIT_FAIL, EXIT_INPUT, EXIT_MATH, EXIT_ENTROPY = 1, 2, 3, 4


class CliInputError(errors.InvoltraceError):
    pass


def _field(text):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read().rstrip("\n")
    return parse_field_spec(text)


def _u(spec, text):
    try:
        coeffs = [int(c) for c in text.split(",")]
    except ValueError:
        raise CliInputError(f"malformed coefficient list {text!r}") from None
    u = spec.element(coeffs)
    if u.is_zero():
        raise errors.ZeroParameter("u must be nonzero")
    return u


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise CliInputError(f"--{name} is required")


def _tables(spec, u, s, method):
    if method == "all":
        names = ["bruteforce", "indicator"] + (["kloosterman", "closed-form"] if s == 1 else [])
    else:
        names = [method]
    if s != 1 and any(n in ("kloosterman", "closed-form") for n in names):
        raise CliInputError(f"method {method} needs a prime base (s=1)")
    build = {
        "bruteforce": lambda: btable_bruteforce(spec, u, s),
        "indicator": lambda: btable_indicator(spec, u, s),
        "kloosterman": lambda: btable_kloosterman(spec, u),
        "closed-form": lambda: btable_closed_form(spec, u),
    }
    return [build[n]() for n in names]


def cmd_field(args, out):
    spec = _field(args.field)
    info = {
        "schema": 1,
        "p": spec.p,
        "m": spec.m,
        "q": spec.q,
        "modulus": list(spec.modulus),
        "primitive_modulus": spec.is_primitive_modulus,
    }
    if args.s is not None:
        view = subfield_view(spec, args.s)
        info["s"] = args.s
        info["subfield_generator"] = list(view.generator.coeffs)
        info["subfield"] = [list(e.coeffs) for e in view.elements]
    out.write(json.dumps(info) + "\n")
    return 0


def cmd_btable(args, out):
    spec = _field(args.field)
    u = _u(spec, args.u)
    tables = _tables(spec, u, args.s, args.method)
    consistent = all(t.same_entries(tables[0]) for t in tables)
    if args.method == "all" and args.s != 1:
        consistent &= bool(np.all(tables[0].table[0, 1:] == b_0h_closed_form(spec, u, args.s)))
    if args.format == "json":
        if args.method == "all":
            doc = {
                "schema": 1,
                "tables": [t.to_dict() for t in tables],
                "verdict": "consistent" if consistent else "inconsistent",
            }
            text = json.dumps(doc) + "\n"
        else:
            text = tables[0].to_json()
    else:
        if args.method == "all":
            parts = [f"# method={t.method}\n{t.to_csv()}" for t in tables]
            parts.append(f"# verdict={'consistent' if consistent else 'inconsistent'}\n")
            text = "".join(parts)
        else:
            text = tables[0].to_csv()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    if not consistent:
        raise errors.NonIntegerCollapse("methods disagree")
    return 0


def cmd_kloosterman(args, out):
    spec = _field(args.field)
    spec_values = spectrum(spec, _u(spec, args.u))
    header = ["t"] + [f"c_{i}" for i in range(spec.p)] + ["real_value"]
    out.write(",".join(header) + "\n")
    for row in spec_values.csv_rows():
        out.write(row + "\n")
    return 0


def cmd_verify(args, out):
    spec = _field(args.field)
    u = _u(spec, args.u)
    table = btable_bruteforce(spec, u, args.s)
    if args.fault:
        h, k = (int(x) for x in args.fault.split(","))
        table.table[h, k] += 1
    results = verify_all(table)
    ok = all(r.passed for r in results)
    report = {
        "schema": 1,
        "field": str(spec),
        "u": ",".join(map(str, u.coeffs)),
        "s": args.s,
        "checks": [r.to_dict() for r in results],
        "verdict": "pass" if ok else "fail",
    }
    out.write(json.dumps(report) + "\n")
    return 0 if ok else EXIT_FAIL


def cmd_prng(args, out):
    entropy = parse_entropy(args.entropy)
    batch = 1 if isinstance(entropy, FileEntropy) else 1024
    if args.width is not None:
        if args.field is not None:
            raise CliInputError("--width uses its own prime field; omit --field")
        stream = reduction_stream(args.width, entropy)
    else:
        _need(args, "field", "u")
        spec = _field(args.field)
        stream = PrngStream(PrngConfig(spec, _u(spec, args.u), args.s, args.mode), entropy, batch=batch)
    for v in stream.values(args.count):
        out.write(f"{v}\n")
    return 0


def cmd_audit(args, out):
    fh = open(args.input) if args.input else sys.stdin
    try:
        values = [int(line) for line in fh if line.strip()]
    except ValueError:
        raise CliInputError("audit input must hold one integer per line") from None
    finally:
        if args.input:
            fh.close()
    report = audit_uniformity(values, args.bins, args.low, args.significance)
    out.write(report.to_json())
    return 0 if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="involtrace",
        description="Trace partitions of finite fields under z -> u/z, and a trace-based PRNG.",
        epilog=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def field_opts(p, required=True):
        p.add_argument("--field", required=required, help="field spec or @file")
        p.add_argument("--u", required=required, help="comma-separated coefficients of u")
        p.add_argument("--s", type=int, default=1, help="base subfield degree (default 1)")

    p = sub.add_parser("field", help="validate a field spec and describe it")
    p.add_argument("--field", required=True)
    p.add_argument("--s", type=int, default=None)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("btable", help="compute the cardinality table")
    field_opts(p)
    p.add_argument("--method", choices=METHODS, default="bruteforce")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output")
    p.set_defaults(func=cmd_btable)

    p = sub.add_parser("kloosterman", help="Kloosterman spectrum K(1, t*u) as CSV")
    p.add_argument("--field", required=True)
    p.add_argument("--u", required=True)
    p.set_defaults(func=cmd_kloosterman)

    p = sub.add_parser("verify", help="check the symmetry, permutation and bound properties")
    field_opts(p)
    p.add_argument("--fault", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prng", help="stream pseudorandom values, one per line")
    field_opts(p, required=False)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--width", type=int)
    p.add_argument("--mode", choices=("strict", "relaxed"), default="strict")
    p.add_argument("--entropy", default="os")
    p.set_defaults(func=cmd_prng)

    p = sub.add_parser("audit", help="chi-square uniformity audit of integer values")
    p.add_argument("--bins", type=int, required=True)
    p.add_argument("--low", type=int, default=0)
    p.add_argument("--significance", type=float, default=0.999)
    p.add_argument("--input")
    p.set_defaults(func=cmd_audit)
    return parser


def _fail(code, exc):
    msg = " ".join(str(exc).split())
    sys.stderr.write(f"error: {type(exc).__name__}: {msg}\n")
    return code


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except errors.EntropyExhausted as exc:
        return _fail(EXIT_ENTROPY, exc)
    except (errors.NonIntegerCollapse, errors.NonRealResult) as exc:
        return _fail(EXIT_MATH, exc)
    except (errors.InvoltraceError, ValueError, OSError) as exc:
        return _fail(EXIT_INPUT, exc)


if __name__ == "__main__":
    sys.exit(main())
