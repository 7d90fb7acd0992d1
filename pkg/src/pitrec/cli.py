"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data/input error, 3 verification
failure.  All results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import codec, metrics
from .errors import PitrecError
from .radix import decompose

USAGE_ERROR = 1
DATA_ERROR = 2
VERIFY_ERROR = 3


def format_fixed(value: Fraction, places: int = 6) -> str:
    """Render an exact nonnegative rational with fixed places, half-to-even."""
    scale = 10**places
    q, r = divmod(value.numerator * scale, value.denominator)
    if 2 * r > value.denominator or (2 * r == value.denominator and q % 2):
        q += 1
    whole, frac = divmod(q, scale)
    return f"{whole}.{frac:0{places}d}"


def _report_fields(rep: metrics.CompressionReport) -> str:
    k = rep.k_min
    return (f"n={rep.params.n} d={rep.params.d} case={rep.case_tag.value} "
            f"L1={rep.L1} L2={rep.L2} k={rep.L2}/{rep.L1} = {k.numerator}/{k.denominator} "
            f"~ {format_fixed(k)}")


def cmd_analyze(args: argparse.Namespace) -> int:
    rep = metrics.report(decompose(args.alphabet, args.base))
    print(f"p={int(rep.params.p)} l_A={rep.params.l_A} S={rep.S} {_report_fields(rep)}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    reports = metrics.sweep(args.alphabet, args.base_min, args.base_max)
    best = min(reports, key=lambda r: (r.k_min, r.params.p))
    argmin = (f"argmin p={int(best.params.p)} "
              f"kmin={best.k_min.numerator}/{best.k_min.denominator} "
              f"~ {format_fixed(best.k_min)}")
    if args.csv:
        print("p,n,d,case,L1,L2,kmin_num,kmin_den,kmin_decimal")
        for rep in reports:
            print(f"{int(rep.params.p)},{rep.params.n},{rep.params.d},{rep.case_tag.value},"
                  f"{rep.L1},{rep.L2},{rep.k_min.numerator},{rep.k_min.denominator},"
                  f"{format_fixed(rep.k_min)}")
        print(f"# {argmin}")
    else:
        for rep in reports:
            print(f"p={int(rep.params.p)} {_report_fields(rep)}")
        print(argmin)
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    rows = metrics.reference_rows()
    for row in rows:
        verdict = "PASS" if row.passed else "FAIL"
        print(f"p={row.p:<4} computed={format_fixed(row.computed)} "
              f"reference={plain_decimal(row.reference)} |delta|={format_fixed(row.delta)} {verdict}")
    ok = sum(row.passed for row in rows)
    print(f"{ok}/{len(rows)} rows within tolerance {plain_decimal(metrics.REFERENCE_TOLERANCE)}")
    return 0 if ok == len(rows) else VERIFY_ERROR


def plain_decimal(value: Fraction) -> str:
    """Shortest decimal rendering for values like 0.7, 0.0075, or 1."""
    if value.denominator == 1:
        return str(value.numerator)
    text = format_fixed(value, 6).rstrip("0")
    return text + "0" if text.endswith(".") else text


def cmd_encode(args: argparse.Namespace) -> int:
    with open(args.input, "rb") as fh:
        data = fh.read()
    file = codec.bytes_to_symbols(data, args.alphabet)
    container = codec.encode(file, args.base, args.passes)
    with open(args.output, "wb") as fh:
        fh.write(container.to_bytes())
    return 0


def cmd_decode(args: argparse.Namespace) -> int:
    with open(args.input, "rb") as fh:
        data = fh.read()
    file = codec.decode(codec.PitrContainer.from_bytes(data))
    with open(args.output, "wb") as fh:
        fh.write(codec.symbols_to_bytes(file))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = metrics.run_verification(args.max_base, args.max_rank)
    failed = [res for res in results if not res.ok]
    for res in results:
        status = "OK" if res.ok else "MISMATCH"
        extra = f"  ({res.detail})" if res.ok and res.detail else ""
        print(f"{res.name:<32} {res.cases:>10} cases  {status}{extra}")
    if failed:
        for res in failed:
            print(res.detail)
        print("verification failed")
        return VERIFY_ERROR
    print("all checks passed")
    return 0


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems by default; the contract wants 1.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pitrec", description="Pit-recoding analysis and codec")
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="exact compression report for one base")
    p_analyze.add_argument("--alphabet", type=int, required=True, help="alphabet size l_A")
    p_analyze.add_argument("--base", type=int, required=True, help="pit base p")
    p_analyze.set_defaults(func=cmd_analyze)

    p_sweep = sub.add_parser("sweep", help="reports over a range of bases")
    p_sweep.add_argument("--alphabet", type=int, required=True)
    p_sweep.add_argument("--base-min", type=int, required=True)
    p_sweep.add_argument("--base-max", type=int, required=True)
    p_sweep.add_argument("--csv", action="store_true", help="machine-readable output")
    p_sweep.set_defaults(func=cmd_sweep)

    p_table = sub.add_parser("table", help="compare computed k_min against the reference table")
    p_table.set_defaults(func=cmd_table)

    p_encode = sub.add_parser("encode", help="recode a file into a PITR container")
    p_encode.add_argument("--base", type=int, required=True)
    p_encode.add_argument("--passes", type=int, default=1)
    p_encode.add_argument("--alphabet", type=int, default=256,
                          help="symbol alphabet of the input (default 256: raw bytes)")
    p_encode.add_argument("input")
    p_encode.add_argument("output")
    p_encode.set_defaults(func=cmd_encode)

    p_decode = sub.add_parser("decode", help="restore the original file from a container")
    p_decode.add_argument("input")
    p_decode.add_argument("output")
    p_decode.set_defaults(func=cmd_decode)

    p_verify = sub.add_parser("verify", help="run the formula verification suite")
    p_verify.add_argument("--max-base", type=int, default=16)
    p_verify.add_argument("--max-rank", type=int, default=6)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # raised by argparse for usage errors and --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (PitrecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
