"""Command-line front end.

Standard output carries only results (``ℓ<TAB>s<TAB>g`` rows, series, fitted
functions); diagnostics go to standard error.  Exit codes: 0 success,
1 verification mismatch, 2 resource or overflow failure, 3 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import tempfile
from contextlib import nullcontext

from .engine import MODES, Enumeration, template_counts
from .errors import BraidGrowthError
from .oracle import bfs_enumerate
from .series import RationalFn, expand, find_fit, parse_poly, read_series, verify
from .words import Alphabet, Kind

EXIT_OK, EXIT_MISMATCH, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 3

log = logging.getLogger("braidgrowth")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_run_args(p, modes):
    p.add_argument("--strands", "-n", type=int, required=True, help="number of strands n >= 2")
    p.add_argument("--gens", choices=[k.value for k in Kind], default="artin", help="generating set")
    p.add_argument("--max-len", "-l", type=int, required=True, help="largest word length")
    if modes:
        p.add_argument("--mode", choices=modes, default="red-combi")
        p.add_argument("--store", metavar="DIR", help="store directory (default: temporary, removed afterwards)")
        p.add_argument("--workers", type=int, default=1, metavar="K")
        p.add_argument("--mem-cap", type=int, default=None, metavar="BYTES", help="per-task memory cap")
        p.add_argument("--resume", action="store_true", help="continue the run recorded in --store")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="braidgrowth", description="Spherical and geodesic growth of braid groups.")
    parser.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="print l, s(l), g(l) for l = 0..max-len")
    _add_run_args(p, [*MODES, "oracle"])

    p = sub.add_parser("check", help="compare oracle, combi and red-combi (exit 1 on disagreement)")
    _add_run_args(p, None)
    p.add_argument("--workers", type=int, default=1, metavar="K")

    p = sub.add_parser("fit", help="minimal-degree rational function through a series file")
    p.add_argument("series", help="text file, one integer per line")
    p.add_argument("--max-degree", type=int, default=12, help="largest numerator + denominator degree")
    p.add_argument("--surplus", type=int, default=3, help="coefficients required beyond the fit window")

    p = sub.add_parser("expand", help="Taylor coefficients of a rational function")
    p.add_argument("--num", required=True, help="numerator coefficients, ascending, comma separated")
    p.add_argument("--den", required=True, help="denominator coefficients, ascending, comma separated")
    p.add_argument("--terms", "-N", type=int, required=True, help="highest power to print")

    p = sub.add_parser("verify", help="compare a series file with a rational function (exit 1 on mismatch)")
    p.add_argument("series")
    p.add_argument("--num", required=True)
    p.add_argument("--den", required=True)
    return parser


def _alphabet(args) -> Alphabet:
    if args.strands < 2:
        raise UsageError("--strands must be at least 2")
    if args.max_len < 0:
        raise UsageError("--max-len must be non-negative")
    if getattr(args, "workers", 1) < 1:
        raise UsageError("--workers must be at least 1")
    return Alphabet(args.strands, Kind(args.gens))


def _print_table(s, g, out):
    for ell, (a, b) in enumerate(zip(s, g)):
        out.write(f"{ell}\t{a}\t{b}\n")


def cmd_enumerate(args, out) -> int:
    alphabet = _alphabet(args)
    if args.mode == "oracle":
        res = bfs_enumerate(alphabet.n, alphabet.kind, args.max_len)
        _print_table(res.s, res.g, out)
        return EXIT_OK
    if args.resume and not args.store:
        raise UsageError("--resume needs --store")
    if args.mem_cap is not None and args.mem_cap <= 0:
        raise UsageError("--mem-cap must be positive")
    ctx = nullcontext(args.store) if args.store else tempfile.TemporaryDirectory(prefix="braidgrowth-")
    with ctx as root:
        run = Enumeration(alphabet, root, mode=args.mode, workers=args.workers, mem_cap=args.mem_cap)
        s, g = run.run(args.max_len, resume=args.resume)
    _print_table(s, g, out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    alphabet = _alphabet(args)
    if args.max_len > 7:
        raise UsageError("check is meant for --max-len <= 7")
    ref = bfs_enumerate(alphabet.n, alphabet.kind, args.max_len)
    for mode in MODES:
        with tempfile.TemporaryDirectory(prefix="braidgrowth-check-") as root:
            s, g = Enumeration(alphabet, root, mode=mode, workers=args.workers).run(args.max_len)
            for ell in range(args.max_len + 1):
                for name, mine, theirs in (("s", s[ell], ref.s[ell]), ("g", g[ell], ref.g[ell])):
                    if mine != theirs:
                        print(f"mismatch at l={ell}, {name}: {mode} gives {mine}, oracle {theirs}", file=sys.stderr)
                        return EXIT_MISMATCH
                counts = {(t.perm, t.links): c for t, c in template_counts(root, alphabet, ell, mode).items()}
                if counts != ref.templates[ell]:
                    print(f"mismatch at l={ell}, per-template counts: {mode} disagrees with oracle", file=sys.stderr)
                    return EXIT_MISMATCH
    _print_table(ref.s, ref.g, out)
    return EXIT_OK


def cmd_fit(args, out) -> int:
    series = read_series(args.series)
    res = find_fit(series.coeffs, args.max_degree, args.surplus)
    if res is None:
        out.write("no rational fit\n")
        return EXIT_OK
    out.write(f"{res.fn}\n")
    out.write(f"num: {list(res.fn.num)}\n")
    out.write(f"den: {list(res.fn.den)}\n")
    log.info("degrees (%d, %d), %d surplus coefficients matched", res.d_num, res.d_den, res.surplus)
    return EXIT_OK


def _rational(args) -> RationalFn:
    try:
        return RationalFn(tuple(parse_poly(args.num)), tuple(parse_poly(args.den)))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_expand(args, out) -> int:
    if args.terms < 0:
        raise UsageError("--terms must be non-negative")
    for c in expand(_rational(args), args.terms):
        out.write(f"{c}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = verify(read_series(args.series), _rational(args))
    out.write(f"{report}\n")
    return EXIT_OK if report.ok else EXIT_MISMATCH


COMMANDS = {
    "enumerate": cmd_enumerate,
    "check": cmd_check,
    "fit": cmd_fit,
    "expand": cmd_expand,
    "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help (0) and on usage errors (3, see _Parser)
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"braidgrowth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BraidGrowthError, OverflowError, MemoryError, OSError) as exc:
        print(f"braidgrowth: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        # malformed input files
        print(f"braidgrowth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
