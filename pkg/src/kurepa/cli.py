"""Command-line interface.

Exit status: 0 clean, 1 usage or internal error, 2 counterexample found.
Every option can also be set through an environment variable named
KUREPA_<OPTION>, e.g. KUREPA_JOBS=4; an explicit flag wins.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Callable, Optional

from . import determinants as det
from . import heuristics, scanner, sequences, verify
from .arith import Residue, is_prime
from .errors import CheckpointError, KurepaError

EXIT_OK, EXIT_ERROR, EXIT_FINDING = 0, 1, 2
ENV_PREFIX = "KUREPA_"

SCAN_DEFAULTS = {
    # kind: (lo, hi, bound)
    "kurepa": (3, 100000, 2),
    "strong": (9, 20000, 2),
    "table1": (2, 100000, 2),
    "table2": (7, 2500, 10),
    "prime-powers": (4, 100000, 2),
    "bell-one": (2, 20000, 0),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _env(name: str, kind: Callable = str, fallback=None):
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None:
        return fallback
    try:
        return kind(raw)
    except ValueError as exc:
        raise UsageError(f"bad value {raw!r} in {ENV_PREFIX}{name.upper()}: {exc}") from exc


def _flag(p: argparse.ArgumentParser, name: str, kind: Callable = str, fallback=None, **kw):
    p.add_argument(f"--{name}", type=kind, default=_env(name.replace("-", "_"), kind, fallback), **kw)


def _real(x: float, precision: int) -> str:
    return f"{x:.{precision}g}"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kurepa", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("seq", help="left factorial, derangement or Bell number")
    p.add_argument("name", choices=("leftfact", "subfact", "bell"))
    p.add_argument("n", type=int)
    _flag(p, "mod", int, help="reduce modulo M and print canonical and signed residues")

    p = sub.add_parser("det", help="Kurepa determinant K_n and relatives")
    p.add_argument("n", type=int)
    _flag(p, "mod", int, help="residue modulo M instead of the exact value")
    p.add_argument("--binary", action="store_true", help="parity determinant K'_n")
    p.add_argument("--lemma-d", action="store_true", help="auxiliary determinant D_n")
    _flag(p, "via", str, None, choices=("exact", "elim", "derangement"),
          help="evaluation path (default: exact without --mod, elimination with it)")

    p = sub.add_parser(
        "scan",
        help="range scans; exit 2 when a kurepa/strong scan finds a counterexample",
        description="Range scans.  Exit status 2 means a kurepa scan hit a prime with "
        "residue 0 or a strong scan hit an odd composite n with S_(n-1) = 2 (mod n).",
    )
    p.add_argument("kind", choices=scanner.KINDS)
    _flag(p, "lo", int)
    _flag(p, "hi", int)
    _flag(p, "bound", int, help="residue bound d")
    _flag(p, "ratio-bound", float, help="also emit rows with 0 < |r|/n <= this (table1)")
    _flag(p, "filter", str, None, choices=scanner.FILTERS, help="class filter (table1)")
    _flag(p, "format", str, "csv", choices=("csv", "json", "pretty"))
    _flag(p, "checkpoint", str, help="JSONL checkpoint file, rewritten atomically after each block")
    p.add_argument("--resume", action="store_true", default=_env("resume", lambda s: s not in ("", "0"), False))
    _flag(p, "jobs", int, 1)
    _flag(p, "block-size", int, 10000)
    _flag(p, "output", str, help="write the report here instead of stdout")

    p = sub.add_parser("heuristic", help="near-miss heuristics")
    p.add_argument("kind", choices=("expected-count", "event-prob"))
    _flag(p, "x", float, required=_env("x") is None)
    _flag(p, "y", float, required=_env("y") is None)
    _flag(p, "d", int, 0)
    _flag(p, "mode", str, "mertens", choices=("exact", "mertens"))
    _flag(p, "precision", int, 6, help="significant digits")

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("suite", choices=tuple(verify.SUITES))
    _flag(p, "max", int, help="upper end of the suite's parameter range")
    return parser


def _cmd_seq(a, out) -> int:
    if a.mod is None:
        fn = {"leftfact": sequences.left_factorial, "subfact": sequences.subfactorial}.get(a.name)
        value = fn(a.n) if fn else sequences.bell_numbers(a.n)[a.n]
        print(value, file=out)
        return EXIT_OK
    if a.name == "leftfact":
        r = sequences.left_factorial_mod(a.n, a.mod)
    elif a.name == "subfact":
        r = sequences.subfactorial_mod(a.n, a.mod)
    else:
        r = sequences.bell_mod(a.n, a.mod)
    print(f"{r.value} (signed {r.signed})", file=out)
    return EXIT_OK


def _cmd_det(a, out) -> int:
    if a.lemma_d:
        print(f"{det.lemma_det_D(a.n)} (exact)", file=out)
        return EXIT_OK
    if a.binary:
        print(f"{det.kurepa_binary_det(a.n)} (exact)", file=out)
        return EXIT_OK
    via = a.via or ("exact" if a.mod is None else "elim")
    if via == "exact" and a.n > det.EXACT_CEILING:
        raise UsageError(
            f"exact K_{a.n} is above the exact ceiling {det.EXACT_CEILING}; use the modular path "
            f"(--mod M, or --mod {a.n} --via derangement for odd n)"
        )
    if via == "elim" and a.n > det.ELIMINATION_CEILING:
        raise UsageError(
            f"order {a.n - 4} is above the elimination ceiling {det.ELIMINATION_CEILING}; "
            "use --via derangement for odd n"
        )
    if a.mod is None:
        if via != "exact":
            raise UsageError(f"--via {via} needs --mod")
        print(f"{det.kurepa_det_exact(a.n)} (exact)", file=out)
        return EXIT_OK
    m = a.mod
    if via == "exact":
        r = Residue.of(det.kurepa_det_exact(a.n), m)
    elif via == "elim":
        if is_prime(m):
            r = det.kurepa_det_mod(a.n, m)
        elif m >= 4:
            r = det.kurepa_det_mod_composite(a.n, m)
        else:
            r = det.det_mod(det.kurepa_matrix(a.n), m)
    else:
        if a.n % m:
            raise UsageError("--via derangement gives K_n mod n; --mod must divide n")
        r = Residue.of(det.kurepa_det_mod_via_derangement(a.n).value, m)
    print(f"{r.value} (signed {r.signed}, {via})", file=out)
    return EXIT_OK


def _cmd_scan(a, out) -> int:
    lo, hi, bound = SCAN_DEFAULTS[a.kind]
    cfg = scanner.ScanConfig(
        lo=lo if a.lo is None else a.lo,
        hi=hi if a.hi is None else a.hi,
        residue_bound=bound if a.bound is None else a.bound,
        ratio_bound=a.ratio_bound,
        filter=a.filter,
        block_size=a.block_size,
    )
    if cfg.long_running:
        print(f"note: hi = {cfg.hi} is above 2^23; this scan is long-running", file=sys.stderr)
    fh = open(a.output, "w", newline="") if a.output else out
    found = []
    pretty: list = []
    first = [True]

    def emit(block, recs):
        found.extend(r for r in recs if scanner.is_counterexample(a.kind, r))
        if a.format == "pretty":
            pretty.extend(recs)
        elif a.format == "json":
            scanner.write_jsonl(recs, fh)
        else:
            scanner.write_csv(recs, fh, header=first[0])
            first[0] = False
        fh.flush()

    try:
        scanner.run_scan(a.kind, cfg, checkpoint=a.checkpoint, resume=a.resume, jobs=a.jobs, on_block=emit)
        if a.format == "pretty":
            scanner.write_pretty(pretty, fh)
        elif a.format == "csv" and first[0]:
            scanner.write_csv([], fh)
    finally:
        if fh is not out:
            fh.close()
    if found:
        ns = ", ".join(str(r.n) for r in found)
        print(f"counterexample found: n = {ns}", file=sys.stderr)
        return EXIT_FINDING
    return EXIT_OK


def _cmd_heuristic(a, out) -> int:
    if a.kind == "event-prob":
        v = heuristics.kurepa_event_probability(a.x, a.y)
    else:
        v = heuristics.expected_near_miss_count(a.x, a.y, a.d, a.mode)
    print(_real(v, a.precision), file=out)
    return EXIT_OK


def _cmd_verify(a, out) -> int:
    passed = failed = 0
    for case in verify.run_suite(a.suite, a.max):
        tag = "PASS" if case.passed else "FAIL"
        print(f"{tag} {a.suite} {case.name}" + (f"  {case.detail}" if case.detail else ""), file=out)
        passed += case.passed
        failed += not case.passed
    print(f"{a.suite}: {passed} passed, {failed} failed", file=out)
    return EXIT_OK if failed == 0 else EXIT_ERROR


COMMANDS = {
    "seq": _cmd_seq,
    "det": _cmd_det,
    "scan": _cmd_scan,
    "heuristic": _cmd_heuristic,
    "verify": _cmd_verify,
}


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    except UsageError as exc:
        print(f"kurepa: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except CheckpointError as exc:
        print(f"kurepa: checkpoint error: {exc}", file=sys.stderr)
        print("hint: rerun without --resume to start over, or pass a different --checkpoint path", file=sys.stderr)
        return EXIT_ERROR
    except KurepaError as exc:
        print(f"kurepa: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
