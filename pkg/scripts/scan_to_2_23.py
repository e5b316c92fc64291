#!/usr/bin/env python3
"""Opt-in long job: all odd primes p < 2^23 with min(r, p - r) <= 10, and
every odd composite n < 2^23 with S_(n-1) = 2 (mod n).

Hours of single-core time.  Both scans checkpoint after each block; rerun
the same command to resume.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from kurepa.scanner import ScanConfig, run_scan, write_csv

LIMIT = 2**23


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dir", type=Path, default=Path("scan_2_23"))
    ap.add_argument("--hi", type=int, default=LIMIT)
    ap.add_argument("--bound", type=int, default=10)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--block-size", type=int, default=200_000)
    ap.add_argument("--only", choices=("kurepa", "strong"))
    args = ap.parse_args()
    args.dir.mkdir(parents=True, exist_ok=True)

    found = False
    plans = [("kurepa", 3, args.bound), ("strong", 9, 2)]
    for kind, lo, bound in plans:
        if args.only and kind != args.only:
            continue
        cfg = ScanConfig(lo, args.hi, bound, block_size=args.block_size)
        ck = args.dir / f"{kind}.checkpoint.jsonl"
        t = time.perf_counter()

        def progress(block, recs, kind=kind, t=t):
            print(f"{kind}: [{block[0]}, {block[1]}) done, {len(recs)} hits, {time.perf_counter() - t:.0f}s",
                  file=sys.stderr, flush=True)

        recs = run_scan(kind, cfg, checkpoint=ck, resume=True, jobs=args.jobs, on_block=progress)
        with open(args.dir / f"{kind}.csv", "w", newline="") as fh:
            write_csv(recs, fh)
        print(f"{kind}: {len(recs)} records below {args.hi}")
        if kind == "kurepa":
            zero = [r.n for r in recs if r.r_signed == 0]
            print(f"  near misses: {[r.n for r in recs]}")
            found |= bool(zero)
        else:
            print(f"  odd composites with S_(n-1) = 2: {[r.n for r in recs]}")
            found |= bool(recs)
    return 2 if found else 0


if __name__ == "__main__":
    sys.exit(main())
