#!/usr/bin/env python3
"""Confirm 11563 | K_11563 by eliminating the 11559 x 11559 matrix directly,
modulo 31, modulo 373 and modulo 11563, next to the O(n) derangement path."""

from __future__ import annotations

import argparse
import resource
import time

from kurepa.determinants import (
    kurepa_det_mod,
    kurepa_det_mod_composite,
    kurepa_det_mod_via_derangement,
)
from kurepa.sequences import subfactorial_mod


def timed(label, fn):
    t = time.perf_counter()
    value = fn()
    print(f"{label:<44} {value!s:>18}   {time.perf_counter() - t:7.2f}s")
    return value


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=11563)
    args = ap.parse_args()
    n = args.n

    timed(f"S_{n - 1} mod {n} (recurrence)", lambda: subfactorial_mod(n - 1, n))
    timed(f"K_{n} mod {n} (derangement congruence)", lambda: kurepa_det_mod_via_derangement(n))
    for p in (31, 373):
        if n % p == 0:
            timed(f"K_{n} mod {p} (elimination over F_{p})", lambda p=p: kurepa_det_mod(n, p))
    timed(f"K_{n} mod {n} (prime-power elimination + CRT)", lambda: kurepa_det_mod_composite(n, n))
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
    print(f"peak resident memory: {peak:.0f} MiB")


if __name__ == "__main__":
    main()
