"""Heuristic counts and probabilities for near-misses among primes.

If S_{p-1} mod p behaves like a uniform random residue, the expected
number of primes p in [x, y] with near-miss distance <= d is
(2d+1) * sum 1/p, which Mertens' theorem approximates by
(2d+1) * log(log y / log x).  The chance that no odd prime in [x, y]
is a counterexample is prod (1 - 1/p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .arith import SIEVE_CEILING, sieve_primes
from .errors import DomainError, ResourceLimitError

Mode = Literal["exact", "mertens"]


@dataclass(frozen=True)
class HeuristicEstimate:
    x: float
    y: float
    value: float
    mode: str
    d: int | None = None


def _odd_primes_between(x: float, y: float) -> np.ndarray:
    """Odd primes p with x <= p <= y (closed interval)."""
    top = math.floor(y)
    if top > SIEVE_CEILING:
        raise ResourceLimitError(f"y = {y} exceeds the sieve ceiling {SIEVE_CEILING}")
    if top < 3:
        return np.empty(0, dtype=np.int64)
    ps = sieve_primes(top)
    ps = ps[np.searchsorted(ps, math.ceil(x)) :]
    return ps[ps != 2]


def _check_interval(x: float, y: float) -> None:
    if not x < y:
        raise DomainError(f"need x < y, got [{x}, {y}]")


def expected_near_miss_count(x: float, y: float, d: int, mode: Mode = "mertens") -> float:
    """Expected number of primes in [x, y] whose residue is within d of zero."""
    _check_interval(x, y)
    if x < 3:
        raise DomainError(f"x must be at least 3, got {x}")
    if d < 0:
        raise DomainError(f"d must be nonnegative, got {d}")
    if mode == "mertens":
        return (2 * d + 1) * math.log(math.log(y) / math.log(x))
    if mode == "exact":
        ps = _odd_primes_between(x, y)
        return (2 * d + 1) * math.fsum((1.0 / ps).tolist())
    raise DomainError(f"unknown mode {mode!r}")


def kurepa_event_probability(x: float, y: float) -> float:
    """prod (1 - 1/p) over odd primes x <= p <= y, accumulated in log space.

    The prime 2 never contributes, even when x <= 2.
    """
    _check_interval(x, y)
    ps = _odd_primes_between(x, y).astype(np.float64)
    if ps.size == 0:
        return 1.0
    return math.exp(math.fsum(np.log1p(-1.0 / ps).tolist()))


def estimate(x: float, y: float, *, d: int | None = None, mode: str = "mertens") -> HeuristicEstimate:
    """Bundle either estimator with its inputs; ``mode='product'`` selects the event probability."""
    if mode == "product":
        return HeuristicEstimate(x, y, kurepa_event_probability(x, y), mode)
    if d is None:
        raise DomainError("expected-count estimates need d")
    return HeuristicEstimate(x, y, expected_near_miss_count(x, y, d, mode), mode, d)
