import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kurepa.errors import DomainError, ResourceLimitError
from kurepa.heuristics import (
    HeuristicEstimate,
    estimate,
    expected_near_miss_count,
    kurepa_event_probability,
)
from kurepa.arith import sieve_primes


@pytest.mark.parametrize(
    "x, y, d, want, tol",
    [
        (23, 2**23, 9, 30.8977, 1e-3),
        (3, 2**23, 0, 2.67493, 1e-5),
        (353, 2**23, 0, 0.999729, 1e-6),
        (1000, 100000, 99, 101.654, 1e-2),
        (2**23, 1e19, 0, 1.00949, 1e-4),
    ],
)
def test_mertens_constants(x, y, d, want, tol):
    assert abs(expected_near_miss_count(x, y, d) - want) <= tol


def test_mertens_shrinks_to_zero():
    vals = [expected_near_miss_count(1000, 1000 * (1 + eps), 3) for eps in (1e-1, 1e-3, 1e-6)]
    assert vals[0] > vals[1] > vals[2] > 0
    assert vals[2] < 1e-5


def test_exact_sum_is_closed_interval():
    # 101 and 103 are both prime; both endpoints count
    assert expected_near_miss_count(101, 103, 0, "exact") == pytest.approx(1 / 101 + 1 / 103, rel=1e-15)


def test_exact_vs_mertens_close():
    exact = expected_near_miss_count(1e3, 1e6, 1, "exact")
    approx = expected_near_miss_count(1e3, 1e6, 1, "mertens")
    assert abs(exact - approx) / approx < 0.05


def test_event_probability_constants():
    assert abs(kurepa_event_probability(4, 2**23) - 0.105652) <= 1e-4
    assert kurepa_event_probability(24, 28) == 1.0
    assert kurepa_event_probability(3, 4) == pytest.approx(2 / 3, rel=1e-15)
    # 2 is never a factor
    assert kurepa_event_probability(2, 4) == pytest.approx(2 / 3, rel=1e-15)


def test_event_probability_log_domain_matches_product():
    ps = sieve_primes(10**6)[1:].astype(float)
    naive = float(np.prod(1 - 1 / ps))
    assert kurepa_event_probability(3, 10**6) == pytest.approx(naive, rel=1e-12)


@given(st.integers(3, 5000), st.integers(1, 5000), st.integers(1, 5000))
def test_monotone_in_interval(x, w1, w2):
    y1, y2 = x + w1, x + w1 + w2
    assert kurepa_event_probability(x, y2) <= kurepa_event_probability(x, y1)
    assert expected_near_miss_count(x, y2, 2, "exact") >= expected_near_miss_count(x, y1, 2, "exact")
    assert expected_near_miss_count(x, y2, 2) >= expected_near_miss_count(x, y1, 2)


def test_errors():
    with pytest.raises(DomainError):
        expected_near_miss_count(10, 10, 1)
    with pytest.raises(DomainError):
        expected_near_miss_count(2, 10, 1)
    with pytest.raises(DomainError):
        expected_near_miss_count(3, 10, -1)
    with pytest.raises(DomainError):
        expected_near_miss_count(3, 10, 1, "bogus")
    with pytest.raises(DomainError):
        kurepa_event_probability(100, 50)
    with pytest.raises(ResourceLimitError):
        kurepa_event_probability(3, 2**32)


def test_estimate_bundle():
    e = estimate(3, 2**23, d=0)
    assert isinstance(e, HeuristicEstimate) and e.d == 0
    assert e.value == pytest.approx(math.log(math.log(2**23) / math.log(3)))
    assert estimate(3, 4, mode="product").value == pytest.approx(2 / 3)
    with pytest.raises(DomainError):
        estimate(3, 10)
