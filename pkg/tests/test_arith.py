import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from kurepa.arith import (
    FactoredInteger,
    Residue,
    balanced,
    crt_combine,
    factorize,
    factorize_with,
    is_prime,
    mod_inverse,
    prime_powers_below,
    primes_in_range,
    sieve_primes,
    smallest_prime_factors,
)
from kurepa.errors import DomainError, NonCoprimeModuliError, NotInvertibleError, ResourceLimitError


def naive_primes(n):
    return [k for k in range(2, n + 1) if all(k % d for d in range(2, math.isqrt(k) + 1))]


def test_sieve_small():
    assert sieve_primes(10).tolist() == [2, 3, 5, 7]
    assert sieve_primes(2).tolist() == [2]


@pytest.mark.parametrize("limit", [3, 4, 97, 100, 1000, 7919, 50000])
def test_sieve_matches_trial_division(limit):
    assert sieve_primes(limit).tolist() == naive_primes(limit)


def test_sieve_crosses_segments():
    # two segments plus a partial third
    ps = sieve_primes(600_000)
    assert ps.size == 49098
    assert ps[-1] == 599999


def test_sieve_2_23():
    ps = sieve_primes(2**23)
    assert ps.size == 564163
    assert ps[-1] == 8388593


def test_sieve_is_read_only():
    ps = sieve_primes(100)
    with pytest.raises(ValueError):
        ps[0] = 4


def test_sieve_errors():
    with pytest.raises(DomainError):
        sieve_primes(1)
    with pytest.raises(ResourceLimitError):
        sieve_primes(2**31 + 1)
    with pytest.raises(ResourceLimitError):
        sieve_primes(1000, ceiling=100)


def test_primes_in_range_half_open():
    assert primes_in_range(7, 23).tolist() == [7, 11, 13, 17, 19]
    assert primes_in_range(24, 29).tolist() == []


@pytest.mark.parametrize(
    "n, factors",
    [
        (11563, ((31, 1), (373, 1))),
        (1, ()),
        (92504, ((2, 3), (31, 1), (373, 1))),
        (2, ((2, 1),)),
        (1665, ((3, 2), (5, 1), (37, 1))),
    ],
)
def test_factorize_examples(n, factors):
    assert factorize(n).factors == factors


def test_factorize_zero():
    with pytest.raises(DomainError):
        factorize(0)


@given(st.integers(1, 10**9))
def test_factorize_recomposes(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.factors) == n
    assert all(is_prime(p) for p, _ in f.factors)


def test_factorize_with_spf_agrees():
    spf = smallest_prime_factors(5000)
    for n in range(1, 5001):
        assert factorize_with(n, spf) == factorize(n)


def test_factored_integer_format():
    assert str(factorize(92504)) == "2^3*31*373"
    assert str(factorize(1)) == "1"
    assert factorize(49).is_prime_power and not factorize(49).is_prime
    with pytest.raises(DomainError):
        FactoredInteger(12, ((2, 1), (3, 1)))


def test_is_prime_agrees_with_sieve():
    flags = np.zeros(20001, dtype=bool)
    flags[sieve_primes(20000)] = True
    assert [is_prime(n) for n in range(20001)] == flags.tolist()


@pytest.mark.parametrize("n", [2**61 - 1, 10**18 + 9, 3215031751, 2**31 - 1])
def test_is_prime_large(n):
    expected = n != 3215031751  # strong pseudoprime to bases 2, 3, 5, 7
    assert is_prime(n) == expected


def test_mod_inverse_examples():
    assert mod_inverse(8, 11) == Residue(7, 11)
    for m in range(2, 30):
        assert mod_inverse(1, m).value == 1
    with pytest.raises(NotInvertibleError) as exc:
        mod_inverse(2, 4)
    assert exc.value.gcd == 2


@given(st.integers(-10**6, 10**6), st.integers(2, 10**6))
def test_mod_inverse_property(a, m):
    assume(math.gcd(a, m) == 1)
    assert a * mod_inverse(a, m).value % m == 1


def test_crt_examples():
    r = crt_combine([Residue(4, 5), Residue(6, 7)])
    assert r == Residue(34, 35) and r.signed == -1
    assert crt_combine([Residue(0, 9)]) == Residue(0, 9)
    assert crt_combine([Residue(2, 31), Residue(2, 373)]) == Residue(2, 11563)


def test_crt_rejects_common_factor():
    with pytest.raises(NonCoprimeModuliError) as exc:
        crt_combine([Residue(1, 6), Residue(1, 5), Residue(3, 9)])
    assert set(exc.value.pair) == {6, 9}


@st.composite
def coprime_parts(draw):
    primes = draw(st.lists(st.sampled_from(naive_primes(60)), min_size=1, max_size=5, unique=True))
    parts = []
    for p in primes:
        q = p ** draw(st.integers(1, 3))
        parts.append(Residue(draw(st.integers(0, q - 1)), q))
    return parts


@given(coprime_parts())
def test_crt_round_trip(parts):
    r = crt_combine(parts)
    assert r.modulus == math.prod(p.modulus for p in parts)
    for p in parts:
        assert r.value % p.modulus == p.value


@given(st.integers(-10**12, 10**12), st.integers(1, 10**9))
def test_balanced_range(x, m):
    s = Residue.of(x, m).signed
    assert -m < 2 * s <= m
    assert (s - x) % m == 0
    assert s == balanced(x, m)
    assert Residue.of(x, m).value - s in (0, m)


def test_balanced_tie_is_positive():
    assert Residue(3, 6).signed == 3
    assert Residue(4, 6).signed == -2


def test_residue_validation():
    with pytest.raises(DomainError):
        Residue(5, 5)
    with pytest.raises(DomainError):
        Residue(0, 0)
    assert str(Residue(2, 7)) == "2 (mod 7)"
    assert Residue(6, 7).near_miss == 1


def test_prime_powers_below():
    got = prime_powers_below(30, 2)
    assert [Q for _, _, Q in got] == [4, 8, 9, 16, 25, 27]
    assert all(q**e == Q for q, e, Q in got)
