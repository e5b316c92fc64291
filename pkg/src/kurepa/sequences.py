"""Left factorials, derangement numbers and Bell numbers: exact and modular."""

from __future__ import annotations

import math
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels
from .arith import FactoredInteger, Residue, crt_combine, factorize, is_prime
from .errors import DomainError


def _check_nonneg(n: int) -> None:
    if n < 0:
        raise DomainError(f"index must be nonnegative, got {n}")


def left_factorial(n: int) -> int:
    """!n = 0! + 1! + ... + (n-1)!, with !0 = 0."""
    _check_nonneg(n)
    total, f = 0, 1
    for k in range(n):
        total += f
        f *= k + 1
    return total


def left_factorial_mod(n: int, m: int) -> Residue:
    _check_nonneg(n)
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    total, f = 0, 1 % m
    for k in range(n):
        total = (total + f) % m
        f = f * (k + 1) % m
    return Residue(total, m)


def left_factorial_gcd(n: int) -> int:
    if n < 2:
        raise DomainError(f"gcd(!n, n!) is defined here for n >= 2, got {n}")
    return math.gcd(left_factorial(n), math.factorial(n))


def subfactorial(n: int) -> int:
    _check_nonneg(n)
    s = 1
    for m in range(1, n + 1):
        s = m * s + (1 if m % 2 == 0 else -1)
    return s


def subfactorial_mod(n: int, m: int) -> Residue:
    """S_n mod m by running the derangement recurrence modulo m."""
    _check_nonneg(n)
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    if m < _kernels.WORD_MODULUS_LIMIT and n > 64:
        s = int(_kernels.subfactorial_residues(np.array([n], dtype=np.int64), np.array([m], dtype=np.int64))[0])
        return Residue(s, m)
    s = 1 % m
    for k in range(1, n + 1):
        s = (k * s + (1 if k % 2 == 0 else -1)) % m
    return Residue(s, m)


# prime power Q -> S_{Q-1} mod Q; scans reuse each entry across all multiples of Q
_PRIME_POWER_RESIDUES: dict[int, int] = {}


def prime_power_residue(q: int) -> int:
    v = _PRIME_POWER_RESIDUES.get(q)
    if v is None:
        v = subfactorial_mod(q - 1, q).value
        _PRIME_POWER_RESIDUES[q] = v
    return v


def seed_prime_power_residues(qs) -> None:
    """Fill the prime power cache for all of ``qs`` in one compiled pass."""
    todo = sorted({int(q) for q in qs} - _PRIME_POWER_RESIDUES.keys())
    if not todo:
        return
    arr = np.asarray(todo, dtype=np.int64)
    vals = _kernels.subfactorial_residues(arr - 1, arr)
    _PRIME_POWER_RESIDUES.update(zip(todo, vals.tolist()))


def subfactorial_mod_fast(n: int, nf: Optional[FactoredInteger] = None) -> Residue:
    """S_{n-1} mod n assembled from its prime power parts.

    For each prime power Q exactly dividing n, S_{n-1} = (-1)^(n+Q) S_{Q-1}
    (mod Q); the parts are then glued by CRT.  Prime powers fall back to
    the direct recurrence.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if nf is None:
        nf = factorize(n)
    elif nf.n != n:
        raise DomainError(f"factorization is of {nf.n}, not {n}")
    if n == 1:
        return Residue(0, 1)
    if nf.is_prime_power:
        return Residue(prime_power_residue(n), n)
    parts = []
    for Q in nf.prime_powers:
        r = prime_power_residue(Q)
        if (n + Q) % 2:
            r = -r
        parts.append(Residue.of(r, Q))
    return crt_combine(parts)


def alternating_factorial_sum_mod(p: int) -> Residue:
    """sum_{k=0}^{p-1} (-1)^k / k! mod p for an odd prime p."""
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    total, inv_fact = 1, 1
    for k in range(1, p):
        inv_fact = inv_fact * pow(k, -1, p) % p
        total += -inv_fact if k % 2 else inv_fact
    return Residue(total % p, p)


class ReducedSum(NamedTuple):
    numerator: int
    denominator: int
    divisible: bool


def alternating_sum_numerator(n: int) -> ReducedSum:
    """sum_{k=0}^{n-1} (-1)^k/k! in lowest terms, and whether n | numerator."""
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    # over the common denominator (n-1)!, term k is (-1)^k (k+1)(k+2)...(n-1)
    num, tail = 0, 1
    for k in range(n - 1, -1, -1):
        num += -tail if k % 2 else tail
        tail *= k
    den = math.factorial(n - 1)
    g = math.gcd(num, den)
    num, den = num // g, den // g
    return ReducedSum(num, den, num % n == 0)


def bell_numbers(limit: int) -> list[int]:
    """B_0..B_limit exactly, via the Bell triangle."""
    _check_nonneg(limit)
    out = [1]
    row = [1]
    for _ in range(limit):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
        out.append(row[0])
    return out


def bell_mod(n: int, m: int) -> Residue:
    """B_n mod m via the Bell triangle carried mod m (O(n^2) additions)."""
    _check_nonneg(n)
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    if m < _kernels.WORD_MODULUS_LIMIT:
        return Residue(int(_kernels.bell_prefix_mod(n, m)[n]), m)
    row = [1 % m]
    for _ in range(n):
        new = [row[-1]]
        for x in row:
            new.append((new[-1] + x) % m)
        row = new
    return Residue(row[0], m)
