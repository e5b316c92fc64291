"""Foundation arithmetic: sieving, factorization, inverses, CRT, balanced residues."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError, NonCoprimeModuliError, NotInvertibleError, ResourceLimitError

SIEVE_CEILING = 2**31
SEGMENT_SIZE = 1 << 18

# Deterministic Miller-Rabin witnesses for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class Residue:
    """A residue class ``value mod modulus`` stored in canonical form."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise DomainError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise DomainError(f"value {self.value} not in [0, {self.modulus})")

    @classmethod
    def of(cls, x: int, m: int) -> "Residue":
        return cls(x % m, m)

    @property
    def signed(self) -> int:
        """Balanced representative in (-m/2, m/2]."""
        return balanced(self.value, self.modulus)

    @property
    def near_miss(self) -> int:
        return min(self.value, self.modulus - self.value)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


def balanced(x: int, m: int) -> int:
    r = x % m
    return r - m if 2 * r > m else r


@dataclass(frozen=True)
class FactoredInteger:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise DomainError(f"bad factor list {self.factors}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise DomainError(f"factors {self.factors} do not multiply to {self.n}")

    @property
    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.factors]

    @property
    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    @property
    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors)


def _small_sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags)


def sieve_primes(limit: int, ceiling: int = SIEVE_CEILING) -> np.ndarray:
    """Return all primes ``<= limit`` in ascending order.

    Segmented: only the base primes up to sqrt(limit) and one segment of
    flags are held at a time, besides the output itself.  The returned
    array is read-only.
    """
    if limit < 2:
        raise DomainError(f"no primes below {limit}: limit must be at least 2")
    if limit > ceiling:
        raise ResourceLimitError(f"sieve limit {limit} exceeds ceiling {ceiling}")
    root = math.isqrt(limit)
    base = _small_sieve(max(root, 2))
    if limit <= SEGMENT_SIZE:
        out = _small_sieve(limit)
        out.flags.writeable = False
        return out
    chunks = [base]
    odd_base = base[1:]
    lo = root + 1
    while lo <= limit:
        hi = min(lo + SEGMENT_SIZE, limit + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for p in odd_base:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start >= hi:
                if p * p >= hi:
                    break
                continue
            seg[start - lo :: p] = False
        idx = np.flatnonzero(seg) + lo
        chunks.append(idx[idx % 2 == 1])
        lo = hi
    out = np.concatenate(chunks).astype(np.int64)
    out.flags.writeable = False
    return out


def primes_in_range(lo: int, hi: int) -> np.ndarray:
    """Primes p with lo <= p < hi."""
    if hi <= 2 or hi <= lo:
        return np.empty(0, dtype=np.int64)
    ps = sieve_primes(hi - 1) if hi > 2 else np.empty(0, dtype=np.int64)
    return ps[np.searchsorted(ps, lo) :]


@lru_cache(maxsize=4)
def _cached_sieve(limit: int) -> np.ndarray:
    return sieve_primes(limit)


def _trial_primes(bound: int) -> np.ndarray:
    # grow in powers of two so repeated calls share one sieve
    size = 1 << max(10, (bound - 1).bit_length())
    return _cached_sieve(size)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> FactoredInteger:
    """Trial division by sieved primes up to sqrt(n)."""
    if n < 1:
        raise DomainError(f"cannot factorize {n}")
    factors = []
    m = n
    if m > 1:
        for p in _trial_primes(math.isqrt(m) + 1):
            p = int(p)
            if p * p > m:
                break
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                factors.append((p, e))
        if m > 1:
            factors.append((m, 1))
    return FactoredInteger(n, tuple(factors))


def smallest_prime_factors(limit: int) -> np.ndarray:
    """spf[k] = least prime dividing k, for 2 <= k <= limit."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in _small_sieve(max(math.isqrt(limit), 2)):
        p = int(p)
        block = spf[p * p :: p]
        block[block == 0] = p
    spf[2::2] = 2
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    spf[:2] = 0
    return spf


def factorize_with(n: int, spf: np.ndarray) -> FactoredInteger:
    factors = []
    m = n
    while m > 1:
        p = int(spf[m])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        factors.append((p, e))
    return FactoredInteger(n, tuple(factors))


def mod_inverse(a: int, m: int) -> Residue:
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    g = math.gcd(a, m)
    if g != 1:
        raise NotInvertibleError(a, m, g)
    return Residue(pow(a, -1, m) if m > 1 else 0, m)


def crt_combine(parts: Sequence[Residue]) -> Residue:
    """Combine residues with pairwise coprime moduli into one residue."""
    if not parts:
        raise DomainError("crt_combine needs at least one residue")
    mods = [r.modulus for r in parts]
    for i, a in enumerate(mods):
        for b in mods[i + 1 :]:
            if math.gcd(a, b) != 1:
                raise NonCoprimeModuliError(a, b)
    x, m = parts[0].value, parts[0].modulus
    for r in parts[1:]:
        # x + m*t = r.value (mod r.modulus)
        t = (r.value - x) * pow(m, -1, r.modulus) % r.modulus
        x += m * t
        m *= r.modulus
    return Residue(x % m, m)


def prime_powers_below(hi: int, min_exponent: int = 1) -> list[tuple[int, int, int]]:
    """All (q, e, q**e) with q prime, e >= min_exponent and q**e < hi, sorted by q**e."""
    out = []
    if hi <= 2:
        return out
    for q in _trial_primes(hi):
        q = int(q)
        if q >= hi:
            break
        e, Q = 1, q
        while Q < hi:
            if e >= min_exponent:
                out.append((q, e, Q))
            e += 1
            Q *= q
        if min_exponent > 1 and q * q >= hi:
            break
    out.sort(key=lambda t: t[2])
    return out

