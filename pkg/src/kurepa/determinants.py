"""Kurepa determinants K_n, their binary images K_n', and the auxiliary D_n.

Three evaluation regimes share one matrix constructor:

* exact integers by fraction-free (Bareiss) elimination,
* residues mod a prime, or mod a composite via prime powers and CRT,
* the O(n) congruence shortcut through derangement numbers (odd n only).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import _kernels
from .arith import Residue, crt_combine, factorize, is_prime, mod_inverse
from .errors import DomainError, ResourceLimitError
from .sequences import alternating_factorial_sum_mod, subfactorial_mod, subfactorial_mod_fast

EXACT_CEILING = 400
ELIMINATION_CEILING = 13000


def _check_order(n: int, least: int = 7) -> None:
    if n < least:
        raise DomainError(f"n must be at least {least}, got {n}")


def kurepa_matrix(n: int, modulus: int | None = None, dtype=np.int64) -> np.ndarray:
    """The (n-4) x (n-4) integer matrix whose determinant is K_n.

    Row 1 is (1, ..., 1, 3).  Row k for 2 <= k <= n-5 carries 1 at column
    k-2, k+1 at column k-1, ones from column k up to the penultimate column
    and 2 in the last column.  The last row is (0, ..., 0, 1, -4).
    """
    _check_order(n)
    N = n - 4
    a = np.triu(np.ones((N, N), dtype=dtype))
    r = np.arange(1, N - 1)
    a[r, r - 1] = r + 2
    r = np.arange(2, N - 1)
    a[r, r - 2] = 1
    a[0, N - 1] = 3
    a[1 : N - 1, N - 1] = 2
    a[N - 1, :] = 0
    a[N - 1, N - 2] = 1
    a[N - 1, N - 1] = -4
    if modulus is not None:
        np.remainder(a, modulus, out=a)
    return a


def binary_kurepa_matrix(n: int) -> np.ndarray:
    """Parity image of kurepa_matrix(n): odd entries become 1, even ones 0."""
    return np.remainder(kurepa_matrix(n), 2)


def lemma_d_matrix(n: int) -> np.ndarray:
    """Order-n 0/1 matrix: ones on and above the diagonal except at even
    diagonal positions (1-based), ones on the subdiagonal, zeros below."""
    _check_order(n, 3)
    a = np.triu(np.ones((n, n), dtype=np.int64))
    idx = np.arange(1, n, 2)
    a[idx, idx] = 0
    r = np.arange(1, n)
    a[r, r - 1] = 1
    return a


def bareiss_det(rows) -> int:
    """Exact determinant of an integer matrix; every division is exact."""
    m = [[int(x) for x in row] for row in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - f * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _det_prime_power(work: np.ndarray, p: int, e: int) -> int:
    if e == 1:
        return int(_kernels.det_mod_prime(work, p))
    return int(_kernels.det_mod_prime_power(work, p, e))


def det_mod(a: np.ndarray, m: int) -> Residue:
    """Determinant of an integer matrix modulo any m < 2**31."""
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    if m >= _kernels.WORD_MODULUS_LIMIT:
        raise ResourceLimitError(f"modulus {m} too large for word-size elimination")
    if m == 1:
        return Residue(0, 1)
    parts = []
    for p, e in factorize(m).factors:
        q = p**e
        parts.append(Residue(_det_prime_power(np.remainder(a, q).astype(np.int64), p, e), q))
    return crt_combine(parts)


def _work_dtype(n: int):
    # int32 halves the footprint of the large grids; kernels widen to int64 per operation
    return np.int32 if n > 2000 else np.int64


def kurepa_det_exact(n: int, ceiling: int = EXACT_CEILING) -> int:
    _check_order(n)
    if n > ceiling:
        raise ResourceLimitError(
            f"exact K_{n} exceeds the exact-mode ceiling {ceiling}; use kurepa_det_mod instead"
        )
    return bareiss_det(kurepa_matrix(n).tolist())


def kurepa_det_mod(n: int, p: int, ceiling: int = ELIMINATION_CEILING) -> Residue:
    """K_n mod a prime p by pivoted elimination over F_p."""
    _check_order(n)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime; use kurepa_det_mod_composite")
    if n > ceiling:
        raise ResourceLimitError(
            f"direct elimination of order {n - 4} exceeds ceiling {ceiling}; "
            "use kurepa_det_mod_via_derangement for odd n"
        )
    if p >= _kernels.WORD_MODULUS_LIMIT:
        return Residue.of(kurepa_det_exact(n), p)
    return Residue(_det_prime_power(kurepa_matrix(n, modulus=p, dtype=_work_dtype(n)), p, 1), p)


def kurepa_det_mod_composite(n: int, m: int, ceiling: int = ELIMINATION_CEILING) -> Residue:
    """K_n mod a composite m: valuation-tracking elimination per prime power, then CRT."""
    _check_order(n)
    if m < 4 or is_prime(m):
        raise DomainError(f"{m} is not composite; use kurepa_det_mod")
    if n > ceiling:
        raise ResourceLimitError(f"direct elimination of order {n - 4} exceeds ceiling {ceiling}")
    if m >= _kernels.WORD_MODULUS_LIMIT:
        raise ResourceLimitError(f"modulus {m} too large for word-size elimination")
    parts = []
    for p, e in factorize(m).factors:
        q = p**e
        work = kurepa_matrix(n, modulus=q, dtype=_work_dtype(n))
        parts.append(Residue(_det_prime_power(work, p, e), q))
    return crt_combine(parts)


def kurepa_det_mod_via_derangement(
    n: int, formula: Literal["auto", "composite", "odd"] = "auto"
) -> Residue:
    """K_n mod n for odd n in O(n) word operations.

    ``odd`` uses K_n = -3 S_{n-5} - 1 + 180 (n-7)!  (mod n), valid for every
    odd n >= 7.  ``composite`` solves 8 K_n = 2 - S_{n-1}  (mod n), valid for
    odd composite n.  ``auto`` picks the latter whenever it applies.
    """
    _check_order(n)
    if n % 2 == 0:
        raise DomainError(f"the derangement congruence needs odd n, got {n}")
    composite = not is_prime(n)
    if formula == "auto":
        formula = "composite" if composite else "odd"
    if formula == "composite":
        if not composite:
            raise DomainError(f"{n} is prime; the composite congruence does not apply")
        s = subfactorial_mod_fast(n).value
        return Residue((2 - s) * mod_inverse(8, n).value % n, n)
    if formula != "odd":
        raise DomainError(f"unknown formula {formula!r}")
    fact = 1
    for k in range(2, n - 6):
        fact = fact * k % n
    s = subfactorial_mod(n - 5, n).value
    return Residue.of(-3 * s - 1 + 180 * fact, n)


def kurepa_binary_det(n: int) -> int:
    _check_order(n)
    return bareiss_det(binary_kurepa_matrix(n).tolist())


def kurepa_binary_closed_form(n: int) -> int:
    """(-1)^ceil(n/2): K'_{2k} = K'_{2k-1} = (-1)^k."""
    _check_order(n)
    return -1 if ((n + 1) // 2) % 2 else 1


def lemma_det_D(n: int) -> int:
    _check_order(n, 3)
    return bareiss_det(lemma_d_matrix(n).tolist())


def lemma_d_closed_form(n: int) -> int:
    """D_3 = -1 and D_{2k} = D_{2k+1} = (-1)^k for k >= 2."""
    _check_order(n, 3)
    if n == 3:
        return -1
    return -1 if (n // 2) % 2 else 1


@dataclass(frozen=True)
class Prop1Report:
    p: int
    lhs: Residue
    rhs: Residue

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def verify_prop1(p: int) -> Prop1Report:
    """Compare K_p mod p (elimination) with (1/8) sum_{k<p} (-1)^k/k! mod p."""
    if p < 7 or not is_prime(p):
        raise DomainError(f"{p} is not a prime >= 7")
    lhs = kurepa_det_mod(p, p)
    rhs = Residue(mod_inverse(8, p).value * alternating_factorial_sum_mod(p).value % p, p)
    return Prop1Report(p, lhs, rhs)
