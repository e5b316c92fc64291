"""Bell-number identities over F_p: the power-matrix inverse pair, the
counterexample residual, the Sun-Zagier congruence and det(A)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .arith import Residue, is_prime
from .errors import DomainError, InconsistencyError, ResourceLimitError
from .sequences import subfactorial_mod

MATRIX_PRIME_CEILING = 2000


def _check_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    if p > MATRIX_PRIME_CEILING:
        raise ResourceLimitError(f"p = {p} exceeds the matrix ceiling {MATRIX_PRIME_CEILING}")


def _power_table(p: int) -> np.ndarray:
    """T[b, k] = b^k mod p for 0 <= b < p, 0 <= k < p."""
    t = np.empty((p, p), dtype=np.int64)
    t[:, 0] = 1
    b = np.arange(p, dtype=np.int64)
    for k in range(1, p):
        t[:, k] = t[:, k - 1] * b % p
    return t


def build_power_matrices(p: int) -> tuple[np.ndarray, np.ndarray]:
    """A[i, j] = (p-i)^(p-j) and B[i, j] = (p-j)^(i-1) mod p, 1 <= i, j <= p-1."""
    _check_prime(p)
    t = _power_table(p)
    i = np.arange(1, p)
    A = t[(p - i)[:, None], (p - i)[None, :]]
    B = t[(p - i)[None, :], (i - 1)[:, None]]
    return A, B


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # entries < p <= 2000, so row sums stay far inside int64
    return (a @ b) % p


def verify_inverse_pair(p: int) -> bool:
    A, B = build_power_matrices(p)
    return bool(np.array_equal(matmul_mod(A, B, p), (p - 1) * np.eye(p - 1, dtype=np.int64)))


def _bell_and_derangement_mod(p: int) -> tuple[np.ndarray, np.ndarray]:
    bell = _kernels.bell_prefix_mod(p - 1, p)
    der = np.empty(p, dtype=np.int64)
    s = 1
    der[0] = 1
    for k in range(1, p):
        s = (k * s + (1 if k % 2 == 0 else -1)) % p
        der[k] = s
    return bell, der


def residual_vector(p: int) -> np.ndarray:
    """rho_m = (-1)^(m-1) S_{m-1} - sum_{k=0}^{p-2} (p-m)^(p-1-k) B_k mod p, m = 1..p-1.

    Every entry equals B_{p-1} - B_0, so the vector vanishes exactly when p
    is a counterexample.
    """
    _check_prime(p)
    bell, der = _bell_and_derangement_mod(p)
    t = _power_table(p)
    m = np.arange(1, p)
    k = np.arange(0, p - 1)
    weights = t[(p - m)[:, None], (p - 1 - k)[None, :]]
    lhs = (weights * bell[: p - 1][None, :]).sum(axis=1) % p
    signs = np.where((m - 1) % 2 == 0, 1, -1)
    rhs = signs * der[m - 1] % p
    return (rhs - lhs) % p


def counterexample_residual(p: int) -> Residue:
    vec = residual_vector(p)
    if not np.all(vec == vec[0]):
        raise InconsistencyError(f"residual vector for p = {p} is not constant: {vec.tolist()[:8]}...")
    return Residue(int(vec[0]), p)


def sun_zagier_check(p: int, m: int) -> bool:
    """sum_{k=1}^{p-1} B_k (-m)^(-k) == (-1)^(m-1) S_{m-1}  (mod p)."""
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    if m % p == 0:
        raise DomainError(f"p = {p} divides m = {m}")
    bell = _kernels.bell_prefix_mod(p - 1, p)
    base = (-m) % p
    total = 0
    for k in range(1, p):
        # (-m)^(-k) = (p-m)^(p-1-k) by Fermat
        total += int(bell[k]) * pow(base, p - 1 - k, p)
    rhs = subfactorial_mod(m - 1, p).value
    if (m - 1) % 2:
        rhs = -rhs
    return (total - rhs) % p == 0


@dataclass(frozen=True)
class DetAReport:
    p: int
    direct: Residue
    closed: Residue
    square_is_minus_one: Optional[bool]

    @property
    def equal(self) -> bool:
        return self.direct == self.closed


def det_A_closed_form(p: int) -> Residue:
    """(-1)^((p^2-1)/8) ((p-1)/2)! mod p."""
    f = 1
    for k in range(2, (p - 1) // 2 + 1):
        f = f * k % p
    if ((p * p - 1) // 8) % 2:
        f = -f
    return Residue.of(f, p)


def det_A_congruence(p: int) -> DetAReport:
    A, _ = build_power_matrices(p)
    direct = Residue(int(_kernels.det_mod_prime(A.copy(), p)), p)
    closed = det_A_closed_form(p)
    square = None
    if p % 4 == 1:
        square = direct.value * direct.value % p == p - 1
    return DetAReport(p, direct, closed, square)
