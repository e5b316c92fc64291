"""Cross-module invariant suites behind ``kurepa verify``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .arith import balanced, is_prime, primes_in_range
from .determinants import (
    kurepa_binary_closed_form,
    kurepa_binary_det,
    kurepa_det_exact,
    kurepa_det_mod_composite,
    lemma_d_closed_form,
    lemma_det_D,
    verify_prop1,
)
from .errors import DomainError
from .identities import (
    counterexample_residual,
    det_A_congruence,
    sun_zagier_check,
    verify_inverse_pair,
)
from .published import DETERMINANT_CONGRUENCE_TABLE
from .sequences import bell_mod, subfactorial, subfactorial_mod, subfactorial_mod_fast


@dataclass(frozen=True)
class CaseResult:
    name: str
    passed: bool
    detail: str = ""


def _prop1(top: int) -> Iterator[CaseResult]:
    for p in primes_in_range(7, top + 1).tolist():
        rep = verify_prop1(p)
        yield CaseResult(f"p={p}", rep.equal, f"K_p={rep.lhs.value} sum/8={rep.rhs.value}")


def _prop2(top: int) -> Iterator[CaseResult]:
    for n in range(7, top + 1):
        got, want = kurepa_binary_det(n), kurepa_binary_closed_form(n)
        yield CaseResult(f"n={n}", got == want, f"K'_n={got} closed={want}")


def _lemma1(top: int) -> Iterator[CaseResult]:
    for n in range(3, top + 1):
        got, want = lemma_det_D(n), lemma_d_closed_form(n)
        yield CaseResult(f"n={n}", got == want, f"D_n={got} closed={want}")


def _prop4(top: int) -> Iterator[CaseResult]:
    for n in range(9, top + 1, 2):
        if is_prime(n):
            continue
        k = kurepa_det_mod_composite(n, n).value
        s = subfactorial_mod_fast(n).value
        lhs, rhs = 8 * k % n, (2 - s) % n
        yield CaseResult(f"n={n}", lhs == rhs, f"8K_n={lhs} 2-S_(n-1)={rhs}")


def _identities(top: int) -> Iterator[CaseResult]:
    for p in primes_in_range(3, top + 1).tolist():
        yield CaseResult(f"inverse-pair p={p}", verify_inverse_pair(p))
        res = counterexample_residual(p).value
        bell = (bell_mod(p - 1, p).value - 1) % p
        der = subfactorial_mod(p - 1, p).value
        yield CaseResult(f"residual p={p}", res == bell == der, f"residual={res} B-1={bell} S={der}")
        rep = det_A_congruence(p)
        ok = rep.equal and rep.square_is_minus_one is not False
        yield CaseResult(f"det-A p={p}", ok, f"direct={rep.direct.value} closed={rep.closed.value}")
        bad = [m for m in range(1, 51) if m % p and not sun_zagier_check(p, m)]
        yield CaseResult(f"sun-zagier p={p}", not bad, f"failing m: {bad}" if bad else "")


def _table3(top: int) -> Iterator[CaseResult]:
    for n in range(7, min(top, max(DETERMINANT_CONGRUENCE_TABLE)) + 1):
        k, s = kurepa_det_exact(n), subfactorial(n - 1)
        printed_k, printed_s, printed_c = DETERMINANT_CONGRUENCE_TABLE[n]
        c = balanced((8 * k + s) % n, n)
        notes = [f"(8K+S) mod n = {c}"]
        if k != printed_k:
            notes.append(f"printed K_{n}={printed_k} is a typo for {k}")
        if s != printed_s:
            notes.append(f"printed S_{n - 1}={printed_s} differs from {s}")
        yield CaseResult(f"n={n}", c == printed_c and s == printed_s, "; ".join(notes))


SUITES: dict[str, tuple[Callable[[int], Iterator[CaseResult]], int]] = {
    "prop1": (_prop1, 200),
    "prop2": (_prop2, 60),
    "prop4": (_prop4, 301),
    "lemma1": (_lemma1, 60),
    "identities": (_identities, 97),
    "table3": (_table3, 21),
}


def run_suite(name: str, top: int | None = None) -> Iterator[CaseResult]:
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn, default = SUITES[name]
    return fn(default if top is None else top)
