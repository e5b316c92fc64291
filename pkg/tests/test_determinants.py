import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kurepa import _kernels
from kurepa.arith import Residue, is_prime, sieve_primes
from kurepa.determinants import (
    bareiss_det,
    binary_kurepa_matrix,
    det_mod,
    kurepa_binary_closed_form,
    kurepa_binary_det,
    kurepa_det_exact,
    kurepa_det_mod,
    kurepa_det_mod_composite,
    kurepa_det_mod_via_derangement,
    kurepa_matrix,
    lemma_d_closed_form,
    lemma_d_matrix,
    lemma_det_D,
    verify_prop1,
)
from kurepa.errors import DomainError, ResourceLimitError
from kurepa.sequences import subfactorial, subfactorial_mod

K = {n: kurepa_det_exact(n) for n in range(7, 62)}


def test_matrix_n7_instance():
    assert kurepa_matrix(7).tolist() == [[1, 1, 3], [3, 1, 2], [0, 1, -4]]


def test_matrix_n10_layout():
    assert kurepa_matrix(10).tolist() == [
        [1, 1, 1, 1, 1, 3],
        [3, 1, 1, 1, 1, 2],
        [1, 4, 1, 1, 1, 2],
        [0, 1, 5, 1, 1, 2],
        [0, 0, 1, 6, 1, 2],
        [0, 0, 0, 0, 1, -4],
    ]


def test_matrix_is_pure_and_reduces():
    assert np.array_equal(kurepa_matrix(40), kurepa_matrix(40))
    assert np.array_equal(kurepa_matrix(40, modulus=7), kurepa_matrix(40) % 7)
    assert np.array_equal(binary_kurepa_matrix(40), kurepa_matrix(40) % 2)
    with pytest.raises(DomainError):
        kurepa_matrix(6)


def test_exact_examples():
    assert K[7] == 15 and K[8] == -47 and K[17] == 5341017373


def test_exact_ceiling():
    with pytest.raises(ResourceLimitError):
        kurepa_det_exact(401)
    with pytest.raises(DomainError):
        kurepa_det_exact(6)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=5, max_size=5), min_size=5, max_size=5))
def test_bareiss_matches_float_det(rows):
    assert bareiss_det(rows) == round(np.linalg.det(np.array(rows, dtype=float)))


def test_bareiss_singular_and_swaps():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    assert bareiss_det([]) == 1


@given(st.lists(st.lists(st.integers(-50, 50), min_size=6, max_size=6), min_size=6, max_size=6),
       st.sampled_from([2, 4, 8, 9, 27, 12, 30, 49, 97, 360, 1001]))
def test_det_mod_matches_exact(rows, m):
    exact = bareiss_det(rows)
    assert det_mod(np.array(rows, dtype=np.int64), m) == Residue.of(exact, m)


def test_prime_power_kernel_forces_valuation_pivots():
    a = np.array([[9, 3, 1], [3, 1, 0], [27, 2, 5]], dtype=np.int64)
    exact = bareiss_det(a.tolist())
    for e in range(1, 5):
        assert _kernels.det_mod_prime_power(a.copy(), 3, e) == exact % 3**e


def test_det_mod_prime_examples():
    assert kurepa_det_mod(7, 7).value == 1
    assert kurepa_det_mod(11, 11).value == 6439 % 11
    with pytest.raises(DomainError):
        kurepa_det_mod(9, 9)


def test_no_prime_divides_its_determinant_to_300():
    for p in sieve_primes(300).tolist():
        if p >= 7:
            assert kurepa_det_mod(p, p).value != 0


def test_det_mod_prime_matches_exact():
    for n in range(7, 62):
        for p in (2, 3, 5, 13, 1_000_003):
            assert kurepa_det_mod(n, p).value == K[n] % p


def test_det_mod_composite_examples():
    assert kurepa_det_mod_composite(9, 9).value == 8
    assert kurepa_det_mod_composite(15, 15).value == 37792331 % 15
    with pytest.raises(DomainError):
        kurepa_det_mod_composite(9, 7)


def test_det_mod_composite_matches_exact():
    for n in range(7, 62):
        for m in (4, 8, 9, 12, 49, 360, 2**20):
            assert kurepa_det_mod_composite(n, m).value == K[n] % m


def test_via_derangement_examples():
    assert kurepa_det_mod_via_derangement(9).value == 197 % 9
    assert kurepa_det_mod_via_derangement(11563).value == 0
    assert kurepa_det_mod_via_derangement(21) == kurepa_det_mod_composite(21, 21)
    with pytest.raises(DomainError):
        kurepa_det_mod_via_derangement(10)
    with pytest.raises(DomainError):
        kurepa_det_mod_via_derangement(11, formula="composite")


def test_paths_agree_on_odd_n_to_301():
    for n in range(9, 302, 2):
        fast = kurepa_det_mod_via_derangement(n)
        odd = kurepa_det_mod_via_derangement(n, formula="odd")
        slow = kurepa_det_mod(n, n) if is_prime(n) else kurepa_det_mod_composite(n, n)
        assert fast == odd == slow, n
        if not is_prime(n):
            assert (8 * slow.value + subfactorial_mod(n - 1, n).value - 2) % n == 0


def test_prime_rows_vanish():
    for p in sieve_primes(200).tolist():
        if p >= 7:
            assert (8 * kurepa_det_mod(p, p).value + subfactorial_mod(p - 1, p).value) % p == 0


def test_parity_and_even_n():
    for n in range(7, 61):
        assert K[n] % 2 == 1
        assert K[n] % 2 == kurepa_binary_det(n) % 2
    for n in range(8, 201, 2):
        assert kurepa_det_mod_composite(n, n).value != 0


def test_binary_examples():
    assert kurepa_binary_det(7) == 1
    assert kurepa_binary_det(9) == -1
    assert kurepa_binary_det(18) == -1
    assert kurepa_binary_closed_form(8) == 1
    assert kurepa_binary_closed_form(15) == 1
    assert kurepa_binary_closed_form(17) == -1


def test_binary_closed_form_to_60():
    for n in range(7, 61):
        assert kurepa_binary_det(n) == kurepa_binary_closed_form(n)


def test_lemma_d():
    assert [lemma_det_D(n) for n in (3, 4, 5)] == [-1, 1, 1]
    for n in range(3, 61):
        assert lemma_det_D(n) == lemma_d_closed_form(n)
        assert set(np.unique(lemma_d_matrix(n)).tolist()) <= {0, 1}
        assert lemma_d_matrix(n)[n - 1, n - 1] == n % 2
    with pytest.raises(DomainError):
        lemma_det_D(2)


def test_prime_det_reports():
    rep = verify_prop1(7)
    assert rep.lhs.value == rep.rhs.value == 1 and rep.equal
    assert verify_prop1(11).equal and verify_prop1(13).equal
    with pytest.raises(DomainError):
        verify_prop1(5)


def test_exact_matches_recurrence_identity():
    # (8 K_n + S_{n-1}) mod n is 0 for primes and 2 for odd composites
    for n in range(7, 62, 2):
        want = 0 if is_prime(n) else 2
        assert (8 * K[n] + subfactorial(n - 1)) % n == want % n
