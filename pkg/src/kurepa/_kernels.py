"""Compiled inner loops.  All moduli must be below 2**31 so products fit in int64."""

import numpy as np
from numba import njit

WORD_MODULUS_LIMIT = 2**31


LANES = 8


@njit(cache=True)
def _subfactorial_lanes(indices, moduli, order):
    n = indices.shape[0]
    out = np.empty(n, dtype=np.int64)
    s = np.empty(LANES, dtype=np.int64)
    km = np.empty(LANES, dtype=np.int64)
    ms = np.empty(LANES, dtype=np.int64)
    lim = np.empty(LANES, dtype=np.int64)
    inv = np.empty(LANES, dtype=np.float64)
    for g in range(0, n, LANES):
        w = min(LANES, n - g)
        top = 0
        for l in range(LANES):
            if l < w:
                ms[l] = moduli[order[g + l]]
                lim[l] = indices[order[g + l]]
            else:
                ms[l] = 1
                lim[l] = 0
            inv[l] = 1.0 / ms[l]
            s[l] = 1 % ms[l]
            km[l] = 0
            if lim[l] > top:
                top = lim[l]
        for k in range(1, top + 1):
            odd = k & 1
            for l in range(LANES):
                m = ms[l]
                a = km[l] + 1
                a = 0 if a == m else a
                km[l] = a
                x = s[l]
                # float quotient is within one of exact for m < 2**31
                q = np.int64(float(a) * float(x) * inv[l])
                r = a * x - q * m
                r = r + m if r < 0 else r
                r = r - m if r >= m else r
                r = r - 1 if odd else r + 1
                r = r + m if r < 0 else r
                r = r - m if r >= m else r
                if k <= lim[l]:
                    s[l] = r
        for l in range(w):
            out[order[g + l]] = s[l]
    return out


def subfactorial_residues(indices, moduli):
    """out[i] = S_{indices[i]} mod moduli[i] via S_k = k*S_{k-1} + (-1)^k.

    Targets are processed in lanes of similar length so independent
    recurrences interleave in the pipeline.
    """
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    moduli = np.ascontiguousarray(moduli, dtype=np.int64)
    if indices.size == 0:
        return np.empty(0, dtype=np.int64)
    if moduli.max() >= WORD_MODULUS_LIMIT or moduli.min() < 1:
        raise ValueError("moduli must lie in [1, 2**31)")
    order = np.argsort(-indices, kind="stable")
    return _subfactorial_lanes(indices, moduli, order)


@njit(cache=True)
def bell_prefix_mod(nmax, m):
    """B_0..B_nmax mod m from the Bell (Aitken) triangle, one rolling row."""
    out = np.empty(nmax + 1, dtype=np.int64)
    row = np.empty(nmax + 1, dtype=np.int64)
    row[0] = 1 % m
    out[0] = row[0]
    for i in range(nmax):
        # row holds triangle row i (length i+1); build row i+1 in place
        carry = row[i]
        for j in range(i + 1):
            t = row[j]
            row[j] = carry
            carry += t
            if carry >= m:
                carry -= m
        row[i + 1] = carry
        out[i + 1] = row[0]
    return out


@njit(cache=True)
def bell_prefix_lanes(nmax, mods):
    """out[k, l] = B_k mod mods[l] for k <= nmax; lanes share the triangle sweep."""
    L = mods.shape[0]
    row = np.zeros((nmax + 1, L), dtype=np.int64)
    out = np.empty((nmax + 1, L), dtype=np.int64)
    carry = np.empty(L, dtype=np.int64)
    for l in range(L):
        row[0, l] = 1 % mods[l]
        out[0, l] = row[0, l]
    for i in range(nmax):
        for l in range(L):
            carry[l] = row[i, l]
        for j in range(i + 1):
            for l in range(L):
                t = row[j, l]
                row[j, l] = carry[l]
                c = carry[l] + t
                carry[l] = c - mods[l] if c >= mods[l] else c
        for l in range(L):
            row[i + 1, l] = carry[l]
            out[i + 1, l] = row[0, l]
    return out


@njit(cache=True)
def touchard_extend(base, q, nmax):
    """B_0..B_nmax mod prime q from B_0..B_q via B_{k+q} = B_k + B_{k+1}."""
    out = np.empty(nmax + 1, dtype=np.int64)
    top = min(nmax, q)
    for k in range(top + 1):
        out[k] = base[k]
    for k in range(q + 1, nmax + 1):
        v = out[k - q] + out[k - q + 1]
        out[k] = v - q if v >= q else v
    return out


@njit(cache=True)
def det_mod_prime(a, p):
    """Determinant of the square matrix ``a`` over F_p; ``a`` is overwritten."""
    n = a.shape[0]
    det = 1
    for k in range(n):
        piv = -1
        for i in range(k, n):
            if a[i, k] % p != 0:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != k:
            for j in range(k, n):
                t = a[k, j]
                a[k, j] = a[piv, j]
                a[piv, j] = t
            det = -det
        pk = a[k, k] % p
        det = det * pk % p
        inv = 1
        # Fermat inverse; p is prime
        b = pk
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * b % p
            b = b * b % p
            e >>= 1
        for i in range(k + 1, n):
            if a[i, k] % p == 0:
                continue
            c = a[i, k] % p * inv % p
            for j in range(k, n):
                a[i, j] = (a[i, j] - c * (a[k, j] % p)) % p
    return det % p


@njit(cache=True)
def _valuation(x, p, cap):
    v = 0
    while v < cap and x % p == 0:
        x //= p
        v += 1
    return v


@njit(cache=True)
def _inverse_mod(a, m):
    # extended Euclid; a must be a unit mod m
    r0, r1 = m, a % m
    t0, t1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    return t0 % m


@njit(cache=True)
def det_mod_prime_power(a, p, e):
    """Determinant over Z/p^e; ``a`` is overwritten.

    Z/p^e is a chain ring, so the entry of least p-adic valuation in a
    column divides every other entry of that column and can serve as pivot.
    Pivots are split as p^v * unit; only the unit part is ever inverted.
    """
    m = 1
    for _ in range(e):
        m *= p
    n = a.shape[0]
    det = 1
    val = 0
    for k in range(n):
        piv = -1
        best = e
        for i in range(k, n):
            x = a[i, k] % m
            if x != 0:
                v = _valuation(x, p, e)
                if v < best:
                    best = v
                    piv = i
                    if v == 0:
                        break
        if piv < 0:
            return 0
        if piv != k:
            for j in range(k, n):
                t = a[k, j]
                a[k, j] = a[piv, j]
                a[piv, j] = t
            det = -det
        val += best
        if val >= e:
            return 0
        pv = 1
        for _ in range(best):
            pv *= p
        unit = (a[k, k] % m) // pv
        det = det * (unit % m) % m
        uinv = _inverse_mod(unit, m)
        for i in range(k + 1, n):
            x = a[i, k] % m
            if x == 0:
                continue
            c = (x // pv) % m * uinv % m
            for j in range(k, n):
                a[i, j] = (a[i, j] - c * (a[k, j] % m)) % m
    pv = 1
    for _ in range(val):
        pv *= p
    return det * pv % m
