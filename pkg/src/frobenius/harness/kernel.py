"""Vectorised kernels for block scans.

Everything here works on numpy uint64 arrays and must give exactly the same
answers as the scalar functions in ``frobtest``; the scalar code is the
reference and the tests compare the two.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from ..frobtest import INDEX_SEQUENCE, IndexCapExceeded

# Residues stay below 2^31, so a sum of two residue products fits in uint64.
FROBENIUS_LIMIT = 1 << 31
# Residues below 2^32: one residue product fits in uint64.
FERMAT_LIMIT = 1 << 32

# Verdict codes returned by frobenius_batch.
EQ_FAILED = 0
PRIME = 1
FACTOR = 2
SQUARE = 3
TRIVIAL = 4  # even or < 3


@lru_cache(maxsize=8)
def base_primes(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve)


def prime_flags(lo: int, hi: int) -> np.ndarray:
    """Boolean primality of every integer in [lo, hi) by a segmented sieve."""
    flags = np.ones(hi - lo, dtype=bool)
    flags[: max(0, 2 - lo)] = False
    ps = base_primes(math.isqrt(max(hi - 1, 1))).astype(object)
    if len(ps) == 0:
        return flags
    starts = np.maximum(ps * ps, (lo + ps - 1) // ps * ps)
    hit = starts < hi
    for p, start in zip(ps[hit].tolist(), starts[hit].tolist()):
        flags[start - lo :: p] = False
    return flags


def isqrt_batch(n: np.ndarray) -> np.ndarray:
    top = np.uint64(2**32 - 1)
    r = np.minimum(np.floor(np.sqrt(n.astype(np.float64))), float(top)).astype(np.uint64)
    r = np.where(r * r > n, r - np.uint64(1), r)
    # r + 1 = 2^32 would overflow when squared, and its square exceeds every uint64
    up = r + np.uint64(1)
    r = np.where((r < top) & (up * up <= n), up, r)
    return r


@lru_cache(maxsize=None)
def _legendre_table(q: int) -> np.ndarray:
    table = np.array([0] + [1 if pow(r, (q - 1) // 2, q) == 1 else -1 for r in range(1, q)], dtype=np.int8)
    return table


def jacobi_fixed(c: int, n: np.ndarray) -> np.ndarray:
    """J(c/n) for one small index candidate c and an array of odd n."""
    if c == -1:
        return np.where(n % np.uint64(4) == 1, 1, -1).astype(np.int8)
    if c == 2:
        r = n % np.uint64(8)
        return np.where((r == 1) | (r == 7), 1, -1).astype(np.int8)
    legendre = _legendre_table(c)[(n % np.uint64(c)).astype(np.intp)]
    if c % 4 == 3:
        flip = n % np.uint64(4) == 3
        return np.where(flip, -legendre, legendre).astype(np.int8)
    return legendre


def frobenius_index_batch(n: np.ndarray) -> np.ndarray:
    """Frobenius index of each odd non-square n (int64 array)."""
    c = np.zeros(len(n), dtype=np.int64)
    pending = np.arange(len(n))
    for cand in INDEX_SEQUENCE:
        if len(pending) == 0:
            break
        j = jacobi_fixed(cand, n[pending])
        done = j != 1
        c[pending[done]] = cand
        pending = pending[~done]
    if len(pending):
        raise IndexCapExceeded(f"Frobenius index of {int(n[pending[0]])} exceeds the cap")
    return c


def frobenius_batch(values) -> tuple[np.ndarray, np.ndarray]:
    """Run the Frobenius test on every value; return (codes, index).

    ``index`` is 0 where no index was computed (trivial inputs and squares).
    """
    n = np.asarray(values, dtype=np.uint64)
    if len(n) and int(n.max()) >= FROBENIUS_LIMIT:
        raise ValueError("batch kernel needs n < 2^31")
    codes = np.full(len(n), TRIVIAL, dtype=np.int8)
    index = np.zeros(len(n), dtype=np.int64)
    odd = (n % np.uint64(2) == 1) & (n >= 3)
    codes[n == 2] = PRIME
    codes[n == 1] = SQUARE
    root = isqrt_batch(n)
    square = odd & (root * root == n)
    codes[square] = SQUARE
    live = np.flatnonzero(odd & ~square)
    if len(live) == 0:
        return codes, index
    m = n[live]
    c = frobenius_index_batch(m)
    index[live] = c
    divides = (c > 0) & (m % np.maximum(c, 1).astype(np.uint64) == 0)
    codes[live[divides]] = FACTOR
    keep = ~divides
    live, m, c = live[keep], m[keep], c[keep]
    if len(live) == 0:
        return codes, index

    a = np.where((c == -1) | (c == 2), 2, 1).astype(np.uint64)
    cm = (c % m.astype(np.int64)).astype(np.uint64)
    x = np.ones(len(m), dtype=np.uint64)
    y = np.zeros(len(m), dtype=np.uint64)
    for bit in range(int(m.max()).bit_length() - 1, -1, -1):
        # square: (x^2 + c y^2, 2xy)
        yy = y * y % m
        x, y = (x * x % m + cm * yy % m) % m, (np.uint64(2) * (x * y % m)) % m
        # multiply by the base a + sqrt(c) where this bit of n is set
        step = ((m >> np.uint64(bit)) & np.uint64(1)).astype(bool)
        if step.any():
            nx = (a * x + cm * y % m) % m
            ny = (x + a * y) % m
            x = np.where(step, nx, x)
            y = np.where(step, ny, y)
    ok = (x == a % m) & (y == m - np.uint64(1))
    codes[live] = np.where(ok, PRIME, EQ_FAILED)
    return codes, index


def fermat_batch(values, base: int) -> np.ndarray:
    """base^(n-1) == 1 (mod n) for every n (n >= 3, n < 2^32, base < 2^32)."""
    n = np.asarray(values, dtype=np.uint64)
    if len(n) == 0:
        return np.zeros(0, dtype=bool)
    if int(n.max()) >= FERMAT_LIMIT or base >= FERMAT_LIMIT:
        raise ValueError("Fermat kernel needs n, base < 2^32")
    e = n - np.uint64(1)
    b = np.uint64(base) % n
    r = np.ones(len(n), dtype=np.uint64)
    for bit in range(int(e.max()).bit_length() - 1, -1, -1):
        r = r * r % n
        step = ((e >> np.uint64(bit)) & np.uint64(1)).astype(bool)
        r = np.where(step, r * b % n, r)
    return r == 1
