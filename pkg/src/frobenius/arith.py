"""Exact modular arithmetic on 64-bit operands.

Python integers are unbounded, so products never overflow; the functions here
still validate the 64-bit contracts the rest of the package relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

U64_LIMIT = 1 << 64

# First twelve primes: Miller-Rabin with these bases is deterministic below
# 3.3 * 10^24, which covers every 64-bit input.
MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_BOUND = 1000


class NoSquareRoot(ValueError):
    """Raised when a residue has no square root modulo the given prime."""


class TrivialFactor(ValueError):
    """A computation stumbled on a common factor instead of a unit.

    ``divisor`` is the offending common divisor (it may equal the modulus).
    """

    def __init__(self, divisor: int, message: str = ""):
        super().__init__(message or f"common factor {divisor}")
        self.divisor = divisor


def primes_up_to(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


SMALL_PRIMES = tuple(primes_up_to(_TRIAL_BOUND))


def _check_modulus(n: int) -> None:
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")


def mulmod(a: int, b: int, n: int) -> int:
    _check_modulus(n)
    return a * b % n


def powmod(a: int, e: int, n: int) -> int:
    _check_modulus(n)
    if e < 0:
        raise ValueError("negative exponent")
    return pow(a, e, n)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol J(a/n) for odd n >= 1, by quadratic reciprocity.

    ``a`` may be negative.  ``jacobi(a, 1) == 1`` for every ``a``.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive n, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_perfect_square(n: int) -> int | None:
    """Return the integer square root of ``n`` if ``n`` is a square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def is_prime(n: int) -> bool:
    """Deterministic primality for all ``n < 2**64`` (Miller-Rabin, fixed bases).

    The witness set is only proven for 64-bit inputs, so larger n raise.
    """
    if n < 2:
        return False
    if n >= U64_LIMIT:
        raise ValueError(f"{n} does not fit in 64 bits")
    for p in MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_WITNESSES:
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


def sqrt_mod_prime(c: int, p: int) -> int:
    """Square root of ``c`` modulo the odd prime ``p`` (Tonelli-Shanks).

    Returns the smaller of the two roots ``d`` and ``p - d``.
    """
    c %= p
    if jacobi(c, p) != 1:
        raise NoSquareRoot(f"{c} is not a nonzero quadratic residue mod {p}")
    if p % 4 == 3:
        d = pow(c, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while jacobi(z, p) != -1:
            z += 1
        m = s
        t = pow(c, q, p)
        b = pow(z, q, p)
        d = pow(c, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            f = pow(b, 1 << (m - i - 1), p)
            m = i
            b = f * f % p
            t = t * b % p
            d = d * f % p
    return min(d, p - d)


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __mul__(self, other: Factorization) -> Factorization:
        merged: dict[int, int] = dict(self.factors)
        for p, e in other.factors:
            merged[p] = merged.get(p, 0) + e
        return Factorization(self.value * other.value, tuple(sorted(merged.items())))


def _rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n`` (Brent's variant).

    The polynomial increment runs 1, 2, 3, ... until a split is found, so the
    result is reproducible.
    """
    increment = 1
    while True:
        y, r, q, g = 2, 1, 1, 1
        x = ys = 2
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + increment) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + increment) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + increment) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        increment += 1


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    root = is_perfect_square(n)
    if root is not None:
        _split(root, out)
        _split(root, out)
        return
    d = _rho(n)
    _split(d, out)
    _split(n // d, out)


def trial_divide(n: int, primes=SMALL_PRIMES) -> tuple[dict[int, int], int]:
    """Strip the given small primes from ``n``; return (found, cofactor)."""
    found: dict[int, int] = {}
    for p in primes:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if 1 < n and n < primes[-1] ** 2:
        found[n] = found.get(n, 0) + 1
        n = 1
    return found, n


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    if n < 2:
        raise ValueError(f"cannot factorize {n}")
    if n >= U64_LIMIT:
        raise ValueError("factorize is limited to 64-bit inputs")
    found, rest = trial_divide(n)
    _split(rest, found)
    return Factorization(n, tuple(sorted(found.items())))


def order_from_factorization(x: int, group_order: Factorization, is_one, power) -> int:
    """Smallest t dividing the group order with ``is_one(power(x, t))``.

    Works for any group given a ``power`` callable; divides out each prime of
    the group order while the power stays at the identity.
    """
    t = group_order.value
    for p, e in group_order.factors:
        for _ in range(e):
            if t % p == 0 and is_one(power(x, t // p)):
                t //= p
            else:
                break
    return t


def multiplicative_order(a: int, p: int, group_order: Factorization | None = None) -> int:
    a %= p
    if a == 0:
        raise ValueError(f"0 has no multiplicative order mod {p}")
    if group_order is None:
        group_order = factorize(p - 1) if p > 2 else Factorization(1, ())
    return order_from_factorization(
        a, group_order, lambda v: v == 1, lambda v, t: pow(v, t, p)
    )


def lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    """Merge ``x = r1 mod m1`` and ``x = r2 mod m2``; None when they clash."""
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    m = m1 // g * m2
    k = ((r2 - r1) // g) * pow(m1 // g, -1, m2 // g) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * k) % m, m
