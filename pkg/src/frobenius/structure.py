"""Necessary conditions on the prime factors of a Frobenius pseudoprime.

Every prime factor p of a hypothetical FPP n with index c pins n to a residue
class ``n = D_p (mod M_p)``:

* inert p (J(c/p) = -1): ``D_p = p`` and ``M_p`` is the order of the base in
  GF(p^2);
* split p (J(c/p) = +1): the cofactor q must swap the two images z1, z2 of the
  base in Z_p x Z_p, which fixes q modulo lcm(ord z1, ord z2).

Two factors of the same n must agree modulo the gcd of their moduli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .arith import (
    TrivialFactor,
    crt_pair,
    factorize,
    jacobi,
    multiplicative_order,
    primes_up_to,
    sqrt_mod_prime,
)
from .frobtest import INDEX_SEQUENCE, standard_base
from .quad import inert_group_order, pow_pair, quad_order

# Above this prime the split-case discrete log switches from a linear walk to
# baby-step/giant-step.
BRUTE_FORCE_LIMIT = 1 << 20

P_LIMIT = 1 << 32


@dataclass(frozen=True)
class MultipleFactorResult:
    p: int
    c: int
    full: bool  # z^p == conj(z) mod p^2
    norm: bool  # N(z)^(p-1) == 1 mod p^2


@dataclass(frozen=True)
class PhiProfile:
    p: int
    c: int
    sign: int
    M: int | None  # None for a split prime with no admissible cofactor class
    D: int | None
    z1: int | None = None
    z2: int | None = None
    alpha: int | None = None  # ord(z1 * z2)
    beta: int | None = None  # ord(z1 / z2)
    A: int | None = None  # cofactor residue mod M (split case)
    Q: int | None = None  # order of the base in GF(p^2) (inert case)

    @property
    def admissible(self) -> bool:
        return self.M is not None

    def csv_row(self) -> list:
        sign = "+" if self.sign > 0 else "-"
        if not self.admissible:
            return [self.c, self.p, sign, "", "", 0]
        return [self.c, self.p, sign, self.M, self.D, 1]


CSV_HEADER = ["c", "p", "sign", "M", "D", "admissible"]


def _check_prime_arg(p: int) -> None:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"expected an odd prime, got {p}")
    if p >= P_LIMIT:
        raise ValueError(f"p = {p} is outside the supported range p < 2^32")


def index_compatible(p: int, c: int) -> bool:
    """Can the odd prime p divide some n whose Frobenius index is c?

    Every prime below the index has J(p/n) = +1, so p cannot divide n; and
    p = c would make J(c/n) = 0.  Hence p > c.
    """
    return p > c


def multiple_factor_check(p: int, c: int) -> MultipleFactorResult:
    """Test the square-factor condition z^p == conj(z) (mod p^2) for inert p."""
    _check_prime_arg(p)
    if jacobi(c, p) != -1:
        raise ValueError(f"J({c}/{p}) must be -1")
    a, b = standard_base(c)
    m = p * p
    x, y = pow_pair(a, b, p, c, m)
    norm = (a * a - c * b * b) % m
    return MultipleFactorResult(
        p, c, full=(x == a % m and y == -b % m), norm=pow(norm, p - 1, m) == 1
    )


def _split_images(p: int, c: int) -> tuple[int, int, int]:
    a, b = standard_base(c)
    d = sqrt_mod_prime(c, p)
    z1, z2 = (a + b * d) % p, (a - b * d) % p
    if z1 == 0 or z2 == 0:
        raise TrivialFactor(p, f"{p} divides the norm of the base for c={c}")
    return d, z1, z2


def dlog_bsgs(g: int, h: int, order: int, p: int) -> int | None:
    """Smallest t in [0, order) with g^t == h mod p (baby-step/giant-step)."""
    m = math.isqrt(order - 1) + 1
    table: dict[int, int] = {}
    x = 1
    for j in range(m):
        table.setdefault(x, j)
        x = x * g % p
    giant = pow(g, -m, p)
    y = h % p
    for i in range(m):
        j = table.get(y)
        if j is not None and i * m + j < order:
            return i * m + j
        y = y * giant % p
    return None


def split_residue(p: int, c: int, method: str = "auto") -> tuple[int, int] | None:
    """Solve z1^q == z2 and z2^q == z1 (mod p) for q; return (A, M) or None.

    ``method`` picks the discrete-log route: ``brute``, ``bsgs`` or ``auto``
    (brute force below 2^20).
    """
    _, z1, z2 = _split_images(p, c)
    group = factorize(p - 1)
    ord1 = multiplicative_order(z1, p, group)
    ord2 = multiplicative_order(z2, p, group)
    if ord1 != ord2:
        # Each image must be a power of the other.
        return None
    if method == "auto":
        method = "brute" if p < BRUTE_FORCE_LIMIT else "bsgs"
    if method == "brute":
        # Walk t over [0, M) checking both equations at once.
        x1, x2 = 1, 1
        for t in range(ord1):
            if x1 == z2 and x2 == z1:
                return t, ord1
            x1 = x1 * z1 % p
            x2 = x2 * z2 % p
        return None
    t0 = dlog_bsgs(z1, z2, ord1, p)
    t1 = dlog_bsgs(z2, z1, ord2, p)
    if t0 is None or t1 is None:
        return None
    return crt_pair(t0, ord1, t1, ord2)


def _split_orders(p: int, c: int) -> tuple[int, int, int, int]:
    _, z1, z2 = _split_images(p, c)
    group = factorize(p - 1)
    alpha = multiplicative_order(z1 * z2, p, group)
    beta = multiplicative_order(z1 * pow(z2, -1, p), p, group)
    return z1, z2, alpha, beta


def phi_positive_admissible(p: int, c: int, method: str = "auto") -> tuple[int, int] | None:
    """Cofactor class (A_p, M_p) for a split prime p, or None if none exists.

    Rejects early when gcd(ord N, ord w) > 2, since q - 1 and q + 1 cannot
    share an odd factor or a factor of 4.
    """
    _check_prime_arg(p)
    if jacobi(c, p) != 1:
        raise ValueError(f"J({c}/{p}) must be +1")
    _, _, alpha, beta = _split_orders(p, c)
    if math.gcd(alpha, beta) > 2:
        return None
    return split_residue(p, c, method)


def phi_profile(p: int, c: int) -> PhiProfile:
    _check_prime_arg(p)
    sign = jacobi(c, p)
    if sign == 0:
        raise TrivialFactor(p, f"{p} divides {c}")
    a, b = standard_base(c)
    if (a * a - c * b * b) % p == 0:
        raise TrivialFactor(p, f"{p} divides the norm of the base for c={c}")
    if sign == -1:
        Q = quad_order((a, b), p, c, inert_group_order(p))
        return PhiProfile(p, c, -1, M=Q, D=p % Q, Q=Q)
    z1, z2, alpha, beta = _split_orders(p, c)
    solved = None if math.gcd(alpha, beta) > 2 else split_residue(p, c)
    if solved is None:
        return PhiProfile(p, c, 1, None, None, z1, z2, alpha, beta)
    A, M = solved
    return PhiProfile(p, c, 1, M, p * A % M, z1, z2, alpha, beta, A=A)


def phi_negative_candidates(p: int, c: int, n_bound: int) -> list[int]:
    """All n = p(1 + k Q_p) with k >= 1 and n <= n_bound."""
    _check_prime_arg(p)
    if jacobi(c, p) != -1:
        raise ValueError(f"J({c}/{p}) must be -1")
    a, b = standard_base(c)
    Q = quad_order((a, b), p, c, inert_group_order(p))
    k_max = (n_bound // p - 1) // Q
    return [p * (1 + k * Q) for k in range(1, k_max + 1)]


def count_phi_negative_candidates(p: int, c: int, n_bound: int) -> int:
    a, b = standard_base(c)
    Q = quad_order((a, b), p, c, inert_group_order(p))
    return max(0, (n_bound // p - 1) // Q)


def pair_status(p1: int, p2: int, c: int) -> str:
    """``consistent``, ``inconsistent`` or ``inadmissible`` for a prime pair."""
    f1, f2 = phi_profile(p1, c), phi_profile(p2, c)
    if not (f1.admissible and f2.admissible):
        return "inadmissible"
    g = math.gcd(f1.M, f2.M)
    return "consistent" if (f1.D - f2.D) % g == 0 else "inconsistent"


def pair_consistent(p1: int, p2: int, c: int) -> bool:
    return pair_status(p1, p2, c) == "consistent"


def index_congruence(c: int) -> tuple[int, int]:
    """Residue class of n forced by the Frobenius index c (mod 4, 8 or 24)."""
    if c == -1:
        return 3, 4
    if c == 2:
        return 5, 8
    if c == 3:
        return 17, 24
    return 1, 24


@dataclass(frozen=True)
class TupleConstraint:
    """The cofactor q of n = prod(primes) * q must satisfy q == residue mod modulus
    and J(c'/q) == value for every (c', value) in ``jacobi_conditions``."""

    primes: tuple[int, ...]
    c: int
    residue: int
    modulus: int
    jacobi_conditions: tuple[tuple[int, int], ...] = ()

    def admits(self, q: int) -> bool:
        if q % self.modulus != self.residue:
            return False
        return all(jacobi(cc, q) == v for cc, v in self.jacobi_conditions)


@dataclass(frozen=True)
class TupleClash:
    primes: tuple[int, ...]
    pair: tuple[int, int] | None  # None: clash with the index congruence
    reason: str


def tuple_residue(primes: list[int], c: int) -> TupleConstraint | TupleClash:
    """Merge the per-prime classes of n and the index congruence into one
    class for the cofactor q.  Returns a ``TupleClash`` when they conflict."""
    primes = tuple(sorted(primes))
    profiles = {p: phi_profile(p, c) for p in primes}
    for p1, p2 in combinations(primes, 2):
        status = pair_status(p1, p2, c)
        if status != "consistent":
            return TupleClash(primes, (p1, p2), status)
    r, m = 0, 1
    for p in primes:
        merged = crt_pair(r, m, profiles[p].D, profiles[p].M)
        if merged is None:  # pragma: no cover - pairwise consistency implies CRT
            return TupleClash(primes, None, "crt")
        r, m = merged
    merged = crt_pair(r, m, *index_congruence(c))
    if merged is None:
        return TupleClash(primes, None, "index-congruence")
    r, m = merged
    # n = P*q == r (mod m): solve the linear congruence for q.
    P = math.prod(primes)
    g = math.gcd(P, m)
    if r % g:
        return TupleClash(primes, None, "product")
    m_q = m // g
    q_res = (r // g) * pow(P // g, -1, m_q) % m_q if m_q > 1 else 0
    # Jacobi side conditions: J(c'/n) = +1 for smaller candidate indices with
    # c' >= 5 (the mod-24 class already covers -1, 2, 3) and J(c/n) = -1.
    conds = []
    if c >= 5:
        for cc in INDEX_SEQUENCE:
            if cc >= 5 and cc <= c:
                on_product = jacobi(cc, P)
                if on_product == 0:
                    return TupleClash(primes, None, "index-jacobi")
                want = -1 if cc == c else 1
                conds.append((cc, want * on_product))
    return TupleConstraint(primes, c, q_res, m_q, tuple(conds))


def phi_sweep(c: int, p_max: int, sign: int | None = None, include_inadmissible: bool = False) -> list[PhiProfile]:
    """Profiles of every prime c < p <= p_max that could divide an n of index c.

    ``sign`` restricts to split (+1) or inert (-1) primes.  Split primes with
    no admissible cofactor class are dropped unless ``include_inadmissible``.
    """
    a, b = standard_base(c)
    norm = a * a - c * b * b
    out = []
    for p in primes_up_to(p_max):
        if p < 3 or not index_compatible(p, c) or norm % p == 0:
            continue
        s = jacobi(c, p)
        if s == 0 or (sign is not None and s != sign):
            continue
        profile = phi_profile(p, c)
        if profile.admissible or include_inadmissible:
            out.append(profile)
    return out


def consistent_pairs(c: int, p_max: int) -> list[tuple[int, int]]:
    """All consistent pairs among the admissible primes up to p_max."""
    profiles = phi_sweep(c, p_max)
    pairs = []
    for f1, f2 in combinations(profiles, 2):
        if (f1.D - f2.D) % math.gcd(f1.M, f2.M) == 0:
            pairs.append((f1.p, f2.p))
    return pairs
