"""Exact quadratic integers and the "all factors except one" search.

If n = q*p is a Frobenius pseudoprime with base z, every admissible prime p
divides gcd(a_q - a, b_q -/+ b) where z^q = a_q + b_q sqrt(c) over the
integers.  Scanning q and factoring that gcd rules out every n whose
cofactor q is small.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .arith import U64_LIMIT, TrivialFactor, factorize, is_perfect_square, jacobi, primes_up_to
from .frobtest import IndexCapExceeded, frobenius_index, raw_frobenius_relation, standard_base

try:
    import gmpy2

    _big = gmpy2.mpz
    _gcd = gmpy2.gcd
except ImportError:  # pragma: no cover - gmpy2 is optional
    gmpy2 = None
    _big = int
    _gcd = math.gcd

log = logging.getLogger(__name__)

# D is trial-divided by primes below this bound before rho takes over.
TRIAL_LIMIT = 10**6


@dataclass(frozen=True)
class BigQuadInt:
    a: int
    b: int
    c: int

    def __mul__(self, other: BigQuadInt) -> BigQuadInt:
        if self.c != other.c:
            raise ValueError("radicands differ")
        return BigQuadInt(
            self.a * other.a + self.c * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.c,
        )

    def conj(self) -> BigQuadInt:
        return BigQuadInt(self.a, -self.b, self.c)

    def norm(self) -> int:
        return self.a * self.a - self.c * self.b * self.b

    def reduce(self, n: int) -> tuple[int, int]:
        return int(self.a % n), int(self.b % n)


def _pow_big(a, b, c: int, q: int):
    x, y = _big(a), _big(b)
    for bit in bin(q)[3:]:
        x, y = x * x + c * y * y, 2 * x * y
        if bit == "1":
            x, y = x * a + c * y * b, x * b + y * a
    return x, y


def exact_pow(a: int, b: int, c: int, q: int) -> BigQuadInt:
    if q < 1:
        raise ValueError("exponent must be positive")
    x, y = _pow_big(a, b, c, q)
    return BigQuadInt(int(x), int(y), c)


def _divisor_from_power(x, y, a: int, b: int, sign: int):
    return _gcd(x - a, y - b) if sign == 1 else _gcd(x - a, y + b)


def cofactor_divisor_gcd(q: int, a: int, b: int, c: int) -> int:
    """gcd(a_q - a, b_q - b) when J(c/q) = +1, gcd(a_q - a, b_q + b) when -1."""
    if q < 1 or q % 2 == 0:
        raise ValueError(f"cofactor must be odd and positive, got {q}")
    sign = jacobi(c, q)
    if sign == 0:
        raise TrivialFactor(math.gcd(abs(c), q), f"J({c}/{q}) = 0")
    x, y = _pow_big(a, b, c, q)
    return int(_divisor_from_power(x, y, a, b, sign))


@dataclass
class FactoredDivisor:
    primes: list[int]
    unresolved: int = 1  # cofactor that could not be split (1 when complete)


def factor_divisor(d: int, trial_limit: int = TRIAL_LIMIT) -> FactoredDivisor:
    """Distinct prime factors of ``d``; cofactors above 64 bits stay unresolved."""
    primes: list[int] = []
    if d < 2:
        return FactoredDivisor(primes)
    for p in _trial_primes(trial_limit):
        if p * p > d:
            break
        if d % p == 0:
            primes.append(p)
            while d % p == 0:
                d //= p
    if d == 1:
        return FactoredDivisor(primes)
    if d < trial_limit * trial_limit:
        primes.append(d)
        return FactoredDivisor(primes)
    if d < U64_LIMIT:
        primes.extend(factorize(d).primes())
        return FactoredDivisor(sorted(primes))
    return FactoredDivisor(primes, unresolved=d)


_TRIAL_CACHE: dict[int, list[int]] = {}


def _trial_primes(limit: int) -> list[int]:
    if limit not in _TRIAL_CACHE:
        _TRIAL_CACHE[limit] = primes_up_to(limit)
    return _TRIAL_CACHE[limit]


@dataclass
class ExceptOneRow:
    q: int
    sign: int
    d_bits: int
    primes: list[int]
    verdicts: dict[int, str] = field(default_factory=dict)
    unresolved: int = 1

    def passing(self) -> list[int]:
        return [p for p, v in self.verdicts.items() if v in ("fpp", "relation-holds")]


def _judge(n: int, a: int, b: int, c: int) -> str:
    if n % 2 == 0:
        return "even"
    if is_perfect_square(n) is not None:
        return "square"
    if not raw_frobenius_relation(n, a, b, c):
        return "rejected"
    try:
        index = frobenius_index(n)
    except IndexCapExceeded:
        return "relation-holds"
    # A composite that satisfies the relation for its own index is an FPP.
    return "fpp" if index == c else "relation-holds"


def _scan_block(c: int, q_lo: int, q_hi: int, n_filter: int | None) -> list[ExceptOneRow]:
    a, b = standard_base(c)
    rows = []
    q = q_lo
    x, y = _pow_big(a, b, c, q)
    sq_a, sq_b = a * a + c * b * b, 2 * a * b
    while q <= q_hi:
        sign = jacobi(c, q)
        if sign != 0:
            d = int(_divisor_from_power(x, y, a, b, sign))
            fd = factor_divisor(d)
            row = ExceptOneRow(q, sign, d.bit_length(), fd.primes, unresolved=fd.unresolved)
            for p in fd.primes:
                n = q * p
                if n_filter is not None and n > n_filter:
                    row.verdicts[p] = "above-bound"
                else:
                    row.verdicts[p] = _judge(n, a, b, c)
            if fd.unresolved != 1:
                log.warning("q=%d: unresolved cofactor of %d bits", q, fd.unresolved.bit_length())
            rows.append(row)
        x, y = x * sq_a + c * y * sq_b, x * sq_b + y * sq_a
        q += 2
    return rows


def factors_except_one_scan(
    c: int,
    q_max: int,
    n_filter: int | None = None,
    q_min: int = 3,
    workers: int = 1,
    block: int = 2048,
) -> list[ExceptOneRow]:
    """Run the cofactor search for every odd q in [q_min, q_max].

    Each row lists the primes of D and, per prime p, what happened to n = q*p:
    ``even``, ``rejected``, ``square``, ``above-bound``, ``relation-holds`` (relation
    true but c is not the index of n) or ``fpp``.
    """
    q_min = max(3, q_min | 1)
    block += block % 2
    starts = list(range(q_min, q_max + 1, block))
    jobs = [(c, s, min(s + block - 2, q_max), n_filter) for s in starts]
    if workers <= 1 or len(jobs) == 1:
        parts = [_scan_block(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_scan_block, *zip(*jobs)))
    return [row for part in parts for row in part]
