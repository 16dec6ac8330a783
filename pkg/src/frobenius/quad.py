"""Arithmetic in the residue ring Z_n[sqrt(c)].

Elements are pairs ``(a, b)`` standing for ``a + b*sqrt(c)``, always stored
reduced modulo ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .arith import Factorization, factorize, order_from_factorization


class QuadElem(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class RingParams:
    n: int
    c: int

    def __post_init__(self):
        if self.n < 3 or self.n % 2 == 0:
            raise ValueError(f"ring modulus must be odd and >= 3, got {self.n}")
        if self.c in (0, 1) or abs(self.c) >= 1 << 31:
            raise ValueError(f"invalid radicand {self.c}")

    def elem(self, a: int, b: int) -> QuadElem:
        return QuadElem(a % self.n, b % self.n)

    def one(self) -> QuadElem:
        return QuadElem(1, 0)


def _check(x: QuadElem, ring: RingParams) -> None:
    if not (0 <= x.a < ring.n and 0 <= x.b < ring.n):
        raise ValueError(f"{x} is not reduced modulo {ring.n}")


def q_mul(x: QuadElem, y: QuadElem, ring: RingParams) -> QuadElem:
    _check(x, ring)
    _check(y, ring)
    n = ring.n
    return QuadElem((x.a * y.a + ring.c * x.b * y.b) % n, (x.a * y.b + x.b * y.a) % n)


def q_conj(z: QuadElem, ring: RingParams) -> QuadElem:
    _check(z, ring)
    return QuadElem(z.a, -z.b % ring.n)


def q_norm(z: QuadElem, ring: RingParams) -> int:
    _check(z, ring)
    return (z.a * z.a - ring.c * z.b * z.b) % ring.n


def pow_pair(a: int, b: int, e: int, c: int, n: int) -> tuple[int, int]:
    """(a + b*sqrt(c))^e mod n, left-to-right binary exponentiation.

    Hot path: plain ints, no validation.  ``n`` may be any modulus >= 2.
    """
    if e == 0:
        return 1 % n, 0
    c %= n
    a %= n
    b %= n
    x, y = a, b
    for bit in bin(e)[3:]:
        # squaring: (x^2 + c y^2, 2xy)
        x, y = (x * x + c * y * y) % n, 2 * x * y % n
        if bit == "1":
            x, y = (x * a + c * y * b) % n, (x * b + y * a) % n
    return x, y


def q_pow(z: QuadElem, e: int, ring: RingParams) -> QuadElem:
    _check(z, ring)
    if e < 0:
        raise ValueError("negative exponent")
    return QuadElem(*pow_pair(z.a, z.b, e, ring.c, ring.n))


def inert_group_order(p: int) -> Factorization:
    """Factorization of p^2 - 1, the order of GF(p^2)^*."""
    return factorize(p - 1) * factorize(p + 1)


def quad_order(z: QuadElem, p: int, c: int, group_order: Factorization | None = None) -> int:
    """Multiplicative order of ``z`` in Z_p[sqrt(c)] for an inert prime ``p``."""
    ring = RingParams(p, c)
    z = ring.elem(*z)
    if q_norm(z, ring) == 0:
        raise ValueError(f"{z} is not invertible mod {p} (norm is 0)")
    if group_order is None:
        group_order = inert_group_order(p)
    return order_from_factorization(
        z,
        group_order,
        lambda v: v == (1, 0),
        lambda v, t: pow_pair(v[0], v[1], t, c, p),
    )
