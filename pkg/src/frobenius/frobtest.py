"""The Frobenius primality test with a fixed base, plus Fermat and
Miller-Rabin comparators."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .arith import SMALL_PRIMES, TrivialFactor, is_perfect_square, jacobi
from .quad import pow_pair

# Largest radicand the index search will try.
INDEX_CAP = 1021

INDEX_SEQUENCE = (-1,) + tuple(p for p in SMALL_PRIMES if p <= INDEX_CAP)


class IndexCapExceeded(ArithmeticError):
    pass


class NotApplicable(ValueError):
    """The input is outside the domain of the Frobenius index (even or square)."""


class Verdict(str, enum.Enum):
    FROBENIUS_PRIME = "frobenius-prime"
    COMPOSITE = "composite"
    FACTOR_FOUND = "factor-found"


@dataclass(frozen=True)
class Diagnostics:
    c: int
    base: tuple[int, int]
    residue: tuple[int, int]


@dataclass(frozen=True)
class TestOutcome:
    __test__ = False  # not a pytest class

    n: int
    verdict: Verdict
    reason: str | None = None
    divisor: int | None = None
    diagnostics: Diagnostics | None = None
    c: int | None = None

    @property
    def is_probable_prime(self) -> bool:
        return self.verdict is Verdict.FROBENIUS_PRIME

    def describe(self) -> str:
        if self.verdict is Verdict.FROBENIUS_PRIME:
            text = "frobenius-prime"
            if self.diagnostics:
                text += f" c={self.diagnostics.c}"
            return text
        if self.verdict is Verdict.FACTOR_FOUND:
            return f"composite (factor {self.divisor}, c={self.c})"
        if self.reason == "square" and self.divisor:
            return f"composite (square of {self.divisor})"
        return f"composite ({self.reason})"

    def to_dict(self) -> dict:
        out = {"n": self.n, "verdict": self.verdict.value}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.divisor is not None:
            out["divisor"] = self.divisor
        if self.c is not None:
            out["c"] = self.c
        if self.diagnostics is not None:
            out["base"] = list(self.diagnostics.base)
            out["residue"] = list(self.diagnostics.residue)
        return out


def frobenius_index(n: int) -> int:
    """Smallest c in -1, 2, 3, 5, 7, 11, ... with J(c/n) != +1.

    A returned c with J(c/n) == 0 means c divides n; callers handle that.
    """
    if n < 3 or n % 2 == 0:
        raise NotApplicable(f"{n} is not an odd number >= 3")
    if is_perfect_square(n) is not None:
        raise NotApplicable(f"{n} is a perfect square")
    for c in INDEX_SEQUENCE:
        if jacobi(c, n) != 1:
            return c
    raise IndexCapExceeded(f"Frobenius index of {n} exceeds {INDEX_CAP}")


def standard_base(c: int) -> tuple[int, int]:
    if c in (0, 1):
        raise ValueError(f"{c} is not a valid Frobenius index")
    return (2, 1) if c in (-1, 2) else (1, 1)


def raw_frobenius_relation(n: int, a: int, b: int, c: int) -> bool:
    """True iff (a + b sqrt c)^n == a - b sqrt c in Z_n[sqrt c]."""
    x, y = pow_pair(a, b, n, c, n)
    return x == a % n and y == -b % n


def frobenius_test(n: int) -> TestOutcome:
    if n < 3 or n % 2 == 0:
        if n == 2:
            return TestOutcome(n, Verdict.FROBENIUS_PRIME)
        if n == 1:
            return TestOutcome(n, Verdict.COMPOSITE, reason="square")
        return TestOutcome(n, Verdict.COMPOSITE, reason="even")
    root = is_perfect_square(n)
    if root is not None:
        return TestOutcome(n, Verdict.COMPOSITE, reason="square", divisor=root)
    c = frobenius_index(n)
    if c > 0 and n % c == 0:
        return TestOutcome(n, Verdict.FACTOR_FOUND, divisor=math.gcd(c, n), c=c)
    a, b = standard_base(c)
    x, y = pow_pair(a, b, n, c, n)
    diag = Diagnostics(c, (a, b), (x, y))
    if x == a % n and y == -b % n:
        return TestOutcome(n, Verdict.FROBENIUS_PRIME, diagnostics=diag, c=c)
    return TestOutcome(
        n, Verdict.COMPOSITE, reason="frobenius-equality-failed", diagnostics=diag, c=c
    )


def fermat_test(n: int, base: int) -> bool:
    base %= n
    g = math.gcd(base, n)
    if g != 1:
        raise TrivialFactor(g, f"base {base} shares the factor {g} with {n}")
    return pow(base, n - 1, n) == 1


def miller_rabin_round(n: int, base: int) -> bool:
    """Strong probable-prime test of odd ``n`` to one base."""
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False
