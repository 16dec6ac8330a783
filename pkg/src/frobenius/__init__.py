"""Frobenius primality test over Z_n[sqrt(c)] and tools for hunting
Frobenius pseudoprimes."""

__version__ = "0.1.0"

from .arith import factorize, is_prime, is_perfect_square, jacobi, multiplicative_order, sqrt_mod_prime
from .frobtest import (
    TestOutcome,
    Verdict,
    fermat_test,
    frobenius_index,
    frobenius_test,
    miller_rabin_round,
    raw_frobenius_relation,
    standard_base,
)
from .quad import QuadElem, RingParams, q_conj, q_mul, q_norm, q_pow, quad_order


__all__ = [
    "QuadElem", "RingParams", "TestOutcome", "Verdict", "factorize", "fermat_test",
    "frobenius_index", "frobenius_test", "is_perfect_square", "is_prime", "jacobi",
    "miller_rabin_round", "multiplicative_order", "q_conj", "q_mul", "q_norm", "q_pow",
    "quad_order", "raw_frobenius_relation", "sqrt_mod_prime", "standard_base",
]
