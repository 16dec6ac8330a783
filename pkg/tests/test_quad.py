import random

import pytest

from frobenius.arith import factorize, jacobi, primes_up_to
from frobenius.quad import (
    QuadElem,
    RingParams,
    inert_group_order,
    pow_pair,
    q_conj,
    q_mul,
    q_norm,
    q_pow,
    quad_order,
)


def naive_pow(z, e, ring):
    out = ring.one()
    for _ in range(e):
        out = q_mul(out, z, ring)
    return out


GAUSS19 = RingParams(19, -1)
ROOT3_17 = RingParams(17, 3)


class TestRing:
    @pytest.mark.parametrize("n,c", [(2, -1), (1, -1), (15, 0), (15, 1), (15, 2**31)])
    def test_invalid_params(self, n, c):
        with pytest.raises(ValueError):
            RingParams(n, c)

    def test_unreduced_elements_rejected(self):
        with pytest.raises(ValueError):
            q_mul(QuadElem(19, 0), QuadElem(1, 0), GAUSS19)
        with pytest.raises(ValueError):
            q_conj(QuadElem(0, -1), GAUSS19)


class TestArithmetic:
    def test_mul(self):
        z = QuadElem(2, 1)
        assert q_mul(z, z, GAUSS19) == (3, 4)
        assert q_mul(z, GAUSS19.one(), GAUSS19) == z
        assert q_mul(QuadElem(1, 1), QuadElem(1, 1), ROOT3_17) == (4, 2)

    def test_conj(self):
        assert q_conj(QuadElem(2, 1), GAUSS19) == (2, 18)
        z = QuadElem(7, 11)
        assert q_conj(q_conj(z, GAUSS19), GAUSS19) == z
        assert q_conj(QuadElem(5, 0), GAUSS19) == (5, 0)

    def test_norm(self):
        assert q_norm(QuadElem(2, 1), GAUSS19) == 5
        assert q_norm(QuadElem(1, 1), ROOT3_17) == 15
        rng = random.Random(11)
        ring = RingParams(1000003, 7)
        for _ in range(500):
            z = QuadElem(rng.randrange(ring.n), rng.randrange(ring.n))
            w = q_mul(z, q_conj(z, ring), ring)
            assert w == (q_norm(z, ring), 0)

    def test_pow_examples(self):
        assert q_pow(QuadElem(2, 1), 19, GAUSS19) == (2, 18)
        assert q_pow(QuadElem(2, 1), 33, RingParams(33, -1)) == (2, 22)
        assert q_pow(QuadElem(1, 1), 17, ROOT3_17) == (1, 16)
        assert q_pow(QuadElem(5, 6), 0, GAUSS19) == (1, 0)

    def test_pow_matches_naive(self):
        rng = random.Random(5)
        for _ in range(200):
            n = rng.randrange(3, 500) | 1
            c = rng.choice([-1, 2, 3, 5, 7, 11, -7])
            ring = RingParams(n, c)
            z = QuadElem(rng.randrange(n), rng.randrange(n))
            e = rng.randrange(60)
            assert q_pow(z, e, ring) == naive_pow(z, e, ring)

    def test_pow_pair_full_width(self):
        n = 2**64 - 59
        # n = 1 mod 4, so -1 splits and z^n = z; 3 is inert (J(3/n) = -1)
        assert pow_pair(2, 1, n, -1, n) == (2, 1)
        assert jacobi(3, n) == -1
        assert pow_pair(1, 1, n, 3, n) == (1, n - 1)


class TestOrder:
    def test_examples(self):
        assert quad_order((2, 1), 1000003, -1) == 1000006000008
        assert quad_order((2, 1), 100003, -1) == 434808696
        assert quad_order((1, 0), 1000003, -1) == 1

    def test_ten_million_and_nineteen(self):
        p = 10000019
        q = quad_order((2, 1), p, -1)
        assert q == (p * p - 1) // 6 == 16666730000060

    def test_zero_norm_rejected(self):
        with pytest.raises(ValueError):
            quad_order((2, 1), 5, -1)

    def test_against_brute_force(self):
        for p in primes_up_to(60)[1:]:
            for c in (-1, 2, 3, 5):
                if c % p == 0:
                    continue
                ring = RingParams(p, c)
                for z in ((1, 1), (2, 1), (3, 2)):
                    z = QuadElem(z[0] % p, z[1] % p)
                    if q_norm(z, ring) == 0:
                        continue
                    k, w = 1, z
                    while w != (1, 0):
                        w, k = q_mul(w, z, ring), k + 1
                    assert quad_order(z, p, c) == k

    def test_inert_group_order(self):
        f = inert_group_order(1000003)
        assert f.value == 1000003**2 - 1
        assert f == factorize(1000003**2 - 1)
