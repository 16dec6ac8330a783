import json
import random

import numpy as np
import pytest

from frobenius.arith import is_prime
from frobenius.frobtest import fermat_test, frobenius_index, frobenius_test
from frobenius.harness import kernel, report
from frobenius.harness.props import SuiteConfig, multiple_factor_sweep, run_proposition_suite
from frobenius.harness.scan import (
    _code,
    check_list,
    count_fermat_pseudoprimes,
    read_integer_list,
    scan_range,
)


def brute_fermat_count(hi, bases):
    flags = kernel.prime_flags(0, hi)
    return sum(
        1 for n in range(9, hi, 2)
        if not flags[n] and all(pow(b, n - 1, n) == 1 for b in bases)
    )


class TestKernel:
    def test_prime_flags(self):
        flags = kernel.prime_flags(0, 10000)
        assert [n for n in range(10000) if flags[n]] == [n for n in range(10000) if is_prime(n)]
        seg = kernel.prime_flags(999_000, 1_001_000)
        assert all(seg[i] == is_prime(999_000 + i) for i in range(len(seg)))

    def test_isqrt(self):
        n = np.array([0, 1, 3, 4, 8, 9, 2**31 - 1, (2**32 - 1) ** 2, 2**64 - 1], dtype=np.uint64)
        assert kernel.isqrt_batch(n).tolist() == [0, 1, 1, 2, 2, 3, 46340, 2**32 - 1, 2**32 - 1]

    def test_frobenius_batch_matches_scalar(self):
        values = np.arange(0, 100_000, dtype=np.uint64)
        codes, index = kernel.frobenius_batch(values)
        for n in range(100_000):
            out = frobenius_test(n)
            assert codes[n] == _code(out), n
            if out.c is not None:
                assert index[n] == out.c

    def test_frobenius_batch_near_limit(self):
        rng = random.Random(9)
        values = [rng.randrange(2**31 - 2**22, 2**31) for _ in range(5000)]
        codes, _ = kernel.frobenius_batch(values)
        for n, code in zip(values, codes.tolist()):
            assert code == _code(frobenius_test(n)), n

    def test_limits(self):
        with pytest.raises(ValueError):
            kernel.frobenius_batch([2**31 + 1])
        with pytest.raises(ValueError):
            kernel.fermat_batch([2**32 + 1], 2)

    def test_index_batch(self):
        n = np.array([19, 13, 17, 5719, 1000001], dtype=np.uint64)
        assert kernel.frobenius_index_batch(n).tolist() == [frobenius_index(int(v)) for v in n]

    def test_fermat_batch(self):
        rng = random.Random(4)
        values = [rng.randrange(3, 2**32) | 1 for _ in range(3000)]
        got = kernel.fermat_batch(values, 3).tolist()
        assert got == [pow(3, n - 1, n) == 1 for n in values]


class TestScan:
    def test_small_ranges(self):
        r = scan_range(3, 10)
        assert (r.tested, r.squares, r.primes) == (0, 1, 3)
        r = scan_range(5719, 5720)
        assert r.tested == 1 and r.fpp_hits == [] and r.disagreements == []

    def test_million(self):
        r = scan_range(3, 10**6)
        assert r.fpp_hits == [] and r.disagreements == []
        assert r.primes == 78497
        assert r.tested + r.primes + r.squares == len(range(3, 10**6, 2))

    def test_fpp_hits_subset_of_disagreements(self):
        r = scan_range(3, 200_000)
        assert set(r.fpp_hits) <= {d[0] for d in r.disagreements}

    def test_shard_independence(self):
        one = scan_range(3, 3 * 2**16 + 77, 1, block=2**14)
        many = scan_range(3, 3 * 2**16 + 77, 3, block=2**14)
        assert one.body() == many.body()
        assert one.body() == scan_range(3, 3 * 2**16 + 77, 1).body()

    def test_above_kernel_limit(self):
        lo = 2**31 - 500
        r = scan_range(lo, lo + 1000)
        assert r.disagreements == []
        odd = range(lo | 1, lo + 1000, 2)
        assert r.primes == sum(is_prime(n) for n in odd)

    @pytest.mark.parametrize("lo,hi", [(10, 3), (2, 10), (5, 5)])
    def test_invalid(self, lo, hi):
        with pytest.raises(ValueError):
            scan_range(lo, hi)


class TestListCheck:
    def test_classic_pseudoprimes(self, tmp_path):
        path = tmp_path / "psp.txt"
        path.write_text("341\n561\n645\n")
        r = check_list(path)
        assert r.entries == 3 and r.rejected_by_frobenius == 3 and r.passed == []

    def test_empty(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("")
        r = check_list(path)
        assert r.entries == 0 and r.passed == []

    def test_primes(self, tmp_path):
        path = tmp_path / "primes.txt"
        path.write_text("".join(f"{p}\n" for p in (3, 5, 7, 19, 2**61 - 1)))
        r = check_list(path)
        assert r.rejected_by_frobenius == 0 and r.confirmed_primes == 5

    def test_crlf_and_malformed(self, tmp_path):
        path = tmp_path / "mixed.txt"
        path.write_bytes(b"341\r\n\r\nabc\n18446744073709551616\n561")
        values, malformed = read_integer_list(path)
        assert values == [341, 561] and malformed == 3
        r = check_list(path)
        assert r.entries == r.rejected_by_frobenius + len(r.passed) + r.confirmed_primes

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError, match="nope.txt"):
            check_list(tmp_path / "nope.txt")


class TestCounts:
    def test_base_two_below_million(self):
        expected = brute_fermat_count(10**6, [2])
        assert count_fermat_pseudoprimes(10**6, [2]) == expected == 245

    def test_two_bases(self):
        expected = brute_fermat_count(10**6, [2, 3])
        got = count_fermat_pseudoprimes(10**6, [2, 3])
        assert got == expected and got <= 245

    def test_small_block_sizes(self):
        assert count_fermat_pseudoprimes(20000, [2], block=1000) == brute_fermat_count(20000, [2])

    def test_scalar_matches_fermat_test(self):
        # 341 = 11 * 31 and 561 = 3 * 11 * 17 are the only base-2 pseudoprimes below 600
        assert count_fermat_pseudoprimes(600, [2]) == 2
        assert fermat_test(561, 2)


class TestReports:
    def test_envelope_and_hash(self):
        env = report.envelope("scan", {"lo": 3, "hi": 10}, {"tested": 0})
        assert env["version"] == "0.1.0"
        assert env["config_hash"] == report.config_hash({"hi": 10, "lo": 3})
        assert len(env["config_hash"]) == 16
        assert json.loads(report.to_json(env)) == env

    def test_csv_and_text(self):
        assert report.to_csv(["a", "b"], [[1, 2]]) == "a,b\n1,2\n"
        table = report.text_table(["a", "bb"], [[100, 2]])
        assert table.splitlines() == ["  a  bb", "---  --", "100   2"]


class TestSuite:
    def test_multiple_sweep_small(self):
        sweep = multiple_factor_sweep(5000, 128)
        assert sweep["hits"] == []
        assert sweep["excluded_hits"] == [(5, 83)]

    def test_cheap_checks(self):
        cfg = SuiteConfig(which=("phi-positive", "phi-negative", "pairs", "index-profile"),
                          scan_hi=10**5)
        out = run_proposition_suite(cfg)
        assert out["passed"], out

    def test_triples_and_quadruples_small_bound(self):
        cfg = SuiteConfig(which=("triples", "quadruples", "except-one"), bound=2**32,
                          except_one_q_max=301)
        out = run_proposition_suite(cfg)
        assert out["passed"], out

    def test_unknown_check(self):
        with pytest.raises(ValueError):
            run_proposition_suite(SuiteConfig(which=("nope",)))
