"""Range scans, pseudoprime-list checks and Fermat pseudoprime counts."""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from ..arith import U64_LIMIT, is_prime
from ..frobtest import Verdict, fermat_test, frobenius_test
from . import kernel

log = logging.getLogger(__name__)

BLOCK = 1 << 20
# Above this bound primality comes from Miller-Rabin instead of a sieve.
SIEVE_LIMIT = 10**8


@dataclass
class ScanReport:
    lo: int
    hi: int
    tested: int = 0  # odd composite non-squares
    primes: int = 0
    squares: int = 0
    fpp_hits: list[int] = field(default_factory=list)
    disagreements: list[tuple[int, str, str]] = field(default_factory=list)
    elapsed: float = 0.0
    shards: int = 1

    def body(self) -> dict:
        """Everything except timing and sharding metadata."""
        out = asdict(self)
        del out["elapsed"], out["shards"]
        out["disagreements"] = [list(d) for d in self.disagreements]
        return out

    def to_dict(self) -> dict:
        out = self.body()
        out["elapsed"] = round(self.elapsed, 3)
        out["shards"] = self.shards
        return out


def _oracle_flags(lo: int, hi: int, odd: np.ndarray) -> np.ndarray:
    if hi <= SIEVE_LIMIT:
        return kernel.prime_flags(lo, hi)[odd - lo]
    return np.array([is_prime(int(n)) for n in odd], dtype=bool)


def _scan_block(lo: int, hi: int) -> ScanReport:
    report = ScanReport(lo, hi)
    first = lo | 1
    if first >= hi:
        return report
    odd = np.arange(first, hi, 2, dtype=np.uint64)
    prime = _oracle_flags(lo, hi, odd)
    if hi <= kernel.FROBENIUS_LIMIT:
        codes, _ = kernel.frobenius_batch(odd)
    else:
        codes = np.array([_code(frobenius_test(int(n))) for n in odd], dtype=np.int8)
    composite = ~prime & (codes != kernel.SQUARE)
    report.tested = int(np.count_nonzero(composite))
    report.primes = int(np.count_nonzero(prime))
    report.squares = int(np.count_nonzero(codes == kernel.SQUARE))
    says_prime = codes == kernel.PRIME
    for i in np.flatnonzero(says_prime != prime).tolist():
        n = int(odd[i])
        outcome = frobenius_test(n)
        oracle = "prime" if prime[i] else "composite"
        report.disagreements.append((n, outcome.verdict.value, oracle))
        if not prime[i] and outcome.verdict is Verdict.FROBENIUS_PRIME:
            report.fpp_hits.append(n)
    return report


def _code(outcome) -> int:
    if outcome.verdict is Verdict.FROBENIUS_PRIME:
        return kernel.PRIME
    if outcome.verdict is Verdict.FACTOR_FOUND:
        return kernel.FACTOR
    if outcome.reason == "square":
        return kernel.SQUARE
    if outcome.reason == "even":
        return kernel.TRIVIAL
    return kernel.EQ_FAILED


def _blocks(lo: int, hi: int, width: int) -> list[tuple[int, int]]:
    # Blocks are aligned to multiples of the width so that the decomposition
    # never depends on the worker count.
    out = []
    start = lo
    while start < hi:
        end = min(hi, (start // width + 1) * width)
        out.append((start, end))
        start = end
    return out


def _merge(lo: int, hi: int, parts: list[ScanReport]) -> ScanReport:
    total = ScanReport(lo, hi)
    for part in parts:
        total.tested += part.tested
        total.primes += part.primes
        total.squares += part.squares
        total.fpp_hits.extend(part.fpp_hits)
        total.disagreements.extend(part.disagreements)
    return total


def scan_range(lo: int, hi: int, shard_count: int = 1, block: int = BLOCK, progress=None) -> ScanReport:
    """Frobenius-test every odd n in [lo, hi) and compare with the oracle.

    ``shard_count`` is the number of worker processes; the report body does
    not depend on it.  ``progress`` is called with each finished block.
    """
    if not 3 <= lo < hi or hi > U64_LIMIT:
        raise ValueError(f"invalid scan range [{lo}, {hi})")
    if shard_count < 1:
        raise ValueError("shard_count must be positive")
    started = time.perf_counter()
    blocks = _blocks(lo, hi, block)
    parts: list[ScanReport] = []
    if shard_count == 1 or len(blocks) == 1:
        for b in blocks:
            parts.append(_scan_block(*b))
            if progress:
                progress(parts[-1])
    else:
        with ProcessPoolExecutor(shard_count) as pool:
            for part in pool.map(_scan_block, *zip(*blocks)):
                parts.append(part)
                if progress:
                    progress(part)
    report = _merge(lo, hi, parts)
    report.elapsed = time.perf_counter() - started
    report.shards = shard_count
    return report


@dataclass
class ListCheckReport:
    source: str
    entries: int = 0
    rejected_by_frobenius: int = 0
    passed: list[int] = field(default_factory=list)  # composites the test accepted
    confirmed_primes: int = 0
    malformed_lines: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def read_integer_list(path) -> tuple[list[int], int]:
    """Parse one decimal integer per line; return (values, malformed count).

    Lines are LF-terminated; a trailing CR is stripped.  Blank lines and values
    outside [0, 2^64) count as malformed.
    """
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror}") from exc
    lines = raw.split(b"\n")
    if lines[-1] == b"":
        lines.pop()
    values, malformed = [], 0
    for line in lines:
        text = line.rstrip(b"\r")
        if text.isdigit() and int(text) < U64_LIMIT:
            values.append(int(text))
        else:
            malformed += 1
    return values, malformed


def check_list(path) -> ListCheckReport:
    values, malformed = read_integer_list(path)
    report = ListCheckReport(str(path), entries=len(values), malformed_lines=malformed)
    for n in values:
        outcome = frobenius_test(n)
        if outcome.verdict is not Verdict.FROBENIUS_PRIME:
            report.rejected_by_frobenius += 1
        elif is_prime(n):
            report.confirmed_primes += 1
        else:
            report.passed.append(n)
    return report


def _fermat_blocks(hi: int, bases: list[int], block: int):
    """Yield (block end, odd composites in the block passing every base)."""
    for lo, end in _blocks(3, hi, block):
        odd = np.arange(lo | 1, end, 2, dtype=np.uint64)
        if len(odd) == 0:
            continue
        passing = ~kernel.prime_flags(lo, end)[odd - lo]
        for b in bases:
            idx = np.flatnonzero(passing)
            passing[idx] = kernel.fermat_batch(odd[idx], b)
        yield end, odd[passing]


def fermat_pseudoprimes(hi: int, bases: list[int], block: int = BLOCK) -> list[int]:
    """All odd composite n < hi (hi <= 2^32) that pass the Fermat test to every base."""
    if hi > kernel.FERMAT_LIMIT:
        raise ValueError("listing is limited to hi <= 2^32")
    return [int(n) for _, found in _fermat_blocks(hi, bases, block) for n in found]


def count_fermat_pseudoprimes(hi: int, bases: list[int], block: int = BLOCK, progress=None) -> int:
    """Number of odd composite n < hi that pass the Fermat test to every base."""
    if hi > kernel.FERMAT_LIMIT:
        return _count_scalar(hi, bases)
    total = 0
    for end, found in _fermat_blocks(hi, bases, block):
        total += len(found)
        if progress:
            progress(end, total)
    return total


def _count_scalar(hi: int, bases: list[int]) -> int:
    count = 0
    for n in range(9, hi, 2):
        if is_prime(n):
            continue
        try:
            if all(fermat_test(n, b) for b in bases):
                count += 1
        except ValueError:
            continue
    return count


def default_workers() -> int:
    return os.cpu_count() or 1
