"""Desk-scale checks of structural facts about Frobenius pseudoprimes.

Each check returns a ``PropResult``; ``run_proposition_suite`` runs the
selected checks and bundles them into a JSON-friendly report.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from ..arith import is_prime, jacobi
from ..exactquad import factors_except_one_scan
from ..frobtest import (
    INDEX_SEQUENCE,
    frobenius_index,
    frobenius_test,
    raw_frobenius_relation,
    standard_base,
)
from ..structure import (
    TupleClash,
    count_phi_negative_candidates,
    index_compatible,
    multiple_factor_check,
    pair_status,
    phi_negative_candidates,
    phi_positive_admissible,
    tuple_residue,
)
from . import kernel
from .scan import scan_range

# Split-prime candidates (c, p) below 2^32 with an admissible cofactor class.
PHI_POSITIVE_TABLE = (
    (-1, 2276629), (-1, 30906409), (-1, 806361541), (2, 8191), (2, 2147483647),
    (7, 31), (7, 3923), (11, 98641), (17, 125597), (23, 5966803), (29, 12637),
    (31, 3596719249), (43, 329947), (61, 271), (67, 75011), (67, 25742443),
    (83, 1931), (83, 3278741), (83, 806898559), (89, 109000877),
    (89, 136973443), (101, 137), (103, 6863), (103, 3523679801),
    (107, 219920461), (127, 713342911),
)
# The entries that survive a direct check of all n = pq < 2^64.
PHI_POSITIVE_REDUCED = (
    (2, 8191), (7, 31), (7, 3923), (11, 98641),
    (29, 12637), (61, 271), (83, 3278741), (101, 137),
)

TRIPLES = {
    5: ((13, 37, 433), (13, 37, 97)),
    -1: ((11, 47, 71),),
    2: ((29, 53, 157), (5, 53, 157)),
}

QUADRUPLES = {
    5: ((13, 37, 97, 433),),
    2: ((29, 53, 157, 197), (5, 53, 157, 197)),
    -1: (
        (7, 19, 79, 1999), (7, 19, 79, 919), (7, 19, 79, 859), (7, 19, 79, 739),
        (7, 19, 79, 619), (7, 19, 79, 599), (7, 19, 79, 499), (7, 19, 79, 487),
        (7, 19, 79, 439), (7, 19, 79, 199), (7, 19, 199, 1999), (7, 19, 199, 859),
        (7, 19, 199, 599), (7, 19, 199, 499), (7, 19, 199, 487), (11, 47, 71, 691),
        (11, 47, 71, 431), (19, 31, 79, 1279), (31, 79, 139, 599),
    ),
}

# Inert primes whose candidate lists are spot-checked, with the expected
# number of candidates below 2^64.
PHI_NEGATIVE_SPOTS = ((1000003, -1, 18), (10000019, -1, 0), (100003, -1, 424236))

ALL_CHECKS = (
    "direct", "index-profile", "multiple", "except-one", "phi-positive",
    "phi-negative", "pairs", "triples", "quadruples",
)


@dataclass
class SuiteConfig:
    which: tuple[str, ...] = ALL_CHECKS
    bound: int = 1 << 40  # largest n tried when sweeping multiples
    scan_hi: int = 10**6
    multiple_p_max: int = 10**4
    c_max: int = 128
    except_one_q_max: int = 2000
    except_one_indices: tuple[int, ...] = (-1, 2, 5)
    workers: int = 1

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class PropResult:
    name: str
    passed: bool
    counts: dict = field(default_factory=dict)
    elapsed: float = 0.0


def _indices_below(c_max: int) -> list[int]:
    return [c for c in INDEX_SEQUENCE if c < c_max]


def check_direct(cfg: SuiteConfig) -> PropResult:
    report = scan_range(3, cfg.scan_hi, cfg.workers)
    return PropResult(
        "direct",
        not report.fpp_hits and not report.disagreements,
        {"hi": cfg.scan_hi, "tested": report.tested, "fpp": len(report.fpp_hits),
         "disagreements": len(report.disagreements)},
    )


def check_index_profile(cfg: SuiteConfig) -> PropResult:
    hi = min(cfg.scan_hi, kernel.FROBENIUS_LIMIT)
    n = np.arange(3, hi, 2, dtype=np.uint64)
    n = n[kernel.isqrt_batch(n) ** 2 != n]
    index = kernel.frobenius_index_batch(n)
    at = int(np.argmax(index))
    worst = int(n[at])
    # the largest-index number must still be classified correctly
    ok = frobenius_test(worst).is_probable_prime == is_prime(worst)
    values, counts = np.unique(index, return_counts=True)
    return PropResult(
        "index-profile",
        ok,
        {"hi": hi, "max_index": int(index[at]), "argmax": worst,
         "histogram": {int(v): int(k) for v, k in zip(values, counts)}},
    )


def check_multiple(cfg: SuiteConfig) -> PropResult:
    sweep = multiple_factor_sweep(cfg.multiple_p_max, cfg.c_max)
    return PropResult(
        "multiple", not sweep["hits"],
        {"p_max": cfg.multiple_p_max, **sweep},
    )


def multiple_factor_sweep(p_max: int, c_max: int) -> dict:
    """Square-factor condition for every inert prime p < p_max and index c < c_max.

    Pairs with p <= c are still evaluated but reported apart: such a p can
    never divide a number whose index is c.
    """
    tried = norm = 0
    hits, excluded = [], []
    for p in kernel.base_primes(p_max - 1).tolist():
        if p < 3:
            continue
        for c in _indices_below(c_max):
            if jacobi(c, p) != -1:
                continue
            result = multiple_factor_check(p, c)
            valid = index_compatible(p, c)
            tried += valid
            norm += result.norm and valid
            if result.full:
                (hits if valid else excluded).append((p, c))
    return {"pairs_tried": tried, "norm_only": norm, "hits": hits, "excluded_hits": excluded}


def check_except_one(cfg: SuiteConfig) -> PropResult:
    counts = {}
    fpp = 0
    for c in cfg.except_one_indices:
        rows = factors_except_one_scan(c, cfg.except_one_q_max, workers=cfg.workers)
        verdicts = [v for row in rows for v in row.verdicts.values()]
        found = verdicts.count("fpp")
        fpp += found
        counts[str(c)] = {
            "q_max": cfg.except_one_q_max,
            "candidates": len(verdicts),
            "fpp": found,
            "relation_holds": verdicts.count("relation-holds"),
            "unresolved": sum(1 for row in rows if row.unresolved != 1),
        }
    return PropResult("except-one", fpp == 0, counts)


def check_phi_positive(cfg: SuiteConfig) -> PropResult:
    missing = [(c, p) for c, p in PHI_POSITIVE_TABLE if phi_positive_admissible(p, c) is None]
    reduced_missing = [(c, p) for c, p in PHI_POSITIVE_REDUCED if (c, p) in missing]
    return PropResult(
        "phi-positive", not missing,
        {"table": len(PHI_POSITIVE_TABLE), "reduced": len(PHI_POSITIVE_REDUCED),
         "not_admissible": missing, "reduced_not_admissible": reduced_missing},
    )


def check_phi_negative(cfg: SuiteConfig) -> PropResult:
    counts = {}
    ok = True
    for p, c, expected in PHI_NEGATIVE_SPOTS:
        total = count_phi_negative_candidates(p, c, 1 << 64)
        entry = {"candidates": total, "expected": expected}
        if total <= 1000:
            a, b = standard_base(c)
            cands = phi_negative_candidates(p, c, 1 << 64)
            entry["fpp"] = sum(raw_frobenius_relation(n, a, b, c) for n in cands)
            ok &= entry["fpp"] == 0
        ok &= total == expected
        counts[str(p)] = entry
    return PropResult("phi-negative", ok, counts)


def check_pairs(cfg: SuiteConfig) -> PropResult:
    failures = []
    checked = 0
    for c, groups in list(TRIPLES.items()) + list(QUADRUPLES.items()):
        for group in groups:
            for p1, p2 in combinations(group, 2):
                checked += 1
                status = pair_status(p1, p2, c)
                if status != "consistent":
                    failures.append((c, p1, p2, status))
    return PropResult("pairs", not failures, {"pairs": checked, "failures": failures})


def _multiples_hit(P: int, c: int, cofactors) -> tuple[int, int]:
    """Count (relation true, genuine FPP) over n = P*q for the given q."""
    a, b = standard_base(c)
    relation = fpp = 0
    for q in cofactors:
        n = P * q
        if raw_frobenius_relation(n, a, b, c):
            relation += 1
            if math.isqrt(n) ** 2 != n and frobenius_index(n) == c:
                fpp += 1
    return relation, fpp


def check_triples(cfg: SuiteConfig) -> PropResult:
    counts = {}
    ok = True
    for c, groups in TRIPLES.items():
        for group in groups:
            constraint = tuple_residue(list(group), c)
            key = f"{c}:{'x'.join(map(str, group))}"
            if isinstance(constraint, TupleClash):
                counts[key] = {"clash": constraint.reason}
                continue
            P = math.prod(group)
            start = constraint.residue or constraint.modulus
            qs = [q for q in range(start, cfg.bound // P + 1, constraint.modulus) if constraint.admits(q)]
            relation, fpp = _multiples_hit(P, c, qs)
            counts[key] = {"modulus": constraint.modulus, "cofactors": len(qs),
                           "relation": relation, "fpp": fpp}
            ok &= relation == 0
    return PropResult("triples", ok, counts)


def check_quadruples(cfg: SuiteConfig) -> PropResult:
    counts = {}
    ok = True
    for c, groups in QUADRUPLES.items():
        for group in groups:
            P = math.prod(group)
            relation, fpp = _multiples_hit(P, c, range(1, cfg.bound // P + 1, 2))
            counts[f"{c}:{'x'.join(map(str, group))}"] = {
                "multiples": (cfg.bound // P + 1) // 2, "relation": relation, "fpp": fpp}
            ok &= relation == 0
    return PropResult("quadruples", ok, counts)


CHECKS = {
    "direct": check_direct,
    "index-profile": check_index_profile,
    "multiple": check_multiple,
    "except-one": check_except_one,
    "phi-positive": check_phi_positive,
    "phi-negative": check_phi_negative,
    "pairs": check_pairs,
    "triples": check_triples,
    "quadruples": check_quadruples,
}


def run_proposition_suite(cfg: SuiteConfig | None = None) -> dict:
    cfg = cfg or SuiteConfig()
    unknown = set(cfg.which) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    results = []
    for name in cfg.which:
        started = time.perf_counter()
        result = CHECKS[name](cfg)
        result.elapsed = round(time.perf_counter() - started, 3)
        results.append(result)
    return {
        "config": cfg.to_dict(),
        "passed": all(r.passed for r in results),
        "results": [asdict(r) for r in results],
    }
