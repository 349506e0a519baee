import random
from fractions import Fraction

import pytest

from pade_tilings.approximants import aztec_count, hexagon_k_range, hexagon_reduced_count, macmahon
from pade_tilings.errors import CapacityExceeded, TooMany, Untileable
from pade_tilings.exact import Poly
from pade_tilings.gaps import GapSet
from pade_tilings.oracle import (
    count_lozenge,
    count_matchings,
    count_weighted_domino,
    domino_generating_polynomial,
    enumerate_tilings_tiny,
    hexagon_gap_region,
    lgv_gap_count,
    sample_tiling,
)
from pade_tilings.regions import build_aztec_region, build_hexagon_region, count_vertical


def test_full_aztec_counts():
    assert count_weighted_domino(build_aztec_region(2), 1) == 8
    for N in range(1, 9):
        for a in (Fraction(1, 2), Fraction(1)):
            assert count_weighted_domino(build_aztec_region(N), a) == (1 + a * a) ** (N * (N + 1) // 2)


def test_generating_polynomial():
    assert domino_generating_polynomial(build_aztec_region(1)) == Poly([1, 0, 1])
    assert count_weighted_domino(build_aztec_region(2, "reduced", m=2, k=1), 1) == 2


def test_against_enumeration():
    a = Fraction(2, 3)
    for N in range(1, 5):
        for m in range(1, N + 1):
            for k in range(1, m + 2):
                region = build_aztec_region(N, "reduced", m=m, k=k)
                tilings = enumerate_tilings_tiny(region)
                assert sum(a ** count_vertical(t) for t in tilings) == count_weighted_domino(region, a)


def test_enumeration_sizes():
    assert len(enumerate_tilings_tiny(build_aztec_region(1))) == 2
    assert len(enumerate_tilings_tiny(build_aztec_region(2))) == 8
    assert len(enumerate_tilings_tiny(build_hexagon_region(2, 1, 1))) == 2
    with pytest.raises(TooMany):
        enumerate_tilings_tiny(build_aztec_region(6))


def test_capacity():
    with pytest.raises(CapacityExceeded):
        count_weighted_domino(build_aztec_region(5), 1, width_limit=4)


def test_normalization():
    a = Fraction(1, 2)
    region = build_aztec_region(3, "tilde", m=2, k=1)
    total = count_weighted_domino(region, a)
    assert sum(a ** count_vertical(t) / total for t in enumerate_tilings_tiny(region)) == 1


def test_lozenge_counts():
    assert count_lozenge(build_hexagon_region(2, 1, 1)) == 2
    assert count_matchings(build_hexagon_region(2, 1, 1)) == 2
    for L in range(2, 7):
        for M in range(1, L):
            for N in range(1, 5):
                region = build_hexagon_region(L, M, N)
                assert count_lozenge(region) == macmahon(L, M, N)
                assert lgv_gap_count(L, M, N, L // 2, GapSet((M + N,))) == macmahon(L, M, N)


def test_reduced_hexagon_example():
    region = build_hexagon_region(14, 5, 6, "reduced", r=3, k=7)
    assert count_lozenge(region) == hexagon_reduced_count(14, 5, 6, 3, 7)


def test_hexagon_gap_three_ways():
    L, M, N = 6, 3, 3
    for r in range(1, L):
        lo, hi = hexagon_k_range(L, M, N, r)
        for k in range(lo, hi + 1):
            reduced = count_lozenge(build_hexagon_region(L, M, N, "reduced", r=r, k=k))
            assert reduced == lgv_gap_count(L, M, N, r, GapSet.semi_infinite(k))
            assert reduced == count_matchings(hexagon_gap_region(L, M, N, r, GapSet((k,), M + N)))


def test_sampler():
    region = build_aztec_region(4)
    t1 = sample_tiling(region, Fraction(1, 2), random.Random(5))
    t2 = sample_tiling(region, Fraction(1, 2), random.Random(5))
    assert t1 == t2
    with pytest.raises(Untileable):
        sample_tiling(build_aztec_region(2, "reduced", m=2, k=0), 1, random.Random(0))


def _chi2(counts, probs, draws):
    scipy_stats = pytest.importorskip("scipy.stats")
    observed = [counts.get(t, 0) for t in probs]
    expected = [float(p) * draws for p in probs.values()]
    return scipy_stats.chisquare(observed, expected).pvalue


@pytest.mark.parametrize("a", [Fraction(1), Fraction(1, 2)])
def test_sampler_chi2(a):
    region = build_aztec_region(2)
    total = count_weighted_domino(region, a)
    probs = {t: a ** count_vertical(t) / total for t in enumerate_tilings_tiny(region)}
    rng = random.Random(7)
    draws = 10_000
    counts = {}
    for _ in range(draws):
        t = sample_tiling(region, a, rng)
        counts[t] = counts.get(t, 0) + 1
    assert _chi2(counts, probs, draws) > 0.001


def test_theorem_agreement_small():
    for N in range(1, 6):
        for m in range(1, N + 1):
            for k in range(1, m + 2):
                region = build_aztec_region(N, "reduced", m=m, k=k)
                assert count_weighted_domino(region, Fraction(3, 4)) == aztec_count(N, m, k, Fraction(3, 4))
