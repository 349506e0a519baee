import random
from fractions import Fraction

import pytest

from pade_tilings.errors import PreconditionViolation
from pade_tilings.oracle import count_weighted_domino, enumerate_tilings_tiny
from pade_tilings.regions import build_aztec_region, check_domino_tiling, count_vertical
from pade_tilings.shuffling import exact_gap_probability, mc_gap_probability, shuffle_sample


def test_valid_and_deterministic():
    for N in range(1, 12):
        t = shuffle_sample(N, Fraction(1, 2), seed=N)
        check_domino_tiling(t, build_aztec_region(N))
        assert shuffle_sample(N, Fraction(1, 2), seed=N) == t


def test_preconditions():
    with pytest.raises(PreconditionViolation):
        shuffle_sample(0)
    with pytest.raises(PreconditionViolation):
        shuffle_sample(2, 0)


def test_order_one_frequencies():
    draws = 10_000
    vert = sum(count_vertical(shuffle_sample(1, 1, seed=s)) == 2 for s in range(draws))
    assert abs(vert / draws - 0.5) < 3 * (0.25 / draws) ** 0.5


@pytest.mark.parametrize("N,a", [(1, 1), (2, 1), (3, 1), (1, Fraction(1, 2)), (2, Fraction(1, 2)), (3, Fraction(1, 2))])
def test_chi2(N, a):
    stats = pytest.importorskip("scipy.stats")
    a = Fraction(a)
    region = build_aztec_region(N)
    total = count_weighted_domino(region, a)
    tilings = enumerate_tilings_tiny(region)
    draws = 200 * len(tilings)
    counts = {}
    rng = random.Random(1000 + N)
    for _ in range(draws):
        t = shuffle_sample(N, a, rng.getrandbits(64))
        counts[t] = counts.get(t, 0) + 1
    observed = [counts.get(t, 0) for t in tilings]
    expected = [float(a ** count_vertical(t) / total) * draws for t in tilings]
    assert sum(observed) == draws
    assert stats.chisquare(observed, expected).pvalue > 0.001


def test_mean_vertical_count():
    N, a = 2, Fraction(1, 2)
    draws = 10_000
    mean = sum(count_vertical(shuffle_sample(N, a, seed=s)) for s in range(draws)) / draws
    expected = N * (N + 1) * a * a / (1 + a * a)
    # v is at most N(N+1), so its standard deviation is at most N(N+1)/2
    assert abs(mean - float(expected)) < 4 * (N * (N + 1) / 2) / draws ** 0.5


def test_exact_gap_probability():
    assert exact_gap_probability(2, 2, 2, 1, 1) == Fraction(6, 8)
    assert exact_gap_probability(3, 2, 2, 1, 1) == Fraction(32, 64)


def test_mc_guard():
    with pytest.raises(PreconditionViolation):
        mc_gap_probability(4, 4, 1, 1, 1, trials=100)


@pytest.mark.slow
@pytest.mark.parametrize("params,exact", [((2, 2, 3, 1, 1), 1), ((2, 2, 2, 1, 1), Fraction(3, 4)), ((3, 2, 2, 1, 1), Fraction(1, 2))])
def test_mc_grid(params, exact):
    est = mc_gap_probability(*params, trials=10_000, seed=2024)
    assert est.exact == exact
    assert est.sigmas <= 4
