"""Acceptance criteria, one test each.  Every test logs a PASS/FAIL line that
pytest repeats in its terminal summary; running this file directly prints the
same lines."""
import random
import sys
import time
from fractions import Fraction

from pade_tilings.approximants import aztec_count, aztec_full_count, aztec_pade
from pade_tilings.cli import build_cases, run_case
from pade_tilings.exact import Poly
from pade_tilings.gaps import GapSet
from pade_tilings.kernels import (
    HexKernelSpec,
    KrawtchoukKernelSpec,
    conditional_one_point,
    fredholm_nystrom,
    gap_determinant,
    krawtchouk_entry,
    hexagon_entry,
    support_window,
    thinned_determinant,
)
from pade_tilings.oracle import count_weighted_domino, enumerate_tilings_tiny
from pade_tilings.regions import build_aztec_region, count_vertical
from pade_tilings.shuffling import mc_gap_probability, shuffle_sample

WEIGHTS = [Fraction(1), Fraction(1, 2), Fraction(3, 4)]


def _sweep(suite, **grid):
    cases = build_cases(suite, **grid)
    results = [run_case(c) for c in cases]
    bad = [r for r in results if not r["match"]]
    return not bad and bool(results), f"{len(results)} cases, {len(bad)} mismatches"


def criterion_1():
    start = time.perf_counter()
    table = {(1, 1): 2, (2, 1): 2, (1, 2): 8, (2, 2): 6, (2, 3): 8}
    ok = all(aztec_count(2, m, k, 1) == v for (m, k), v in table.items()) and aztec_full_count(2, 1) == 8
    dt = time.perf_counter() - start
    return ok and dt < 1, f"{dt:.3f} s"


def criterion_2():
    start = time.perf_counter()
    # rows k, columns m
    counts = [[8, 4, 8], [64, 32, 32], [None, 64, 56], [None, None, 64]]
    ratios = [[8, 8, 4], [None, 2, Fraction(7, 4)], [None, None, Fraction(8, 7)]]
    ok = True
    for k, row in enumerate(counts, 1):
        for m, v in enumerate(row, 1):
            if v is not None:
                ok &= aztec_count(3, m, k, 1) == v
    for k, row in enumerate(ratios, 1):
        for m, v in enumerate(row, 1):
            if v is not None:
                ok &= aztec_pade(3, m, k, 1).kappa == v
    sol = aztec_pade(3, 3, 3, 1)
    ok &= sol.kappa == Fraction(8, 7) and sol.q == Poly([1, Fraction(4, 7), Fraction(1, 7)])
    dt = time.perf_counter() - start
    return ok and dt < 1, f"{dt:.3f} s"


def criterion_3():
    start = time.perf_counter()
    ok, detail = _sweep("pade", max_N=8, weights=WEIGHTS)
    dt = time.perf_counter() - start
    return ok and dt < 300, f"{detail}, {dt:.1f} s"


def criterion_4():
    return _sweep("closed-forms", max_N=8, weights=WEIGHTS)


def criterion_5():
    start = time.perf_counter()
    # hexagons with L <= 8 and N <= 8
    ok, detail = _sweep("hermite", max_L=8, max_hex_N=8)
    dt = time.perf_counter() - start
    return ok and dt < 300, f"{detail}, {dt:.1f} s"


def criterion_6():
    return _sweep("multigap-aztec", max_N=5, weights=WEIGHTS)


def criterion_7():
    # hexagons with L <= 8 and N <= 8; empty gap events must be flagged untileable
    return _sweep("multigap-hexagon", max_L=8, max_hex_N=8)


def criterion_8():
    ok, detail = _sweep("determinants", max_N=6, max_L=8, max_hex_N=8, weights=WEIGHTS)
    # two-cluster gaps through the Aztec oracle as well
    extra = 0
    for N in range(2, 5):
        for m in range(1, N + 1):
            for eps in (0, 1):
                spec = KrawtchoukKernelSpec(N, m, eps, Fraction(1, 2))
                F = aztec_full_count(N, Fraction(1, 2))
                for gaps in (GapSet((1 - N, 1 - N, 1)), GapSet((-1, 0, m))):
                    region = build_aztec_region(N, "multigap", m=m, eps=eps, gaps=gaps)
                    ok &= F * gap_determinant(spec, gaps) == count_weighted_domino(region, Fraction(1, 2))
                    extra += 1
    return ok, f"{detail}; {extra} two-cluster Aztec cases"


def criterion_9():
    worst = 0.0
    count = 0
    for N in range(1, 6):
        for m in range(1, N + 1):
            for k in range(1, m + 2):
                for a in WEIGHTS:
                    spec = KrawtchoukKernelSpec(N, m, 1, a)
                    gaps = GapSet.semi_infinite(k)
                    worst = max(worst, abs(fredholm_nystrom(spec, gaps, cap=512) - float(gap_determinant(spec, gaps))))
                    count += 1
    return worst < 1e-8, f"{count} cases, max error {worst:.1e}"


def criterion_10():
    ok = True
    count = 0
    specs = [KrawtchoukKernelSpec(N, m, eps, a) for N in range(1, 5) for m in range(1, N + 1)
             for eps in (0, 1) for a in (Fraction(1), Fraction(1, 2))]
    specs += [HexKernelSpec(L, M, N, r) for L in (4, 6) for M in range(1, L) for N in (1, 2, 3) for r in range(L + 1)]
    for spec in specs:
        w = support_window(spec)
        entry = krawtchouk_entry if isinstance(spec, KrawtchoukKernelSpec) else hexagon_entry
        gaps = GapSet((w.lo, w.lo, w.lo + 2))
        ok &= thinned_determinant(spec, gaps, [0, 0]) == 1
        ok &= thinned_determinant(spec, gaps, [1, 1]) == gap_determinant(spec, gaps)
        for k in range(w.lo, w.hi + 2):
            ok &= thinned_determinant(spec, GapSet((k,), k), [1]) == 1 - entry(spec, k, k)
            if gap_determinant(spec, GapSet.semi_infinite(k)) != 0:
                ok &= sum(conditional_one_point(spec, k, n) for n in range(w.lo, k)) == spec.N
            count += 1
    return ok, f"{len(specs)} kernels, {count} sites"


def _chi2_ok(N, a, seed):
    from scipy.stats import chisquare

    region = build_aztec_region(N)
    total = count_weighted_domino(region, a)
    tilings = enumerate_tilings_tiny(region)
    draws = 200 * len(tilings)
    rng = random.Random(seed)
    counts = {}
    for _ in range(draws):
        t = shuffle_sample(N, a, rng.getrandbits(64))
        counts[t] = counts.get(t, 0) + 1
    expected = [float(a ** count_vertical(t) / total) * draws for t in tilings]
    return chisquare([counts.get(t, 0) for t in tilings], expected).pvalue


def criterion_11():
    pvals = [_chi2_ok(N, a, 77 + N) for N in (1, 2, 3) for a in (Fraction(1), Fraction(1, 2))]
    sig = []
    for params in ((2, 2, 3, 1, 1), (2, 2, 2, 1, 1), (3, 2, 2, 1, 1)):
        sig.append(mc_gap_probability(*params, trials=10_000, seed=31).sigmas)
    ok = min(pvals) > 0.001 and max(sig) <= 4
    return ok, f"min chi2 p-value {min(pvals):.3f}, max deviation {max(sig):.2f} sigma"


TITLES = {
    1: "order-2 golden table",
    2: "order-3 golden tables and approximant entries",
    3: "reduced Aztec counts equal the oracle, N <= 8, three weights",
    4: "closed-form identities, N <= 8",
    5: "reduced hexagon counts equal the oracle, L <= 8",
    6: "multi-gap Aztec ratios equal the oracle, N <= 5",
    7: "multi-gap hexagon ratios equal the oracle, L <= 8",
    8: "gap determinants times full counts equal oracle counts",
    9: "Nystrom determinant matches the exact gap determinant",
    10: "thinned determinants, single-site identity, conditional density",
    11: "shuffling chi-square and Monte Carlo gap estimates",
}
CRITERIA = {n: globals()[f"criterion_{n}"] for n in TITLES}


def _check(n, acceptance_log):
    ok, detail = CRITERIA[n]()
    acceptance_log(n, TITLES[n], ok, detail)
    assert ok, detail


def test_criterion_01_order2_table(acceptance_log):
    _check(1, acceptance_log)


def test_criterion_02_order3_tables(acceptance_log):
    _check(2, acceptance_log)


def test_criterion_03_pade_sweep(acceptance_log):
    _check(3, acceptance_log)


def test_criterion_04_closed_forms(acceptance_log):
    _check(4, acceptance_log)


def test_criterion_05_hermite_sweep(acceptance_log):
    _check(5, acceptance_log)


def test_criterion_06_multigap_aztec(acceptance_log):
    _check(6, acceptance_log)


def test_criterion_07_multigap_hexagon(acceptance_log):
    _check(7, acceptance_log)


def test_criterion_08_determinants(acceptance_log):
    _check(8, acceptance_log)


def test_criterion_09_nystrom(acceptance_log):
    _check(9, acceptance_log)


def test_criterion_10_thinned_and_conditional(acceptance_log):
    _check(10, acceptance_log)


def test_criterion_11_statistics(acceptance_log):
    _check(11, acceptance_log)


if __name__ == "__main__":
    failed = 0
    for n in TITLES:
        ok, detail = CRITERIA[n]()
        failed += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {TITLES[n]} ({detail})", flush=True)
    sys.exit(1 if failed else 0)
