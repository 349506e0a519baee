from fractions import Fraction

import pytest

from pade_tilings.approximants import aztec_count, aztec_full_count, aztec_pade, macmahon
from pade_tilings.errors import NoConvergence, PreconditionViolation, ZeroConditioningProbability
from pade_tilings.gaps import GapSet
from pade_tilings.kernels import (
    Circle,
    HexKernelSpec,
    KrawtchoukKernelSpec,
    conditional_one_point,
    contour_integral_entry,
    fredholm_nystrom,
    gap_determinant,
    hexagon_entry,
    krawtchouk_entry,
    support_window,
    thinned_determinant,
)
from pade_tilings.oracle import lgv_gap_count

HALF = Fraction(1, 2)


def test_trace_and_tails():
    s = KrawtchoukKernelSpec(3, 2, 1, Fraction(1))
    w = support_window(s)
    assert (w.lo, w.hi) == (-2, 2)
    assert sum(krawtchouk_entry(s, n, n) for n in range(-2, 3)) == 3
    for n in (3, 7):
        assert krawtchouk_entry(s, n, n) == 0
    # below the window every site is occupied by a frozen particle
    for n in (-3, -6):
        assert krawtchouk_entry(s, n, n) == 1


def test_hexagon_trace_and_tails():
    h = HexKernelSpec(4, 2, 2, 2)
    assert sum(hexagon_entry(h, n, n) for n in range(0, 4)) == 2
    for n in (-1, -3, 4, 6):
        assert hexagon_entry(h, n, n) == 0


def test_entries_against_quadrature():
    for a in (Fraction(1), HALF, Fraction(3, 4)):
        s = KrawtchoukKernelSpec(3, 2, 0, a)
        for n in range(-3, 4):
            for n2 in range(-3, 4):
                assert abs(contour_integral_entry(s, n, n2) - float(krawtchouk_entry(s, n, n2))) < 1e-10


def test_gap_determinant_examples():
    s = KrawtchoukKernelSpec(2, 2, 1, Fraction(1))
    assert gap_determinant(s, GapSet.semi_infinite(3)) == 1
    assert gap_determinant(s, GapSet.semi_infinite(1)) == Fraction(1, 4)
    h = HexKernelSpec(14, 5, 6, 11)
    expected = Fraction(lgv_gap_count(14, 5, 6, 11, GapSet.semi_infinite(7)), macmahon(14, 5, 6))
    assert gap_determinant(h, GapSet.semi_infinite(7)) == expected


def test_aztec_determinant_identity():
    for a in (Fraction(1), HALF):
        for N in range(1, 5):
            F = aztec_full_count(N, a)
            for m in range(1, N + 1):
                for eps in (0, 1):
                    s = KrawtchoukKernelSpec(N, m, eps, a)
                    for k in range(1, m + 2):
                        assert F * gap_determinant(s, GapSet.semi_infinite(k)) == aztec_count(N, m, k, a, eps)


def test_ratio_is_kappa():
    a = Fraction(3, 4)
    s = KrawtchoukKernelSpec(4, 3, 1, a)
    for k in range(1, 4):
        ratio = gap_determinant(s, GapSet.semi_infinite(k + 1)) / gap_determinant(s, GapSet.semi_infinite(k))
        assert ratio == aztec_pade(4, 3, k, a).kappa


def test_window_margin_invariance():
    for spec in (KrawtchoukKernelSpec(4, 3, 0, HALF), HexKernelSpec(6, 3, 3, 2)):
        for gaps in (GapSet.semi_infinite(1), GapSet((0, 0, 2), 3)):
            assert gap_determinant(spec, gaps) == gap_determinant(spec, gaps, margin=5)


def test_thinned():
    s = KrawtchoukKernelSpec(4, 3, 1, HALF)
    g = GapSet((-1, 0, 2))
    assert thinned_determinant(s, g, [0, 0]) == 1
    assert thinned_determinant(s, g, [1, 1]) == gap_determinant(s, g)
    w = support_window(s)
    for k in range(w.lo, w.hi + 3):
        single = GapSet((k,), k)
        assert thinned_determinant(s, single, [1]) == 1 - krawtchouk_entry(s, k, k)
    with pytest.raises(PreconditionViolation):
        thinned_determinant(s, g, [1])


def test_conditional_one_point():
    s = KrawtchoukKernelSpec(3, 2, 1, Fraction(1))
    # conditioning on a sure event changes nothing
    for n in range(-2, 3):
        assert conditional_one_point(s, 3, n) == krawtchouk_entry(s, n, n)
    # all particles below 1 forces the frozen configuration
    assert [conditional_one_point(s, 1, n) for n in (0, -1, -2)] == [1, 1, 1]
    for spec, k in ((s, 2), (KrawtchoukKernelSpec(5, 4, 0, HALF), 2)):
        lo = support_window(spec).lo
        assert sum(conditional_one_point(spec, k, n) for n in range(lo, k)) == spec.N
    with pytest.raises(PreconditionViolation):
        conditional_one_point(s, 1, 1)
    with pytest.raises(ZeroConditioningProbability):
        conditional_one_point(s, 0, -1)


def test_nystrom():
    s = KrawtchoukKernelSpec(2, 2, 1, Fraction(1))
    assert abs(fredholm_nystrom(s, GapSet.semi_infinite(1)) - 0.25) < 1e-8
    assert abs(fredholm_nystrom(s, GapSet.semi_infinite(3)) - 1.0) < 1e-12
    s = KrawtchoukKernelSpec(4, 3, 1, Fraction(1))
    exact = gap_determinant(s, GapSet.semi_infinite(2))
    assert abs(fredholm_nystrom(s, GapSet.semi_infinite(2)) - float(exact)) < 1e-8
    h = HexKernelSpec(6, 3, 3, 2)
    g = GapSet((1, 2, 4), 4)
    assert abs(fredholm_nystrom(h, g) - float(gap_determinant(h, g))) < 1e-8


def test_nystrom_thinned():
    s = KrawtchoukKernelSpec(4, 2, 0, HALF)
    g = GapSet((-1, 0, 2))
    gam = [Fraction(1, 3), Fraction(2, 5)]
    assert abs(fredholm_nystrom(s, g, gammas=gam) - float(thinned_determinant(s, g, gam))) < 1e-8


def test_nystrom_no_convergence():
    s = KrawtchoukKernelSpec(4, 3, 1, HALF)
    bad = (Circle(HALF, 0.1), Circle(0, 0.3))
    with pytest.raises(NoConvergence):
        fredholm_nystrom(s, GapSet.semi_infinite(2), cap=64, contours=bad)
