from fractions import Fraction

import pytest

from pade_tilings.approximants import (
    aztec_count,
    aztec_full_count,
    aztec_multigap_count_by_bumps,
    aztec_multigap_ratio,
    aztec_pade,
    aztec_special_count,
    hexagon_hermite_pade,
    hexagon_k_range,
    hexagon_multigap_conditions,
    hexagon_multigap_ratio,
    hexagon_reduced_count,
    kappa_closed_form,
    macmahon,
)
from pade_tilings.errors import PreconditionViolation, Untileable
from pade_tilings.exact import Poly
from pade_tilings.gaps import GapSet
from pade_tilings.oracle import count_weighted_domino
from pade_tilings.regions import build_aztec_region

# weighted counts at a=1, indexed (m, k), from the oracle
N2 = {(1, 1): 2, (2, 1): 2, (1, 2): 8, (2, 2): 6, (2, 3): 8}
N3 = {(1, 1): 8, (2, 1): 4, (3, 1): 8, (1, 2): 64, (2, 2): 32, (3, 2): 32, (2, 3): 64, (3, 3): 56, (3, 4): 64}


def test_golden_tables():
    for (m, k), v in N2.items():
        assert aztec_count(2, m, k, 1) == v
    for (m, k), v in N3.items():
        assert aztec_count(3, m, k, 1) == v
    assert aztec_full_count(2, 1) == 8


def test_pade_entries():
    sol = aztec_pade(3, 3, 3, 1)
    assert sol.kappa == Fraction(8, 7)
    assert sol.p == Poly([Fraction(8, 7)])
    assert sol.q == Poly([1, Fraction(4, 7), Fraction(1, 7)])
    assert aztec_pade(2, 2, 1, 1).p == Poly([1, 3])
    assert [aztec_pade(3, 3, j, 1).kappa for j in (1, 2, 3)] == [4, Fraction(7, 4), Fraction(8, 7)]
    assert aztec_pade(3, 3, 4, 1).kappa == 1


def test_closed_forms():
    a = Fraction(3, 4)
    for N in range(1, 6):
        for m in range(1, N + 1):
            assert kappa_closed_form(N, m, "k1", a) == aztec_pade(N, m, 1, a).kappa
            assert kappa_closed_form(N, m, "km", a) == aztec_pade(N, m, m, a).kappa
            assert aztec_special_count("mirror_k1", N, m, a) == aztec_count(N, m, 1, a)
            assert aztec_special_count("tilde_k1", N, m, a) == aztec_count(N, m, 1, a, eps=0)
        assert aztec_special_count("top_removed_NN", N, None, a) == aztec_count(N, N, N, a)


def test_preconditions():
    with pytest.raises(PreconditionViolation):
        aztec_count(3, 2, 0, 1)
    with pytest.raises(PreconditionViolation):
        aztec_count(3, 2, 1, 2)
    with pytest.raises(PreconditionViolation):
        aztec_pade(3, 4, 1, 1)


def test_multigap_bump_admissibility():
    g = GapSet((1, 1, 3))
    # an odd bump needs k_3 < k_2, which fails here
    with pytest.raises(PreconditionViolation):
        aztec_multigap_ratio(4, 3, 1, g, 3, 1)
    assert aztec_multigap_ratio(4, 3, 1, g, 2, 1) == Fraction(1, 26)
    assert aztec_multigap_ratio(4, 3, 1, g, 1, 1) == Fraction(20, 13)


def test_multigap_reduces_to_single_gap():
    a = Fraction(1, 2)
    for N in range(1, 5):
        for m in range(1, N + 1):
            for k in range(1, m + 1):
                r = aztec_multigap_ratio(N, m, 1, GapSet.semi_infinite(k), 1, a)
                assert r == aztec_count(N, m, k + 1, a) / aztec_count(N, m, k, a)


def test_multigap_counts_by_bumps():
    a = Fraction(1, 2)
    g = GapSet((1, 1, 3))
    value = aztec_multigap_count_by_bumps(4, 3, 1, g, a)
    region = build_aztec_region(4, "multigap", m=3, eps=1, gaps=g)
    assert value == count_weighted_domino(region, a) == Fraction(18125, 4096)


def test_macmahon_and_hermite():
    assert macmahon(2, 1, 1) == 2
    assert macmahon(4, 2, 2) == 20
    assert hexagon_hermite_pade(2, 1, 1, 1, 1).ratio == 2
    assert hexagon_k_range(6, 3, 3, 3) == (3, 5)
    assert hexagon_reduced_count(6, 3, 3, 3, 4) == 146
    with pytest.raises(PreconditionViolation):
        hexagon_reduced_count(6, 3, 3, 3, 2)


def test_hexagon_multigap_untileable():
    g = GapSet((2,), 3)
    assert hexagon_multigap_conditions(6, 5, 2, 3, g)
    with pytest.raises(Untileable):
        hexagon_multigap_ratio(6, 5, 2, 3, g)
