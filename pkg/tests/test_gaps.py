import pytest

from pade_tilings.errors import PreconditionViolation
from pade_tilings.gaps import GapSet, parse_gapset


def test_semi_infinite():
    g = GapSet.semi_infinite(3)
    assert g.q == 0 and g.k(1) == 3 and g.k(0) is None
    assert g.contains(10) and not g.contains(2)


def test_clusters_and_parse():
    g = parse_gapset("1:1,3:inf")
    assert g.ks == (1, 1, 3)
    assert g.clusters() == [(3, None), (1, 1)]
    assert g.sites(-2, 5) == [1, 3, 4, 5]
    assert str(g) == "[1,1]U[3,inf]"
    assert parse_gapset("0:2,5:6").k0 == 6


def test_ordering_is_enforced():
    with pytest.raises(PreconditionViolation):
        GapSet((2, 1, 3))  # k_3 > k_2
    with pytest.raises(PreconditionViolation):
        GapSet((1, 3, 3))  # k_2 = k_1
    with pytest.raises(PreconditionViolation):
        GapSet((1, 2))


def test_bump():
    g = GapSet((1, 1, 3))
    assert g.bump(1).ks == (1, 1, 4)
    with pytest.raises(PreconditionViolation):
        g.bump(3)  # would give k_3 = 2 > k_2 = 1
    with pytest.raises(PreconditionViolation):
        g.bump(0)
