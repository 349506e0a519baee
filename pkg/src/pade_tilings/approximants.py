"""Padé, Hermite-Padé and multi-gap linear systems, and the tiling counts built from them.

Aztec side: a Padé approximant of f(z) = z^(m-j) (1 - a z)^(N-m+eps) at z = -a
gives the ratio of weighted tiling counts of successive reduced diamonds; the
counts follow by telescoping from the full diamond, whose generating function
is (1 + a^2)^(N(N+1)/2).

Hexagon side: a type I Hermite-Padé problem at z = -1 gives the ratio of
lozenge tiling counts of successive reduced hexagons; MacMahon's product
anchors the telescope.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DegenerateRatio, NonIntegerResult, PreconditionViolation, SingularMatrix, Untileable
from .exact import (
    LinearSystem,
    Poly,
    binomial,
    laurent_expand,
    solve_linear_exact,
    taylor_coefficients,
    to_rational,
)
from .gaps import GapSet


def _check_weight(a: Fraction) -> Fraction:
    a = to_rational(a)
    if not 0 < a <= 1:
        raise PreconditionViolation(f"weight a must lie in (0, 1], got {a}")
    return a


def _order_at(expr: Poly, point, needed: int) -> bool:
    """True when expr vanishes to order >= needed at point."""
    if expr.is_zero():
        return True
    return laurent_expand(expr, Poly([1]), point, needed - 1).lowest >= needed


# ---------------------------------------------------------------- Aztec, one gap


@dataclass(frozen=True)
class PadeSolution:
    N: int
    m: int
    j: int
    a: Fraction
    eps: int
    p: Poly
    q: Poly
    kappa: Fraction

    def target(self) -> Poly:
        """The approximated function z^(m-j) (1 - a z)^(N-m+eps)."""
        return aztec_target(self.N, self.m, self.j, self.a, self.eps)


def aztec_target(N: int, m: int, j: int, a: Fraction, eps: int = 1) -> Poly:
    return Poly.linear_power(1, -a, N - m + eps).mul_z(m - j)


def aztec_pade(N: int, m: int, j: int, a, eps: int = 1) -> PadeSolution:
    """Solve p - f q = O((z+a)^m), deg p <= m-j, deg q <= j-1, q(0) = 1.

    kappa is the z^(m-j) coefficient of p.  For j = m+1 there is nothing to
    solve and kappa = 1 by convention.
    """
    a = _check_weight(a)
    if not 1 <= m <= N:
        raise PreconditionViolation(f"need 1 <= m <= N, got m={m}, N={N}")
    if not 1 <= j <= m + 1:
        raise PreconditionViolation(f"need 1 <= j <= m+1, got j={j}")
    if eps not in (0, 1):
        raise PreconditionViolation("eps must be 0 or 1")
    if j == m + 1:
        return PadeSolution(N, m, j, a, eps, Poly(), Poly([1]), Fraction(1))
    f = aztec_target(N, m, j, a, eps)
    columns: list[list[Fraction]] = []
    for i in range(m - j + 1):
        columns.append(taylor_coefficients(Poly.monomial(i), -a, m))
    for i in range(1, j):
        columns.append([-c for c in taylor_coefficients(f.mul_z(i), -a, m)])
    rhs = taylor_coefficients(f, -a, m)
    matrix = [[col[t] for col in columns] for t in range(m)]
    x = solve_linear_exact(LinearSystem(matrix, rhs))
    p = Poly(x[: m - j + 1])
    q = Poly([1] + x[m - j + 1 :])
    if not _order_at(p - f * q, -a, m):
        raise AssertionError("Padé defect check failed")
    return PadeSolution(N, m, j, a, eps, p, q, p.coeff(m - j))


def kappa_closed_form(N: int, m: int, which: str, a) -> Fraction:
    """Closed forms of kappa for j = 1 ("k1") and j = m ("km")."""
    a = _check_weight(a)
    if not 1 <= m <= N:
        raise PreconditionViolation(f"need 1 <= m <= N, got m={m}, N={N}")
    t = a * a / (1 + a * a)
    scale = (1 + a * a) ** (N - m + 1)
    if which == "k1":
        total = Fraction(0)
        for v in range(m):
            for j in range(v + 1):
                total += (-1) ** (1 + m + v) * binomial(m, j) * binomial(N - m + 1, v - j) * t ** (v - j)
        return scale * total
    if which == "km":
        return scale / sum(binomial(N - m + j, j) * t**j for j in range(m))
    raise PreconditionViolation(f"unknown closed form {which!r}")


def aztec_full_count(N: int, a) -> Fraction:
    a = to_rational(a)
    return (1 + a * a) ** (N * (N + 1) // 2)


def aztec_count(N: int, m: int, k: int, a, eps: int = 1) -> Fraction:
    """Weighted count of the reduced diamond (eps=1) or its tilde variant (eps=0)."""
    a = _check_weight(a)
    if not 1 <= m <= N:
        raise PreconditionViolation(f"need 1 <= m <= N, got m={m}, N={N}")
    if not 1 <= k <= m + 1:
        raise PreconditionViolation(f"need 1 <= k <= m+1, got k={k}")
    value = aztec_full_count(N, a)
    for j in range(k, m + 1):
        kappa = aztec_pade(N, m, j, a, eps).kappa
        if kappa == 0:
            raise DegenerateRatio(f"kappa vanishes for N={N}, m={m}, j={j}, a={a}")
        value /= kappa
    return value


def aztec_special_count(kind: str, N: int, m: Optional[int], a) -> Fraction:
    """Closed forms: the full diamond, the k=1 split, and the top domino removed."""
    a = _check_weight(a)
    full = aztec_full_count(N, a)
    if kind == "full":
        return full
    if kind == "mirror_k1":
        if m is None or not 1 <= m <= N:
            raise PreconditionViolation("mirror_k1 needs 1 <= m <= N")
        return (1 + a * a) ** (N * (N + 1) // 2 - m * (N + 1 - m))
    if kind == "top_removed_NN":
        return full - a ** (2 * N) * aztec_full_count(N - 1, a)
    if kind == "tilde_k1":
        if m is None or not 1 <= m <= N:
            raise PreconditionViolation("tilde_k1 needs 1 <= m <= N")
        return (1 + a * a) ** (N * (N + 1) // 2 - m * (N - m))
    raise PreconditionViolation(f"unknown special count {kind!r}")


# -------------------------------------------------------------- Aztec, multi gap


@dataclass(frozen=True)
class MultiGapSolution:
    coefficients: tuple[Fraction, ...]  # a_0 .. a_{m - k_{2q+1}}
    q: Poly
    ratio: Fraction
    jstar: int


def check_aztec_multigap(N: int, m: int, eps: int, gaps: GapSet) -> None:
    if gaps.k0 is not None:
        raise PreconditionViolation("the Aztec multi-gap system needs an unbounded top cluster")
    if not 1 <= m <= N or eps not in (0, 1):
        raise PreconditionViolation(f"bad level parameters m={m}, eps={eps}, N={N}")
    k1 = gaps.k(1)
    # k_1 = m+1 leaves the top cluster vacuous; the system still holds for bumps below it
    if k1 > m + 1:
        raise PreconditionViolation(f"k_1={k1} exceeds m+1={m + 1}")
    if gaps.bottom < m - N - eps + 1:
        raise PreconditionViolation(f"lowest endpoint {gaps.bottom} below m-N-eps+1")
    lower = sum(hi + 1 - lo for lo, hi in gaps.clusters()[1:])
    if k1 < 1 + lower:
        raise PreconditionViolation("too few admissible sites left: the gap event is empty")


def check_bump(gaps: GapSet, jstar: int) -> None:
    if not 1 <= jstar <= 2 * gaps.q + 1:
        raise PreconditionViolation(f"jstar={jstar} out of range")
    kj = gaps.k(jstar)
    above = gaps.k(jstar - 1)
    if jstar % 2 == 1:
        if above is not None and not kj < above:
            raise PreconditionViolation("odd bump needs k_j < k_{j-1}")
    else:
        if not kj + 1 < above:
            raise PreconditionViolation("even bump needs k_j + 1 < k_{j-1}")


def aztec_multigap_solve(N: int, m: int, eps: int, gaps: GapSet, jstar: int, a) -> MultiGapSolution:
    """Solve the coupled conditions at zeta = -a and zeta = 0 for row jstar.

    Unknowns are a_0..a_{m-k_{2q+1}} and the k_1 coefficients of q.  The a_i
    sum in the condition at -a runs over the gap sites in [k_{2q+1}, m].
    """
    a = _check_weight(a)
    check_aztec_multigap(N, m, eps, gaps)
    check_bump(gaps, jstar)
    k1 = gaps.k(1)
    if k1 == m + 1 and jstar == 1:
        raise PreconditionViolation("k_1 = m+1 already imposes nothing; bump a lower endpoint")
    kb = gaps.bottom
    e = N - m + eps
    sites = set(gaps.sites(kb, m))
    k2q = gaps.k(2 * gaps.q) if gaps.q else None
    between = set(range(k2q + 1, k1)) - sites if k2q is not None else set()
    s = 0 if jstar % 2 == 1 else 1
    kj = gaps.k(jstar)
    sign = -1 if jstar % 2 else 1
    n_a = m - kb + 1
    n_eq2 = k1 - kb + 1
    base = Poly.linear_power(1, -a, e)

    columns: list[list[Fraction]] = []
    a_cols: dict[int, list[Fraction]] = {}
    for i in range(kb, m + 1):
        top = [Fraction(0)] * m
        if i in sites:
            top = [-c for c in taylor_coefficients(Poly.monomial(m - i), -a, m)]
        bottom = [Fraction(0)] * n_eq2
        if i in between:
            bottom[k1 - i] = Fraction(1)
        a_cols[m - i] = top + bottom
    for idx in range(n_a):
        columns.append(a_cols[idx])
    for t in range(k1):
        top = taylor_coefficients(base.mul_z(m - k1 + t), -a, m)
        bottom = [base.mul_z(t).coeff(u) for u in range(n_eq2)]
        columns.append(top + bottom)
    rhs_top = [-sign * c for c in taylor_coefficients(Poly.monomial(m - kj - s), -a, m)]
    rhs_bottom = [Fraction(-sign if u == k1 - kj - s else 0) for u in range(n_eq2)]
    rhs = rhs_top + rhs_bottom
    size = m + n_eq2
    matrix = [[col[row] for col in columns] for row in range(size)]
    x = solve_linear_exact(LinearSystem(matrix, rhs))
    coeffs = tuple(x[:n_a])
    qpoly = Poly(x[n_a:])
    ratio = coeffs[m - kj - s] + 1
    return MultiGapSolution(coeffs, qpoly, ratio, jstar)


def aztec_multigap_ratio(N: int, m: int, eps: int, gaps: GapSet, jstar: int, a) -> Fraction:
    """Ratio of weighted counts after and before raising k_jstar by one."""
    return aztec_multigap_solve(N, m, eps, gaps, jstar, a).ratio


def _normalize_top(gaps: GapSet, m: int) -> Optional[GapSet]:
    """Canonical form seen by particles at or below m.

    Clusters above m are dropped, the top is extended to infinity and
    touching clusters are merged.  None means the gap holds no reachable site.
    """
    kept = [(lo, hi) for lo, hi in gaps.clusters() if lo <= m]
    if not kept:
        return None
    if kept[0][1] is not None:
        kept.insert(0, (m + 1, None))
    merged: list = []
    for lo, hi in sorted(kept, key=lambda c: c[0]):
        if merged and merged[-1][1] is not None and merged[-1][1] + 1 >= lo:
            top = None if hi is None else max(hi, merged[-1][1])
            merged[-1] = (merged[-1][0], top)
        else:
            merged.append((lo, hi))
    return GapSet.from_clusters(merged)


def aztec_multigap_bump_path(N: int, m: int, eps: int, gaps: GapSet, max_depth: int = 64) -> Optional[list[tuple[GapSet, int]]]:
    """Search a sequence of admissible bumps ending at the empty effective gap.

    Returns a list of (gap set, jstar) steps or None if none is found within
    ``max_depth`` bumps.
    """
    start = _normalize_top(gaps, m)
    if start is None:
        return []
    queue = deque([(start, [])])
    seen = {start}
    while queue:
        cur, path = queue.popleft()
        if len(path) >= max_depth:
            continue
        for jstar in range(1, 2 * cur.q + 2):
            try:
                check_bump(cur, jstar)
                check_aztec_multigap(N, m, eps, cur)
                nxt = cur.bump(jstar)
            except PreconditionViolation:
                continue
            norm = _normalize_top(nxt, m)
            step = path + [(cur, jstar)]
            if norm is None or (norm.q == 0 and norm.k(1) == m + 1):
                return step
            if norm in seen:
                continue
            seen.add(norm)
            queue.append((norm, step))
    return None


def aztec_multigap_count_by_bumps(N: int, m: int, eps: int, gaps: GapSet, a) -> Optional[Fraction]:
    """Weighted count via a bump path to the empty gap, or None if no path exists."""
    path = aztec_multigap_bump_path(N, m, eps, gaps)
    if path is None:
        return None
    value = aztec_full_count(N, a)
    for g, jstar in path:
        ratio = aztec_multigap_ratio(N, m, eps, g, jstar, a)
        if ratio == 0:
            raise DegenerateRatio("zero ratio along the bump path")
        value /= ratio
    return value


# ----------------------------------------------------------------------- hexagon


def macmahon(L: int, M: int, N: int) -> int:
    """Number of lozenge tilings of the hexagon with sides L-M, M, N."""
    if not (L > M >= 1 and N >= 1):
        raise PreconditionViolation(f"need L > M >= 1 and N >= 1, got {(L, M, N)}")
    value = Fraction(1)
    for i in range(1, L - M + 1):
        for j in range(1, M + 1):
            for k in range(1, N + 1):
                value *= Fraction(i + j + k - 1, i + j + k - 2)
    if value.denominator != 1:
        raise NonIntegerResult(f"MacMahon product not integral: {value}")
    return value.numerator


@dataclass(frozen=True)
class HermitePadeSolution:
    qM: Poly
    Pmonic: Poly
    p: Poly
    ratio: Fraction


def hexagon_k_range(L: int, M: int, N: int, r: int) -> tuple[int, int]:
    return max(N, N - L + M + r), min(M + N - 1, r + N - 1)


def hexagon_hermite_pade(L: int, M: int, N: int, r: int, k: int) -> HermitePadeSolution:
    """q - z^(M+N) P + (1+z)^(L-r) z^k p = O((z+1)^L), P monic."""
    if not (L > M >= 1 and N >= 1):
        raise PreconditionViolation(f"need L > M >= 1 and N >= 1, got {(L, M, N)}")
    if not 1 <= r <= L - 1:
        raise PreconditionViolation(f"need 1 <= r <= L-1, got r={r}")
    lo, hi = hexagon_k_range(L, M, N, r)
    if not lo <= k <= hi:
        raise PreconditionViolation(f"k={k} outside admissible range [{lo}, {hi}]")
    d = L - M - N + k - r
    dp = N - 1 + r - k
    weight = Poly.linear_power(1, 1, L - r)
    columns: list[list[Fraction]] = []
    for i in range(M):
        columns.append(taylor_coefficients(Poly.monomial(i), -1, L))
    for i in range(d):
        columns.append([-c for c in taylor_coefficients(Poly.monomial(M + N + i), -1, L)])
    for i in range(dp + 1):
        columns.append(taylor_coefficients(weight.mul_z(k + i), -1, L))
    rhs = taylor_coefficients(Poly.monomial(M + N + d), -1, L)
    matrix = [[col[t] for col in columns] for t in range(L)]
    x = solve_linear_exact(LinearSystem(matrix, rhs))
    qM = Poly(x[:M])
    P = Poly(list(x[M : M + d]) + [1])
    p = Poly(x[M + d :])
    defect = qM - P.mul_z(M + N) + weight * p.mul_z(k)
    if not _order_at(defect, -1, L):
        raise AssertionError("Hermite-Padé defect check failed")
    return HermitePadeSolution(qM, P, p, p(0))


def hexagon_reduced_count(L: int, M: int, N: int, r: int, k: int) -> int:
    """Lozenge tilings of the hexagon cut above level k at time r, by telescoping."""
    lo, hi = hexagon_k_range(L, M, N, r)
    if not lo <= k <= hi:
        raise PreconditionViolation(f"k={k} outside admissible range [{lo}, {hi}]")
    value = Fraction(macmahon(L, M, N))
    for j in range(k, hi + 1):
        ratio = hexagon_hermite_pade(L, M, N, r, j).ratio
        if ratio == 0:
            raise DegenerateRatio(f"p(0) vanishes at j={j}")
        value /= ratio
    if value.denominator != 1:
        raise NonIntegerResult(f"reduced hexagon count not integral: {value}")
    return value.numerator


@dataclass(frozen=True)
class HexMultiGapSolution:
    qM: Poly
    p: Poly
    alpha: Fraction
    ratio: Fraction


def hexagon_multigap_conditions(L: int, M: int, N: int, r: int, gaps: GapSet, bumped: bool = True) -> bool:
    """Tileability conditions for the finite gap set (with k_0 raised by one if ``bumped``)."""
    if gaps.k0 is None:
        return False
    k0 = gaps.k0 + (1 if bumped else 0)
    size = sum(hi + 1 - lo for lo, hi in gaps.clusters()) + (1 if bumped else 0)
    if size > min(r, M, L - r):
        return False
    return max(0, r - L + M) <= gaps.bottom <= k0 <= min(M + N - 1, r + N - 1)


def hexagon_multigap_solve(L: int, M: int, N: int, r: int, gaps: GapSet) -> HexMultiGapSolution:
    if not (L > M >= 1 and N >= 1 and 1 <= r <= L - 1):
        raise PreconditionViolation(f"bad hexagon parameters {(L, M, N, r)}")
    if gaps.k0 is None:
        raise PreconditionViolation("the hexagon multi-gap system needs a finite k_0")
    if not hexagon_multigap_conditions(L, M, N, r, gaps, bumped=True):
        raise PreconditionViolation("gap set violates the tileability conditions after the bump")
    k0 = gaps.k0
    size = M + N
    lift = Poly.linear_power(1, 1, r)
    weight = Poly.linear_power(1, 1, L - r)
    full = Poly.linear_power(1, 1, L)
    clusters = gaps.clusters()
    columns: list[list[Fraction]] = []
    for i in range(M):
        columns.append([Fraction(1 if t == i else 0) for t in range(size)])
    for i in range(N):
        lifted = lift.mul_z(i)
        inner = Poly()
        for lo, hi in clusters:
            inner = inner + lifted.truncate(lo, hi)
        expr = full.mul_z(i) - weight * inner
        columns.append([expr.coeff(t) for t in range(size)])
    rhs_poly = weight.mul_z(k0 + 1)
    rhs = [rhs_poly.coeff(t) for t in range(size)]
    matrix = [[col[t] for col in columns] for t in range(size)]
    try:
        x = solve_linear_exact(LinearSystem(matrix, rhs))
    except SingularMatrix as exc:
        # on every configuration checked this happens exactly when the gap event is empty
        raise Untileable(f"no tiling avoids the gap set {gaps} at level {r}") from exc
    qM = Poly(x[:M])
    p = Poly(x[M:])
    alpha = (lift * p).coeff(k0 + 1)
    return HexMultiGapSolution(qM, p, alpha, 1 - alpha)


def hexagon_multigap_ratio(L: int, M: int, N: int, r: int, gaps: GapSet) -> Fraction:
    """Ratio of counts after and before raising the finite k_0 by one."""
    return hexagon_multigap_solve(L, M, N, r, gaps).ratio


__all__ = [
    "PadeSolution",
    "MultiGapSolution",
    "HermitePadeSolution",
    "HexMultiGapSolution",
    "GapSet",
    "aztec_target",
    "aztec_pade",
    "kappa_closed_form",
    "aztec_full_count",
    "aztec_count",
    "aztec_special_count",
    "aztec_multigap_solve",
    "aztec_multigap_ratio",
    "aztec_multigap_bump_path",
    "aztec_multigap_count_by_bumps",
    "macmahon",
    "hexagon_hermite_pade",
    "hexagon_k_range",
    "hexagon_reduced_count",
    "hexagon_multigap_conditions",
    "hexagon_multigap_solve",
    "hexagon_multigap_ratio",
]
