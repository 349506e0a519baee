"""Correlation kernels of the particle processes and their gap determinants.

Aztec level r = 2m - eps carries the kernel

    K(n, n') = (2 pi i)^-2  oint_S2 du oint_S1 dv  u^(-n-1) v^n' W(v) / ((u - v) W(u))
    W(z)     = z^(e-1) / ((z - a)^e (1 + a z)^m),   e = N - m + eps,

with S1 around 0 and a (not -1/a) and S2 around S1.  The inner integral is
the sum of the principal parts of v^n' W(v) at a and 0, evaluated at u;
multiplying by 1/W(u) cancels the pole at a, so the outer integral is a
coefficient extraction at u = 0.  No floating point is involved.

The hexagon kernel at time r is a double coefficient extraction of a
polynomial R(v, u) built from two Jacobi polynomials.

``fredholm_nystrom`` evaluates the same gap probabilities as Fredholm
determinants of an integrable operator on two circles, by the trapezoid rule.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from .errors import NoConvergence, PreconditionViolation, ZeroConditioningProbability
from .exact import Poly, binomial, det_exact, laurent_expand, to_rational
from .gaps import GapSet

WINDOW_MARGIN = 5


@dataclass(frozen=True)
class KrawtchoukKernelSpec:
    N: int
    m: int
    eps: int
    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", to_rational(self.a))
        if not 1 <= self.m <= self.N or self.eps not in (0, 1):
            raise PreconditionViolation(f"need 1 <= m <= N and eps in {{0,1}}, got m={self.m}, eps={self.eps}")
        if not 0 < self.a <= 1:
            raise PreconditionViolation(f"weight a must lie in (0, 1], got {self.a}")

    @property
    def e(self) -> int:
        return self.N - self.m + self.eps

    @property
    def level(self) -> int:
        return 2 * self.m - self.eps


@dataclass(frozen=True)
class JacobiData:
    Y11: Poly
    Y21: Poly
    eta1: Fraction
    eta2: Fraction
    R: tuple  # R[i][j] = coefficient of v^i u^j


@dataclass(frozen=True)
class HexKernelSpec:
    L: int
    M: int
    N: int
    r: int

    def __post_init__(self):
        if not (self.L > self.M >= 1 and self.N >= 1 and 0 <= self.r <= self.L):
            raise PreconditionViolation(f"bad hexagon kernel parameters {(self.L, self.M, self.N, self.r)}")

    @property
    def jacobi(self) -> JacobiData:
        return _jacobi_data(self.L, self.M, self.N)


KernelSpec = Union[KrawtchoukKernelSpec, HexKernelSpec]


@dataclass(frozen=True)
class SupportWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise PreconditionViolation("empty support window")

    def sites(self) -> range:
        return range(self.lo, self.hi + 1)


def support_window(spec: KernelSpec) -> SupportWindow:
    if isinstance(spec, KrawtchoukKernelSpec):
        return SupportWindow(1 - spec.N, spec.m)
    return SupportWindow(0, spec.M + spec.N - 1)


# ------------------------------------------------------------------ Krawtchouk


@lru_cache(maxsize=4096)
def _krawtchouk_parts(N: int, m: int, eps: int, a: Fraction, n2: int):
    """Principal parts of v^n2 W(v) at a and at 0, as (A, e) and (B, d0)."""
    e = N - m + eps
    power = n2 + e - 1
    den = Poly.linear_power(-a, 1, e) * Poly.linear_power(1, a, m)
    if power >= 0:
        num, d0_shift = Poly.monomial(power), 0
    else:
        num, d0_shift = Poly([1]), -power
    # v^n2 W(v) = num / (v^d0_shift * den)
    full_den = den.mul_z(d0_shift)
    A = Poly()
    if e > 0:
        A = laurent_expand(num, full_den, a, -1).principal_part()
    B = Poly()
    if d0_shift > 0:
        B = laurent_expand(num, full_den, 0, -1).principal_part()
    return A, B, d0_shift


@lru_cache(maxsize=65536)
def _krawtchouk_cached(N: int, m: int, eps: int, a: Fraction, n: int, n2: int) -> Fraction:
    e = N - m + eps
    A, B, d0 = _krawtchouk_parts(N, m, eps, a, n2)
    lift = Poly.linear_power(1, a, m)
    # u^(-n-1) / W(u) = u^(-n-e) (u-a)^e (1+au)^m, times PP_a(u) = A(u)/(u-a)^e
    total = (lift * A).coeff(n + e - 1) if n + e - 1 >= 0 else Fraction(0)
    if d0:
        # times PP_0(u) = B(u)/u^d0
        idx = n + e - 1 + d0
        if idx >= 0:
            total += (Poly.linear_power(-a, 1, e) * lift * B).coeff(idx)
    return total


def krawtchouk_entry(spec: KrawtchoukKernelSpec, n: int, n2: int) -> Fraction:
    return _krawtchouk_cached(spec.N, spec.m, spec.eps, spec.a, n, n2)


def krawtchouk_weight(spec: KrawtchoukKernelSpec, z: complex) -> complex:
    e = spec.e
    a = float(spec.a)
    return z ** (e - 1) / ((z - a) ** e * (1 + a * z) ** spec.m)


# --------------------------------------------------------------------- hexagon


def jacobi_shifted(k: int, alpha: int, beta: int) -> Poly:
    """P_k^(alpha,beta)(2z+1) as a polynomial in z."""
    out = Poly()
    for s in range(k + 1):
        c = binomial(k + alpha, k - s) * binomial(k + beta, s)
        if c:
            out = out + Poly.monomial(s, c) * Poly.linear_power(1, 1, k - s)
    return out


@lru_cache(maxsize=128)
def _jacobi_data(L: int, M: int, N: int) -> JacobiData:
    PN = jacobi_shifted(N, -M - N, L)
    PN1 = jacobi_shifted(N - 1, -M - N, L)
    if PN.degree != N or PN.leading == 0:
        raise PreconditionViolation("Jacobi polynomial P_N drops degree")
    eta1 = 1 / PN.leading
    moment = (PN1 * Poly.linear_power(1, 1, L)).coeff(M)
    if moment == 0:
        raise PreconditionViolation("the residue defining eta_2 vanishes")
    eta2 = -1 / moment
    Y11 = PN * eta1
    Y21 = PN1 * eta2
    # R(v,u) = (Y11(v) Y21(u) - Y11(u) Y21(v)) / (u - v); divide the bivariate numerator
    deg = max(Y11.degree, Y21.degree, 0)
    num = [[Y11.coeff(i) * Y21.coeff(j) - Y11.coeff(j) * Y21.coeff(i) for j in range(deg + 1)] for i in range(deg + 1)]
    R = _divide_by_u_minus_v(num)
    return JacobiData(Y11, Y21, eta1, eta2, R)


def _divide_by_u_minus_v(num):
    """Exact quotient of sum num[i][j] v^i u^j by (u - v), as a square table."""
    rest = {(i, j): c for i, row in enumerate(num) for j, c in enumerate(row) if c}
    q: dict = {}
    # clear the highest u-power first; each step moves mass to one lower u-power
    while rest:
        i, j = max(rest, key=lambda ij: (ij[1], -ij[0]))
        c = rest.pop((i, j))
        if j == 0:
            raise ArithmeticError("numerator not divisible by u - v")
        q[(i, j - 1)] = q.get((i, j - 1), 0) + c
        key = (i + 1, j - 1)
        val = rest.get(key, 0) + c
        if val:
            rest[key] = val
        else:
            rest.pop(key, None)
    size = 1 + max((max(i, j) for i, j in q), default=0)
    table = [[Fraction(0)] * size for _ in range(size)]
    for (i, j), c in q.items():
        table[i][j] = c
    return tuple(tuple(row) for row in table)


@lru_cache(maxsize=65536)
def _hexagon_cached(L: int, M: int, N: int, r: int, n: int, n2: int) -> Fraction:
    R = _jacobi_data(L, M, N).R
    total = Fraction(0)
    for i, row in enumerate(R):
        cv = binomial(L - r, M + N - n2 - 1 - i)
        if not cv:
            continue
        for j, c in enumerate(row):
            if c:
                total += c * binomial(r, n - j) * cv
    return total


def hexagon_entry(spec: HexKernelSpec, n: int, n2: int) -> Fraction:
    return _hexagon_cached(spec.L, spec.M, spec.N, spec.r, n, n2)


def kernel_entry(spec: KernelSpec, n: int, n2: int) -> Fraction:
    if isinstance(spec, KrawtchoukKernelSpec):
        return krawtchouk_entry(spec, n, n2)
    return hexagon_entry(spec, n, n2)


# ---------------------------------------------------------------- determinants


def _weighted_sites(spec: KernelSpec, gaps: GapSet, gammas: Optional[Sequence], margin: int) -> list:
    w = support_window(spec)
    lo, hi = w.lo - margin, w.hi + margin
    clusters = gaps.clusters()
    if gammas is None:
        gammas = [1] * len(clusters)
    if len(gammas) != len(clusters):
        raise PreconditionViolation(f"need one gamma per cluster ({len(clusters)}), got {len(gammas)}")
    out = []
    for (c_lo, c_hi), g in zip(clusters, gammas):
        g = to_rational(g)
        top = hi if c_hi is None else min(c_hi, hi)
        for n in range(max(c_lo, lo), top + 1):
            if g:
                out.append((n, g))
    return sorted(out)


def _finite_det(spec: KernelSpec, weighted: list) -> Fraction:
    if not weighted:
        return Fraction(1)
    mat = [
        [(1 if i == j else 0) - g * kernel_entry(spec, n, n2) for j, (n2, _) in enumerate(weighted)]
        for i, (n, g) in enumerate(weighted)
    ]
    return det_exact(mat)


def thinned_determinant(spec: KernelSpec, gaps: GapSet, gammas: Sequence, margin: int = 0) -> Fraction:
    """det(1 - sum_j gamma_j 1_{I_j} K) on the sites of the support window."""
    return _finite_det(spec, _weighted_sites(spec, gaps, gammas, margin))


def gap_determinant(spec: KernelSpec, gaps: GapSet, margin: int = 0) -> Fraction:
    """Probability that no particle lies in the gap set (finite section over the window)."""
    return thinned_determinant(spec, gaps, None, margin)


def conditional_one_point(spec: KernelSpec, k: int, n: int) -> Fraction:
    """Density at n of the process conditioned on every particle lying below k."""
    if n >= k:
        raise PreconditionViolation("conditional one-point function needs n < k")
    gap = GapSet.semi_infinite(k)
    base = gap_determinant(spec, gap)
    if base == 0:
        raise ZeroConditioningProbability(f"no configuration has all particles below {k}")
    weighted = _weighted_sites(spec, gap, None, 0) + [(n, Fraction(1))]
    return 1 - _finite_det(spec, sorted(weighted)) / base


# -------------------------------------------------------------------- Nystrom


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def nodes(self, count: int):
        theta = 2 * math.pi * np.arange(count) / count
        z = self.center + self.radius * np.exp(1j * theta)
        dz = 1j * self.radius * np.exp(1j * theta) * (2 * math.pi / count)
        return z, dz


def default_contours(spec: KernelSpec) -> tuple:
    """Disjoint circles: the inner one around 0 and a (away from -1/a), the outer around it."""
    if isinstance(spec, KrawtchoukKernelSpec):
        a = float(spec.a)
        inner = Circle(a / 2, a / 2 + 1 / (2 * a))
        return inner, Circle(0, 2 * a + 1 / a)
    return Circle(0, 1.0), Circle(0, 2.0)


def _G(spec: KernelSpec, u, v):
    """G(u, v) with u on the outer contour and v on the inner one."""
    if isinstance(spec, KrawtchoukKernelSpec):
        return krawtchouk_weight(spec, v) / krawtchouk_weight(spec, u)
    jd = spec.jacobi
    y11 = np.polynomial.polynomial.polyval
    Y11 = [float(c) for c in jd.Y11.coeffs] or [0.0]
    Y21 = [float(c) for c in jd.Y21.coeffs] or [0.0]
    L, M, N, r = spec.L, spec.M, spec.N, spec.r
    rv = y11(v, Y11) * y11(u, Y21) - y11(u, Y11) * y11(v, Y21)
    return (1 + u) ** r * (1 + v) ** (L - r) / v ** (M + N) * rv


def nystrom_determinant(spec: KernelSpec, gaps: GapSet, count: int, gammas: Optional[Sequence] = None,
                        contours: Optional[tuple] = None) -> complex:
    """Trapezoid-rule approximation of det(1 - M) with ``count`` nodes per circle."""
    inner, outer = contours or default_contours(spec)
    z1, w1 = inner.nodes(count)
    z2, w2 = outer.nodes(count)
    clusters = gaps.clusters()
    gammas = [1] * len(clusters) if gammas is None else [float(to_rational(g)) for g in gammas]
    # block from outer to inner: z on the inner circle, z' on the outer one
    Z = z1[:, None]
    Zp = z2[None, :]
    ratio = Z / Zp
    top = np.zeros_like(ratio)
    for (lo, hi), g in zip(clusters, gammas):
        term = ratio ** lo
        if hi is not None:
            term = term - ratio ** (hi + 1)
        top = top + g * term
    A = top / (2j * math.pi * (Z - Zp)) * w2[None, :]
    # block from inner to outer: z on the outer circle, z' on the inner one
    U = z2[:, None]
    V = z1[None, :]
    B = -_G(spec, U, V) / (2j * math.pi * (U - V)) * w1[None, :]
    n = count
    mat = np.zeros((2 * n, 2 * n), dtype=complex)
    mat[:n, n:] = A
    mat[n:, :n] = B
    return complex(np.linalg.det(np.eye(2 * n) - mat))


def fredholm_nystrom(spec: KernelSpec, gaps: GapSet, nodes: int = 8, gammas: Optional[Sequence] = None,
                     tol: float = 1e-10, cap: int = 512, contours: Optional[tuple] = None) -> float:
    """Double the node count from ``nodes`` until two successive values agree to ``tol``."""
    if nodes < 8:
        raise PreconditionViolation("use at least 8 quadrature nodes")
    prev = nystrom_determinant(spec, gaps, nodes, gammas, contours)
    count = nodes
    while count < cap:
        count *= 2
        cur = nystrom_determinant(spec, gaps, count, gammas, contours)
        if abs(cur - prev) < tol:
            return cur.real
        prev = cur
    raise NoConvergence(f"no agreement to {tol} within {cap} nodes")


def contour_integral_entry(spec: KrawtchoukKernelSpec, n: int, n2: int, count: int = 512,
                           contours: Optional[tuple] = None) -> complex:
    """Float evaluation of the double contour integral for one Aztec kernel entry."""
    inner, outer = contours or default_contours(spec)
    v, dv = inner.nodes(count)
    u, du = outer.nodes(count)
    U = u[:, None]
    V = v[None, :]
    integrand = U ** (-n - 1) * V ** n2 * krawtchouk_weight(spec, V) / ((U - V) * krawtchouk_weight(spec, U))
    total = (integrand * du[:, None] * dv[None, :]).sum()
    return complex(total / (2j * math.pi) ** 2)
