"""Independent exact counts of weighted tilings.

The workhorse is a transfer-matrix count of perfect matchings.  Cells are
visited in a fixed order; every tile pairs a cell with a later one, and the
DP state is the bitmask of upcoming cells that are already covered.  Weights
are tracked as polynomials in the vertical weight a, packed into one Python
integer per state (one fixed-width slot per power of a) so that the inner loop
is integer addition and shifting only.

Lozenge counts also go through Lindstrom-Gessel-Viennot on the region's own
path lattice, and through the closed binomial form for gap events.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import CapacityExceeded, PreconditionViolation, TooMany, Untileable
from .exact import Poly, binomial, det_exact, to_rational
from .gaps import GapSet
from .regions import (
    CellRegion,
    DominoTiling,
    LozengeTiling,
    blank,
    build_hexagon_region,
    flat,
    horizontal,
    rising,
    vertical,
)

DEFAULT_WIDTH_LIMIT = 24
ENUMERATION_LIMIT = 100_000


@dataclass(frozen=True)
class _Sequence:
    cells: tuple
    # per position: tuple of (offset to partner, exponent of a, tile)
    moves: tuple
    width: int


def _cell_order(region: CellRegion) -> list:
    if region.kind == "aztec":
        return sorted(region.cells, key=lambda c: (c[0] + c[1], c[0]))
    # hexagon: strip by strip, bottom to top, down triangle before up triangle
    return sorted(region.cells)


def _forward_tiles(region: CellRegion, c) -> list:
    """Tiles pairing c with a later cell, with the exponent of a they carry."""
    if region.kind == "aztec":
        i, j = c
        # the right and upper neighbours come later in the diagonal order
        return [(horizontal(i, j), 0), (vertical(i, j), 1)]
    i, j, s = c
    if s == 0:
        return [(flat(i, j), 0), (blank(i + 1, j), 0)]
    return [(rising(i, j), 0)]


def _build_sequence(region: CellRegion, width_limit: int) -> _Sequence:
    order = _cell_order(region)
    pos = {c: n for n, c in enumerate(order)}
    moves = []
    width = 0
    for n, c in enumerate(order):
        here = []
        for tile, e in _forward_tiles(region, c):
            other = tile[1] if tile[0] == c else tile[0]
            if other not in pos or not region.allows(*tile):
                continue
            d = pos[other] - n
            if d <= 0:
                raise AssertionError("cell order does not put partners later")
            width = max(width, d)
            here.append((d, e, tile))
        moves.append(tuple(here))
    if width > width_limit:
        raise CapacityExceeded(f"transfer frontier {width} exceeds the limit {width_limit}")
    return _Sequence(tuple(order), tuple(moves), width)


def _sweep(seq: _Sequence, weights: Sequence[int]) -> int:
    states = {0: 1}
    for here in seq.moves:
        nxt: dict = {}
        for mask, val in states.items():
            if mask & 1:
                key = mask >> 1
                nxt[key] = nxt.get(key, 0) + val
                continue
            for d, e, _ in here:
                bit = 1 << d
                if mask & bit:
                    continue
                key = (mask | bit) >> 1
                nxt[key] = nxt.get(key, 0) + val * weights[e]
        states = nxt
        if not states:
            return 0
    return states.get(0, 0)


def _region_key(region: CellRegion):
    return (region.kind, region.cells, region.forbidden)


@lru_cache(maxsize=256)
def _generating_coeffs(key, width_limit: int) -> tuple:
    kind, cells, forbidden = key
    region = CellRegion(kind, cells, None, forbidden=forbidden)
    seq = _build_sequence(region, width_limit)
    ntiles = len(cells) // 2
    # any coefficient is at most the number of matchings, which is below 2^(#tiles) times a margin
    slot = ntiles + 2 * seq.width + 8
    packed = _sweep(seq, [1, 1 << slot])
    mask = (1 << slot) - 1
    out = []
    while packed:
        out.append(packed & mask)
        packed >>= slot
    return tuple(out)


def domino_generating_polynomial(region: CellRegion, width_limit: int = DEFAULT_WIDTH_LIMIT) -> Poly:
    """Sum over tilings of a^(number of vertical dominoes)."""
    if region.kind != "aztec":
        raise PreconditionViolation("domino generating polynomial needs an Aztec region")
    if len(region.cells) % 2:
        return Poly()
    return Poly(_generating_coeffs(_region_key(region), width_limit))


def count_weighted_domino(region: CellRegion, a=1, width_limit: int = DEFAULT_WIDTH_LIMIT) -> Fraction:
    return domino_generating_polynomial(region, width_limit)(to_rational(a))


def count_matchings(region: CellRegion, width_limit: int = DEFAULT_WIDTH_LIMIT) -> int:
    """Unweighted tiling count of any region (dominoes or lozenges)."""
    if len(region.cells) % 2:
        return 0
    return int(sum(_generating_coeffs(_region_key(region), width_limit)))


# ---------------------------------------------------------------- lozenge LGV


def _hexagon_path_counts(region: CellRegion, cut: int):
    """Path counts source -> (cut, s) and (cut, s) -> sink inside the region."""
    L, M, N = region.size
    cells = region.cells
    heights = range(0, M + N + 1)

    def step_ok(x, s, up):
        tile = rising(x, s) if up else flat(x, s)
        return tile[0] in cells and tile[1] in cells

    fwd = []
    for s0 in range(N):
        layer = {s0: 1}
        for x in range(cut):
            nxt: dict = {}
            for s, v in layer.items():
                for up in (0, 1):
                    if step_ok(x, s, up):
                        nxt[s + up] = nxt.get(s + up, 0) + v
            layer = nxt
        fwd.append(layer)
    bwd = []
    for t in range(N):
        layer = {M + t: 1}
        for x in range(L - 1, cut - 1, -1):
            prev: dict = {}
            for s in heights:
                v = 0
                if step_ok(x, s, 0):
                    v += layer.get(s, 0)
                if step_ok(x, s, 1):
                    v += layer.get(s + 1, 0)
                if v:
                    prev[s] = v
            layer = prev
        bwd.append(layer)
    return fwd, bwd


def count_lozenge(region: CellRegion, cut: Optional[int] = None) -> int:
    """Lozenge tilings as a determinant of path counts (Cauchy-Binet at one level)."""
    if region.kind != "hexagon":
        raise PreconditionViolation("count_lozenge needs a hexagon region")
    L, M, N = region.size
    if cut is None:
        cut = region.level if region.level is not None else L // 2
    fwd, bwd = _hexagon_path_counts(region, cut)
    mat = [[sum(v * b.get(s, 0) for s, v in f.items()) for b in bwd] for f in fwd]
    return int(det_exact(mat))


def lgv_gap_count(L: int, M: int, N: int, r: int, gaps: GapSet) -> int:
    """Tilings whose paths avoid {r} x gaps, from binomial path counts.

    Path i reaches (r, s) in C(r, s-i) ways and goes on to sink j in
    C(L-r, M+j-s) ways; the entry sums over allowed s.
    """
    allowed = [s for s in range(0, M + N) if not gaps.contains(s)]
    mat = [
        [sum(binomial(r, s - i) * binomial(L - r, M + j - s) for s in allowed) for j in range(N)]
        for i in range(N)
    ]
    return int(det_exact(mat))


# ---------------------------------------------------------------- enumeration


def _backward_tables(seq: _Sequence, weights: Sequence[int]) -> list:
    """tables[t][mask] = weighted completions from step t with frontier mask."""
    reach = [{0}]
    for here in seq.moves:
        nxt = set()
        for mask in reach[-1]:
            if mask & 1:
                nxt.add(mask >> 1)
                continue
            for d, _, _ in here:
                if not mask & (1 << d):
                    nxt.add((mask | (1 << d)) >> 1)
        reach.append(nxt)
    T = len(seq.moves)
    tables: list = [None] * (T + 1)
    tables[T] = {0: 1}
    for t in range(T - 1, -1, -1):
        after = tables[t + 1]
        here = seq.moves[t]
        cur = {}
        for mask in reach[t]:
            if mask & 1:
                v = after.get(mask >> 1, 0)
            else:
                v = 0
                for d, e, _ in here:
                    if not mask & (1 << d):
                        v += weights[e] * after.get((mask | (1 << d)) >> 1, 0)
            if v:
                cur[mask] = v
        tables[t] = cur
    return tables


def _wrap(region: CellRegion, tiles):
    if region.kind == "aztec":
        return DominoTiling(region.size, frozenset(tiles))
    L, M, N = region.size
    return LozengeTiling(L, M, N, frozenset(tuple(sorted(t)) for t in tiles))


def enumerate_tilings_tiny(region: CellRegion, limit: int = ENUMERATION_LIMIT,
                           width_limit: int = DEFAULT_WIDTH_LIMIT) -> list:
    """Every tiling of a small region; TooMany if there are more than ``limit``."""
    total = count_matchings(region, width_limit)
    if total > limit:
        raise TooMany(f"{total} tilings exceed the enumeration limit {limit}")
    seq = _build_sequence(region, width_limit)
    tables = _backward_tables(seq, [1, 1])
    out = []
    T = len(seq.moves)

    def walk(t, mask, chosen):
        if t == T:
            out.append(_wrap(region, chosen))
            return
        if mask & 1:
            walk(t + 1, mask >> 1, chosen)
            return
        for d, _, tile in seq.moves[t]:
            if mask & (1 << d):
                continue
            key = (mask | (1 << d)) >> 1
            if tables[t + 1].get(key, 0):
                chosen.append(tile)
                walk(t + 1, key, chosen)
                chosen.pop()

    if tables[0].get(0, 0):
        walk(0, 0, [])
    return out


def sample_tiling(region: CellRegion, a=1, rng: Optional[random.Random] = None,
                  width_limit: int = DEFAULT_WIDTH_LIMIT):
    """Exact sample from the a^(#vertical) measure (uniform for lozenges)."""
    rng = rng or random.Random()
    a = to_rational(a)
    if a <= 0:
        raise PreconditionViolation("weight must be positive")
    seq = _build_sequence(region, width_limit)
    weights = [a.denominator, a.numerator] if region.kind == "aztec" else [1, 1]
    tables = _backward_tables(seq, weights)
    if not tables[0].get(0, 0):
        raise Untileable("region has no tiling")
    mask = 0
    chosen = []
    for t, here in enumerate(seq.moves):
        if mask & 1:
            mask >>= 1
            continue
        options = []
        for d, e, tile in here:
            if mask & (1 << d):
                continue
            key = (mask | (1 << d)) >> 1
            w = weights[e] * tables[t + 1].get(key, 0)
            if w:
                options.append((w, key, tile))
        total = sum(w for w, _, _ in options)
        pick = rng.randrange(total)
        for w, key, tile in options:
            if pick < w:
                chosen.append(tile)
                mask = key
                break
            pick -= w
    return _wrap(region, chosen)


def hexagon_gap_region(L: int, M: int, N: int, r: int, gaps: GapSet) -> CellRegion:
    return build_hexagon_region(L, M, N, "multigap", r=r, gaps=gaps)
