"""Lattice geometry of Aztec diamonds and hexagons, tilings, paths and particles.

Aztec cells are unit squares S_(i,j) = [i,i+1] x [j,j+1] indexed by their
lower-left corner.  A domino is an ordered pair of cells, lower-left cell
first.  Its class depends on the diamond order N::

    horizontal [i,i+2] x [j,j+1]:  north if i+j+N even, else south
    vertical   [i,i+1] x [j,j+2]:  east  if i+j+N even, else west

South, west and east dominoes carry one piece of path each; in the lattice
picture a point (x, y) of a path maps to (x + y + N + 1/2, y + 1/2), so that
path j (counted from the top, j = 0..N-1) runs from (0, -j) to (2N - 2j, -j)
and is then padded horizontally up to time 2N.

Hexagon cells are the two unit triangles of each unit square, split by the
diagonal of slope 1::

    (i, j, 0)  "down":  (i,j) (i+1,j) (i+1,j+1)
    (i, j, 1)  "up":    (i,j) (i+1,j+1) (i,j+1)

and the three lozenges are
    flat    = up(i,j) + down(i,j)       path step (1,0)
    rising  = up(i,j) + down(i,j+1)     path step (1,1)
    blank   = down(i,j) + up(i+1,j)     no path
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InvalidTiling, PreconditionViolation
from .gaps import GapSet

Cell = tuple
Domino = tuple  # (cell, cell)


# ------------------------------------------------------------------ containers


@dataclass(frozen=True)
class CellRegion:
    """A finite set of cells plus pairs of cells that may not share a tile.

    ``size`` is N for Aztec regions and (L, M, N) for hexagons.  ``level`` and
    ``gaps`` record the gap event that produced the region, if any.
    """

    kind: str
    cells: frozenset
    size: object
    label: str = "full"
    forbidden: frozenset = frozenset()
    level: Optional[int] = None
    gaps: Optional[GapSet] = None

    def __len__(self) -> int:
        return len(self.cells)

    def allows(self, c1, c2) -> bool:
        return c1 in self.cells and c2 in self.cells and frozenset((c1, c2)) not in self.forbidden

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "size": list(self.size) if isinstance(self.size, tuple) else self.size,
            "label": self.label,
            "cells": [list(c) for c in sorted(self.cells)],
            "forbidden": [[list(c) for c in sorted(pair)] for pair in sorted(self.forbidden, key=sorted)],
        }


@dataclass(frozen=True)
class DominoTiling:
    N: int
    dominoes: frozenset

    def classes(self) -> dict:
        return {d: classify_domino(d, self.N) for d in self.dominoes}

    def cells(self) -> set:
        return {c for d in self.dominoes for c in d}

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "dominoes": [[list(d[0]), list(d[1]), classify_domino(d, self.N)] for d in sorted(self.dominoes)],
        }


@dataclass(frozen=True)
class LozengeTiling:
    L: int
    M: int
    N: int
    lozenges: frozenset

    def to_json(self) -> dict:
        return {
            "L": self.L,
            "M": self.M,
            "N": self.N,
            "lozenges": [[list(t[0]), list(t[1]), lozenge_kind(t)] for t in sorted(self.lozenges)],
        }


@dataclass(frozen=True)
class PathSystem:
    """Non-intersecting lattice paths, each a tuple of (time, height) vertices.

    For Aztec paths a vertical run at one time is listed vertex by vertex.
    """

    kind: str
    size: object
    paths: tuple

    def to_json(self) -> dict:
        return {"kind": self.kind, "paths": [[list(v) for v in p] for p in self.paths]}


@dataclass(frozen=True)
class ParticleConfig:
    level: int
    positions: tuple

    def max(self) -> int:
        return self.positions[0]


# ------------------------------------------------------------------ Aztec cells


def aztec_cells(N: int) -> set:
    """Unit squares inside |x| + |y| <= N + 1."""
    cells = set()
    for j in range(-N - 1, N + 1):
        for i in range(-N - 1, N + 1):
            if all(abs(x) + abs(y) <= N + 1 for x in (i, i + 1) for y in (j, j + 1)):
                cells.add((i, j))
    return cells


def _under_notch(i: int, j: int, N: int, m: int, k: int) -> bool:
    # the bound is max of two lines whose kink sits at an integer x, so corners suffice
    return all(
        y <= max(2 * m - 1 - N - x, x - 2 * m - 1 + N + 2 * k) for x in (i, i + 1) for y in (j, j + 1)
    )


def reduced_aztec_cells(N: int, m: int, k: int) -> set:
    return {c for c in aztec_cells(N) if _under_notch(c[0], c[1], N, m, k)}


def horizontal(i: int, j: int) -> Domino:
    return ((i, j), (i + 1, j))


def vertical(i: int, j: int) -> Domino:
    return ((i, j), (i, j + 1))


def particle_dominoes(N: int, level: int, site: int) -> list:
    """The two dominoes whose presence puts a particle at (level, site).

    At odd levels the particle sits inside a south domino or at the top of a
    west domino; at even levels it is where a south or west domino begins.
    Sites whose particle lies on the horizontal padding outside the diamond
    have no such domino.
    """
    x = level - site - N
    if level % 2:
        return [horizontal(x - 1, site - 1), vertical(x, site - 2)]
    return [horizontal(x, site - 1), vertical(x, site - 1)]


def tilde_segment_domino(N: int, m: int, k: int) -> Domino:
    """The horizontal domino crossed by the vertical unit segment below the notch.

    The segment is x = 2m - N - k + 1, k-1 <= y <= k, directly under the kink
    of A_N^{m+1,k+1}.
    """
    x0 = 2 * m - N - k + 1
    return horizontal(x0 - 1, k - 1)


def build_aztec_region(N: int, variant: str = "full", m: Optional[int] = None, k: Optional[int] = None,
                       eps: int = 1, gaps: Optional[GapSet] = None) -> CellRegion:
    """Aztec diamond regions.

    ``full``      A_N
    ``reduced``   A_N^{m,k}: cells under y <= max(2m-1-N-x, x-2m-1+N+2k)
    ``tilde``     A_N^{m+1,k+1} with the unit segment at the notch made uncrossable
    ``multigap``  A_N with every domino that would put a particle of level
                  2m-eps into the gap set removed from the allowed tiles; if a
                  particle frozen on the padding lies in the gap, the top cell
                  gets no allowed tile and the region is untileable
    """
    if N < 1:
        raise PreconditionViolation("N must be positive")
    full = aztec_cells(N)
    if variant == "full":
        return CellRegion("aztec", frozenset(full), N, "full")
    if variant == "reduced":
        return CellRegion("aztec", frozenset(reduced_aztec_cells(N, m, k)), N, f"reduced({m},{k})",
                          level=2 * m - 1, gaps=GapSet.semi_infinite(k))
    if variant == "tilde":
        if m >= N:
            return CellRegion("aztec", frozenset(full), N, f"tilde({m},{k})", level=2 * m, gaps=GapSet.semi_infinite(k))
        cells = reduced_aztec_cells(N, m + 1, k + 1)
        d = tilde_segment_domino(N, m, k)
        return CellRegion("aztec", frozenset(cells), N, f"tilde({m},{k})", frozenset([frozenset(d)]),
                          level=2 * m, gaps=GapSet.semi_infinite(k))
    if variant == "multigap":
        if gaps is None or m is None:
            raise PreconditionViolation("multigap needs m and a gap set")
        level = 2 * m - eps
        banned = set()
        # path j is already on its horizontal padding at height -j once level >= 2N - 2j
        frozen = [-j for j in range(N) if level >= 2 * N - 2 * j]
        if any(gaps.contains(site) for site in frozen):
            corner = (-1, N - 1)
            for d in (horizontal(-1, N - 1), vertical(-1, N - 2)):
                banned.add(frozenset(d))
            assert corner in full
        for site in gaps.sites(-N - 2, level + 2):
            for d in particle_dominoes(N, level, site):
                if d[0] in full and d[1] in full:
                    banned.add(frozenset(d))
        return CellRegion("aztec", frozenset(full), N, f"multigap({m},{eps},{gaps})", frozenset(banned),
                          level=level, gaps=gaps)
    raise PreconditionViolation(f"unknown Aztec variant {variant!r}")


def classify_domino(d: Domino, N: int) -> str:
    (i, j), (i2, j2) = d
    even = (i + j + N) % 2 == 0
    if j2 == j and i2 == i + 1:
        return "N" if even else "S"
    if i2 == i and j2 == j + 1:
        return "E" if even else "W"
    raise InvalidTiling(f"cells {d} do not form a domino")


def count_vertical(t: DominoTiling) -> int:
    return sum(1 for d in t.dominoes if d[0][0] == d[1][0])


def check_domino_tiling(t: DominoTiling, region: CellRegion) -> None:
    seen = set()
    for d in t.dominoes:
        classify_domino(d, t.N)
        for c in d:
            if c in seen or c not in region.cells:
                raise InvalidTiling(f"cell {c} covered twice or outside the region")
            seen.add(c)
        if frozenset(d) in region.forbidden:
            raise InvalidTiling(f"domino {d} is not allowed in this region")
    if seen != set(region.cells):
        raise InvalidTiling("tiling does not cover the region")


def complete_with_north(t: DominoTiling) -> DominoTiling:
    """Fill the cells of A_N missing from ``t`` with north dominoes."""
    covered = t.cells()
    missing = sorted((c for c in aztec_cells(t.N) if c not in covered), key=lambda c: (c[1], c[0]))
    todo = set(missing)
    extra = []
    for c in missing:
        if c not in todo:
            continue
        d = horizontal(*c)
        if d[1] not in todo or classify_domino(d, t.N) != "N":
            raise InvalidTiling("complement of the tiled region is not a union of north dominoes")
        todo.discard(d[0])
        todo.discard(d[1])
        extra.append(d)
    return DominoTiling(t.N, t.dominoes | frozenset(extra))


def frozen_tiling(N: int, vertical_tiles: bool = False) -> DominoTiling:
    """All-horizontal tiling (or its rotation) of A_N."""
    cells = aztec_cells(N)
    if vertical_tiles:
        order = sorted(cells)
        step = vertical
    else:
        order = sorted(cells, key=lambda c: (c[1], c[0]))
        step = horizontal
    todo = set(cells)
    out = []
    for c in order:
        if c in todo:
            d = step(*c)
            todo.discard(d[0])
            todo.discard(d[1])
            out.append(d)
    return DominoTiling(N, frozenset(out))


# ----------------------------------------------------------- Aztec paths <-> tiles


def _aztec_segments(t: DominoTiling) -> dict:
    """Map lattice start point -> (list of following vertices) for every path piece."""
    N = t.N
    segs = {}
    for d in t.dominoes:
        cls = classify_domino(d, N)
        a, b = d[0]
        if cls == "S":
            al, be = a + b + N + 1, b + 1
            segs[(al, be)] = [(al + 1, be), (al + 2, be)]
        elif cls == "W":
            al, be = a + b + N + 1, b + 1
            segs[(al, be)] = [(al + 1, be + 1), (al + 2, be + 1)]
        elif cls == "E":
            al, be = a + b + N + 2, b + 2
            segs[(al, be)] = [(al, be - 1)]
    return segs


def tiling_to_paths(t) -> PathSystem:
    if isinstance(t, LozengeTiling):
        return _lozenge_to_paths(t)
    N = t.N
    full = t if t.cells() == aztec_cells(N) else complete_with_north(t)
    segs = _aztec_segments(full)
    used = 0
    paths = []
    for j in range(N):
        v = (0, -j)
        verts = [v]
        while v in segs:
            nxt = segs[v]
            used += 1
            verts.extend(nxt)
            v = nxt[-1]
        if v != (2 * N - 2 * j, -j):
            raise InvalidTiling(f"path {j} ends at {v}")
        for al in range(v[0] + 1, 2 * N + 1):
            verts.append((al, -j))
        paths.append(tuple(verts))
    if used != len(segs):
        raise InvalidTiling("path pieces not reachable from the boundary")
    ps = PathSystem("aztec", N, tuple(paths))
    check_paths(ps)
    return ps


def check_paths(ps: PathSystem) -> None:
    seen = set()
    for j, p in enumerate(ps.paths):
        for v in p:
            if v in seen:
                raise InvalidTiling(f"paths intersect at {v}")
            seen.add(v)
        if ps.kind == "aztec":
            N = ps.size
            if p[0] != (0, -j) or p[-1] != (2 * N, -j):
                raise InvalidTiling(f"path {j} has wrong endpoints")
            for u, w in zip(p, p[1:]):
                step = (w[0] - u[0], w[1] - u[1])
                if step == (1, 1) and u[0] % 2 == 0:
                    continue
                if step == (1, 0):
                    continue
                if step == (0, -1) and u[0] % 2 == 0:
                    continue
                raise InvalidTiling(f"illegal step {u}->{w}")
        else:
            L, M, N = ps.size
            if p[0] != (0, j) or p[-1] != (L, M + j):
                raise InvalidTiling(f"path {j} has wrong endpoints")
            for u, w in zip(p, p[1:]):
                if w[0] - u[0] != 1 or w[1] - u[1] not in (0, 1):
                    raise InvalidTiling(f"illegal step {u}->{w}")


def paths_to_particles(ps: PathSystem, r: int) -> ParticleConfig:
    """Lowest vertex of each path at time r (the others start a down step)."""
    out = []
    for p in ps.paths:
        heights = [v[1] for v in p if v[0] == r]
        if not heights:
            raise PreconditionViolation(f"level {r} outside the path range")
        out.append(min(heights))
    out.sort(reverse=True)
    return ParticleConfig(r, tuple(out))


def paths_to_tiling(ps: PathSystem, region: Optional[CellRegion] = None):
    if ps.kind == "hexagon":
        return _paths_to_lozenge(ps, region)
    N = ps.size
    check_paths(ps)
    tiles = []
    for j, p in enumerate(ps.paths):
        end = (2 * N - 2 * j, -j)
        idx = 0
        while p[idx] != end:
            al, be = p[idx]
            nxt = p[idx + 1]
            if nxt == (al, be - 1):
                tiles.append(vertical(al - be - N, be - 2))
                idx += 1
                continue
            after = p[idx + 2]
            if nxt == (al + 1, be + 1) and after == (al + 2, be + 1):
                tiles.append(vertical(al - be - N, be - 1))
            elif nxt == (al + 1, be) and after == (al + 2, be):
                tiles.append(horizontal(al - be - N, be - 1))
            else:
                raise InvalidTiling(f"path {j} has an unpaired step at {p[idx]}")
            idx += 2
    covered = {c for d in tiles for c in d}
    cells = aztec_cells(N)
    if not covered <= cells or len(covered) != 2 * len(tiles):
        raise InvalidTiling("path pieces leave the diamond or overlap")
    base = DominoTiling(N, frozenset(tiles))
    full = complete_with_north(base)
    if region is None or region.cells == frozenset(cells):
        return full
    kept = frozenset(d for d in full.dominoes if d[0] in region.cells)
    for d in full.dominoes - kept:
        if classify_domino(d, N) != "N" or d[1] in region.cells:
            raise InvalidTiling("tiling does not restrict to the region")
    return DominoTiling(N, kept)


# -------------------------------------------------------------------- hexagons


def _in_hexagon(x, y, L, M, N) -> bool:
    return 0 <= x <= L and 0 <= y <= M + N and y >= x - (L - M) and y <= x + N


def triangle_vertices(c: Cell) -> list:
    i, j, t = c
    if t == 0:
        return [(i, j), (i + 1, j), (i + 1, j + 1)]
    return [(i, j), (i + 1, j + 1), (i, j + 1)]


def hexagon_cells(L: int, M: int, N: int) -> set:
    cells = set()
    for i in range(L):
        for j in range(M + N):
            for t in (0, 1):
                if all(_in_hexagon(x, y, L, M, N) for x, y in triangle_vertices((i, j, t))):
                    cells.add((i, j, t))
    return cells


def lozenge_kind(t) -> str:
    a, b = sorted(t)
    (i, j, s), (i2, j2, s2) = a, b
    if (i2, j2) == (i, j) and s == 0 and s2 == 1:
        return "flat"
    if i2 == i and j2 == j + 1 and s == 1 and s2 == 0:
        return "rising"
    if i2 == i + 1 and j2 == j and s == 0 and s2 == 1:
        return "blank"
    raise InvalidTiling(f"triangles {t} do not form a lozenge")


def flat(i, j):
    return ((i, j, 0), (i, j, 1))


def rising(i, j):
    return ((i, j, 1), (i, j + 1, 0))


def blank(i, j):
    """Blank lozenge whose interior contains the vertical edge x=i, y in [j, j+1]."""
    return ((i - 1, j, 0), (i, j, 1))


def path_free_vertices(r: int, gaps: GapSet) -> set:
    """Path vertices (x, s) that no path can visit once {r} x gaps is avoided.

    Steps are (1,0) and (1,1), so a cluster [lo, hi] at time r also blocks
    the triangle before it (a path there must pass through the cluster) and
    the triangle after it (a path there must have come from the cluster).
    """
    out = set()
    for lo, hi in gaps.clusters():
        if hi is None:
            raise PreconditionViolation("hexagon lozenge holes need finite clusters")
        width = hi - lo
        for d in range(width + 1):
            for s in range(lo, hi - d + 1):
                out.add((r - d, s))
            for s in range(lo + d, hi + 1):
                out.add((r + d, s))
    return out


def build_hexagon_region(L: int, M: int, N: int, variant: str = "full", r: Optional[int] = None,
                         k: Optional[int] = None, gaps: Optional[GapSet] = None) -> CellRegion:
    """Hexagon with corners (0,0), (L-M,0), (L,M), (L,M+N), (M,M+N), (0,N).

    ``reduced`` intersects with y <= max(k, x+k-r); ``multigap`` removes the
    blank lozenges around every vertex that the gap makes unreachable.
    """
    if not (L > M >= 1 and N >= 1):
        raise PreconditionViolation(f"need L > M >= 1 and N >= 1, got {(L, M, N)}")
    cells = hexagon_cells(L, M, N)
    size = (L, M, N)
    if variant == "full":
        return CellRegion("hexagon", frozenset(cells), size, "full")
    if variant == "reduced":
        kept = {c for c in cells if all(y <= max(k, x + k - r) for x, y in triangle_vertices(c))}
        return CellRegion("hexagon", frozenset(kept), size, f"reduced({r},{k})", level=r,
                          gaps=GapSet.semi_infinite(k))
    if variant == "multigap":
        if gaps is None or r is None:
            raise PreconditionViolation("multigap needs r and a gap set")
        removed = set()
        for x, s in path_free_vertices(r, gaps):
            removed.update(blank(x, s))
        return CellRegion("hexagon", frozenset(cells - removed), size, f"multigap({r},{gaps})", level=r, gaps=gaps)
    raise PreconditionViolation(f"unknown hexagon variant {variant!r}")


def _lozenge_to_paths(t: LozengeTiling) -> PathSystem:
    kinds = {}
    for loz in t.lozenges:
        kinds[tuple(sorted(loz))] = lozenge_kind(loz)
    paths = []
    for s0 in range(t.N):
        x, s = 0, s0
        verts = [(x, s)]
        while x < t.L:
            if tuple(sorted(flat(x, s))) in kinds:
                s = s
            elif tuple(sorted(rising(x, s))) in kinds:
                s = s + 1
            else:
                raise InvalidTiling(f"path {s0} stuck at {(x, s)}")
            x += 1
            verts.append((x, s))
        paths.append(tuple(verts))
    ps = PathSystem("hexagon", (t.L, t.M, t.N), tuple(paths))
    check_paths(ps)
    return ps


def _paths_to_lozenge(ps: PathSystem, region: Optional[CellRegion]) -> LozengeTiling:
    L, M, N = ps.size
    check_paths(ps)
    cells = set(region.cells) if region is not None else hexagon_cells(L, M, N)
    tiles = []
    for p in ps.paths:
        for (x, s), (x2, s2) in zip(p, p[1:]):
            tiles.append(flat(x, s) if s2 == s else rising(x, s))
    used = set()
    for t in tiles:
        for c in t:
            if c in used or c not in cells:
                raise InvalidTiling(f"triangle {c} reused or outside the region")
            used.add(c)
    for c in sorted(cells - used):
        if c in used:
            continue
        i, j, s = c
        if s != 0:
            raise InvalidTiling(f"up triangle {c} left without a partner")
        partner = (i + 1, j, 1)
        if partner in used or partner not in cells:
            raise InvalidTiling(f"down triangle {c} left without a partner")
        used.update((c, partner))
        tiles.append((c, partner))
    return LozengeTiling(L, M, N, frozenset(tuple(sorted(t)) for t in tiles))


def check_lozenge_tiling(t: LozengeTiling, region: CellRegion) -> None:
    seen = set()
    for loz in t.lozenges:
        lozenge_kind(loz)
        for c in loz:
            if c in seen or c not in region.cells:
                raise InvalidTiling(f"triangle {c} covered twice or outside the region")
            seen.add(c)
    if seen != set(region.cells):
        raise InvalidTiling("tiling does not cover the region")


def tile_pairs(region: CellRegion) -> Iterable:
    """Every allowed tile of the region as an ordered pair of cells."""
    if region.kind == "aztec":
        for (i, j) in region.cells:
            for d in (horizontal(i, j), vertical(i, j)):
                if region.allows(*d):
                    yield d
    else:
        for (i, j, s) in region.cells:
            if s == 0:
                cands = [flat(i, j), ((i, j, 0), (i + 1, j, 1))]
            else:
                cands = [rising(i, j)]
            for d in cands:
                if region.allows(*d):
                    yield tuple(sorted(d))
