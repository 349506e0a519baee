"""Domino shuffling for the a-weighted Aztec diamond, and Monte Carlo gap estimates.

One growth step turns a tiling of A_n into a tiling of A_{n+1}: pairs of
dominoes that would collide are deleted, every remaining domino slides one
unit (north up, south down, east right, west left) and the empty 2x2 blocks
are refilled, with a vertical pair chosen with odds a^2 : 1.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidTiling, PreconditionViolation
from .exact import to_rational
from .gaps import GapSet
from .regions import (
    DominoTiling,
    aztec_cells,
    classify_domino,
    horizontal,
    paths_to_particles,
    tiling_to_paths,
    vertical,
)

_MOVES = {"N": (0, 1), "S": (0, -1), "E": (1, 0), "W": (-1, 0)}


@dataclass
class ShuffleState:
    order: int
    tiling: DominoTiling
    rng: random.Random


def _creation_odds(a: Fraction) -> tuple[int, int]:
    """(vertical, total) as integers: vertical pair with probability p^2 / (p^2 + q^2)."""
    p, q = a.numerator, a.denominator
    return p * p, p * p + q * q


def shuffle_step(state: ShuffleState, a: Fraction) -> None:
    n = state.order
    doms = {d: classify_domino(d, n) for d in state.tiling.dominoes}
    dead = set()
    for d, cls in doms.items():
        (i, j), _ = d
        if cls == "N":
            above = horizontal(i, j + 1)
            if doms.get(above) == "S":
                dead.update((d, above))
        elif cls == "E":
            right = vertical(i + 1, j)
            if doms.get(right) == "W":
                dead.update((d, right))
    moved = []
    for d, cls in doms.items():
        if d in dead:
            continue
        dx, dy = _MOVES[cls]
        moved.append(tuple((c[0] + dx, c[1] + dy) for c in d))
    cells = aztec_cells(n + 1)
    covered = {c for d in moved for c in d}
    if len(covered) != 2 * len(moved) or not covered <= cells:
        raise InvalidTiling("sliding produced overlapping or escaping dominoes")
    empty = cells - covered
    vert, total = _creation_odds(a)
    for c in sorted(empty, key=lambda c: (-c[1], c[0])):
        if c not in empty:
            continue
        i, j = c
        block = [(i, j), (i + 1, j), (i, j - 1), (i + 1, j - 1)]
        if any(b not in empty for b in block):
            raise InvalidTiling(f"empty cells near {c} do not form a 2x2 block")
        empty.difference_update(block)
        if state.rng.randrange(total) < vert:
            moved.extend([vertical(i, j - 1), vertical(i + 1, j - 1)])
        else:
            moved.extend([horizontal(i, j - 1), horizontal(i, j)])
    state.order = n + 1
    state.tiling = DominoTiling(n + 1, frozenset(moved))


def shuffle_sample(N: int, a=1, seed: int = 0) -> DominoTiling:
    """Random tiling of A_N with probability proportional to a^(#vertical dominoes)."""
    if N < 1:
        raise PreconditionViolation("N must be positive")
    a = to_rational(a)
    if a <= 0:
        raise PreconditionViolation("weight must be positive")
    state = ShuffleState(0, DominoTiling(0, frozenset()), random.Random(seed))
    for _ in range(N):
        shuffle_step(state, a)
    return state.tiling


@dataclass(frozen=True)
class GapEstimate:
    trials: int
    hits: int
    estimate: float
    stderr: float
    exact: Fraction
    sigmas: float

    def to_json(self) -> dict:
        from .exact import rational_str

        return {
            "trials": self.trials,
            "hits": self.hits,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "exact": rational_str(self.exact),
            "sigmas": self.sigmas,
        }


def exact_gap_probability(N: int, m: int, k: int, eps: int, a) -> Fraction:
    from .kernels import KrawtchoukKernelSpec, gap_determinant

    return gap_determinant(KrawtchoukKernelSpec(N, m, eps, to_rational(a)), GapSet.semi_infinite(k))


def mc_gap_probability(N: int, m: int, k: int, eps: int, a, trials: int, seed: int = 0) -> GapEstimate:
    """Frequency of 'every particle at level 2m-eps lies below k' over shuffled samples."""
    a = to_rational(a)
    exact = exact_gap_probability(N, m, k, eps, a)
    if exact < Fraction(10, trials):
        raise PreconditionViolation(f"event probability {exact} too small for {trials} trials")
    rng = random.Random(seed)
    level = 2 * m - eps
    hits = 0
    for _ in range(trials):
        t = shuffle_sample(N, a, rng.getrandbits(64))
        if paths_to_particles(tiling_to_paths(t), level).max() < k:
            hits += 1
    est = hits / trials
    p = float(exact)
    se = math.sqrt(max(p * (1 - p), 1e-300) / trials)
    sigmas = abs(est - p) / se if p * (1 - p) > 0 else (0.0 if est == p else math.inf)
    return GapEstimate(trials, hits, est, se, exact, sigmas)
