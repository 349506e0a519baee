"""Gap sets: finite unions of integer intervals, the topmost possibly unbounded."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import PreconditionViolation


@dataclass(frozen=True)
class GapSet:
    """Clusters [k_{2j+1}, k_{2j}] for j = 0..q stored as the vector of endpoints.

    ``ks`` holds (k_{2q+1}, ..., k_2, k_1) and ``k0`` is the top endpoint of the
    highest cluster, ``None`` meaning +infinity.
    """

    ks: tuple[int, ...]
    k0: Optional[int] = None

    def __post_init__(self):
        ks = tuple(int(x) for x in self.ks)
        object.__setattr__(self, "ks", ks)
        if len(ks) % 2 != 1:
            raise PreconditionViolation("a gap set needs an odd number of lower endpoints (k_{2q+1}..k_1)")
        seq = list(ks) + ([self.k0] if self.k0 is not None else [])
        # seq is increasing in position: k_{2q+1}, k_{2q}, ..., k_1, k_0
        for pos in range(len(seq) - 1):
            lo, hi = seq[pos], seq[pos + 1]
            index_hi = len(ks) - 1 - pos  # subscript of the larger endpoint
            if index_hi % 2 == 0:
                ok = lo <= hi  # k_{2j+1} <= k_{2j}
            else:
                ok = lo < hi  # k_{2j} < k_{2j-1}
            if not ok:
                raise PreconditionViolation(f"gap endpoints out of order: {self.ks}, k0={self.k0}")

    @classmethod
    def semi_infinite(cls, k: int) -> "GapSet":
        return cls((k,), None)

    @classmethod
    def from_clusters(cls, clusters: Iterable[tuple[int, Optional[int]]]) -> "GapSet":
        """Build from (lo, hi) pairs; hi=None marks the unbounded top cluster."""
        cl = sorted(clusters, key=lambda c: c[0], reverse=True)
        if not cl:
            raise PreconditionViolation("empty cluster list")
        for lo, hi in cl[1:]:
            if hi is None:
                raise PreconditionViolation("only the top cluster may be unbounded")
        ks: list[int] = []
        for j, (lo, hi) in enumerate(cl):
            if j > 0:
                ks.append(hi)
            ks.append(lo)
        return cls(tuple(reversed(ks)), cl[0][1])

    @property
    def q(self) -> int:
        return len(self.ks) // 2

    def k(self, j: int) -> Optional[int]:
        """Endpoint k_j (k_0 may be None for infinity)."""
        if j == 0:
            return self.k0
        if not 1 <= j <= len(self.ks):
            raise IndexError(j)
        return self.ks[len(self.ks) - j]

    def clusters(self) -> list[tuple[int, Optional[int]]]:
        """[(k_1, k_0), (k_3, k_2), ...] from the top cluster down."""
        return [(self.k(2 * j + 1), self.k(2 * j)) for j in range(self.q + 1)]

    @property
    def bottom(self) -> int:
        return self.ks[0]

    def contains(self, n: int) -> bool:
        return any(lo <= n and (hi is None or n <= hi) for lo, hi in self.clusters())

    def sites(self, lo: int, hi: int) -> list[int]:
        """Elements of the gap set inside [lo, hi], increasing."""
        return [n for n in range(lo, hi + 1) if self.contains(n)]

    def cluster_sites(self, lo: int, hi: int) -> list[list[int]]:
        """Per-cluster site lists (top cluster first), clipped to [lo, hi]."""
        out = []
        for a, b in self.clusters():
            top = hi if b is None else min(b, hi)
            out.append(list(range(max(a, lo), top + 1)))
        return out

    def bump(self, j: int) -> "GapSet":
        """Increase k_j by one (validity of the result is checked on construction)."""
        if j == 0:
            if self.k0 is None:
                raise PreconditionViolation("cannot bump an infinite k_0")
            return GapSet(self.ks, self.k0 + 1)
        ks = list(self.ks)
        ks[len(ks) - j] += 1
        return GapSet(tuple(ks), self.k0)

    def to_json(self) -> dict:
        return {"k": list(self.ks), "k0": "inf" if self.k0 is None else self.k0}

    def __str__(self) -> str:
        parts = []
        for lo, hi in reversed(self.clusters()):
            parts.append(f"[{lo},{'inf' if hi is None else hi}]")
        return "U".join(parts)


def parse_gapset(text: str) -> GapSet:
    """Parse ``"1:1,3:inf"`` style cluster lists (lo:hi pairs, comma separated)."""
    clusters: list[tuple[int, Optional[int]]] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo_s, _, hi_s = part.partition(":")
        hi = None if hi_s.strip() in ("inf", "") else int(hi_s)
        clusters.append((int(lo_s), hi))
    return GapSet.from_clusters(clusters)

