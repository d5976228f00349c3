"""Angular ranks around a source vertex and the chain decomposition of the tail.

For a source ``i`` the points after it are ranked clockwise from a cut ray
pointing up from ``p[i]``. Walking the tail ``p[i+1], p[i+2], ...`` the rank
goes up and down; a *chain* is a maximal stretch where it moves one way
only. A segment that crosses the cut ray is split at two artificial points
with the extreme ranks, so no chain wraps around.

Index conventions (all 0-based): artificial points on segment ``(k, k+1)``
carry the pseudo-index ``k + 0.5``. Real ranks are ``1..R`` where ``R`` is
the number of distinct directions; artificial points get ``0`` and ``R+1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from polycross import _kernels
from polycross.geometry import Polyline

__all__ = [
    "AngularRanks",
    "Chain",
    "ChainDecomposition",
    "angular_ranks",
    "decompose_chains",
    "chain_segment_crossing",
]


@dataclass(frozen=True)
class AngularRanks:
    """Ranks of ``p[i+1:]`` around ``p[i]``.

    ``rank[j]`` is the rank of ``p[j]`` (``-1`` for ``j <= i``).
    ``artificial_points`` lists ``(pseudo_index, rank)`` pairs of ray splits
    in walk order.
    """

    source: int
    rank: np.ndarray
    top: int
    artificial_points: tuple[tuple[float, int], ...]
    _nodes: tuple = field(repr=False, compare=False, default=())

    def __post_init__(self):
        self.rank.setflags(write=False)


@dataclass(frozen=True)
class Chain:
    """A rank-monotone run of the tail around one source vertex.

    ``span`` holds the first and last (pseudo-)indices in walk order and
    ``direction`` is +1 if ranks grow along the walk, -1 if they shrink.
    """

    span: tuple[float, float]
    rank_interval: tuple[int, int]
    max_index: float
    direction: int
    topo_order: int = 0

    @property
    def lowest_first(self) -> tuple[float, float]:
        """Span oriented from the low-rank end to the high-rank end."""
        return self.span if self.direction >= 0 else (self.span[1], self.span[0])


class ChainDecomposition(tuple):
    """Tuple of :class:`Chain` that also keeps the node arrays behind it."""

    source: int
    arrays: tuple

    def __new__(cls, chains, source, arrays):
        obj = super().__new__(cls, chains)
        obj.source = source
        obj.arrays = arrays
        return obj


def _coords(P: Polyline):
    xy = P.xy if isinstance(P, Polyline) else np.asarray(P, dtype=float)
    return np.ascontiguousarray(xy[:, 0]), np.ascontiguousarray(xy[:, 1])


def _check_source(i: int, n: int) -> None:
    if not 0 <= i < n - 1:
        raise IndexError(f"source index {i} outside [0, {n - 2}]")


def _pseudo(code: int) -> float:
    return code // 2 + (0.5 if code % 2 else 0.0)


def angular_ranks(i: int, P: Polyline) -> AngularRanks:
    """Exact clockwise ranks of every later point around ``p[i]``."""
    xs, ys = _coords(P)
    n = len(xs)
    _check_source(i, n)
    r, R = _kernels.angular_ranks(xs, ys, i, n - 1)
    nrank, ncode, brk = _kernels.build_nodes(xs, ys, i, n - 1, r, R)
    art = tuple((_pseudo(int(c)), int(k)) for c, k in zip(ncode, nrank) if c % 2)
    rank = np.full(n, -1, dtype=np.int64)
    rank[i + 1:] = r
    return AngularRanks(i, rank, int(R), art, (nrank, ncode, brk))


def decompose_chains(i: int, P: Polyline, ranks: AngularRanks | None = None) -> ChainDecomposition:
    """Split the tail after ``p[i]`` into rank-monotone chains.

    A chain ends at a cut-ray split or where the rank direction flips; the
    flip vertex is shared by both neighbours. Equal consecutive ranks never
    start or end a chain.
    """
    if ranks is None:
        ranks = angular_ranks(i, P)
    if ranks.source != i:
        raise ValueError(f"ranks were computed for source {ranks.source}, not {i}")
    nrank, ncode, brk = ranks._nodes
    cs, ce, cdir, clo, chi, cmax = _kernels.build_chains(nrank, ncode, brk)
    chains = [
        Chain((_pseudo(int(ncode[s])), _pseudo(int(ncode[e]))), (int(lo), int(hi)), _pseudo(int(mx)), int(d))
        for s, e, d, lo, hi, mx in zip(cs, ce, cdir, clo, chi, cmax)
    ]
    return ChainDecomposition(chains, i, (nrank, ncode, cs, ce, cdir, clo, chi, cmax, ranks.top))


def chain_segment_crossing(i: int, j: int, c: Chain, ranks: AngularRanks, P: Polyline | None = None,
                           point_topo: int | None = None) -> int:
    """1 if chain ``c`` crosses the interior of segment ``p[i] p[j]``, else 0.

    The chain must lie entirely before ``p[j]`` along the polyline and the
    direction of ``p[j]`` must fall strictly inside its rank interval. For
    a non-monotone polyline pass ``point_topo``, the smallest topological
    order of the chains through ``p[j]``; the chain must then also be nearer
    to ``p[i]``.
    """
    if not i < j:
        raise IndexError("need i < j")
    r = int(ranks.rank[j])
    lo, hi = c.rank_interval
    if not (lo < r < hi and c.max_index < j):
        return 0
    if point_topo is not None and not c.topo_order < point_topo:
        return 0
    return 1
