"""Per-source batches: crossing counts and junction labels for every ``S(i, j)``.

For a fixed source ``i`` both engines return, for all ``j > i``, the number
of interior crossings of the segment ``p[i] p[j]`` with ``P[i..j]`` and the
start/end junction labels of that segment.

* The monotone engine runs one stabbing-count Fenwick tree over ranks.
* The simple engine orders chains by radial occlusion (a sweep plus a
  topological sort) and answers dominance counts over
  ``(topo order, max index)`` with an offline Fenwick tree of Fenwick trees.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, replace

import numpy as np

from polycross import _kernels
from polycross.chains import Chain, ChainDecomposition, decompose_chains
from polycross.geometry import Kind, NotMonotoneError, NotSimpleError, Polyline
from polycross.junction import compute_turn_neighbors

__all__ = [
    "BatchResult",
    "ChainOrder",
    "OcclusionCycleError",
    "batch_crossings_monotone",
    "batch_crossings_simple",
    "topo_order_chains",
]


class OcclusionCycleError(RuntimeError):
    """The nearness relation among chains has a cycle; the input cannot be simple."""


@dataclass(frozen=True)
class BatchResult:
    """Counts and labels for ``S(source, j)``, indexed directly by ``j``.

    Entries for ``j <= source`` and beyond the last computed ``j`` are 0.
    Labels are 1 collinear, 2 left, 3 right.
    """

    source: int
    crossings: np.ndarray
    start_label: np.ndarray
    end_label: np.ndarray

    @property
    def last(self) -> int:
        return len(self.crossings) - 1


@dataclass(frozen=True)
class ChainOrder:
    """Chain ids nearest-first, and the nearness edges ``(nearer, farther)`` used."""

    order: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def position(self) -> dict[int, int]:
        return {c: k for k, c in enumerate(self.order)}

    def apply(self, chains) -> tuple[Chain, ...]:
        """Copies of ``chains`` with ``topo_order`` filled in."""
        pos = self.position()
        return tuple(replace(c, topo_order=pos[k]) for k, c in enumerate(chains))


_prepared: "weakref.WeakKeyDictionary[Polyline, tuple]" = weakref.WeakKeyDictionary()


def prepared_arrays(P: Polyline) -> tuple:
    """Contiguous coordinates and turn neighbours, cached per polyline."""
    got = _prepared.get(P)
    if got is None:
        turn = compute_turn_neighbors(P.xy)
        got = (
            np.ascontiguousarray(P.xy[:, 0]),
            np.ascontiguousarray(P.xy[:, 1]),
            turn.prev_turn.astype(np.int64),
            turn.next_turn.astype(np.int64),
        )
        _prepared[P] = got
    return got


def _last_index(i: int, n: int, max_span: int | None) -> int:
    if not 0 <= i < n - 1:
        raise IndexError(f"source index {i} outside [0, {n - 2}]")
    if max_span is None:
        return n - 1
    if max_span < 2:
        raise ValueError("max_span must be at least 2")
    return min(n - 1, i + max_span - 1)


def _pack(i: int, jmax: int, cross, start, end) -> BatchResult:
    size = jmax + 1
    out = [np.zeros(size, dtype=np.int64) for _ in range(3)]
    for dst, src in zip(out, (cross, start, end)):
        dst[i + 1:] = src
        dst.setflags(write=False)
    return BatchResult(i, *out)


def batch_crossings_monotone(i: int, P: Polyline, max_span: int | None = None) -> BatchResult:
    """Batch for an x-monotone polyline, ``O(n log n)``.

    With ``max_span`` only ``j <= i + max_span - 1`` is computed, and only
    that part of the polyline is read.
    """
    if P.kind is not Kind.MONOTONE:
        raise NotMonotoneError("the monotone engine needs strictly increasing x")
    xs, ys, pt, nt = prepared_arrays(P)
    jmax = _last_index(i, len(xs), max_span)
    return _pack(i, jmax, *_kernels.batch_monotone(xs, ys, pt, nt, i, jmax))


def batch_crossings_simple(i: int, P: Polyline, max_span: int | None = None) -> BatchResult:
    """Batch for any simple polyline, ``O(n log^2 n)``."""
    if P.kind is Kind.NOT_SIMPLE:
        raise NotSimpleError("polyline intersects itself")
    xs, ys, pt, nt = prepared_arrays(P)
    jmax = _last_index(i, len(xs), max_span)
    cross, start, end, ok = _kernels.batch_simple(xs, ys, pt, nt, i, jmax)
    if not ok:
        raise OcclusionCycleError(f"chain nearness order around vertex {i} is cyclic")
    return _pack(i, jmax, cross, start, end)


def topo_order_chains(i: int, chains: ChainDecomposition | None, P: Polyline) -> ChainOrder:
    """Order chains so that whenever a ray from ``p[i]`` hits two, the nearer comes first."""
    if chains is None:
        chains = decompose_chains(i, P)
    if chains.source != i:
        raise ValueError(f"chains were built for source {chains.source}, not {i}")
    xs, ys, _, _ = prepared_arrays(P)
    nrank, ncode, cs, ce, cdir, clo, chi, cmax, top = chains.arrays
    topo, eu, ev, ok = _kernels.occlusion_order(xs, ys, i, top, nrank, ncode, cs, ce, cdir, clo, chi)
    if not ok:
        raise OcclusionCycleError(f"chain nearness order around vertex {i} is cyclic")
    order = tuple(int(c) for c in np.argsort(topo, kind="stable"))
    return ChainOrder(order, tuple(zip(map(int, eu), map(int, ev))))
