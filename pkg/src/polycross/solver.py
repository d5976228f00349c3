"""Dynamic program for the crossing-maximal, minimum-size simplification.

States are indexed by an end side label (1 collinear, 2 left, 3 right)
and a vertex ``i``. Each state keeps the best crossing count of a
simplification of ``P[0..i]`` ending at ``i`` with that label, its size,
and a back link ``(prev_index, prev_label)`` to the previous state.

Processing vertex ``i`` takes one batch: for every ``j > i`` the crossings
of segment ``p[i] p[j]`` and its two junction labels. From each reached
state ``(label, i)`` the proposal for ``(carried_label(label, end_j), j)``
is ``chi + crossings_j + junction_crossing(label, start_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from polycross.batch import batch_crossings_monotone, batch_crossings_simple
from polycross.geometry import Kind, NotMonotoneError, Polyline, TooFewPointsError
from polycross.oracle import Simplification

__all__ = ["SolverConfig", "DPStateTable", "UnreachableStateError", "simplify", "solve", "reconstruct"]

_UNSET = np.iinfo(np.int64).min
_LABELS = (1, 2, 3)


class UnreachableStateError(LookupError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    """``max_span`` limits segments to ``j - i <= max_span - 1``; ``mode`` picks the engine."""

    max_span: int | None = None
    mode: str = "auto"

    def __post_init__(self):
        if self.max_span is not None and self.max_span < 2:
            raise ValueError("max_span must be at least 2")
        if self.mode not in ("auto", "monotone", "simple"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class DPStateTable:
    """Arrays of shape (4, n); row ``label`` in 1..3 is used, row 0 is padding.

    Unreached states have ``chi == INT64_MIN``, ``size == n + 1``,
    ``prev_index == -1`` and ``prev_label == 0``.
    """

    chi: np.ndarray
    size: np.ndarray
    prev_index: np.ndarray
    prev_label: np.ndarray

    @classmethod
    def empty(cls, n: int) -> "DPStateTable":
        t = cls(
            np.full((4, n), _UNSET, dtype=np.int64),
            np.full((4, n), n + 1, dtype=np.int64),
            np.full((4, n), -1, dtype=np.int64),
            np.zeros((4, n), dtype=np.int64),
        )
        t.chi[1, 0] = 0
        t.size[1, 0] = 1
        t.prev_index[1, 0] = 0
        t.prev_label[1, 0] = 1
        return t

    @property
    def n(self) -> int:
        return self.chi.shape[1]

    def reached(self, label: int, i: int) -> bool:
        return self.chi[label, i] != _UNSET


def _junction_vec(label: int, start: np.ndarray) -> np.ndarray:
    if label == 2:
        return (start == 3).astype(np.int64)
    if label == 3:
        return (start == 2).astype(np.int64)
    return np.zeros(len(start), dtype=np.int64)


def _engine(P: Polyline, mode: str):
    if mode == "monotone":
        if P.kind is not Kind.MONOTONE:
            raise NotMonotoneError("x-coordinates are not strictly monotone")
        return batch_crossings_monotone
    if mode == "auto" and P.kind is Kind.MONOTONE:
        return batch_crossings_monotone
    return batch_crossings_simple


def solve(P: Polyline, cfg: SolverConfig = SolverConfig()) -> DPStateTable:
    """Fill the state table for every vertex."""
    n = P.n
    if n < 2:
        raise TooFewPointsError("a polyline needs at least two points")
    engine = _engine(P, cfg.mode)
    t = DPStateTable.empty(n)
    for i in range(n - 1):
        live = [s for s in _LABELS if t.chi[s, i] != _UNSET]
        if not live:
            continue
        b = engine(i, P, cfg.max_span)
        js = np.arange(i + 1, b.last + 1)
        cross = b.crossings[i + 1:]
        start = b.start_label[i + 1:]
        end = b.end_label[i + 1:]
        for s in live:
            prop = t.chi[s, i] + cross + _junction_vec(s, start)
            size = t.size[s, i] + 1
            dest = np.where(end == 1, s, end)
            for d in _LABELS:
                sel = dest == d
                if not sel.any():
                    continue
                jj = js[sel]
                p = prop[sel]
                old = t.chi[d, jj]
                win = (p > old) | ((p == old) & (size < t.size[d, jj]))
                if win.any():
                    w = jj[win]
                    t.chi[d, w] = p[win]
                    t.size[d, w] = size
                    t.prev_index[d, w] = i
                    t.prev_label[d, w] = s
    return t


def best_label(t: DPStateTable) -> int:
    """End label at the last vertex: max chi, then min size, then 1 < 2 < 3."""
    last = t.n - 1
    cands = [s for s in _LABELS if t.chi[s, last] != _UNSET]
    if not cands:
        raise UnreachableStateError("no state reaches the last vertex")
    return min(cands, key=lambda s: (-t.chi[s, last], t.size[s, last], s))


def reconstruct(t: DPStateTable, sigma_max: int) -> Simplification:
    """Follow back links from ``(sigma_max, n-1)`` to the start state."""
    s = int(sigma_max)
    i = t.n - 1
    if not 1 <= s <= 3 or t.chi[s, i] == _UNSET:
        raise UnreachableStateError(f"state ({s}, {i}) was never reached")
    chi = int(t.chi[s, i])
    out = [i]
    while i != 0:
        b, bl = int(t.prev_index[s, i]), int(t.prev_label[s, i])
        if not (0 <= b < i) or not 1 <= bl <= 3 or t.chi[bl, b] == _UNSET:
            raise UnreachableStateError(f"broken back link at state ({s}, {i})")
        i, s = b, bl
        out.append(i)
    return Simplification(tuple(reversed(out)), chi, int(sigma_max))


def simplify(P, cfg: SolverConfig | None = None) -> Simplification:
    """Crossing-maximal simplification of minimum size among maximizers.

    ``P`` may be a :class:`Polyline` or an (n, 2) point array. Indices in
    the result refer to ``P.xy`` (merged vertices); use
    :meth:`Polyline.raw_indices` to map them back to the input.
    """
    cfg = cfg or SolverConfig()
    if not isinstance(P, Polyline):
        P = Polyline.from_points(P, mode=cfg.mode)
    t = solve(P, cfg)
    return reconstruct(t, best_label(t))
