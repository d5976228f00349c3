"""Slow reference implementations used as ground truth in the test suite.

Nothing here touches the compiled engines: sign tests go through
:func:`polycross.geometry.orient` and every count is a direct walk.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from polycross.geometry import NotMonotoneError, Polyline, PolylineError, orient
from polycross.junction import TurnNeighbors, carried_label, compute_turn_neighbors, junction_crossing, label_junction

__all__ = [
    "Simplification",
    "InvalidSubsetError",
    "TooLargeError",
    "sign_changes",
    "segment_crossings",
    "residual_signs",
    "crossing_measure_monotone",
    "crossing_measure_general",
    "bruteforce_optimal",
]


class InvalidSubsetError(PolylineError):
    pass


class TooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class Simplification:
    """An index subset of the merged polyline with its crossing number.

    ``end_label`` is the propagated side label at the last vertex
    (1 collinear, 2 left, 3 right).
    """

    indices: tuple[int, ...]
    chi: int
    end_label: int = 1

    @property
    def size(self) -> int:
        return len(self.indices)


def _xy(P) -> np.ndarray:
    return P.xy if isinstance(P, Polyline) else np.asarray(P, dtype=float)


def _check_subset(Q: Sequence[int], n: int) -> tuple[int, ...]:
    q = tuple(int(v) for v in Q)
    if len(q) < 2 or q[0] != 0 or q[-1] != n - 1 or any(b <= a for a, b in zip(q, q[1:])):
        raise InvalidSubsetError(f"subset must increase strictly from 0 to {n - 1}: {q}")
    return q


def sign_changes(signs: Sequence[int]) -> int:
    """Count proper sign changes; zeros are skipped, never counted themselves."""
    count = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last != 0 and s != last:
            count += 1
        last = s
    return count


def residual_signs(P, Q: Sequence[int]) -> list[int]:
    """Residual sign of every point against the simplification covering its x."""
    xy = _xy(P)
    n = len(xy)
    q = _check_subset(Q, n)
    if np.any(np.diff(xy[:, 0]) <= 0):
        raise NotMonotoneError("residuals need strictly increasing x")
    pts = xy.tolist()
    signs = [0] * n
    for a, b in zip(q, q[1:]):
        for k in range(a + 1, b):
            signs[k] = orient(*pts[a], *pts[b], *pts[k])
    return signs


def crossing_measure_monotone(P, Q: Sequence[int]) -> int:
    """Crossing number of an x-monotone polyline as residual sign changes."""
    return sign_changes(residual_signs(P, Q))


def _between(ax, ay, bx, by, px, py) -> bool:
    # p collinear with a, b; strictly inside the segment
    if ax != bx:
        return min(ax, bx) < px < max(ax, bx)
    return min(ay, by) < py < max(ay, by)


def segment_crossings(P, a: int, b: int) -> int:
    """Proper side changes of ``P[a..b]`` that happen on the closed segment ``[p_a, p_b]``.

    Side changes whose crossing with the supporting line falls outside the
    segment do not count. While the polyline runs along the line the
    pending side is held.
    """
    pts = _xy(P).tolist() if not isinstance(P, list) else P
    ax, ay = pts[a]
    bx, by = pts[b]
    count = 0
    last_side = 0
    last_k = -1
    for k in range(a + 1, b):
        kx, ky = pts[k]
        s = orient(ax, ay, bx, by, kx, ky)
        if s == 0:
            continue
        if last_side != 0 and s != last_side:
            if k == last_k + 1:
                lx, ly = pts[last_k]
                if orient(lx, ly, kx, ky, ax, ay) * orient(lx, ly, kx, ky, bx, by) <= 0:
                    count += 1
            elif _between(ax, ay, bx, by, *pts[last_k + 1]):
                count += 1
        last_side = s
        last_k = k
    return count


def _composed_chi(pts, q, turn, seg_cache=None, label_cache=None):
    chi = 0
    label = 1
    for t in range(len(q) - 1):
        a, b = q[t], q[t + 1]
        if seg_cache is not None and (a, b) in seg_cache:
            inner, start, end = seg_cache[(a, b)]
        else:
            inner = segment_crossings(pts, a, b)
            start = int(label_junction(pts, turn, a, b, "start"))
            end = int(label_junction(pts, turn, b, a, "end"))
            if seg_cache is not None:
                seg_cache[(a, b)] = (inner, start, end)
        chi += inner + junction_crossing(label, start)
        label = int(carried_label(label, end))
    return chi, label


def crossing_measure_general(P, Q: Sequence[int], turn: TurnNeighbors | None = None) -> int:
    """Crossing number of any simple polyline, segment by segment plus junctions."""
    xy = _xy(P)
    q = _check_subset(Q, len(xy))
    if turn is None:
        turn = compute_turn_neighbors(xy)
    return _composed_chi(xy.tolist(), q, turn)[0]


def bruteforce_optimal(P, cap: int = 14) -> tuple[int, int, Simplification]:
    """Enumerate every subset and return ``(chi_max, k_min, witness)``."""
    xy = _xy(P)
    n = len(xy)
    if n > cap:
        raise TooLargeError(f"{n} points exceeds the enumeration cap of {cap}")
    if n < 2:
        raise InvalidSubsetError("need at least two points")
    pts = xy.tolist()
    turn = compute_turn_neighbors(xy)
    cache: dict = {}
    best = None
    for size in range(0, n - 1):
        for inner in itertools.combinations(range(1, n - 1), size):
            q = (0, *inner, n - 1)
            chi, label = _composed_chi(pts, q, turn, cache)
            if best is None or chi > best.chi:
                best = Simplification(q, chi, label)
    return best.chi, best.size, best
