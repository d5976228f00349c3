"""Junction labels: which side of the polyline a simplification arm lies on.

At a shared vertex ``p[i]`` the polyline makes a wedge ``(p[i-1], p[i], p[i+1])``.
The adjacent simplification vertex falls in the left cone (I), the right
cone (II), on the ray back along the incoming segment (III) or on the ray
along the outgoing segment (IV). Regions I and II give the arm's side
directly; III and IV are resolved by the next polyline vertex that leaves
the shared line.

Labels are 1 (collinear), 2 (left) and 3 (right). A crossing happens at a
junction exactly when the incoming end label and the outgoing start label
are 2 and 3 in some order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from polycross.geometry import PolylineError, orient

__all__ = [
    "Region",
    "SideLabel",
    "TurnNeighbors",
    "DegenerateWedgeError",
    "classify_region",
    "label_junction",
    "junction_crossing",
    "carried_label",
    "eta",
    "psi",
    "compute_turn_neighbors",
]


class DegenerateWedgeError(PolylineError):
    """The three polyline points around a junction are collinear."""


class Region(enum.IntEnum):
    I = 1
    II = 2
    III = 3
    IV = 4


class SideLabel(enum.IntEnum):
    COLLINEAR = 1
    LEFT = 2
    RIGHT = 3


@dataclass(frozen=True)
class TurnNeighbors:
    """Nearest vertices that leave the line of the segment before/after each index.

    ``prev_turn[i]`` is the largest ``k < i`` with ``p[k]`` off the line
    through ``p[i-1], p[i]``; ``next_turn[i]`` the smallest ``k > i`` off the
    line through ``p[i], p[i+1]``. ``-1`` marks a missing neighbour.
    """

    prev_turn: np.ndarray
    next_turn: np.ndarray


def compute_turn_neighbors(raw) -> TurnNeighbors:
    """Linear scan over maximal collinear runs of segments."""
    pts = np.asarray(raw, dtype=float).tolist()
    n = len(pts)
    prev_turn = np.full(n, -1, dtype=np.intp)
    next_turn = np.full(n, -1, dtype=np.intp)
    if n < 2:
        return TurnNeighbors(prev_turn, next_turn)
    nseg = n - 1
    # straight[s]: segments s and s+1 lie on one line
    straight = [orient(*pts[s], *pts[s + 1], *pts[s + 2]) == 0 for s in range(nseg - 1)]
    run_first = list(range(nseg))
    for s in range(1, nseg):
        if straight[s - 1]:
            run_first[s] = run_first[s - 1]
    run_last = list(range(nseg))
    for s in range(nseg - 2, -1, -1):
        if straight[s]:
            run_last[s] = run_last[s + 1]
    for i in range(n):
        if i >= 1:
            k = run_first[i - 1] - 1
            prev_turn[i] = k if k >= 0 else -1
        if i <= n - 2:
            k = run_last[i] + 2
            next_turn[i] = k if k <= n - 1 else -1
    return TurnNeighbors(prev_turn, next_turn)


def _same_direction(ox, oy, ax, ay, bx, by) -> bool:
    # a and b collinear with o; compare component signs of a-o and b-o
    def sgn(v):
        return (v > 0) - (v < 0)

    return sgn(ax - ox) == sgn(bx - ox) and sgn(ay - oy) == sgn(by - oy)


def classify_region(p_prev, p_at, p_next, q) -> Region:
    """Locate ``q`` relative to the wedge ``p_prev -> p_at -> p_next``."""
    px, py = float(p_prev[0]), float(p_prev[1])
    ax, ay = float(p_at[0]), float(p_at[1])
    nx, ny = float(p_next[0]), float(p_next[1])
    qx, qy = float(q[0]), float(q[1])
    turn = orient(px, py, ax, ay, nx, ny)
    if turn == 0:
        raise DegenerateWedgeError("wedge points are collinear")
    on_in = orient(px, py, ax, ay, qx, qy)
    on_out = orient(ax, ay, nx, ny, qx, qy)
    if on_in == 0 and _same_direction(ax, ay, px, py, qx, qy):
        return Region.III
    if on_out == 0 and _same_direction(ax, ay, nx, ny, qx, qy):
        return Region.IV
    if turn > 0:
        return Region.I if (on_in > 0 and on_out > 0) else Region.II
    return Region.II if (on_in < 0 and on_out < 0) else Region.I


def label_junction(xy, turn: TurnNeighbors, i: int, q: int, which: str) -> SideLabel:
    """Side label of the simplification arm from ``p[i]`` towards ``p[q]``.

    ``which`` is ``"end"`` when the arm is the incoming segment (``q < i``)
    and ``"start"`` when it is the outgoing one (``q > i``). Polyline
    endpoints carry no wedge and are labelled collinear.
    """
    n = len(xy)
    if i <= 0 or i >= n - 1:
        return SideLabel.COLLINEAR
    if which == "end":
        if q == i - 1:
            return SideLabel.COLLINEAR
    elif which == "start":
        if q == i + 1:
            return SideLabel.COLLINEAR
    else:
        raise ValueError(f"which must be 'end' or 'start', not {which!r}")
    region = classify_region(xy[i - 1], xy[i], xy[i + 1], xy[q])
    if region is Region.I:
        return SideLabel.LEFT
    if region is Region.II:
        return SideLabel.RIGHT
    if region is Region.III:
        t = int(turn.prev_turn[i])
        base, tip = i - 1, i
    else:
        t = int(turn.next_turn[i])
        base, tip = i, i + 1
    if t < 0:
        return SideLabel.COLLINEAR
    side = orient(float(xy[base][0]), float(xy[base][1]), float(xy[tip][0]), float(xy[tip][1]),
                  float(xy[t][0]), float(xy[t][1]))
    # the polyline bending left where the arm runs straight on leaves the arm on its right
    return SideLabel.RIGHT if side > 0 else SideLabel.LEFT


def junction_crossing(end_label: int, start_label: int) -> int:
    """1 if the two labels are opposite proper sides, else 0."""
    return 1 if {int(end_label), int(start_label)} == {2, 3} else 0


def carried_label(prev_end: int, new_end: int) -> SideLabel:
    """End label after appending a segment: collinear segments inherit."""
    return SideLabel(new_end if int(new_end) in (2, 3) else prev_end)


# short names used by the solver's interface
eta = junction_crossing
psi = carried_label
