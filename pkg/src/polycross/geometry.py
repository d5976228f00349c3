"""Planar primitives: exact orientation, collinear merging and input validation.

Every sign test here is exact for the given binary floating-point inputs.
A float filter handles the common case and :class:`fractions.Fraction`
settles the rest, so this module shares no code with the compiled kernels
in :mod:`polycross._exact`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from numba import njit

from polycross import _exact

__all__ = [
    "Orientation",
    "Kind",
    "Polyline",
    "PolylineError",
    "DuplicatePointError",
    "NotSimpleError",
    "NotMonotoneError",
    "TooFewPointsError",
    "orient",
    "orientation",
    "merge_collinear",
    "classify_input",
    "segments_intersect",
    "check_coordinates",
]

_ERRBOUND = (3.0 + 16.0 * 2.0 ** -53) * 2.0 ** -53
_COORD_MAX = 2.0 ** 200
_COORD_MIN = 2.0 ** -200


class PolylineError(ValueError):
    """Input points cannot form a valid polyline."""


class DuplicatePointError(PolylineError):
    pass


class NotSimpleError(PolylineError):
    pass


class NotMonotoneError(PolylineError):
    pass


class TooFewPointsError(PolylineError):
    pass


class Orientation(enum.IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


class Kind(str, enum.Enum):
    MONOTONE = "monotone"
    SIMPLE = "simple"
    NOT_SIMPLE = "not_simple"


def orient(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> int:
    """Exact sign of the signed area of triangle (a, b, c)."""
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    if (detleft > 0.0 and detright <= 0.0) or (detleft < 0.0 and detright >= 0.0) or detleft == 0.0:
        return 1 if det > 0.0 else (-1 if det < 0.0 else 0)
    if abs(det) > _ERRBOUND * (abs(detleft) + abs(detright)):
        return 1 if det > 0.0 else (-1 if det < 0.0 else 0)
    fa, fb, fc = (Fraction(ax), Fraction(ay)), (Fraction(bx), Fraction(by)), (Fraction(cx), Fraction(cy))
    d = (fb[0] - fa[0]) * (fc[1] - fa[1]) - (fb[1] - fa[1]) * (fc[0] - fa[0])
    return 1 if d > 0 else (-1 if d < 0 else 0)


def orientation(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> Orientation:
    """Left if c lies left of the directed line a->b, Right if right, else Collinear."""
    return Orientation(orient(a[0], a[1], b[0], b[1], c[0], c[1]))


def check_coordinates(xy) -> np.ndarray:
    """Return ``xy`` as a float (n, 2) array, rejecting non-finite or out-of-range values."""
    arr = np.array(xy, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise PolylineError(f"expected an (n, 2) array of points, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise PolylineError("coordinates must be finite")
    mag = np.abs(arr)
    if np.any(mag > _COORD_MAX) or np.any((mag < _COORD_MIN) & (mag > 0.0)):
        raise PolylineError("coordinate magnitudes must lie in [2**-200, 2**200] or be zero")
    return arr


def _check_distinct(arr: np.ndarray) -> None:
    seen: dict[tuple[float, float], int] = {}
    for k, (x, y) in enumerate(map(tuple, arr.tolist())):
        # -0.0 and 0.0 hash equal, which is what we want
        if (x, y) in seen:
            raise DuplicatePointError(f"points {seen[(x, y)]} and {k} coincide at ({x!r}, {y!r})")
        seen[(x, y)] = k


def _on_segment(ax, ay, bx, by, px, py) -> bool:
    # p is known to be collinear with a, b
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def segments_intersect(a, b, c, d) -> bool:
    """True if closed segments [a, b] and [c, d] share at least one point."""
    o1 = orient(a[0], a[1], b[0], b[1], c[0], c[1])
    o2 = orient(a[0], a[1], b[0], b[1], d[0], d[1])
    o3 = orient(c[0], c[1], d[0], d[1], a[0], a[1])
    o4 = orient(c[0], c[1], d[0], d[1], b[0], b[1])
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _on_segment(a[0], a[1], b[0], b[1], c[0], c[1]):
        return True
    if o2 == 0 and _on_segment(a[0], a[1], b[0], b[1], d[0], d[1]):
        return True
    if o3 == 0 and _on_segment(c[0], c[1], d[0], d[1], a[0], a[1]):
        return True
    if o4 == 0 and _on_segment(c[0], c[1], d[0], d[1], b[0], b[1]):
        return True
    return False


def _is_simple(arr: np.ndarray) -> bool:
    n = len(arr)
    if n < 3:
        return True
    xs = np.ascontiguousarray(arr[:, 0])
    ys = np.ascontiguousarray(arr[:, 1])
    return bool(_simple_kernel(xs, ys))


def classify_input(points) -> tuple[Kind, bool]:
    """Classify a point sequence as monotone, simple or not simple.

    Returns ``(kind, reversed)``; ``reversed`` is True when x is strictly
    decreasing and the sequence is to be read back to front.
    """
    arr = check_coordinates(points)
    if len(arr) < 2:
        raise TooFewPointsError("a polyline needs at least two points")
    _check_distinct(arr)
    dx = np.diff(arr[:, 0])
    if np.all(dx > 0):
        return Kind.MONOTONE, False
    if np.all(dx < 0):
        return Kind.MONOTONE, True
    return (Kind.SIMPLE if _is_simple(arr) else Kind.NOT_SIMPLE), False


def _continues(a, b, c) -> bool:
    # a, b, c collinear: does b -> c keep the direction of a -> b
    def sgn(v):
        return (v > 0) - (v < 0)

    return sgn(b[0] - a[0]) == sgn(c[0] - b[0]) and sgn(b[1] - a[1]) == sgn(c[1] - b[1])


def _merge(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Indices kept after dropping interior points of collinear runs, and the map.

    Only points where the chain continues straight on are dropped; a
    collinear fold back keeps its vertex so the shape never changes.
    """
    n = len(arr)
    pts = arr.tolist()
    keep = [0]
    for k in range(1, n - 1):
        a = pts[keep[-1]]
        b = pts[k]
        c = pts[k + 1]
        if orient(a[0], a[1], b[0], b[1], c[0], c[1]) != 0 or not _continues(a, b, c):
            keep.append(k)
    keep.append(n - 1)
    kept = np.array(keep, dtype=np.intp)
    cmap = np.searchsorted(kept, np.arange(n), side="right") - 1
    return kept, cmap


@dataclass(frozen=True, eq=False)
class Polyline:
    """A validated polyline with collinear runs merged.

    ``xy`` holds the merged vertices, ``kept`` their indices in the (possibly
    reversed) raw sequence and ``collinear_map`` sends each raw index to its
    merged vertex, or to the start vertex of the merged segment containing it.
    """

    xy: np.ndarray
    kind: Kind
    raw: np.ndarray
    kept: np.ndarray
    collinear_map: np.ndarray
    reversed: bool = False

    def __post_init__(self):
        for arr in (self.xy, self.raw, self.kept, self.collinear_map):
            arr.setflags(write=False)

    @classmethod
    def from_points(cls, points, mode: str = "auto") -> "Polyline":
        """Validate, orient and merge ``points``.

        ``mode`` is ``"auto"``, ``"monotone"`` or ``"simple"``; forcing
        ``"simple"`` routes monotone data through the general engine.
        """
        arr = check_coordinates(points)
        kind, rev = classify_input(arr)
        if kind is Kind.NOT_SIMPLE:
            raise NotSimpleError("polyline intersects itself")
        if mode == "monotone" and kind is not Kind.MONOTONE:
            raise NotMonotoneError("x-coordinates are not strictly monotone")
        if mode == "simple":
            kind, rev = Kind.SIMPLE, False
        elif mode != "auto" and mode != "monotone":
            raise ValueError(f"unknown mode {mode!r}")
        if rev:
            arr = arr[::-1].copy()
        kept, cmap = _merge(arr)
        return cls(np.ascontiguousarray(arr[kept]), kind, arr, kept, cmap, rev)

    @property
    def n(self) -> int:
        return len(self.xy)

    @property
    def x(self) -> np.ndarray:
        return self.xy[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.xy[:, 1]

    def raw_indices(self, indices) -> list[int]:
        """Map merged indices to indices of the input sequence as given."""
        out = [int(self.kept[i]) for i in indices]
        if self.reversed:
            m = len(self.raw) - 1
            out = sorted(m - i for i in out)
        return out

    def __len__(self) -> int:
        return len(self.xy)


def merge_collinear(raw) -> Polyline:
    """Drop interior points of maximal collinear runs, keeping the endpoints.

    The input order is preserved (no monotone reversal). Raises
    :class:`DuplicatePointError` for repeated points.
    """
    arr = check_coordinates(raw)
    if len(arr) < 2:
        raise TooFewPointsError("a polyline needs at least two points")
    _check_distinct(arr)
    kept, cmap = _merge(arr)
    dx = np.diff(arr[:, 0])
    kind = Kind.MONOTONE if np.all(dx > 0) else (Kind.SIMPLE if _is_simple(arr) else Kind.NOT_SIMPLE)
    return Polyline(np.ascontiguousarray(arr[kept]), kind, arr, kept, cmap, False)


@njit(cache=True)
def _seg_hit(ax, ay, bx, by, cx, cy, dx, dy):
    o1 = _exact.orient(ax, ay, bx, by, cx, cy)
    o2 = _exact.orient(ax, ay, bx, by, dx, dy)
    o3 = _exact.orient(cx, cy, dx, dy, ax, ay)
    o4 = _exact.orient(cx, cy, dx, dy, bx, by)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and min(ax, bx) <= cx <= max(ax, bx) and min(ay, by) <= cy <= max(ay, by):
        return True
    if o2 == 0 and min(ax, bx) <= dx <= max(ax, bx) and min(ay, by) <= dy <= max(ay, by):
        return True
    if o3 == 0 and min(cx, dx) <= ax <= max(cx, dx) and min(cy, dy) <= ay <= max(cy, dy):
        return True
    if o4 == 0 and min(cx, dx) <= bx <= max(cx, dx) and min(cy, dy) <= by <= max(cy, dy):
        return True
    return False


@njit(cache=True)
def _simple_kernel(xs, ys):
    n = xs.shape[0]
    for s in range(n - 1):
        # adjacent segments may share only their common vertex
        if s + 2 < n:
            if _exact.orient(xs[s], ys[s], xs[s + 1], ys[s + 1], xs[s + 2], ys[s + 2]) == 0:
                # collinear: folding back means overlap
                ux = xs[s + 1] - xs[s]
                uy = ys[s + 1] - ys[s]
                vx = xs[s + 2] - xs[s + 1]
                vy = ys[s + 2] - ys[s + 1]
                if (ux > 0) != (vx > 0) or (ux < 0) != (vx < 0) or (uy > 0) != (vy > 0) or (uy < 0) != (vy < 0):
                    return False
        # bounding boxes prune most pairs
        sx0 = min(xs[s], xs[s + 1])
        sx1 = max(xs[s], xs[s + 1])
        sy0 = min(ys[s], ys[s + 1])
        sy1 = max(ys[s], ys[s + 1])
        for t in range(s + 2, n - 1):
            if max(xs[t], xs[t + 1]) < sx0 or min(xs[t], xs[t + 1]) > sx1:
                continue
            if max(ys[t], ys[t + 1]) < sy0 or min(ys[t], ys[t + 1]) > sy1:
                continue
            if _seg_hit(xs[s], ys[s], xs[s + 1], ys[s + 1], xs[t], ys[t], xs[t + 1], ys[t + 1]):
                return False
    return True
