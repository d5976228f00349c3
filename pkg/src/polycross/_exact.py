"""Exact orientation and angular predicates for the compiled engines.

A float filter answers almost every query; the rest are settled by an
error-free expansion of the 2x2 determinant (two-sum / two-product).
Coordinates are assumed to satisfy ``2**-200 <= |v| <= 2**200`` or ``v == 0``
(see :func:`polycross.geometry.check_coordinates`), which keeps every
product clear of overflow and underflow.
"""

import numpy as np
from numba import njit

_EPS = 2.0 ** -53
_SPLITTER = 2.0 ** 27 + 1.0
_CCW_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS


@njit(cache=True, inline="always")
def _two_sum(a, b):
    x = a + b
    bv = x - a
    av = x - bv
    return x, (a - av) + (b - bv)


@njit(cache=True, inline="always")
def _two_diff(a, b):
    x = a - b
    bv = a - x
    av = x + bv
    return x, (a - av) + (bv - b)


@njit(cache=True, inline="always")
def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


@njit(cache=True, inline="always")
def _two_product(a, b):
    x = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    err = x - ahi * bhi - alo * bhi - ahi * blo
    return x, alo * blo - err


@njit(cache=True)
def _exact_sign(ax, ay, bx, by, cx, cy):
    acx, acx_t = _two_diff(ax, cx)
    bcy, bcy_t = _two_diff(by, cy)
    acy, acy_t = _two_diff(ay, cy)
    bcx, bcx_t = _two_diff(bx, cx)
    terms = np.empty(16)
    k = 0
    for p, q, s in (
        (acx, bcy, 1.0), (acx, bcy_t, 1.0), (acx_t, bcy, 1.0), (acx_t, bcy_t, 1.0),
        (acy, bcx, -1.0), (acy, bcx_t, -1.0), (acy_t, bcx, -1.0), (acy_t, bcx_t, -1.0),
    ):
        hi, lo = _two_product(p, q)
        terms[k] = s * hi
        terms[k + 1] = s * lo
        k += 2
    # grow a nonoverlapping expansion; its largest nonzero component carries the sign
    h = np.zeros(17)
    m = 0
    for t in range(16):
        q = terms[t]
        for idx in range(m):
            q, h[idx] = _two_sum(q, h[idx])
        h[m] = q
        m += 1
    for idx in range(m - 1, -1, -1):
        if h[idx] > 0.0:
            return 1
        if h[idx] < 0.0:
            return -1
    return 0


@njit(cache=True)
def orient(ax, ay, bx, by, cx, cy):
    """Sign of twice the signed area of (a, b, c): +1 left, -1 right, 0 collinear."""
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    if detleft > 0.0:
        if detright <= 0.0:
            return 1 if det > 0.0 else (-1 if det < 0.0 else 0)
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return 1 if det > 0.0 else (-1 if det < 0.0 else 0)
        detsum = -detleft - detright
    else:
        return 1 if det > 0.0 else (-1 if det < 0.0 else 0)
    bound = _CCW_ERRBOUND * detsum
    if det > bound:
        return 1
    if -det > bound:
        return -1
    return _exact_sign(ax, ay, bx, by, cx, cy)


@njit(cache=True)
def half_of(dx, dy):
    """0 for clockwise angles in [0, 180) from +y, 1 for [180, 360)."""
    if dx > 0.0 or (dx == 0.0 and dy > 0.0):
        return 0
    return 1


@njit(cache=True)
def angle_cmp(cx, cy, ax, ay, bx, by):
    """Compare clockwise angles from the upward vertical of a and b around c.

    Returns -1 if a comes first, 1 if b comes first, 0 for equal directions.
    """
    ha = half_of(ax - cx, ay - cy)
    hb = half_of(bx - cx, by - cy)
    if ha != hb:
        return -1 if ha < hb else 1
    o = orient(cx, cy, ax, ay, bx, by)
    # b clockwise of a means a comes first
    if o < 0:
        return -1
    if o > 0:
        return 1
    return 0
