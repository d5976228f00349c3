import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycross import _exact
from polycross.geometry import (
    DuplicatePointError,
    Kind,
    NotMonotoneError,
    NotSimpleError,
    Orientation,
    Polyline,
    PolylineError,
    TooFewPointsError,
    check_coordinates,
    classify_input,
    merge_collinear,
    orient,
    orientation,
    segments_intersect,
)

# the domain accepted by check_coordinates: zero or magnitude in [2**-200, 2**200]
finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False).filter(
    lambda v: v == 0.0 or abs(v) >= 2.0 ** -200)


def test_orientation_examples():
    assert orientation((0, 0), (1, 0), (0, 1)) is Orientation.LEFT
    assert orientation((0, 0), (1, 0), (2, 0)) is Orientation.COLLINEAR
    assert orientation((0, 0), (0, 1), (1, 1)) is Orientation.RIGHT


def test_orient_near_degenerate_is_exact():
    # the naive float determinant gets these wrong
    a = (0.5, 0.5)
    b = (12.0, 12.0)
    c = (24.0, 24.0)
    assert orient(*a, *b, *c) == 0
    for k in range(1, 40):
        p = (0.5 + k * 2.0 ** -53, 0.5)
        assert orient(*p, *b, *c) == _exact.orient(*p, *b, *c)
    assert orient(0.1, 0.1, 0.2, 0.2, 0.30000000000000004, 0.30000000000000004) == _exact.orient(
        0.1, 0.1, 0.2, 0.2, 0.30000000000000004, 0.30000000000000004)


def _fraction_sign(a, b, c):
    from fractions import Fraction as F
    d = (F(b[0]) - F(a[0])) * (F(c[1]) - F(a[1])) - (F(b[1]) - F(a[1])) * (F(c[0]) - F(a[0]))
    return (d > 0) - (d < 0)


@settings(max_examples=300, deadline=None)
@given(st.tuples(finite, finite), st.tuples(finite, finite), st.tuples(finite, finite))
def test_both_orient_routes_match_rationals(a, b, c):
    want = _fraction_sign(a, b, c)
    assert orient(*a, *b, *c) == want
    assert _exact.orient(*a, *b, *c) == want


@settings(max_examples=200, deadline=None)
@given(st.integers(-2**20, 2**20), st.integers(-2**20, 2**20), st.integers(1, 2**10),
       st.integers(-4, 4), st.integers(-4, 4))
def test_orient_on_nearly_collinear_lines(x0, y0, step, dx, dy):
    # three points on a lattice line, the last nudged by one ulp-scale amount
    a = (x0 * 0.1, y0 * 0.1)
    b = (a[0] + step * 0.3, a[1] + step * 0.7)
    c = (b[0] + step * 0.3 + dx * 2.0 ** -40, b[1] + step * 0.7 + dy * 2.0 ** -40)
    assert _exact.orient(*a, *b, *c) == _fraction_sign(a, b, c)


@settings(max_examples=200, deadline=None)
@given(st.tuples(finite, finite), st.tuples(finite, finite), st.tuples(finite, finite))
def test_swap_negates(a, b, c):
    assert orient(*a, *b, *c) == -orient(*a, *c, *b)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=6, max_size=6), st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_translation_invariance(v, tx, ty):
    a, b, c = (v[0], v[1]), (v[2], v[3]), (v[4], v[5])
    t = lambda p: (p[0] + tx, p[1] + ty)
    assert orient(*a, *b, *c) == orient(*t(a), *t(b), *t(c))


def test_merge_examples():
    assert merge_collinear([(0, 0), (1, 0), (2, 0), (2, 2)]).xy.tolist() == [[0, 0], [2, 0], [2, 2]]
    assert merge_collinear([(0, 0), (1, 1), (2, 0)]).xy.tolist() == [[0, 0], [1, 1], [2, 0]]
    assert merge_collinear([(0, 0), (1, 1), (2, 2), (3, 3)]).xy.tolist() == [[0, 0], [3, 3]]


def test_merge_collinear_map():
    P = merge_collinear([(0, 0), (1, 0), (2, 0), (2, 2), (2, 3), (5, 3)])
    assert P.kept.tolist() == [0, 2, 4, 5]
    assert P.collinear_map.tolist() == [0, 0, 1, 1, 2, 3]


def test_merge_rejects_duplicates():
    with pytest.raises(DuplicatePointError):
        merge_collinear([(0, 0), (1, 1), (0, 0)])
    with pytest.raises(DuplicatePointError):
        merge_collinear([(0.0, 0.0), (-0.0, 0.0)])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=2, max_size=12, unique=True))
def test_merge_idempotent_and_points_stay_on_chain(pts):
    P = merge_collinear(pts)
    again = merge_collinear(P.xy)
    assert again.xy.tolist() == P.xy.tolist()
    m = len(P.xy)
    for k, (x, y) in enumerate(pts):
        s = P.collinear_map[k]
        a = P.xy[s]
        b = P.xy[min(s + 1, m - 1)]
        assert orient(a[0], a[1], b[0], b[1], x, y) == 0
        assert min(a[0], b[0]) <= x <= max(a[0], b[0]) and min(a[1], b[1]) <= y <= max(a[1], b[1])
    # on a simple chain no three consecutive kept points are collinear
    for s in range(m - 2 if P.kind is not Kind.NOT_SIMPLE else 0):
        assert orient(*P.xy[s], *P.xy[s + 1], *P.xy[s + 2]) != 0


def test_classify_examples():
    assert classify_input([(k, k % 3) for k in range(8)]) == (Kind.MONOTONE, False)
    assert classify_input([(-k, 0.5 * k) for k in range(5)]) == (Kind.MONOTONE, True)
    assert classify_input([(0, 0), (2, 0), (1, 1), (1, -1)])[0] is Kind.NOT_SIMPLE
    spiral = [(0, 0), (4, 0), (4, 4), (0, 4), (0, 1), (3, 1), (3, 3), (1, 3)]
    assert classify_input(spiral)[0] is Kind.SIMPLE
    # equal x is not monotone
    assert classify_input([(0, 0), (0, 1), (1, 1)])[0] is Kind.SIMPLE


def test_classify_fold_back_and_touch():
    # collinear fold back overlaps the previous segment
    assert classify_input([(0, 0), (2, 0), (1, 0)])[0] is Kind.NOT_SIMPLE
    # touching a non-adjacent segment at a vertex is not simple
    assert classify_input([(0, 0), (2, 0), (2, 2), (1, 0)])[0] is Kind.NOT_SIMPLE


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=8, unique=True))
def test_simplicity_matches_all_pairs_check(pts):
    n = len(pts)
    ok = True
    for s in range(n - 1):
        for t in range(s + 1, n - 1):
            if t == s + 1:
                # adjacent: only the shared vertex may be common
                a, b, c = pts[s], pts[s + 1], pts[s + 2]
                if orient(*a, *b, *c) == 0 and (
                    (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) < 0
                ):
                    ok = False
            elif segments_intersect(pts[s], pts[s + 1], pts[t], pts[t + 1]):
                ok = False
    kind, _ = classify_input(pts)
    if kind is not Kind.MONOTONE:
        assert (kind is Kind.SIMPLE) == ok


def test_polyline_reverses_decreasing_x():
    P = Polyline.from_points([(3, 0), (2, 1), (1, 0), (0, 1)])
    assert P.reversed and P.kind is Kind.MONOTONE
    assert P.xy[:, 0].tolist() == [0, 1, 2, 3]
    assert P.raw_indices([0, 3]) == [0, 3]
    assert P.raw_indices([1]) == [2]


def test_polyline_modes():
    with pytest.raises(NotMonotoneError):
        Polyline.from_points([(0, 0), (1, 1), (0, 2)], mode="monotone")
    with pytest.raises(NotSimpleError):
        Polyline.from_points([(0, 0), (2, 0), (1, 1), (1, -1)])
    with pytest.raises(TooFewPointsError):
        Polyline.from_points([(0, 0)])
    P = Polyline.from_points([(0, 0), (1, 1), (2, 0)], mode="simple")
    assert P.kind is Kind.SIMPLE
    assert not P.xy.flags.writeable


def test_coordinate_checks():
    with pytest.raises(PolylineError):
        check_coordinates([(0, np.nan), (1, 1)])
    with pytest.raises(PolylineError):
        check_coordinates([(0, 1e300), (1, 1)])
    with pytest.raises(PolylineError):
        check_coordinates([(0, 1e-300), (1, 1)])
    with pytest.raises(PolylineError):
        check_coordinates([1, 2, 3])
    assert check_coordinates([(0, 0), (1, 2)]).shape == (2, 2)
