import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from _gen import monotone_points, simple_points
from polycross.geometry import NotMonotoneError, merge_collinear, orient
from polycross.oracle import (
    InvalidSubsetError,
    TooLargeError,
    bruteforce_optimal,
    crossing_measure_general,
    crossing_measure_monotone,
    residual_signs,
    segment_crossings,
    sign_changes,
)

ZIGZAG = np.array([(0, 0), (1, 1), (2, -1), (3, 1), (4, 0)], dtype=float)


def test_sign_changes_examples():
    assert sign_changes([1, -1, 1, -1]) == 3
    assert sign_changes([1, 0, 0, -1]) == 1
    assert sign_changes([0, 0, 0]) == 0
    assert sign_changes([]) == 0


def test_monotone_measure_examples():
    assert residual_signs(ZIGZAG, [0, 4]) == [0, 1, -1, 1, 0]
    assert crossing_measure_monotone(ZIGZAG, [0, 4]) == 2
    assert crossing_measure_monotone(ZIGZAG, range(5)) == 0
    assert crossing_measure_monotone([(0, 0), (1, 1), (2, 0)], [0, 2]) == 0


def test_monotone_measure_rejects_non_monotone():
    with pytest.raises(NotMonotoneError):
        crossing_measure_monotone([(0, 0), (1, 1), (0, 2)], [0, 2])


def test_general_measure_examples():
    assert crossing_measure_general(ZIGZAG, [0, 4]) == 2
    assert crossing_measure_general(ZIGZAG, range(5)) == 0


def test_hook_beyond_segment_is_not_a_crossing():
    # the chain crosses the supporting line of the base segment at x = 4, past its end
    hook = np.array([(0, 0), (1, 1), (4, 1), (4, -1), (3, -1), (2, 0)], dtype=float)
    assert crossing_measure_general(hook, [0, 5]) == 0
    signs = [orient(*hook[0], *hook[5], *p) for p in hook[1:5]]
    assert sign_changes(signs) > 0


def test_tangential_touch_is_zero():
    # touches the base segment at (2,0) and returns to the same side
    P = np.array([(0, 0), (1, 1), (2, 0), (3, 1), (4, 0)], dtype=float)
    assert crossing_measure_general(P, [0, 4]) == 0
    assert crossing_measure_monotone(P, [0, 4]) == 0


def test_collinear_stretch_defers_side():
    # runs along the base segment from (2,0) to (4,0), enters from above, leaves below
    P = [(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (4.0, 0.0), (5.0, -1.0), (6.0, 0.0)]
    assert segment_crossings(P, 0, 5) == 1
    # leaving on the entry side is a touch
    P[4] = (5.0, 1.0)
    assert segment_crossings(P, 0, 5) == 0


def test_invalid_subsets():
    with pytest.raises(InvalidSubsetError):
        crossing_measure_general(ZIGZAG, [1, 4])
    with pytest.raises(InvalidSubsetError):
        crossing_measure_general(ZIGZAG, [0, 2, 2, 4])
    with pytest.raises(InvalidSubsetError):
        crossing_measure_general(ZIGZAG, [0])


def test_bruteforce_examples():
    chi, k, w = bruteforce_optimal([(0, 0), (1, 5)])
    assert (chi, k, w.indices) == (0, 2, (0, 1))
    chi, k, w = bruteforce_optimal(ZIGZAG)
    assert (chi, k) == (2, 2)
    P = merge_collinear([(0, 0), (1, 1), (2, 2), (3, 3)])
    assert bruteforce_optimal(P)[:2] == (0, 2)
    with pytest.raises(TooLargeError):
        bruteforce_optimal(np.column_stack([np.arange(20.0), np.zeros(20)]), cap=14)


@settings(max_examples=60, deadline=None)
@given(monotone_points(min_n=2, max_n=9))
def test_general_equals_residual_count_on_monotone(xy):
    P = merge_collinear(xy).xy
    n = len(P)
    for size in range(n - 1):
        for inner in itertools.combinations(range(1, n - 1), size):
            q = (0, *inner, n - 1)
            chi = crossing_measure_monotone(P, q)
            assert crossing_measure_general(P, q) == chi
            assert chi <= n - 2


@settings(max_examples=40, deadline=None)
@given(monotone_points(min_n=3, max_n=9))
def test_bruteforce_dominates_every_subset(xy):
    P = merge_collinear(xy).xy
    n = len(P)
    chi_max, k_min, w = bruteforce_optimal(P)
    assert crossing_measure_general(P, w.indices) == chi_max == w.chi
    for size in range(n - 1):
        for inner in itertools.combinations(range(1, n - 1), size):
            c = crossing_measure_general(P, (0, *inner, n - 1))
            assert c <= chi_max
            if c == chi_max:
                assert size + 2 >= k_min


@settings(max_examples=40, deadline=None)
@given(simple_points(min_n=3, max_n=8))
def test_measures_invariant_under_affine_maps(xy):
    P = merge_collinear(xy).xy
    n = len(P)
    # one orientation-preserving map, one mirror
    for M in (np.array([[2.0, 1.0], [-1.0, 3.0]]), np.array([[1.0, 2.0], [0.0, -1.0]])):
        Q = P @ M.T + np.array([0.5, -4.0])
        for size in range(min(n - 1, 3)):
            for inner in itertools.combinations(range(1, n - 1), size):
                q = (0, *inner, n - 1)
                assert crossing_measure_general(P, q) == crossing_measure_general(Q, q)
