import tracemalloc

import numpy as np
import pytest
from hypothesis import given, settings

from _gen import monotone_points, random_monotone, random_simple, simple_points
from polycross.geometry import NotMonotoneError, NotSimpleError, Polyline, TooFewPointsError
from polycross.io import gen_signal
from polycross.oracle import bruteforce_optimal, crossing_measure_general
from polycross.solver import (
    DPStateTable,
    SolverConfig,
    UnreachableStateError,
    best_label,
    reconstruct,
    simplify,
    solve,
)


def test_two_points():
    Q = simplify([(0, 0), (1, 3)])
    assert (Q.indices, Q.chi, Q.size) == ((0, 1), 0, 2)


def test_clean_signal_golden():
    P = Polyline.from_points(gen_signal(101).xy, mode="monotone")
    Q = simplify(P, SolverConfig(mode="monotone"))
    assert (Q.size, Q.chi) == (5, 7)
    assert Q.indices[0] == 0 and Q.indices[-1] == 100
    assert crossing_measure_general(P.xy, Q.indices) == 7


def test_errors():
    with pytest.raises(NotMonotoneError):
        simplify([(0, 0), (1, 1), (0, 2)], SolverConfig(mode="monotone"))
    with pytest.raises(NotSimpleError):
        simplify([(0, 0), (2, 0), (1, 1), (1, -1)])
    with pytest.raises(TooFewPointsError):
        simplify([(0, 0)])
    with pytest.raises(ValueError):
        SolverConfig(max_span=1)
    with pytest.raises(ValueError):
        SolverConfig(mode="fast")


def _check_against_bruteforce(xy, mode="auto"):
    P = Polyline.from_points(xy, mode=mode)
    Q = simplify(P, SolverConfig(mode=mode))
    chi, k, _ = bruteforce_optimal(P)
    assert (Q.chi, Q.size) == (chi, k)
    assert crossing_measure_general(P.xy, Q.indices) == Q.chi


@settings(max_examples=60, deadline=None)
@given(monotone_points(min_n=2, max_n=11))
def test_optimal_on_monotone(xy):
    _check_against_bruteforce(xy)
    _check_against_bruteforce(xy, mode="simple")


@settings(max_examples=40, deadline=None)
@given(simple_points(min_n=3, max_n=10))
def test_optimal_on_simple(xy):
    _check_against_bruteforce(xy)


def test_reversed_input_maps_back():
    xy = np.array([(4, 0), (3, 1), (2, -1), (1, 1), (0, 0)], dtype=float)
    P = Polyline.from_points(xy)
    Q = simplify(P)
    assert Q.chi == 2
    assert P.raw_indices(Q.indices) == [0, 4]


def test_affine_invariance():
    rng = np.random.default_rng(8)
    maps = [np.array([[2.0, 0.0], [0.0, 0.5]]), np.array([[1.0, 0.25], [-0.5, 1.0]]), np.array([[-1.0, 0.0], [0.5, 2.0]])]
    for t in range(10):
        xy = random_monotone(rng, 12) if t % 2 else random_simple(rng, 12)
        base = simplify(xy, SolverConfig(mode="simple"))
        for M in maps:
            moved = xy @ M.T + np.array([3.0, -1.0])
            Q = simplify(moved, SolverConfig(mode="simple"))
            assert (Q.chi, Q.size) == (base.chi, base.size)


def test_bounded_span():
    rng = np.random.default_rng(9)
    for t in range(8):
        xy = random_monotone(rng, 16) if t % 2 else random_simple(rng, 14)
        n = len(Polyline.from_points(xy))
        free = simplify(xy)
        prev = -1
        for m in (2, 4, 8, n):
            Q = simplify(xy, SolverConfig(max_span=m))
            assert Q.chi >= prev
            assert all(b - a <= m - 1 for a, b in zip(Q.indices, Q.indices[1:]))
            prev = Q.chi
        assert (Q.chi, Q.size) == (free.chi, free.size)
        Q = simplify(xy, SolverConfig(max_span=n + 5))
        assert (Q.chi, Q.size) == (free.chi, free.size)


def test_span_two_keeps_every_vertex():
    P = Polyline.from_points(random_monotone(np.random.default_rng(1), 10))
    Q = simplify(P, SolverConfig(max_span=2))
    assert Q.indices == tuple(range(P.n))
    assert Q.chi == 0


def test_outlier_is_ejected():
    xy = gen_signal(101).xy
    Q = simplify(xy)
    for i in Q.indices[1:-1]:
        bumped = xy.copy()
        bumped[i, 1] += 1e4
        assert i not in simplify(bumped).indices


def test_reconstruct_planted_path():
    t = DPStateTable.empty(3)
    t.chi[2, 1], t.size[2, 1], t.prev_index[2, 1], t.prev_label[2, 1] = 0, 2, 0, 1
    t.chi[3, 2], t.size[3, 2], t.prev_index[3, 2], t.prev_label[3, 2] = 1, 3, 1, 2
    Q = reconstruct(t, 3)
    assert Q.indices == (0, 1, 2)
    assert (Q.chi, Q.end_label) == (1, 3)
    assert best_label(t) == 3
    with pytest.raises(UnreachableStateError):
        reconstruct(t, 1)


def test_reconstruct_detects_broken_links():
    t = DPStateTable.empty(3)
    t.chi[2, 2], t.prev_index[2, 2], t.prev_label[2, 2] = 0, 1, 3
    with pytest.raises(UnreachableStateError):
        reconstruct(t, 2)


def test_state_table_links_reach_the_start():
    P = Polyline.from_points(random_simple(np.random.default_rng(2), 14))
    t = solve(P)
    for s in (1, 2, 3):
        for i in range(P.n):
            if not t.reached(s, i):
                continue
            lab, at, steps = s, i, 0
            while at != 0:
                lab, at = int(t.prev_label[lab, at]), int(t.prev_index[lab, at])
                steps += 1
            assert lab == 1
            assert steps <= P.n


def test_memory_grows_linearly():
    def peak(n):
        xy = np.column_stack([np.arange(n, dtype=float), np.sin(np.arange(n) * 0.7)])
        P = Polyline.from_points(xy)
        simplify(P)
        tracemalloc.start()
        simplify(P)
        _, top = tracemalloc.get_traced_memory()
        tracemalloc.stop()
        return top

    small, large = peak(300), peak(1200)
    assert large < 6 * small
