import numpy as np
import pytest

from polycross.bootstrap import (
    ZeroIterationsError,
    bootstrap_ensemble,
    nearest_rank,
    residuals_of,
)
from polycross.geometry import NotMonotoneError
from polycross.io import add_noise, gen_signal
from polycross.solver import simplify

ZIGZAG = np.array([(0, 0), (1, 1), (2, -1), (3, 1), (4, 0)], dtype=float)


def test_residuals_of_zigzag():
    Q = simplify(ZIGZAG)
    assert Q.indices == (0, 4)
    r = residuals_of(ZIGZAG, Q)
    assert r.values.tolist() == [0, 1, -1, 1, 0]
    assert r.median == 0
    assert r.centered.tolist() == [0, 1, -1, 1, 0]


def test_residuals_are_centred_on_the_median():
    xy = np.array([(0, 0), (1, 1), (2, 2), (3, 3.5), (4, 4)], dtype=float)
    Q = simplify(xy)
    r = residuals_of(xy, Q)
    assert np.median(r.centered) == 0
    np.testing.assert_allclose(r.values - r.centered, r.median)


def test_nearest_rank():
    v = np.arange(1.0, 11.0)[:, None]
    assert nearest_rank(v, 5)[0] == 1
    assert nearest_rank(v, 50)[0] == 5
    assert nearest_rank(v, 95)[0] == 10
    assert nearest_rank(v, 100)[0] == 10


def _noisy(n=101, seed=3):
    return add_noise(gen_signal(n), "normal", seed).xy


def test_same_seed_same_bytes():
    xy = _noisy()
    a = bootstrap_ensemble(xy, 12, seed=7)
    b = bootstrap_ensemble(xy, 12, seed=7)
    assert a.to_bytes() == b.to_bytes()
    c = bootstrap_ensemble(xy, 12, seed=8)
    assert a.to_bytes() != c.to_bytes()


def test_workers_do_not_change_the_result():
    xy = _noisy()
    a = bootstrap_ensemble(xy, 10, seed=1, workers=1)
    b = bootstrap_ensemble(xy, 10, seed=1, workers=4)
    assert a.to_bytes() == b.to_bytes()


def test_band_is_ordered():
    s = bootstrap_ensemble(_noisy(), 30, seed=2)
    assert np.all(s.p5_curve <= s.median_curve)
    assert np.all(s.median_curve <= s.p95_curve)
    assert s.x.shape == s.median_curve.shape == (101,)
    assert len(s.per_iteration) == 30


def test_exact_fit_is_a_fixed_point():
    # zero residuals: every perturbed copy equals the input
    xy = np.column_stack([np.arange(20.0), 3.0 * np.arange(20.0) - 2.0])
    s = bootstrap_ensemble(xy, 5, seed=0)
    for curve in (s.p5_curve, s.median_curve, s.p95_curve):
        np.testing.assert_array_equal(curve, xy[:, 1])


def test_small_pool_limits_the_band():
    # the pool is {-1, 0, 1} around a straight base fit, so every curve
    # stays within one unit of it at the sample points
    s = bootstrap_ensemble(ZIGZAG, 20, seed=5)
    assert np.all(np.abs(s.p95_curve) <= 2)
    assert np.all(np.abs(s.p5_curve) <= 2)


def test_more_noise_widens_the_band():
    base = gen_signal(101)
    widths = []
    for scale in (1.0, 4.0):
        d = add_noise(base, "normal", 11)
        xy = d.xy.copy()
        xy[:, 1] = base.xy[:, 1] + scale * (d.xy[:, 1] - base.xy[:, 1])
        s = bootstrap_ensemble(xy, 25, seed=0)
        widths.append(float(np.mean(s.p95_curve - s.p5_curve)))
    assert widths[1] > widths[0]


def test_bad_arguments():
    with pytest.raises(ZeroIterationsError):
        bootstrap_ensemble(ZIGZAG, 0, seed=0)
    with pytest.raises(ValueError):
        bootstrap_ensemble(ZIGZAG, 3, seed=0, percentiles=(90, 10))
    with pytest.raises(NotMonotoneError):
        bootstrap_ensemble([(0, 0), (1, 1), (0, 2)], 3, seed=0)


def test_to_dict_keys():
    d = bootstrap_ensemble(ZIGZAG, 3, seed=0).to_dict()
    assert set(d) == {"x", "median", "low", "high", "percentiles", "iterations", "seed", "per_iteration", "base"}
