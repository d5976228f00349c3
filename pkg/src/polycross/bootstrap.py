"""Parameterless residual bootstrap around the crossing-maximal fit.

The data are fitted once. Residuals against that fit are centred on their
median and form a fixed pool. Each iteration subtracts a resampled pool
value from every y, refits, and evaluates the new fit on the original x
grid. The ensemble is summarised pointwise by its median and nearest-rank
percentiles.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from polycross.geometry import Kind, NotMonotoneError, Polyline
from polycross.oracle import Simplification
from polycross.solver import SolverConfig, simplify

__all__ = [
    "ResidualSet",
    "BootstrapSummary",
    "ZeroIterationsError",
    "residuals_of",
    "nearest_rank",
    "bootstrap_ensemble",
]


class ZeroIterationsError(ValueError):
    pass


@dataclass(frozen=True)
class ResidualSet:
    values: np.ndarray
    median: float
    centered: np.ndarray


@dataclass(frozen=True)
class BootstrapSummary:
    """Pointwise ensemble statistics over the input x grid."""

    x: np.ndarray
    median_curve: np.ndarray
    low_curve: np.ndarray
    high_curve: np.ndarray
    percentiles: tuple[float, float]
    iterations: int
    seed: int
    per_iteration: tuple[tuple[int, int], ...]
    base: Simplification

    @property
    def p5_curve(self) -> np.ndarray:
        return self.low_curve

    @property
    def p95_curve(self) -> np.ndarray:
        return self.high_curve

    def to_dict(self) -> dict:
        return {
            "x": self.x.tolist(),
            "median": self.median_curve.tolist(),
            "low": self.low_curve.tolist(),
            "high": self.high_curve.tolist(),
            "percentiles": list(self.percentiles),
            "iterations": self.iterations,
            "seed": self.seed,
            "per_iteration": [list(v) for v in self.per_iteration],
            "base": {"indices": list(self.base.indices), "chi": self.base.chi, "size": self.base.size},
        }

    def to_bytes(self) -> bytes:
        """Canonical byte form, for exact reproducibility checks."""
        parts = [np.ascontiguousarray(a, dtype="<f8").tobytes()
                 for a in (self.x, self.median_curve, self.low_curve, self.high_curve)]
        meta = repr((self.percentiles, self.iterations, self.seed, self.per_iteration, self.base)).encode()
        return b"".join(parts) + meta


def _monotone(P) -> Polyline:
    if not isinstance(P, Polyline):
        P = Polyline.from_points(P, mode="monotone")
    if P.kind is not Kind.MONOTONE:
        raise NotMonotoneError("the bootstrap needs strictly monotone x")
    return P


def _fit_curve(P: Polyline, Q: Simplification) -> np.ndarray:
    knots = P.xy[list(Q.indices)]
    return np.interp(P.raw[:, 0], knots[:, 0], knots[:, 1])


def residuals_of(P, Q: Simplification) -> ResidualSet:
    """Vertical residuals of every input point against the fit, plus their median."""
    P = _monotone(P)
    values = P.raw[:, 1] - _fit_curve(P, Q)
    med = float(np.median(values))
    return ResidualSet(values, med, values - med)


def nearest_rank(sorted_values: np.ndarray, pct: float) -> np.ndarray:
    """Nearest-rank percentile along axis 0 of an already sorted ensemble."""
    N = sorted_values.shape[0]
    k = max(1, math.ceil(pct / 100.0 * N))
    return sorted_values[k - 1]


def _iterate(P: Polyline, pool: np.ndarray, seed: int, t: int, cfg: SolverConfig):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, t])))
    x = P.raw[:, 0]
    y = P.raw[:, 1] - pool[rng.integers(0, len(pool), len(pool))]
    Pt = Polyline.from_points(np.column_stack([x, y]), mode="monotone")
    Qt = simplify(Pt, cfg)
    return _fit_curve(Pt, Qt), (Qt.chi, Qt.size)


def bootstrap_ensemble(P, iterations: int, seed: int, percentiles: tuple[float, float] = (5.0, 95.0),
                       workers: int = 1, cfg: SolverConfig | None = None) -> BootstrapSummary:
    """Run the residual bootstrap.

    Iteration ``t`` draws from its own stream seeded by ``(seed, t)``, so
    the result is identical for any ``workers``.
    """
    if iterations < 1:
        raise ZeroIterationsError("need at least one iteration")
    lo, hi = percentiles
    if not 0 < lo <= hi <= 100:
        raise ValueError(f"bad percentiles {percentiles}")
    P = _monotone(P)
    cfg = cfg or SolverConfig(mode="monotone")
    base = simplify(P, cfg)
    pool = residuals_of(P, base).centered

    def run(t):
        return _iterate(P, pool, seed, t, cfg)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(run, range(iterations)))
    else:
        results = [run(t) for t in range(iterations)]
    curves = np.sort(np.stack([c for c, _ in results]), axis=0)
    return BootstrapSummary(
        x=P.raw[:, 0].copy(),
        median_curve=np.median(curves, axis=0),
        low_curve=nearest_rank(curves, lo),
        high_curve=nearest_rank(curves, hi),
        percentiles=(float(lo), float(hi)),
        iterations=iterations,
        seed=seed,
        per_iteration=tuple(m for _, m in results),
        base=base,
    )
