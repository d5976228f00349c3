"""Crossing-maximal polyline simplification and a residual bootstrap built on it."""

from polycross.batch import BatchResult, batch_crossings_monotone, batch_crossings_simple, topo_order_chains
from polycross.bootstrap import BootstrapSummary, bootstrap_ensemble, residuals_of
from polycross.chains import angular_ranks, chain_segment_crossing, decompose_chains
from polycross.geometry import (
    DuplicatePointError,
    Kind,
    NotMonotoneError,
    NotSimpleError,
    Orientation,
    Polyline,
    PolylineError,
    TooFewPointsError,
    merge_collinear,
    orientation,
)
from polycross.io import add_noise, gen_signal, read_csv, render_svg
from polycross.junction import SideLabel, compute_turn_neighbors, label_junction
from polycross.oracle import Simplification, bruteforce_optimal, crossing_measure_general, crossing_measure_monotone
from polycross.solver import SolverConfig, reconstruct, simplify, solve

__version__ = "0.1.0"
