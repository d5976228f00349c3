"""Datasets, synthetic signals, CSV/JSON reports and SVG rendering."""

from __future__ import annotations

import csv
import io as _io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

__all__ = [
    "Dataset",
    "RunReport",
    "ParseError",
    "NonFiniteValueError",
    "gen_signal",
    "add_noise",
    "read_csv",
    "parse_csv",
    "write_csv",
    "write_report",
    "render_svg",
]


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NonFiniteValueError(ParseError):
    pass


@dataclass(frozen=True)
class Dataset:
    """(n, 2) float points with a note on where they came from."""

    xy: np.ndarray
    provenance: str = ""

    def __len__(self) -> int:
        return len(self.xy)

    @property
    def x(self) -> np.ndarray:
        return self.xy[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.xy[:, 1]


@dataclass
class RunReport:
    n: int
    kind: str
    indices: list[int]
    chi: int
    size: int
    end_label: int
    mode: str = "auto"
    max_span: int | None = None
    seed: int | None = None
    seconds: float = 0.0
    input_indices: list[int] = field(default_factory=list)
    points: list[list[float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        return {
            "input": {"n": d["n"], "kind": d["kind"]},
            "result": {
                "indices": d["input_indices"] or d["indices"],
                "merged_indices": d["indices"],
                "chi": d["chi"],
                "size": d["size"],
                "end_label": d["end_label"],
                "points": d["points"],
            },
            "config": {"mode": d["mode"], "max_span": d["max_span"], "seed": d["seed"]},
            "timing": {"seconds": d["seconds"]},
        }


def gen_signal(n: int) -> Dataset:
    """``y = x**2 + 10 sin x`` at ``n`` equally spaced x in [-10, 10], both ends included."""
    if n < 2:
        raise ValueError("need at least two points")
    x = np.linspace(-10.0, 10.0, n)
    return Dataset(np.column_stack([x, x * x + 10.0 * np.sin(x)]), f"parabola-sine n={n}")


def add_noise(d: Dataset, model: str = "normal", seed: int = 0) -> Dataset:
    """Add standard normal noise to y; ``heavy`` scales a random tenth of it by 10."""
    rng = np.random.default_rng(seed)
    n = len(d)
    noise = rng.standard_normal(n)
    if model == "heavy":
        k = round(0.1 * n)  # 10 of 101, not ceil's 11
        noise[rng.choice(n, size=k, replace=False)] *= 10.0
    elif model != "normal":
        raise ValueError(f"unknown noise model {model!r}")
    xy = d.xy.copy()
    xy[:, 1] += noise
    return Dataset(xy, f"{d.provenance}; {model} noise seed={seed}")


def parse_csv(text: str, source: str = "<string>") -> Dataset:
    """Parse ``x,y`` lines; an optional non-numeric first row is a header, ``#`` starts a comment."""
    rows = []
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in next(csv.reader([line]))]
        if len(parts) != 2:
            raise ParseError(lineno, f"expected 2 fields, got {len(parts)}")
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError:
            if first and not any(_looks_numeric(p) for p in parts):
                first = False
                continue
            raise ParseError(lineno, f"not a number pair: {line!r}") from None
        first = False
        if not (math.isfinite(x) and math.isfinite(y)):
            raise NonFiniteValueError(lineno, "non-finite value")
        rows.append((x, y))
    return Dataset(np.array(rows, dtype=float).reshape(-1, 2), source)


def _looks_numeric(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def read_csv(path) -> Dataset:
    path = Path(path)
    return parse_csv(path.read_text(), str(path))


def write_csv(d: Dataset, path=None) -> str:
    """Write ``x,y`` rows with shortest round-trip decimals; returns the text."""
    lines = ["x,y"] + [f"{x!r},{y!r}" for x, y in d.xy.tolist()]
    text = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def write_report(report: RunReport, format: str = "json") -> str:
    if format == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if format == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "x", "y"])
        idx = report.input_indices or report.indices
        for k, (x, y) in zip(idx, report.points):
            w.writerow([k, repr(x), repr(y)])
        return buf.getvalue()
    raise ValueError(f"unknown format {format!r}")


_W, _H, _PAD = 800, 500, 20


def render_svg(P, Q=None, envelope=None, title: str = "") -> str:
    """Deterministic SVG of the polyline, its simplification and an optional band.

    ``Q`` is an (k, 2) array of simplification vertices. ``envelope`` is
    ``(x, median, low, high)``.
    """
    P = np.asarray(P, dtype=float)
    layers = [P]
    if Q is not None:
        layers.append(np.asarray(Q, dtype=float))
    if envelope is not None:
        ex, med, lo, hi = (np.asarray(a, dtype=float) for a in envelope)
        layers += [np.column_stack([ex, lo]), np.column_stack([ex, hi])]
    allp = np.vstack(layers)
    x0, y0 = allp.min(axis=0)
    x1, y1 = allp.max(axis=0)
    sx = (_W - 2 * _PAD) / ((x1 - x0) or 1.0)
    sy = (_H - 2 * _PAD) / ((y1 - y0) or 1.0)

    def d(pts, close=False):
        coords = [f"{_PAD + (x - x0) * sx:.3f},{_H - _PAD - (y - y0) * sy:.3f}" for x, y in pts]
        return "M" + " L".join(coords) + (" Z" if close else "")

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    if envelope is not None:
        band = np.vstack([np.column_stack([ex, lo]), np.column_stack([ex, hi])[::-1]])
        out.append(f'<path class="band" d="{d(band, True)}" fill="#9ecae1" fill-opacity="0.5" stroke="none"/>')
        out.append(f'<path class="median" d="{d(np.column_stack([ex, med]))}" fill="none" stroke="#08519c" stroke-width="1.5"/>')
    out.append(f'<path class="input" d="{d(P)}" fill="none" stroke="#777777" stroke-width="1"/>')
    if Q is not None:
        out.append(f'<path class="simplification" d="{d(layers[1])}" fill="none" stroke="#cb181d" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
