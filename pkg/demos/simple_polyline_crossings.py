"""
Crossings on a polyline that is not a function graph
====================================================

For a curve that doubles back, residuals are undefined, but crossings
still are. Here a noisy spiral is simplified and the total is split into
crossings inside kept segments and side changes at the kept vertices.
"""

import numpy as np

from polycross import Polyline, simplify
from polycross.io import render_svg
from polycross.oracle import segment_crossings

rng = np.random.default_rng(3)
t = np.linspace(0.0, 3.0 * np.pi, 60)
r = 1.0 + 0.3 * t
xy = np.column_stack([r * np.cos(t), r * np.sin(t)]) + 0.05 * rng.standard_normal((60, 2))

P = Polyline.from_points(xy)
print("kind:", P.kind.value)

Q = simplify(P)
print("size:", Q.size, " crossings:", Q.chi)

pts = P.xy.tolist()
inside = 0
for a, b in zip(Q.indices, Q.indices[1:]):
    c = segment_crossings(pts, a, b)
    inside += c
    print(f"  segment {a:>2} -> {b:>2}: {c} crossings")
print("inside segments:", inside, " at kept vertices:", Q.chi - inside)

# rotating, shearing or mirroring the input does not change the answer
M = np.array([[2.0, 1.0], [0.0, -1.0]])
moved = simplify(xy @ M.T)
print("after an affine map:", moved.size, "vertices,", moved.chi, "crossings")

with open("spiral.svg", "w") as fh:
    fh.write(render_svg(P.xy, P.xy[list(Q.indices)], title="spiral"))
print("wrote spiral.svg")
