"""
Simplifying a smooth signal
===========================

The crossing measure counts how often a simplified curve changes sides
relative to the data it replaces. On a noise-free signal there are few
sign changes to find, so the optimal simplification is tiny.
"""

import numpy as np

from polycross import Polyline, SolverConfig, simplify
from polycross.io import gen_signal, render_svg

# y = x^2 + 10 sin(x), sampled at 101 points on [-10, 10]
data = gen_signal(101)
P = Polyline.from_points(data.xy, mode="monotone")

Q = simplify(P, SolverConfig(mode="monotone"))
print("kept vertices:", P.raw_indices(Q.indices))
print("size:", Q.size, " crossings:", Q.chi)

# where the data sits relative to each kept segment
knots = P.xy[list(Q.indices)]
fit = np.interp(data.x, knots[:, 0], knots[:, 1])
signs = np.sign(data.y - fit).astype(int)
print("residual signs:", "".join({-1: "-", 0: "0", 1: "+"}[s] for s in signs))

print("points covered by each kept segment:", np.diff(Q.indices).tolist())

with open("clean_signal.svg", "w") as fh:
    fh.write(render_svg(data.xy, knots, title="clean signal"))
print("wrote clean_signal.svg")
