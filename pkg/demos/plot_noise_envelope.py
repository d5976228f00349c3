"""
A confidence band from resampled residuals
==========================================

Adding noise makes the data cross any smooth curve many times, and the
optimal simplification grows to follow it. The residual bootstrap then
re-fits perturbed copies of the data and reports a pointwise band.
There is no smoothing parameter to tune at any step.
"""

import numpy as np

from polycross import bootstrap_ensemble, simplify
from polycross.io import add_noise, gen_signal, render_svg

clean = gen_signal(101)

# how the optimum responds to noise, over a few seeds
for model in ("normal", "heavy"):
    chis, sizes = [], []
    for seed in range(10):
        Q = simplify(add_noise(clean, model, seed).xy)
        chis.append(Q.chi)
        sizes.append(Q.size)
    print(f"{model:>6} noise: mean crossings {np.mean(chis):.1f}, mean size {np.mean(sizes):.1f}")

noisy = add_noise(clean, "normal", 0)
s = bootstrap_ensemble(noisy.xy, iterations=90, seed=0)
print("base fit:", s.base.size, "vertices,", s.base.chi, "crossings")

width = s.p95_curve - s.p5_curve
print(f"band width: median {np.median(width):.2f}, max {width.max():.2f}")

# how often the true curve lies inside the band
inside = np.mean((clean.y >= s.p5_curve) & (clean.y <= s.p95_curve))
print(f"true curve inside the band at {100 * inside:.0f}% of the points")

env = (s.x, s.median_curve, s.p5_curve, s.p95_curve)
knots = noisy.xy[list(s.base.indices)]
with open("noise_envelope.svg", "w") as fh:
    fh.write(render_svg(noisy.xy, knots, env, title="bootstrap band"))
print("wrote noise_envelope.svg")
