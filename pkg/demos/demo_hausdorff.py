"""Depth scaling: mean depth grows like sqrt(n), i.e. Hausdorff dimension 2,
and the ball depth is lambda_delta times the tree depth."""

import numpy as np

from melonlab import fit_loglog, lambda_delta, mc_depth_samples

D = 2
sizes = [2**k for k in range(10, 15)]
stats = mc_depth_samples(D, sizes, reps=100, seed=1)

print(f"{'n':>8} {'tree depth':>12} {'ball depth':>12} {'ball/tree':>10}")
for n in sizes:
    tm, te, bm, be = stats[n]
    print(f"{n:>8} {tm:>12.1f} {bm:>12.1f} {bm / tm:>10.4f}")

tree_fit = fit_loglog(sizes, [stats[n][0] for n in sizes])
ball_fit = fit_loglog(sizes, [stats[n][2] for n in sizes])
print(f"\ntree-depth exponent: {tree_fit.exponent:.4f} (1/2 expected, d_H = 2)")
print(f"ball-depth exponent: {ball_fit.exponent:.4f}")

slope = float(np.polyfit([stats[n][0] for n in sizes],
                         [stats[n][2] for n in sizes], 1)[0])
print(f"ball depth vs tree depth slope: {slope:.5f}")
print(f"lambda_delta(D={D}) = {lambda_delta(D)} = {float(lambda_delta(D)):.5f}")
