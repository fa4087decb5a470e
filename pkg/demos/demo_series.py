"""Generating functions with exact rational coefficients and the singularity
exponents read off from their large-order behavior."""

from melonlab import (
    fit_singularity, q_pole_series, ratio_radius_estimate, resummed_H,
    singular_point, solve_H_empty, solve_H1, weighted_H,
)

D = 2
order = 256

H = solve_H_empty(D, order)
print("H = 1 + z H^D, first coefficients:", [int(c) for c in H.coeffs[:9]])
print(f"singular point z0 = {singular_point(D)}")

for name, s, predicted in (
    ("H (no marks)", H, -0.5),
    ("one marked vertex", weighted_H(D, order, 1), 0.5),
    ("two marked vertices", weighted_H(D, order, 2), 1.5),
    ("one marked edge pair", solve_H1(D, order), 2.0),
):
    fit = fit_singularity(s, D)
    print(f"  {name:24s} exponent {fit.exponent:+.4f} (predicted {predicted:+.1f})")

print("\nresummed families shift the exponent by 3/2 per extra index:")
print(f"  (1,):  {fit_singularity(resummed_H(D, order, (1,)), D).exponent:+.4f}"
      " (predicted +2.0)")
print(f"  (2,):  {fit_singularity(resummed_H(D, order, (2,)), D).exponent:+.4f}"
      " (predicted +3.5)")

ratio = ratio_radius_estimate(q_pole_series(D, order))
print(f"\npole family radius: 1/z0 estimate {ratio:.4f} (exact 4)")
