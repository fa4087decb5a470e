"""Alphabet-coverage combinatorics and the depth-scaling Monte Carlo.

The number of length-n letter sequences using each of q given letters at
least once has the inclusion-exclusion form sum_r (-1)^(q-r) C(q,r) r^n;
from it follow the exact law of the number of distinct letters in a uniform
word and the asymptotic density of alphabet completions, which converts
tree depth into graph depth.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import _kernels
from .core import _check_dim
from .sampler import make_rng, sample_uniform_tree_arrays


def s_multinomial(n: int, q: int) -> int:
    """Number of surjections from n positions onto q letters."""
    if n < 0 or q < 0:
        raise ValueError("n and q must be >= 0")
    if q == 0:
        return 1 if n == 0 else 0
    return sum((-1) ** (q - r) * math.comb(q, r) * r**n for r in range(q + 1))


def s_multinomial_direct(n: int, q: int) -> int:
    """Brute-force check: sum of multinomial coefficients over all
    compositions of n into q parts >= 1."""
    if q == 0:
        return 1 if n == 0 else 0
    if q > n:
        return 0
    total = 0
    fact = math.factorial
    for cuts in combinations(range(1, n), q - 1):
        parts = [b - a for a, b in zip((0,) + cuts, cuts + (n,))]
        term = fact(n)
        for p in parts:
            term //= fact(p)
        total += term
    return total


def pascal_inverse_check(q: int) -> bool:
    """The lower-triangular matrices L[r][s] = C(r,s) and
    P[r][s] = (-1)^(r-s) C(r,s) (1 <= s <= r <= q) are mutually inverse."""
    if q < 1:
        raise ValueError("q must be >= 1")
    L = [[math.comb(r, s) for s in range(1, q + 1)] for r in range(1, q + 1)]
    P = [
        [(-1) ** (r - s) * math.comb(r, s) for s in range(1, q + 1)]
        for r in range(1, q + 1)
    ]

    def mul(A, B):
        return [
            [sum(A[i][k] * B[k][j] for k in range(q)) for j in range(q)]
            for i in range(q)
        ]

    ident = [[1 if i == j else 0 for j in range(q)] for i in range(q)]
    return mul(L, P) == ident and mul(P, L) == ident


def coverage_probability(n: int, q: int, dim: int) -> Fraction:
    """Probability that a uniform word of n letters over an alphabet of
    D + 1 letters uses exactly q distinct ones."""
    _check_dim(dim)
    if n < 0 or q < 0 or q > dim + 1:
        raise ValueError("need n >= 0 and 0 <= q <= D + 1")
    return Fraction(math.comb(dim + 1, q) * s_multinomial(n, q), (dim + 1) ** n)


def lambda_delta(dim: int) -> Fraction:
    """Asymptotic density of alphabet completions in a uniform letter
    stream: the reciprocal of the mean block length."""
    _check_dim(dim)
    inv = (dim + 1) * sum(
        (-1) ** (dim - r) * math.comb(dim, r) * Fraction(r, (dim + 1 - r) ** 2)
        for r in range(dim + 1)
    )
    return 1 / inv


def _thread_count() -> int:
    raw = os.environ.get("MELONLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class MCEstimate:
    mean: float
    stderr: float
    reps: int


def mc_lambda_ratio(dim: int, n: int, reps: int, seed: int) -> MCEstimate:
    """Monte Carlo for (completion depth)/n over uniform words of n letters."""
    _check_dim(dim)
    if n < 1 or reps < 1:
        raise ValueError("n and reps must be >= 1")
    vals = np.empty(reps, dtype=np.float64)

    def one(r: int) -> None:
        rng = make_rng(seed, ("lambda", r))
        letters = rng.integers(0, dim + 1, size=n, dtype=np.int32)
        vals[r] = _kernels.letters_block_depth(letters, dim) / n

    _run_tasks(one, range(reps))
    se = float(vals.std(ddof=1) / math.sqrt(reps)) if reps > 1 else 0.0
    return MCEstimate(float(vals.mean()), se, reps)


def _run_tasks(fn, args) -> None:
    threads = _thread_count()
    if threads == 1:
        for a in args:
            fn(a)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fn, args))


@dataclass
class ScalingFit:
    sizes: list
    means: list
    stderrs: list
    exponent: float
    exponent_err: float
    intercept: float
    excluded_smallest: bool


def fit_loglog(sizes, means, stderrs=None) -> ScalingFit:
    """Least-squares slope of log(mean) against log(size).

    The smallest size is dropped when its residual exceeds three times the
    residual RMS of the remaining points (transient-regime guard).
    """
    sizes = [float(s) for s in sizes]
    means = [float(m) for m in means]
    if len(sizes) < 3:
        raise ValueError("need at least 3 sizes to fit")
    if any(m <= 0 for m in means):
        raise ValueError("means must be positive for a log-log fit")

    def fit(xs, ys):
        coef, cov = np.polyfit(xs, ys, 1, cov=True)
        return coef, cov, ys - np.polyval(coef, xs)

    xs = np.log(np.asarray(sizes))
    ys = np.log(np.asarray(means))
    coef, cov, res = fit(xs, ys)
    excluded = False
    if len(sizes) >= 4:
        sigma = float(np.sqrt(np.mean(res[1:] ** 2)))
        if sigma > 0 and abs(res[0]) > 3 * sigma:
            excluded = True
            coef, cov, res = fit(xs[1:], ys[1:])
    err = float(np.sqrt(max(cov[0, 0], 0.0)))
    return ScalingFit(
        sizes if not excluded else sizes[1:],
        means if not excluded else means[1:],
        list(stderrs or []) if not excluded else list(stderrs or [])[1:],
        float(coef[0]),
        err,
        float(coef[1]),
        excluded,
    )


def mc_depth_samples(dim: int, sizes, reps: int, seed: int) -> dict:
    """For each size, sample `reps` uniform trees and record the tree depth
    and completion depth of one uniformly chosen node per tree.

    Returns {size: (tree_mean, tree_se, ball_mean, ball_se)} with paired
    samples (same trees and nodes for both metrics).
    """
    _check_dim(dim)
    sizes = [int(s) for s in sizes]
    tvals = {s: np.empty(reps) for s in sizes}
    bvals = {s: np.empty(reps) for s in sizes}

    def one(task) -> None:
        si, r = task
        n = sizes[si]
        rng = make_rng(seed, ("depth", si, r))
        colors, parents, _ = sample_uniform_tree_arrays(dim, n, rng)
        v = int(rng.integers(0, n))
        d_tree, d_ball = _kernels.word_depths_of_vertex(parents, colors, v, dim)
        tvals[n][r] = d_tree
        bvals[n][r] = d_ball

    _run_tasks(one, [(si, r) for si in range(len(sizes)) for r in range(reps)])
    out = {}
    for s in sizes:
        t, b = tvals[s], bvals[s]
        out[s] = (
            float(t.mean()),
            float(t.std(ddof=1) / math.sqrt(reps)),
            float(b.mean()),
            float(b.std(ddof=1) / math.sqrt(reps)),
        )
    return out


def mc_depth_scaling(
    dim: int, sizes, reps: int, seed: int, metric: str = "tree"
) -> ScalingFit:
    """Scaling fit of the mean depth of a random node against tree size.

    ``metric`` is "tree" (path length) or "ball" (completion depth); for a
    fixed seed both metrics come from the same trees.
    """
    if metric not in ("tree", "ball"):
        raise ValueError("metric must be 'tree' or 'ball'")
    stats = mc_depth_samples(dim, sizes, reps, seed)
    sizes = sorted(stats)
    if metric == "tree":
        means = [stats[s][0] for s in sizes]
        errs = [stats[s][1] for s in sizes]
    else:
        means = [stats[s][2] for s in sizes]
        errs = [stats[s][3] for s in sizes]
    return fit_loglog(sizes, means, errs)
