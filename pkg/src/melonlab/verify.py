"""One-shot verification suite.

Each check returns a CheckResult; the CLI `verify` verb prints one line per
check and exits 2 when any fails.  The quick tier covers the exact
identities (< 30 s); the full tier adds the Monte Carlo and large-order
acceptance runs.  The acceptance test suite calls the same functions at
full scale, so thresholds live here in one place.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import core, coverage, depth, sampler, series, walks


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


def _res(name, ok, detail="") -> CheckResult:
    return CheckResult(name, bool(ok), detail)


# --- 1: worked example -----------------------------------------------------

WORKED_LETTERS = (1, 0, 1, 3, 2, 1, 2, 0, 3, 1, 2)
WORKED_DEPTHS = (0, 1, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4)
WORKED_ARRAYS = (
    (0, 1, 1, 1), (0, 1, 1, 1), (2, 1, 1, 1), (2, 2, 1, 1), (2, 2, 1, 2),
    (2, 2, 3, 2), (2, 3, 3, 2), (2, 3, 3, 2), (3, 3, 3, 2), (3, 3, 3, 4),
    (3, 4, 3, 4), (3, 4, 4, 4),
)
WORKED_DIVISION = [(0,), (1,), (0, 1, 3), (2, 1, 2, 0), (3, 1, 2)]


def check_worked_example() -> CheckResult:
    w = core.ColoredWord.standard(WORKED_LETTERS, 3)
    d, trace = depth.depth_via_array(w, trace=True)
    arrays = tuple(a.entries for a in trace)
    depths = tuple(depth.depth_via_array(p) for p in w.prefixes())
    div = depth.depth_via_subwords(w)
    ok = (
        d == 4
        and depths == WORKED_DEPTHS
        and arrays == WORKED_ARRAYS
        and div.blocks() == WORKED_DIVISION
        and div.depth == 4
    )
    return _res("worked-example", ok, f"depth={d} depths={depths}")


# --- 2: depth vs stack comparison table ------------------------------------

CMP_LETTERS = (3, 1, 2) * 6 + (3,)
CMP_DEPTH = (1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 10, 10)
CMP_STACK = (1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5, 5, 6, 6, 6, 7, 7, 7)


def check_comparison_table() -> CheckResult:
    alpha = (1, 2, 3)
    got_d, got_s = [], []
    for k in range(1, 20):
        w = core.ColoredWord(1, CMP_LETTERS[:k], alpha)
        got_d.append(depth.depth_via_array(w))
        got_s.append(depth.stack_depth(w))
    ok = tuple(got_d) == CMP_DEPTH and tuple(got_s) == CMP_STACK
    return _res("depth-vs-stack-table", ok, f"depth={got_d} stack={got_s}")


# --- 3: surjection identity + Pascal inverse --------------------------------


def check_surjection_identity(n_max: int = 14, q_max: int = 8,
                              pascal_q: int = 12) -> CheckResult:
    for n in range(n_max + 1):
        for q in range(q_max + 1):
            if coverage.s_multinomial(n, q) != coverage.s_multinomial_direct(n, q):
                return _res("surjection-identity", False, f"n={n} q={q}")
    for q in range(1, pascal_q + 1):
        if not coverage.pascal_inverse_check(q):
            return _res("surjection-identity", False, f"pascal q={q}")
    return _res("surjection-identity", True, f"n<={n_max} q<={q_max}, pascal q<={pascal_q}")


# --- 4: completion-density constants ----------------------------------------

LAMBDA_EXACT = {2: Fraction(2, 9), 3: Fraction(3, 22), 4: Fraction(12, 125)}


def check_lambda_exact() -> CheckResult:
    ok = all(coverage.lambda_delta(D) == v for D, v in LAMBDA_EXACT.items())
    norm = all(
        sum(coverage.coverage_probability(n, q, D) for q in range(D + 2)) == 1
        for D in (2, 3, 4, 5, 6)
        for n in range(21)
    )
    return _res("lambda-delta-exact", ok and norm, str(dict(LAMBDA_EXACT)))


def check_lambda_mc(n: int = 10**6, reps: int = 50, seed: int = 2024) -> CheckResult:
    details = []
    ok = True
    for D in (2, 3):
        est = coverage.mc_lambda_ratio(D, n, reps, seed)
        target = float(coverage.lambda_delta(D))
        dev = abs(est.mean - target)
        ok = ok and dev <= 3 * est.stderr
        details.append(f"D={D} mean={est.mean:.7f} target={target:.7f} se={est.stderr:.2e}")
    return _res("lambda-delta-mc", ok, "; ".join(details))


# --- 5: counting vs enumeration ---------------------------------------------


def check_counting(n_max: int = 6) -> CheckResult:
    for D in (2, 3):
        for n in range(1, n_max + 1):
            if core.count_colored_trees(D, n) > 10**5:
                continue
            if len(core.enumerate_trees(D, n)) != core.count_colored_trees(D, n):
                return _res("counting", False, f"general D={D} n={n}")
            if len(core.enumerate_simple_melons(D, n)) != core.count_simple_melons(D, n):
                return _res("counting", False, f"simple D={D} n={n}")
    return _res("counting", True, f"D in 2,3; n <= {n_max}")


# --- 6: BFS depth oracle and pair brackets ----------------------------------


def _bfs_from(sk, src):
    dist = [-1] * sk.n_vertices
    dist[src] = 0
    q = deque([src])
    while q:
        v = q.popleft()
        for w in sk.adj[v]:
            if dist[w] == -1:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def check_depth_oracle(trees: int = 500, n_max: int = 2000,
                       pairs: int = 10**4, seed: int = 11) -> CheckResult:
    rng = sampler.make_rng(seed)
    pair_budget = pairs
    pairs_per_tree = max(1, pairs // trees)
    for i in range(trees):
        D = 2 if i % 2 == 0 else 3
        n = int(rng.integers(1, n_max + 1))
        t = sampler.sample_uniform_tree(D, n, sampler.make_rng(seed, (i,)))
        sk = core.build_ball_skeleton(t)
        bd = depth.bfs_depths(sk)
        for v in range(t.n):
            if bd[sk.node_vertex[v]] != depth.depth_via_array(core.word_of(t, v)):
                return _res("depth-oracle", False, f"tree {i} node {v}")
        if any(bd[u] != 1 for u in range(1, D + 1)):
            return _res("depth-oracle", False, f"tree {i}: boundary depth != 1")
        if n >= 2 and pair_budget > 0:
            srcs = {}
            for _ in range(min(pairs_per_tree, pair_budget)):
                a, b = (int(x) for x in rng.integers(0, n, 2))
                if a == b:
                    continue
                pair_budget -= 1
                est, lo, hi = depth.pair_distance_bracket(t, a, b)
                va, vb = sk.node_vertex[a], sk.node_vertex[b]
                if va not in srcs:
                    srcs[va] = _bfs_from(sk, va)
                d = srcs[va][vb]
                if not (lo <= d <= hi) or hi - lo > 8:
                    return _res("depth-oracle", False,
                                f"bracket tree {i} pair ({a},{b}): d={d} not in [{lo},{hi}]")
    return _res("depth-oracle", True, f"{trees} trees, {pairs - pair_budget} pairs")


# --- 7: depth scaling --------------------------------------------------------


def check_depth_scaling(dim: int = 2, reps: int = 200, seed: int = 4242,
                        k_lo: int = 10, k_hi: int = 16) -> CheckResult:
    sizes = [2**k for k in range(k_lo, k_hi + 1)]
    stats = coverage.mc_depth_samples(dim, sizes, reps, seed)
    tm = [stats[s][0] for s in sizes]
    bm = [stats[s][2] for s in sizes]
    ft = coverage.fit_loglog(sizes, tm)
    fb = coverage.fit_loglog(sizes, bm)
    slope = float(np.polyfit(tm, bm, 1)[0])
    lam = float(coverage.lambda_delta(dim))
    ok = (
        abs(ft.exponent - 0.5) <= 0.03
        and abs(fb.exponent - 0.5) <= 0.03
        and abs(slope / lam - 1) <= 0.02
    )
    detail = (f"tree_exp={ft.exponent:.4f} ball_exp={fb.exponent:.4f} "
              f"ratio={slope:.5f} lambda={lam:.5f} rel_dev={slope/lam-1:+.4%}")
    return _res("depth-scaling", ok, detail)


# --- 8: walk algebra ----------------------------------------------------------


def check_walk_algebra(trees: int = 50, t_max: int = 20, seed: int = 5150) -> CheckResult:
    for D in (2, 3, 4):
        p1 = walks.first_return_matrix(core.elementary_tree(D), 2 * t_max)
        ref = walks.elementary_return_matrix(D, 2 * t_max)
        if p1.as_tuple() != ref.as_tuple():
            return _res("walk-algebra", False, f"elementary closed form D={D}")
    rng = sampler.make_rng(seed)
    for i in range(trees):
        D = 2 if i % 2 == 0 else 3
        n = int(rng.integers(1, 9))
        t = sampler.sample_uniform_tree(D, n, sampler.make_rng(seed, (i,)))
        p1 = walks.first_return_matrix(t, t_max)
        if p1.ob != p1.bo:
            return _res("walk-algebra", False, f"symmetry tree {i}")
        P = walks.return_matrix(p1)
        g = core.build_melon_graph(t, closed=False)
        dist = walks.exact_walk_distribution(g, t_max, g.ext_in, exact=True)
        for tt in range(t_max + 1):
            if dist[tt][g.ext_in] != P.oo[tt] or dist[tt][g.ext_out] != P.ob[tt]:
                return _res("walk-algebra", False, f"oracle tree {i} t={tt}")
    return _res("walk-algebra", True, f"{trees} trees, t <= {t_max}")


# --- 9: h and lambda identities -----------------------------------------------


def check_h_lambda(melons: int = 1000, seed: int = 616) -> CheckResult:
    rng = sampler.make_rng(seed)
    for i in range(melons):
        D = 2 if i % 2 == 0 else 3
        p = int(rng.integers(1, 65))
        t = sampler.sample_simple_melon(D, p, sampler.make_rng(seed, (i,)))
        if not t.is_simple():
            return _res("h-lambda", False, f"melon {i} not simple")
        if walks.h_value(t) != (D + 1) * p + 1:
            return _res("h-lambda", False, f"h(1) melon {i}")
        if i < 30:
            p1 = walks.first_return_matrix(t, 12)
            lam = walks.lambda_simple(t, series.TruncatedSeries.x(12))
            if not (p1.oo == p1.bb and p1.ob == p1.bo):
                return _res("h-lambda", False, f"a+b*sigma form melon {i}")
            if lam != p1.oo + p1.ob:
                return _res("h-lambda", False, f"eigenvalue melon {i}")
    return _res("h-lambda", True, f"{melons} sampled simple melons")


# --- 10: series exponents ------------------------------------------------------

SERIES_TARGETS = {"Hempty": -0.5, "H0": 0.5, "H00": 1.5, "H1": 2.0}


def series_by_name(dim: int, order: int, target: str) -> series.TruncatedSeries:
    if target == "Hempty":
        return series.solve_H_empty(dim, order)
    if target == "H0":
        return series.weighted_H(dim, order, 1)
    if target == "H00":
        return series.weighted_H(dim, order, 2)
    if target == "H1":
        return series.solve_H1(dim, order)
    raise ValueError(f"unknown series target {target!r}")


def check_series_exponents(order: int = 512, tol: float = 0.05) -> CheckResult:
    details = []
    ok = True
    for target, pred in SERIES_TARGETS.items():
        f = series.fit_singularity(series_by_name(2, order, target), 2)
        ok = ok and abs(f.exponent - pred) <= tol
        details.append(f"{target}: a={f.exponent:.4f} (pred {pred})")
    ratio = series.ratio_radius_estimate(series.q_pole_series(2, order))
    ok = ok and abs(ratio * float(series.singular_point(2)) - 1) <= 0.005
    details.append(f"qpole 1/z0={ratio:.5f}")
    return _res("series-exponents", ok, "; ".join(details))


# --- 11: spectral dimension -----------------------------------------------------


def check_spectral_synthetic() -> CheckResult:
    times = list(range(0, 2050, 2))
    for power, want in ((-2.0 / 3.0, 4.0 / 3.0), (-1.0, 2.0)):
        probs = [1.0] + [t**power for t in times[1:]]
        curve = walks.ReturnCurve(2, 64, "general", times, probs,
                                  [0.0] * len(times), 1, 1)
        fit = walks.estimate_spectral_dimension(curve, window=(16, 1024))
        if abs(fit.d_s - want) > 1e-9:
            return _res("spectral-synthetic", False, f"P=t^{power}: {fit.d_s}")
    return _res("spectral-synthetic", True, "t^-2/3 -> 4/3, t^-1 -> 2")


def check_spectral_mc(n: int = 2**15, t_max: int = 2048, walkers: int = 100,
                      graphs: int = 1000, seed: int = 99) -> CheckResult:
    details = []
    ok = True
    for D in (2, 3):
        curve = walks.simulate_return_curve(D, n, t_max, walkers, graphs, seed)
        fit = walks.estimate_spectral_dimension(curve)
        ok = ok and 1.23 <= fit.d_s <= 1.43
        details.append(f"D={D} d_S={fit.d_s:.4f}+-{fit.d_s_err:.4f} window={fit.window}")
    return _res("spectral-mc", ok, "; ".join(details))


# --- 12: sampler uniformity -------------------------------------------------------


def check_uniformity(seed: int = 808, per_object: int = 2000) -> CheckResult:
    from scipy import stats as sps

    cases = [
        ("general", 2, 3, core.count_colored_trees(2, 3)),
        ("general", 2, 4, core.count_colored_trees(2, 4)),
        ("general", 3, 3, core.count_colored_trees(3, 3)),
        ("general", 3, 4, core.count_colored_trees(3, 4)),
        ("simple", 2, 3, core.count_simple_melons(2, 3)),
        ("simple", 3, 3, core.count_simple_melons(3, 3)),
    ]
    details = []
    ok = True
    for kind, D, n, objects in cases:
        if objects > 200:
            continue
        total = per_object * objects
        counts = {}
        rng = sampler.make_rng(seed, (kind, D, n))
        for _ in range(total):
            t = (sampler.sample_uniform_tree(D, n, rng) if kind == "general"
                 else sampler.sample_simple_melon(D, n, rng))
            key = core.serialize_tree(t)
            counts[key] = counts.get(key, 0) + 1
        obs = list(counts.values()) + [0] * (objects - len(counts))
        _, p = sps.chisquare(obs)
        ok = ok and p > 1e-3 and len(counts) == objects
        details.append(f"{kind} D={D} n={n}: p={p:.4f}")
    # Galton-Watson criticality: mean offspring over node draws
    rng = sampler.make_rng(seed, ("gw",))
    for D in (2, 3):
        draws = 10**5
        xi = np.where(rng.random(draws) < 1 / (D + 1), D + 1, 0)
        mean = float(xi.mean())
        sigma = math.sqrt(D / draws)
        ok = ok and abs(mean - 1.0) <= 3 * sigma
        details.append(f"gw D={D}: mean={mean:.4f}")
    return _res("uniformity", ok, "; ".join(details))


# --- tiers ---------------------------------------------------------------------


def quick_checks(seed: int = 0) -> list:
    return [
        check_worked_example(),
        check_comparison_table(),
        check_surjection_identity(),
        check_lambda_exact(),
        check_counting(n_max=5),
        check_depth_oracle(trees=60, n_max=400, pairs=1500, seed=11),
        check_walk_algebra(trees=12, t_max=12),
        check_h_lambda(melons=120),
        check_series_exponents(order=160, tol=0.1),
        check_spectral_synthetic(),
    ]


def full_checks(seed: int = 0) -> list:
    return [
        check_worked_example(),
        check_comparison_table(),
        check_surjection_identity(),
        check_lambda_exact(),
        check_lambda_mc(),
        check_counting(),
        check_depth_oracle(),
        check_depth_scaling(),
        check_walk_algebra(),
        check_h_lambda(),
        check_series_exponents(),
        check_spectral_synthetic(),
        check_spectral_mc(),
        check_uniformity(),
    ]
