"""Random walks on the graphs encoded by colored trees.

Exact side: 2x2 matrices of first-return/first-transit generating functions
between the two marked external vertices, built bottom-up over the tree, and
a transfer-matrix occupation oracle on the explicit graph.  Monte Carlo
side: return-probability curves on large closed graphs and the spectral
dimension read off their log-log slope.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .core import MelonGraph, MelonTree, _check_dim, build_melon_graph
from .sampler import (
    make_rng,
    sample_simple_melon_arrays,
    sample_uniform_tree_arrays,
)
from .series import TruncatedSeries


@dataclass
class ProbMatrix2:
    """2x2 matrix of generating functions between the two external vertices;
    index o = entry side, b = exit side."""

    oo: TruncatedSeries
    ob: TruncatedSeries
    bo: TruncatedSeries
    bb: TruncatedSeries

    @property
    def order(self) -> int:
        return self.oo.order

    def as_tuple(self):
        return (self.oo, self.ob, self.bo, self.bb)


def _mat_mul(A, B):
    a, b, c, d = A
    e, f, g, h = B
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _mat_add(A, B):
    return tuple(x + y for x, y in zip(A, B))


def _mat_scale(A, s):
    return tuple(x * s for x in A)


def _mat_inv(A):
    a, b, c, d = A
    det = a * d - b * c
    inv = det.inverse()
    return (d * inv, -b * inv, -c * inv, a * inv)


def _zero(order):
    return TruncatedSeries.constant(0, order)


def _one(order):
    return TruncatedSeries.constant(1, order)


def _line_matrix(order) -> tuple:
    """First-transit matrix of the bare line: one step across, weight y."""
    y = TruncatedSeries.x(order)
    z = _zero(order)
    return (z, y, y, z)


def first_return_matrix(tree: MelonTree, order: int) -> ProbMatrix2:
    """First-return/first-transit matrix of the open graph of a tree.

    Built bottom-up: at a node of color c, the slot-c sub-melon extends the
    chain carrying the external color while the other D slots dress the
    internal edges; trajectories that re-enter the dressed pair are resummed
    by a 2x2 inverse.  Entries are exact truncated series in the step
    weight y.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    D = tree.dim
    line = _line_matrix(order)
    one = _one(order)
    zero = _zero(order)
    y = TruncatedSeries.x(order)
    memo = {}
    for t in reversed(list(tree.preorder())):
        c = tree.colors[t]
        sub0 = memo.get(tree.children[t][c], line)
        others = [
            memo.get(tree.children[t][k], line)
            for k in range(D + 1)
            if k != c
        ]
        s_oo, s_ob, s_bo, s_bb = sub0
        # entries of the matrix to invert: (D+1) - sum of the side melons
        # - the oo corner of the chain melon
        m_oo = (D + 1) - sum(o[0] for o in others) - s_oo
        m_ob = -sum(o[1] for o in others)
        m_bo = -sum(o[2] for o in others)
        m_bb = (D + 1) - sum(o[3] for o in others)
        core = _mat_inv((m_oo, m_ob, m_bo, m_bb))
        left = (zero, y, s_bo, zero)       # E12 y + E22 sub0 E11
        right = (zero, s_ob, y, zero)      # y E21 + E11 sub0 E22
        outer = (zero, zero, zero, s_bb)   # E22 sub0 E22
        memo[t] = _mat_add(outer, _mat_mul(left, _mat_mul(core, right)))
    return ProbMatrix2(*memo[0])


def elementary_return_matrix(dim: int, order: int) -> ProbMatrix2:
    """Closed form for the one-node tree: common factor
    y^2/(D+1) / (1 - D^2 y^2 / (D+1)^2), off-diagonal dressed by D y/(D+1)."""
    _check_dim(dim)
    y = TruncatedSeries.x(order)
    ratio = Fraction(dim, dim + 1)
    common = (y * y * Fraction(1, dim + 1)) / (1 - (y * y) * ratio * ratio)
    off = y * ratio
    return ProbMatrix2(common, common * off, common * off, common)


def return_matrix(p1: ProbMatrix2) -> ProbMatrix2:
    """All-returns matrix (1 - P1)^(-1) by the 2x2 cofactor formula."""
    a, b, c, d = p1.as_tuple()
    one = _one(p1.order)
    return ProbMatrix2(*_mat_inv((one - a, -b, -c, one - d)))


def lambda_simple(tree: MelonTree, y):
    """Eigenvalue recursion for simple trees: lambda = y^2 / (D + 1 - sum of
    the D sub-values), empty slots contributing y.  Accepts a Fraction/float
    or a TruncatedSeries for y."""
    if not tree.is_simple():
        raise ValueError("lambda recursion is defined for simple trees only")
    D = tree.dim

    def base():
        return y

    memo = {}
    for t in reversed(list(tree.preorder())):
        c = tree.colors[t]
        total = None
        for k in range(D + 1):
            if k == c:
                continue
            u = tree.children[t][k]
            val = base() if u == -1 else memo[u]
            total = val if total is None else total + val
        memo[t] = (y * y) / ((D + 1) - total)
    return memo[0]


def h_value(tree: MelonTree, mode: str = "at_one", order: int = 16):
    """h-function of a simple tree: h = (1 + y + S)/(1 + (1 - y) S) with S
    the sum of the D sub-values (bare line: 1).

    mode "at_one" returns the exact Fraction h(1) = 2 + S(1); mode "series"
    returns the truncated expansion in y about 0.
    """
    if not tree.is_simple():
        raise ValueError("h recursion is defined for simple trees only")
    D = tree.dim
    if mode == "at_one":
        memo = {}
        for t in reversed(list(tree.preorder())):
            c = tree.colors[t]
            s = sum(
                memo.get(tree.children[t][k], Fraction(1))
                for k in range(D + 1)
                if k != c
            )
            memo[t] = 2 + s
        return memo[0]
    if mode != "series":
        raise ValueError("mode must be 'at_one' or 'series'")
    y = TruncatedSeries.x(order)
    one = _one(order)
    memo = {}
    for t in reversed(list(tree.preorder())):
        c = tree.colors[t]
        s = _zero(order)
        for k in range(D + 1):
            if k == c:
                continue
            u = tree.children[t][k]
            s = s + (one if u == -1 else memo[u])
        memo[t] = (1 + y + s) / (1 + (one - y) * s)
    return memo[0]


# ---------------------------------------------------------------------------
# exact occupation oracle on the explicit graph


def exact_walk_distribution(graph: MelonGraph, t_max: int, start: int,
                            exact: bool = True):
    """Occupation probabilities of the simple random walk (uniform over
    incident edges, multiplicity counted) for t = 0..t_max.

    Returns a list of per-time lists of length n_vertices; exact mode uses
    Fractions, float mode numpy.
    """
    if not 0 <= start < graph.n_vertices:
        raise ValueError(f"start vertex {start} out of range")
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    nv = graph.n_vertices
    incid = [[] for _ in range(nv)]
    for u, v, _ in graph.edges:
        incid[u].append(v)
        incid[v].append(u)
    if exact:
        p = [Fraction(0)] * nv
        p[start] = Fraction(1)
        out = [list(p)]
        for _ in range(t_max):
            q = [Fraction(0)] * nv
            for v in range(nv):
                pv = p[v]
                if pv:
                    share = pv / len(incid[v])
                    for w in incid[v]:
                        q[w] += share
            p = q
            out.append(list(p))
        return out
    mat = np.zeros((nv, nv))
    for v in range(nv):
        for w in incid[v]:
            mat[w, v] += 1.0 / len(incid[v])
    p = np.zeros(nv)
    p[start] = 1.0
    out = [p.copy()]
    for _ in range(t_max):
        p = mat @ p
        out.append(p.copy())
    return [list(row) for row in out]


# ---------------------------------------------------------------------------
# Monte Carlo return curves and the spectral dimension


@dataclass
class ReturnCurve:
    dim: int
    n: int
    ensemble: str
    times: list          # even times
    probs: list
    stderrs: list
    graphs: int
    walkers: int


def _thread_count() -> int:
    raw = os.environ.get("MELONLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def simulate_return_curve(
    dim: int,
    n: int,
    t_max: int,
    walkers: int,
    graphs: int,
    seed: int,
    ensemble: str = "general",
) -> ReturnCurve:
    """Return probability P(t) averaged over random closed graphs of 2n
    vertices and uniform start vertices; odd times are identically 0 and are
    not reported."""
    _check_dim(dim)
    if ensemble not in ("general", "simple"):
        raise ValueError("ensemble must be 'general' or 'simple'")
    if min(n, t_max, walkers, graphs) < 1:
        raise ValueError("n, t_max, walkers, graphs must be >= 1")
    totals = np.zeros((graphs, t_max + 1), dtype=np.int64)

    def one(g: int) -> None:
        rng = make_rng(seed, ("walk", g))
        if ensemble == "general":
            colors, _, children = sample_uniform_tree_arrays(dim, n, rng)
        else:
            colors, _, children = sample_simple_melon_arrays(dim, n, rng)
        nbr = _kernels.closed_neighbors(colors, children, dim)
        starts = rng.integers(0, 2 * n, size=walkers, dtype=np.int64)
        rsteps = rng.integers(0, dim + 1, size=(walkers, t_max), dtype=np.uint8)
        _kernels.walk_return_hits(nbr, starts, rsteps, totals[g])

    threads = _thread_count()
    if threads == 1:
        for g in range(graphs):
            one(g)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(one, range(graphs)))
    times = list(range(0, t_max + 1, 2))
    per_graph = totals[:, times] / walkers
    probs = [float(x) for x in per_graph.mean(axis=0)]
    if graphs > 1:
        ses = per_graph.std(axis=0, ddof=1) / math.sqrt(graphs)
    else:
        p = np.asarray(probs)
        ses = np.sqrt(np.maximum(p * (1 - p), 0.0) / walkers)
    return ReturnCurve(
        dim, n, ensemble, times, probs, [float(x) for x in ses], graphs, walkers
    )


def auto_window(curve: ReturnCurve, t_lo: int = 16, curvature_tol: float = 0.02):
    """Default fit window [t_lo, min(1024, t_max)], with the upper end halved
    while the quadratic curvature of log P against log t exceeds the
    tolerance (finite-size bend guard)."""
    t_hi = min(1024, curve.times[-1])
    while t_hi > 4 * t_lo:
        ts, ps = _window_points(curve, t_lo, t_hi)
        if len(ts) >= 6:
            coef = np.polyfit(np.log(ts), np.log(ps), 2)
            if abs(2.0 * coef[0]) < curvature_tol:
                break
        t_hi //= 2
    return t_lo, t_hi


def _window_points(curve: ReturnCurve, t_lo: int, t_hi: int):
    ts, ps = [], []
    for t, p in zip(curve.times, curve.probs):
        if t_lo <= t <= t_hi and t > 0 and p > 0:
            ts.append(t)
            ps.append(p)
    return np.asarray(ts, dtype=float), np.asarray(ps, dtype=float)


@dataclass
class SpectralFit:
    d_s: float
    d_s_err: float
    window: tuple
    slope: float


def estimate_spectral_dimension(curve: ReturnCurve, window=None) -> SpectralFit:
    """Spectral dimension from -2 * slope of log P(t) against log t over even
    times in the fit window (auto-selected when not given)."""
    if window is None:
        window = auto_window(curve)
    t_lo, t_hi = window
    if t_hi < 4 * t_lo:
        raise ValueError("fit window must span at least a factor 4 in t")
    ts, ps = _window_points(curve, t_lo, t_hi)
    if len(ts) < 4:
        raise ValueError("not enough positive return probabilities in window")
    coef, cov = np.polyfit(np.log(ts), np.log(ps), 1, cov=True)
    slope = float(coef[0])
    err = 2.0 * float(np.sqrt(max(cov[0, 0], 0.0)))
    return SpectralFit(-2.0 * slope, err, (t_lo, t_hi), slope)


def open_graph_of(tree: MelonTree) -> MelonGraph:
    return build_melon_graph(tree, closed=False)
