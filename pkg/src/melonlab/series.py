"""Exact truncated power series and singularity analysis.

The generating function H(z) of simple trees solves H = 1 + z H^D; weighted
variants attach powers of the vertex count (D+1)N + 1 to each tree, and the
first depth-moment series H1 satisfies a linear equation in these.  All
series here are truncated polynomials with exact rational coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import _check_dim, count_simple_melons


class TruncatedSeries:
    """Polynomial truncated at a fixed order, exact Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        elif not cs:
            cs = [Fraction(0)]
        self.coeffs = cs

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedSeries":
        return cls([value], order)

    @classmethod
    def x(cls, order: int) -> "TruncatedSeries":
        return cls([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries([other], self.order)

    def __add__(self, other):
        o = self._coerce(other)
        n = min(self.order, o.order)
        return TruncatedSeries([self[k] + o[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = Fraction(other)
            return TruncatedSeries([x * c for x in self.coeffs])
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = Fraction(1) / a0
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                aj = self[j]
                if aj:
                    acc += aj * out[k - j]
            out[k] = -acc / a0
        return TruncatedSeries(out)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def shift(self, k: int = 1) -> "TruncatedSeries":
        """Multiply by z^k."""
        return TruncatedSeries([Fraction(0)] * k + self.coeffs[: self.order + 1 - k])

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, order)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            return all(self[k] == other[k] for k in range(n + 1))
        return NotImplemented

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order > 5 else ""
        return f"TruncatedSeries([{head}{tail}], order={self.order})"

    def __call__(self, value):
        acc = Fraction(0) if isinstance(value, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc


def solve_H_empty(dim: int, order: int) -> TruncatedSeries:
    """Series solution of H = 1 + z H^D with constant term 1, by Newton
    iteration with doubling precision."""
    _check_dim(dim)
    if order < 0:
        raise ValueError("order must be >= 0")
    H = TruncatedSeries([1], 0)
    prec = 0
    while prec < order:
        prec = min(2 * prec + 1, order)
        H = H.truncate(prec)
        z = TruncatedSeries.x(prec)
        resid = H - 1 - z * H ** dim
        deriv = 1 - dim * z * H ** (dim - 1)
        H = H - resid / deriv
    return H


def weighted_H(dim: int, order: int, p: int) -> TruncatedSeries:
    """Series with coefficient ((D+1)N + 1)^p * (number of simple trees with
    N nodes); p = 0 recovers the plain counting series."""
    _check_dim(dim)
    if p < 0:
        raise ValueError("p must be >= 0")
    coeffs = [
        ((dim + 1) * N + 1) ** p * count_simple_melons(dim, N)
        for N in range(order + 1)
    ]
    return TruncatedSeries(coeffs)


def _vertex_weight(dim: int, series: TruncatedSeries) -> TruncatedSeries:
    """Multiply the N-th coefficient by (D+1)N + 1."""
    return TruncatedSeries(
        [((dim + 1) * N + 1) * c for N, c in enumerate(series.coeffs)]
    )


def solve_H1(dim: int, order: int) -> TruncatedSeries:
    """First depth-moment series: coefficient N is the sum of h'(1) over all
    simple trees with N nodes (0 at N = 0).

    Obtained by series division from the linear relation satisfied by H1 in
    terms of H, the vertex-weighted series and the squared-weight series.
    """
    _check_dim(dim)
    H = solve_H_empty(dim, order)
    H0 = weighted_H(dim, order, 1)
    H00 = weighted_H(dim, order, 2)
    z = TruncatedSeries.x(order)
    Hd1 = H ** (dim - 1)
    rhs = (
        (H - 1)
        + 2 * dim * (z * H0 * Hd1)
        + dim * (dim - 1) * (z * H0 * H0 * H ** (dim - 2))
        + dim * (z * H00 * Hd1)
    )
    den = 1 - dim * (z * Hd1)
    return rhs / den


def resummed_H(dim: int, order: int, depth_orders: tuple) -> TruncatedSeries:
    """Leading-singularity resummation of higher depth-moment series.

    Only the index lists (1,) and (2,) are supported; these are consistency
    checks of the singular exponents, not exact coefficient generators.
    """
    _check_dim(dim)
    H = solve_H_empty(dim, order)
    z = TruncatedSeries.x(order)
    Hd1 = H ** (dim - 1)
    den = 1 - dim * (z * Hd1)
    if tuple(depth_orders) == (1,):
        H00 = weighted_H(dim, order, 2)
        return dim * (z * Hd1 * H00) / den
    if tuple(depth_orders) == (2,):
        H01 = _vertex_weight(dim, solve_H1(dim, order))
        return 4 * dim * (z * Hd1 * H01) / den
    raise ValueError("only depth-order lists (1,) and (2,) are supported")


def q_pole_series(dim: int, order: int) -> TruncatedSeries:
    """Series sum_p z^p (simple-tree count) / ((D+1)p + 1); its radius of
    convergence is the tree-counting singularity."""
    _check_dim(dim)
    return TruncatedSeries(
        [
            Fraction(count_simple_melons(dim, p), (dim + 1) * p + 1)
            for p in range(order + 1)
        ]
    )


def singular_point(dim: int) -> Fraction:
    """Radius of convergence of the simple-tree series: (D-1)^(D-1) / D^D."""
    _check_dim(dim)
    return Fraction((dim - 1) ** (dim - 1), dim ** dim)


@dataclass
class ExponentFit:
    z0: Fraction
    exponent: float        # a in c_N ~ z0^-N N^(a-1)
    exponent_err: float
    n_used: int

    @property
    def u_exponent(self) -> float:
        """Power of (1 - z/z0) in the singular part of the series."""
        return -self.exponent


def _ratio_sequence(coeffs, z0: Fraction):
    """r_N = N (c_{N+1} z0 / c_N - 1) wherever both coefficients are nonzero."""
    out = {}
    for N in range(1, len(coeffs) - 1):
        a, b = Fraction(coeffs[N]), Fraction(coeffs[N + 1])
        if a != 0 and b != 0:
            out[N] = float(b * z0 / a - 1) * N
    return out


def fit_singularity(series, dim: int) -> ExponentFit:
    """Estimate the power-law exponent of the coefficients against the known
    singular point, with one Richardson extrapolation step on the ratio
    sequence."""
    coeffs = series.coeffs if isinstance(series, TruncatedSeries) else list(series)
    if len(coeffs) < 16:
        raise ValueError("need at least 16 coefficients to fit")
    z0 = singular_point(dim)
    r = _ratio_sequence(coeffs, z0)
    rich = {N: 2 * r[2 * N] - r[N] for N in sorted(r) if 2 * N in r}
    if len(rich) < 2:
        raise ValueError("not enough nonzero coefficients for the ratio fit")
    ns = sorted(rich)
    a = 1 + rich[ns[-1]]
    tail = [1 + rich[N] for N in ns[-3:]]
    err = max(abs(t - a) for t in tail) + 1e-12
    return ExponentFit(z0, a, err, ns[-1])


def ratio_radius_estimate(series) -> float:
    """Extrapolated limit of c_{p+1}/c_p (reciprocal radius of convergence)."""
    coeffs = series.coeffs if isinstance(series, TruncatedSeries) else list(series)
    ratios = {}
    for N in range(1, len(coeffs) - 1):
        a, b = Fraction(coeffs[N]), Fraction(coeffs[N + 1])
        if a != 0:
            ratios[N] = float(b / a)
    ns = [N for N in sorted(ratios) if 2 * N in ratios]
    if not ns:
        raise ValueError("not enough coefficients")
    N = ns[-1]
    return 2 * ratios[2 * N] - ratios[N]


def per_tree_h_derivatives(tree, max_n: int) -> tuple:
    """Derivatives (h, h', ..., h^(max_n)) at y = 1 of the h-function of a
    simple tree, from the bottom-up recursion
    h = (1 + y + S) / (1 + (1 - y) S), S = sum of the D sub-values
    (empty slots count 1)."""
    if not 0 <= max_n <= 4:
        raise ValueError("max_n must be between 0 and 4")
    if not tree.is_simple():
        raise ValueError("h derivatives are defined for simple trees only")
    D = tree.dim
    one = [Fraction(1)] + [Fraction(0)] * max_n  # bare-line value as eps-series

    def combine(child_series) -> list:
        S = [sum(cs[k] for cs in child_series) for k in range(max_n + 1)]
        A = list(S)
        A[0] += 2
        if max_n >= 1:
            A[1] += 1
        B = [Fraction(0)] * (max_n + 1)
        B[0] = Fraction(1)
        for k in range(1, max_n + 1):
            B[k] = -S[k - 1]
        # h = A / B as truncated series in eps = y - 1
        h = [Fraction(0)] * (max_n + 1)
        for k in range(max_n + 1):
            acc = A[k]
            for j in range(1, k + 1):
                acc -= B[j] * h[k - j]
            h[k] = acc  # B[0] == 1
        return h

    memo = {}
    for t in reversed(list(tree.preorder())):
        kids = []
        c = tree.colors[t]
        for slot in range(D + 1):
            if slot == c:
                continue
            u = tree.children[t][slot]
            kids.append(one if u == -1 else memo[u])
        memo[t] = combine(kids)
    root = memo[0]
    return tuple(root[k] * math.factorial(k) for k in range(max_n + 1))
