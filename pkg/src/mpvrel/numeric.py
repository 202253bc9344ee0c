"""Floating-point evaluation of multiple polylogarithm values.

Two independent methods:

* ``path``: iterated integrals along [0, 1], split into segments on which
  every integrand has a convergent Taylor expansion with ratio <= 1/2;
  segment series are combined with the path composition law.
* ``series``: nested partial sums of the defining series with a
  least-squares fit of the tail asymptotics in 1/K and log K.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lincomb import LinComb
from .words import (
    E1,
    ZERO,
    alphabet,
    composition_to_word,
    is_convergent_composition,
    is_convergent_word,
    shuffle_regularize,
    word_to_composition,
)

DEFAULT_ORDER = 64


@dataclass(frozen=True)
class NumericResult:
    value: complex
    est_error: float
    method: str


def root(a, N):
    return cmath.exp(2j * math.pi * a / N)


def _integrate(series):
    """Antiderivative vanishing at 0, truncated to the same length."""
    out = np.zeros_like(series)
    out[1:] = series[:-1] / np.arange(1, len(series))
    return out


def _mul(a, b):
    return np.convolve(a, b)[: len(a)]


def _geometric(c, ratio, K):
    """Coefficients of c / (1 - ratio*u) = c * sum (ratio u)^k."""
    return c * ratio ** np.arange(K + 1)


class PathEvaluator:
    """All convergent word values up to ``max_weight`` at level ``N``."""

    def __init__(self, N, max_weight, order=DEFAULT_ORDER):
        self.N = N
        self.max_weight = max_weight
        self.order = order
        self.points = self._breakpoints()
        self._values = self._compute(order)
        self._check = self._compute(order - 16) if order > 24 else None

    def _singular(self):
        return [0j] + [root(a, self.N) for a in range(self.N)]

    def _radius(self, z):
        return min(abs(z - s) for s in self._singular() if abs(z - s) > 1e-15)

    def _breakpoints(self):
        first = 0.5 * self._radius(0.0)
        r1 = min([1.0] + [abs(1 - root(a, self.N)) for a in range(1, self.N)])
        last = 1.0 - 0.5 * r1
        pts = [0.0, min(first, last)]
        while pts[-1] < last - 1e-15:
            a = pts[-1]
            pts.append(min(a + 0.5 * self._radius(a), last))
        pts.append(1.0)
        return pts

    # each segment returns {word: I(segment; word)}

    def _form(self, x, centre, K, sign=1.0):
        """Taylor coefficients of the form for letter x at ``centre``.

        ``sign=-1`` expands in sigma = centre - z (used at z = 1).
        """
        s = 0j if x == ZERO else root(x, self.N)
        d = centre - s
        # 1/(z - s) with z = centre + sign*u
        return _geometric(1.0 / d, -sign / d, K)

    def _segment_at_zero(self, t, K):
        W = self.max_weight
        ser = {(): np.eye(1, K + 1, dtype=complex)[0]}
        frontier = [()]
        for _ in range(W):
            nxt = []
            for v in frontier:
                fv = ser[v]
                for x in alphabet(self.N):
                    if x == ZERO:
                        if not v:
                            continue
                        # f_v(z)/z, f_v(0) = 0
                        g = np.zeros_like(fv)
                        g[:-1] = fv[1:]
                    else:
                        g = _mul(self._form(x, 0j, K), fv)
                    w = (x,) + v
                    ser[w] = _integrate(g)
                    nxt.append(w)
            frontier = nxt
        powers = t ** np.arange(K + 1)
        return {w: complex(np.dot(s, powers)) for w, s in ser.items()}

    def _segment_regular(self, a, b, K):
        W = self.max_weight
        ser = {(): np.eye(1, K + 1, dtype=complex)[0]}
        frontier = [()]
        forms = {x: self._form(x, complex(a), K) for x in alphabet(self.N)}
        for _ in range(W):
            nxt = []
            for v in frontier:
                for x in alphabet(self.N):
                    w = (x,) + v
                    ser[w] = _integrate(_mul(forms[x], ser[v]))
                    nxt.append(w)
            frontier = nxt
        powers = (b - a) ** np.arange(K + 1)
        return {w: complex(np.dot(s, powers)) for w, s in ser.items()}

    def _segment_at_one(self, t, K):
        W = self.max_weight
        sigma = 1.0 - t
        ser = {(): np.eye(1, K + 1, dtype=complex)[0]}
        frontier = [()]
        for _ in range(W):
            nxt = []
            for u in frontier:
                gu = ser[u]
                for y in alphabet(self.N):
                    if not u and y == E1:
                        continue
                    if y == E1:
                        # 1/(z-1) = -1/sigma, g_u(0) = 0
                        g = np.zeros_like(gu)
                        g[:-1] = -gu[1:]
                    else:
                        # 1/(z - s), z = 1 - sigma, in powers of sigma
                        g = _mul(self._form(y, 1.0 + 0j, K, sign=-1.0), gu)
                    w = u + (y,)
                    ser[w] = _integrate(g)
                    nxt.append(w)
            frontier = nxt
        powers = sigma ** np.arange(K + 1)
        return {w: complex(np.dot(s, powers)) for w, s in ser.items()}

    def _compute(self, K):
        pts = self.points
        segs = [self._segment_at_zero(pts[1], K)]
        for a, b in zip(pts[1:-2], pts[2:-1]):
            segs.append(self._segment_regular(a, b, K))
        segs.append(self._segment_at_one(pts[-2], K))
        out = {}
        for w in self._words():
            out[w] = self._compose(w, segs)
        return out

    def _words(self):
        import itertools

        for n in range(self.max_weight + 1):
            for w in itertools.product(alphabet(self.N), repeat=n):
                if is_convergent_word(w):
                    yield w

    @staticmethod
    def _compose(w, segs):
        # I(0->1) = I(seg_m) ... I(seg_1); leftmost factor is the last segment
        n = len(w)
        # vals[i]: value of suffix w[i:] through the segments processed so far
        vals = [0j] * n + [1.0 + 0j]
        for seg in segs:
            new = [0j] * (n + 1)
            for i in range(n + 1):
                acc = 0j
                for j in range(i, n + 1):
                    c = seg.get(w[i:j])
                    if c is not None and vals[j]:
                        acc += c * vals[j]
                new[i] = acc
            vals = new
        return vals[0]

    def value(self, w):
        w = tuple(w)
        if not is_convergent_word(w):
            raise ValueError(f"divergent word {w!r}")
        if len(w) > self.max_weight:
            raise ValueError("word exceeds evaluator weight")
        return self._values[w]

    def error(self, w):
        if self._check is None:
            return float("nan")
        w = tuple(w)
        return abs(self._values[w] - self._check[w]) + 1e-15


@lru_cache(maxsize=32)
def path_evaluator(N, max_weight, order=DEFAULT_ORDER):
    return PathEvaluator(N, max_weight, order)


def eval_word(w, N, target_err=1e-12):
    w = tuple(w)
    if not is_convergent_word(w):
        raise ValueError(f"divergent word {w!r} has no direct numeric value")
    ev = path_evaluator(N, max(len(w), 1))
    err = ev.error(w)
    return NumericResult(ev.value(w), err, "path")


def eval_composition_series(c, N, K=1 << 21, n_fit=24):
    """Series oracle with tail extrapolation (independent of ``path``)."""
    c = tuple(c)
    if not is_convergent_composition(c):
        raise ValueError("divergent composition")
    if not c:
        return NumericResult(1.0 + 0j, 0.0, "series")
    # cumulative sums along k_1
    k = np.arange(K + 1, dtype=float)
    inner = None
    for s, a in reversed(c):
        ph = np.exp(2j * math.pi * ((a * np.arange(K + 1)) % N) / N)
        with np.errstate(divide="ignore", invalid="ignore"):
            term = ph / k ** s
        term[0] = 0
        if inner is not None:
            term = term * inner
        inner = np.concatenate(([0j], np.cumsum(term)[:-1]))
    partial = inner  # partial[K'] = sum over k_1 < K'
    depth = len(c)
    Ks = np.unique(
        (np.geomspace(K // 64, K, n_fit) // N * N).astype(np.int64)
    )
    Ks = Ks[Ks > 0]
    y = partial[Ks]

    def fit(J, L):
        cols = [np.ones(len(Ks))]
        for j in range(1, J + 1):
            for l in range(L + 1):
                cols.append(np.log(Ks) ** l / Ks.astype(float) ** j)
        A = np.array(cols).T
        scale = np.abs(A).max(axis=0)
        sol_r = np.linalg.lstsq(A / scale, y.real, rcond=None)[0]
        sol_i = np.linalg.lstsq(A / scale, y.imag, rcond=None)[0]
        return complex(sol_r[0] / scale[0], sol_i[0] / scale[0])

    L = depth - 1
    v1 = fit(3, L)
    v2 = fit(4, L)
    return NumericResult(v1, abs(v1 - v2) + 1e-13, "series")


def eval_composition(c, N, target_err=1e-12, method="path"):
    c = tuple(c)
    if not is_convergent_composition(c):
        raise ValueError(f"divergent composition {c!r}")
    if method == "series":
        return eval_composition_series(c, N)
    sign, w = composition_to_word(c, N)
    r = eval_word(w, N, target_err)
    return NumericResult(sign * r.value, r.est_error, "path")


def eval_lincomb(lc, N):
    """Numeric value of a LinComb of words (divergent words regularized)."""
    lc = shuffle_regularize(lc)
    if not lc:
        return 0j
    W = max(len(w) for w in lc)
    ev = path_evaluator(N, max(W, 1))
    return sum(complex(v) * ev.value(w) for w, v in lc.items())


def eval_composition_lincomb(lc, N):
    out = LinComb()
    for c, v in lc.items():
        sign, w = composition_to_word(c, N)
        out.add_term(w, sign * v)
    return eval_lincomb(out, N)


def check_relation(r, N, tol=1e-8):
    """Evaluate a word LinComb; returns ``(passed, |residual|)``."""
    res = abs(eval_lincomb(r, N))
    return res < tol, res


def dch_numeric(N, max_weight):
    """Regularized coefficients of dch for every word up to ``max_weight``."""
    import itertools

    ev = path_evaluator(N, max(max_weight, 1))
    out = {}
    for n in range(max_weight + 1):
        for w in itertools.product(alphabet(N), repeat=n):
            reg = shuffle_regularize(w)
            out[w] = sum(complex(v) * ev.value(x) for x, v in reg.items())
    return out


def word_value(w, N):
    """Numeric regularized value of any word."""
    return eval_lincomb(LinComb.term(tuple(w)), N)


__all__ = [
    "NumericResult",
    "PathEvaluator",
    "check_relation",
    "dch_numeric",
    "eval_composition",
    "eval_composition_series",
    "eval_lincomb",
    "eval_word",
    "word_to_composition",
]
