"""Truncated noncommutative series with symbolic coefficients.

A coefficient is a LinComb over words, read as a combination of the
symbols c(w) (the coefficients of dch).  Because dch is group-like, a
product of symbols c(u) c(v) is the sum of c(w) over the shuffle of u and
v, so every coefficient stays linear in the symbols.

Series are lazy: ``coefficient(word)`` computes and memoizes on demand.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

from .lincomb import LinComb
from .words import E1, ZERO, alphabet, shuffle, shuffle_power, shuffle_regularize


class TruncatedSeries:
    """Base class.  Subclasses implement ``_compute(word)``."""

    group_like = False

    def __init__(self, max_weight, letters):
        self.max_weight = max_weight
        self.letters = list(letters)
        self._cache = {}

    def coefficient(self, w):
        w = tuple(w)
        if len(w) > self.max_weight:
            raise ValueError(f"word {w!r} exceeds truncation {self.max_weight}")
        c = self._cache.get(w)
        if c is None:
            c = self._compute(w)
            self._cache[w] = c
        return c

    def _compute(self, w):
        raise NotImplementedError

    def words(self, weight=None):
        ws = range(self.max_weight + 1) if weight is None else [weight]
        for n in ws:
            yield from itertools.product(self.letters, repeat=n)

    def items(self, weight=None):
        for w in self.words(weight):
            c = self.coefficient(w)
            if c:
                yield w, c

    def __mul__(self, other):
        return Product(self, other)

    def inverse(self):
        return Antipode(self)

    def substitute(self, sub):
        return Substituted(self, sub)


class Explicit(TruncatedSeries):
    """A series given by a finite dict ``{word: LinComb or scalar}``."""

    def __init__(self, max_weight, letters, coeffs, group_like=False):
        super().__init__(max_weight, letters)
        self._data = {}
        for w, c in coeffs.items():
            if len(w) <= max_weight:
                self._data[tuple(w)] = c if isinstance(c, dict) else LinComb.term((), c)
        self.group_like = group_like

    def _compute(self, w):
        return LinComb(self._data.get(w, {}))


class GenericDch(TruncatedSeries):
    """dch with symbolic coefficients c(w); c(e_0) = c(e_1) = 0 eagerly."""

    group_like = True

    def __init__(self, max_weight, N):
        super().__init__(max_weight, alphabet(N))
        self.N = N

    def _compute(self, w):
        if len(w) == 1 and w[0] in (ZERO, E1):
            return LinComb()
        return LinComb.term(w)


class ExpLetter(TruncatedSeries):
    """exp(s x) for a letter ``x`` and a scalar ``s`` (LinComb of words)."""

    group_like = True

    def __init__(self, s, x, max_weight, letters):
        super().__init__(max_weight, letters)
        self.s = LinComb(s) if isinstance(s, dict) else LinComb.term((), s)
        self.x = x

    def _compute(self, w):
        if any(y != self.x for y in w):
            return LinComb()
        k = len(w)
        return shuffle_power(self.s, k).scale(Fraction(1, factorial(k)))


class Product(TruncatedSeries):
    def __init__(self, A, B):
        super().__init__(min(A.max_weight, B.max_weight), A.letters)
        self.A, self.B = A, B
        self.group_like = A.group_like and B.group_like

    def _compute(self, w):
        out = LinComb()
        for i in range(len(w) + 1):
            a = self.A.coefficient(w[:i])
            if not a:
                continue
            b = self.B.coefficient(w[i:])
            if b:
                out.iadd(shuffle(a, b))
        return out


class Antipode(TruncatedSeries):
    """Inverse of a group-like series: c'(w) = (-1)^|w| c(reversed w)."""

    def __init__(self, S):
        super().__init__(S.max_weight, S.letters)
        self.S = S
        self.group_like = S.group_like

    def _compute(self, w):
        c = self.S.coefficient(w[::-1])
        return c if len(w) % 2 == 0 else -c


class LetterSubstitution(dict):
    """``letter -> LinComb over letters``, extended multiplicatively."""

    def __init__(self, mapping):
        super().__init__()
        for x, img in mapping.items():
            self[x] = LinComb(img) if isinstance(img, dict) else LinComb.term(img)

    def preimages(self):
        """``{x: [(y, c)]}`` with c the coefficient of x in the image of y."""
        out = {}
        for y, img in self.items():
            for x, c in img.items():
                out.setdefault(x, []).append((y, c))
        return out

    def image_of_word(self, w):
        out = LinComb.term(())
        for y in w:
            nxt = LinComb()
            for u, c in out.items():
                for x, d in self[y].items():
                    nxt.add_term(u + (x,), c * d)
            out = nxt
        return out

    def compose(self, other):
        """self after other: x -> self(other(x))."""
        out = {}
        for x, img in other.items():
            acc = LinComb()
            for y, c in img.items():
                acc.iadd(self[y], c)
            out[x] = acc
        return LetterSubstitution(out)


class Substituted(TruncatedSeries):
    def __init__(self, S, sub):
        super().__init__(S.max_weight, S.letters)
        self.S = S
        self.sub = sub
        self._pre = sub.preimages()
        self.group_like = S.group_like

    def _compute(self, w):
        out = LinComb()
        choices = [self._pre.get(x, []) for x in w]
        for combo in itertools.product(*choices):
            c = 1
            for _, k in combo:
                c *= k
            out.iadd(self.S.coefficient(tuple(y for y, _ in combo)), c)
        return out


def infinity_letter(N):
    """e_infinity = -(e_0 + sum of all e_zeta)."""
    return LinComb({x: -1 for x in alphabet(N)})


def product(*factors):
    """Left-to-right product of several series."""
    P = factors[-1]
    for f in reversed(factors[:-1]):
        P = Product(f, P)
    return P


def unit_defect(S, weight, regularize=True):
    """Coefficients of S - 1 in one weight, as ``{word: LinComb}``."""
    out = {}
    for w in S.words(weight):
        c = S.coefficient(w)
        if not w:
            c = c - LinComb.term(())
        if regularize:
            c = shuffle_regularize(c)
        if c:
            out[w] = c
    return out


def check_group_like(S, max_weight=None):
    """Verify c(u) c(v) = sum over shuffle(u, v) of c(w), after regularization.

    Returns the list of failing pairs (empty when group-like).
    """
    W = S.max_weight if max_weight is None else max_weight
    bad = []
    for n in range(1, W):
        for m in range(1, W - n + 1):
            for u in S.words(n):
                cu = S.coefficient(u)
                for v in S.words(m):
                    lhs = shuffle_regularize(shuffle(cu, S.coefficient(v))) if cu else LinComb()
                    rhs = LinComb()
                    for w, k in shuffle(u, v).items():
                        rhs.iadd(S.coefficient(w), k)
                    if lhs != shuffle_regularize(rhs):
                        bad.append((u, v))
    return bad
