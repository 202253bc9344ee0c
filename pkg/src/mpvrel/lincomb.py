"""Sparse linear combinations with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LinComb(dict):
    """A mapping ``symbol -> coefficient`` with no stored zeros.

    Symbols can be anything hashable (words, compositions, bracket pairs).
    Coefficients are ``int`` or ``Fraction``; integral fractions are stored
    as ``int`` so that equality with plain dicts of ints works.
    """

    __slots__ = ()

    def __init__(self, data=None):
        super().__init__()
        if data is None:
            return
        items = data.items() if hasattr(data, "items") else data
        for k, v in items:
            self.add_term(k, v)

    @classmethod
    def term(cls, symbol, coeff=1):
        out = cls()
        out.add_term(symbol, coeff)
        return out

    def add_term(self, symbol, coeff):
        if not coeff:
            return
        v = self.get(symbol, 0) + coeff
        if v:
            self[symbol] = _normalize(v)
        else:
            self.pop(symbol, None)

    def iadd(self, other, scale=1):
        """In-place ``self += scale * other``."""
        if not scale:
            return self
        for k, v in other.items():
            self.add_term(k, scale * v)
        return self

    def copy(self):
        out = LinComb()
        dict.update(out, self)
        return out

    def __add__(self, other):
        return self.copy().iadd(other)

    def __sub__(self, other):
        return self.copy().iadd(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        out = LinComb()
        if c:
            for k, v in self.items():
                dict.__setitem__(out, k, _normalize(v * c))
        return out

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def map_symbols(self, fn):
        """Apply ``fn`` to every symbol; ``fn`` returns a LinComb (or dict)."""
        out = LinComb()
        for k, v in self.items():
            out.iadd(fn(k), v)
        return out

    def rename(self, fn):
        """Apply a bijection-like function ``symbol -> symbol``."""
        out = LinComb()
        for k, v in self.items():
            out.add_term(fn(k), v)
        return out

    def content_normalized(self, order=None):
        """Scale to coprime integers with the first nonzero term positive."""
        from math import gcd, lcm

        if not self:
            return self.copy()
        keys = sorted(self) if order is None else [k for k in order if k in self]
        den = 1
        for v in self.values():
            den = lcm(den, Fraction(v).denominator)
        ints = {k: int(Fraction(v) * den) for k, v in self.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        sign = 1 if ints[keys[0]] > 0 else -1
        return LinComb({k: sign * v // g for k, v in ints.items()})

    def __repr__(self):
        return f"LinComb({dict.__repr__(self)})"
