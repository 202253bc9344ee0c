"""Exact sparse linear algebra over Q and over large prime fields.

Rows are dicts ``{column_index: coefficient}``.  Elimination keeps an
echelon basis keyed by leading column; exact mode works fraction-free on
integer rows (content removed after every update), modular mode works in
GF(p) for a prime p > 2**60 derived from a recorded seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from sympy import nextprime

from .lincomb import LinComb


class DependentFreeSetError(ValueError):
    """The requested free columns do not complement a pivot basis."""


@dataclass
class SparseMatrix:
    """Rows over an ordered list of column labels."""

    columns: list
    rows: list = field(default_factory=list)
    row_labels: list = field(default_factory=list)

    def __post_init__(self):
        self.columns = list(self.columns)
        self._index = {c: i for i, c in enumerate(self.columns)}

    @property
    def shape(self):
        return len(self.rows), len(self.columns)

    def index(self, label):
        return self._index[label]

    def add_row(self, entries, label=None):
        """Add a row given as ``{column_label: coefficient}``; zeros dropped."""
        row = {}
        for k, v in entries.items():
            if v:
                row[self._index[k]] = v
        self.rows.append(row)
        self.row_labels.append(label)

    def add_rows(self, rows, labels=None):
        for i, r in enumerate(rows):
            self.add_row(r, None if labels is None else labels[i])

    def transpose(self):
        out = SparseMatrix(list(range(len(self.rows))))
        cols = [dict() for _ in self.columns]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        out.rows = cols
        out.row_labels = list(self.columns)
        return out

    def nnz(self):
        return sum(len(r) for r in self.rows)

    def apply(self, vec):
        """Multiply by a vector given as ``{column_index: value}``."""
        out = []
        for r in self.rows:
            s = 0
            for j, v in r.items():
                x = vec.get(j)
                if x:
                    s += v * x
            out.append(s)
        return out


def _integer_row(row):
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    if den == 1:
        out = {k: int(v) for k, v in row.items()}
    else:
        out = {k: int(v * den) for k, v in row.items()}
    g = 0
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


def choose_prime(seed=0):
    """Deterministic prime in (2**61, 2**62) from ``seed``."""
    rng = random.Random(seed)
    return int(nextprime((1 << 61) + rng.getrandbits(60)))


def _mod_row(row, p):
    out = {}
    for k, v in row.items():
        if isinstance(v, Fraction):
            if v.denominator % p == 0:
                raise ZeroDivisionError("denominator divisible by the prime")
            x = v.numerator * pow(v.denominator, -1, p) % p
        else:
            x = v % p
        if x:
            out[k] = x
    return out


class Echelon:
    """Incremental row echelon basis.

    ``pivots[c]`` is a row whose smallest column is ``c``.  Columns are
    compared through ``order`` (a permutation: position of each column), so
    the caller controls which columns become pivots first.
    """

    def __init__(self, ncols, mode="exact", prime=None, order=None):
        self.ncols = ncols
        self.mode = mode
        self.p = prime
        self.order = order  # column -> rank in elimination order
        self.pivots = {}

    def _lead(self, row):
        if self.order is None:
            return min(row)
        o = self.order
        return min(row, key=o.__getitem__)

    def reduce(self, row):
        """Reduce ``row`` by the basis; returns the (possibly empty) rest."""
        if self.mode == "modular":
            return self._reduce_mod(row)
        return self._reduce_exact(row)

    def _reduce_exact(self, row):
        row = dict(row)
        piv = self.pivots
        while row:
            c = self._lead(row)
            P = piv.get(c)
            if P is None:
                return row
            a, b = P[c], row[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {}
            if fa != 1:
                for k, v in row.items():
                    new[k] = v * fa
            else:
                new = row
            for k, v in P.items():
                x = new.get(k, 0) - fb * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            row = new
            if row:
                row = _integer_row(row)
        return row

    def _reduce_mod(self, row):
        p = self.p
        row = dict(row)
        piv = self.pivots
        while row:
            c = self._lead(row)
            P = piv.get(c)
            if P is None:
                return row
            f = row[c]  # pivot rows are monic
            for k, v in P.items():
                x = (row.get(k, 0) - f * v) % p
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
        return row

    def insert(self, row):
        """Insert a row; returns True if the rank grew."""
        if self.mode == "modular":
            row = _mod_row(row, self.p)
        else:
            row = _integer_row(row)
        row = self.reduce(row)
        if not row:
            return False
        c = self._lead(row)
        if self.mode == "modular":
            inv = pow(row[c], -1, self.p)
            row = {k: v * inv % self.p for k, v in row.items()}
        elif row[c] < 0:
            row = {k: -v for k, v in row.items()}
        self.pivots[c] = row
        return True

    @property
    def rank(self):
        return len(self.pivots)

    def reduced(self):
        """Fully reduced echelon form: ``{pivot: {col: Fraction}}``, monic."""
        if self.mode == "modular":
            raise NotImplementedError("reduced form is only provided over Q")
        key = (lambda c: c) if self.order is None else self.order.__getitem__
        cols = sorted(self.pivots, key=key, reverse=True)
        out = {}
        for c in cols:
            row = {k: Fraction(v, self.pivots[c][c]) for k, v in self.pivots[c].items()}
            # eliminate later pivots (already reduced)
            for k in [k for k in row if k != c and k in out]:
                f = row[k]
                for j, v in out[k].items():
                    x = row.get(j, 0) - f * v
                    if x:
                        row[j] = x
                    else:
                        row.pop(j, None)
            out[c] = row
        return out


def _column_order(M, prefer_last=()):
    """Elimination order: columns in ``prefer_last`` are eliminated last."""
    last = set(prefer_last)
    front = [j for j in range(len(M.columns)) if j not in last]
    back = [j for j in range(len(M.columns)) if j in last]
    order = {}
    for pos, j in enumerate(front + back):
        order[j] = pos
    return order


def _sorted_rows(M):
    return sorted(M.rows, key=len)


def rank(M, mode="exact", seed=0):
    """Rank of ``M``.

    ``exact`` gives the rank over Q.  ``modular`` gives the rank over GF(p)
    for the prime ``choose_prime(seed)``; it never exceeds the rational
    rank, so ``ncols - rank`` is a certified upper bound for the nullity.
    """
    return echelon(M, mode=mode, seed=seed).rank


def echelon(M, mode="exact", seed=0, order=None):
    prime = choose_prime(seed) if mode == "modular" else None
    E = Echelon(len(M.columns), mode=mode, prime=prime, order=order)
    for r in _sorted_rows(M):
        if r:
            E.insert(r)
    return E


def nullspace(M):
    """Integer basis of {x : M x = 0}, one vector per non-pivot column.

    Vectors are dicts over column indices with coprime entries and a
    positive entry at their free column.
    """
    E = echelon(M)
    R = E.reduced()
    free = [j for j in range(len(M.columns)) if j not in R]
    out = []
    for f in free:
        vec = {f: Fraction(1)}
        for c, row in R.items():
            v = row.get(f)
            if v:
                vec[c] = -v
        out.append(dict(LinComb(vec).content_normalized(order=[f] + sorted(vec))))
    return out


def solve_in_terms_of(M, free_columns):
    """Express every other column through ``free_columns`` modulo the rows.

    Returns ``{column_label: LinComb over free column labels}`` such that
    every row vector vanishes on the substitution.  Raises
    ``DependentFreeSetError`` if the free set is too small or dependent.
    """
    free_idx = [M.index(c) for c in free_columns]
    E = echelon(M, order=_column_order(M, free_idx))
    R = E.reduced()
    free_set = set(free_idx)
    bad = [c for c in R if c in free_set]
    if bad:
        raise DependentFreeSetError(
            f"free columns are dependent modulo the relations: {[M.columns[c] for c in bad]}"
        )
    missing = [j for j in range(len(M.columns)) if j not in R and j not in free_set]
    if missing:
        raise DependentFreeSetError(
            f"free set too small; unresolved columns {[M.columns[j] for j in missing][:5]}"
        )
    out = {}
    for j in free_idx:
        out[M.columns[j]] = LinComb.term(M.columns[j])
    for c, row in R.items():
        out[M.columns[c]] = LinComb(
            {M.columns[k]: -v for k, v in row.items() if k != c}
        )
    return out


def row_space_contains(M, vec, mode="exact", seed=0):
    """Whether ``vec`` (``{label: coeff}``) lies in the row space of M."""
    E = echelon(M, mode=mode, seed=seed)
    r = {M.index(k): v for k, v in vec.items() if v}
    if mode == "modular":
        r = _mod_row(r, E.p)
    else:
        r = _integer_row(r)
    return not E.reduce(r)
