"""Standard relations among MPVs and the matrices built from them.

Two row spaces are used.

``lie`` rows live on all (N+1)^w words of weight w and describe the
degree-w part of the double shuffle Lie algebra: products of lower-weight
values are dropped, divergent words are kept as coordinates.

``value`` rows live on the convergent words and are exact linear
relations among the (T = 0 regularized) values themselves.  Their rank
gives the upper bound for the dimension d(w, N).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from sympy import divisors, factorint

from .linalg import SparseMatrix, echelon, solve_in_terms_of
from .lincomb import LinComb
from .words import (
    E1,
    ZERO,
    alphabet,
    composition_to_word,
    compositions_to_words,
    enumerate_compositions,
    enumerate_words,
    is_convergent_composition,
    parse_word,
    shuffle,
    shuffle_power,
    shuffle_regularize,
    shuffle_regularize_poly,
    stuffle,
    word_str,
)

FAMILY_TAGS = {
    "I": "I-shuffle",
    "II": "II-stuffle",
    "III": "III-dist",
    "IV": "IV-regdist",
    "W1": "W1-weight-one",
    "OCTA": "OCTA",
    "DS": "DS-double-shuffle",
    "DIH": "DIH-dihedral",
}


@dataclass
class RelationRow:
    entries: LinComb
    family: str
    provenance: tuple = ()

    def to_json(self, weight, level):
        return {
            "weight": weight,
            "level": level,
            "row_family": FAMILY_TAGS.get(self.family, self.family),
            "terms": {word_str(w): str(Fraction(v)) for w, v in sorted(self.entries.items())},
        }


def row_from_json(obj, N=None):
    N = obj["level"] if N is None else N
    tags = {v: k for k, v in FAMILY_TAGS.items()}
    entries = LinComb({parse_word(k, N): Fraction(v) for k, v in obj["terms"].items()})
    return RelationRow(entries, tags.get(obj["row_family"], obj["row_family"]))


def _rows(pairs, family):
    return [RelationRow(r, family, p) for p, r in pairs if r]


def _splits(weight, splits):
    if splits == "letter":
        return [1]
    if splits == "all":
        return list(range(1, weight // 2 + 1))
    raise ValueError(f"splits must be 'letter' or 'all', got {splits!r}")


# ------------------------------------------------------------ lie families


def rows_shuffle_coproduct(weight, level, splits="letter"):
    """Shuffle rows u sh v, |u| = 1 (or every split with ``splits='all'``)."""
    if weight < 2:
        raise ValueError("shuffle rows need weight >= 2")
    out = []
    for k in _splits(weight, splits):
        for u in enumerate_words(k, level):
            for v in enumerate_words(weight - k, level):
                out.append(((u, v), shuffle(u, v)))
    return _rows(out, "I")


def stuffle_correction(row, weight):
    """Shift the e_1^n coordinate onto e_0^{n-1} e_1 with factor (-1)^{n-1}/n.

    The stuffle coproduct acts on psi_* = psi + sum_n (-1)^{n-1}/n
    psi(e_0^{n-1} e_1) e_1^n rather than on psi itself.
    """
    top = (E1,) * weight
    c = row.get(top)
    if c and weight >= 2:
        row = row.copy()
        row.add_term((ZERO,) * (weight - 1) + (E1,), Fraction((-1) ** (weight - 1), weight) * c)
    return row


def rows_stuffle_coproduct(weight, level, splits="letter", correction=True):
    """Stuffle rows a * b for compositions, |a| = 1 by default, signs included."""
    if weight < 2:
        raise ValueError("stuffle rows need weight >= 2")
    out = []
    for k in _splits(weight, splits):
        for a in enumerate_compositions(k, level):
            for b in enumerate_compositions(weight - k, level):
                r = compositions_to_words(stuffle(a, b, level), level)
                if correction:
                    r = stuffle_correction(r, weight)
                out.append(((a, b), r))
    return _rows(out, "II")


def _check_divisor(level, d):
    if d < 2 or level % d:
        raise ValueError(f"d={d} must be a divisor > 1 of N={level}")


def _dist_words(weight, level, d):
    sub = [ZERO] + [a for a in range(level) if a % d == 0]
    for M in itertools.product(sub, repeat=weight):
        if M[-1] != ZERO:
            yield M


def _lifts(M, level, d):
    choices = [[ZERO] if x == ZERO else [b for b in range(level) if (b * d - x) % level == 0] for x in M]
    return [tuple(t) for t in itertools.product(*choices)]


def _log_d(level, d):
    """Word form of sum_{zeta^d = 1, zeta != 1} c(e_zeta), which is log d."""
    return LinComb({(b,): 1 for b in range(1, level) if (b * d) % level == 0})


def _dist_row(M, level, d, form):
    w = len(M)
    n = sum(1 for x in M if x != ZERO)
    mult = d ** (w - n)
    if form == "lie":
        r = LinComb.term(M)
        for L in _lifts(M, level, d):
            r.add_term(L, -mult)
        return r
    # value form: match the T^0 terms of the regularized identity; the
    # parameter T of the lifts is T + log d on the sub-level side.
    logd = _log_d(level, d)
    r = shuffle_regularize(M)
    for L in _lifts(M, level, d):
        for j, pj in enumerate(shuffle_regularize_poly(L)):
            if not pj:
                continue
            term = shuffle(shuffle_power(logd, j), pj).scale(Fraction((-1) ** j, factorial(j)))
            r.iadd(shuffle_regularize(term), -mult)
    return r


def rows_distribution(weight, level, d, form="lie"):
    """Distribution rows for words over {e_0} and the N/d-th roots of unity.

    Only words whose first letter is not e_1 (and last letter not e_0).
    """
    _check_divisor(level, d)
    out = [((M, d), _dist_row(M, level, d, form)) for M in _dist_words(weight, level, d) if M[0] != E1]
    return _rows(out, "III")


def rows_reg_distribution(weight, level, d, form="lie"):
    """Distribution rows for sub-level words starting with e_1."""
    _check_divisor(level, d)
    out = [((M, d), _dist_row(M, level, d, form)) for M in _dist_words(weight, level, d) if M[0] == E1]
    return _rows(out, "IV")


# ---------------------------------------------------------- weight one


def weight_one_relations(level):
    """Relations among c(e_zeta), zeta != 1, as LinCombs of weight-1 words.

    Real parts satisfy parity c(e_b) ~ c(e_-b) and distribution (with
    c(e_1) = 0 and sum_{zeta^d=1, zeta!=1} c(e_zeta) = log d); the
    imaginary part of c(e_b) is proportional to N - 2b.  The result is the
    space of rational relations holding for both parts.
    """
    N = level
    if N == 1:
        return []
    R = []
    for b in range(1, N):
        if b < N - b:
            R.append({b: 1, N - b: -1})
    for d in divisors(N):
        if d == 1:
            continue
        for a in range(0, N, d):
            r = {}
            for b in range(N):
                if (b * d - a) % N == 0 and b:
                    r[b] = r.get(b, 0) + 1
            if a:
                r[a] = r.get(a, 0) - 1
            else:
                for p, e in factorint(d).items():
                    for b in range(1, N):
                        if (b * p) % N == 0:
                            r[b] = r.get(b, 0) - e
            r = {k: v for k, v in r.items() if v}
            if r:
                R.append(r)
    cols = list(range(1, N))
    M = SparseMatrix(cols)
    M.add_rows(R)
    basis = [{cols[k]: v for k, v in row.items()} for row in echelon(M).reduced().values()]
    imag = {b: N - 2 * b for b in cols}
    vals = [sum(v * imag[b] for b, v in row.items()) for row in basis]
    out = [row for row, v in zip(basis, vals) if v == 0]
    nz = [i for i, v in enumerate(vals) if v]
    if nz:
        i0 = nz[0]
        for i in nz[1:]:
            r = LinComb(basis[i]).scale(vals[i0])
            r.iadd(basis[i0], -vals[i])
            out.append(dict(r))
    return [LinComb({(b,): v for b, v in r.items()}).content_normalized() for r in out]


def weight_one_lie_rows(level, tangent_log2=False):
    """Degree-1 rows with 2 pi i = 0.

    psi(e_0) = 0, psi(e_1) = 0 (or psi(e_1) = psi(e_-1) with
    ``tangent_log2``, the normalization exp(log 2 e_1) dch used with the
    octahedral symmetry at level 4), parity and distribution.
    """
    N = level
    rows = [LinComb.term((ZERO,))]
    if tangent_log2:
        if N % 2:
            raise ValueError("the log 2 tangent normalization needs even N")
        rows.append(LinComb({(E1,): 1, (N // 2,): -1}))
    else:
        rows.append(LinComb.term((E1,)))
    for b in range(1, N):
        if b < N - b:
            rows.append(LinComb({(b,): 1, (N - b,): -1}))
    for d in divisors(N):
        if d == 1:
            continue
        for a in range(d, N, d):
            r = LinComb({(b,): 1 for b in range(N) if (b * d - a) % N == 0})
            r.add_term((a,), -1)
            rows.append(r)
    return [RelationRow(r, "W1", ("lie",)) for r in rows if r]


def rows_weight_one(weight, level, form="value"):
    """Weight-one relations shuffled with every word of weight ``weight - 1``."""
    if weight < 1:
        raise ValueError("weight must be >= 1")
    R = weight_one_relations(level)
    out = []
    for rel in R:
        for u in enumerate_words(weight - 1, level):
            r = shuffle(rel, u)
            if form == "value":
                r = shuffle_regularize(r)
            out.append(((tuple(sorted(rel.items())), u), r))
    return _rows(out, "W1")


# --------------------------------------------------------- value families


def rows_double_shuffle(weight, level):
    """reg(shuffle expansion) - reg(stuffle expansion) for every pair.

    a runs over all compositions of weight k (divergent ones included), b
    over convergent compositions of weight ``weight - k``.
    """
    out = []
    for k in range(1, weight):
        comps_a = enumerate_compositions(k, level)
        comps_b = enumerate_compositions(weight - k, level, convergent_only=True)
        for a in comps_a:
            sa, wa = composition_to_word(a, level)
            for b in comps_b:
                sb, wb = composition_to_word(b, level)
                r = shuffle(wa, wb).scale(sa * sb)
                r.iadd(compositions_to_words(stuffle(a, b, level), level), -1)
                out.append(((a, b), shuffle_regularize(r)))
    return _rows(out, "DS")


def distribution_primes(level):
    return sorted(factorint(level)) if level > 1 else []


def standard_rows(weight, level):
    """All value-level standard rows over convergent words."""
    rows = rows_double_shuffle(weight, level)
    for d in distribution_primes(level):
        rows += rows_distribution(weight, level, d, form="value")
        rows += rows_reg_distribution(weight, level, d, form="value")
    rows += rows_weight_one(weight, level)
    return rows


def standard_matrix(weight, level, extra_rows=()):
    M = SparseMatrix(enumerate_words(weight, level, convergent_only=True))
    for r in list(standard_rows(weight, level)) + list(extra_rows):
        M.add_row(r.entries if isinstance(r, RelationRow) else r, r.family if isinstance(r, RelationRow) else None)
    return M


@dataclass
class BoundResult:
    weight: int
    level: int
    bound: int
    rank: int
    columns: int
    rows: int
    mode: str
    prime: int | None = None
    seed: int | None = None
    notes: list = field(default_factory=list)

    def __int__(self):
        return self.bound

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def standard_bound_report(weight, level, extra_rows=(), mode="exact", seed=0):
    M = standard_matrix(weight, level, extra_rows)
    E = echelon(M, mode=mode, seed=seed)
    rk = E.rank
    res = BoundResult(weight, level, len(M.columns) - rk, rk, len(M.columns), len(M.rows), mode)
    if mode == "modular":
        res.prime, res.seed = E.p, seed
        res.notes.append("rank over GF(p) is a lower bound for the rational rank; the bound is certified")
    return res


def standard_bound(weight, level, extra_rows=(), mode="exact", seed=0):
    """Number of convergent words minus the rank of the standard system."""
    return standard_bound_report(weight, level, extra_rows, mode, seed).bound


# ------------------------------------------------------------- assembly


def assemble_standard_matrix(weight, level, families=("I", "II", "III", "IV"), splits="letter", correction=True):
    """Lie-form rows of the chosen families over all (N+1)^w words."""
    fam = set(families)
    unknown = fam - {"I", "II", "III", "IV", "W1", "OCTA", "DIH"}
    if unknown:
        raise ValueError(f"unknown families {sorted(unknown)}")
    M = SparseMatrix(enumerate_words(weight, level))
    rows = []
    if weight == 1:
        if "W1" in fam or {"I", "II", "III", "IV"} & fam:
            rows += weight_one_lie_rows(level, tangent_log2="OCTA" in fam and level == 4)
    else:
        if "I" in fam:
            rows += rows_shuffle_coproduct(weight, level, splits)
        if "II" in fam:
            rows += rows_stuffle_coproduct(weight, level, splits, correction)
        for d in distribution_primes(level):
            if "III" in fam:
                rows += rows_distribution(weight, level, d)
            if "IV" in fam:
                rows += rows_reg_distribution(weight, level, d)
        if "W1" in fam:
            rows += rows_weight_one(weight, level, form="lie")
    if "OCTA" in fam and weight >= 2:
        from .octahedral import octahedral_lie_rows

        rows += octahedral_lie_rows(weight)
    if "DIH" in fam:
        rows += rows_dihedral(weight, level, form="lie")
    for r in rows:
        M.add_row(r.entries, r.family)
    return M


# ---------------------------------------------------------- reductions

# Li_{1,2}(-1,-i), Li_{1,1,1}(i,1,1), Li_{1,1,1}(-1,-1,i), Li_{1,1,1}(i,i,i),
# Li_{1,2}(-i,i), Li_{1,1,1}(-i,-1,1), Li_{1,1,1}(-i,1,1),
# Li_{1,1,1}(i,i,-1), Li_{2,1}(-i,1); arguments as exponents of i.
NINE_BASIS = (
    ((1, 2), (2, 3)),
    ((1, 1), (1, 0), (1, 0)),
    ((1, 2), (1, 2), (1, 1)),
    ((1, 1), (1, 1), (1, 1)),
    ((1, 3), (2, 1)),
    ((1, 3), (1, 2), (1, 0)),
    ((1, 3), (1, 0), (1, 0)),
    ((1, 1), (1, 1), (1, 2)),
    ((2, 3), (1, 0)),
)


def nine_basis_words():
    return [composition_to_word(c, 4)[1] for c in NINE_BASIS]


def fact_reduction(level=4, weight=3, extra_rows=()):
    """Every convergent word as a combination of the nine basis words.

    Returns ``{word: LinComb over basis words}``.  Raises
    ``DependentFreeSetError`` if the basis is not free modulo the rows.
    """
    if (level, weight) != (4, 3):
        raise ValueError("the nine-symbol basis is defined for weight 3, level 4")
    M = standard_matrix(weight, level, extra_rows)
    return solve_in_terms_of(M, nine_basis_words())


def reduce_row(row, reduction):
    """Push a value-level row through a reduction map."""
    out = LinComb()
    for w, c in row.items():
        out.iadd(reduction[w], c)
    return out


# ------------------------------------------------------------ dihedral


def _dihedral_defect(weight, level):
    """Series identity from the loop 0 -> infinity around the first root.

    With tau: e_0 -> e_inf, e_z -> e_{1/z} (inversion) and r: e_z ->
    e_{mu z} (rotation), the two homotopic paths from 0 to infinity give

        tau(D)^-1 exp(-i pi e_1) D
          = exp(2 pi i/N e_inf) (r tau)(D)^-1 exp(i pi e_mu) r(D) exp(2 pi i/N e_0),

    with i pi = N/(N-2) (c(e_mu) - c(e_mu^-1)).  Returns the series
    LHS^-1 RHS, whose coefficients (except the unit) vanish.
    """
    from .series import (
        ExpLetter,
        GenericDch,
        LetterSubstitution,
        Substituted,
        infinity_letter,
        product,
    )

    N = level
    A = alphabet(N)
    tau = LetterSubstitution({ZERO: infinity_letter(N), **{a: (-a) % N for a in range(N)}})
    rot = LetterSubstitution({ZERO: ZERO, **{a: (a + 1) % N for a in range(N)}})
    pii = LinComb({(1,): Fraction(N, N - 2), (N - 1,): Fraction(-N, N - 2)})
    D = GenericDch(weight, N)
    W = weight
    lhs = product(D.substitute(tau).inverse(), ExpLetter(-pii, E1, W, A), D)
    rhs = product(
        Substituted(ExpLetter(pii.scale(Fraction(2, N)), ZERO, W, A), tau),
        D.substitute(rot.compose(tau)).inverse(),
        ExpLetter(pii, 1, W, A),
        D.substitute(rot),
        ExpLetter(pii.scale(Fraction(2, N)), ZERO, W, A),
    )
    return product(lhs.inverse(), rhs)


def rows_dihedral(weight, level, form="value"):
    """Relations from the rotation and inversion symmetry of {0, inf} and mu_N.

    ``value`` rows: every weight-w coefficient of the loop identity,
    regularized.  ``lie`` rows: the linear part, psi on the identity's
    coordinates with products dropped.  Needs N >= 3 (i pi must be a
    combination of weight-one values).
    """
    if level < 3:
        return []
    if form == "lie":
        return _dihedral_lie_rows(weight, level)
    X = _dihedral_defect(weight, level)
    out = []
    for w in X.words(weight):
        r = shuffle_regularize(X.coefficient(w))
        if r:
            out.append(RelationRow(r, "DIH", (w,)))
    return out


def _dihedral_lie_rows(weight, level):
    """Linear part of the loop identity: every coefficient of
    psi - tau(psi) + (r tau)(psi) - r(psi), weight >= 2."""
    from .series import LetterSubstitution, infinity_letter

    N = level
    if weight < 2:
        return []
    tau = LetterSubstitution({ZERO: infinity_letter(N), **{a: (-a) % N for a in range(N)}})
    rot = LetterSubstitution({ZERO: ZERO, **{a: (a + 1) % N for a in range(N)}})
    acc = {}
    for y in enumerate_words(weight, N):
        for sub, sign in ((None, 1), (tau, -1), (rot.compose(tau), 1), (rot, -1)):
            img = LinComb.term(y) if sub is None else sub.image_of_word(y)
            for x, c in img.items():
                acc.setdefault(x, LinComb()).add_term(y, sign * c)
    return [RelationRow(r, "DIH", (x,)) for x, r in sorted(acc.items()) if r]


# ---------------------------------------------------------------- caching


def write_matrix_cache(path, M, weight, level, families):
    """Line format: header ``w N family-set ncols``, then ``row col p/q``."""
    fam = ",".join(sorted(families))
    with open(path, "w") as fh:
        fh.write(f"{weight} {level} {fam} {len(M.columns)}\n")
        for i, r in enumerate(M.rows):
            for j in sorted(r):
                fh.write(f"{i} {j} {Fraction(r[j])}\n")


def read_matrix_cache(path):
    """Returns ``(SparseMatrix over enumerate_words order, weight, level, families)``."""
    with open(path) as fh:
        head = fh.readline().split()
        weight, level, fam, ncols = int(head[0]), int(head[1]), head[2], int(head[3])
        cols = enumerate_words(weight, level)
        if len(cols) != ncols:
            cols = enumerate_words(weight, level, convergent_only=True)
        if len(cols) != ncols:
            raise ValueError(f"{path}: column count {ncols} matches no word basis")
        M = SparseMatrix(cols)
        rows = {}
        for line in fh:
            i, j, v = line.split()
            rows.setdefault(int(i), {})[int(j)] = Fraction(v)
        n = max(rows) + 1 if rows else 0
        M.rows = [{k: (int(v) if v.denominator == 1 else v) for k, v in rows.get(i, {}).items()} for i in range(n)]
        M.row_labels = [None] * n
    return M, weight, level, set(fam.split(","))


def rows_to_json(rows, weight, level):
    return json.dumps([r.to_json(weight, level) for r in rows], indent=1)


def rank_with(base_echelon, rows, columns, mode="exact", prime=None):
    """Rank increase when ``rows`` are added to a copy of ``base_echelon``."""
    import copy

    E = copy.deepcopy(base_echelon)
    idx = {c: i for i, c in enumerate(columns)}
    gained = 0
    for r in rows:
        ent = r.entries if isinstance(r, RelationRow) else r
        vec = {idx[w]: v for w, v in ent.items()}
        gained += E.insert(vec)
    return gained, E


def standard_echelon(weight, level, mode="exact", seed=0):
    M = standard_matrix(weight, level)
    return echelon(M, mode=mode, seed=seed), M.columns


__all__ = [
    "FAMILY_TAGS",
    "NINE_BASIS",
    "RelationRow",
    "assemble_standard_matrix",
    "fact_reduction",
    "rows_dihedral",
    "rows_distribution",
    "rows_double_shuffle",
    "rows_reg_distribution",
    "rows_shuffle_coproduct",
    "rows_stuffle_coproduct",
    "rows_weight_one",
    "standard_bound",
    "standard_rows",
]
