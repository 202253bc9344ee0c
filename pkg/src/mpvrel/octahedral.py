"""The order-3 symmetry of P^1 minus {0, inf, +-1, +-i} and its relations.

rho permutes e_0 -> e_1 -> e_i -> e_0 and e_inf -> e_-1 -> e_-i -> e_inf,
where e_inf = -(e_0 + e_1 + e_-1 + e_i + e_-i).  The loop identity

    exp(s e_0) rho^2(dch) exp(s e_i) rho(dch) exp(s e_1) dch = 1,
    s = -2 Li_1(i) = 2 c(e_-i),

holds for the T = 0 regularized dch at level 4.  Each coefficient gives a
polynomial relation among MPVs; group-likeness makes it linear.
"""

from __future__ import annotations

from fractions import Fraction

from .lincomb import LinComb
from .linalg import DependentFreeSetError
from .relations import (
    NINE_BASIS,
    RelationRow,
    fact_reduction,
    nine_basis_words,
    reduce_row,
    standard_echelon,
)
from .series import (
    ExpLetter,
    GenericDch,
    LetterSubstitution,
    infinity_letter,
    product,
)
from .words import ZERO, alphabet, composition_to_word, enumerate_words, shuffle_regularize

LEVEL = 4
# letters at level 4: ZERO = e_0, 0 = e_1, 1 = e_i, 2 = e_-1, 3 = e_-i
E_0, E_1, E_I, E_M1, E_MI = ZERO, 0, 1, 2, 3

# e_-i e_0^2 e_-i, e_-i e_0^2 e_-1, e_-i e_0^2 e_i, e_-i e_0^2 e_1, (e_-i e_0)^2
FIVE_WORDS = (
    (E_MI, E_0, E_0, E_MI),
    (E_MI, E_0, E_0, E_M1),
    (E_MI, E_0, E_0, E_I),
    (E_MI, E_0, E_0, E_1),
    (E_MI, E_0, E_MI, E_0),
)


def rho():
    inf = infinity_letter(LEVEL)
    return LetterSubstitution({E_0: E_1, E_1: E_I, E_I: E_0, E_M1: E_MI, E_MI: inf})


def rho2():
    return rho().compose(rho())


def sigma():
    """e_0 <-> e_1, e_i <-> e_-i, e_-1 <-> e_inf."""
    inf = infinity_letter(LEVEL)
    return LetterSubstitution({E_0: E_1, E_1: E_0, E_I: E_MI, E_MI: E_I, E_M1: inf})


def li1_i():
    """Li_1(i) in word symbols: -c(e_-i)."""
    return LinComb({(E_MI,): -1})


def generic_dch(max_weight, level=LEVEL):
    return GenericDch(max_weight, level)


def apply_substitution(S, sub):
    return S.substitute(sub)


def exp_letter(s, x, max_weight, letters=None):
    return ExpLetter(s, x, max_weight, alphabet(LEVEL) if letters is None else letters)


def octa_left_side(max_weight):
    if max_weight > 5:
        raise ValueError("truncation above weight 5 is not supported")
    D = generic_dch(max_weight)
    s = li1_i().scale(-2)
    return product(
        exp_letter(s, E_0, max_weight),
        apply_substitution(D, rho2()),
        exp_letter(s, E_I, max_weight),
        apply_substitution(D, rho()),
        exp_letter(s, E_1, max_weight),
        D,
    )


_LEFT = {}


def _left(weight):
    S = _LEFT.get(weight)
    if S is None:
        S = _LEFT[weight] = octa_left_side(weight)
    return S


def extract_octahedral_rows(weight, reduce=True, words=None):
    """Rows from the vanishing coefficients of the loop identity.

    ``words`` defaults to every word at weight 3 and the five listed words
    at weight 4; pass ``"all"`` to use every word of the weight.
    """
    if words is None:
        if weight == 3:
            words = "all"
        elif weight == 4:
            words = FIVE_WORDS
        else:
            raise ValueError("default extraction is defined for weights 3 and 4")
    if words == "all":
        words = enumerate_words(weight, LEVEL)
    S = _left(weight)
    out = []
    for w in words:
        c = S.coefficient(tuple(w))
        if reduce:
            c = shuffle_regularize(c)
        if c:
            out.append(RelationRow(c, "OCTA", (tuple(w),)))
    return out


def octahedral_rank_gain(weight, words=None, mode="exact"):
    """``(gain, bound)``: rank added to the standard system and the new bound."""
    E, cols = standard_echelon(weight, LEVEL, mode=mode)
    idx = {c: i for i, c in enumerate(cols)}
    gain = 0
    for r in extract_octahedral_rows(weight, True, words):
        gain += E.insert({idx[w]: v for w, v in r.entries.items()})
    return gain, len(cols) - E.rank


def octahedral_lie_rows(weight):
    """Linear part of the identity in degree >= 2: psi + rho psi + rho^2 psi = 0."""
    acc = {}
    subs = (None, rho(), rho2())
    for y in enumerate_words(weight, LEVEL):
        for sub in subs:
            img = LinComb.term(y) if sub is None else sub.image_of_word(y)
            for x, c in img.items():
                acc.setdefault(x, LinComb()).add_term(y, c)
    return [RelationRow(r, "OCTA", (x,)) for x, r in sorted(acc.items()) if r]


def derive_conj():
    """The weight-3 octahedral relation in the nine-symbol basis.

    Returns a LinComb over compositions (a relation: sum = 0) scaled so the
    coefficient of Li_{1,2}(-1,-i) is 5.
    """
    red = fact_reduction()
    basis = nine_basis_words()
    images = []
    for r in extract_octahedral_rows(3, reduce=True):
        img = reduce_row(r.entries, red)
        if img:
            images.append(img)
    if not images:
        raise DependentFreeSetError("octahedral rows vanish modulo the standard relations")
    rel = images[0]
    for other in images[1:]:
        # all images must be proportional: the quotient space is one-dimensional
        k = next(iter(rel))
        if LinComb(other).scale(rel[k]) != LinComb(rel).scale(other.get(k, 0)):
            raise DependentFreeSetError("octahedral rows span more than one relation")
    out = LinComb()
    for w, c in rel.items():
        j = basis.index(w)
        sign, _ = composition_to_word(NINE_BASIS[j], LEVEL)
        out.add_term(NINE_BASIS[j], sign * c)
    lead = out.get(NINE_BASIS[0])
    if not lead:
        raise DependentFreeSetError("derived relation does not involve Li_{1,2}(-1,-i)")
    return out.scale(Fraction(5) / lead)


def conj_coefficients(rel):
    """``(a; b_1..b_8)`` with a Li_{1,2}(-1,-i) = sum b_k (basis symbol k)."""
    a = rel.get(NINE_BASIS[0], 0)
    return a, tuple(-rel.get(c, 0) for c in NINE_BASIS[1:])


__all__ = [
    "FIVE_WORDS",
    "conj_coefficients",
    "derive_conj",
    "extract_octahedral_rows",
    "octa_left_side",
    "octahedral_lie_rows",
    "octahedral_rank_gain",
    "rho",
    "sigma",
]
