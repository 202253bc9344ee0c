"""Free Lie algebra on e_0, e_zeta; Ihara bracket; depth-2 bracket map.

Lie elements are stored by their expansion in the free associative
algebra (a LinComb over words).  The expansion is injective, so equality
of expansions is equality of Lie elements; ``lyndon_coordinates`` gives
the coordinates in the standard bracketing of Lyndon words.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .linalg import Echelon, SparseMatrix, _integer_row, echelon, nullspace
from .lincomb import LinComb
from .relations import assemble_standard_matrix
from .series import LetterSubstitution
from .words import E1, ZERO, alphabet, enumerate_words

# ------------------------------------------------------------- expansions


def concat(u, v):
    out = LinComb()
    for a, x in u.items():
        for b, y in v.items():
            out.add_term(a + b, x * y)
    return out


def commutator(u, v):
    return concat(u, v) - concat(v, u)


def letter(x):
    return LinComb.term((x,))


def bracket_of(*letters_or_elems):
    """Right-nested commutator [a, [b, [c, ...]]]; ints are letters."""
    items = [letter(x) if isinstance(x, int) else LinComb(x) for x in letters_or_elems]
    out = items[-1]
    for a in reversed(items[:-1]):
        out = commutator(a, out)
    return out


def degree(u):
    ds = {len(w) for w in u}
    if len(ds) > 1:
        raise ValueError("element is not homogeneous")
    return ds.pop() if ds else 0


def shift(u, b, N):
    """Multiply every root letter index by mu^b: e_a -> e_{a+b}, e_0 fixed."""
    return u.rename(lambda w: tuple(x if x == ZERO else (x + b) % N for x in w))


def derivation(u, N):
    """The derivation d_u: e_0 -> 0, e_b -> [e_b, u<b>]."""
    images = {}

    def image(b):
        if b not in images:
            images[b] = commutator(letter(b), shift(u, b, N))
        return images[b]

    def apply(v):
        out = LinComb()
        for w, c in v.items():
            for i, x in enumerate(w):
                if x == ZERO:
                    continue
                for m, k in image(x).items():
                    out.add_term(w[:i] + m + w[i + 1 :], c * k)
        return out

    return apply


def ihara_bracket(u, v, N):
    """{u, v} = [u, v] + d_u(v) - d_v(u)."""
    u, v = LinComb(u), LinComb(v)
    out = commutator(u, v)
    out.iadd(derivation(u, N)(v))
    out.iadd(derivation(v, N)(u), -1)
    return out


def sigma_involution(u, N=4):
    """e_0 <-> e_1, e_i <-> e_-i, e_-1 <-> e_inf at level 4."""
    if N != 4:
        raise ValueError("the involution is defined at level 4")
    from .octahedral import sigma

    return substitute(u, sigma())


def substitute(u, sub):
    out = LinComb()
    for w, c in u.items():
        out.iadd(sub.image_of_word(w), c)
    return out


# ------------------------------------------------------------ lyndon basis


def lyndon_words(n, letters):
    """Lyndon words of length n over ``letters`` (ordered as given), Duval."""
    k = len(letters)
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == n:
            out.append(tuple(letters[i] for i in w))
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def standard_factorization(l):
    """l = u v with v the longest proper Lyndon suffix."""
    for i in range(1, len(l)):
        v = l[i:]
        if _is_lyndon(v):
            return l[:i], v
    raise ValueError(f"{l!r} is a letter")


def _is_lyndon(w):
    return all(w < w[i:] + w[:i] for i in range(1, len(w))) and all(w < w[i:] for i in range(1, len(w)))


_P = {}


def lyndon_bracket(l):
    """Expansion of the standard bracketing of the Lyndon word ``l``."""
    l = tuple(l)
    if l not in _P:
        if len(l) == 1:
            _P[l] = letter(l[0])
        else:
            u, v = standard_factorization(l)
            _P[l] = commutator(lyndon_bracket(u), lyndon_bracket(v))
    return _P[l]


def lyndon_coordinates(u):
    """Coordinates of a Lie element in the standard Lyndon basis.

    Peels off the lexicographically smallest word, which is Lyndon with
    coefficient equal to its coordinate.  Raises if ``u`` is not Lie.
    """
    rest = LinComb(u)
    out = LinComb()
    while rest:
        w = min(rest)
        if not _is_lyndon(w):
            raise ValueError("not a Lie element")
        c = rest[w]
        out.add_term(w, c)
        rest.iadd(lyndon_bracket(w), -c)
    return out


def from_lyndon_coordinates(coords):
    out = LinComb()
    for l, c in coords.items():
        out.iadd(lyndon_bracket(l), c)
    return out


def is_lie(u):
    try:
        lyndon_coordinates(u)
    except ValueError:
        return False
    return True


# ------------------------------------------------------------ generators

# v1 = 2 e_-1 + 2 e_1 + e_-i + e_i
V1 = LinComb({(2,): 2, (0,): 2, (3,): 1, (1,): 1})


def _v2():
    c = lambda a, b: bracket_of(a, b)  # noqa: E731
    out = c(ZERO, 1) - c(ZERO, 3) + c(0, 1) + c(3, 0) + c(3, 1)
    return out


# v2 = [e_0,e_i] - [e_0,e_-i] + [e_1,e_i] + [e_-i,e_1] + [e_-i,e_i]
V2 = _v2()


# ------------------------------------------------------------- kernels

_KERNELS = {}


def dmrd_matrix(weight, level=4, include_octahedral=False, splits="all"):
    fam = ["I", "II", "III", "IV"]
    if include_octahedral:
        fam.append("OCTA")
    return assemble_standard_matrix(weight, level, fam, splits=splits)


def dmrd_kernel(weight, level=4, include_octahedral=False, splits="all"):
    """Basis of the degree-``weight`` solution space, as word LinCombs.

    ``splits='all'`` imposes shuffle and stuffle primitivity for every
    split of the weight, which makes every solution a Lie element;
    ``'letter'`` uses only the weight-1 factor rows.
    """
    key = (weight, level, include_octahedral, splits)
    if key not in _KERNELS:
        M = dmrd_matrix(weight, level, include_octahedral, splits)
        basis = []
        for vec in nullspace(M):
            basis.append(LinComb({M.columns[j]: v for j, v in vec.items()}))
        _KERNELS[key] = (M, basis)
    return list(_KERNELS[key][1])


def in_kernel(u, weight, level=4, include_octahedral=False, splits="all"):
    dmrd_kernel(weight, level, include_octahedral, splits)
    M = _KERNELS[(weight, level, include_octahedral, splits)][0]
    vec = {M.index(w): c for w, c in u.items()}
    if any(len(w) != weight for w in u):
        return False
    return all(v == 0 for v in M.apply(vec))


def span_rank(vectors):
    cols = sorted({w for v in vectors for w in v})
    M = SparseMatrix(cols)
    M.add_rows(vectors)
    return echelon(M).rank


def extend_basis(known, basis):
    """Vectors of ``basis`` reduced modulo ``known``; first new one normalized.

    Returns the list of complement vectors (content 1, first coordinate
    in word order positive).
    """
    cols = sorted({w for v in list(known) + list(basis) for w in v})
    idx = {w: i for i, w in enumerate(cols)}
    E = Echelon(len(cols))
    for v in known:
        E.insert({idx[w]: c for w, c in v.items()})
    out = []
    for v in basis:
        r = E.reduce(_integer_row({idx[w]: c for w, c in v.items()}))
        if r:
            E.insert(r)
            out.append(LinComb({cols[j]: c for j, c in r.items()}).content_normalized())
    return out


def generator_tower_check(level=4):
    """Membership, independence and antisymmetry checks for v1, v2, v3, v4."""
    if level != 4:
        raise ValueError("the generator tower is checked at level 4")
    N = level
    rep = {"checks": {}, "dims": {}}
    ck = rep["checks"]
    K = {w: dmrd_kernel(w, N, True) for w in (1, 2, 3, 4)}
    for w in K:
        rep["dims"][w] = len(K[w])
    ck["v1 in K1"] = in_kernel(V1, 1, N, True)
    ck["v2 in K2"] = in_kernel(V2, 2, N, True)
    b12 = ihara_bracket(V1, V2, N)
    ck["{v1,v2} in K3"] = in_kernel(b12, 3, N, True)
    new3 = extend_basis([b12], K[3])
    ck["K3 = <{v1,v2}> + one new"] = len(new3) == 1
    v3 = new3[0] if new3 else LinComb()
    b13 = ihara_bracket(V1, v3, N)
    b112 = ihara_bracket(V1, b12, N)
    ck["{v1,v3} in K4"] = in_kernel(b13, 4, N, True)
    ck["{v1,{v1,v2}} in K4"] = in_kernel(b112, 4, N, True)
    ck["{v1,v3}, {v1,{v1,v2}} independent"] = span_rank([b13, b112]) == 2
    new4 = extend_basis([b13, b112], K[4])
    ck["K4 = brackets + one new"] = len(new4) == 1
    v4 = new4[0] if new4 else LinComb()
    for name, v in (("v1", V1), ("v2", V2), ("v3", v3), ("v4", v4)):
        ck[f"sigma({name}) = -{name}"] = bool(v) and sigma_involution(v) + v == LinComb()
    for w in K:
        ck[f"sigma antisymmetric on K{w}"] = all(sigma_involution(b) + b == LinComb() for b in K[w])
    rep["v3"] = v3
    rep["v4"] = v4
    rep["ok"] = all(ck.values())
    return rep


# ------------------------------------------------------------- depth two


def pair(a, b, N):
    """Normalized bracket symbol: ``(sign, (a, b))`` with a < b, or None."""
    a, b = a % N, b % N
    if a == b:
        return None
    return (1, (a, b)) if a < b else (-1, (b, a))


def _add_pair(out, a, b, N, c, drop_zero, hits):
    if (a % N == 0 or b % N == 0) and hits is not None:
        hits.append((a % N, b % N))
        if drop_zero:
            return
    p = pair(a, b, N)
    if p:
        out.add_term(p[1], c * p[0])


def depth2_bracket(a, b, N, drop_zero=False, hits=None):
    """{e(a), e(b)} = [a, b] - [a+b, b] + [a+b, a] over bracket symbols."""
    out = LinComb()
    if hits is None:
        hits = []
    _add_pair(out, a, b, N, 1, drop_zero, hits)
    _add_pair(out, a + b, b, N, -1, drop_zero, hits)
    _add_pair(out, a + b, a, N, 1, drop_zero, hits)
    return out


def depth2_projection(u, N):
    """Bracket-symbol coordinates of an e_0-free degree-2 Lie element."""
    out = LinComb()
    for w, c in u.items():
        if len(w) != 2 or ZERO in w:
            raise ValueError("expected an e_0-free element of degree 2")
        x, y = w
        if x < y:
            out.add_term((x, y), c)
    return out


def e(a, N):
    return LinComb.term(a % N)


def level_p_generators(p):
    """f_a = e(a) + e(-a), 1 <= a <= (p-1)/2."""
    return [LinComb({a: 1, p - a: 1}) for a in range(1, (p - 1) // 2 + 1)]


def level_p2_generators(p):
    """``{(k, j): g_{k,j}}`` with g_{k,j} = e(pk+j) + e(p^2-pk-j) + e(pj) + e(p^2-pj)."""
    from sympy import isprime

    if p < 5 or not isprime(p):
        raise ValueError("p must be a prime >= 5")
    N = p * p
    out = {}
    for k in range((p - 1) // 2 + 1):
        top = p - 1 if k < (p - 1) // 2 else (p - 1) // 2
        for j in range(1, top + 1):
            g = LinComb()
            for a in (p * k + j, N - p * k - j, p * j, N - p * j):
                g.add_term(a % N, 1)
            out[(k, j)] = g
    return out


def beta_image(g, h, N, drop_zero=False, hits=None):
    out = LinComb()
    for a, x in g.items():
        for b, y in h.items():
            out.iadd(depth2_bracket(a, b, N, drop_zero, hits), x * y)
    return out


def beta_kernel(level, generators=None, drop_zero=False):
    """``(dim, basis)`` of the kernel of g_i ^ g_j -> {g_i, g_j}.

    Default generators: f_a at prime level p, g_{k,j} at level p^2.
    Basis vectors are dicts ``{(i, j): coeff}`` over wedge pairs i < j.
    """
    N = level
    if generators is None:
        from sympy import factorint

        f = factorint(N)
        if len(f) == 1 and list(f.values())[0] == 2:
            generators = list(level_p2_generators(list(f)[0]).values())
        elif len(f) == 1 and list(f.values())[0] == 1:
            generators = level_p_generators(N)
        else:
            raise ValueError("default generators exist for N = p or p^2")
    wedges = list(itertools.combinations(range(len(generators)), 2))
    images = [beta_image(generators[i], generators[j], N, drop_zero) for i, j in wedges]
    syms = sorted({s for im in images for s in im})
    # columns: wedges; rows: bracket symbols
    M = SparseMatrix(wedges)
    sidx = {s: k for k, s in enumerate(syms)}
    rows = [dict() for _ in syms]
    for col, im in zip(wedges, images):
        for s, c in im.items():
            rows[sidx[s]][col] = c
    M.add_rows(rows)
    basis = [{M.columns[j]: v for j, v in vec.items()} for vec in nullspace(M)]
    return len(basis), basis


# ---------------------------------------------------------------- claim


def claim_terms(p):
    """The six sums of the level-p^2 identity as ``LinComb`` over label pairs."""
    h = (p - 3) // 2
    out = LinComb()

    def add(a, b, c):
        if a == b:
            return
        if a < b:
            out.add_term((a, b), c)
        else:
            out.add_term((b, a), -c)

    J = range(2, p - 1)
    for k in range(h + 1):
        for l in range(k, h + 1):
            for j in J:
                add((k, 1), (l, j), 1)
    for k in range(h + 2):
        for j in range(2, h + 2):
            add((k, 1), (h + 1, j), 1)
    for k in range(h + 1):
        for l in range(k + 1, h + 1):
            for j in J:
                add((k, p - 1), (l, j), 1)
    for k in range(h + 1):
        for j in range(2, h + 2):
            add((k, p - 1), (h + 1, j), 1)
    for k in range(h + 1):
        for l in range(k, h + 1):
            for j in J:
                add((k, j), (l, p - 1), -1)
    for k in range(h + 1):
        for l in range(k, h + 1):
            for j in J:
                add((k, j), (l + 1, 1), -1)
    return out


def verify_claim(p, drop_zero=False):
    """``(is_zero, distinct_term_count)`` for the level-p^2 identity."""
    gens = level_p2_generators(p)
    terms = claim_terms(p)
    N = p * p
    total = LinComb()
    for (a, b), c in terms.items():
        total.iadd(beta_image(gens[a], gens[b], N, drop_zero), c)
    return (not total), len(terms)


__all__ = [
    "V1",
    "V2",
    "beta_kernel",
    "depth2_bracket",
    "dmrd_kernel",
    "generator_tower_check",
    "ihara_bracket",
    "level_p2_generators",
    "lyndon_coordinates",
    "sigma_involution",
    "verify_claim",
]
