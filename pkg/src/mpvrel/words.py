"""Words, compositions, shuffle and stuffle products, regularization.

Conventions
-----------
A letter is an ``int``: ``ZERO`` (= -1) stands for e_0 and ``a`` in
``range(N)`` stands for e_{mu^a}, mu = exp(2 pi i / N).  Letter 0 is
therefore e_1.  The order ``ZERO < 0 < 1 < ... < N-1`` is the natural
integer order.

A word is a tuple of letters, leftmost letter first.  Its value Z(w) is
the regularized iterated integral from 0 to 1 whose leftmost letter is the
outermost integration (closest to 1).

A composition is a tuple of ``(s, a)`` pairs and names the series
``Li_{s_1..s_n}(mu^{a_1}, .., mu^{a_n})`` summed over k_1 > ... > k_n > 0.
The coefficient of e_0^{s_1-1} e_{z_1} ... e_0^{s_n-1} e_{z_n} is
(-1)^n Li_s(1/z_1, z_1/z_2, ..., z_{n-1}/z_n).
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .lincomb import LinComb

ZERO = -1
E1 = 0


def check_level(N):
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"level must be a positive integer, got {N!r}")
    return N


def alphabet(N):
    return [ZERO] + list(range(N))


def is_convergent_word(w):
    return not w or (w[0] != E1 and w[-1] != ZERO)


def is_convergent_composition(c):
    return not c or c[0] != (1, 0)


def composition_weight(c):
    return sum(s for s, _ in c)


# ---------------------------------------------------------------- products


@lru_cache(maxsize=None)
def _shuffle(u, v):
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out = {}
    a, b = u[0], v[0]
    for w, m in _shuffle(u[1:], v).items():
        k = (a,) + w
        out[k] = out.get(k, 0) + m
    for w, m in _shuffle(u, v[1:]).items():
        k = (b,) + w
        out[k] = out.get(k, 0) + m
    return out


def shuffle(u, v):
    """Shuffle product of two words (or bilinearly, of two LinCombs)."""
    if isinstance(u, dict) or isinstance(v, dict):
        u = u if isinstance(u, dict) else {u: 1}
        v = v if isinstance(v, dict) else {v: 1}
        out = LinComb()
        for wu, cu in u.items():
            for wv, cv in v.items():
                out.iadd(_shuffle(wu, wv), cu * cv)
        return out
    return LinComb(_shuffle(tuple(u), tuple(v)))


def shuffle_power(w, k):
    """``w`` shuffled with itself ``k`` times (k >= 0)."""
    out = LinComb.term(())
    for _ in range(k):
        out = shuffle(out, w)
    return out


@lru_cache(maxsize=None)
def _stuffle(a, b, N):
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    out = {}
    (s, x), (t, y) = a[0], b[0]
    merged = (s + t, (x + y) % N)
    for head, rest in (
        (a[0], _stuffle(a[1:], b, N)),
        (b[0], _stuffle(a, b[1:], N)),
        (merged, _stuffle(a[1:], b[1:], N)),
    ):
        for c, m in rest.items():
            k = (head,) + c
            out[k] = out.get(k, 0) + m
    return out


def stuffle(a, b, N):
    """Quasi-shuffle product of compositions at level ``N``."""
    if isinstance(a, dict) or isinstance(b, dict):
        a = a if isinstance(a, dict) else {a: 1}
        b = b if isinstance(b, dict) else {b: 1}
        out = LinComb()
        for ca, xa in a.items():
            for cb, xb in b.items():
                out.iadd(_stuffle(ca, cb, N), xa * xb)
        return out
    return LinComb(_stuffle(tuple(a), tuple(b), N))


# ------------------------------------------------------------- conversions


def composition_to_word(c, N):
    """Return ``(sign, word)`` with Li(c) = sign * Z(word)."""
    word = []
    acc = 0
    for s, a in c:
        acc = (acc + a) % N
        word.extend([ZERO] * (s - 1))
        word.append((-acc) % N)
    return (-1) ** len(c), tuple(word)


def word_to_composition(w, N):
    """Return ``(sign, composition)`` with Z(w) = sign * Li(composition)."""
    w = tuple(w)
    if w and w[-1] == ZERO:
        raise ValueError("a word ending in e_0 has no series form")
    parts = []
    s = 1
    prev = 0
    for x in w:
        if x == ZERO:
            s += 1
            continue
        parts.append((s, (prev - x) % N))
        prev = x
        s = 1
    return (-1) ** len(parts), tuple(parts)


def compositions_to_words(lc, N):
    """Map a LinComb of compositions to the signed LinComb of words."""
    out = LinComb()
    for c, v in lc.items():
        sign, w = composition_to_word(c, N)
        out.add_term(w, sign * v)
    return out


# ---------------------------------------------------------- regularization


def _reg_zero_tail(w):
    """Remove trailing e_0's using c(e_0) = 0; returns {word: coeff}."""
    b = 0
    while b < len(w) and w[-1 - b] == ZERO:
        b += 1
    if b == 0:
        return {w: 1}
    if b == len(w):
        return {}
    u, y = w[: -b - 1], w[-b - 1]
    sign = (-1) ** b
    return {x + (y,): sign * m for x, m in _shuffle(u, (ZERO,) * b).items()}


def _split_e1_head(w):
    """Decompose ``w`` (not ending in e_0) as sum_j e_1^j sh X_j.

    Returns a list ``X`` of dicts (index j), each over convergent words.
    Here e_1^j is the concatenation power, whose value is T^j / j!.
    """
    a = 0
    while a < len(w) and w[a] == E1:
        a += 1
    if a == 0:
        return [{w: 1}]
    if a == len(w):
        return [{}] * a + [{(): 1}]
    y, u = w[a], w[a + 1 :]
    out = []
    for j in range(a + 1):
        sign = (-1) ** (a - j)
        out.append({(y,) + x: sign * m for x, m in _shuffle((E1,) * (a - j), u).items()})
    return out


@lru_cache(maxsize=None)
def _reg_poly(w):
    polys = []
    for x, m in _reg_zero_tail(w).items():
        for j, part in enumerate(_split_e1_head(x)):
            while len(polys) <= j:
                polys.append({})
            tgt = polys[j]
            for word, c in part.items():
                v = tgt.get(word, 0) + m * c
                if v:
                    tgt[word] = v
                else:
                    tgt.pop(word, None)
    return tuple(tuple(p.items()) for p in polys)


def shuffle_regularize_poly(w):
    """Regularized value of ``w`` as a polynomial in T = Z(e_1).

    Returns a list ``P`` of LinCombs over convergent words with
    Z(w; T) = sum_j Z(P[j]) * T**j / j!.  The e_0 regularization parameter
    is fixed to 0.
    """
    return [LinComb(dict(p)) for p in _reg_poly(tuple(w))]


def shuffle_regularize(w):
    """T = 0 shuffle regularization of a word or LinComb of words."""
    if isinstance(w, dict):
        out = LinComb()
        for x, c in w.items():
            out.iadd(shuffle_regularize(x), c)
        return out
    polys = _reg_poly(tuple(w))
    return LinComb(dict(polys[0])) if polys else LinComb()


@lru_cache(maxsize=None)
def _stuffle_reg(c, N):
    a = 0
    while a < len(c) and c[a] == (1, 0):
        a += 1
    if a == 0:
        return {c: 1}
    # (1;0) * c' = a * c + (terms with fewer leading (1;0)), and the
    # regularization kills the product on the left.
    rest = c[1:]
    out = {}
    for x, m in _stuffle(((1, 0),), rest, N).items():
        if x == c:
            continue
        for y, k in _stuffle_reg(x, N).items():
            v = out.get(y, 0) + m * k
            if v:
                out[y] = v
            else:
                out.pop(y, None)
    return {y: Fraction(-v, a) for y, v in out.items()}


def stuffle_regularize(c, N):
    """T = 0 series regularization: Li_1(1) -> 0, extended via stuffle."""
    if isinstance(c, dict):
        out = LinComb()
        for x, v in c.items():
            out.iadd(stuffle_regularize(x, N), v)
        return out
    return LinComb(_stuffle_reg(tuple(c), N))


# -------------------------------------------------------------- enumeration


def enumerate_words(weight, N, convergent_only=False):
    """All words of the given weight in lexicographic order."""
    if weight < 0:
        raise ValueError("weight must be >= 0")
    words = itertools.product(alphabet(N), repeat=weight)
    if convergent_only:
        return [w for w in words if is_convergent_word(w)]
    return list(words)


def enumerate_compositions(weight, N, convergent_only=False):
    """All compositions of the given weight, grouped by word order."""
    out = []
    for w in enumerate_words(weight, N):
        if w and w[-1] != ZERO:
            _, c = word_to_composition(w, N)
            if not convergent_only or is_convergent_composition(c):
                out.append(c)
    return out


def exp_word_coefficient(k):
    """Value factor of the concatenation power e^k inside exp(T e)."""
    return Fraction(1, factorial(k))


# ------------------------------------------------------------ string forms


def letter_str(x):
    return "0" if x == ZERO else f"z{x}"


def word_str(w):
    return ".".join(letter_str(x) for x in w) if w else "1"


def parse_word(s, N=None):
    s = s.strip()
    if s in ("", "1"):
        return ()
    out = []
    for tok in s.split("."):
        if tok == "0":
            out.append(ZERO)
        elif tok.startswith("z") and tok[1:].lstrip("-").isdigit():
            a = int(tok[1:])
            out.append(a % N if N else a)
        else:
            raise ValueError(f"bad letter {tok!r} in word {s!r}")
    return tuple(out)


def composition_str(c, N):
    ss = ",".join(str(s) for s, _ in c)
    aa = ",".join(str(a) for _, a in c)
    return f"Li[{ss}; {aa}]@{N}"


_COMP_RE = re.compile(r"^\s*Li\[\s*([\d,\s]*);\s*([-\d,\s]*)\]\s*@\s*(\d+)\s*$")


def parse_composition(s):
    """Parse ``Li[s1,..,sn; a1,..,an]@N`` into ``(composition, N)``."""
    m = _COMP_RE.match(s)
    if not m:
        raise ValueError(f"bad composition string {s!r}")
    N = int(m.group(3))
    ss = [int(x) for x in m.group(1).split(",") if x.strip()]
    aa = [int(x) for x in m.group(2).split(",") if x.strip()]
    if len(ss) != len(aa) or any(x < 1 for x in ss):
        raise ValueError(f"bad composition string {s!r}")
    return tuple((x, a % N) for x, a in zip(ss, aa)), N
