from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpvrel.bounds import lyndon_dim
from mpvrel.lie import (
    V1,
    V2,
    beta_kernel,
    bracket_of,
    claim_terms,
    commutator,
    depth2_bracket,
    depth2_projection,
    dmrd_kernel,
    e,
    from_lyndon_coordinates,
    ihara_bracket,
    in_kernel,
    is_lie,
    level_p2_generators,
    lyndon_bracket,
    lyndon_coordinates,
    lyndon_words,
    sigma_involution,
    verify_claim,
)
from mpvrel.lincomb import LinComb
from mpvrel.words import ZERO, alphabet


@st.composite
def lie_element(draw, N, max_deg=2):
    """A random homogeneous Lie polynomial: sum of nested letter brackets."""
    deg = draw(st.integers(1, max_deg))
    out = LinComb()
    for _ in range(draw(st.integers(1, 2))):
        letters = [draw(st.sampled_from(alphabet(N))) for _ in range(deg)]
        out.iadd(bracket_of(*letters), draw(st.integers(-2, 2)))
    return out


levels = st.integers(1, 4)


@given(levels.flatmap(lambda N: st.tuples(st.just(N), lie_element(N), lie_element(N))))
def test_ihara_antisymmetric(data):
    N, u, v = data
    assert ihara_bracket(u, v, N) == -ihara_bracket(v, u, N)


@given(levels.flatmap(lambda N: st.tuples(st.just(N), lie_element(N), lie_element(N), lie_element(N, 1))))
def test_ihara_jacobi(data):
    N, u, v, w = data
    br = lambda a, b: ihara_bracket(a, b, N)  # noqa: E731
    total = br(u, br(v, w)) + br(v, br(w, u)) + br(w, br(u, v))
    assert total == LinComb()


@given(levels.flatmap(lambda N: st.tuples(st.just(N), lie_element(N), lie_element(N))))
def test_ihara_bracket_is_lie(data):
    N, u, v = data
    assert is_lie(ihara_bracket(u, v, N))


@given(st.integers(2, 13).flatmap(lambda N: st.tuples(st.just(N), st.integers(0, N - 1), st.integers(0, N - 1))))
def test_depth2_matches_ihara(data):
    N, a, b = data
    full = ihara_bracket(LinComb.term((a,)), LinComb.term((b,)), N)
    assert depth2_projection(full, N) == depth2_bracket(a, b, N)


def test_depth2_zero_hits_reported():
    hits = []
    depth2_bracket(1, 4, 5, hits=hits)
    assert (0, 4) in hits and (0, 1) in hits
    assert depth2_bracket(1, 4, 5, drop_zero=True) == LinComb({(1, 4): 1})


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_lyndon_word_count(n):
    # lyndon_dim omits one of the two letters in degree 1
    assert len(lyndon_words(n, [0, 1])) == lyndon_dim(n) + (1 if n == 1 else 0)


@given(st.integers(1, 4).flatmap(lambda n: st.sampled_from(lyndon_words(n, [ZERO, 0, 1]))))
def test_lyndon_bracket_leading_word(l):
    P = lyndon_bracket(l)
    assert min(P) == l and P[l] == 1


@given(lie_element(3, 3))
def test_lyndon_coordinates_roundtrip(u):
    assert from_lyndon_coordinates(lyndon_coordinates(u)) == u


def test_non_lie_detected():
    assert not is_lie(LinComb.term((0, 1)))
    assert is_lie(commutator(LinComb.term((0,)), LinComb.term((1,))))


def test_generators_small_degree():
    assert in_kernel(V1, 1, 4, True)
    assert in_kernel(V2, 2, 4, True)
    assert sigma_involution(V1) == -V1 and sigma_involution(V2) == -V2
    b = ihara_bracket(V1, V2, 4)
    assert in_kernel(b, 3, 4, True)


def test_kernel_dims_weight_three():
    assert len(dmrd_kernel(3, 4)) == 3
    assert len(dmrd_kernel(3, 4, True)) == 2
    assert len(dmrd_kernel(3, 4, splits="letter")) == 3


def test_kernel_elements_are_lie():
    assert all(is_lie(v) for v in dmrd_kernel(3, 4))


@pytest.mark.parametrize("N,dim", [(5, 1), (7, 2), (11, 5), (13, 7)])
def test_beta_prime_levels(N, dim):
    assert beta_kernel(N)[0] == dim == (N * N - 1) // 24


def test_beta_kernel_vectors():
    dim, basis = beta_kernel(7)
    assert dim == len(basis) == 2
    gens = [e(1, 7) + e(6, 7), e(2, 7) + e(5, 7), e(3, 7) + e(4, 7)]
    _, basis2 = beta_kernel(7, generators=gens)
    assert basis2 == basis


@pytest.mark.parametrize("p,n", [(5, 10), (7, 21)])
def test_level_p2_generator_count(p, n):
    gens = level_p2_generators(p)
    assert len(gens) == n
    assert all(sum(g.values()) == 4 for g in gens.values())


def test_claim_small():
    assert verify_claim(5) == (True, 25)
    assert len(claim_terms(7)) == 98


def test_bad_level():
    with pytest.raises(ValueError):
        level_p2_generators(4)
    with pytest.raises(ValueError):
        beta_kernel(12)


def test_weight_four_kernels():
    full = dmrd_kernel(4, 4)
    assert all(is_lie(v) for v in full)
    # single-letter splits leave room for non-Lie solutions
    assert not all(is_lie(v) for v in dmrd_kernel(4, 4, splits="letter"))
