from mpvrel.lincomb import LinComb
from mpvrel.octahedral import (
    FIVE_WORDS,
    conj_coefficients,
    derive_conj,
    extract_octahedral_rows,
    octa_left_side,
    octahedral_lie_rows,
    rho,
    sigma,
)
from mpvrel.relations import NINE_BASIS
from mpvrel.series import check_group_like, unit_defect
from mpvrel.words import ZERO


def test_left_side_weight_one_is_standard():
    from mpvrel.relations import standard_bound

    defect = unit_defect(octa_left_side(1), 1)
    assert defect
    assert standard_bound(1, 4, list(defect.values())) == standard_bound(1, 4)


def test_left_side_is_group_like():
    assert check_group_like(octa_left_side(2)) == []


def test_weight_two_rows_are_relations():
    from mpvrel.relations import standard_bound

    rows = [r for r in extract_octahedral_rows(2, words="all")]
    assert standard_bound(2, 4, rows) == standard_bound(2, 4)


def test_conj_normalization():
    rel = derive_conj()
    a, b = conj_coefficients(rel)
    assert a == 5
    assert b == (46, -7, -13, 13, -1, 25, -8, 18)
    assert set(rel) <= set(NINE_BASIS)


def test_five_words_shape():
    assert len(FIVE_WORDS) == 5
    assert all(len(w) == 4 and w[0] == 3 for w in FIVE_WORDS)


def test_lie_rows_annihilate_v2():
    from mpvrel.lie import V2

    rows = octahedral_lie_rows(2)
    assert rows and all(r.family == "OCTA" for r in rows)
    for row in rows:
        assert sum(c * V2.get(w, 0) for w, c in row.entries.items()) == 0


def test_rho_and_sigma_on_e0():
    assert rho()[ZERO] == LinComb.term(0)
    assert sigma()[ZERO] == LinComb.term(0)
