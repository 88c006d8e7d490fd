import json
import math

import pytest

from asep_tableaux.bijections import (
    AlternativeTableau,
    PermutationTableau,
    alt_to_perm,
    alt_to_staircase,
    column_heights,
    enumerate_alt,
    enumerate_perm,
    enumerate_staircase_ab,
    perm_to_alt,
    perm_to_staircase,
    row_lengths,
    staircase_to_alt,
    staircase_to_perm,
    validate_alt,
    validate_perm,
)
from asep_tableaux.errors import DomainError, ShapeError, ValidationError
from asep_tableaux.tableaux import StaircaseTableau

# the size-7 example: diagonal word alpha alpha beta alpha beta beta alpha
FIGURE_STAIRCASE = """7
.b..a.a
..a..a
....b
.b.a
..b
.b
a"""
FIGURE_ALT = "VVHVHHV\n<.^\n.^.\n<.\n-"
FIGURE_PERM = "VVVHVHHV\n100\n001\n111\n01\n-"


def test_shape_helpers():
    assert row_lengths("VVHVHHV") == [3, 3, 2, 0]
    assert column_heights("VVHVHHV") == [3, 3, 2]
    assert row_lengths("") == [] and column_heights("HH") == [0, 0]


def test_figure_example():
    t = StaircaseTableau.from_text(FIGURE_STAIRCASE)
    at = staircase_to_alt(t)
    assert at.to_text() == FIGURE_ALT
    pt = alt_to_perm(at)
    assert pt.to_text() == FIGURE_PERM
    assert pt.length == 8 and at.length == 7
    assert perm_to_staircase(pt) == t


def test_size_one():
    at = staircase_to_alt(StaircaseTableau.from_text("1\na"))
    assert at.border == "V" and at.rows == ((),)
    assert staircase_to_alt(StaircaseTableau.from_text("1\nb")).border == "H"


def test_smallest_permutation_tableau():
    pt = PermutationTableau("VH", ((1,),))
    at = perm_to_alt(pt)
    assert at.length == 1 and at.border == "H" and at.rows == ()


def test_size_two_alpha_beta():
    t = StaircaseTableau.from_text("2\n.a\nb")
    at = staircase_to_alt(t)
    # one row of length one, no arrows
    assert at.border == "VH" and at.rows == ((".",),)


def test_size_two_all_six():
    imgs = {staircase_to_alt(t) for t in enumerate_staircase_ab(2)}
    assert len(imgs) == 6 and all(validate_alt(x) and x.length == 2 for x in imgs)


def test_length_three_permutation_tableaux():
    P = list(enumerate_perm(3))
    assert len(P) == 6
    assert len({perm_to_alt(p) for p in P}) == 6


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_cardinalities(n):
    size = math.factorial(n + 1)
    assert len(list(enumerate_staircase_ab(n))) == size
    assert len(list(enumerate_alt(n))) == size
    assert len(list(enumerate_perm(n + 1))) == size


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_roundtrips(n):
    for t in enumerate_staircase_ab(n):
        at = staircase_to_alt(t)
        assert validate_alt(at) and alt_to_staircase(at) == t
        pt = staircase_to_perm(t)
        assert validate_perm(pt) and pt.length == n + 1
        assert perm_to_staircase(pt) == t
    for at in enumerate_alt(n):
        assert perm_to_alt(alt_to_perm(at)) == at
        assert staircase_to_alt(alt_to_staircase(at)) == at
    for pt in enumerate_perm(n + 1):
        assert alt_to_perm(perm_to_alt(pt)) == pt


def test_permutation_tableau_rules():
    assert not validate_perm(PermutationTableau("VH", ((0,),)))  # column without a 1
    assert not validate_perm(PermutationTableau("VVHH", ((0, 1), (1, 0))))  # 0 with 1 above and 1 left
    assert validate_perm(PermutationTableau("VVHH", ((1, 1), (0, 1))))


def test_alternative_tableau_rules():
    assert not validate_alt(AlternativeTableau("VHH", (("^", "<"),)))
    assert not validate_alt(AlternativeTableau("VVH", (("^",), ("^",))))
    assert not validate_alt(AlternativeTableau("VVH", (("<",), ("^",))))
    assert validate_alt(AlternativeTableau("VVH", (("^",), ("<",))))
    assert validate_alt(AlternativeTableau("VVH", (("<",), ("<",))))
    assert validate_alt(AlternativeTableau("VHH", (("<", "^"),)))


def test_invalid_inputs():
    with pytest.raises(ValidationError):
        perm_to_alt(PermutationTableau("VH", ((0,),)))
    with pytest.raises(ValidationError):
        alt_to_perm(AlternativeTableau("VVH", (("^",), ("^",))))
    with pytest.raises(DomainError):
        staircase_to_alt(StaircaseTableau.from_text("1\ng"))
    with pytest.raises(DomainError):
        staircase_to_alt(StaircaseTableau.from_text("2\n.a\nd"))
    with pytest.raises(ShapeError):
        AlternativeTableau("VH", ((".", "."),))
    with pytest.raises(ShapeError):
        PermutationTableau("VX", ((1,),))
    with pytest.raises(ShapeError):
        PermutationTableau.from_text("VH\n2\n-")


def test_serialization_roundtrip():
    for at in enumerate_alt(3):
        assert AlternativeTableau.from_text(at.to_text()) == at
        assert AlternativeTableau.from_json(json.dumps(at.to_json())) == at
    for pt in enumerate_perm(4):
        assert PermutationTableau.from_text(pt.to_text()) == pt
        assert PermutationTableau.from_json(pt.to_json()) == pt
    empty = AlternativeTableau("", ())
    assert AlternativeTableau.from_text(empty.to_text()) == empty
