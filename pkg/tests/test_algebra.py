from fractions import Fraction as Q

import pytest

import oracle
from avleibniz import (
    AveragingOperator,
    Convention,
    InducedMode,
    InvalidInput,
    LeibnizAlgebra,
    check_morphism,
    fixtures as fx,
    induced_algebra,
    search_averaging_diagonal,
    transport,
    validate_averaging,
    validate_leibniz,
)
from avleibniz.algebra import format_vector, lift_symmetry
from avleibniz.ratmat import RatMatrix
from helpers import all_pairs, diag, pair_id, to_c, to_T, valid_pairs


@pytest.fixture(scope="module")
def ex22():
    return fx.load_algebra("ex2_2")


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_zero_bracket_is_leibniz(dim):
    assert validate_leibniz(LeibnizAlgebra.abelian(dim)).passed


def test_ex22_left_fails_with_witness(ex22):
    rep = validate_leibniz(ex22, Convention.LEFT)
    assert not rep.passed
    w = rep.first
    assert w.index == (0, 0, 0)
    assert w.residual == (0, 0, -1, 0)
    assert w.describe() == "leibniz-left at (e1,e1,e1): residual -e3"


def test_ex22_right_passes(ex22):
    assert validate_leibniz(ex22, Convention.RIGHT).passed


def test_lie_algebra_passes_both_conventions():
    A = fx.load_algebra("lie2")
    assert validate_leibniz(A, Convention.LEFT).passed
    assert validate_leibniz(A, Convention.RIGHT).passed


def test_sl2_passes_both_conventions():
    # [h,e]=2e, [h,f]=-2f, [e,f]=h
    A = LeibnizAlgebra.from_basis_brackets(3, {
        (0, 1): (0, 2, 0), (1, 0): (0, -2, 0),
        (0, 2): (0, 0, -2), (2, 0): (0, 0, 2),
        (1, 2): (1, 0, 0), (2, 1): (-1, 0, 0),
    })
    assert validate_leibniz(A, Convention.LEFT).passed
    assert validate_leibniz(A, Convention.RIGHT).passed


def test_ex24_operator_fails(ex22):
    rep = validate_averaging(ex22, fx.load_operator("ex2_4_theta"))
    assert not rep.passed
    assert rep.first.index == (0, 0)
    assert rep.first.residual == (0, Q(1, 2), 0, 0)
    assert rep.first.tag == "left=middle"


@pytest.mark.parametrize("name", ["zero", "id", "good"])
def test_good_operators_pass(ex22, name):
    T = {"zero": AveragingOperator.zero(4), "id": AveragingOperator.identity(4),
         "good": fx.load_operator("good_theta")}[name]
    assert validate_averaging(ex22, T).passed


@pytest.mark.parametrize("lam", [Q(-2), Q(1, 3), Q(5)])
def test_scalar_operators_are_averaging(lam):
    for name in ("lie2", "ex2_2", "leib4"):
        A = fx.load_algebra(name)
        assert validate_averaging(A, AveragingOperator(RatMatrix.identity(A.dim).scale(lam))).passed


def test_induced_examples(ex22):
    T = fx.load_operator("good_theta")
    for mode in InducedMode:
        B = induced_algebra(ex22, T, mode)
        assert B.bracket((0, 1, 0, 0), (1, 0, 0, 0)) == (0, 0, 1, 0)
        assert B.bracket((1, 0, 0, 0), (1, 0, 0, 0)) == (0, 0, 0, 0)
        assert induced_algebra(ex22, AveragingOperator.zero(4), mode).is_abelian()


@pytest.mark.parametrize("pair", all_pairs(), ids=pair_id)
@pytest.mark.parametrize("mode", list(InducedMode), ids=lambda m: m.value)
def test_induced_bracket_matches_oracle(pair, mode):
    _, _, A, T = pair
    expected = oracle.lifted_bracket(to_c(A), to_T(T), mode.value)
    assert to_c(induced_algebra(A, T, mode)) == expected


@pytest.mark.parametrize("pair", valid_pairs(), ids=pair_id)
def test_strict_induced_is_leibniz(pair):
    _, _, A, T = pair
    assert validate_leibniz(induced_algebra(A, T, InducedMode.STRICT)).passed


def test_morphism_examples(ex22):
    T = fx.load_operator("good_theta")
    rep = check_morphism(ex22, ex22, T, T, RatMatrix.identity(4))
    assert rep.passed and rep.flags["isomorphism"]
    Z = LeibnizAlgebra.abelian(4)
    rep = check_morphism(ex22, Z, T, T, RatMatrix.zeros(4, 4))
    assert rep.passed and not rep.flags["isomorphism"]
    rep = check_morphism(ex22, ex22, T, T, RatMatrix.identity(4).scale(2))
    assert not rep.passed
    assert rep.first.index == (0, 0) and rep.first.residual == (0, -2, 0, 0)


def test_lift_symmetry_fails_on_lie2():
    rep = lift_symmetry(fx.load_algebra("lie2"), diag(0, 1))
    assert not rep.passed
    assert rep.first.index == (0, 1)


def test_transport_is_isomorphism():
    A = fx.load_algebra("leib4")
    T = fx.load_operator("good_theta")
    P = RatMatrix.from_rows([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 1, 1]])
    B, T2 = transport(A, P, T)
    assert check_morphism(A, B, T, T2, P).passed
    assert validate_leibniz(B).passed and validate_averaging(B, T2).passed


def test_search_diagonal(ex22):
    found = search_averaging_diagonal(ex22, ["0", "1/2", 1])
    diags = [tuple(T.matrix[i, i] for i in range(4)) for T in found]
    assert (0, 1, 0, 1) in diags
    for lam in (0, Q(1, 2), 1):
        assert (lam,) * 4 in diags
    assert (1, Q(1, 2), Q(1, 2), 1) not in diags
    assert diags == sorted(diags)
    assert search_averaging_diagonal(ex22, []) == []
    assert len(search_averaging_diagonal(LeibnizAlgebra.abelian(2), [0, 1, 2])) == 9


def test_search_bound():
    with pytest.raises(InvalidInput):
        search_averaging_diagonal(LeibnizAlgebra.abelian(6), range(11))


def test_format_vector():
    assert format_vector((0, 0, -1, 0)) == "-e3"
    assert format_vector((Q(1, 2), 0, 1)) == "1/2*e1 + e3"
    assert format_vector((0, 0)) == "0"


def test_dimension_mismatch_rejected():
    with pytest.raises(InvalidInput):
        validate_averaging(fx.load_algebra("lie2"), AveragingOperator.identity(3))
