import pytest
from hypothesis import given, strategies as st

from g2daha.kfield import KScalar, kq
from g2daha.psi import eigenvalue
from g2daha.qdiff import (
    GENERATORS,
    KNOT_RELATIONS,
    RELATION_ALIASES,
    DiffOperator,
    W,
    apply_to_polynomial,
    make_generator,
    op_apply,
    verify_eigen,
    verify_knot_relation,
)
from g2daha.xring import x_var, xr

from strategies import shifts, x_polys


@st.composite
def operators(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 2))):
        terms[draw(shifts)] = xr(draw(x_polys(2))) / (xr(x_var(0)) + 3)
    return DiffOperator(terms)


@given(operators(), operators(), operators())
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(operators(), operators(), x_polys())
def test_action_is_a_module(a, b, f):
    assert op_apply(a * b, f) == op_apply(a, op_apply(b, f))


@given(shifts, shifts)
def test_shifts_compose(s1, s2):
    total = tuple(x + y for x, y in zip(s1, s2))
    assert DiffOperator.shift(s1) * DiffOperator.shift(s2) == DiffOperator.shift(total)


def test_commutation_with_multiplication():
    # delta x = q^{1/2} x delta along the first variable
    d = DiffOperator.shift((1, 0, 0))
    x = DiffOperator.multiplication(x_var(0))
    assert d * x == (x * d).scale(kq(2))


@pytest.mark.parametrize("rel", KNOT_RELATIONS)
def test_relations_hold_in_F(rel):
    assert verify_knot_relation(rel)


def test_aliases():
    assert set(RELATION_ALIASES) == {"5%s" % c for c in "abcdefg"}
    assert verify_knot_relation("5a")


def test_perturbed_qserre_fails():
    assert not verify_knot_relation("qserre-aba", qsum=KScalar(2))
    assert not verify_knot_relation("extra2", qsum=kq(2) + kq(-2) + 1)


def test_generators_do_not_all_commute():
    assert W("A1", "B12") != W("B12", "A1")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_eigenfunctions(table8, k):
    for t in table8.triples():
        assert verify_eigen(table8, k, t)


def test_b_is_multiplication(table8):
    p = table8[(1, 1, 2)]
    assert apply_to_polynomial(make_generator("B23"), p) == p * (x_var(2) + x_var(2, -1))


def test_non_polynomial_result_rejected():
    with pytest.raises(ValueError):
        apply_to_polynomial(make_generator("A1"), x_var(0))


def test_unknown_generator():
    with pytest.raises(KeyError):
        make_generator("A4")
    assert len(GENERATORS) == 6
