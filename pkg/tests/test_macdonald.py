import pytest

from g2daha import macdonald as mac
from g2daha.kfield import ONE, kq
from g2daha.xring import x_var


def test_first_polynomials():
    assert mac.macdonald_p(0) == x_var(0, 0)
    assert mac.macdonald_p(1) == x_var(0) + x_var(0, -1)
    p2 = mac.macdonald_p(2)
    assert set(p2.terms) == {(2, 0, 0), (0, 0, 0), (-2, 0, 0)}


@pytest.mark.parametrize("n", range(7))
def test_schur_limit(n):
    assert mac.verify_schur_limit(n)


@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("m", range(7))
def test_product_expansion(n, m):
    assert mac.verify_product_expansion(n, m)


def test_product_coefficient_range():
    with pytest.raises(ValueError):
        mac.product_coefficient_N(2, 1, 5)


def test_specialisation_product_is_reciprocal():
    for n in range(7):
        assert mac.principal_specialization(n) * mac.specialization_product(n) == ONE


@pytest.mark.parametrize("n", range(5))
@pytest.mark.parametrize("m", range(5))
def test_macbasis(n, m):
    for k in range(3):
        assert mac.verify_macbasis(n, m, k)


@pytest.mark.parametrize("n", range(5))
@pytest.mark.parametrize("m", range(5))
def test_wa1(n, m):
    for k in range(3):
        assert mac.verify_wa1(n, m, k)


def test_wa1_vector_matches_polynomial(table12):
    for n, m in [(1, 1), (2, 1), (3, 2)]:
        assert mac.product_vector(n, m).to_polynomial(table12) == mac.product_basis(n, m)
        assert mac.verify_wa1_on_table(table12, n, m)


def test_reduction_orientation(table8):
    for l in range(1, 5):
        assert mac.verify_reduction(table8, l).orientation == "printed"
    assert mac.verify_reduction(table8, 0).orientation == "ambiguous"


def test_decomposition_orientation(table12):
    for n in range(7):
        for m in range(7 - n):
            res = mac.verify_decomposition(table12, n, m).orientation
            assert res == ("ambiguous" if n == m == 0 else "printed")


def test_corrupted_table_is_falsified(table8):
    from g2daha.psi import PsiTable

    bad = PsiTable(8, dict(table8.entries))
    bad.entries[(2, 2, 0)] = table8[(2, 2, 0)].scale(kq(0, 0, 2))
    with pytest.raises(mac.FalsificationError):
        mac.verify_reduction(bad, 2)
