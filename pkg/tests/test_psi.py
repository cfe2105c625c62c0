import pytest
from hypothesis import given, strategies as st

from g2daha.kfield import ONE, kq
from g2daha.psi import (
    S3,
    LevelRangeError,
    PsiTable,
    PsiVector,
    StructureError,
    admissible_triples,
    apply_b,
    build_psi_table,
    compatibility_defect,
    decompose_in_psi_basis,
    eigenvalue,
    is_admissible,
    leading_structure,
    level,
    permute_triple,
    pieri_coefficient,
    verify_compatibility_symbolic,
    verify_pieri_relation,
    verify_s3_symmetry,
)
from g2daha.xring import XPolynomial, weyl_symmetrize_check, x_var

COMPAT_CASES = [(a, b1, b2) for a in (2, 0, -2) for b1 in (1, -1) for b2 in (1, -1)]
triples = st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))


def test_admissibility_examples():
    assert is_admissible((0, 0, 0)) and is_admissible((1, 1, 0)) and is_admissible((2, 2, 2))
    assert not is_admissible((1, 0, 0))  # odd sum
    assert not is_admissible((3, 1, 0))  # triangle inequality
    assert not is_admissible((-1, 1, 0))


def test_table_sizes(table8):
    assert len(admissible_triples(8)) == 35
    assert sorted(table8.triples()) == sorted(admissible_triples(8))
    assert table8[(0, 0, 0)] == XPolynomial.constant(ONE)


def test_out_of_range(table8):
    with pytest.raises(LevelRangeError):
        table8[(5, 5, 0)]


@given(triples, st.sampled_from([1, -1]), st.sampled_from([1, -1]))
def test_coefficient_vanishes_exactly_off_the_admissible_set(t, a, b):
    if not is_admissible(t):
        return
    target = (t[0] + a, t[1] + b, t[2])
    assert pieri_coefficient(a, b, t).is_zero() == (not is_admissible(target))


@pytest.mark.parametrize("which", [12, 13, 23])
def test_pieri_rules_on_table(table8, which):
    for t in table8.triples():
        if level(t) <= 6:
            assert verify_pieri_relation(table8, which, t)


@pytest.mark.parametrize("case", COMPAT_CASES)
def test_compatibility_symbolic(case):
    assert verify_compatibility_symbolic(*case)


def test_printed_bracket_variant_is_incompatible():
    assert not all(verify_compatibility_symbolic(*c, variant="printed") for c in COMPAT_CASES)


def test_perturbed_compatibility_is_detected():
    assert not compatibility_defect(0, 1, 1, perturb=True).is_zero()


def test_weyl_and_s3(table8):
    for t in table8.triples():
        assert weyl_symmetrize_check(table8[t])
        for s in S3:
            assert verify_s3_symmetry(table8, t, s)


def test_permute_triple_is_action():
    t = (3, 2, 1)
    assert {permute_triple(t, s) for s in S3} >= {(3, 2, 1)}
    assert permute_triple(t, (1, 2, 3)) == t


def test_leading_structure(table8):
    for t in table8.triples():
        ls = leading_structure(table8, t)
        assert not ls.leading.is_zero()
        assert all(sum(n) <= level(t) for n in ls.K)
        assert (ls.d1 + ls.d2, ls.d1 + ls.d3, ls.d2 + ls.d3) == (t[2], t[1], t[0])


def test_leading_structure_rejects_foreign_monomial(table8):
    bad = PsiTable(8, dict(table8.entries))
    bad.entries[(1, 1, 0)] = table8[(1, 1, 0)] + x_var(2, 5) + x_var(2, -5)
    with pytest.raises(StructureError):
        leading_structure(bad, (1, 1, 0))


def test_first_nontrivial_polynomial(table8):
    # Psi_110 is a multiple of x12 + 1/x12
    p = table8[(1, 1, 0)]
    assert set(p.terms) == {(1, 0, 0), (-1, 0, 0)}


def test_decomposition_round_trip(table8):
    p = table8[(2, 2, 0)].scale(kq(1, 1)) + table8[(1, 1, 2)] + table8[(0, 0, 0)].scale(kq(0, 3))
    d = decompose_in_psi_basis(table8, p)
    assert PsiVector(d).to_polynomial(table8) == p


def test_apply_b_matches_multiplication(table8):
    t = (2, 1, 1)
    v = apply_b(13, PsiVector.basis(t))
    assert v.to_polynomial(table8) == table8[t] * (x_var(1) + x_var(1, -1))


def test_apply_b_range_guard():
    with pytest.raises(LevelRangeError):
        apply_b(12, PsiVector.basis((4, 4, 0)), max_level=8)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_eigenvalue_depends_on_one_spin(k):
    t = [1, 2, 3]
    base = eigenvalue(k, tuple(t))
    assert base == kq(2 * t[k - 1], 2) + kq(-2 * t[k - 1], -2)
    other = list(t)
    other[k % 3] += 2
    assert eigenvalue(k, tuple(other)) == base


def test_table_json_round_trip(table8):
    small = build_psi_table(4)
    again = PsiTable.from_json(small.to_json())
    assert all(again[t] == small[t] for t in small.triples())


def test_incremental_table_matches_fresh(table8):
    assert all(build_psi_table(6)[t] == table8[t] for t in admissible_triples(6))
