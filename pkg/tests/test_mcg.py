import pytest

from g2daha import mcg
from g2daha.kfield import ONE
from g2daha.mcg import (
    NCPolynomial,
    ResourceError,
    Side,
    check_claim,
    elementary,
    format_word,
    inverse_word,
    parse_word,
    substitute,
    word_automorphism,
)
from g2daha.qdiff import GENERATORS


def test_parse_and_format():
    w = parse_word("a1∘b12^-1∘a2^{-1}")
    assert w == (("a1", 1), ("b12", -1), ("a2", -1))
    assert parse_word(format_word(w)) == w
    assert inverse_word(w) == (("a2", 1), ("b12", 1), ("a1", -1))
    assert parse_word("I") == mcg.FOURIER_WORD
    assert parse_word("Ĩ") == mcg.FOURIER_TILDE_WORD


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_word("c7")


def test_nc_polynomial_is_noncommutative():
    a, b = NCPolynomial.letter("A1"), NCPolynomial.letter("B12")
    assert a * b != b * a
    assert (a * b).max_a_letters() == 1
    assert (a + b) - b == a


def test_twist_fixes_distant_generators():
    a1 = elementary(("a1", 1))
    assert a1.image("A2") == NCPolynomial.letter("A2")
    assert a1.image("B23") == NCPolynomial.letter("B23")
    assert a1.image("B12") != NCPolynomial.letter("B12")


def test_budget_is_enforced():
    with pytest.raises(ResourceError):
        word_automorphism(parse_word("a1∘b12∘a1∘b12∘a1∘b12"), budget=10)
    with pytest.raises(ResourceError):
        substitute(NCPolynomial.word("B12", "B12", "B12"), {"B12": NCPolynomial.letter("A1") + NCPolynomial.letter("B12")}, budget=3)


@pytest.mark.parametrize("i,j", [(1, 2), (1, 3), (2, 3)])
@pytest.mark.parametrize("sign", [1, -1])
def test_b_rule_matches_shift_action(i, j, sign):
    for g in GENERATORS:
        assert mcg.verify_b_rule_in_F(i, j, sign, g)


def test_perturbed_b_rule_fails():
    assert not mcg.verify_b_rule_in_F(1, 2, 1, "A1", quarter=2)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_a_rule_matches_conjugation(k):
    for g in GENERATORS:
        for s in (1, -1):
            assert mcg.verify_automorphism_consistency(k, g, 6, sign=s)


def test_perturbed_a_rule_fails():
    assert mcg.perturbed_consistency_fails()


@pytest.mark.parametrize("tw", ["a1", "a3", "b12", "b23"])
def test_inverse_pairs(tw):
    res = mcg.verify_inverse_pair(tw, 4)
    assert res and all(in_f and on_h for in_f, on_h in res.values())


def test_commutativity_brute():
    for lw, rw in mcg.commutativity_relations():
        r = mcg.verify_relation_word(lw, rw, "brute", 6)
        assert r.holds


def test_braid_brute_one():
    lw, rw = mcg.braid_relations()[0]
    assert mcg.verify_relation_word(lw, rw, "brute", 6).holds


def test_non_relation_is_rejected():
    r = mcg.verify_relation_word("a1∘b12", "b12∘a1", "brute", 4)
    assert not r.holds


def test_essential_claims():
    claims = mcg.essential_fourier_claims(4)
    assert claims and all(c.holds for c in claims)


def test_fourier_permutation_has_order_six():
    assert mcg.permutation_order(mcg.permutation_of(0)) == 6


def test_fourier_table_on_small_level():
    claims = mcg.fourier_table_claims(4)
    assert all(c.holds for c in claims)


def test_displayed_shortcut_resolution():
    r = mcg.fourier_printed_shortcut(4)
    assert r["(a1∘b12∘a2)(B12) = A2"] and not r["(a1∘b12∘a2)(B12) = A1"]


def test_b13_denominator():
    assert mcg.b13_denominator_resolution(4) == {"minus": True, "plus": False}


def test_false_claim_reports_failure():
    c = check_claim("bogus", Side.of("a1", "B12"), Side.of((), "B12"), level=4)
    assert not c.holds and not c.on_h


def test_claim_guarantee_levels():
    c = check_claim("b-only", Side.of("b12∘a1", "B12"), Side.of((), "A1"), level=4)
    assert c.holds and c.guarantee == "certified-on-H≤4"
    d = check_claim("no twist", Side.of((), "A1"), Side.of((), "A1"), level=4)
    assert d.guarantee == "proof-in-F"


def test_lazy_evaluator_agrees_with_substitution():
    w = parse_word("a1∘b12∘a2")
    aut = word_automorphism(w)
    ev = mcg.WordEvaluator()
    for g in GENERATORS:
        for t in mcg.basis_vectors(4):
            lazy = ev.poly_on_vector(w, NCPolynomial.letter(g), {t: ONE})
            assert lazy == mcg.eval_nc_on_psi(aut.image(g), {t: ONE})


def test_last_relation_chain_small_level():
    assert all(c.holds for c in mcg.last_relation_claims(4))
