from fractions import Fraction

import pytest
from hypothesis import given

from g2daha.kfield import kq
from g2daha.psi import S3
from g2daha.xring import (
    XPolynomial,
    permute_variables,
    substitute_shift,
    weyl_symmetrize_check,
    x_var,
    xr,
)

from strategies import shifts, x_polys

PT = (Fraction(3, 2), Fraction(5, 3), Fraction(7, 2), Fraction(2, 5), Fraction(11, 4))


@given(x_polys(), x_polys())
def test_evaluation_homomorphism(a, b):
    assert (a * b).evaluate(*PT) == a.evaluate(*PT) * b.evaluate(*PT)
    assert (a + b).evaluate(*PT) == a.evaluate(*PT) + b.evaluate(*PT)


@given(x_polys(), shifts, shifts)
def test_shift_additivity(p, s1, s2):
    total = tuple(a + b for a, b in zip(s1, s2))
    assert substitute_shift(substitute_shift(p, s1), s2) == substitute_shift(p, total)


@given(x_polys(), shifts)
def test_shift_agrees_on_rationals(p, s):
    r = xr(p) / (xr(x_var(0)) + 2)
    lhs = substitute_shift(r, s)
    rhs = xr(substitute_shift(p, s)) / (xr(substitute_shift(x_var(0), s)) + 2)
    assert lhs == rhs


@given(x_polys())
def test_s3_action_is_a_group_action(p):
    def compose(s, t):
        return tuple(s[t[i] - 1] for i in range(3))

    for s in S3:
        for t in S3:
            assert permute_variables(permute_variables(p, t), s) == permute_variables(p, compose(s, t))


def test_shift_scales_monomial():
    assert substitute_shift(x_var(1, 3), (0, 1, 0)) == x_var(1, 3).scale(kq(6))


def test_weyl_check():
    sym = x_var(0) + x_var(0, -1)
    assert weyl_symmetrize_check(sym * (x_var(2, 2) + x_var(2, -2)))
    assert not weyl_symmetrize_check(x_var(0))


@given(x_polys())
def test_json_round_trip(p):
    assert XPolynomial.from_json(p.to_json()) == p


def test_laurent_detection():
    r = xr(x_var(0, 2) - 1) / (xr(x_var(0)) - 1)
    assert r.is_laurent_polynomial()
    assert r.to_polynomial() == x_var(0) + 1
    bad = xr(1) / (xr(x_var(0)) - 1)
    assert not bad.is_laurent_polynomial()
    with pytest.raises(ValueError):
        bad.to_polynomial()
