"""Hypothesis strategies for scalars and Laurent polynomials."""
from hypothesis import strategies as st

from g2daha.kfield import KScalar, kq
from g2daha.xring import XPolynomial

small_int = st.integers(-3, 3)


@st.composite
def k_poly(draw, max_terms=3):
    n = draw(st.integers(1, max_terms))
    out = KScalar.zero()
    for _ in range(n):
        out = out + kq(draw(st.integers(-4, 4)), draw(st.integers(-4, 4)), draw(small_int))
    return out


@st.composite
def scalars(draw):
    num = draw(k_poly())
    den = draw(k_poly())
    if den.is_zero():
        den = KScalar.one()
    return num / den


@st.composite
def nonzero_scalars(draw):
    s = draw(scalars())
    return s if not s.is_zero() else KScalar.one()


@st.composite
def x_polys(draw, max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(-2, 2)) for _ in range(3))
        terms[e] = draw(k_poly(2))
    return XPolynomial(terms)


shifts = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
