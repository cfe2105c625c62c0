"""Laurent polynomials and rational functions in x12, x13, x23 over k."""
from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping

import flint

from .kfield import ONE, KScalar, RationalFunction, kq, poly_terms, to_latex

Exp3 = tuple[int, int, int]

VARS = ("x12", "x13", "x23")
PAIRS = ((1, 2), (1, 3), (2, 3))
PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}
EXP_LIMIT = 2**31


def _check_exp(e: Exp3) -> Exp3:
    if any(abs(k) >= EXP_LIMIT for k in e):
        raise OverflowError("exponent out of range: %s" % (e,))
    return e


class XPolynomial:
    """Laurent polynomial ``sum c_e x12^e12 x13^e13 x23^e23`` with c_e in k.

    ``terms`` maps exponent triples to nonzero :class:`KScalar`. Treat as
    immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Exp3, KScalar] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if not isinstance(c, KScalar):
                c = KScalar(c)
            if not c.is_zero():
                clean[_check_exp(tuple(e))] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def constant(cls, c) -> "XPolynomial":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, e: Exp3, c=ONE) -> "XPolynomial":
        return cls({tuple(e): c})

    @classmethod
    def _raw(cls, terms: dict) -> "XPolynomial":
        out = cls.__new__(cls)
        out.terms = terms
        out._hash = None
        return out

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, XPolynomial):
            return other
        if isinstance(other, (int, KScalar)):
            return XPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return XPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return XPolynomial._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, KScalar)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _check_exp((e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]))
                c = c1 * c2
                s = out.get(e)
                out[e] = c if s is None else s + c
        return XPolynomial._raw({e: c for e, c in out.items() if not c.is_zero()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, k) -> "XPolynomial":
        if not isinstance(k, KScalar):
            k = KScalar(k)
        if k.is_zero():
            return XPolynomial()
        if k.is_one():
            return self
        return XPolynomial._raw({e: c * k for e, c in self.terms.items()})

    def __truediv__(self, k):
        if isinstance(k, (int, KScalar)):
            return self.scale(ONE / k)
        return NotImplemented

    def __pow__(self, n: int):
        out = XPolynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def times_p(self, var: int) -> "XPolynomial":
        """Multiply by ``x_var + x_var^{-1}`` (var is 0, 1, 2 for x12, x13, x23)."""
        out: dict = {}
        for e, c in self.terms.items():
            for d in (1, -1):
                f = list(e)
                f[var] += d
                f = tuple(f)
                s = out.get(f)
                out[f] = c if s is None else s + c
        return XPolynomial._raw({e: c for e, c in out.items() if not c.is_zero()})

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, e: Exp3) -> KScalar:
        return self.terms.get(tuple(e), KScalar.zero())

    def total_degree(self) -> int:
        return max(sum(e) for e in self.terms) if self.terms else -(10**9)

    # conversions ------------------------------------------------------
    def to_rational(self) -> "XRational":
        if not self.terms:
            return XRational.zero()
        den = KScalar.ctx.constant(1)
        for c in self.terms.values():
            g = den.gcd(c.den)
            den = den * (c.den / g)
        shift = [min(0, min(e[i] for e in self.terms)) for i in range(3)]
        d = {}
        for e, c in self.terms.items():
            scaled = c.num * (den / c.den)
            key_x = tuple(e[i] - shift[i] for i in range(3))
            for (i, j), a in poly_terms(scaled).items():
                d[(i, j) + key_x] = a
        num = XRational.ctx.from_dict(d)
        dd = {(i, j) + tuple(-s for s in shift): a for (i, j), a in poly_terms(den).items()}
        return XRational(num, XRational.ctx.from_dict(dd))

    def evaluate(self, u, v, x12, x13, x23):
        return self.to_rational().evaluate((u, v, x12, x13, x23))

    def to_json(self) -> dict:
        return {"terms": [[e[0], e[1], e[2], c.to_json()] for e, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, data: Mapping) -> "XPolynomial":
        return cls({(int(a), int(b), int(c)): KScalar.from_json(k) for a, b, c, k in data["terms"]})

    def latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = " ".join(
                "x_{%s}" % name[1:] + ("" if k == 1 else "^{%d}" % k) for name, k in zip(VARS, e) if k
            )
            coeff = to_latex(c)
            if c.is_one() and mono:
                parts.append(mono)
            elif (-c).is_one() and mono:
                parts.append("-" + mono)
            else:
                parts.append("\\left(%s\\right) %s" % (coeff, mono) if mono else "\\left(%s\\right)" % coeff)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        if not self.terms:
            return "XPolynomial(0)"
        items = ["(%s)*x^%s" % (c, e) for e, c in sorted(self.terms.items())]
        return "XPolynomial(%s)" % " + ".join(items)


def x_var(index: int, power: int = 1) -> XPolynomial:
    e = [0, 0, 0]
    e[index] = power
    return XPolynomial.monomial(tuple(e))


def p_var(index: int) -> XPolynomial:
    """``x + x^{-1}`` in the given variable."""
    return x_var(index, 1) + x_var(index, -1)


X12, X13, X23 = (x_var(i) for i in range(3))


def x_add(a, b):
    return a + b


def x_sub(a, b):
    return a - b


def x_mul(a, b):
    return a * b


def x_scale(k: KScalar, a):
    return a * k


def x_div(a, b):
    """Exact quotient of rational functions (polynomial inputs are promoted)."""
    if isinstance(a, XPolynomial):
        a = a.to_rational()
    if isinstance(b, XPolynomial):
        b = b.to_rational()
    return a / b


def weyl_symmetrize_check(p: XPolynomial) -> bool:
    """True iff ``p`` is invariant under every inversion ``x_ab -> x_ab^{+-1}``."""
    keys = p.terms
    for signs in product((1, -1), repeat=3):
        if signs == (1, 1, 1):
            continue
        for e, c in keys.items():
            img = (signs[0] * e[0], signs[1] * e[1], signs[2] * e[2])
            if keys.get(img) != c:
                return False
    return True


def permute_exponents(e: Exp3, sigma: tuple[int, int, int]) -> Exp3:
    out = [0, 0, 0]
    for (a, b), k in zip(PAIRS, e):
        sa, sb = sigma[a - 1], sigma[b - 1]
        out[PAIR_INDEX[(min(sa, sb), max(sa, sb))]] += k
    return tuple(out)


def permute_variables(p: XPolynomial, sigma: tuple[int, int, int]) -> XPolynomial:
    """Relabel ``x_ab -> x_{sigma(a) sigma(b)}`` (with ``x_ba = x_ab``).

    ``sigma`` is given by its images ``(sigma(1), sigma(2), sigma(3))``.
    """
    return XPolynomial._raw({permute_exponents(e, sigma): c for e, c in p.terms.items()})


# ---------------------------------------------------------------------------
# rational functions


class XRational(RationalFunction):
    """Element of k(x12, x13, x23), stored over Z[u, v, x12, x13, x23]."""

    ctx = flint.fmpz_mpoly_ctx.get(("u", "v", "x12", "x13", "x23"), "lex")
    __slots__ = ()

    def substitute_shift(self, shifts: Exp3) -> "XRational":
        return substitute_shift(self, shifts)

    def is_laurent_polynomial(self) -> bool:
        """True iff the denominator is (x-monomial) * (polynomial in u, v)."""
        xs = {e[2:] for e in poly_terms(self.den)}
        return len(xs) == 1

    def to_polynomial(self) -> XPolynomial:
        dterms = poly_terms(self.den)
        xs = {e[2:] for e in dterms}
        if len(xs) != 1:
            raise ValueError("not a Laurent polynomial in x: denominator %s" % self.den)
        (xshift,) = xs
        dk = KScalar.ctx.from_dict({e[:2]: c for e, c in dterms.items()})
        groups: dict = {}
        for e, c in poly_terms(self.num).items():
            groups.setdefault(e[2:], {})[e[:2]] = c
        out = {}
        for ex, d in groups.items():
            key = tuple(a - b for a, b in zip(ex, xshift))
            out[key] = KScalar(KScalar.ctx.from_dict(d), dk)
        return XPolynomial(out)


def xr(p) -> XRational:
    """Promote a polynomial or scalar to :class:`XRational`."""
    if isinstance(p, XRational):
        return p
    if isinstance(p, XPolynomial):
        return p.to_rational()
    return XRational.one() * p


def xr_monomial(eu: int, ev: int, e12: int = 0, e13: int = 0, e23: int = 0, coeff=1) -> XRational:
    return XRational.monomial((eu, ev, e12, e13, e23), coeff)


def _shift_poly(p, shifts: Exp3):
    terms = poly_terms(p)
    moved = {}
    for e, c in terms.items():
        du = 2 * (shifts[0] * e[2] + shifts[1] * e[3] + shifts[2] * e[4])
        moved[(e[0] + du,) + e[1:]] = c
    low = min(e[0] for e in moved)
    if low:
        moved = {(e[0] - low,) + e[1:]: c for e, c in moved.items()}
    return XRational.ctx.from_dict(moved), low


def substitute_shift(r, shifts: Exp3):
    """Substitute ``x_ab -> q^{a_ab/2} x_ab`` for the shift triple ``(a12, a13, a23)``."""
    if isinstance(r, XPolynomial):
        return XPolynomial(
            {e: c * kq(2 * (shifts[0] * e[0] + shifts[1] * e[1] + shifts[2] * e[2])) for e, c in r.terms.items()}
        )
    if r.is_zero() or shifts == (0, 0, 0):
        return r
    num, ln = _shift_poly(r.num, shifts)
    den, ld = _shift_poly(r.den, shifts)
    k = ln - ld
    u = XRational.ctx.gens()[0]
    if k > 0:
        num = num * u**k
    elif k < 0:
        den = den * u ** (-k)
    return XRational(num, den)


# ---------------------------------------------------------------------------
# symbolic spectral parameters


class SymbolicSpectral(RationalFunction):
    """Rational function in u, v and ``w_i = q^{j_i/4}`` for symbolic j."""

    ctx = flint.fmpz_mpoly_ctx.get(("u", "v", "w1", "w2", "w3"), "lex")
    __slots__ = ()
