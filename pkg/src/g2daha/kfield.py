"""Exact arithmetic in k = Q(q^{1/4}, t^{1/4}).

The polynomial generators are ``u = q^{1/4}`` and ``v = t^{1/4}``; every scalar
is a reduced ratio of integer polynomials in ``u, v``. Negative quarter
powers live in the denominator.

The multivariate GCD is delegated to FLINT (``python-flint``). The same
fraction engine is reused by :mod:`g2daha.xring` with more generators.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import ClassVar, Iterable, Mapping

import flint


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at one of its poles."""


def poly_terms(p) -> dict:
    """Exponent-tuple -> int coefficient view of a FLINT polynomial."""
    return {tuple(int(k) for k in e): int(c) for e, c in p.to_dict().items()}


def _poly_key(p) -> tuple:
    return tuple(sorted(poly_terms(p).items()))


class RationalFunction:
    """Reduced fraction ``num/den`` of integer polynomials over a fixed context.

    Canonical form: ``gcd(num, den) = 1`` in Z[gens] (integer content
    included) and the leading coefficient of ``den`` in lex order is
    positive. Equality is then field-by-field equality.

    Subclasses fix ``ctx``; the first two generators are always ``u, v``.
    """

    ctx: ClassVar["flint.fmpz_mpoly_ctx"]
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, _reduced: bool = False):
        ctx = self.ctx
        if isinstance(num, Fraction):
            num, den = num.numerator * den, num.denominator
        if isinstance(num, int):
            num = ctx.constant(num)
        if isinstance(den, int):
            den = ctx.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = ctx.constant(1)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        self.num = num
        self.den = den
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def monomial(cls, exps: Iterable[int], coeff: int | Fraction = 1):
        """``coeff * prod(gen_i ** e_i)`` with exponents of either sign."""
        exps = tuple(exps)
        n = cls.ctx.nvars()
        if len(exps) != n:
            exps = exps + (0,) * (n - len(exps))
        up = tuple(max(e, 0) for e in exps)
        down = tuple(max(-e, 0) for e in exps)
        coeff = Fraction(coeff)
        num = cls.ctx.from_dict({up: coeff.numerator})
        den = cls.ctx.from_dict({down: coeff.denominator})
        return cls(num, den)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple, int | Fraction]):
        """Sum of signed-exponent monomials, e.g. ``{(1, 0): 1, (-1, 0): 1}``."""
        n = cls.ctx.nvars()
        shift = [0] * n
        for e in terms:
            for i, ei in enumerate(e):
                shift[i] = min(shift[i], ei)
        den_int = 1
        for c in terms.values():
            den_int = den_int * Fraction(c).denominator // _gcd(den_int, Fraction(c).denominator)
        d = {}
        for e, c in terms.items():
            c = Fraction(c) * den_int
            if c:
                key = tuple(ei - si for ei, si in zip(e, shift))
                d[key] = d.get(key, 0) + int(c)
        num = cls.ctx.from_dict(d) if d else cls.ctx.constant(0)
        den = cls.ctx.from_dict({tuple(-s for s in shift): den_int})
        return cls(num, den)

    @classmethod
    def zero(cls):
        return cls(cls.ctx.constant(0), cls.ctx.constant(1), _reduced=True)

    @classmethod
    def one(cls):
        return cls(cls.ctx.constant(1), cls.ctx.constant(1), _reduced=True)

    # coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return type(self)(other)
        if isinstance(other, RationalFunction) and type(other).ctx.nvars() <= self.ctx.nvars():
            return type(self)._lift(other)
        return NotImplemented

    @classmethod
    def _lift(cls, other: "RationalFunction"):
        """Embed a rational function whose generators are a prefix of ours."""
        pad = (0,) * (cls.ctx.nvars() - other.ctx.nvars())

        def lift(p):
            return cls.ctx.from_dict({e + pad: c for e, c in poly_terms(p).items()}) if not p.is_zero() else cls.ctx.constant(0)

        return cls(lift(other.num), lift(other.den), _reduced=True)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return type(self)(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g.is_one():
            return type(self)(self.num * other.den + other.num * self.den, self.den * other.den)
        bd, dd = self.den / g, other.den / g
        return type(self)(self.num * dd + other.num * bd, self.den * dd)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return type(self).zero()
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = (self.num / g1) * (other.num / g2)
        den = (self.den / g2) * (other.den / g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return type(self)(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero in %s" % type(self).__name__)
        return type(self)(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return type(self)(self.num**n, self.den**n, _reduced=True)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, _poly_key(self.num), _poly_key(self.den)))
        return self._hash

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __bool__(self):
        return not self.is_zero()

    def canonicalize(self):
        return type(self)(self.num, self.den)

    # evaluation -------------------------------------------------------
    def evaluate(self, values: Iterable[Fraction | int]) -> Fraction:
        vals = [Fraction(x) for x in values]
        d = _eval_poly(self.den, vals)
        if d == 0:
            raise PoleError("denominator vanishes at %s" % (tuple(vals),))
        return _eval_poly(self.num, vals) / d

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__, self)

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def _eval_poly(p, vals) -> Fraction:
    total = Fraction(0)
    for e, c in poly_terms(p).items():
        term = Fraction(c)
        for x, k in zip(vals, e):
            if k:
                term *= x**k
        total += term
    return total


# ---------------------------------------------------------------------------
# the ground field


class KScalar(RationalFunction):
    """Element of k as a reduced ratio ``num(u, v) / den(u, v)``."""

    ctx = flint.fmpz_mpoly_ctx.get(("u", "v"), "lex")
    __slots__ = ()

    def to_json(self) -> dict:
        return {"num": _poly_json(self.num), "den": _poly_json(self.den)}

    @classmethod
    def from_json(cls, data: Mapping) -> "KScalar":
        def poly(rows):
            d = {(int(eu), int(ev)): int(c) for eu, ev, c in rows}
            return cls.ctx.from_dict(d) if d else cls.ctx.constant(0)

        return cls(poly(data["num"]), poly(data["den"]))

    def latex(self) -> str:
        return to_latex(self)


def _poly_json(p) -> list:
    return [[e[0], e[1], str(c)] for e, c in sorted(poly_terms(p).items())]


def kq(eu: int = 0, ev: int = 0, coeff: int | Fraction = 1) -> KScalar:
    """Monomial ``coeff * u^eu * v^ev = coeff * q^{eu/4} * t^{ev/4}``."""
    return KScalar.monomial((eu, ev), coeff)


ZERO = KScalar.zero()
ONE = KScalar.one()
U = kq(1, 0)
V = kq(0, 1)
Q = kq(4, 0)
T = kq(0, 4)


def k_add(a: KScalar, b: KScalar) -> KScalar:
    return a + b


def k_sub(a: KScalar, b: KScalar) -> KScalar:
    return a - b


def k_mul(a: KScalar, b: KScalar) -> KScalar:
    return a * b


def k_div(a: KScalar, b: KScalar) -> KScalar:
    return a / b


def k_neg(a: KScalar) -> KScalar:
    return -a


def k_eq(a: KScalar, b: KScalar) -> bool:
    return a == b


@lru_cache(maxsize=None)
def qt_bracket(n: int, m: int) -> KScalar:
    """``[n, m]_{q,t} = (q^{n/2} t^{m/2} - q^{-n/2} t^{-m/2}) / (q^{1/2} - q^{-1/2})``."""
    return (kq(2 * n, 2 * m) - kq(-2 * n, -2 * m)) / (kq(2) - kq(-2))


def _fourth_root(x: Fraction) -> Fraction:
    x = Fraction(x)
    if x <= 0:
        raise ValueError("need a positive rational fourth power, got %s" % x)
    out = []
    for part in (x.numerator, x.denominator):
        r = round(part ** 0.25)
        for cand in (r - 1, r, r + 1):
            if cand > 0 and cand**4 == part:
                out.append(cand)
                break
        else:
            raise ValueError("%s is not the fourth power of a rational" % x)
    return Fraction(out[0], out[1])


def k_evaluate(a: KScalar, q_val=None, t_val=None, *, u_val=None, v_val=None) -> Fraction:
    """Exact value of ``a`` at a rational point.

    Either give ``u_val, v_val`` (values of q^{1/4}, t^{1/4}) or ``q_val,
    t_val`` that are fourth powers of positive rationals.
    """
    if u_val is None:
        u_val = _fourth_root(q_val)
    if v_val is None:
        v_val = _fourth_root(t_val)
    return a.evaluate((u_val, v_val))


def substitute_t_equals_q(a: KScalar) -> KScalar:
    """Specialise ``t = q`` (i.e. ``v = u``)."""

    def spec(p):
        d = {}
        for (i, j), c in poly_terms(p).items():
            d[(i + j, 0)] = d.get((i + j, 0), 0) + c
        d = {k: c for k, c in d.items() if c}
        return KScalar.ctx.from_dict(d) if d else KScalar.ctx.constant(0)

    return KScalar(spec(a.num), spec(a.den))


def to_latex(a: KScalar) -> str:
    """LaTeX with q, t fractional powers; numerator over denominator."""

    def mono(eu, ev):
        parts = []
        for name, e in (("q", eu), ("t", ev)):
            if e == 0:
                continue
            f = Fraction(e, 4)
            if f == 1:
                parts.append(name)
            elif f.denominator == 1:
                parts.append("%s^{%d}" % (name, f.numerator))
            else:
                parts.append("%s^{%d/%d}" % (name, f.numerator, f.denominator))
        return " ".join(parts)

    def poly(p):
        items = sorted(poly_terms(p).items(), reverse=True)
        out = ""
        for k, (e, c) in enumerate(items):
            m = mono(*e)
            sign = "-" if c < 0 else ("+" if k else "")
            mag = abs(c)
            body = m if (mag == 1 and m) else (str(mag) + (" " + m if m else ""))
            out += (" %s " % sign if k else sign) + body
        return out.strip() or "0"

    if a.den.is_one():
        return poly(a.num)
    return r"\frac{%s}{%s}" % (poly(a.num), poly(a.den))
