"""Genus-two Macdonald polynomials: admissibility, Pieri coefficients, the table.

The polynomials are produced by solving the genus-two Pieri rule for its
raising term. A finite table (all admissible triples up to a level) is the
unit every structural check works on.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Callable, Iterator, Mapping

from .kfield import ONE, KScalar, kq
from .xring import (
    SymbolicSpectral,
    XPolynomial,
    permute_variables,
    weyl_symmetrize_check,
)

log = logging.getLogger(__name__)

Triple = tuple[int, int, int]

SIGNS = (1, -1)
PAIR_LABELS = (12, 13, 23)


class LevelRangeError(LookupError):
    """A triple (or a polynomial's degree) lies beyond the table's max level."""


class StructureError(ValueError):
    """A polynomial does not have the leading-term shape of the Ansatz."""


def is_admissible(t: Triple) -> bool:
    j1, j2, j3 = t
    return (
        j1 >= 0 and j2 >= 0 and j3 >= 0 and abs(j1 - j2) <= j3 <= j1 + j2 and (j1 + j2 + j3) % 2 == 0
    )


def level(t: Triple) -> int:
    return t[0] + t[1] + t[2]


def admissible_triples(max_level: int) -> list[Triple]:
    """All admissible triples with ``j1 + j2 + j3 <= max_level``, by level then lex."""
    out = []
    for lev in range(0, max_level + 1, 2):
        for j1 in range(lev + 1):
            for j2 in range(lev - j1 + 1):
                t = (j1, j2, lev - j1 - j2)
                if is_admissible(t):
                    out.append(t)
    return out


# ---------------------------------------------------------------------------
# Pieri coefficients


@dataclass(frozen=True)
class LinearForm:
    """Integer affine form ``c1*j1 + c2*j2 + c3*j3 + const`` in symbolic j."""

    coeffs: tuple[int, int, int] = (0, 0, 0)
    const: int = 0

    def __add__(self, other):
        if isinstance(other, int):
            return LinearForm(self.coeffs, self.const + other)
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.const + other.const)

    __radd__ = __add__

    def __mul__(self, k: int):
        return LinearForm(tuple(k * a for a in self.coeffs), k * self.const)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)


J_SYMBOLIC = (LinearForm((1, 0, 0)), LinearForm((0, 1, 0)), LinearForm((0, 0, 1)))


def _quarter_power(field, quarter_q, half_t: int):
    """``q^{quarter_q/4} t^{half_t/2}`` in ``field`` (quarter_q may be symbolic)."""
    if isinstance(quarter_q, LinearForm):
        c = quarter_q.coeffs
        return field.monomial((quarter_q.const, 2 * half_t, c[0], c[1], c[2]))
    return field.monomial((quarter_q, 2 * half_t))


def _bracket2(field, twice_n, m: int):
    """``[n, m]_{q,t}`` with ``n = twice_n / 2``."""
    num = _quarter_power(field, twice_n, m) - _quarter_power(field, -twice_n, -m)
    return num / (field.monomial((2,)) - field.monomial((-2,)))


def pieri_formula(a: int, b: int, j1, j2, j3, field=KScalar, variant: str = "symmetric"):
    """Raw Pieri coefficient ``C_{a,b}(j1, j2, j3)`` with no admissibility check.

    ``j`` may be integers or :class:`LinearForm` (with ``field`` set to
    :class:`SymbolicSpectral`). ``variant="printed"`` uses ``(a+3)/2`` in the
    ``j2`` denominator brackets instead of ``(b+3)/2``; it is kept only so the
    two readings can be compared.
    """
    if a not in SIGNS or b not in SIGNS:
        raise ValueError("a, b must be +-1")
    mb = (a + 3) // 2 if variant == "printed" else (b + 3) // 2
    ma = (a + 3) // 2
    num = (
        _bracket2(field, a * j1 + b * j2 + j3, (a + b + 2) // 2)
        * _bracket2(field, a * j1 + b * j2 - j3, (a + b) // 2)
        * _bracket2(field, 2 * j1 - 2, 2)
        * _bracket2(field, 2 * j2 - 2, 2)
    )
    den = (
        _bracket2(field, 2 * j1, ma)
        * _bracket2(field, 2 * j1 - 2, ma)
        * _bracket2(field, 2 * j2, mb)
        * _bracket2(field, 2 * j2 - 2, mb)
    )
    if den.is_zero():
        raise ZeroDivisionError("vanishing bracket in Pieri denominator at %s" % ((a, b, j1, j2, j3),))
    return num / den if a * b == 1 else -(num / den)


@lru_cache(maxsize=None)
def pieri_coefficient(a: int, b: int, t: Triple) -> KScalar:
    """``C_{a,b}(t)`` for an admissible source triple ``t``."""
    if not is_admissible(t):
        raise ValueError("source triple %s is not admissible" % (t,))
    return pieri_formula(a, b, *t)


# Pieri rule for multiplication by x_P + x_P^{-1}: the coefficient argument
# order and the index shift for each pair P.
def _args(pair: int, t):
    j1, j2, j3 = t
    if pair == 12:
        return (j1, j2, j3)
    if pair == 13:
        return (j1, j3, j2)
    if pair == 23:
        return (j2, j3, j1)
    raise ValueError("pair must be one of 12, 13, 23")


def _shift(pair: int, a: int, b: int) -> Triple:
    if pair == 12:
        return (a, b, 0)
    if pair == 13:
        return (a, 0, b)
    return (0, a, b)


PAIR_VAR = {12: 0, 13: 1, 23: 2}


def pieri_terms(pair: int, t: Triple) -> Iterator[tuple[Triple, KScalar]]:
    """Nonzero ``(target, coefficient)`` pairs of one Pieri rule at ``t``."""
    args = _args(pair, t)
    for a in SIGNS:
        for b in SIGNS:
            c = pieri_coefficient(a, b, args)
            if not c.is_zero():
                s = _shift(pair, a, b)
                yield (t[0] + s[0], t[1] + s[1], t[2] + s[2]), c


def eigenvalue(k: int, t: Triple) -> KScalar:
    """``q^{j_k/2} t^{1/2} + q^{-j_k/2} t^{-1/2}``."""
    j = t[k - 1]
    return kq(2 * j, 2) + kq(-2 * j, -2)


# ---------------------------------------------------------------------------
# the table


@dataclass
class PsiTable:
    max_level: int
    entries: dict = field(default_factory=dict)

    def __getitem__(self, t: Triple) -> XPolynomial:
        t = tuple(t)
        if not is_admissible(t):
            return XPolynomial()
        if level(t) > self.max_level:
            raise LevelRangeError("triple %s beyond max_level %d" % (t, self.max_level))
        return self.entries[t]

    def __contains__(self, t) -> bool:
        return tuple(t) in self.entries

    def triples(self) -> list[Triple]:
        return sorted(self.entries, key=lambda t: (level(t), t))

    def to_json(self) -> dict:
        return {
            "max_level": self.max_level,
            "entries": [{"j": list(t), "poly": self.entries[t].to_json()} for t in self.triples()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PsiTable":
        entries = {tuple(e["j"]): XPolynomial.from_json(e["poly"]) for e in data["entries"]}
        return cls(int(data["max_level"]), entries)


def construction_step(t: Triple) -> tuple[int, Triple]:
    """The Pieri rule and source triple used to build ``t`` (level > 0)."""
    j1, j2, j3 = t
    if j1 > 0 and j2 > 0 and j3 < j1 + j2:
        return 12, (j1 - 1, j2 - 1, j3)
    if j1 > 0 and j3 > 0:
        return 13, (j1 - 1, j2, j3 - 1)
    return 23, (j1, j2 - 1, j3 - 1)


def build_psi_table(max_level: int = 8, base: PsiTable | None = None) -> PsiTable:
    """Solve the Pieri rule for the raising term, level by level.

    ``base`` may hold an already-built lower table to extend.
    """
    if max_level < 0:
        raise ValueError("max_level must be >= 0")
    table = PsiTable(max_level, dict(base.entries) if base else {})
    table.entries.setdefault((0, 0, 0), XPolynomial.constant(1))
    for t in admissible_triples(max_level):
        if t in table.entries:
            continue
        pair, src = construction_step(t)
        if not is_admissible(src):
            raise AssertionError("construction source %s for %s is not admissible" % (src, t))
        lead = None
        rest = table.entries[src].times_p(PAIR_VAR[pair])
        for target, c in pieri_terms(pair, src):
            if target == t:
                lead = c
            else:
                rest = rest - table[target].scale(c)
        if lead is None or lead.is_zero():
            raise AssertionError("raising coefficient vanishes at %s -> %s" % (src, t))
        table.entries[t] = rest.scale(ONE / lead)
        log.debug("built Psi%s with %d terms", t, len(table.entries[t]))
    return table


def verify_pieri_relation(table: PsiTable, which: int, t: Triple) -> bool:
    """Check ``(x_P + x_P^{-1}) Psi_t = sum C Psi_{t'}`` exactly."""
    if level(t) + 2 > table.max_level:
        raise LevelRangeError("Pieri relation at %s needs level %d" % (t, level(t) + 2))
    lhs = table[t].times_p(PAIR_VAR[which])
    rhs = XPolynomial()
    for target, c in pieri_terms(which, t):
        rhs = rhs + table[target].scale(c)
    return lhs == rhs


def compatibility_defect(a: int, b1: int, b2: int, *, variant: str = "symmetric", perturb: bool = False):
    """Commutator coefficient of the x12- and x13-Pieri rules at ``j + (a, b1, b2)``.

    Computed for symbolic ``j``; it vanishes identically iff the two rules
    commute on that diagonal for every ``j`` at once.
    """
    J1, J2, J3 = J_SYMBOLIC

    def C(a_, b_, x, y, z):
        return pieri_formula(a_, b_, x, y, z, field=SymbolicSpectral, variant=variant)

    total = SymbolicSpectral.zero()
    for a1 in SIGNS:
        a2 = a - a1
        if a2 not in SIGNS:
            continue
        first = C(a1, b1, J1, J2, J3)
        if perturb:
            first = first * 2
        total = total + first * C(a2, b2, J1 + a1, J3, J2 + b1)
        total = total - C(a1, b2, J1, J3, J2) * C(a2, b1, J1 + a1, J2, J3 + b2)
    return total


def verify_compatibility_symbolic(a: int, b1: int, b2: int, **kw) -> bool:
    if a not in (-2, 0, 2) or b1 not in SIGNS or b2 not in SIGNS:
        raise ValueError("need a in {-2, 0, 2} and b1, b2 in {+1, -1}")
    return compatibility_defect(a, b1, b2, **kw).is_zero()


# ---------------------------------------------------------------------------
# symmetry and leading structure


def permute_triple(t: Triple, sigma: tuple[int, int, int]) -> Triple:
    """Index triple of ``permute_variables(Psi_t, sigma)``: ``out[sigma(i)] = t[i]``."""
    out = [0, 0, 0]
    for i in range(3):
        out[sigma[i] - 1] = t[i]
    return tuple(out)


S3 = tuple(permutations((1, 2, 3)))


def verify_s3_symmetry(table: PsiTable, t: Triple, sigma: tuple[int, int, int]) -> bool:
    return permute_variables(table[t], sigma) == table[permute_triple(t, sigma)]


@dataclass(frozen=True)
class LeadingStructure:
    d1: int
    d2: int
    d3: int
    K: dict

    @property
    def leading(self) -> KScalar:
        return self.K[(0, 0, 0)]


def leading_structure(table: PsiTable, t: Triple) -> LeadingStructure:
    """Split ``Psi_t`` as ``x12^d3 x13^d2 x23^d1 * sum K_n * (cone monomials)^n``.

    Raises :class:`StructureError` when a monomial falls outside the cone,
    when ``n1 + n2 + n3`` exceeds the level, or when ``K_000`` vanishes.
    """
    j1, j2, j3 = t
    if not is_admissible(t):
        raise ValueError("%s is not admissible" % (t,))
    d1, d2, d3 = (-j1 + j2 + j3) // 2, (j1 - j2 + j3) // 2, (j1 + j2 - j3) // 2
    K = {}
    for (e12, e13, e23), c in table[t].terms.items():
        r12, r13, r23 = e12 - d3, e13 - d2, e23 - d1
        sums = (r12 + r13, r12 + r23, r13 + r23)
        if any(s % 2 or s > 0 for s in sums):
            raise StructureError("monomial %s of Psi%s outside the cone" % ((e12, e13, e23), t))
        n = tuple(-s // 2 for s in sums)
        if sum(n) > j1 + j2 + j3:
            raise StructureError("monomial %s of Psi%s too deep in the cone" % ((e12, e13, e23), t))
        K[n] = c
    if (0, 0, 0) not in K:
        raise StructureError("K_000 vanishes for Psi%s" % (t,))
    return LeadingStructure(d1, d2, d3, K)


def triple_of_leading(e: tuple[int, int, int]) -> Triple:
    """Admissible triple whose Psi has leading monomial ``x12^e12 x13^e13 x23^e23``."""
    e12, e13, e23 = e
    return (e13 + e12, e23 + e12, e23 + e13)


def decompose_in_psi_basis(table: PsiTable, p: XPolynomial) -> dict:
    """Expand a Weyl-symmetric ``p`` as ``sum_t coeff_t Psi_t`` by leading-term elimination."""
    if not weyl_symmetrize_check(p):
        raise ValueError("polynomial is not Weyl-symmetric")
    residual = p
    out: dict = {}
    while residual.terms:
        deg = max(sum(e) for e in residual.terms)
        e = max(k for k in residual.terms if sum(k) == deg)
        if min(e) < 0:
            raise AssertionError("symmetric residual has a non-dominant top monomial %s" % (e,))
        t = triple_of_leading(e)
        if level(t) > table.max_level:
            raise LevelRangeError("decomposition needs Psi%s beyond max_level %d" % (t, table.max_level))
        psi = table[t]
        coeff = residual.terms[e] / psi.terms[e]
        out[t] = out.get(t, KScalar.zero()) + coeff
        residual = residual - psi.scale(coeff)
    out = {t: c for t, c in out.items() if not c.is_zero()}
    recon = XPolynomial()
    for t, c in out.items():
        recon = recon + table[t].scale(c)
    if recon != p:
        raise AssertionError("decomposition failed to reconstruct the input")
    return out


# ---------------------------------------------------------------------------
# vectors in the Psi basis


class PsiVector(dict):
    """Finite k-linear combination of Psi basis elements, ``{triple: KScalar}``."""

    @classmethod
    def basis(cls, t: Triple) -> "PsiVector":
        return cls({tuple(t): ONE})

    def add_term(self, t: Triple, c: KScalar) -> None:
        if c.is_zero():
            return
        s = self.get(t)
        if s is None:
            self[t] = c
        else:
            s = s + c
            if s.is_zero():
                del self[t]
            else:
                self[t] = s

    def __add__(self, other):
        out = PsiVector(self)
        for t, c in other.items():
            out.add_term(t, c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k) -> "PsiVector":
        if not isinstance(k, KScalar):
            k = KScalar(k)
        if k.is_zero():
            return PsiVector()
        return PsiVector({t: c * k for t, c in self.items()})

    def max_level(self) -> int:
        return max((level(t) for t in self), default=0)

    def to_polynomial(self, table: PsiTable) -> XPolynomial:
        out = XPolynomial()
        for t, c in self.items():
            out = out + table[t].scale(c)
        return out


def apply_b(pair: int, vec: Mapping, max_level: int | None = None) -> PsiVector:
    """Multiplication by ``x_P + x_P^{-1}`` in the Psi basis (Pieri rule)."""
    out = PsiVector()
    for t, c in vec.items():
        for target, k in pieri_terms(pair, t):
            if max_level is not None and level(target) > max_level:
                raise LevelRangeError("support escapes to %s beyond level %d" % (target, max_level))
            out.add_term(target, c * k)
    return out


def apply_eigen(k: int, vec: Mapping) -> PsiVector:
    """Diagonal action with the knot-operator eigenvalues in the Psi basis."""
    return PsiVector({t: c * eigenvalue(k, t) for t, c in vec.items()})


def apply_diagonal(vec: Mapping, weight: Callable[[Triple], KScalar]) -> PsiVector:
    return PsiVector({t: c * weight(t) for t, c in vec.items()})
