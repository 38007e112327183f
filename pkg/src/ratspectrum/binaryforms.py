"""Homogeneous forms in two variables U, V.

A form of degree D is stored as its coefficient vector c_0..c_D where c_i
multiplies U^i V^(D-i).  The degree is a tag: the zero form keeps it, and a
form divisible by V simply has c_D = 0.  "Monic" means the coefficient of the
highest power of U that occurs is one (lex order with U > V).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .errors import InfiniteSpectrumError, PreconditionError
from .polyring import MultiPoly, PolyRing
from .ring import (
    QQ,
    ZZ,
    Frac,
    FractionField,
    ModInt,
    PrimeField,
    UniPoly,
    probable_prime_above,
    rational_reconstruction,
    upoly_ddf_degrees,
    upoly_gcd,
    upoly_radical,
    upoly_roots_fp,
)

__all__ = [
    "BinaryForm",
    "ProjPoint",
    "RootsResult",
    "form_gcd",
    "proj_roots",
    "ring_tag",
    "coeff_to_json",
]


def ring_tag(ring) -> str:
    if ring is ZZ:
        return "Z"
    if ring is QQ:
        return "Q"
    if isinstance(ring, PrimeField):
        return f"Fp:{ring.p}"
    if isinstance(ring, FractionField) and isinstance(ring.domain, PolyRing):
        return "Q(" + ",".join(ring.domain.names) + ")"
    if isinstance(ring, PolyRing):
        return "Q[" + ",".join(ring.names) + "]"
    return repr(ring)


def coeff_to_json(c):
    """Integers stay integers; everything else becomes its exact text."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, ModInt):
        return c.v
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if isinstance(c, MultiPoly):
        return c.to_text()
    if isinstance(c, Frac):
        num = c.num.to_text() if isinstance(c.num, MultiPoly) else str(c.num)
        if c.den == c.field.domain.one:
            return num
        den = c.den.to_text() if isinstance(c.den, MultiPoly) else str(c.den)
        return f"({num})/({den})"
    return str(c)


def _field_of_ring(ring):
    if ring is ZZ:
        return QQ
    if isinstance(ring, PolyRing):
        return FractionField(ring)
    return ring


class BinaryForm:
    __slots__ = ("ring", "degree", "coeffs")

    def __init__(self, ring, degree: int, coeffs: Sequence):
        if degree < 0:
            raise PreconditionError("form degree must be nonnegative")
        cs = [ring(c) for c in coeffs]
        if len(cs) > degree + 1:
            if any(cs[degree + 1 :]):
                raise PreconditionError("coefficient vector longer than the degree allows")
            cs = cs[: degree + 1]
        cs += [ring.zero] * (degree + 1 - len(cs))
        self.ring = ring
        self.degree = degree
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring, degree: int = 0) -> "BinaryForm":
        return cls(ring, degree, [])

    @classmethod
    def from_unipoly(cls, p: UniPoly, degree: int | None = None) -> "BinaryForm":
        """Homogenize p(t) with t = U/V to the given degree (default deg p)."""
        D = p.degree if degree is None else degree
        if D < p.degree:
            raise PreconditionError("degree tag below polynomial degree")
        return cls(p.field, max(D, 0), p.coeffs)

    @classmethod
    def linear(cls, ring, lam, mu) -> "BinaryForm":
        """The form mu*U - lam*V vanishing at (lam:mu)."""
        return cls(ring, 1, [-ring(lam), ring(mu)])

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    @property
    def u_degree(self) -> int:
        """Largest i with c_i != 0 (-1 for the zero form)."""
        for i in range(self.degree, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    @property
    def v_multiplicity(self) -> int:
        """Exponent of V dividing the form."""
        if self.is_zero():
            raise PreconditionError("zero form has no V multiplicity")
        return self.degree - self.u_degree

    def lc(self):
        i = self.u_degree
        return self.coeffs[i] if i >= 0 else self.ring.zero

    def evaluate(self, lam, mu):
        acc = self.ring.zero
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * (lam**i) * (mu ** (self.degree - i))
        return acc

    def __call__(self, point: "ProjPoint"):
        return self.evaluate(point.lam, point.mu)

    def dehomogenize(self) -> UniPoly:
        """p(t) = F(t, 1) over the fraction field of the coefficient ring."""
        K = _field_of_ring(self.ring)
        return UniPoly(K, [K(c) for c in self.coeffs])

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [self.ring.zero] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        if b:
                            out[i + j] = out[i + j] + a * b
            return BinaryForm(self.ring, self.degree + other.degree, out)
        c = self.ring(other)
        return BinaryForm(self.ring, self.degree, [x * c for x in self.coeffs])

    __rmul__ = __mul__

    def __neg__(self):
        return BinaryForm(self.ring, self.degree, [-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, BinaryForm) or other.degree != self.degree:
            raise PreconditionError("can only add forms of equal degree")
        return BinaryForm(self.ring, self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return self + (-other)

    def monic(self) -> "BinaryForm":
        if self.is_zero():
            return self
        K = _field_of_ring(self.ring)
        inv = K.one / K(self.lc())
        return BinaryForm(K, self.degree, [K(c) * inv for c in self.coeffs])

    def to_field(self) -> "BinaryForm":
        K = _field_of_ring(self.ring)
        if K is self.ring:
            return self
        return BinaryForm(K, self.degree, [K(c) for c in self.coeffs])

    def map_coeffs(self, fn, ring) -> "BinaryForm":
        """Apply a ring morphism coefficientwise; the degree tag is kept."""
        return BinaryForm(ring, self.degree, [fn(c) for c in self.coeffs])

    def divides(self, other: "BinaryForm") -> bool:
        """Exact divisibility over the fraction field."""
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return True
        if self.v_multiplicity > other.v_multiplicity:
            return False
        r = other.dehomogenize() % self.dehomogenize()
        return not r

    def exquo(self, other: "BinaryForm") -> "BinaryForm":
        """Quotient over the fraction field; raises if not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if not other.divides(self):
            raise PreconditionError("form is not divisible")
        if self.is_zero():
            return BinaryForm.zero(_field_of_ring(self.ring), self.degree - other.degree)
        q = self.dehomogenize().exquo(other.dehomogenize())
        return BinaryForm.from_unipoly(q, self.degree - other.degree)

    def radical(self) -> "BinaryForm":
        """Monic squarefree form with the same projective roots (perfect fields)."""
        if self.is_zero():
            return self.to_field()
        p = upoly_radical(self.dehomogenize()) if self.u_degree > 0 else UniPoly(
            _field_of_ring(self.ring), [1]
        )
        extra = 1 if self.v_multiplicity > 0 else 0
        return BinaryForm.from_unipoly(p, p.degree + extra)

    def is_proportional(self, other: "BinaryForm"):
        """Return kappa with self = kappa * other, or None."""
        if self.degree != other.degree:
            return None
        if self.is_zero() or other.is_zero():
            return None
        K = _field_of_ring(self.ring)
        i = other.u_degree
        kappa = K(self.coeffs[i]) / K(other.coeffs[i])
        if not kappa:
            return None
        for a, b in zip(self.coeffs, other.coeffs):
            if K(a) != kappa * K(b):
                return None
        return kappa

    # -- text and JSON -----------------------------------------------------

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        D = self.degree
        for i in range(D, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "*".join(
                m
                for m in (
                    ("U" if i == 1 else f"U^{i}") if i else "",
                    ("V" if D - i == 1 else f"V^{D - i}") if D - i else "",
                )
                if m
            )
            cs = str(coeff_to_json(c))
            simple = cs in ("1", "-1") or cs.lstrip("-").replace("/", "").isdigit()
            if isinstance(c, (MultiPoly, Frac)) and not simple and not (
                cs.startswith("(") and cs.endswith(")")
            ):
                cs = f"({cs})"
            if mono:
                if cs == "1":
                    parts.append(mono)
                elif cs == "-1":
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{cs}*{mono}")
            else:
                parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = to_text

    def __repr__(self):
        return f"BinaryForm({self.to_text()!r}, degree={self.degree})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coefficients": [coeff_to_json(c) for c in self.coeffs],
            "ring": ring_tag(self.ring),
            "identically_zero": self.is_zero(),
        }


@dataclass(frozen=True)
class ProjPoint:
    """A point (lam : mu) of the projective line, normalized to mu = 1 or (1 : 0)."""

    lam: object
    mu: object

    @classmethod
    def make(cls, lam, mu, field=QQ) -> "ProjPoint":
        lam, mu = field(lam), field(mu)
        if mu:
            return cls(lam / mu, field.one)
        if not lam:
            raise PreconditionError("(0:0) is not a projective point")
        return cls(field.one, field.zero)

    @property
    def is_infinite(self) -> bool:
        return not self.mu

    def sort_key(self):
        if self.is_infinite:
            return (1, 0)
        v = self.lam
        if isinstance(v, ModInt):
            v = v.v
        return (0, v) if isinstance(v, (int, Fraction)) else (0, str(v))

    def to_json(self) -> list:
        return [coeff_to_json(self.lam), coeff_to_json(self.mu)]

    def __str__(self):
        return f"({coeff_to_json(self.lam)}:{coeff_to_json(self.mu)})"


@dataclass
class RootsResult:
    """Base-field roots of a form plus the degrees left over in proper extensions.

    ``cofactor_degree`` is the degree of the squarefree part without its
    rational roots; ``cofactor_factor_degrees`` splits it into irreducible
    factor degrees when the base field is finite (over QQ it is just
    ``[cofactor_degree]`` when positive).
    """

    roots: list
    cofactor_degree: int
    cofactor_factor_degrees: list = dc_field(default_factory=list)

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)


def form_gcd(forms: Sequence[BinaryForm]) -> BinaryForm:
    """Monic gcd of binary forms over a field; the zero form if all are zero."""
    if not forms:
        raise PreconditionError("gcd of an empty list of forms")
    nonzero = [f.to_field() for f in forms if not f.is_zero()]
    if not nonzero:
        return BinaryForm.zero(_field_of_ring(forms[0].ring), forms[0].degree)
    vmult = min(f.v_multiplicity for f in nonzero)
    g = nonzero[0].dehomogenize()
    for f in nonzero[1:]:
        if g.degree == 0:
            break
        g = upoly_gcd(g, f.dehomogenize())
    g = g.monic()
    return BinaryForm.from_unipoly(g, g.degree + vmult)


def _clear_to_integers(p: UniPoly) -> list[int]:
    vals = [Fraction(c) for c in p.coeffs]
    den = math.lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    g = math.gcd(*ints)
    return [v // g for v in ints]


def _rational_roots(p: UniPoly) -> list[Fraction]:
    """Distinct rational roots of a nonzero polynomial over QQ."""
    if p.degree <= 0:
        return []
    roots: list[Fraction] = []
    sq = upoly_radical(p)
    if not sq.coeffs[0]:
        roots.append(Fraction(0))
        sq = UniPoly(QQ, sq.coeffs[1:])
    if sq.degree <= 0:
        return roots
    ints = _clear_to_integers(sq)
    B = max(abs(ints[0]), abs(ints[-1]))
    # a root a/b has a | c_0 and b | lc, so it is recovered from its residue
    P = 2 * B * B + 1
    while True:
        P = probable_prime_above(P)
        if ints[-1] % P == 0:
            continue
        K = PrimeField(P)
        pk = UniPoly(K, ints)
        if upoly_gcd(pk, pk.derivative()).degree > 0:
            continue
        break
    for r in upoly_roots_fp(pk):
        q = rational_reconstruction(r.v, P, B, B)
        if q is not None and not sq(q):
            roots.append(q)
    return sorted(set(roots))


def proj_roots(form: BinaryForm) -> RootsResult:
    """Roots in P^1 over the base field (QQ or F_p) plus the rootless cofactor degrees."""
    if form.is_zero():
        raise InfiniteSpectrumError("spectrum is infinite; enumerate not applicable")
    F = form.to_field()
    K = F.ring
    p = F.dehomogenize()
    rad = upoly_radical(p) if p.degree > 0 else UniPoly(K, [1])
    if isinstance(K, PrimeField):
        finite = upoly_roots_fp(rad, random.Random(0))
    elif K is QQ:
        finite = _rational_roots(rad)
    else:
        raise PreconditionError("root enumeration needs QQ or F_p coefficients")
    points = [ProjPoint.make(r, 1, K) for r in finite]
    if F.v_multiplicity > 0:
        points.append(ProjPoint.make(1, 0, K))
    cof = rad
    for r in finite:
        cof = cof.exquo(UniPoly(K, [-K(r), 1]))
    cdeg = max(cof.degree, 0)
    if cdeg == 0:
        fdeg: list = []
    elif isinstance(K, PrimeField):
        fdeg = upoly_ddf_degrees(cof)
    else:
        fdeg = [cdeg]
    return RootsResult(sorted(points, key=ProjPoint.sort_key), cdeg, fdeg)
