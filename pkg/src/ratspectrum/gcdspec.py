"""Common roots of binary forms under specialization.

The multiplication map (g_1, ..., g_k) -> sum g_i f_i from
A[U,V]_{d1+d2-d_i-1} (summed over i) to A[U,V]_{d1+d2-1} has rank d1 + d2 exactly
when the f_i share no projective root.  Applied to the cofactors of a gcd,
its maximal minors certify that taking gcds commutes with a ring morphism.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .binaryforms import BinaryForm, coeff_to_json, form_gcd, ring_tag
from .errors import PreconditionError
from .polyring import MultiPoly, PolyRing, exquo as poly_exquo, multipoly_gcd
from .ring import (
    QQ,
    ZZ,
    Frac,
    FractionField,
    GF,
    bareiss_det,
    field_of,
    is_probable_prime,
    rank_over_field,
)

__all__ = [
    "MultMapMatrix",
    "GcdCertificate",
    "mult_map_matrix",
    "have_common_root",
    "gcd_certificate",
    "apply_morphism",
    "specialize_form",
    "za_bound",
    "kz_bounds",
    "binary_resultant",
]


@dataclass
class MultMapMatrix:
    """Matrix of the multiplication map; rows are U^j V^(D-j), j descending."""

    forms: list
    degrees: list
    rows: list
    ring: object

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def rank(self, under=None) -> int:
        M, field = _specialize_matrix(self.rows, self.ring, under)
        return rank_over_field(M, field)


def _check_forms(forms) -> list:
    forms = list(forms)
    if len(forms) < 2:
        raise PreconditionError("need at least 2 forms")
    ring = forms[0].ring
    for f in forms:
        if f.ring != ring:
            raise PreconditionError("forms have different coefficient rings")
        if f.is_zero():
            raise PreconditionError("zero form")
        if f.degree < 1:
            raise PreconditionError("constant form")
    return forms


def mult_map_matrix(forms) -> MultMapMatrix:
    """Block-Sylvester matrix of (g_i) -> sum g_i f_i, forms sorted by degree."""
    forms = sorted(_check_forms(forms), key=lambda f: -f.degree)
    ring = forms[0].ring
    degs = [f.degree for f in forms]
    D = degs[0] + degs[1] - 1
    zero = ring.zero
    cols = []
    for f, di in zip(forms, degs):
        e = D - di
        for a in range(e, -1, -1):
            # column of U^a V^(e-a) * f, read at rows U^j V^(D-j)
            col = []
            for j in range(D, -1, -1):
                i = j - a
                col.append(f.coeffs[i] if 0 <= i <= di else zero)
            cols.append(col)
    rows = [[cols[c][r] for c in range(len(cols))] for r in range(D + 1)]
    return MultMapMatrix(forms, degs, rows, ring)


# -- morphisms ---------------------------------------------------------------


def _parse_under(under):
    if under is None:
        return None
    kind, arg = under
    if kind == "mod":
        p = int(arg)
        if p < 2 or not is_probable_prime(p):
            raise PreconditionError(f"{p} is not prime")
        return ("mod", p)
    if kind == "eval":
        return ("eval", tuple(arg))
    raise PreconditionError(f"unknown morphism {kind!r}")


def _target_field(ring, under):
    if under is None:
        return field_of(ring)
    if under[0] == "mod":
        if not (ring is ZZ or ring is QQ):
            raise PreconditionError("reduction mod p needs integer or rational coefficients")
        return GF(under[1])
    names = _param_names(ring)
    if names is None:
        raise PreconditionError("evaluation needs coefficients in K[Z] or K(Z)")
    if len(under[1]) != len(names):
        raise PreconditionError(
            f"evaluation point has {len(under[1])} coordinates, expected {len(names)}"
        )
    base = ring.coeff_ring if isinstance(ring, PolyRing) else ring.domain.coeff_ring
    return field_of(base)


def _param_names(ring):
    if isinstance(ring, PolyRing):
        return ring.names
    if isinstance(ring, FractionField) and isinstance(ring.domain, PolyRing):
        return ring.domain.names
    return None


def apply_morphism(x, ring, under):
    """Image of a coefficient under None (inclusion), ('mod', p) or ('eval', z)."""
    under = _parse_under(under)
    K = _target_field(ring, under)
    return _apply(x, K, under)


def _apply(x, K, under):
    if under is None:
        return K(x)
    if under[0] == "mod":
        if isinstance(x, Fraction):
            if x.denominator % K.p == 0:
                raise PreconditionError("denominator divisible by p")
            return K(x.numerator) / K(x.denominator)
        return K(x)
    z = under[1]
    if isinstance(x, Frac):
        den = x.den.evaluate(z) if isinstance(x.den, MultiPoly) else x.den
        if not den:
            raise PreconditionError("evaluation point is a pole")
        num = x.num.evaluate(z) if isinstance(x.num, MultiPoly) else x.num
        return K(num) / K(den)
    if isinstance(x, MultiPoly):
        return K(x.evaluate(z))
    return K(x)


def specialize_form(f: BinaryForm, under) -> BinaryForm:
    """Apply a morphism coefficientwise; the degree tag is kept."""
    under = _parse_under(under)
    K = _target_field(f.ring, under)
    return BinaryForm(K, f.degree, [_apply(c, K, under) for c in f.coeffs])


def _specialize_matrix(rows, ring, under):
    under = _parse_under(under)
    K = _target_field(ring, under)
    return [[_apply(x, K, under) for x in r] for r in rows], K


def have_common_root(forms, under=None) -> bool:
    """True iff the (specialized) forms share a root on P^1 over the closure."""
    mm = mult_map_matrix(forms)
    return mm.rank(under) < mm.nrows


# -- gcd certificates ---------------------------------------------------------

_U, _V = "_U", "_V"


def _to_multipoly(f: BinaryForm) -> MultiPoly:
    ring = f.ring
    D = f.degree
    if isinstance(ring, PolyRing):
        names = (_U, _V) + tuple(ring.names)
        terms = {}
        for i, c in enumerate(f.coeffs):
            for e, v in c.terms.items():
                terms[(i, D - i) + e] = v
        return MultiPoly(ring.coeff_ring, names, terms)
    return MultiPoly(ring, (_U, _V), {(i, D - i): c for i, c in enumerate(f.coeffs) if c})


def _from_multipoly(P: MultiPoly, ring, degree: int) -> BinaryForm:
    if isinstance(ring, PolyRing):
        parts: dict = {}
        for e, v in P.terms.items():
            parts.setdefault(e[0], {})[e[2:]] = v
        coeffs = [MultiPoly(ring.coeff_ring, ring.names, parts.get(i, {})) for i in range(degree + 1)]
        return BinaryForm(ring, degree, coeffs)
    coeffs = [P.coeff((i, degree - i)) for i in range(degree + 1)]
    return BinaryForm(ring, degree, coeffs)


def _primitive(g: BinaryForm) -> BinaryForm:
    """Divide out the content in A and fix the sign/scale of the leading coefficient."""
    ring = g.ring
    if ring is ZZ:
        c = reduce(math.gcd, (int(x) for x in g.coeffs), 0)
        if g.lc() < 0:
            c = -c
        return BinaryForm(ring, g.degree, [x // c for x in g.coeffs])
    if isinstance(ring, PolyRing):
        nz = [x for x in g.coeffs if x]
        c = reduce(multipoly_gcd, nz[1:], nz[0])
        if not c.is_constant():
            g = BinaryForm(ring, g.degree, [poly_exquo(x, c) if x else x for x in g.coeffs])
        lead = g.lc().lc()
        return BinaryForm(ring, g.degree, [x / lead for x in g.coeffs])
    return g.monic()


@dataclass
class GcdCertificate:
    """gcd(f_i) over A with its leading coefficient, cofactors and minors c_i.

    Whenever some rho(c_i) != 0 the identity
    rho(gcd) = rho(alpha) * gcd(rho(f_1), ..., rho(f_k)) holds.
    """

    forms: list
    gcd: BinaryForm
    alpha: object
    cofactors: list
    minors: list
    mode: str = "exact"
    seed: int | None = None

    @property
    def ring(self):
        return self.gcd.ring

    def predicts_identity(self, under) -> bool:
        """Some certificate element survives the morphism.

        Then rho(gcd) is a nonzero multiple of gcd(rho(f_i)), and the multiple
        is rho(alpha) whenever rho(alpha) != 0.
        """
        under = _parse_under(under)
        K = _target_field(self.ring, under)
        return any(_apply(c, K, under) for c in self.minors)

    def identity_holds(self, under) -> bool:
        """Direct check of rho(gcd) == rho(alpha) * gcd(rho(f_i))."""
        lhs = specialize_form(self.gcd, under)
        g_rho = form_gcd([specialize_form(f, under) for f in self.forms])
        if g_rho.is_zero():
            return False
        a = apply_morphism(self.alpha, self.ring, under)
        if lhs.degree != g_rho.degree:
            return False
        return all(x == a * y for x, y in zip(lhs.coeffs, g_rho.coeffs))

    def kappa_under(self, under):
        """kappa with rho(gcd) = kappa * gcd(rho(f_i)), or None."""
        lhs = specialize_form(self.gcd, under)
        g_rho = form_gcd([specialize_form(f, under) for f in self.forms])
        if g_rho.is_zero() or lhs.degree != g_rho.degree:
            return None
        return lhs.is_proportional(g_rho)

    def to_json(self) -> dict:
        out = {
            "gcd": self.gcd.to_json(),
            "alpha": coeff_to_json(self.alpha),
            "cofactors": [h.to_json() for h in self.cofactors],
            "minors": [coeff_to_json(c) for c in self.minors],
            "ring": ring_tag(self.ring),
            "mode": self.mode,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def gcd_certificate(forms, mode: str = "exact", seed: int = 0, cap: int = 64) -> GcdCertificate:
    """gcd over A (ZZ, K[Z] or a field) together with its certificate elements.

    exact: every maximal minor of the cofactors' multiplication map;
    mc: at most ``cap`` minors, column subsets drawn with the seeded generator.
    """
    forms = list(forms)
    if len(forms) < 2:
        raise PreconditionError("need at least 2 forms")
    ring = forms[0].ring
    for f in forms:
        if f.ring != ring:
            raise PreconditionError("forms have different coefficient rings")
        if f.is_zero():
            raise PreconditionError("zero form")
    if mode not in ("exact", "mc"):
        raise PreconditionError(f"unknown mode {mode!r}")
    if getattr(ring, "is_field", False):
        g = form_gcd(forms)
        g = BinaryForm(ring, g.degree, g.coeffs)
        cof = [f.exquo(g) for f in forms]
        cof = [BinaryForm(ring, h.degree, h.coeffs) for h in cof]
    else:
        polys = [_to_multipoly(f) for f in forms]
        G = reduce(multipoly_gcd, polys[1:], polys[0])
        deg = max(e[0] + e[1] for e in G.terms)
        g = _primitive(_from_multipoly(G, ring, deg))
        Gp = _to_multipoly(g)
        cof = [_from_multipoly(poly_exquo(P, Gp), ring, f.degree - g.degree) for P, f in zip(polys, forms)]
    alpha = g.lc()
    constants = [h.coeffs[0] for h in cof if h.degree == 0]
    if constants:
        minors = constants
        used_mode, used_seed = mode, None
    else:
        minors = _maximal_minors(mult_map_matrix(cof), mode, seed, cap)
        used_mode, used_seed = mode, (seed if mode == "mc" else None)
    return GcdCertificate(forms, g, alpha, cof, minors, used_mode, used_seed)


def _det(M, ring):
    if ring is ZZ or isinstance(ring, PolyRing):
        ex = (lambda a, b: a // b) if ring is ZZ else poly_exquo
        return bareiss_det(M, ex)
    return bareiss_det(M, lambda a, b: a / b)


def _maximal_minors(mm: MultMapMatrix, mode: str, seed: int, cap: int) -> list:
    n, m = mm.nrows, mm.ncols
    if mode == "exact":
        subsets = itertools.combinations(range(m), n)
    else:
        rng = random.Random(seed)
        total = math.comb(m, n)
        if total <= cap:
            subsets = itertools.combinations(range(m), n)
        else:
            seen, subsets = set(), []
            while len(subsets) < cap:
                s = tuple(sorted(rng.sample(range(m), n)))
                if s not in seen:
                    seen.add(s)
                    subsets.append(s)
    return [_det([[row[c] for c in cols] for row in mm.rows], mm.ring) for cols in subsets]


# -- explicit bounds -----------------------------------------------------------


def za_bound(case: str, d: int, H: int) -> int:
    """Prime bound for gcd transfer over ZZ: case 'i' (coprime) or 'ii' (general)."""
    if d < 1 or H < 1:
        raise PreconditionError("need d >= 1 and H >= 1")
    if case == "i":
        return d**d * H ** (2 * d)
    if case == "ii":
        return d**d * (d + 1) ** d * 2 ** (2 * d * d) * H ** (2 * d)
    raise PreconditionError(f"unknown case {case!r}")


def kz_bounds(d: int, k: int) -> tuple[int, int]:
    """(degree bound for the form certificates, degree bound for spectra) in Z."""
    if d < 1 or k < 0:
        raise PreconditionError("need d >= 1 and k >= 0")
    return 2 * d * k, 2 * (d * d - 1) ** 2 * k


def binary_resultant(f: BinaryForm, g: BinaryForm):
    """Resultant of two binary forms from the textbook Sylvester matrix.

    Rows are shifted coefficient vectors, highest power of U first; the
    degree tags (not the actual degrees) fix the matrix size.
    """
    m, n = f.degree, g.degree
    if m + n == 0:
        return f.ring.one
    size = m + n
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    zero = f.ring.zero
    S = []
    for i in range(n):
        S.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        S.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return _det(S, f.ring)
