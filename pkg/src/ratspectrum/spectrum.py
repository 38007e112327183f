"""The spectrum of a pencil: Spect_{f,g}, membership and enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .binaryforms import BinaryForm, ProjPoint, form_gcd, proj_roots, ring_tag
from .errors import (
    DegeneratePencilError,
    ImplementationError,
    InfiniteSpectrumError,
    PreconditionError,
)
from .noether import (
    check_noether_guard,
    determinantal_divisor,
    is_absolutely_irreducible,
    noether_minors,
    pencil_matrix,
)
from .polyring import MultiPoly, multipoly_gcd
from .ring import QQ, PrimeField, UniPoly, field_of, upoly_radical

__all__ = [
    "SpectrumReport",
    "spect_poly",
    "is_in_spectrum",
    "spectrum_over_Fp",
    "cardinality_check",
    "degree_drop_points",
    "check_pencil",
]


@dataclass
class SpectrumReport:
    d: int
    spect: BinaryForm
    degree_drop_points: list
    finite: bool
    roots_in_base_field: list | None
    cardinality_upper_bound: int
    mode: str
    seed: int | None = None
    cofactor_degree: int | None = None
    cofactor_factor_degrees: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "spect": self.spect.to_json(),
            "degree_drop": [p.to_json() for p in self.degree_drop_points],
            "finite": self.finite,
            "roots": [p.to_json() for p in self.roots_in_base_field]
            if self.roots_in_base_field is not None
            else None,
            "cardinality_upper_bound": self.cardinality_upper_bound,
            "mode": self.mode,
            "ring": ring_tag(self.spect.ring),
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.cofactor_degree is not None:
            out["cofactor_degree"] = self.cofactor_degree
            out["cofactor_factor_degrees"] = list(self.cofactor_factor_degrees)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _to_field(f: MultiPoly) -> MultiPoly:
    K = field_of(f.ring)
    return f if K is f.ring else f.change_ring(K)


def check_pencil(f: MultiPoly, g: MultiPoly, *, min_degree: int = 2):
    """Validate a pencil and return (f, g, d) over the coefficient field."""
    if f.nvars != 2 or g.nvars != 2:
        raise PreconditionError(
            "spectra need exactly 2 variables; reduce with transfer.bertini_reduce first"
        )
    if f.names != g.names:
        raise PreconditionError("f and g use different variables")
    f, g = _to_field(f), _to_field(g)
    if f.ring != g.ring:
        raise PreconditionError("f and g have different coefficient rings")
    if not f and not g:
        raise DegeneratePencilError("f and g are both zero")
    if not f or not g:
        raise PreconditionError("gcd(f, g) != 1")
    d = max(f.total_degree(), g.total_degree())
    if d < min_degree:
        raise PreconditionError(f"pencil degree {d} below {min_degree}")
    h = multipoly_gcd(f, g)
    if not h.is_constant():
        raise PreconditionError("gcd(f, g) != 1")
    check_noether_guard(f.ring, d)
    return f, g, d


def degree_drop_points(f: MultiPoly, g: MultiPoly, d: int) -> list[ProjPoint]:
    """Parameters (lam:mu) with deg(mu*f - lam*g) < d."""
    K = f.ring
    if g.total_degree() < d:
        return [ProjPoint.make(1, 0, K)]
    if f.total_degree() < d:
        return [ProjPoint.make(0, 1, K)]
    F = f.homogeneous_part(d)
    G = g.homogeneous_part(d)
    e = max(G.terms)
    c = F.coeff(e) / G.coeff(e)
    if F == G * c:
        return [ProjPoint.make(c, 1, K)]
    return []


def _member(f: MultiPoly, g: MultiPoly, point: ProjPoint) -> MultiPoly:
    return f * point.mu - g * point.lam


def _member_in_spectrum(f, g, d, point) -> bool:
    P = _member(f, g, point)
    if not P or P.total_degree() < d:
        return True
    return not is_absolutely_irreducible(P, d)


def _remove_root(p: UniPoly, r) -> UniPoly:
    lin = UniPoly(p.field, [-r, 1])
    while p.degree > 0 and not p(r):
        p = p.exquo(lin)
    return p


def spect_poly(f: MultiPoly, g: MultiPoly, mode: str = "exact", seed: int = 0,
               stabilization_k: int = 8) -> SpectrumReport:
    """Spect_{f,g} as a monic squarefree binary form, or the zero form.

    exact: the gcd of all maximal minors is obtained as the determinantal
    divisor (unimodular elimination over K[t]); mc: the running gcd of
    seeded minors.  The point (1:0) and the parameters where the shear used
    for the matrix fails are settled by testing the member itself.
    """
    f, g, d = check_pencil(f, g)
    K = f.ring
    pm = pencil_matrix(f, g, d)
    drops = degree_drop_points(f, g, d)
    notes: list = []
    mc = mode in ("mc", "monte_carlo")
    if not mc and mode != "exact":
        raise PreconditionError(f"unknown mode {mode!r}")
    if mc:
        ms = noether_minors(pm, "mc", seed, stabilization_k)
        if ms.all_vanish:
            D = UniPoly(K, [])
        else:
            D = ms.gcd(K).dehomogenize()
        if ms.caveat:
            notes.append(ms.caveat)
    else:
        D = determinantal_divisor(pm)
    if not D:
        spect = BinaryForm.zero(K, pm.ncols)
        return SpectrumReport(d, spect, drops, False, None, d * d - 1,
                              "mc" if mc else "exact", seed if mc else None, notes=notes)
    loc = upoly_radical(D) if D.degree > 0 else UniPoly(K, [1])
    for b in pm.bad_points:
        if b.is_infinite or b in drops:
            continue
        if not loc(b.lam) and not _member_in_spectrum(f, g, d, b):
            loc = _remove_root(loc, b.lam)
    for b in drops:
        if not b.is_infinite and loc(b.lam):
            loc = loc * UniPoly(K, [-b.lam, 1])
    infinite_pt = ProjPoint.make(1, 0, K)
    at_inf = infinite_pt in drops or _member_in_spectrum(f, g, d, infinite_pt)
    loc = loc.monic()
    spect = BinaryForm.from_unipoly(loc, loc.degree + (1 if at_inf else 0))
    report = SpectrumReport(d, spect, drops, True, None, d * d - 1,
                            "mc" if mc else "exact", seed if mc else None, notes=notes)
    if isinstance(K, PrimeField) or K is QQ:
        rr = proj_roots(spect)
        report.roots_in_base_field = rr.roots
        report.cofactor_degree = rr.cofactor_degree
        report.cofactor_factor_degrees = rr.cofactor_factor_degrees
    if not cardinality_check(report):
        raise ImplementationError(
            f"spectrum form of degree {spect.degree} exceeds d^2 - 1 = {d * d - 1}"
        )
    return report


def is_in_spectrum(f: MultiPoly, g: MultiPoly, point: ProjPoint) -> bool:
    """Direct test of one member: reducible over the closure or of lower degree."""
    f, g, d = check_pencil(f, g)
    K = f.ring
    point = ProjPoint.make(point.lam, point.mu, K)
    return _member_in_spectrum(f, g, d, point)


def _all_points(K: PrimeField):
    pts = [ProjPoint.make(x, 1, K) for x in K.elements()]
    pts.append(ProjPoint.make(1, 0, K))
    return pts


def spectrum_over_Fp(f: MultiPoly, g: MultiPoly, mode: str = "exact", seed: int = 0,
                     exhaustive_limit: int = 10**4, member_check_limit: int = 100) -> SpectrumReport:
    """Spectrum over F_p with exhaustive cross-validation for small p.

    For p <= ``exhaustive_limit`` the roots found by root finding are compared
    with evaluation of the form at every point of P^1(F_p); for
    p <= ``member_check_limit`` every point is also tested member by member.
    Any disagreement raises ImplementationError.
    """
    if not isinstance(f.ring, PrimeField):
        raise PreconditionError("spectrum_over_Fp needs coefficients in F_p")
    K = f.ring
    report = spect_poly(f, g, mode, seed)
    p = K.p
    if not report.finite:
        if p <= exhaustive_limit:
            report.roots_in_base_field = _all_points(K)
            report.notes.append("every member is reducible; all points of P^1(F_p) listed")
        return report
    if p <= exhaustive_limit:
        exhaustive = [pt for pt in _all_points(K) if not report.spect(pt)]
        if sorted(exhaustive, key=ProjPoint.sort_key) != report.roots_in_base_field:
            raise ImplementationError("root finding disagrees with exhaustive evaluation")
    if p <= member_check_limit:
        ff, gg, d = check_pencil(f, g)
        roots = set(report.roots_in_base_field)
        for pt in _all_points(K):
            if _member_in_spectrum(ff, gg, d, pt) != (pt in roots):
                raise ImplementationError(f"member test disagrees with Spect at {pt}")
    return report


def cardinality_check(report: SpectrumReport) -> bool:
    """deg(Spect) <= d^2 - 1 for a finite spectrum."""
    if not report.finite:
        raise InfiniteSpectrumError("spectrum is infinite")
    return report.spect.degree <= report.d * report.d - 1
