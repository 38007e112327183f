"""Specialization of spectra and of indecomposability.

Reduction mod p and evaluation of parameters Z -> z are compared against
the explicit bounds: above the bound the identity is a theorem and a
failure is an implementation error, below it the outcome is informational.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .binaryforms import BinaryForm, coeff_to_json
from .decompose import is_composite
from .errors import GuardError, ImplementationError, PreconditionError
from .gcdspec import kz_bounds, za_bound
from .noether import check_noether_guard
from .polyring import (
    MultiPoly,
    RationalFunction,
    linear_change,
    measures,
    multipoly_gcd,
    param_field,
    split_parameters,
)
from .ring import QQ, ZZ, FractionField, GF, PrimeField, is_probable_prime
from .spectrum import spect_poly

__all__ = [
    "BoundReport",
    "TransferReport",
    "IndecompReport",
    "ProbabilityBound",
    "BertiniResult",
    "script_H",
    "script_B",
    "modp_bounds",
    "probability_bounds",
    "verify_modp_transfer",
    "verify_indecomposability_modp",
    "evaluate_parameters",
    "bertini_reduce",
]


# -- bounds ------------------------------------------------------------------


def script_H(d: int, n: int, H: int) -> int:
    """Height bound for the Noether forms of the pencil (also the indecomposability bound)."""
    e = d * d - 1
    return d ** (3 * e) * (math.comb(n + d, n) * 2**d) ** e * math.comb(e, e // 2) * H**e


def script_B(d: int, n: int, H: int) -> int:
    """Prime bound above which the spectrum reduces mod p."""
    e = d * d - 1
    return 2 ** (2 * e * e) * d ** (2 * d * d - 2) * e**e * script_H(d, n, H) ** (2 * d)


@dataclass
class ProbabilityBound:
    which: str
    value: Fraction
    formula: str

    @property
    def vacuous(self) -> bool:
        return self.value <= 0

    def to_json(self) -> dict:
        return {
            "which": self.which,
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "formula": self.formula,
            "vacuous": self.vacuous,
        }


def probability_bounds(which: str, d: int, k: int, S_size: int) -> ProbabilityBound:
    """Exact lower bound on a success probability; never clamped."""
    if S_size < 1:
        raise PreconditionError("|S| must be positive")
    if d < 0 or k < 0:
        raise PreconditionError("d and k must be nonnegative")
    e = d * d - 1
    if which == "zs":
        num, formula = d, "1 - d/|S|"
    elif which == "spectrum_empty":
        num, formula = 2 * e**3 * k * k, "1 - 2(d^2-1)^3 k^2/|S|"
    elif which == "indecomp":
        num, formula = k * e, "1 - k(d^2-1)/|S|"
    elif which == "bertini":
        num, formula = 3 * d * (d - 1) + 1, "1 - (3d(d-1)+1)/|S|"
    else:
        raise PreconditionError(f"unknown probability bound {which!r}")
    return ProbabilityBound(which, 1 - Fraction(num, S_size), formula)


@dataclass
class BoundReport:
    d: int
    n: int
    H_f: int
    H_g: int
    script_H: int
    B: int
    za_i: int
    za_ii: int
    kz: tuple | None = None
    probabilities: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "n": self.n,
            "H_f": self.H_f,
            "H_g": self.H_g,
            "script_H": str(self.script_H),
            "B": str(self.B),
            "za_i": str(self.za_i),
            "za_ii": str(self.za_ii),
        }
        if self.kz is not None:
            out["kz"] = list(self.kz)
        if self.probabilities:
            out["probabilities"] = [p.to_json() for p in self.probabilities]
        return out


def modp_bounds(d: int, n: int, H_f: int, H_g: int, k: int | None = None,
                S_size: int | None = None) -> BoundReport:
    """Every explicit bound for a pencil of degree d in n variables."""
    if d < 2 or n < 2:
        raise PreconditionError("need d >= 2 and n >= 2")
    if H_f < 1 or H_g < 1:
        raise PreconditionError("heights must be >= 1")
    H = max(H_f, H_g)
    rep = BoundReport(d, n, H_f, H_g, script_H(d, n, H), script_B(d, n, H),
                      za_bound("i", d, H), za_bound("ii", d, H))
    if k is not None:
        rep.kz = kz_bounds(d, k)
    if S_size is not None:
        kk = 1 if k is None else k
        rep.probabilities = [probability_bounds(w, d, kk, S_size)
                             for w in ("zs", "spectrum_empty", "indecomp", "bertini")]
    return rep


# -- reports -----------------------------------------------------------------


@dataclass
class TransferReport:
    """Spect before and after a morphism, compared up to a nonzero scalar.

    verdict: 'holds' (kappa found), 'fails', 'both_zero' (both spectra
    infinite) or 'bad_point' (the specialized pencil is degenerate).
    """

    theorem: str
    inputs: dict
    bound_name: str
    bound: int
    point: object
    verdict: str
    kappa: object
    spect_before: BinaryForm
    spect_after: BinaryForm | None
    mandated: bool
    notes: list = dc_field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict in ("holds", "both_zero")

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "inputs": self.inputs,
            "bound": {"name": self.bound_name, "value": str(self.bound)},
            "p_or_point": str(self.point) if isinstance(self.point, int) else [
                coeff_to_json(Fraction(x)) for x in self.point
            ],
            "verdict": self.verdict,
            "kappa": None if self.kappa is None else coeff_to_json(self.kappa),
            "spect_before": self.spect_before.to_json(),
            "spect_after": None if self.spect_after is None else self.spect_after.to_json(),
            "mandated": self.mandated,
            "notes": list(self.notes),
        }


def _compare(before_img: BinaryForm, after: BinaryForm, notes: list):
    """(verdict, kappa) comparing rho(Spect_before) with Spect_after."""
    if before_img.is_zero() and after.is_zero():
        return "both_zero", None
    if before_img.is_zero() or after.is_zero():
        return "fails", None
    kappa = after.is_proportional(before_img)
    if kappa is not None:
        return "holds", kappa
    rad = before_img.radical()
    kappa = after.is_proportional(rad)
    if kappa is not None:
        notes.append("identity holds after taking the squarefree part of the image")
        return "holds", kappa
    return "fails", None


def _as_integer_poly(f: MultiPoly) -> MultiPoly:
    if f.ring is ZZ:
        return f
    if f.ring is QQ:
        if any(Fraction(c).denominator != 1 for c in f.terms.values()):
            raise PreconditionError("coefficients must be integers")
        return f.change_ring(ZZ)
    raise PreconditionError("polynomials must have integer coefficients")


def _integer_pencil(f: MultiPoly, g: MultiPoly):
    f, g = _as_integer_poly(f), _as_integer_poly(g)
    if f.nvars != 2 or g.nvars != 2 or f.names != g.names:
        raise PreconditionError("need bivariate f, g in the same variables")
    return f, g


def _check_prime(p: int, d: int):
    if p < 2 or not is_probable_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if p <= d * (d - 1):
        raise GuardError("characteristic too small for Noether criterion")


def _primitive_integer_form(F: BinaryForm) -> BinaryForm:
    vals = [Fraction(c) for c in F.coeffs]
    den = math.lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    c = math.gcd(*ints) or 1
    return BinaryForm(ZZ, F.degree, [x // c for x in ints])


def verify_modp_transfer(f: MultiPoly, g: MultiPoly, p: int, mode: str = "exact",
                         seed: int = 0) -> TransferReport:
    """Compare Spect of the reduced pencil with the reduction of Spect over Q."""
    f, g = _integer_pencil(f, g)
    d = max(f.total_degree(), g.total_degree())
    _check_prime(p, d)
    K = GF(p)
    fp, gp = f.change_ring(K), g.change_ring(K)
    if not fp or not gp:
        raise PreconditionError("f or g vanishes mod p")
    H = max(measures(f)[0], measures(g)[0])
    B = script_B(d, 2, H)
    mandated = p > B
    before = spect_poly(f.change_ring(QQ), g.change_ring(QQ), mode, seed).spect
    img = _primitive_integer_form(before).map_coeffs(K, K) if before else BinaryForm.zero(K, before.degree)
    notes: list = []
    inputs = {"f": f.to_text(), "g": g.to_text(), "d": d, "H": H}
    try:
        after = spect_poly(fp, gp, mode, seed).spect
    except GuardError:
        raise
    except PreconditionError as exc:
        notes.append(f"reduced pencil is degenerate: {exc}")
        if mandated:
            raise ImplementationError(f"reduction mod p above the bound is degenerate: {exc}")
        return TransferReport("modp", inputs, "B", B, p, "bad_point", None, before, None,
                              mandated, notes)
    verdict, kappa = _compare(img, after, notes)
    if mandated and verdict == "fails":
        raise ImplementationError("spectrum transfer failed above the proven bound")
    if not mandated:
        notes.append("p <= B: outcome is informational")
    return TransferReport("modp", inputs, "B", B, p, verdict, kappa, before, after, mandated, notes)


@dataclass
class IndecompReport:
    p: int
    bound: int
    mandated: bool
    composite_over_Q: bool
    composite_mod_p: bool | None
    coprime_mod_p: bool
    witness: dict | None = None

    @property
    def verdict(self) -> str:
        if not self.coprime_mod_p:
            return "not_coprime"
        return "composite" if self.composite_mod_p else "non-composite"

    def to_json(self) -> dict:
        return {
            "theorem": "indecomposability_modp",
            "p": str(self.p),
            "bound": {"name": "script_H", "value": str(self.bound)},
            "mandated": self.mandated,
            "composite_over_Q": self.composite_over_Q,
            "composite_mod_p": self.composite_mod_p,
            "coprime_mod_p": self.coprime_mod_p,
            "verdict": self.verdict,
            "witness": self.witness,
        }


def verify_indecomposability_modp(f: MultiPoly, g: MultiPoly, p: int, mode: str = "exact",
                                  seed: int = 0) -> IndecompReport:
    """Decide compositeness of f/g mod p; mandated non-composite when p > script_H."""
    f, g = _integer_pencil(f, g)
    d = max(f.total_degree(), g.total_degree())
    _check_prime(p, d)
    H = max(measures(f)[0], measures(g)[0])
    bound = script_H(d, 2, H)
    mandated = p > bound
    before = is_composite((f.change_ring(QQ), g.change_ring(QQ)), mode, seed)
    K = GF(p)
    fp, gp = f.change_ring(K), g.change_ring(K)
    coprime = bool(fp) and bool(gp) and multipoly_gcd(fp, gp).is_constant()
    rep = IndecompReport(p, bound, mandated, before.composite, None, coprime)
    if coprime and max(fp.total_degree(), gp.total_degree()) >= 2:
        after = is_composite((fp, gp), mode, seed)
        rep.composite_mod_p = after.composite
        rep.witness = after.to_json()
    elif coprime:
        rep.composite_mod_p = False
    if mandated and not before.composite and rep.verdict != "non-composite":
        raise ImplementationError("indecomposability lost above the proven bound")
    return rep


# -- parameters --------------------------------------------------------------


def _param_pencil(f: MultiPoly, g: MultiPoly, params):
    if isinstance(f.ring, FractionField):
        return f, g, tuple(f.ring.domain.names)
    if params is None:
        params = [v for v in f.names if v.startswith("Z")]
    params = tuple(params)
    main = [v for v in f.names if v not in params]
    if len(main) != 2:
        raise PreconditionError("need exactly 2 main variables besides the parameters")
    return split_parameters(f, main, params), split_parameters(g, main, params), params


def _z_degree(F: MultiPoly) -> int:
    k = 0
    for c in F.terms.values():
        k = max(k, c.num.total_degree(), c.den.total_degree())
    return k


def _eval_form(F: BinaryForm, z):
    vals = []
    for c in F.coeffs:
        den = c.den.evaluate(z)
        if not den:
            raise PreconditionError("evaluation point is a pole of Spect")
        vals.append(Fraction(c.num.evaluate(z)) / Fraction(den))
    return BinaryForm(QQ, F.degree, vals)


def _eval_poly(F: MultiPoly, z) -> MultiPoly:
    out = {}
    for e, c in F.terms.items():
        den = c.den.evaluate(z)
        if not den:
            raise PreconditionError("evaluation point is a pole of a coefficient")
        v = Fraction(c.num.evaluate(z)) / Fraction(den)
        if v:
            out[e] = v
    return MultiPoly(QQ, F.names, out)


def evaluate_parameters(f: MultiPoly, g: MultiPoly, z, params=None, mode: str = "exact",
                        seed: int = 0) -> TransferReport:
    """Compare ev_z(Spect over Q(Z)) with Spect of the evaluated pencil.

    f, g are either over Q(Z) already or over Q with parameter variables
    (default: every variable whose name starts with Z).
    """
    F, G, params = _param_pencil(f, g, params)
    z = [Fraction(x) for x in z]
    if len(z) != len(params):
        raise PreconditionError(f"evaluation point has {len(z)} coordinates, expected {len(params)}")
    d = max(F.total_degree(), G.total_degree())
    k = max(_z_degree(F), _z_degree(G))
    budget = kz_bounds(max(d, 1), k)[1]
    inputs = {"f": F.to_text(), "g": G.to_text(), "params": list(params), "d": d, "k": k}
    notes = [f"degree budget in Z for the certificates: {budget}"]
    before = spect_poly(F, G, mode, seed).spect
    try:
        fz, gz = _eval_poly(F, z), _eval_poly(G, z)
        img = _eval_form(before, z) if before else BinaryForm.zero(QQ, before.degree)
        after = spect_poly(fz, gz, mode, seed).spect
    except GuardError:
        raise
    except PreconditionError as exc:
        notes.append(f"bad specialization point: {exc}")
        return TransferReport("parameters", inputs, "kz_spectrum_degree", budget, z, "bad_point",
                              None, before, None, False, notes)
    verdict, kappa = _compare(img, after, notes)
    return TransferReport("parameters", inputs, "kz_spectrum_degree", budget, z, verdict, kappa,
                          before, after, False, notes)


# -- Bertini reduction ---------------------------------------------------------


@dataclass
class BertiniResult:
    r: RationalFunction
    substitution: list
    seed: int
    S_size: int
    attempts: int
    bound: ProbabilityBound

    def to_json(self) -> dict:
        return {
            "f": self.r.num.to_text(),
            "g": self.r.den.to_text(),
            "substitution": [[coeff_to_json(x) for x in uvw] for uvw in self.substitution],
            "seed": self.seed,
            "S_size": self.S_size,
            "attempts": self.attempts,
            "probability_lower_bound": self.bound.to_json(),
            "caveat": "non-compositeness is preserved only with the stated probability",
        }


def bertini_reduce(r, S=None, seed: int = 0, max_tries: int = 16) -> BertiniResult:
    """r(u1 X + v1 Y + w1, ..., un X + vn Y + wn) with u, v, w drawn from S.

    S is an integer size (the set {0, ..., S-1}) or an explicit list;
    the default is {0, ..., 2^16 - 1}, or all of F_p when p is smaller.
    """
    if isinstance(r, RationalFunction):
        f, g = r.num, r.den
    else:
        f, g = r
    n = f.nvars
    if n < 3:
        raise PreconditionError("Bertini reduction needs n >= 3 variables")
    K = f.ring
    if S is None:
        S = 2**16
        if isinstance(K, PrimeField):
            S = min(S, K.p)
    elems = list(range(S)) if isinstance(S, int) else list(S)
    if not elems:
        raise PreconditionError("S is empty")
    d = max(f.total_degree(), g.total_degree())
    rng = random.Random(seed)
    names = ("X", "Y")
    for attempt in range(1, max_tries + 1):
        sub = [[rng.choice(elems) for _ in range(3)] for _ in range(n)]
        A = [[u, v] for u, v, _ in sub]
        b = [w for _, _, w in sub]
        ft = linear_change(f, A, b, names)
        gt = linear_change(g, A, b, names)
        if not gt:
            continue
        if ft.is_constant() and gt.is_constant():
            continue
        rt = RationalFunction(ft, gt)
        return BertiniResult(rt, sub, seed, len(elems), attempt,
                             probability_bounds("bertini", d, 0, len(elems)))
    raise PreconditionError(f"denominator vanished for {max_tries} substitutions")
