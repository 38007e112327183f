"""Command-line front end.

Exit codes: 0 success, 1 valid but negative answer (only under --expect-*
flags), 2 usage or parse error, 3 guard or precondition violation,
4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .binaryforms import BinaryForm, ProjPoint
from .decompose import is_composite
from .errors import GuardError, ImplementationError, PreconditionError, RatSpectrumError
from .gcdspec import gcd_certificate
from .parser import ParseError, parse_pencil, parse_ring
from .polyring import MultiPoly, PolyRing
from .ring import PrimeField, field_of
from .spectrum import is_in_spectrum, spect_poly, spectrum_over_Fp
from .transfer import (
    bertini_reduce,
    evaluate_parameters,
    modp_bounds,
    probability_bounds,
    verify_indecomposability_modp,
    verify_modp_transfer,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_GUARD, EXIT_INTERNAL = 0, 1, 2, 3, 4


class _UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--ring", default="Q", help="Z | Q | Fp:<p> | QZ:<s> (default Q)")
    p.add_argument("--mode", choices=["exact", "mc"], default="exact")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ratspectrum",
                                 description="Spectra and decomposability of rational functions.")
    sub = ap.add_subparsers(dest="command", required=True)
    common = _common()

    def pencil_cmd(name, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("f")
        sp.add_argument("g", nargs="?", default="1")
        return sp

    pencil_cmd("spectrum", "Spect_{f,g} and its roots")
    sp = pencil_cmd("member", "is (lambda:mu) in the spectrum")
    sp.add_argument("--point", required=True, help='"<lambda>,<mu>"')
    sp = pencil_cmd("composite", "decide whether f/g is composite")
    sp.add_argument("--expect-noncomposite", action="store_true",
                    help="exit 1 when the verdict is composite")
    sp = pencil_cmd("transfer-modp", "compare Spect over Q and over F_p")
    sp.add_argument("--prime", type=int, required=True)
    sp = pencil_cmd("indecomp-modp", "non-compositeness after reduction mod p")
    sp.add_argument("--prime", type=int, required=True)
    sp = pencil_cmd("specialize", "evaluate parameters Z -> z (needs --ring QZ:<s>)")
    sp.add_argument("--eval", required=True, help='"<z1>,...,<zs>"')
    sp = pencil_cmd("bertini", "random linear reduction to two variables")
    sp.add_argument("--set-size", type=int, default=2**16)

    sp = sub.add_parser("bounds", parents=[common], help="explicit bounds")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--Hf", type=int, default=1)
    sp.add_argument("--Hg", type=int, default=1)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--set-size", type=int, default=None)

    sp = sub.add_parser("certificates", parents=[common],
                        help="gcd of binary forms in U, V with specialization certificates")
    sp.add_argument("forms", nargs="+")
    sp.add_argument("--prime", type=int, default=None)
    sp.add_argument("--eval", default=None)

    sp = sub.add_parser("prob", parents=[common], help="probability lower bounds")
    sp.add_argument("--which", choices=["zs", "spectrum_empty", "indecomp", "bertini"], required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--set-size", type=int, required=True)
    return ap


# -- helpers -----------------------------------------------------------------


def _ring(args):
    try:
        return parse_ring(args.ring)
    except ValueError as exc:
        raise _UsageError(str(exc))


def _pencil(args, min_vars=2):
    ring = _ring(args)
    f, g = parse_pencil([args.f, args.g], ring, min_vars=min_vars)
    return f.poly, g.poly, ring


def _numbers(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except ValueError:
        raise _UsageError(f"cannot read numbers from {text!r}")


def _emit(args, data: dict, lines: list[str]):
    if args.json:
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


def _seed_line(args) -> list[str]:
    return [f"seed: {args.seed}"] if args.mode == "mc" else []


# -- commands ----------------------------------------------------------------


def _cmd_spectrum(args):
    f, g, ring = _pencil(args)
    if isinstance(f.ring, PrimeField):
        rep = spectrum_over_Fp(f, g, args.mode, args.seed)
    else:
        rep = spect_poly(f, g, args.mode, args.seed)
    lines = _seed_line(args) + [
        f"d: {rep.d}",
        f"Spect: {rep.spect.to_text()}",
        f"finite: {str(rep.finite).lower()}",
    ]
    if rep.roots_in_base_field is not None:
        lines.append("roots: " + " ".join(str(p) for p in rep.roots_in_base_field))
    return EXIT_OK, rep.to_json(), lines


def _cmd_member(args):
    f, g, ring = _pencil(args)
    coords = _numbers(args.point)
    if len(coords) != 2:
        raise _UsageError('--point needs "<lambda>,<mu>"')
    if not any(coords):
        raise _UsageError("(0:0) is not a point of P^1")
    K = field_of(f.ring)
    lam, mu = (K(c.numerator) / K(c.denominator) for c in coords)
    pt = ProjPoint.make(lam, mu, K)
    res = is_in_spectrum(f, g, pt)
    data = {"point": pt.to_json(), "in_spectrum": res}
    return EXIT_OK, data, [f"point: {pt}", f"in_spectrum: {str(res).lower()}"]


def _cmd_composite(args):
    f, g, ring = _pencil(args)
    v = is_composite((f, g), args.mode, args.seed)
    data = v.to_json()
    lines = _seed_line(args) + [
        f"composite: {str(v.composite).lower()}",
        f"guard: {v.guard}",
        f"note: {v.descent_note}",
    ]
    if v.witness_form is not None:
        lines.append(f"witness minor rows {list(v.witness_index)}: {v.witness_form.to_text()}")
    else:
        lines.append("witness: all minors vanish")
    code = EXIT_NEGATIVE if (v.composite and args.expect_noncomposite) else EXIT_OK
    return code, data, lines


def _cmd_bounds(args):
    rep = modp_bounds(args.d, args.n, args.Hf, args.Hg, args.k, args.set_size)
    lines = [f"script_H: {rep.script_H}", f"B: {rep.B}", f"za_i: {rep.za_i}", f"za_ii: {rep.za_ii}"]
    if rep.kz is not None:
        lines.append(f"kz: {rep.kz[0]} {rep.kz[1]}")
    for p in rep.probabilities:
        lines.append(f"P[{p.which}] >= {p.value}" + (" (vacuous)" if p.vacuous else ""))
    return EXIT_OK, rep.to_json(), lines


def _transfer_lines(rep) -> list[str]:
    return [
        f"verdict: {rep.verdict}",
        f"kappa: {rep.kappa}",
        f"Spect before: {rep.spect_before.to_text()}",
        f"Spect after: {rep.spect_after.to_text() if rep.spect_after is not None else '-'}",
        f"mandated: {str(rep.mandated).lower()}",
    ] + [f"note: {n}" for n in rep.notes]


def _cmd_transfer(args):
    args.ring = "Z"
    f, g, _ = _pencil(args)
    rep = verify_modp_transfer(f, g, args.prime, args.mode, args.seed)
    return EXIT_OK, rep.to_json(), _seed_line(args) + _transfer_lines(rep)


def _cmd_indecomp(args):
    args.ring = "Z"
    f, g, _ = _pencil(args)
    rep = verify_indecomposability_modp(f, g, args.prime, args.mode, args.seed)
    lines = [
        f"verdict: {rep.verdict}",
        f"composite over Q: {str(rep.composite_over_Q).lower()}",
        f"mandated: {str(rep.mandated).lower()}",
    ]
    return EXIT_OK, rep.to_json(), _seed_line(args) + lines


def _cmd_specialize(args):
    ring = _ring(args)
    if ring.kind != "QZ":
        raise _UsageError("specialize needs --ring QZ:<s>")
    f, g = parse_pencil([args.f, args.g], ring, min_vars=2)
    rep = evaluate_parameters(f.poly, g.poly, _numbers(args.eval), ring.params, args.mode, args.seed)
    return EXIT_OK, rep.to_json(), _seed_line(args) + _transfer_lines(rep)


def _cmd_bertini(args):
    f, g, ring = _pencil(args, min_vars=3)
    res = bertini_reduce((f, g), args.set_size, args.seed)
    lines = [
        f"seed: {args.seed}",
        f"f~: {res.r.num.to_text()}",
        f"g~: {res.r.den.to_text()}",
        "substitution (u, v, w): " + "; ".join(",".join(str(x) for x in t) for t in res.substitution),
        f"success probability >= {res.bound.value}",
    ]
    return EXIT_OK, res.to_json(), lines


def _cmd_certificates(args):
    ring = _ring(args)
    parsed = parse_pencil(args.forms, ring, variables=("U", "V"), split=False)
    forms = [_as_form(p.poly, ring) for p in parsed]
    cert = gcd_certificate(forms, args.mode, args.seed)
    data = cert.to_json()
    lines = _seed_line(args) + [
        f"gcd: {cert.gcd.to_text()}",
        f"alpha: {cert.alpha}",
        "cofactors: " + ", ".join(h.to_text() for h in cert.cofactors),
        f"certificates: {len(cert.minors)}",
    ]
    under = None
    if args.prime is not None:
        under = ("mod", args.prime)
    elif args.eval is not None:
        under = ("eval", _numbers(args.eval))
    if under is not None:
        pred = cert.predicts_identity(under)
        holds = cert.identity_holds(under)
        data["specialization"] = {"predicts_identity": pred, "identity_holds": holds,
                                  "proportional": cert.kappa_under(under) is not None}
        lines += [f"predicts identity: {str(pred).lower()}", f"identity holds: {str(holds).lower()}"]
    return EXIT_OK, data, lines


def _as_form(P, ring) -> BinaryForm:
    if not P:
        raise PreconditionError("zero form")
    if ring.kind == "QZ":
        # variables (U, V, Z1..Zs): coefficients in Q[Z]
        A = PolyRing(ring.coeff_ring, ring.params)
        degs = {e[0] + e[1] for e in P.terms}
        if len(degs) != 1:
            raise PreconditionError("form is not homogeneous in U, V")
        D = degs.pop()
        parts: dict = {}
        for e, c in P.terms.items():
            parts.setdefault(e[0], {})[e[2:]] = c
        return BinaryForm(A, D, [MultiPoly(ring.coeff_ring, ring.params, parts.get(i, {}))
                                 for i in range(D + 1)])
    if not P.is_homogeneous():
        raise PreconditionError("form is not homogeneous in U, V")
    D = P.total_degree()
    return BinaryForm(P.ring, D, [P.coeff((i, D - i)) for i in range(D + 1)])


def _cmd_prob(args):
    b = probability_bounds(args.which, args.d, args.k, args.set_size)
    lines = [f"{b.formula} = {b.value}" + (" (vacuous)" if b.vacuous else "")]
    return EXIT_OK, b.to_json(), lines


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "member": _cmd_member,
    "composite": _cmd_composite,
    "bounds": _cmd_bounds,
    "transfer-modp": _cmd_transfer,
    "indecomp-modp": _cmd_indecomp,
    "specialize": _cmd_specialize,
    "bertini": _cmd_bertini,
    "certificates": _cmd_certificates,
    "prob": _cmd_prob,
}


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code, data, lines = _COMMANDS[args.command](args)
    except (ParseError, _UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GuardError, PreconditionError) as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ImplementationError as exc:
        print(f"internal: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except RatSpectrumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    _emit(args, data, lines)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
