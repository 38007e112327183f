"""Spectra and decomposability of rational functions in exact arithmetic."""

from .binaryforms import BinaryForm, ProjPoint, form_gcd, proj_roots
from .decompose import CompositeVerdict, char_guard, is_composite
from .errors import (
    DegeneratePencilError,
    GuardError,
    ImplementationError,
    InfiniteSpectrumError,
    PreconditionError,
    RatSpectrumError,
)
from .gcdspec import gcd_certificate, have_common_root, kz_bounds, mult_map_matrix, za_bound
from .noether import is_absolutely_irreducible, noether_minors, pencil_matrix, ruppert_system
from .oracle import brute_force_absolutely_reducible, oracle_spectrum
from .parser import ParseError, parse_pencil, parse_poly
from .polyring import MultiPoly, PolyRing, RationalFunction, homogenize, linear_change, measures
from .ring import GF, QQ, ZZ, probable_prime_above
from .spectrum import SpectrumReport, is_in_spectrum, spect_poly, spectrum_over_Fp
from .transfer import (
    bertini_reduce,
    evaluate_parameters,
    modp_bounds,
    probability_bounds,
    verify_indecomposability_modp,
    verify_modp_transfer,
)

__all__ = [
    "BinaryForm", "ProjPoint", "form_gcd", "proj_roots",
    "CompositeVerdict", "char_guard", "is_composite",
    "DegeneratePencilError", "GuardError", "ImplementationError", "InfiniteSpectrumError",
    "PreconditionError", "RatSpectrumError",
    "gcd_certificate", "have_common_root", "kz_bounds", "mult_map_matrix", "za_bound",
    "is_absolutely_irreducible", "noether_minors", "pencil_matrix", "ruppert_system",
    "brute_force_absolutely_reducible", "oracle_spectrum",
    "ParseError", "parse_pencil", "parse_poly",
    "MultiPoly", "PolyRing", "RationalFunction", "homogenize", "linear_change", "measures",
    "GF", "QQ", "ZZ", "probable_prime_above",
    "SpectrumReport", "is_in_spectrum", "spect_poly", "spectrum_over_Fp",
    "bertini_reduce", "evaluate_parameters", "modp_bounds", "probability_bounds",
    "verify_indecomposability_modp", "verify_modp_transfer",
]
