"""Certified-at-depth verification of orbit/anti-orbit dynamics of
number-theoretic special functions, their preimage structure, and the
Alexandroff topologies they induce on the naturals."""

from .config import DEFAULT_CONFIG, ToolConfig
from .factorint import FactoredNatural, DeferredValue, OVERFLOW, factorize, to_integer
from .arithfun import (
    FunctionId, PHI, PSI, PHI_STAR, BIG_OMEGA, SMALL_OMEGA, D, J2,
    jordan, generalized_psi, divisor_count, sigma, parse_function,
    evaluate, evaluate_int, oracle_evaluate,
)
from .dynamics import (
    FamilySpec, GenericFamilySpec, Scheme, family_term, family_terms,
    verify_antiorbit, verify_orbit, verify_disjoint, generic_family_terms,
    classify_monotonicity, ent_set_estimate, ent_cset_estimate,
    search_families,
)
from .preimage import inverse_phi, phi_bound, preimage_expansive
from .reports import Counterexample, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONFIG", "ToolConfig",
    "FactoredNatural", "DeferredValue", "OVERFLOW", "factorize", "to_integer",
    "FunctionId", "PHI", "PSI", "PHI_STAR", "BIG_OMEGA", "SMALL_OMEGA", "D",
    "J2", "jordan", "generalized_psi", "divisor_count", "sigma",
    "parse_function", "evaluate", "evaluate_int", "oracle_evaluate",
    "FamilySpec", "GenericFamilySpec", "Scheme", "family_term", "family_terms",
    "verify_antiorbit", "verify_orbit", "verify_disjoint",
    "generic_family_terms", "classify_monotonicity", "ent_set_estimate",
    "ent_cset_estimate", "search_families",
    "inverse_phi", "phi_bound", "preimage_expansive",
    "Counterexample", "VerificationReport",
]
