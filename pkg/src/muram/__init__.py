"""Exact ramification data of inseparable Kummer-type coverings in characteristic p.

Coverings of the line graded by a finite abelian p-group are recorded by
their multiplication tables (symmetric, normalized, associative systems
of structure constants); the package classifies them, computes per-place
stabilizers and the ramification divisor of the normalized model,
cross-checks every multiplicity against a module-length oracle, locates
the Gorenstein places, verifies the two-layer factorization identity,
and assembles the degree/genus bookkeeping over the projective line.
"""

from .algebra import AlgebraElt, algebra_inverse
from .covering import (
    Cocycle,
    KummerData,
    ValidationReport,
    canonical_infinity_degrees,
    chart_at_infinity,
    cocycle_from_column,
    forward_decompose,
    support_places,
    torsor_at,
    twist,
    validate,
)
from .divisors import Divisor, SymbolicPlace, pullback
from .fppoly import (
    Place,
    Poly,
    RatFun,
    factor,
    is_irreducible,
    is_pth_power,
    poly_gcd,
    valuation,
)
from .gorenstein import (
    derive_sign,
    det_M_phi_bruteforce,
    det_M_phi_formula,
    diagonal_coefficients,
    dual_generator,
    gorenstein_at,
    sign_table,
)
from .pgroup import GElt, PGroup, Subgroup, sigma, subgroup_generated
from .ramification import (
    DevissageReport,
    FixedIdealReport,
    GlnRegressionReport,
    LocalModel,
    RamReport,
    devissage_check,
    fixed_ideal_relation_check,
    fixed_ideal_valuation_at,
    gln_regression,
    multiplicity_at,
    normalize_local_model,
    ramification_divisor,
    stabilizer_subgroup_at,
    untwisted_local_model,
)
from .rh_genus import GenusReport, GlobalModel, predict_genus, total_ram_degree
from .snf_oracle import (
    PresentationMatrix,
    algebra_valuation,
    build_presentation,
    oracle_multiplicity,
    snf_length,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
