"""Exact computation of total Milnor numbers for weighted Le-Yomdin-at-infinity polynomials."""

from .apps import (BroughtonEvidence, EquivalenceCertificate, TamenessVerdict, ThomSebastianiReport,
                   broughton_diagnostic, monodromy_equivalence, tameness, thom_sebastiani)
from .branches import (BranchData, eigenspace_dims, find_branches, local_milnor, local_tjurina,
                       suspended_dims, transversal_germ)
from .errors import (DegenerateInput, DegenerateWeights, HypothesisFailure, NonInvariantJacobian,
                     NonIsolatedGerm, NonRationalBranch, NotApplicable, NotCurve, NotMixed,
                     ParseError, StructuralError, WlyError)
from .euler import (INFINITE, IsoProbe, MilnorReport, PoincareSeries, Settings, chi_fiber,
                    chi_tilde, chi_virtual, iso_poly_exists, oracle_total_milnor, poincare_coeffs,
                    total_milnor, total_milnor_abstract)
from .ideal import (MonomialOrder, StandardBasis, groebner_basis, krull_dimension,
                    local_standard_basis, quotient_staircase, radical_membership)
from .parsing import parse_polynomial
from .poly import (Polynomial, WeightSystem, WeightedDecomposition, decompose, direct_sum,
                   homogenize, variables)
from .wly import WlyAnalysis, analyze, check_wly, singular_dimension

__all__ = [
    "BranchData",
    "BroughtonEvidence",
    "DegenerateInput",
    "DegenerateWeights",
    "EquivalenceCertificate",
    "HypothesisFailure",
    "INFINITE",
    "IsoProbe",
    "MilnorReport",
    "MonomialOrder",
    "NonInvariantJacobian",
    "NonIsolatedGerm",
    "NonRationalBranch",
    "NotApplicable",
    "NotCurve",
    "NotMixed",
    "ParseError",
    "PoincareSeries",
    "Polynomial",
    "Settings",
    "StandardBasis",
    "StructuralError",
    "TamenessVerdict",
    "ThomSebastianiReport",
    "WeightSystem",
    "WeightedDecomposition",
    "WlyAnalysis",
    "WlyError",
    "analyze",
    "broughton_diagnostic",
    "check_wly",
    "chi_fiber",
    "chi_tilde",
    "chi_virtual",
    "decompose",
    "direct_sum",
    "eigenspace_dims",
    "find_branches",
    "groebner_basis",
    "homogenize",
    "iso_poly_exists",
    "krull_dimension",
    "local_milnor",
    "local_standard_basis",
    "local_tjurina",
    "monodromy_equivalence",
    "oracle_total_milnor",
    "parse_polynomial",
    "poincare_coeffs",
    "quotient_staircase",
    "radical_membership",
    "singular_dimension",
    "suspended_dims",
    "tameness",
    "thom_sebastiani",
    "total_milnor",
    "total_milnor_abstract",
    "transversal_germ",
    "variables",
]

__version__ = "0.1.0"
