"""Finite fields, Hermitian codes, distance oracles and access structures."""
from .codes import (BudgetExceeded, LinearCode, coset_distance, dual, min_distance,
                    support_gain)
from .field import GF, field, nullspace, rank, rref, solve
from .hermitian import (CurvePoint, build_code_l, build_code_omega, default_support,
                        evaluate, hermitian_points, monomial_with_pole, pole_orders, rr_basis)
from .secret_sharing import (AccessSummary, access_structure, brute_force_qualified,
                             duality_check, size_extremes)

__all__ = [
    "AccessSummary", "BudgetExceeded", "CurvePoint", "GF", "LinearCode", "access_structure",
    "brute_force_qualified", "build_code_l", "build_code_omega", "coset_distance",
    "default_support", "dual", "duality_check", "evaluate", "field", "hermitian_points",
    "min_distance", "monomial_with_pole", "nullspace", "pole_orders", "rank", "rr_basis",
    "rref", "size_extremes", "solve", "support_gain",
]
