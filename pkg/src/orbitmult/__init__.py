"""Exact Corwin-Greenleaf and branching multiplicities for the Heisenberg motion group U(n) x H_n."""

from orbitmult.weights import (
    GroupedWeight,
    LengthMismatch,
    NotDominant,
    group,
    interlaces_below,
    is_strongly_dominant,
    parse_weight,
    validate,
    weyl_dimension,
)
from orbitmult.cg_solver import CGResult, Path, cg_multiplicity, solve_group_norms
from orbitmult.branching import Convention, branch_table, branching_multiplicity, compare_n_m

__all__ = [
    "CGResult",
    "Convention",
    "GroupedWeight",
    "LengthMismatch",
    "NotDominant",
    "Path",
    "branch_table",
    "branching_multiplicity",
    "cg_multiplicity",
    "compare_n_m",
    "group",
    "interlaces_below",
    "is_strongly_dominant",
    "parse_weight",
    "solve_group_norms",
    "validate",
    "weyl_dimension",
]

__version__ = "0.1.0"
