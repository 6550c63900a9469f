"""Verification and classification toolkit for Lie skew braces and
post-Lie algebras: exact structure-constant classification, catalog
group laws, brace constructions with numerical identity checks, and the
reproduction of the existence table for non-trivial braces."""

from .exactlin import RationalMatrix, kernel_basis, rank, solve, span_closure
from .liealg import (
    LieAlgebra,
    bracket,
    center,
    classify,
    derived_series,
    direct_sum,
    invariant_battery,
    jacobi_check,
    killing_form,
    lower_central_series,
    radical,
)
from .lsb import (
    extract_postlie,
    realize,
    verify_lambda_properties,
    verify_lsb,
    verify_simple_transitivity,
)
from .matgrp import group_from_json, iwasawa, structure_constants_numeric
from .postlie import (
    PostLieStructure,
    check_axioms,
    check_prelie,
    derive_circ,
    gln_prelie,
    obstruction_scan,
)
from .tablerepro import build_table, certify_cell

__all__ = [
    "RationalMatrix", "kernel_basis", "rank", "solve", "span_closure",
    "LieAlgebra", "bracket", "center", "classify", "derived_series",
    "direct_sum", "invariant_battery", "jacobi_check", "killing_form",
    "lower_central_series", "radical",
    "extract_postlie", "realize", "verify_lambda_properties", "verify_lsb",
    "verify_simple_transitivity",
    "group_from_json", "iwasawa", "structure_constants_numeric",
    "PostLieStructure", "check_axioms", "check_prelie", "derive_circ",
    "gln_prelie", "obstruction_scan",
    "build_table", "certify_cell",
]

__version__ = "0.1.0"
