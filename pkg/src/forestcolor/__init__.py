"""Exact potential-method colorings of weighted multigraphs into two forests
of bounded degree."""

from __future__ import annotations

from .engine import CaseTrace, EngineError, HypothesisViolation, RegimeViolation, color
from .graph import GraphError, Params, SizeGuardError, WeightedMultigraph, girth, potential, profile, subset_potential
from .potential import (
    SubsetResult,
    check_hypothesis,
    check_strict_sparsity,
    min_potential,
    min_potential_bruteforce,
)
from .verify import Verdict, brute_force_color, is_critical, verify_coloring

__all__ = [
    "CaseTrace",
    "EngineError",
    "GraphError",
    "HypothesisViolation",
    "Params",
    "RegimeViolation",
    "SizeGuardError",
    "SubsetResult",
    "Verdict",
    "WeightedMultigraph",
    "brute_force_color",
    "check_hypothesis",
    "check_strict_sparsity",
    "color",
    "girth",
    "is_critical",
    "min_potential",
    "min_potential_bruteforce",
    "potential",
    "profile",
    "subset_potential",
    "verify_coloring",
]
