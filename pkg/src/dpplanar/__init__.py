"""DP-colouring of plane graphs without cycles of lengths 4, 7 and 9.

Plane graphs as rotation systems, bounded cycle enumeration, signatures over
the symmetric group, an exact DP-colouring solver, the structural lemmas of a
minimal counterexample, reducing surgery, and an exact discharging ledger.
"""

from __future__ import annotations

from .coloring import (
    DPCheckResult,
    SolveResult,
    TheoremReport,
    extend_boundary,
    is_dp_k_colorable,
    solve,
    verify_theorem,
)
from .cycles import Cycle, enumerate_cycles
from .discharging import ChargeLedger, audit_claims, discharge, g_bound, meta_audit
from .errors import DPPlanarError
from .generate import GenConfig, generate
from .labelling import LabelledGraph, Perm, random_labelling
from .plane_graph import PlaneGraph, classify, parse_pg, read_pg, write_pg
from .structure import is_good_cycle, lemma_predicates
from .surgery import Identify, InsertArc, SurgeryPlan, check_safety

__version__ = "0.1.0"

__all__ = [
    "ChargeLedger",
    "Cycle",
    "DPCheckResult",
    "DPPlanarError",
    "GenConfig",
    "Identify",
    "InsertArc",
    "LabelledGraph",
    "Perm",
    "PlaneGraph",
    "SolveResult",
    "SurgeryPlan",
    "TheoremReport",
    "audit_claims",
    "check_safety",
    "classify",
    "discharge",
    "enumerate_cycles",
    "extend_boundary",
    "g_bound",
    "generate",
    "is_dp_k_colorable",
    "is_good_cycle",
    "lemma_predicates",
    "meta_audit",
    "parse_pg",
    "random_labelling",
    "read_pg",
    "solve",
    "verify_theorem",
    "write_pg",
]
