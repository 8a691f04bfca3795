"""Exact max-plus matrix analysis: spectra, eigencones, the core of a matrix,
periodicity classes, and brute-force cross-checks."""

from .classify import ClassificationReport, Verdict, classify
from .core import CoreDescription, core_action, core_basis, core_membership, finite_stabilization
from .matrix import (
    GeneratingSet,
    TropicalMatrix,
    TropicalVector,
    extremal_reduction,
    kleene_star,
    mat_mul,
    mat_power,
    principal_solution,
    span_equal,
    span_membership,
)
from .maxmin import MaxMinCore, maxmin_core, maxmin_fixed_point_check
from .semiring import EPS, MAX_MIN, MAX_PLUS, MAX_TIMES
from .spectral import (
    TheoremViolation,
    critical_graph,
    eigencone_basis,
    frobenius_normal_form,
    max_cycle_mean,
    spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "EPS",
    "MAX_MIN",
    "MAX_PLUS",
    "MAX_TIMES",
    "ClassificationReport",
    "CoreDescription",
    "GeneratingSet",
    "MaxMinCore",
    "TheoremViolation",
    "TropicalMatrix",
    "TropicalVector",
    "Verdict",
    "classify",
    "core_action",
    "core_basis",
    "core_membership",
    "critical_graph",
    "eigencone_basis",
    "extremal_reduction",
    "finite_stabilization",
    "frobenius_normal_form",
    "kleene_star",
    "mat_mul",
    "mat_power",
    "max_cycle_mean",
    "maxmin_core",
    "maxmin_fixed_point_check",
    "principal_solution",
    "span_equal",
    "span_membership",
    "spectrum",
]
