"""Combinatorial tools for Coxeter groups of type HM: diagram classification,
nerves and flats, homology-sphere checks, surgery, and polytope face-count audits."""

__version__ = "0.1.0"

from .diagram import INF, CoxeterMatrix, Diagram, DiagramError, parse_diagram, format_diagram
from .classify import Kind, classify, is_quasi_lanner, template_table
from .nerve import Nerve, AffineFlat, build_nerve, enumerate_affine_flats, maximal_flats
from .homology import SimplicialComplex, reduced_homology, is_ghs
from .polytope import build_polytope, audit_face_counts, check_facet_configurations, nikulin_bound, rightangled_dimension_bound
from .surgery import cut_along_flat, glue_along_flat
from .weights import general_bound, weight, sigma_face, sigma_edge, is_bad_3face

__all__ = [
    "INF", "CoxeterMatrix", "Diagram", "DiagramError", "parse_diagram", "format_diagram",
    "Kind", "classify", "is_quasi_lanner", "template_table",
    "Nerve", "AffineFlat", "build_nerve", "enumerate_affine_flats", "maximal_flats",
    "SimplicialComplex", "reduced_homology", "is_ghs",
    "build_polytope", "audit_face_counts", "check_facet_configurations", "nikulin_bound", "rightangled_dimension_bound",
    "cut_along_flat", "glue_along_flat",
    "general_bound", "weight", "sigma_face", "sigma_edge", "is_bad_3face",
]
