"""Exact verification of the 40-vector Kochen-Specker configuration in R^8."""

from ks8.exact_linalg import Context, ExactVector, Projector, inner, is_resolution_of_identity
from ks8.ks_engine import ContextHypergraph, ParityCertificate, is_valid_certificate, search_assignment
from ks8.mermin import generate_defining_octads
from ks8.pipeline import construct, verify_all

__all__ = [
    "Context",
    "ContextHypergraph",
    "ExactVector",
    "ParityCertificate",
    "Projector",
    "construct",
    "generate_defining_octads",
    "inner",
    "is_resolution_of_identity",
    "is_valid_certificate",
    "search_assignment",
    "verify_all",
]
