"""Sigma^1 membership for Artin groups and a desk-scale check of the
spoke-family argument (kernel presentation, theta, and dim E_s growth)."""

__version__ = "0.1.0"

from .characters import Character, normalize, support, validate_character
from .criterion import Membership, SigmaVerdict, classify, dead_edges, living_subgraph, sphere_description
from .graph import ArtinGraph, SpokeParams, spoke_graph, to_spoke_params
from .growth import E_s_dimension, hypothesis_check, reduce_labels, witness_report

__all__ = [
    "ArtinGraph", "Character", "E_s_dimension", "Membership", "SigmaVerdict", "SpokeParams",
    "classify", "dead_edges", "hypothesis_check", "living_subgraph", "normalize", "reduce_labels",
    "sphere_description", "spoke_graph", "support", "to_spoke_params", "validate_character",
    "witness_report",
]
