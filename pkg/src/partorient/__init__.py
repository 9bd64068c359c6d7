"""Partial orientations of multigraphs and the Tutte polynomial identities that count them."""

from .multigraph import GraphError, Multigraph, build, parse_graph
from .orientations import PartialOrientation, State
from .reductions import ReferencePair, canonical_rep, default_pair, q_connected_pair, random_pair
from .tutte import OrientationClass, TuttePolynomial, chromatic_count, reliability_exact, tutte_polynomial

__version__ = "0.1.0"

__all__ = [
    "GraphError",
    "Multigraph",
    "OrientationClass",
    "PartialOrientation",
    "ReferencePair",
    "State",
    "TuttePolynomial",
    "build",
    "canonical_rep",
    "chromatic_count",
    "default_pair",
    "parse_graph",
    "q_connected_pair",
    "random_pair",
    "reliability_exact",
    "tutte_polynomial",
]
