"""Certifying colorings for t-broom-free graphs."""

from broomcolor.bounds import BoundFunction, certified_bound
from broomcolor.certify import CertifiedResult, VerificationReport, emit_cert, parse_cert, verify
from broomcolor.colorer import color, color_chair_free, color_ktt_free, color_tbroom_free
from broomcolor.detect import BicliqueWitness, BroomWitness, find_induced_ktt, find_induced_tbroom
from broomcolor.errors import (
    CapacityError,
    InputError,
    InternalContradiction,
    ParseError,
)
from broomcolor.graph import Coloring, Graph, LayerDecomposition

__all__ = [
    "BicliqueWitness",
    "BoundFunction",
    "BroomWitness",
    "CapacityError",
    "CertifiedResult",
    "Coloring",
    "Graph",
    "InputError",
    "InternalContradiction",
    "LayerDecomposition",
    "ParseError",
    "VerificationReport",
    "certified_bound",
    "color",
    "color_chair_free",
    "color_ktt_free",
    "color_tbroom_free",
    "emit_cert",
    "find_induced_ktt",
    "find_induced_tbroom",
    "parse_cert",
    "verify",
]

__version__ = "0.1.0"
