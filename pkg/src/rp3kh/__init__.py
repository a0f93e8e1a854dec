"""Khovanov-type homology for links in real projective space.

Diagrams live in the projective plane (a disk with antipodal boundary
points identified).  The package computes the Kauffman bracket skein module
value of a diagram and the bigraded integer homology whose Euler
characteristic recovers it.
"""

from .diagram import (
    Arc,
    DiagramError,
    ParseError,
    ProjectiveDiagram,
    Slot,
    crossing_signs,
    dumps,
    load,
    loads,
    resolve,
    validate,
)
from .differential import chain_complex, verify_d2
from .homology import BigradedHomology, compare, euler_characteristic, homology, smith_normal_form
from .laurent import LaurentPoly2
from .moves import apply_move
from .skein import KbsmElement, bracket_normalized, kbsm, substitute_x

__version__ = "0.1.0"

__all__ = [
    "Arc", "BigradedHomology", "DiagramError", "KbsmElement", "LaurentPoly2", "ParseError",
    "ProjectiveDiagram", "Slot", "apply_move", "bracket_normalized", "chain_complex", "compare",
    "crossing_signs", "dumps", "euler_characteristic", "homology", "kbsm", "load", "loads",
    "resolve", "smith_normal_form", "substitute_x", "validate", "verify_d2",
]
