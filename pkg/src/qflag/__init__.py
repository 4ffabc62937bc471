"""Exact multiplication, reduction, and integration in the classical and
small quantum cohomology rings of Fano quiver flag varieties, with an
independent toric rewrite model for cross-verification and a Laurent
mirror superpotential emitter.
"""

from .classical import ClassicalRing
from .oracle import ToricOracle
from .partitions import (
    SignedPartition,
    add_first_row,
    fits_box,
    partition,
    remove_rim_hook,
    transpose,
)
from .quantum import QuantumRing
from .quiver import AbelianizedQuiver, QuiverError, QuiverSpec, VertexRanks
from .schur import lr_multiply, monomial_expansion, pieri_vertical

__all__ = [
    "AbelianizedQuiver",
    "ClassicalRing",
    "QuantumRing",
    "QuiverError",
    "QuiverSpec",
    "SignedPartition",
    "ToricOracle",
    "VertexRanks",
    "add_first_row",
    "fits_box",
    "lr_multiply",
    "monomial_expansion",
    "partition",
    "pieri_vertical",
    "remove_rim_hook",
    "transpose",
]
