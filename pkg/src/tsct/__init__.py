"""Exact trivial source character tables of SL2(2^f) in odd cross-characteristic."""

from __future__ import annotations

__version__ = "0.1.0"

from .gf import FieldElement, FieldTower
from .cyclo import Cyclotomic, ResidueField, rat, zeta

__all__ = [
    "Cyclotomic",
    "FieldElement",
    "FieldTower",
    "ResidueField",
    "rat",
    "zeta",
]
