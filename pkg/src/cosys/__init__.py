"""Exact cosystoles and 3-cosystoles of binary matroids."""

from .catalog import get as catalog_entry
from .cosystole import (
    InvariantResult,
    NoAdmissibleTriple,
    WeightVector,
    sys3_star,
    sys3_weighted,
    sys_star,
    sys_weighted,
)
from .exactnum import Rational
from .gf2 import Gf2Matrix
from .graphs import Graph, cographic_matroid, graphic_matroid
from .matroid import BinaryMatroid, contract, delete, dual, isomorphic, simplify

__all__ = [
    "BinaryMatroid", "Gf2Matrix", "Graph", "InvariantResult", "NoAdmissibleTriple", "Rational",
    "WeightVector", "catalog_entry", "cographic_matroid", "contract", "delete", "dual",
    "graphic_matroid", "isomorphic", "simplify", "sys3_star", "sys3_weighted", "sys_star",
    "sys_weighted",
]
