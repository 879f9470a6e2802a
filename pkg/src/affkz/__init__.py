"""Exact symbolic OPE calculator for affine current algebras.

The package computes operator product expansions of normally ordered
composites of affine currents over so_N and sl_N with exact rational
coefficients (rational functions in the formal level k), builds the
central elements that drive them (noncommutative pfaffians, their sums
of squares, and the cubic fully symmetric invariant), and emits the
resulting fourth-order differential/difference equation satisfied by
correlation functions with one pfaffian insertion.
"""

from .scalars import Scalar
from .liealg import LieAlgebra, so_algebra, sl_algebra
from .fields import Field, current, pf_field, c4_field, gelfand_fields, sugawara_field
from .ope import OPEResult, contract, mode_action, rearrange_comm, rearrange_assoc

__all__ = [
    "Scalar",
    "LieAlgebra",
    "so_algebra",
    "sl_algebra",
    "Field",
    "current",
    "pf_field",
    "c4_field",
    "gelfand_fields",
    "sugawara_field",
    "OPEResult",
    "contract",
    "mode_action",
    "rearrange_comm",
    "rearrange_assoc",
]

__version__ = "0.1.0"
