"""Exact computations in the descent algebra of S_n and the Lie modules L_n."""

from .fields import GF, QQ, ZZ, field_from_name
from .group_algebra import GroupAlgebraElement
from .symgroup import Composition, Partition, Permutation

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "ZZ",
    "Composition",
    "GroupAlgebraElement",
    "Partition",
    "Permutation",
    "field_from_name",
]
