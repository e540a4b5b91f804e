"""Exact enumeration of Husimi graphs, cacti and oriented cacti.

Closed formulas, unlabelled series, a Pruefer-type bijection and the
Gaussian-model virial expansion, each cross-checked against brute force.
"""

from .algebra import RootSum, Series, WeightPoly
from .errors import (
    BlockforestError,
    ConsistencyError,
    DecodeError,
    DomainError,
    OracleLimitError,
    OrderMismatchError,
    StructureError,
)
from .labeled import BlockSizeDistribution, CountTable

__version__ = "0.1.0"

__all__ = [
    "BlockSizeDistribution",
    "BlockforestError",
    "ConsistencyError",
    "CountTable",
    "DecodeError",
    "DomainError",
    "OracleLimitError",
    "OrderMismatchError",
    "RootSum",
    "Series",
    "StructureError",
    "WeightPoly",
]
