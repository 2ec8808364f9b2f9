"""Homological invariants of finite function classes.

Classes of partial functions ``[n] -> [m]`` are analysed through their canonical
suboplex: Betti tables, Stanley-Reisner and canonical ideals, dimensions,
Cohen-Macaulay tests, labeled cellular resolutions, separation certificates and
homological Farkas certificates.  All arithmetic is exact.
"""

from .classes import FunctionClass, PartialClass, PartialFunction, build_class, named_function
from .errors import CrossCheckError, InputError, PreconditionError, ShapeError, SizeLimitError, SuboplexError
from .topology import BettiTable, betti_table

__version__ = "0.1.0"

__all__ = [
    "BettiTable",
    "CrossCheckError",
    "FunctionClass",
    "InputError",
    "PartialClass",
    "PartialFunction",
    "PreconditionError",
    "ShapeError",
    "SizeLimitError",
    "SuboplexError",
    "betti_table",
    "build_class",
    "named_function",
]
