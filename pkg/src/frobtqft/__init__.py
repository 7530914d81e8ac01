"""Exact-rational engine for Frobenius algebras, 2D TQFT sewing and ribbon graphs."""
from .algebra import FROBENIUS, NEARLY, AlgebraSpec, MissingDataError, ValidationError, validate
from .frobenius import FrobeniusPackage, derive
from .tensor import (ArityError, DimensionError, MultilinearMap, apply, compose_full,
                     compose_partial, permute, tensor_product)

__version__ = "0.1.0"

__all__ = [
    "FROBENIUS", "NEARLY", "AlgebraSpec", "ArityError", "DimensionError", "FrobeniusPackage",
    "MissingDataError", "MultilinearMap", "ValidationError", "apply", "compose_full",
    "compose_partial", "derive", "permute", "tensor_product", "validate",
]
