"""Differentiable computation kernel: tape autodiff, sparse ops, Adam."""

from . import ops
from .adam import AdamState, adam_step
from .backend import BACKEND
from .gradcheck import finite_difference_check
from .sparse import SparseMatrix
from .tape import (Gradients, NonFiniteValue, PRIMITIVES, Record,
                   ShapeMismatch, Tensor, apply_primitive, backward, constant)

__all__ = [
    "AdamState", "adam_step", "BACKEND", "finite_difference_check",
    "SparseMatrix", "Gradients", "NonFiniteValue", "PRIMITIVES", "Record",
    "ShapeMismatch", "Tensor", "apply_primitive", "backward", "constant",
    "ops",
]
