"""Finite fields F_{q^m} in normal-basis representation."""

from .basefield import BaseField
from .context import (
    FieldCtx,
    FieldParams,
    OpCounts,
    build_field,
    ext_matrix,
    fe_add,
    fe_frob,
    fe_inv,
    fe_mul,
    fq_rank,
    fq_rref,
    independent_over_fq,
)

__all__ = [
    "BaseField",
    "FieldCtx",
    "FieldParams",
    "OpCounts",
    "build_field",
    "ext_matrix",
    "fe_add",
    "fe_frob",
    "fe_inv",
    "fe_mul",
    "fq_rank",
    "fq_rref",
    "independent_over_fq",
]
