"""Toeplitz operators on the tetrablock Hardy space, checked at finite truncation."""

from ._core import (
    GradedBasis,
    MeasureContext,
    QuadratureSpec,
    Symbol,
    TetralabError,
    brown_halmos_residual,
    build_ladder_basis,
    check_tuple_relations,
    compactness_probe,
    dim_hom_minus,
    enumerate_hom_minus,
    ladder_shift_check,
    load_cache,
    sample_boundary,
    set_thread_count,
    symbol_recovery,
    thread_count,
    toeplitz_window,
)

__all__ = [
    "GradedBasis",
    "MeasureContext",
    "QuadratureSpec",
    "Symbol",
    "TetralabError",
    "brown_halmos_residual",
    "build_ladder_basis",
    "check_tuple_relations",
    "compactness_probe",
    "dim_hom_minus",
    "enumerate_hom_minus",
    "ladder_shift_check",
    "load_cache",
    "sample_boundary",
    "set_thread_count",
    "symbol_recovery",
    "thread_count",
    "toeplitz_window",
]
