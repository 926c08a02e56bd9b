"""Numerical workbench for real operator algebras and Jordan operator algebras."""

from ._roal import (
    InputError,
    UnknownScenario,
    complex_is_psd,
    embed,
    f_transform,
    f_transform_inverse,
    functional_norm,
    is_cp_conjugation,
    is_real_positive,
    jordan_closure_dimension,
    lambda_min,
    list_scenarios,
    operator_norm,
    run_scenario,
    stinespring_residual,
    subspace_flags,
    transpose_choi_lambda_min,
)

__all__ = [
    "InputError",
    "UnknownScenario",
    "complex_is_psd",
    "embed",
    "f_transform",
    "f_transform_inverse",
    "functional_norm",
    "is_cp_conjugation",
    "is_real_positive",
    "jordan_closure_dimension",
    "lambda_min",
    "list_scenarios",
    "operator_norm",
    "run_scenario",
    "stinespring_residual",
    "subspace_flags",
    "transpose_choi_lambda_min",
]
