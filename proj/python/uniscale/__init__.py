"""Frequency-uniform decomposition norms and dispersive tooling on the torus."""

from ._uniscale import (
    Field,
    Grid,
    NumericError,
    ValidationError,
    box_project,
    classify,
    field,
    lp_norm,
    mj_norm,
    mj_norm_oracle,
    modulation_norm,
    norm_with_spec,
    propagate,
    solve_nls,
    split_step,
    to_physical,
    to_spectral,
    window_profile,
    wrap_time,
)

__all__ = [
    "Field",
    "Grid",
    "NumericError",
    "ValidationError",
    "box_project",
    "classify",
    "field",
    "lp_norm",
    "mj_norm",
    "mj_norm_oracle",
    "modulation_norm",
    "norm_with_spec",
    "propagate",
    "solve_nls",
    "split_step",
    "to_physical",
    "to_spectral",
    "window_profile",
    "wrap_time",
]
