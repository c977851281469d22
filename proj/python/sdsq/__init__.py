"""Quantum simulation of a Schwarzschild-de Sitter minisuperspace model."""

from ._core import (
    ContractError,
    ConvergenceError,
    DimensionError,
    DomainError,
    Error,
    NoHorizonError,
    RunError,
    UnsupportedBasisError,
    ansatz_state,
    build_operators,
    commutator_norm,
    constrained_spectrum,
    decompose,
    default_lambda,
    horizons,
    nariai_mass,
    partition_function,
    reconstruct,
    run_vqe,
    sample_wavefunction,
    thermo_point,
    wkb,
)

__all__ = [name for name in dir() if not name.startswith("_")]
