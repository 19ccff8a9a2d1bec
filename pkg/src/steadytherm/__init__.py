"""Steady states and thermodynamics of open quantum systems in two baths.

The library builds Lindblad models, maps them to sparse superoperators in a
row-major vectorization, solves for the unique steady state by a
trace-constrained direct solve, and evaluates internal energy, entropy,
specific heats, and fidelity against Boltzmann reference states.
"""

from .errors import (
    AllRatesZero,
    ConfigError,
    DimensionMismatch,
    InvalidParams,
    InvalidState,
    NegativeEigenvalue,
    NonpositiveFrequency,
    NonUniqueSteadyState,
    NotConverged,
    NotHermitian,
    NotSquare,
    SingularMatrix,
    SteadyThermError,
)
from .liouville import (
    DensityMatrix,
    DissipationChannel,
    LindbladModel,
    Superoperator,
    apply_rhs,
    build_effective_hamiltonian,
    build_superoperator,
    unvectorize,
    vectorize,
)
from .models import (
    CoupledQubitsParams,
    ModelPreset,
    OscillatorParams,
    PRESETS,
    TwoLevelParams,
    build_model,
    destroy,
    make_coupled_qubits,
    make_damped_oscillator,
    make_two_level,
    model_family,
    two_level_closed_form,
)
from .steady import propagate, propagate_to_steady, solve_steady_state
from .sweep import Axis, SweepSpec, run_sweep, spec_from_preset
from .thermo import (
    eigenbasis_populations,
    gibbs_state,
    internal_energy,
    mean_occupation,
    specific_heat,
    trace_distance,
    uhlmann_fidelity,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "AllRatesZero",
    "Axis",
    "ConfigError",
    "CoupledQubitsParams",
    "DensityMatrix",
    "DimensionMismatch",
    "DissipationChannel",
    "InvalidParams",
    "InvalidState",
    "LindbladModel",
    "ModelPreset",
    "NegativeEigenvalue",
    "NonpositiveFrequency",
    "NonUniqueSteadyState",
    "NotConverged",
    "NotHermitian",
    "NotSquare",
    "OscillatorParams",
    "PRESETS",
    "SingularMatrix",
    "SteadyThermError",
    "Superoperator",
    "SweepSpec",
    "TwoLevelParams",
    "apply_rhs",
    "build_effective_hamiltonian",
    "build_model",
    "build_superoperator",
    "destroy",
    "eigenbasis_populations",
    "gibbs_state",
    "internal_energy",
    "make_coupled_qubits",
    "make_damped_oscillator",
    "make_two_level",
    "mean_occupation",
    "model_family",
    "propagate",
    "propagate_to_steady",
    "run_sweep",
    "solve_steady_state",
    "spec_from_preset",
    "specific_heat",
    "trace_distance",
    "two_level_closed_form",
    "unvectorize",
    "uhlmann_fidelity",
    "vectorize",
    "von_neumann_entropy",
]
