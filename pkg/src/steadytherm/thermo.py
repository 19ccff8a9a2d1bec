"""Steady-state thermodynamics.

Internal energy U = Tr(rho H), von Neumann entropy S = -Tr(rho ln rho),
specific heats as finite-difference temperature derivatives of U, and
Uhlmann fidelity against Boltzmann reference states.

Units: hbar = k_B = 1, so energies are in units of the model's reference
frequency and temperatures in the same unit.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import numkernel
from .errors import (
    DimensionMismatch,
    InvalidParams,
    InvalidState,
    NegativeEigenvalue,
    NonpositiveFrequency,
)
from .liouville import DensityMatrix, LindbladModel
from .steady import solve_steady_state

_ENTROPY_FLOOR = 1e-14
_GIBBS_GAP_TOL = 1e-10


def mean_occupation(temperature: float, omega: float) -> float:
    """Bose-Einstein factor 1/(exp(omega/T) - 1) with exact limits.

    T = 0 returns 0 exactly; omega/T beyond 700 underflows to 0; below
    omega/T = 1e-8 the first-order expansion T/omega - 1/2 avoids
    cancellation.
    """
    if omega <= 0.0:
        raise NonpositiveFrequency(f"frequency must be positive, got {omega}")
    if temperature < 0.0:
        raise InvalidParams(f"temperature must be nonnegative, got {temperature}")
    if temperature == 0.0:
        return 0.0
    x = omega / temperature
    if x > 700.0:
        return 0.0
    if x < 1e-8:
        return temperature / omega - 0.5
    return 1.0 / math.expm1(x)


def internal_energy(rho: DensityMatrix, hamiltonian: np.ndarray) -> float:
    """U = Tr(rho H). The imaginary part must vanish to 1e-10."""
    h = np.asarray(hamiltonian, dtype=complex)
    if h.shape != rho.matrix.shape:
        raise DimensionMismatch(
            f"Hamiltonian shape {h.shape} does not match state dimension {rho.dim}"
        )
    tr = np.trace(rho.matrix @ h)
    if abs(tr.imag) > 1e-10:
        raise InvalidState(f"Tr(rho H) has imaginary part {tr.imag:.3e}")
    return float(tr.real)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S = -sum_i p_i ln p_i over the eigenvalues, with 0 ln 0 = 0."""
    m = rho.matrix
    w = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    if w[0] < -numkernel.PSD_CLIP:
        raise InvalidState(f"eigenvalue {w[0]:.3e} below -1e-8")
    p = w[w > _ENTROPY_FLOOR]
    s = float(-np.sum(p * np.log(p)))
    # Rounding can push a pure state a hair below zero.
    return max(s, 0.0)


def specific_heat(
    model_family: Callable[[float, float], LindbladModel],
    which_bath: int,
    t1: float,
    t2: float,
    h: float | None = None,
) -> float:
    """dU/dT_i by central finite difference, h = max(1e-4 T_i, 1e-6).

    model_family(t1, t2) must rebuild the model at the given temperatures;
    each energy evaluation re-derives the rates and re-solves the steady
    state, so one code path covers every model.
    """
    if which_bath not in (1, 2):
        raise InvalidParams(f"which_bath must be 1 or 2, got {which_bath}")
    t = t1 if which_bath == 1 else t2
    if t <= 0.0:
        raise InvalidParams("the differentiated temperature must be positive")
    if h is None:
        h = max(1e-4 * t, 1e-6)
    if not (0.0 < h < t):
        raise InvalidParams(f"step {h} must sit inside (0, T={t})")

    def energy(ti: float) -> float:
        pair = (ti, t2) if which_bath == 1 else (t1, ti)
        model = model_family(*pair)
        return internal_energy(solve_steady_state(model), model.hamiltonian)

    return (energy(t + h) - energy(t - h)) / (2.0 * h)


def gibbs_state(hamiltonian: np.ndarray, temperature: float) -> DensityMatrix:
    """Boltzmann state exp(-H/T)/Z.

    Eigenvalues are shifted by the ground energy before exponentiation for
    overflow safety. T = 0 returns the uniform mixture over the ground
    eigenspace (levels within 1e-10 of the minimum).
    """
    if temperature < 0.0:
        raise InvalidParams(f"temperature must be nonnegative, got {temperature}")
    w, v = numkernel.hermitian_eigen(hamiltonian)
    if temperature == 0.0:
        ground = (w - w[0]) <= _GIBBS_GAP_TOL
        p = ground.astype(float)
        p /= p.sum()
    else:
        p = np.exp(-(w - w[0]) / temperature)
        p /= p.sum()
    m = (v * p) @ v.conj().T
    return DensityMatrix(0.5 * (m + m.conj().T))


def uhlmann_fidelity(rho1: DensityMatrix, rho2: DensityMatrix) -> float:
    """Uhlmann fidelity Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)).

    Equals 1 iff the states coincide; symmetric in its arguments.
    """
    if rho1.dim != rho2.dim:
        raise DimensionMismatch(f"state dimensions differ: {rho1.dim} vs {rho2.dim}")
    try:
        root = numkernel.hermitian_matrix_function(rho1.matrix, np.sqrt)
        inner = root @ rho2.matrix @ root
        fid = np.trace(numkernel.hermitian_matrix_function(inner, np.sqrt))
    except NegativeEigenvalue as exc:
        raise InvalidState(str(exc)) from exc
    return float(fid.real)


def eigenbasis_populations(
    rho: DensityMatrix, hamiltonian: np.ndarray
) -> list[tuple[float, float]]:
    """Populations <v_k|rho|v_k> in the Hamiltonian eigenbasis.

    Returned as (eigenvalue, population) pairs ordered by ascending
    eigenvalue; the populations sum to 1.
    """
    h = np.asarray(hamiltonian, dtype=complex)
    if h.shape != rho.matrix.shape:
        raise DimensionMismatch(
            f"Hamiltonian shape {h.shape} does not match state dimension {rho.dim}"
        )
    w, v = numkernel.hermitian_eigen(h)
    pops = np.real(np.sum(v.conj() * (rho.matrix @ v), axis=0))
    return [(float(e), float(p)) for e, p in zip(w, pops)]


def trace_distance(rho1: DensityMatrix, rho2: DensityMatrix) -> float:
    """Trace distance (1/2) ||rho1 - rho2||_1."""
    if rho1.dim != rho2.dim:
        raise DimensionMismatch(f"state dimensions differ: {rho1.dim} vs {rho2.dim}")
    delta = rho1.matrix - rho2.matrix
    w = np.linalg.eigvalsh(0.5 * (delta + delta.conj().T))
    return float(0.5 * np.sum(np.abs(w)))
