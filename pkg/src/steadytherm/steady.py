"""Steady-state solvers.

The production path solves the zero mode of the superoperator directly: one
redundant row is traded for the trace constraint and the square system goes
through sparse LU. An independent fixed-step RK4 propagator serves as the
cross-check oracle.
"""

from __future__ import annotations

import math

import numpy as np

from . import numkernel
from .errors import InvalidParams, InvalidState, NonUniqueSteadyState, NotConverged, SingularMatrix
from .liouville import (
    DensityMatrix,
    LindbladModel,
    apply_rhs,
    build_superoperator,
    vectorize,
    unvectorize,
)

_RESIDUAL_RTOL = 1e-9
_CONVERGED_TOL = 1e-10
_STALLED_TOL = 1e-8
_EIG_FLOOR = -1e-8


def solve_steady_state(model: LindbladModel) -> DensityMatrix:
    """Unique steady state of the model from a trace-constrained direct solve.

    The diagonal rows of the generator sum to zero (trace preservation), so
    row 0, the (0,0) diagonal row, is linearly dependent on the others and is
    replaced by the trace functional; the system is then solved against e0 by
    LU. The residual of the result is checked against the original generator,
    which catches a replaced row that was not actually redundant, i.e. a
    non-unique steady state.

    Raises NonUniqueSteadyState on a singular factorization or a failed
    residual check, and InvalidState if the solution has an eigenvalue below
    -1e-8. Eigenvalues in (-1e-8, 0) are round-off and get clipped.
    """
    superop = build_superoperator(model)
    lmat = superop.matrix
    n2 = superop.dim
    n = superop.system_dim

    coo = lmat.tocoo()
    keep = coo.row != 0
    diag_indices = np.arange(n, dtype=np.int64) * (n + 1)
    rows = np.concatenate([coo.row[keep].astype(np.int64), np.zeros(n, dtype=np.int64)])
    cols = np.concatenate([coo.col[keep].astype(np.int64), diag_indices])
    data = np.concatenate([coo.data[keep], np.ones(n, dtype=complex)])
    modified = numkernel.csr_from_triplets(n2, rows, cols, data)

    rhs = np.zeros(n2, dtype=complex)
    rhs[0] = 1.0
    try:
        vec = numkernel.sparse_solve(modified, rhs)
    except SingularMatrix as exc:
        raise NonUniqueSteadyState(f"steady-state system is singular: {exc}") from exc

    rho = unvectorize(vec)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real

    w, v = np.linalg.eigh(rho)
    if w[0] < _EIG_FLOOR:
        raise InvalidState(f"steady state has eigenvalue {w[0]:.3e} below {_EIG_FLOOR}")
    if w[0] < 0.0:
        w = np.clip(w, 0.0, None)
        rho = (v * w) @ v.conj().T
        rho = 0.5 * (rho + rho.conj().T)
        rho = rho / np.trace(rho).real

    residual = numkernel.linf_norm(lmat @ vectorize(rho))
    if residual > _RESIDUAL_RTOL * numkernel.linf_norm(lmat):
        raise NonUniqueSteadyState(
            f"solution residual {residual:.3e} exceeds tolerance; the replaced "
            "row was not redundant, so the steady state is not unique"
        )
    return DensityMatrix(rho)


def default_time_step(model: LindbladModel) -> float:
    """Conservative RK4 step: 0.01 over the fastest scale in the generator."""
    rate_scale = sum(
        ch.rate * numkernel.linf_norm(ch.jump_operator.conj().T @ ch.jump_operator)
        for ch in model.channels
    )
    scale = max(numkernel.linf_norm(model.hamiltonian), rate_scale)
    return 0.01 / scale if scale > 0.0 else 0.01


def default_t_max(model: LindbladModel) -> float:
    """Time cap: 50 over the smallest nonzero per-channel rate scale."""
    rates = [
        ch.rate * numkernel.linf_norm(ch.jump_operator.conj().T @ ch.jump_operator)
        for ch in model.channels
        if ch.rate > 0.0
    ]
    positive = [r for r in rates if r > 0.0]
    if not positive:
        return 50.0
    return 50.0 / min(positive)


def _rk4_step(model: LindbladModel, rho: np.ndarray, dt: float, k1=None) -> np.ndarray:
    if k1 is None:
        k1 = apply_rhs(model, rho)
    k2 = apply_rhs(model, rho + 0.5 * dt * k1)
    k3 = apply_rhs(model, rho + 0.5 * dt * k2)
    k4 = apply_rhs(model, rho + dt * k3)
    return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def propagate(model: LindbladModel, rho0: np.ndarray, t_final: float, dt: float) -> np.ndarray:
    """Fixed-step RK4 integration up to exactly t_final.

    The step is shrunk so an integer number of steps lands on t_final. The
    raw final matrix is returned without Hermitization or renormalization.
    """
    if dt <= 0.0 or t_final < 0.0:
        raise InvalidParams("dt must be positive and t_final nonnegative")
    rho = np.asarray(rho0, dtype=complex).copy()
    if t_final == 0.0:
        return rho
    steps = max(1, math.ceil(t_final / dt - 1e-12))
    step = t_final / steps
    for _ in range(steps):
        rho = _rk4_step(model, rho, step)
    return rho


def propagate_to_steady(
    model: LindbladModel,
    rho0: DensityMatrix,
    t_max: float | None = None,
    dt: float | None = None,
) -> DensityMatrix:
    """Propagate rho0 until the right-hand side stalls below 1e-10.

    Stops at t_max otherwise; if the derivative is still at or above 1e-8
    there, raises NotConverged with the partial state attached, which signals
    slow mixing or a non-unique steady state. The returned state is
    Hermitized and renormalized.
    """
    if dt is None:
        dt = default_time_step(model)
    if t_max is None:
        t_max = default_t_max(model)
    if dt <= 0.0 or t_max <= 0.0:
        raise InvalidParams("dt and t_max must be positive")

    rho = rho0.matrix.astype(complex, copy=True)
    t = 0.0
    converged = False
    while t < t_max * (1.0 - 1e-12):
        k1 = apply_rhs(model, rho)
        if numkernel.linf_norm(k1) < _CONVERGED_TOL:
            converged = True
            break
        step = min(dt, t_max - t)
        rho = _rk4_step(model, rho, step, k1=k1)
        t += step

    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    if not converged:
        final_norm = numkernel.linf_norm(apply_rhs(model, rho))
        if final_norm >= _STALLED_TOL:
            raise NotConverged(
                f"derivative is still {final_norm:.3e} at t = {t:.6g}", state=rho
            )
    return DensityMatrix(rho)
