"""Lindblad models and their N^2-dimensional superoperator forms.

Vectorization is row-major throughout: the density-matrix entry rho[m, n]
sits at vector index m*N + n, so the map A rho B becomes kron(A, B.T) on
vectors. Mixing conventions is the classic bug in this kind of code, so
every builder in this module states it once and the tests pin it down.

Rates are plain nonnegative numbers in energy units (hbar = 1); temperature
never enters this module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import numkernel
from .errors import DimensionMismatch, InvalidParams, InvalidState

_TRACE_TOL = 1e-10
_HERM_TOL = 1e-10
_H_HERM_RTOL = 1e-12
_EIG_FLOOR = -1e-8


@dataclass(frozen=True, eq=False)
class DissipationChannel:
    """One (rate, jump operator) term of the dissipator sum."""

    rate: float
    jump_operator: np.ndarray

    def __post_init__(self):
        op = np.asarray(self.jump_operator, dtype=complex)
        if op.ndim != 2 or op.shape[0] != op.shape[1]:
            raise DimensionMismatch(f"jump operator must be square, got shape {op.shape}")
        if not (self.rate >= 0.0):
            raise InvalidParams(f"channel rate must be nonnegative, got {self.rate}")
        object.__setattr__(self, "jump_operator", op)

    @property
    def dim(self) -> int:
        return self.jump_operator.shape[0]


@dataclass(frozen=True, eq=False)
class LindbladModel:
    """Hermitian Hamiltonian plus a list of dissipation channels."""

    hamiltonian: np.ndarray
    channels: tuple[DissipationChannel, ...]

    def __post_init__(self):
        h = np.asarray(self.hamiltonian, dtype=complex)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise DimensionMismatch(f"Hamiltonian must be square, got shape {h.shape}")
        if numkernel.linf_norm(h - h.conj().T) > _H_HERM_RTOL * numkernel.linf_norm(h):
            raise InvalidParams("Hamiltonian is not Hermitian within 1e-12 relative tolerance")
        object.__setattr__(self, "hamiltonian", h)
        object.__setattr__(self, "channels", tuple(self.channels))
        for ch in self.channels:
            if ch.dim != h.shape[0]:
                raise DimensionMismatch(
                    f"channel dimension {ch.dim} does not match model dimension {h.shape[0]}"
                )

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


@dataclass(frozen=True, eq=False)
class Superoperator:
    """Sparse matrix acting on row-major vectorized density matrices.

    ``dim`` is N^2 for a system of dimension N; index (m, n) of the density
    matrix maps to vector index m*N + n.
    """

    dim: int
    matrix: sp.csr_matrix
    system_dim: int


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Trace-one Hermitian positive-semidefinite matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"density matrix must be square, got shape {m.shape}")
        if abs(np.trace(m) - 1.0) > _TRACE_TOL:
            raise InvalidState(f"trace {np.trace(m):.12g} deviates from 1 beyond {_TRACE_TOL}")
        if numkernel.linf_norm(m - m.conj().T) > _HERM_TOL:
            raise InvalidState("density matrix is not Hermitian within 1e-10")
        smallest = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])
        if smallest < _EIG_FLOOR:
            raise InvalidState(f"negative eigenvalue {smallest:.3e} below {_EIG_FLOOR}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Row-major stacking of a matrix into a vector."""
    return np.asarray(rho, dtype=complex).reshape(-1)


def unvectorize(vec: np.ndarray) -> np.ndarray:
    """Inverse of vectorize."""
    v = np.asarray(vec, dtype=complex)
    n = round(v.size**0.5)
    if n * n != v.size:
        raise DimensionMismatch(f"vector length {v.size} is not a perfect square")
    return v.reshape(n, n)


def _active_channels(model: LindbladModel):
    # Zero-rate channels contribute nothing and are skipped by the builders.
    return [ch for ch in model.channels if ch.rate > 0.0]


def build_superoperator(model: LindbladModel) -> Superoperator:
    """Generator L of d vec(rho)/dt = L vec(rho) for the model.

    L = -i (H (x) I - I (x) H^T)
        + sum_k r_k [ Lk (x) conj(Lk)
                      - (Lk^dag Lk) (x) I / 2
                      - I (x) (Lk^dag Lk)^T / 2 ]
    """
    n = model.dim
    n2 = n * n
    h = model.hamiltonian
    if n2 <= numkernel.DENSE_DIM_LIMIT:
        eye = np.eye(n, dtype=complex)
        mat = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
        for ch in _active_channels(model):
            op = ch.jump_operator
            opd_op = op.conj().T @ op
            mat += ch.rate * (
                np.kron(op, op.conj())
                - 0.5 * np.kron(opd_op, eye)
                - 0.5 * np.kron(eye, opd_op.T)
            )
        matrix = sp.csr_matrix(mat)
        matrix.sort_indices()
        return Superoperator(dim=n2, matrix=matrix, system_dim=n)

    eye = sp.identity(n, dtype=complex, format="csr")
    hs = sp.csr_matrix(h)
    terms = [-1j * (sp.kron(hs, eye) - sp.kron(eye, hs.T))]
    for ch in _active_channels(model):
        op = sp.csr_matrix(ch.jump_operator)
        opd_op = (op.conj().T @ op).tocsr()
        terms.append(
            ch.rate
            * (
                sp.kron(op, op.conj())
                - 0.5 * sp.kron(opd_op, eye)
                - 0.5 * sp.kron(eye, opd_op.T)
            )
        )
    return Superoperator(dim=n2, matrix=_assemble(n2, terms), system_dim=n)


def build_effective_hamiltonian(model: LindbladModel) -> Superoperator:
    """Non-Hermitian generator on the doubled (system x ancilla) space whose
    zero mode is the vectorized steady state.

    Built from the complex frequency matrix calH = H - (i/2) sum_k r_k
    Lk^dag Lk acting on the system factor, minus its ancilla image, plus
    i r_k (ancilla Lk) (system Lk) per channel. Ancilla operators are the
    entrywise complex conjugates of their system counterparts and act on the
    second tensor factor. Equals i times build_superoperator(model).
    """
    n = model.dim
    n2 = n * n
    active = _active_channels(model)
    calh = model.hamiltonian.astype(complex, copy=True)
    for ch in active:
        op = ch.jump_operator
        calh = calh - 0.5j * ch.rate * (op.conj().T @ op)

    if n2 <= numkernel.DENSE_DIM_LIMIT:
        eye = np.eye(n, dtype=complex)
        mat = np.kron(calh, eye) - np.kron(eye, calh.conj())
        for ch in active:
            op = ch.jump_operator
            ancilla = np.kron(eye, op.conj())
            system = np.kron(op, eye)
            mat += 1j * ch.rate * (ancilla @ system)
        matrix = sp.csr_matrix(mat)
        matrix.sort_indices()
        return Superoperator(dim=n2, matrix=matrix, system_dim=n)

    eye = sp.identity(n, dtype=complex, format="csr")
    calhs = sp.csr_matrix(calh)
    terms = [sp.kron(calhs, eye) - sp.kron(eye, calhs.conj())]
    for ch in active:
        op = sp.csr_matrix(ch.jump_operator)
        ancilla = sp.kron(eye, op.conj()).tocsr()
        system = sp.kron(op, eye).tocsr()
        terms.append(1j * ch.rate * (ancilla @ system))
    return Superoperator(dim=n2, matrix=_assemble(n2, terms), system_dim=n)


def _assemble(dim: int, terms) -> sp.csr_matrix:
    rows = []
    cols = []
    data = []
    for term in terms:
        coo = sp.coo_matrix(term)
        rows.append(coo.row)
        cols.append(coo.col)
        data.append(coo.data)
    return numkernel.csr_from_triplets(
        dim, np.concatenate(rows), np.concatenate(cols), np.concatenate(data)
    )


def apply_rhs(model: LindbladModel, rho: np.ndarray) -> np.ndarray:
    """Matrix-form right-hand side d rho/dt for an arbitrary square rho.

    Never materializes the N^2 x N^2 generator, so it stays cheap at large
    Fock cutoffs. rho need not be a density matrix.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (model.dim, model.dim):
        raise DimensionMismatch(
            f"state shape {rho.shape} does not match model dimension {model.dim}"
        )
    h = model.hamiltonian
    out = -1j * (h @ rho - rho @ h)
    for ch in _active_channels(model):
        op = ch.jump_operator
        opd = op.conj().T
        opd_op = opd @ op
        out += ch.rate * (op @ rho @ opd - 0.5 * (opd_op @ rho + rho @ opd_op))
    return out
