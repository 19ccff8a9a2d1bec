"""Complex linear-algebra kernel.

Dense matrices are complex128 ndarrays; sparse matrices are scipy CSR,
assembled from triplet lists with duplicate summation. Hermitian
eigenproblems and matrix functions go through LAPACK's Hermitian path;
linear systems go through a direct sparse LU. Systems of dimension <= 64
may take a dense path internally.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import NegativeEigenvalue, NotHermitian, NotSquare, SingularMatrix

# Absolute clip for eigenvalues of nominally PSD matrices. Density matrices
# are trace one, so solver noise sits far below this.
PSD_CLIP = 1e-8

# Below this dimension a dense factorization beats sparse bookkeeping.
DENSE_DIM_LIMIT = 64

_HERM_RTOL = 1e-10
_SOLVE_RTOL = 1e-9


class HermitianEigen(NamedTuple):
    """Ascending real eigenvalues and matching orthonormal column vectors."""

    values: np.ndarray
    vectors: np.ndarray


def linf_norm(m) -> float:
    """Infinity norm: max absolute row sum for matrices, max |entry| for vectors."""
    if sp.issparse(m):
        if m.nnz == 0:
            return 0.0
        return float(np.asarray(np.abs(m).sum(axis=1)).max())
    a = np.asarray(m)
    if a.size == 0:
        return 0.0
    if a.ndim <= 1:
        return float(np.abs(a).max())
    return float(np.abs(a).sum(axis=1).max())


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two dense complex matrices."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def csr_from_triplets(dim: int, rows, cols, data) -> sp.csr_matrix:
    """Assemble a dim x dim CSR matrix from triplets; duplicates are summed."""
    m = sp.coo_matrix((data, (rows, cols)), shape=(dim, dim), dtype=complex).tocsr()
    m.sort_indices()
    return m


def _require_square(a):
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")


def hermitian_eigen(a: np.ndarray) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    The input is Hermitized as (a + a^dag)/2 before factorization; asymmetry
    above 1e-10 * ||a||_inf is rejected as NotHermitian.
    """
    a = np.asarray(a, dtype=complex)
    _require_square(a)
    if linf_norm(a - a.conj().T) > _HERM_RTOL * linf_norm(a):
        raise NotHermitian("matrix asymmetry exceeds 1e-10 relative tolerance")
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    return HermitianEigen(w, v)


def hermitian_matrix_function(
    a: np.ndarray,
    f: Callable[[np.ndarray], np.ndarray],
    *,
    psd_clip: bool = True,
) -> np.ndarray:
    """Apply a scalar function f to a Hermitian matrix through its spectrum.

    With psd_clip (the default, meant for sqrt and log of density matrices),
    eigenvalues in (-PSD_CLIP, 0) are clipped to zero before applying f and
    an eigenvalue below -PSD_CLIP raises NegativeEigenvalue. Pass
    psd_clip=False for functions of general Hermitian matrices, e.g. exp.
    The result is Hermitized.
    """
    w, v = hermitian_eigen(a)
    if psd_clip:
        if w.size and w[0] < -PSD_CLIP:
            raise NegativeEigenvalue(f"eigenvalue {w[0]:.3e} is below -{PSD_CLIP:.0e}")
        w = np.clip(w, 0.0, None)
    fw = np.asarray(f(w), dtype=complex)
    m = (v * fw) @ v.conj().T
    return 0.5 * (m + m.conj().T)


def sparse_solve(m, rhs: np.ndarray) -> np.ndarray:
    """Solve m x = rhs by direct LU factorization with pivoting.

    Raises SingularMatrix when the factorization fails, the solution is not
    finite, or the residual check
    ||m x - rhs||_inf <= 1e-9 (||m||_inf ||x||_inf + ||rhs||_inf) fails.
    """
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square system, got shape {m.shape}")
    b = np.asarray(rhs, dtype=complex).ravel()
    if b.size != m.shape[0]:
        raise NotSquare(f"right-hand side length {b.size} does not match dim {m.shape[0]}")
    try:
        if m.shape[0] <= DENSE_DIM_LIMIT:
            dense = m.toarray() if sp.issparse(m) else np.asarray(m, dtype=complex)
            x = np.linalg.solve(dense, b)
        else:
            x = spla.splu(sp.csc_matrix(m)).solve(b)
    except (np.linalg.LinAlgError, RuntimeError) as exc:
        raise SingularMatrix(str(exc)) from exc
    if not np.all(np.isfinite(x.real)) or not np.all(np.isfinite(x.imag)):
        raise SingularMatrix("factorization produced non-finite entries")
    residual = linf_norm(np.asarray(m @ x).ravel() - b)
    bound = _SOLVE_RTOL * (linf_norm(m) * linf_norm(x) + linf_norm(b))
    if residual > bound:
        raise SingularMatrix(
            f"residual {residual:.3e} exceeds {bound:.3e}; system is numerically singular"
        )
    return x
