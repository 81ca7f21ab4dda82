"""Dense symmetric linear algebra primitives used by the embedding solver.

Everything here targets desk-scale dense matrices (n up to a few hundred),
so the eigen-solves go through LAPACK's dense symmetric drivers rather than
iterative sparse methods.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

ASYMMETRY_TOL = 1e-8


@dataclass(frozen=True)
class SymEigenResult:
    """Smallest eigenpairs of a symmetric matrix.

    eigenvalues are ascending; eigenvectors[:, i] pairs with eigenvalues[i],
    columns are orthonormal, and each column's sign is fixed so its
    largest-magnitude entry (lowest index on ties) is positive.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _fix_column_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive.

    np.argmax returns the first maximizer, which implements the
    ties-by-lowest-index rule and makes the convention deterministic.
    """
    pivot = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivot, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def smallest_eigenpairs(matrix: np.ndarray, count: int) -> SymEigenResult:
    """Algebraically smallest `count` eigenpairs of a symmetric matrix.

    The input must be symmetric within ASYMMETRY_TOL (scaled by the matrix
    magnitude); it is symmetrized as (M + M^T)/2 before the solve so that
    floating-point assembly drift cannot leak into the eigenproblem.
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    if not 1 <= count <= n:
        raise ValueError(f"count must be in 1..{n}, got {count}")
    scale = max(1.0, float(np.linalg.norm(m)))
    asym = float(np.max(np.abs(m - m.T)))
    if asym > ASYMMETRY_TOL * scale:
        raise ValueError(
            f"matrix asymmetric beyond tolerance: max |m_ij - m_ji| = {asym:g}")
    sym = (m + m.T) / 2.0
    eigenvalues, eigenvectors = scipy.linalg.eigh(sym, subset_by_index=(0, count - 1))
    return SymEigenResult(
        eigenvalues=eigenvalues,
        eigenvectors=_fix_column_signs(eigenvectors),
    )


def l21_norm(matrix: np.ndarray) -> float:
    """Sum of Euclidean norms of the rows (the row-sparsity-inducing norm)."""
    m = np.asarray(matrix, dtype=np.float64)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    return float(np.linalg.norm(m, axis=-1).sum())


def trace_form(basis: np.ndarray, operator: np.ndarray) -> float:
    """Tr(F^T L F) for an n-by-k basis F and an n-by-n operator L."""
    f = np.asarray(basis, dtype=np.float64)
    l = np.asarray(operator, dtype=np.float64)
    if f.ndim != 2 or l.ndim != 2 or l.shape[0] != l.shape[1] or l.shape[1] != f.shape[0]:
        raise ValueError(f"dimension mismatch: F is {f.shape}, L is {l.shape}")
    return float(np.einsum("ij,ij->", f, l @ f))
