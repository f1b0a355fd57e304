"""Dense complex linear algebra helpers for small Hilbert spaces (dim <= 27).

Everything here is a thin, validated wrapper around numpy. Values are plain
``np.ndarray`` objects with ``dtype=complex``; callers should treat them as
immutable.
"""

from __future__ import annotations

import warnings
from typing import Iterable

import numpy as np

# Tolerance for exact algebraic identities (products of a handful of floats).
ATOL_IDENTITY = 1e-12
# Tolerance for accepting a matrix as unitary.
ATOL_UNITARY = 1e-9


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting anything else."""
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    return arr


def as_vector(a, name: str = "vector") -> np.ndarray:
    arr = np.asarray(a, dtype=complex).reshape(-1)
    if arr.size == 0:
        raise ValueError(f"{name} must be non-empty")
    return arr


def matmul(a, b) -> np.ndarray:
    """Matrix product with an explicit dimension check."""
    am = as_matrix(a, "a")
    bm = as_matrix(b, "b")
    if am.shape[1] != bm.shape[0]:
        raise ValueError(f"dimension mismatch: {am.shape} @ {bm.shape}")
    return am @ bm


def kron(a, b) -> np.ndarray:
    """Kronecker product; the left factor acts on the higher player index."""
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def kron_all(factors: Iterable) -> np.ndarray:
    """Kronecker product of a sequence, left factor = highest player."""
    mats = [as_matrix(f) for f in factors]
    if not mats:
        raise ValueError("kron_all needs at least one factor")
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def trace(a) -> complex:
    am = as_matrix(a)
    if am.shape[0] != am.shape[1]:
        raise ValueError(f"trace needs a square matrix, got {am.shape}")
    return complex(np.trace(am))


def outer(u, v) -> np.ndarray:
    """Outer product |u><v|, i.e. entries u_i * conj(v_j)."""
    return np.outer(as_vector(u, "u"), as_vector(v, "v").conj())


def norm(v) -> float:
    return float(np.linalg.norm(as_vector(v)))


def max_abs(a) -> float:
    """Largest entrywise magnitude; the residual measure used throughout."""
    return float(np.max(np.abs(np.asarray(a))))


def unitarity_residual(u) -> float:
    """max |U†U - I|, the deviation of U from unitarity."""
    um = as_matrix(u, "u")
    if um.shape[0] != um.shape[1]:
        return float("inf")
    return max_abs(um.conj().T @ um - np.eye(um.shape[0]))


def is_unitary(u, atol: float = ATOL_UNITARY) -> bool:
    return unitarity_residual(u) < atol


def require_unitary(u, atol: float = ATOL_UNITARY, strict: bool = True,
                    name: str = "operator") -> np.ndarray:
    """Validate unitarity; raise in strict mode, warn in lenient mode."""
    um = as_matrix(u, name)
    residual = unitarity_residual(um)
    if residual >= atol:
        message = f"{name} is not unitary (residual {residual:.3e} >= {atol:.0e})"
        if strict:
            raise ValueError(message)
        warnings.warn(message, stacklevel=2)
    return um


def frozen(a: np.ndarray) -> np.ndarray:
    """Return a read-only copy so values can be shared safely."""
    out = np.array(a, dtype=complex, copy=True)
    out.setflags(write=False)
    return out


def hermitian_residual(a) -> float:
    am = as_matrix(a)
    return max_abs(am - am.conj().T)
