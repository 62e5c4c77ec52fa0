"""Dense complex linear algebra substrate.

Matrices are 2-d complex128 ndarrays, kets are 1-d complex128 ndarrays.
Tensor-factor convention: the leftmost factor is the most significant digit
of a composite index, so |i> (x) |j> maps to index i*d + j and
kron(A, B) acts on the composite space the usual way.

All helpers validate shapes and reject non-finite entries; everything else
is a thin layer over numpy.
"""

from __future__ import annotations

import numpy as np

# Identities built from products of <= 12 small matrices resolve to this
# accuracy in double precision; the long flow products get a looser bound.
DEFAULT_TOL = 1e-10
FLOW_TOL = 1e-9


class DimensionError(ValueError):
    """Shapes of the operands do not conform."""


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got ndim={a.ndim}")
    if a.size and not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def as_vector(v) -> np.ndarray:
    a = np.asarray(v, dtype=np.complex128)
    if a.ndim != 1:
        raise DimensionError(f"expected a vector, got ndim={a.ndim}")
    if a.size and not np.all(np.isfinite(a)):
        raise ValueError("vector entries must be finite")
    return a


def identity(d: int) -> np.ndarray:
    if d < 0:
        raise DimensionError("dimension must be nonnegative")
    return np.eye(d, dtype=np.complex128)


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*mats) -> np.ndarray:
    out = as_matrix(mats[0])
    for m in mats[1:]:
        out = np.kron(out, as_matrix(m))
    return out


def kron_vec(*vecs) -> np.ndarray:
    out = as_vector(vecs[0])
    for v in vecs[1:]:
        out = np.kron(out, as_vector(v))
    return out


def mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def add(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot add {a.shape} and {b.shape}")
    return a + b


def scale(c, a) -> np.ndarray:
    return complex(c) * as_matrix(a)


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def transpose(a) -> np.ndarray:
    return as_matrix(a).T


def conj(a) -> np.ndarray:
    return as_matrix(a).conj()


def trace(a) -> complex:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError("trace needs a square matrix")
    return complex(np.trace(a))


def apply(m, v) -> np.ndarray:
    m, v = as_matrix(m), as_vector(v)
    if m.shape[1] != v.shape[0]:
        raise DimensionError(f"cannot apply {m.shape} to vector of length {v.shape[0]}")
    return m @ v


def outer(u, v) -> np.ndarray:
    """|u><v| for kets u, v."""
    return np.outer(as_vector(u), as_vector(v).conj())


def basis_ket(d: int, i: int) -> np.ndarray:
    if not 0 <= i < d:
        raise DimensionError(f"basis index {i} out of range for dimension {d}")
    e = np.zeros(d, dtype=np.complex128)
    e[i] = 1.0
    return e


def product_ket(d: int, *indices: int) -> np.ndarray:
    """|i j k ...> in the d-adic composite-index convention."""
    return kron_vec(*(basis_ket(d, i) for i in indices))


def norm(v) -> float:
    return float(np.linalg.norm(as_vector(v)))


def normalize(v) -> np.ndarray:
    v = as_vector(v)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    return v / n


def inner(u, v) -> complex:
    """<u|v>."""
    u, v = as_vector(u), as_vector(v)
    if u.shape != v.shape:
        raise DimensionError("inner product needs equal lengths")
    return complex(np.vdot(u, v))


def max_residual(a, b) -> float:
    """Entrywise max modulus difference between two same-shape arrays."""
    a, b = np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise DimensionError(f"cannot compare {a.shape} with {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def approx_eq(a, b, tol: float = DEFAULT_TOL) -> bool:
    return max_residual(a, b) <= tol


def is_unitary(m, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError("unitarity needs a square matrix")
    return approx_eq(m @ m.conj().T, identity(m.shape[0]), tol)
