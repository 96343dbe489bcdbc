"""Dense complex linear algebra on small Hilbert spaces.

State vectors, vector families and operators are plain numpy arrays:

* a state vector is a 1-D complex array of length ``dim``;
* a vector set is a 2-D array of shape ``(n, dim)``, one vector per row;
* observables, density matrices and Gram matrices are square 2-D arrays.

Vectors are never normalized behind the caller's back. Functions that need a
unit vector say so and raise :class:`PreconditionError` otherwise.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, NumericalError, PreconditionError

DEFAULT_TOL = 1e-9

# Exhaustive principal-minor enumeration is 2**n - 1 determinants.
MAX_MINOR_ENUMERATION = 8


def scaled_tol(tol: float, *magnitudes: float) -> float:
    """Return ``tol * max(1, |m| for m in magnitudes)``."""
    scale = max([1.0] + [abs(float(m)) for m in magnitudes])
    return tol * scale


def _check_finite(arr: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(arr)):
        raise PreconditionError(f"{what} contains NaN or Inf")
    return arr


def as_vector(v) -> np.ndarray:
    """Coerce ``v`` to a finite 1-D complex array."""
    arr = np.asarray(v, dtype=complex)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"expected a non-empty 1-D vector, got shape {arr.shape}")
    return _check_finite(arr, "vector")


def as_vector_set(vs) -> np.ndarray:
    """Stack a sequence of equal-length vectors into an ``(n, dim)`` array."""
    if isinstance(vs, np.ndarray):
        arr = np.asarray(vs, dtype=complex)
    else:
        rows = [as_vector(v) for v in vs]
        if not rows:
            raise DimensionError("vector set is empty")
        dims = {r.shape[0] for r in rows}
        if len(dims) != 1:
            raise DimensionError(f"vector set mixes dimensions {sorted(dims)}")
        arr = np.vstack(rows)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"expected an (n, dim) vector set, got shape {arr.shape}")
    return _check_finite(arr, "vector set")


def as_square(M, what: str = "matrix") -> np.ndarray:
    arr = np.asarray(M, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionError(f"{what} must be square, got shape {arr.shape}")
    return _check_finite(arr, what)


def hermiticity_residual(M: np.ndarray) -> float:
    """Largest entry of ``|M - M^H|``."""
    M = np.asarray(M)
    return float(np.max(np.abs(M - M.conj().T)))


def is_hermitian(M, tol: float = DEFAULT_TOL) -> bool:
    M = as_square(M)
    return hermiticity_residual(M) <= scaled_tol(tol, np.max(np.abs(M)))


def as_observable(A, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Validate ``A`` as a Hermitian matrix and return it as a complex array."""
    A = as_square(A, "observable")
    if not is_hermitian(A, tol):
        raise PreconditionError(
            f"observable is not Hermitian (residual {hermiticity_residual(A):.3e})"
        )
    return A


def as_density(W, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Validate ``W`` as a density matrix: Hermitian, unit trace, PSD."""
    W = as_square(W, "density matrix")
    if not is_hermitian(W, tol):
        raise PreconditionError(
            f"density matrix is not Hermitian (residual {hermiticity_residual(W):.3e})"
        )
    tr = np.trace(W)
    if abs(tr - 1.0) > tol:
        raise PreconditionError(f"density matrix trace is {tr.real:.12g}, expected 1")
    lam_min = float(np.linalg.eigvalsh(W)[0])
    if lam_min < -tol:
        raise PreconditionError(
            f"density matrix is not positive semidefinite (min eigenvalue {lam_min:.3e})"
        )
    return W


def norm(v) -> float:
    return float(np.linalg.norm(as_vector(v)))


def normalize(v) -> np.ndarray:
    """Return ``v / |v|``; a zero vector cannot be normalized."""
    v = as_vector(v)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise PreconditionError("cannot normalize the zero vector")
    return v / n


def require_normalized(psi, tol: float = DEFAULT_TOL) -> np.ndarray:
    psi = as_vector(psi)
    n = np.linalg.norm(psi)
    if abs(n - 1.0) > tol:
        raise PreconditionError(f"state vector has norm {n:.12g}, expected 1")
    return psi


def inner_product(a, b) -> complex:
    """Scalar product ``(a, b) = sum conj(a_k) b_k``, antilinear in ``a``."""
    a = as_vector(a)
    b = as_vector(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return complex(np.vdot(a, b))


def gram_matrix(vs) -> np.ndarray:
    """Matrix of pairwise scalar products ``M[i, j] = (v_i, v_j)``.

    The result is Hermitian by construction; the diagonal is made exactly real.
    """
    V = as_vector_set(vs)
    M = V.conj() @ V.T
    # Symmetrize away rounding so downstream Hermiticity checks are exact.
    M = 0.5 * (M + M.conj().T)
    return M


def quadratic_form(M, mu, tol: float = DEFAULT_TOL) -> float:
    """Real value of ``mu^H M mu``.

    For a Hermitian ``M`` the imaginary part vanishes; a residual larger than
    the tolerance means ``M`` was not Hermitian and raises :class:`NumericalError`.
    """
    M = as_square(M)
    mu = as_vector(mu)
    if M.shape[0] != mu.shape[0]:
        raise DimensionError(f"matrix is {M.shape[0]}x{M.shape[0]}, coefficients have length {mu.shape[0]}")
    value = complex(np.vdot(mu, M @ mu))
    scale = float(np.max(np.abs(M))) * float(np.vdot(mu, mu).real)
    if abs(value.imag) > scaled_tol(tol, scale):
        raise NumericalError(f"quadratic form has imaginary residual {value.imag:.3e}")
    return value.real


def principal_minor(M, rows: Iterable[int], tol: float = DEFAULT_TOL) -> float:
    """Determinant of the principal submatrix of ``M`` on ``rows``.

    Computed by LU factorization. For Hermitian ``M`` the determinant is real
    and the imaginary part is dropped after checking it is negligible.
    """
    M = as_square(M)
    idx = list(rows)
    n = M.shape[0]
    if not idx:
        raise PreconditionError("principal minor needs at least one row")
    if len(set(idx)) != len(idx):
        raise PreconditionError(f"duplicate row indices {idx}")
    if min(idx) < 0 or max(idx) >= n:
        raise PreconditionError(f"row indices {idx} out of range for {n}x{n} matrix")
    sub = M[np.ix_(idx, idx)]
    det = complex(np.linalg.det(sub))
    scale = float(np.max(np.abs(sub))) ** len(idx)
    if abs(det.imag) > scaled_tol(tol, scale):
        raise NumericalError(f"principal minor has imaginary residual {det.imag:.3e}")
    return det.real


@dataclass(frozen=True)
class PsdVerdict:
    """Outcome of :func:`psd_check`.

    ``worst_minor`` is the most negative principal minor found, with the rows
    that produced it. Both are ``None`` when the matrix is too large for
    exhaustive enumeration.
    """

    is_psd: bool
    min_eigenvalue: float
    worst_minor: float | None
    worst_minor_rows: tuple[int, ...] | None
    tol: float


def psd_check(M, tol: float = DEFAULT_TOL) -> PsdVerdict:
    M = as_square(M)
    if not is_hermitian(M, tol):
        raise NumericalError(
            f"psd_check needs a Hermitian matrix (residual {hermiticity_residual(M):.3e})"
        )
    n = M.shape[0]
    H = 0.5 * (M + M.conj().T)
    lam_min = float(np.linalg.eigvalsh(H)[0])
    abs_tol = scaled_tol(tol, float(np.max(H.diagonal().real)))

    worst, worst_rows = None, None
    if n <= MAX_MINOR_ENUMERATION:
        for k in range(1, n + 1):
            for rows in itertools.combinations(range(n), k):
                minor = float(np.linalg.det(H[np.ix_(rows, rows)]).real)
                if worst is None or minor < worst:
                    worst, worst_rows = minor, rows
    return PsdVerdict(
        is_psd=lam_min >= -abs_tol,
        min_eigenvalue=lam_min,
        worst_minor=worst,
        worst_minor_rows=worst_rows,
        tol=abs_tol,
    )


def linear_dependence_check(vs, tol: float = DEFAULT_TOL) -> bool:
    """True when the vectors are linearly dependent to relative precision ``tol``.

    Uses the singular values of the stacked ``(n, dim)`` matrix; more vectors
    than dimensions are always dependent.
    """
    V = as_vector_set(vs)
    n, dim = V.shape
    if n > dim:
        return True
    s = np.linalg.svd(V, compute_uv=False)
    return bool(s[-1] <= tol * s[0])


def basis_vector(dim: int, k: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[k] = 1.0
    return e


def kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for f in factors:
        out = np.kron(out, f)
    return out
