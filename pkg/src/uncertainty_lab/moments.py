"""Second moments of observables: dispersions, mixed correlators and their ratios.

For observables ``A_i`` and a state ``psi`` the centered operators are
``dA_i = A_i - (psi, A_i psi)``. The dispersion is ``(psi, dA_i^2 psi)`` and
the mixed correlator is ``<i,j> = (psi, dA_i dA_j psi)``, complex in general.
A density matrix ``W`` replaces expectations by traces ``Tr(W ...)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, NumericalError, PreconditionError
from .hilbert import (
    DEFAULT_TOL,
    as_density,
    as_observable,
    gram_matrix,
    require_normalized,
    scaled_tol,
)

DEGENERACY_THRESHOLD = 1e-8


@dataclass(frozen=True)
class CenteredOperator:
    base: np.ndarray
    mean: float
    centered: np.ndarray


@dataclass(frozen=True)
class RJDecomposition:
    """Real and imaginary parts of a correlator from their Hermitian operators.

    ``r`` is the expectation of the symmetrized product ``{dA, dB}/2`` and
    ``j`` that of ``-i [dA, dB] / 2``.
    """

    r: float
    j: float

    @property
    def value(self) -> complex:
        return complex(self.r, self.j)


@dataclass(frozen=True)
class MomentSet:
    """Dispersions and correlators of ``n`` observables in one state.

    ``corr[i, j]`` holds ``<i,j>``; its diagonal equals ``sigma2``.
    """

    sigma2: np.ndarray
    corr: np.ndarray
    means: np.ndarray
    source: str

    @property
    def n(self) -> int:
        return int(self.sigma2.shape[0])

    @property
    def sigma(self) -> np.ndarray:
        return np.sqrt(self.sigma2)

    def degenerate(self, threshold: float = DEGENERACY_THRESHOLD) -> np.ndarray:
        """Boolean mask of observables whose dispersion counts as zero."""
        return self.sigma < threshold * (1.0 + np.abs(self.means))

    def allclose(self, other: "MomentSet", tol: float = 1e-12) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.corr))), float(np.max(np.abs(other.corr))))
        return (
            self.n == other.n
            and bool(np.max(np.abs(self.corr - other.corr)) <= tol * scale)
            and bool(np.max(np.abs(self.sigma2 - other.sigma2)) <= tol * scale)
        )


@dataclass(frozen=True)
class NormalizedCorrelations:
    """Moduli ``rho`` and phases ``phi`` of ``<i,j> / (sigma_i sigma_j)``.

    ``degenerate[i, j]`` marks pairs where ``sigma_i sigma_j`` vanishes; their
    ``rho`` and ``phi`` are recorded as zero. For three observables
    ``sigma_sum`` is ``phi_12 + phi_23 + phi_31`` and ``sigma_sum_wrapped`` the
    same angle reduced to ``(-pi, pi]``; both are ``None`` otherwise.
    """

    rho: np.ndarray
    phi: np.ndarray
    degenerate: np.ndarray
    sigma_sum: float | None
    sigma_sum_wrapped: float | None

    @property
    def n(self) -> int:
        return int(self.rho.shape[0])

    @property
    def cos_sigma(self) -> float | None:
        return None if self.sigma_sum is None else math.cos(self.sigma_sum)

    @property
    def any_degenerate(self) -> bool:
        return bool(self.degenerate.any())


def _check_dims(As: Sequence[np.ndarray], dim: int) -> list[np.ndarray]:
    out = []
    for k, A in enumerate(As):
        A = as_observable(A)
        if A.shape[0] != dim:
            raise DimensionError(f"observable {k} has dimension {A.shape[0]}, state has {dim}")
        out.append(A)
    if not out:
        raise PreconditionError("need at least one observable")
    return out


def expectation(A, psi) -> float:
    psi = require_normalized(psi)
    A = _check_dims([A], psi.shape[0])[0]
    return float(np.vdot(psi, A @ psi).real)


def center_observable(A, psi) -> CenteredOperator:
    psi = require_normalized(psi)
    A = _check_dims([A], psi.shape[0])[0]
    mean = float(np.vdot(psi, A @ psi).real)
    return CenteredOperator(base=A, mean=mean, centered=A - mean * np.eye(A.shape[0]))


def dispersion(A, psi, tol: float = DEFAULT_TOL) -> float:
    """``(psi, dA^2 psi)``, clamped at zero when rounding makes it slightly negative."""
    dA = center_observable(A, psi).centered
    value = float(np.vdot(psi, dA @ (dA @ psi)).real)
    if value < 0.0:
        if value < -scaled_tol(tol, float(np.max(np.abs(dA))) ** 2):
            raise NumericalError(f"negative dispersion {value:.3e}")
        value = 0.0
    return value


def correlator(Ai, Aj, psi) -> complex:
    """Mixed second moment ``(psi, dA_i dA_j psi)``."""
    dAi = center_observable(Ai, psi).centered
    dAj = center_observable(Aj, psi).centered
    return complex(np.vdot(psi, dAi @ (dAj @ psi)))


def rj_split(Ai, Aj, psi, tol: float = DEFAULT_TOL) -> RJDecomposition:
    """Split ``<i,j>`` into the expectations of its two Hermitian parts.

    ``r`` and ``j`` come from the anticommutator and commutator operators and
    are cross-checked against the real and imaginary parts of :func:`correlator`.
    """
    dAi = center_observable(Ai, psi).centered
    dAj = center_observable(Aj, psi).centered
    R = 0.5 * (dAi @ dAj + dAj @ dAi)
    J = -0.5j * (dAi @ dAj - dAj @ dAi)
    r = float(np.vdot(psi, R @ psi).real)
    j = float(np.vdot(psi, J @ psi).real)
    c = correlator(Ai, Aj, psi)
    limit = scaled_tol(tol, abs(c), float(np.max(np.abs(dAi)) * np.max(np.abs(dAj))))
    if abs(c.real - r) > limit or abs(c.imag - j) > limit:
        raise NumericalError(f"R/J split ({r}, {j}) disagrees with correlator {c}")
    return RJDecomposition(r=r, j=j)


def _moment_set(corr: np.ndarray, means: np.ndarray, source: str) -> MomentSet:
    corr = 0.5 * (corr + corr.conj().T)
    sigma2 = np.clip(corr.diagonal().real, 0.0, None)
    np.fill_diagonal(corr, sigma2)
    return MomentSet(sigma2=sigma2, corr=corr, means=means, source=source)


def moments_from_state(As, psi, scales=None, tol: float = DEFAULT_TOL) -> MomentSet:
    """Moments of ``As`` in the pure state ``psi``.

    The correlators are the scalar products of the vectors ``dA_i psi``. When
    ``scales`` (one positive constant per observable, carrying its units) are
    given, the dimensionless vectors ``dA_i psi / d_i`` are formed instead and
    the scale factors are multiplied back out; the result must agree with the
    unscaled computation and :class:`NumericalError` is raised if it does not.
    """
    psi = require_normalized(psi, tol)
    As = _check_dims(As, psi.shape[0])
    means = np.array([np.vdot(psi, A @ psi).real for A in As])
    dpsi = np.array([A @ psi - m * psi for A, m in zip(As, means)])
    corr = gram_matrix(dpsi)

    if scales is not None:
        d = np.asarray(scales, dtype=float)
        if d.shape != (len(As),):
            raise DimensionError(f"need {len(As)} scale factors, got shape {d.shape}")
        if not np.all(np.isfinite(d)) or np.any(d <= 0):
            raise PreconditionError("scale factors must be finite and strictly positive")
        alpha = dpsi / d[:, None]
        rescaled = gram_matrix(alpha) * np.outer(d, d)
        limit = scaled_tol(tol, float(np.max(np.abs(corr))))
        if np.max(np.abs(rescaled - corr)) > limit:
            raise NumericalError("scale factors failed to cancel")
        corr = rescaled

    return _moment_set(corr, means, "pure-state")


def moments_from_density(As, W, tol: float = DEFAULT_TOL) -> MomentSet:
    """Moments of ``As`` in the mixed state ``W`` via ``Tr(W dA_i dA_j)``."""
    W = as_density(W, tol)
    dim = W.shape[0]
    As = _check_dims(As, dim)
    eye = np.eye(dim)
    means = np.array([np.trace(W @ A).real for A in As])
    dA = np.array([A - m * eye for A, m in zip(As, means)])
    # Tr(W X Y) = sum_{abc} W_ab X_bc Y_ca
    corr = np.einsum("ab,ibc,jca->ij", W, dA, dA)
    return _moment_set(corr, means, "density-matrix")


def pure_density(psi) -> np.ndarray:
    psi = require_normalized(psi)
    return np.outer(psi, psi.conj())


def normalized_correlations(m: MomentSet, threshold: float = DEGENERACY_THRESHOLD) -> NormalizedCorrelations:
    n = m.n
    sigma = m.sigma
    deg_obs = m.degenerate(threshold)
    degenerate = deg_obs[:, None] | deg_obs[None, :]
    np.fill_diagonal(degenerate, False)

    rho = np.zeros((n, n))
    phi = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i == j or degenerate[i, j]:
                continue
            c = m.corr[i, j]
            rho[i, j] = abs(c) / (sigma[i] * sigma[j])
            phi[i, j] = _arg(c)

    sigma_sum = wrapped = None
    if n == 3:
        sigma_sum = float(phi[0, 1] + phi[1, 2] + phi[2, 0])
        wrapped = wrap_angle(sigma_sum)
    return NormalizedCorrelations(
        rho=rho, phi=phi, degenerate=degenerate, sigma_sum=sigma_sum, sigma_sum_wrapped=wrapped
    )


def _arg(c: complex) -> float:
    """Phase in ``(-pi, pi]``; ``atan2`` returns ``-pi`` for ``-x - 0j``."""
    a = math.atan2(c.imag, c.real)
    return math.pi if a == -math.pi else a


def wrap_angle(x: float) -> float:
    """Reduce an angle to ``(-pi, pi]``."""
    y = math.remainder(x, 2.0 * math.pi)
    return math.pi if y == -math.pi else y
