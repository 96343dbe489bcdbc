"""Evaluation of the pairwise and three-observable uncertainty relations.

Every relation is reported as a margin ``lhs - rhs`` so that "satisfied"
uniformly means ``margin >= -tol``. Tolerances are relative: the stored
``tol`` is already multiplied by the natural scale of the inequality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegenerateError, NumericalError, PreconditionError
from .hilbert import (
    DEFAULT_TOL,
    PsdVerdict,
    as_vector_set,
    gram_matrix,
    linear_dependence_check,
    psd_check,
    scaled_tol,
)
from .moments import MomentSet, NormalizedCorrelations, normalized_correlations

RELATION_NAMES = (
    "heisenberg",
    "schroedinger",
    "cauchy_pair",
    "gci_triple",
    "gur_raw",
    "gur_normalized",
    "gur_weakened",
    "gur_n",
    "orthogonal_special",
)

SQRT3_HALF = math.sqrt(3.0) / 2.0


@dataclass(frozen=True)
class RelationReport:
    relation_name: str
    lhs: float
    rhs: float
    margin: float
    tol: float
    saturation_tol: float
    degenerate: bool = False
    details: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return self.margin >= -self.tol

    @property
    def saturated(self) -> bool:
        return abs(self.margin) <= self.saturation_tol

    def with_saturation_tol(self, saturation_tol: float) -> "RelationReport":
        """Copy of this report with a different saturation tolerance."""
        return replace(self, saturation_tol=saturation_tol)

    def as_dict(self) -> dict:
        return {
            "relation": self.relation_name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "satisfied": self.satisfied,
            "saturated": self.saturated,
            "tol": self.tol,
            "degenerate": self.degenerate,
            **{k: v for k, v in self.details.items() if isinstance(v, (bool, int, float, str))},
        }


def _report(name, lhs, rhs, margin, abs_tol, saturation_tol=None, **kw) -> RelationReport:
    return RelationReport(
        relation_name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        tol=abs_tol,
        saturation_tol=abs_tol if saturation_tol is None else saturation_tol,
        **kw,
    )


@dataclass(frozen=True)
class RhoSigmaPoint:
    """The four variables of the normalized three-observable relation."""

    rho12: float
    rho23: float
    rho31: float
    cos_sigma: float

    def __post_init__(self):
        for name in ("rho12", "rho23", "rho31"):
            _check_unit_interval(name, getattr(self, name))
        if not -1.0 - DEFAULT_TOL <= self.cos_sigma <= 1.0 + DEFAULT_TOL:
            raise PreconditionError(f"cos_sigma={self.cos_sigma} outside [-1, 1]")

    @property
    def rhos(self) -> tuple[float, float, float]:
        return (self.rho12, self.rho23, self.rho31)


def _check_unit_interval(name: str, value: float, slack: float = DEFAULT_TOL) -> None:
    if not (-slack <= value <= 1.0 + slack):
        raise PreconditionError(f"{name}={value} outside [0, 1]")


def rho_sigma_point(nc: NormalizedCorrelations, triple=(0, 1, 2)) -> RhoSigmaPoint:
    """Extract ``(rho12, rho23, rho31, cos Sigma)`` for a triple of observables.

    Raises :class:`DegenerateError` if any of the three pairs has a vanishing
    dispersion; use :func:`gur_raw` on the moments instead.
    """
    a, b, c = triple
    pairs = ((a, b), (b, c), (c, a))
    if any(nc.degenerate[p] for p in pairs):
        raise DegenerateError("a dispersion vanishes: ratios undefined, evaluate gur_raw instead")
    sigma_sum = sum(nc.phi[p] for p in pairs)
    # Cauchy-bounded ratios may exceed 1 by rounding only.
    rhos = [min(float(nc.rho[p]), 1.0) for p in pairs]
    return RhoSigmaPoint(*rhos, cos_sigma=math.cos(sigma_sum))


def _pair_indices(m: MomentSet, i: int, j: int) -> None:
    if i == j:
        raise PreconditionError("pair relations need two distinct observables")
    for k in (i, j):
        if not 0 <= k < m.n:
            raise IndexError(f"observable index {k} out of range for {m.n} observables")


def heisenberg_pair(m: MomentSet, i: int, j: int, tol: float = DEFAULT_TOL) -> RelationReport:
    """``sigma_i^2 sigma_j^2 >= j^2`` with ``j = Im <i,j>``."""
    _pair_indices(m, i, j)
    lhs = m.sigma2[i] * m.sigma2[j]
    rhs = m.corr[i, j].imag ** 2
    return _report("heisenberg", lhs, rhs, lhs - rhs, scaled_tol(tol, lhs), details={"pair": (i, j)})


def schroedinger_pair(m: MomentSet, i: int, j: int, tol: float = DEFAULT_TOL) -> RelationReport:
    """``sigma_i^2 sigma_j^2 >= r^2 + j^2 = |<i,j>|^2``.

    ``details`` records the commutator-only bound and whether this one is at
    least as restrictive.
    """
    _pair_indices(m, i, j)
    c = m.corr[i, j]
    lhs = m.sigma2[i] * m.sigma2[j]
    rhs = c.real ** 2 + c.imag ** 2
    heis_rhs = c.imag ** 2
    return _report(
        "schroedinger",
        lhs,
        rhs,
        lhs - rhs,
        scaled_tol(tol, lhs),
        details={
            "pair": (i, j),
            "heisenberg_rhs": float(heis_rhs),
            "r_squared": float(c.real ** 2),
            "at_least_as_restrictive": bool(rhs >= heis_rhs),
        },
    )


def cauchy_pair(vs, i: int, j: int, tol: float = DEFAULT_TOL) -> RelationReport:
    """``|a_i|^2 |a_j|^2 >= |(a_i, a_j)|^2`` for two members of a vector set."""
    V = as_vector_set(vs)
    n = V.shape[0]
    if i == j:
        raise PreconditionError("cauchy_pair needs two distinct vectors")
    for k in (i, j):
        if not 0 <= k < n:
            raise IndexError(f"vector index {k} out of range for {n} vectors")
    ni = float(np.vdot(V[i], V[i]).real)
    nj = float(np.vdot(V[j], V[j]).real)
    lhs = ni * nj
    rhs = abs(np.vdot(V[i], V[j])) ** 2
    return _report("cauchy_pair", lhs, rhs, lhs - rhs, scaled_tol(tol, lhs), details={"pair": (i, j)})


def _triple_margin(d1, d2, d3, c12, c23, c31) -> float:
    """Expanded 3x3 minor of a Hermitian matrix from its diagonal and cyclic off-diagonals."""
    return (
        d1 * d2 * d3
        + 2.0 * (c12 * c23 * c31).real
        - abs(c12) ** 2 * d3
        - abs(c23) ** 2 * d1
        - abs(c31) ** 2 * d2
    )


def gci_triple(vs, tol: float = DEFAULT_TOL) -> RelationReport:
    """Third-order minor of the Gram matrix of three vectors.

    The expanded form is cross-checked against the LU determinant of the Gram
    matrix. ``details['linearly_dependent']`` records the equality condition.
    """
    V = as_vector_set(vs)
    if V.shape[0] != 3:
        raise PreconditionError(f"gci_triple needs exactly 3 vectors, got {V.shape[0]}")
    G = gram_matrix(V)
    d = G.diagonal().real
    margin = _triple_margin(d[0], d[1], d[2], G[0, 1], G[1, 2], G[2, 0])
    det = float(np.linalg.det(G).real)
    lhs = float(d[0] * d[1] * d[2])
    abs_tol = scaled_tol(tol, lhs)
    if abs(margin - det) > abs_tol:
        raise NumericalError(f"expanded minor {margin} disagrees with determinant {det}")
    return _report(
        "gci_triple",
        lhs,
        lhs - margin,
        margin,
        abs_tol,
        details={"determinant": det, "linearly_dependent": linear_dependence_check(V, tol)},
    )


def gur_raw(m: MomentSet, tol: float = DEFAULT_TOL, triple=(0, 1, 2)) -> RelationReport:
    """Three-observable relation in terms of dispersions and correlators."""
    if m.n < 3:
        raise PreconditionError(f"gur_raw needs three observables, got {m.n}")
    a, b, c = triple
    s = m.sigma2
    lhs = s[a] * s[b] * s[c]
    margin = _triple_margin(s[a], s[b], s[c], m.corr[a, b], m.corr[b, c], m.corr[c, a])
    return _report(
        "gur_raw",
        lhs,
        lhs - margin,
        margin,
        scaled_tol(tol, lhs),
        degenerate=bool(m.degenerate()[list(triple)].any()),
        details={"triple": tuple(triple)},
    )


def normalized_margin(rho12, rho23, rho31, cos_sigma):
    """``1 + 2 rho12 rho23 rho31 cos(Sigma) - rho12^2 - rho23^2 - rho31^2``.

    Works elementwise on arrays.
    """
    return 1.0 + 2.0 * rho12 * rho23 * rho31 * cos_sigma - rho12 ** 2 - rho23 ** 2 - rho31 ** 2


def gur_normalized(p, tol: float = DEFAULT_TOL) -> RelationReport:
    """Normalized three-observable relation at a point of ``(rho, cos Sigma)`` space.

    ``p`` may be a :class:`RhoSigmaPoint`, a :class:`NormalizedCorrelations`
    or a :class:`MomentSet`; the latter two raise :class:`DegenerateError`
    when a dispersion vanishes.
    """
    if isinstance(p, MomentSet):
        p = normalized_correlations(p)
    if isinstance(p, NormalizedCorrelations):
        p = rho_sigma_point(p)
    margin = normalized_margin(p.rho12, p.rho23, p.rho31, p.cos_sigma)
    return _report(
        "gur_normalized",
        1.0 + 2.0 * p.rho12 * p.rho23 * p.rho31 * p.cos_sigma,
        p.rho12 ** 2 + p.rho23 ** 2 + p.rho31 ** 2,
        margin,
        tol,
        details={"point": p},
    )


def gur_weakened(rho12: float, rho23: float, rho31: float, tol: float = DEFAULT_TOL) -> RelationReport:
    """The normalized relation with ``cos Sigma`` replaced by its upper bound 1."""
    for name, v in (("rho12", rho12), ("rho23", rho23), ("rho31", rho31)):
        _check_unit_interval(name, v)
    margin = normalized_margin(rho12, rho23, rho31, 1.0)
    return _report(
        "gur_weakened",
        1.0 + 2.0 * rho12 * rho23 * rho31,
        rho12 ** 2 + rho23 ** 2 + rho31 ** 2,
        margin,
        tol,
    )


def forbidden_region_check(rho12: float, rho23: float, rho31: float) -> bool:
    """Membership in the explicit box where the weakened relation fails.

    The box is ``sqrt(3)/2 < rho12, rho31 <= 1`` and ``0 <= rho23 < 1/2``
    together with its two images under exchanging ``rho23`` with ``rho12`` or
    with ``rho31``. Boundaries are open or closed exactly as written.
    """

    def box(hi1, hi2, lo):
        return SQRT3_HALF < hi1 <= 1.0 and SQRT3_HALF < hi2 <= 1.0 and 0.0 <= lo < 0.5

    return box(rho12, rho31, rho23) or box(rho23, rho31, rho12) or box(rho12, rho23, rho31)


def orthogonal_special(rho12: float, rho31: float, tol: float = DEFAULT_TOL) -> RelationReport:
    """``rho12^2 + rho31^2 <= 1``: the normalized relation when ``rho23 = 0``."""
    _check_unit_interval("rho12", rho12)
    _check_unit_interval("rho31", rho31)
    rhs = rho12 ** 2 + rho31 ** 2
    return _report("orthogonal_special", 1.0, rhs, 1.0 - rhs, tol)


def moment_matrix(m: MomentSet) -> np.ndarray:
    """Hermitian ``n x n`` matrix with ``sigma_i^2`` on the diagonal and ``<i,j>`` off it."""
    M = m.corr.copy()
    np.fill_diagonal(M, m.sigma2)
    return M


def gur_n(m: MomentSet, tol: float = DEFAULT_TOL) -> tuple[RelationReport, PsdVerdict]:
    """Positivity of the full moment matrix for any number of observables.

    The report's margin is the full determinant; the verdict checks every
    principal minor. For two observables the determinant is the
    Schroedinger margin and for three it is the :func:`gur_raw` margin.
    """
    if m.n < 2:
        raise PreconditionError(f"gur_n needs at least two observables, got {m.n}")
    M = moment_matrix(m)
    verdict = psd_check(M, tol)
    det = float(np.linalg.det(M).real)
    lhs = float(np.prod(m.sigma2))
    report = _report(
        "gur_n",
        det,
        0.0,
        det,
        scaled_tol(tol, lhs),
        degenerate=bool(m.degenerate().any()),
        details={"n": m.n, "is_psd": verdict.is_psd, "min_eigenvalue": verdict.min_eigenvalue},
    )
    return report, verdict
