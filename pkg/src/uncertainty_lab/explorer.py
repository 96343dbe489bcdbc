"""Random instances, grid scans of correlation space, and achievability probes.

Randomness comes from numpy's PCG64 bit generator seeded through
``SeedSequence(entropy=seed, spawn_key=stream)``. Every block of work has its
own ``stream`` tuple, so results depend only on ``(seed, stream)`` and not on
how the work is scheduled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import PreconditionError
from .hilbert import DEFAULT_TOL, basis_vector, kron_all
from .instances import Instance
from .relations import SQRT3_HALF, RhoSigmaPoint, normalized_margin

GENERATOR_ID = "numpy.random.PCG64/SeedSequence(entropy=seed,spawn_key=stream)"

ENSEMBLES = ("haar_state", "random_hermitian", "random_density")
DEFAULT_PROBE_DIMS = (2, 3, 4, 6, 8)


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.PCG64(ss))


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex normal entries, ``E|z|^2 = 1``."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def random_states(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """``count`` Haar-random unit vectors, shape ``(count, dim)``."""
    z = complex_normal(rng, (count, dim))
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def random_hermitians(rng: np.random.Generator, shape: tuple[int, ...], dim: int) -> np.ndarray:
    """Gaussian Hermitian matrices ``(G + G^H) / 2``, shape ``shape + (dim, dim)``."""
    G = complex_normal(rng, tuple(shape) + (dim, dim))
    return 0.5 * (G + np.conj(np.swapaxes(G, -1, -2)))


@dataclass(frozen=True)
class RandomSpec:
    dim: int
    n_observables: int = 3
    seed: int = 0
    ensemble: str = "haar_state"

    def __post_init__(self):
        if self.dim < 1:
            raise PreconditionError(f"dim must be positive, got {self.dim}")
        if self.n_observables < 1:
            raise PreconditionError("n_observables must be positive")
        if self.ensemble not in ENSEMBLES:
            raise PreconditionError(f"unknown ensemble {self.ensemble!r}; choose from {ENSEMBLES}")
        if not 0 <= self.seed < 2 ** 64:
            raise PreconditionError("seed must be an unsigned 64-bit integer")


def _require_ensemble(spec: RandomSpec, ensemble: str) -> None:
    if spec.ensemble != ensemble:
        raise PreconditionError(f"spec ensemble is {spec.ensemble!r}, expected {ensemble!r}")


# Fixed stream tags keep state, observable and density draws independent.
_STATE, _OBS, _DENSITY = 1, 2, 3


def sample_state(spec: RandomSpec) -> np.ndarray:
    _require_ensemble(spec, "haar_state")
    return random_states(make_rng(spec.seed, _STATE), 1, spec.dim)[0]


def sample_observable(spec: RandomSpec, index: int = 0) -> np.ndarray:
    """The ``index``-th Gaussian Hermitian observable for this seed."""
    _require_ensemble(spec, "random_hermitian")
    return random_hermitians(make_rng(spec.seed, _OBS, index), (), spec.dim)


def sample_observables(spec: RandomSpec) -> list[np.ndarray]:
    obs_spec = RandomSpec(spec.dim, spec.n_observables, spec.seed, "random_hermitian")
    return [sample_observable(obs_spec, k) for k in range(spec.n_observables)]


def sample_density(spec: RandomSpec, rank: int | None = None) -> np.ndarray:
    """``G G^H / Tr(G G^H)`` with ``G`` complex normal of shape ``(dim, rank)``.

    ``rank`` defaults to ``dim``; ``rank=1`` yields a pure state.
    """
    _require_ensemble(spec, "random_density")
    k = spec.dim if rank is None else rank
    if not 1 <= k <= spec.dim:
        raise PreconditionError(f"rank must be in [1, {spec.dim}], got {rank}")
    G = complex_normal(make_rng(spec.seed, _DENSITY), (spec.dim, k))
    W = G @ G.conj().T
    W = 0.5 * (W + W.conj().T)
    return W / np.trace(W).real


def sample_instance(spec: RandomSpec) -> Instance:
    """Random observables plus a Haar state or a random density matrix."""
    observables = sample_observables(spec)
    if spec.ensemble == "random_density":
        return Instance(observables=observables, density=sample_density(spec))
    state_spec = RandomSpec(spec.dim, spec.n_observables, spec.seed, "haar_state")
    return Instance(observables=observables, state=sample_state(state_spec))


# ---------------------------------------------------------------------------
# Batched moments. These mirror moments.moments_from_state for many instances
# of one dimension at once and are cross-checked against it in the tests.


def batch_moments(states: np.ndarray, observables: np.ndarray):
    """Means, dispersions and correlators for a batch of pure-state instances.

    ``states`` has shape ``(B, d)`` and ``observables`` ``(B, n, d, d)``.
    Returns ``(means (B, n), sigma2 (B, n), corr (B, n, n))``.
    """
    Apsi = np.einsum("bnij,bj->bni", observables, states)
    means = np.einsum("bi,bni->bn", states.conj(), Apsi).real
    dpsi = Apsi - means[..., None] * states[:, None, :]
    corr = np.einsum("bni,bmi->bnm", dpsi.conj(), dpsi)
    sigma2 = np.clip(np.einsum("bnn->bn", corr).real, 0.0, None)
    return means, sigma2, corr


def batch_triples(means: np.ndarray, sigma2: np.ndarray, corr: np.ndarray, threshold: float = 1e-8):
    """``rho`` triples ``(rho12, rho23, rho31)``, ``cos Sigma`` and a validity mask."""
    sigma = np.sqrt(sigma2[:, :3])
    valid = np.all(sigma >= threshold * (1.0 + np.abs(means[:, :3])), axis=1)
    safe = np.where(sigma > 0, sigma, 1.0)
    c = np.stack([corr[:, 0, 1], corr[:, 1, 2], corr[:, 2, 0]], axis=1)
    denom = np.stack([safe[:, 0] * safe[:, 1], safe[:, 1] * safe[:, 2], safe[:, 2] * safe[:, 0]], axis=1)
    rho = np.minimum(np.abs(c) / denom, 1.0)
    rho[~valid] = 0.0
    cos_sigma = np.cos(np.angle(c).sum(axis=1))
    cos_sigma[~valid] = 1.0
    return rho, cos_sigma, valid


def forbidden_region_mask(rho12, rho23, rho31) -> np.ndarray:
    """Array version of :func:`relations.forbidden_region_check`."""
    r12, r23, r31 = (np.asarray(x, dtype=float) for x in (rho12, rho23, rho31))

    def box(hi1, hi2, lo):
        return (SQRT3_HALF < hi1) & (hi1 <= 1.0) & (SQRT3_HALF < hi2) & (hi2 <= 1.0) & (0.0 <= lo) & (lo < 0.5)

    return box(r12, r31, r23) | box(r23, r31, r12) | box(r12, r23, r31)


def _random_block(rng: np.random.Generator, count: int, dims: Sequence[int], n_observables: int = 3):
    """Draw ``count`` instances with dimensions chosen uniformly from ``dims``.

    Yields ``(positions, states, observables)`` per dimension, ``positions``
    being the indices of those instances within the block.
    """
    choice = rng.integers(0, len(dims), size=count)
    for k, dim in enumerate(dims):
        pos = np.flatnonzero(choice == k)
        states = random_states(rng, pos.size, dim)
        obs = random_hermitians(rng, (pos.size, n_observables), dim)
        yield pos, states, obs


@dataclass
class SurveyResult:
    """Normalized triples realized by random instances.

    ``raw_margins`` holds the three-observable relation in dispersion form and
    ``raw_scales`` the product of dispersions that sets its tolerance.
    """

    seed: int
    dims: tuple[int, ...]
    rho: np.ndarray
    cos_sigma: np.ndarray
    margins: np.ndarray
    raw_margins: np.ndarray
    raw_scales: np.ndarray
    valid: np.ndarray
    instance_dims: np.ndarray

    @property
    def count(self) -> int:
        return int(self.valid.shape[0])

    @property
    def n_forbidden(self) -> int:
        r = self.rho[self.valid]
        return int(forbidden_region_mask(r[:, 0], r[:, 1], r[:, 2]).sum())

    def n_violations(self, tol: float = DEFAULT_TOL) -> int:
        normalized = (self.margins < -tol) & self.valid
        raw = self.raw_margins < -tol * np.maximum(1.0, self.raw_scales)
        return int((normalized | raw).sum())


def random_survey(count: int, dims: Sequence[int] = (2, 3, 4, 5, 6, 7, 8), seed: int = 0, block: int = 4096) -> SurveyResult:
    """Realized ``(rho, cos Sigma)`` for ``count`` random Haar-state instances."""
    dims = tuple(int(d) for d in dims)
    rho = np.zeros((count, 3))
    cos_sigma = np.ones(count)
    raw = np.zeros(count)
    scales = np.zeros(count)
    valid = np.zeros(count, dtype=bool)
    inst_dims = np.zeros(count, dtype=int)
    for b, start in enumerate(range(0, count, block)):
        size = min(block, count - start)
        rng = make_rng(seed, b)
        for pos, states, obs in _random_block(rng, size, dims):
            if pos.size == 0:
                continue
            idx = start + pos
            means, sigma2, corr = batch_moments(states, obs)
            r, cs, ok = batch_triples(means, sigma2, corr)
            rho[idx], cos_sigma[idx], valid[idx] = r, cs, ok
            prod = sigma2[:, 0] * sigma2[:, 1] * sigma2[:, 2]
            raw[idx] = (
                prod
                + 2.0 * (corr[:, 0, 1] * corr[:, 1, 2] * corr[:, 2, 0]).real
                - np.abs(corr[:, 0, 1]) ** 2 * sigma2[:, 2]
                - np.abs(corr[:, 1, 2]) ** 2 * sigma2[:, 0]
                - np.abs(corr[:, 2, 0]) ** 2 * sigma2[:, 1]
            )
            scales[idx] = prod
            inst_dims[idx] = states.shape[1]
    margins = normalized_margin(rho[:, 0], rho[:, 1], rho[:, 2], cos_sigma)
    return SurveyResult(seed, dims, rho, cos_sigma, margins, raw, scales, valid, inst_dims)


# ---------------------------------------------------------------------------
# Grid scan


@dataclass(frozen=True)
class GridSpec:
    """Discretization of ``(rho12, rho23, rho31, Sigma)``.

    Each ``rho`` axis takes ``rho_steps`` evenly spaced values over its bounds
    (endpoints included); ``Sigma`` takes ``sigma_steps`` values over
    ``sigma_bounds`` (a single step means the lower bound only).
    """

    rho_steps: int = 21
    sigma_steps: int = 13
    rho12_bounds: tuple[float, float] = (0.0, 1.0)
    rho23_bounds: tuple[float, float] = (0.0, 1.0)
    rho31_bounds: tuple[float, float] = (0.0, 1.0)
    sigma_bounds: tuple[float, float] = (0.0, math.pi)

    def __post_init__(self):
        if self.rho_steps < 2:
            raise PreconditionError("rho_steps must be at least 2")
        if self.sigma_steps < 1:
            raise PreconditionError("sigma_steps must be at least 1")
        for lo, hi in (self.rho12_bounds, self.rho23_bounds, self.rho31_bounds):
            if not 0.0 <= lo <= hi <= 1.0:
                raise PreconditionError(f"rho bounds ({lo}, {hi}) must lie within [0, 1]")

    def rho_axis(self, bounds) -> np.ndarray:
        lo, hi = bounds
        k = np.arange(self.rho_steps)
        return lo + (hi - lo) * k / (self.rho_steps - 1)

    def sigma_axis(self) -> np.ndarray:
        lo, hi = self.sigma_bounds
        if self.sigma_steps == 1:
            return np.array([lo])
        k = np.arange(self.sigma_steps)
        return lo + (hi - lo) * k / (self.sigma_steps - 1)

    @property
    def size(self) -> int:
        return self.rho_steps ** 3 * self.sigma_steps


@dataclass(frozen=True)
class ScanCell:
    point: RhoSigmaPoint
    margin: float
    classification: str


def classify(margin, tol: float):
    """'forbidden' below ``-tol``, 'boundary' within ``tol`` of zero, else 'allowed'."""
    m = np.asarray(margin)
    out = np.where(m < -tol, "forbidden", np.where(np.abs(m) <= tol, "boundary", "allowed"))
    return out if out.ndim else str(out)


def scan_arrays(g: GridSpec, tol: float = 1e-12) -> dict[str, np.ndarray]:
    """Column arrays of the scan in lexicographic grid-index order."""
    r12, r23, r31, sig = np.meshgrid(
        g.rho_axis(g.rho12_bounds),
        g.rho_axis(g.rho23_bounds),
        g.rho_axis(g.rho31_bounds),
        g.sigma_axis(),
        indexing="ij",
    )
    cols = {
        "rho12": r12.ravel(),
        "rho23": r23.ravel(),
        "rho31": r31.ravel(),
        "cos_sigma": np.cos(sig.ravel()),
    }
    cols["margin"] = normalized_margin(cols["rho12"], cols["rho23"], cols["rho31"], cols["cos_sigma"])
    cols["class"] = classify(cols["margin"], tol)
    return cols


def scan_grid(g: GridSpec, tol: float = 1e-12) -> list[ScanCell]:
    cols = scan_arrays(g, tol)
    return [
        ScanCell(RhoSigmaPoint(float(a), float(b), float(c), float(d)), float(m), str(k))
        for a, b, c, d, m, k in zip(
            cols["rho12"], cols["rho23"], cols["rho31"], cols["cos_sigma"], cols["margin"], cols["class"]
        )
    ]


# ---------------------------------------------------------------------------
# Achievability probe


@dataclass
class ProbeResult:
    target: tuple[float, float, float]
    best_distance: float
    best_instance: Instance | None
    best_rho: tuple[float, float, float] | None
    best_cos_sigma: float | None
    trials: int
    reached: bool
    probe_tol: float
    seed: int
    dims: tuple[int, ...]
    realized_violations: int = 0
    realized_in_forbidden: int = 0
    history: list[tuple[int, float]] = field(default_factory=list)

    @property
    def best_margin(self) -> float | None:
        if self.best_rho is None:
            return None
        return float(normalized_margin(*self.best_rho, self.best_cos_sigma))


def orthogonal_excitation_instance(dim: int) -> Instance:
    """Instance whose centered vectors ``dA_i psi`` are mutually orthogonal.

    ``psi = e_0`` and ``A_i = e_0 e_i^H + e_i e_0^H`` give zero means and
    ``dA_i psi = e_i``, so every ``rho_ij`` vanishes exactly. Needs ``dim >= 4``.
    """
    if dim < 4:
        raise PreconditionError("three orthogonal excitations need dim >= 4")
    e0 = basis_vector(dim, 0)
    obs = []
    for i in (1, 2, 3):
        ei = basis_vector(dim, i)
        obs.append(np.outer(e0, ei.conj()) + np.outer(ei, e0.conj()))
    return Instance(observables=obs, state=e0)


class _Tracker:
    def __init__(self, target, tol):
        self.target = np.asarray(target, dtype=float)
        self.tol = tol
        self.best_distance = math.inf
        self.best = None
        self.trials = 0
        self.violations = 0
        self.in_forbidden = 0
        self.history: list[tuple[int, float]] = []

    def evaluate(self, states, obs):
        """Record a batch; return distances and the index of its best member."""
        means, sigma2, corr = batch_moments(states, obs)
        rho, cos_sigma, valid = batch_triples(means, sigma2, corr)
        margins = normalized_margin(rho[:, 0], rho[:, 1], rho[:, 2], cos_sigma)
        self.trials += states.shape[0]
        self.violations += int(((margins < -self.tol) & valid).sum())
        self.in_forbidden += int((forbidden_region_mask(rho[:, 0], rho[:, 1], rho[:, 2]) & valid).sum())
        dist = np.where(valid, np.linalg.norm(rho - self.target, axis=1), math.inf)
        k = int(np.argmin(dist))
        if dist[k] < self.best_distance:
            self.best_distance = float(dist[k])
            self.best = (states[k].copy(), obs[k].copy(), rho[k].copy(), float(cos_sigma[k]))
            self.history.append((self.trials, self.best_distance))
        return dist, k


def probe_achievability(
    target: Sequence[float],
    dims: Sequence[int] = DEFAULT_PROBE_DIMS,
    budget: int = 100_000,
    seed: int = 0,
    probe_tol: float = 1e-3,
    tol: float = DEFAULT_TOL,
    random_block: int = 2048,
    refine_rounds: int = 20,
    refine_batch: int = 256,
    initial_step: float = 0.25,
) -> ProbeResult:
    """Random search for an instance whose ``rho`` triple is close to ``target``.

    The search runs in epochs. Each epoch draws ``random_block`` fresh random
    instances, then refines the incumbent for ``refine_rounds`` rounds of
    ``refine_batch`` Gaussian perturbations; the step is halved after a round
    without improvement and never exceeds the current best distance. The
    schedule does not depend on ``budget``, which only truncates it, so a
    larger budget never yields a worse result for the same seed.

    When a dimension of at least 4 is available, the first trial is the
    orthogonal-excitation instance realizing ``rho = (0, 0, 0)`` exactly.

    The result is evidence only: failing to reach a target does not prove
    that no instance realizes it.
    """
    target = tuple(float(t) for t in target)
    if len(target) != 3 or not all(0.0 <= t <= 1.0 for t in target):
        raise PreconditionError(f"target must be three values in [0, 1], got {target}")
    if budget < 1:
        raise PreconditionError("budget must be at least 1")
    dims = tuple(sorted({int(d) for d in dims}))
    if not dims or dims[0] < 2:
        raise PreconditionError("dims must be integers >= 2")

    tr = _Tracker(target, tol)
    remaining = budget

    big = [d for d in dims if d >= 4]
    if big:
        inst = orthogonal_excitation_instance(big[0])
        tr.evaluate(inst.state[None, :], np.array(inst.observables)[None])
        remaining -= 1

    epoch = 0
    while remaining > 0:
        rng = make_rng(seed, epoch, 0)
        blocks = list(_random_block(rng, random_block, dims))
        take = min(random_block, remaining)
        for pos, states, obs in blocks:
            keep = pos < take
            if keep.any():
                tr.evaluate(states[keep], obs[keep])
        remaining -= take

        step = min(initial_step, tr.best_distance)
        for r in range(refine_rounds):
            if remaining <= 0 or tr.best is None or tr.best_distance == 0.0:
                break
            rng = make_rng(seed, epoch, 1, r)
            psi, A, _, _ = tr.best
            dim = psi.shape[0]
            k = min(refine_batch, remaining)
            # Draw the full batch so truncation keeps a common prefix.
            dpsi = complex_normal(rng, (refine_batch, dim))[:k]
            dA = random_hermitians(rng, (refine_batch, A.shape[0]), dim)[:k]
            states = psi[None, :] + step * dpsi / math.sqrt(dim)
            states /= np.linalg.norm(states, axis=1, keepdims=True)
            obs = A[None] + step * dA
            before = tr.best_distance
            tr.evaluate(states, obs)
            remaining -= k
            if tr.best_distance < before:
                step = min(step, tr.best_distance)
            else:
                step *= 0.5
        epoch += 1

    best_instance = best_rho = best_cos = None
    if tr.best is not None:
        psi, A, rho, cs = tr.best
        best_instance = Instance(observables=[a for a in A], state=psi)
        best_rho = tuple(float(x) for x in rho)
        best_cos = cs
    return ProbeResult(
        target=target,
        best_distance=tr.best_distance,
        best_instance=best_instance,
        best_rho=best_rho,
        best_cos_sigma=best_cos,
        trials=tr.trials,
        reached=tr.best_distance <= probe_tol,
        probe_tol=probe_tol,
        seed=seed,
        dims=dims,
        realized_violations=tr.violations,
        realized_in_forbidden=tr.in_forbidden,
        history=tr.history,
    )


# ---------------------------------------------------------------------------
# Three spins

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
SPIN_PRESETS = ("ghz", "product")
_PRESET_AXES = {"ghz": ("z", "z", "z"), "product": ("x", "x", "x")}


def spin_projection(axis) -> np.ndarray:
    """``n . sigma`` for ``axis`` in ``{'x', 'y', 'z'}`` or a real 3-vector."""
    if isinstance(axis, str):
        try:
            return PAULI[axis.lower()]
        except KeyError:
            raise PreconditionError(f"unknown spin axis {axis!r}") from None
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or np.linalg.norm(n) == 0:
        raise PreconditionError(f"spin axis must be a nonzero 3-vector, got {axis!r}")
    n = n / np.linalg.norm(n)
    return n[0] * PAULI["x"] + n[1] * PAULI["y"] + n[2] * PAULI["z"]


def spin_observables(axes=("z", "z", "z")) -> list[np.ndarray]:
    """Spin projections of particles 1, 2, 3 on the 8-dimensional product space."""
    eye = np.eye(2, dtype=complex)
    s = [spin_projection(a) for a in axes]
    return [kron_all([s[0], eye, eye]), kron_all([eye, s[1], eye]), kron_all([eye, eye, s[2]])]


def spin_state(preset: str) -> np.ndarray:
    """``'ghz'``: ``(|000> + |111>)/sqrt 2``; ``'product'``: ``|000>``."""
    psi = np.zeros(8, dtype=complex)
    if preset == "ghz":
        psi[0] = psi[7] = 1 / math.sqrt(2.0)
    elif preset == "product":
        psi[0] = 1.0
    else:
        raise PreconditionError(f"unknown spin preset {preset!r}; choose from {SPIN_PRESETS}")
    return psi


def spin_preset(preset: str, axes=None) -> Instance:
    axes = _PRESET_AXES[preset] if axes is None else axes
    return Instance(observables=spin_observables(axes), state=spin_state(preset))


@dataclass
class SpinDemoReport:
    axes: tuple
    seed: int
    trials: int
    rho: np.ndarray
    cos_sigma: np.ndarray
    margins: np.ndarray
    valid: np.ndarray
    presets: dict
    tol: float

    @property
    def n_violations(self) -> int:
        return int(((self.margins < -self.tol) & self.valid).sum())

    @property
    def n_forbidden(self) -> int:
        r = self.rho[self.valid]
        return int(forbidden_region_mask(r[:, 0], r[:, 1], r[:, 2]).sum())

    def summary(self) -> dict:
        r = self.rho[self.valid]
        out = {"trials": self.trials, "valid": int(self.valid.sum()), "violations": self.n_violations, "in_forbidden_region": self.n_forbidden}
        for k, name in enumerate(("rho12", "rho23", "rho31")):
            if r.size:
                out[name] = {
                    "min": float(r[:, k].min()),
                    "mean": float(r[:, k].mean()),
                    "max": float(r[:, k].max()),
                }
        return out


def preset_row(inst: Instance) -> dict:
    means, sigma2, corr = batch_moments(inst.state[None, :], np.array(inst.observables)[None])
    rho, cs, valid = batch_triples(means, sigma2, corr)
    return {
        "rho": tuple(float(x) for x in rho[0]),
        "cos_sigma": float(cs[0]),
        "margin": float(normalized_margin(*rho[0], cs[0])),
        "sigma2": tuple(float(x) for x in sigma2[0]),
        "degenerate": not bool(valid[0]),
    }


def spin_demo(seed: int = 0, trials: int = 10_000, axes=("z", "z", "z"), tol: float = DEFAULT_TOL) -> SpinDemoReport:
    """Polarization correlations of three spins in random 8-dimensional states.

    The GHZ and product presets are evaluated with their own default axes.
    """
    obs = np.array(spin_observables(axes))
    rng = make_rng(seed, 0)
    states = random_states(rng, trials, 8)
    means, sigma2, corr = batch_moments(states, np.broadcast_to(obs, (trials,) + obs.shape))
    rho, cos_sigma, valid = batch_triples(means, sigma2, corr)
    margins = normalized_margin(rho[:, 0], rho[:, 1], rho[:, 2], cos_sigma)
    presets = {name: preset_row(spin_preset(name)) for name in SPIN_PRESETS}
    return SpinDemoReport(tuple(axes), seed, trials, rho, cos_sigma, margins, valid, presets, tol)
