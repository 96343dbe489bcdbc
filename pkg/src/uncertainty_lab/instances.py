"""Problem instances (a state or density matrix plus observables) and their JSON form.

File layout::

    {
      "schema_version": "1",
      "dim": 2,
      "state": [[1.0, 0.0], [0.0, 0.0]],          # or "density": [[[re, im], ...], ...]
      "observables": [[[[0, 0], [1, 0]], [[1, 0], [0, 0]]], ...],
      "scales": [1.0, ...]                         # optional
    }

Complex numbers are always two-element ``[re, im]`` arrays.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .errors import PreconditionError
from .hilbert import DEFAULT_TOL, as_density, as_observable, require_normalized
from .moments import MomentSet, moments_from_density, moments_from_state

SCHEMA_VERSION = "1"


class InstanceError(PreconditionError):
    """An instance file is malformed or violates an instance invariant."""


@dataclass
class Instance:
    observables: list[np.ndarray]
    state: np.ndarray | None = None
    density: np.ndarray | None = None
    scales: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return int(self.observables[0].shape[0])

    def moments(self, tol: float = DEFAULT_TOL) -> MomentSet:
        if self.state is not None:
            return moments_from_state(self.observables, self.state, self.scales, tol)
        return moments_from_density(self.observables, self.density, tol)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "dim": self.dim}
        if self.state is not None:
            out["state"] = encode_complex(self.state)
        if self.density is not None:
            out["density"] = encode_complex(self.density)
        out["observables"] = [encode_complex(A) for A in self.observables]
        if self.scales is not None:
            out["scales"] = [float(x) for x in self.scales]
        return out

    @classmethod
    def from_dict(cls, data: dict, tol: float = DEFAULT_TOL) -> "Instance":
        return validate_instance(data, tol)


def encode_complex(arr) -> list:
    """Nested lists with each complex entry replaced by ``[re, im]``."""
    a = np.asarray(arr, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def decode_complex(data, what: str) -> np.ndarray:
    try:
        a = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"{what}: entries must be numeric [re, im] pairs") from exc
    if a.ndim == 0 or a.shape[-1] != 2:
        raise InstanceError(f"{what}: complex entries must be [re, im] pairs")
    if not np.all(np.isfinite(a)):
        raise InstanceError(f"{what}: contains NaN or Inf")
    return a[..., 0] + 1j * a[..., 1]


def validate_instance(data: dict, tol: float = DEFAULT_TOL) -> Instance:
    if not isinstance(data, dict):
        raise InstanceError("instance must be a JSON object")
    has_state, has_density = "state" in data, "density" in data
    if has_state == has_density:
        raise InstanceError("exactly one of 'state' or 'density' must be present")
    if "observables" not in data or not data["observables"]:
        raise InstanceError("'observables' must be a non-empty list")
    dim = data.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise InstanceError("'dim' must be a positive integer")

    observables = []
    for k, raw in enumerate(data["observables"]):
        A = decode_complex(raw, f"observables[{k}]")
        if A.shape != (dim, dim):
            raise InstanceError(f"observables[{k}] has shape {A.shape}, expected ({dim}, {dim})")
        try:
            observables.append(as_observable(A, tol))
        except PreconditionError as exc:
            raise InstanceError(f"observables[{k}]: {exc}") from exc

    state = density = None
    if has_state:
        state = decode_complex(data["state"], "state")
        if state.shape != (dim,):
            raise InstanceError(f"state has shape {state.shape}, expected ({dim},)")
        try:
            require_normalized(state, tol)
        except PreconditionError as exc:
            raise InstanceError(f"state: {exc}") from exc
    else:
        density = decode_complex(data["density"], "density")
        if density.shape != (dim, dim):
            raise InstanceError(f"density has shape {density.shape}, expected ({dim}, {dim})")
        try:
            as_density(density, tol)
        except PreconditionError as exc:
            raise InstanceError(f"density: {exc}") from exc

    scales = None
    if data.get("scales") is not None:
        scales = np.asarray(data["scales"], dtype=float)
        if scales.shape != (len(observables),):
            raise InstanceError(f"'scales' needs {len(observables)} entries")
        if not np.all(np.isfinite(scales)) or np.any(scales <= 0):
            raise InstanceError("'scales' must be strictly positive")
    return Instance(observables=observables, state=state, density=density, scales=scales)


def load_instance(path, tol: float = DEFAULT_TOL) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path} is not valid JSON: {exc}") from exc
    return validate_instance(data, tol)


def save_instance(instance: Instance, path, **extra) -> None:
    data = instance.to_dict()
    data.update(extra)
    Path(path).write_text(json.dumps(data, indent=1) + "\n")
