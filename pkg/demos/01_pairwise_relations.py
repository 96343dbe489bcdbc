"""Pairwise uncertainty relations for spin-1/2 and a correlated two-qubit state.

Run: python demos/01_pairwise_relations.py
"""
import math

import numpy as np

from uncertainty_lab import heisenberg_pair, moments_from_state, rj_split, schroedinger_pair
from uncertainty_lab.explorer import PAULI
from uncertainty_lab.hilbert import kron_all

sx, sy, sz = PAULI["x"], PAULI["y"], PAULI["z"]
up = np.array([1, 0], dtype=complex)

# Spin up along z. The pair (sx, sy) saturates both bounds: <1,2> = i is purely imaginary.
m = moments_from_state([sx, sy], up)
print("sigma^2:", m.sigma2, " <1,2> =", m.corr[0, 1])
print("R/J split:", rj_split(sx, sy, up))
for rel in (heisenberg_pair(m, 0, 1), schroedinger_pair(m, 0, 1)):
    print(f"{rel.relation_name:>12}: {rel.lhs:.3f} >= {rel.rhs:.3f}  saturated={rel.saturated}")

# %%
# Commuting observables on a Bell state. The commutator term is zero, so the
# Heisenberg form says nothing; the symmetrized term r^2 still forces the bound.
bell = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
eye = np.eye(2)
m = moments_from_state([kron_all([sz, eye]), kron_all([eye, sz])], bell)
h, s = heisenberg_pair(m, 0, 1), schroedinger_pair(m, 0, 1)
print()
print("Bell state, sz x 1 and 1 x sz")
print(f"  heisenberg rhs   = {h.rhs:.3f}")
print(f"  schroedinger rhs = {s.rhs:.3f} (r^2 = {s.details['r_squared']:.3f})")

# %%
# Units drop out: rescaling each observable by a dimensional constant before
# forming the vectors dA_i psi / d_i leaves the moments unchanged.
psi = np.array([0.6, 0.8j])
plain = moments_from_state([sx, sy, sz], psi)
scaled = moments_from_state([sx, sy, sz], psi, scales=[2.0, 3.0, 5.0])
print()
print("moments unchanged under scale factors:", plain.allclose(scaled))
