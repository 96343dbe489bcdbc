"""The three-observable relation and what it adds beyond the pairwise bounds.

Run: python demos/03_three_observables.py
"""
import numpy as np

from uncertainty_lab import (
    RhoSigmaPoint,
    forbidden_region_check,
    gur_normalized,
    gur_raw,
    gur_weakened,
    moments_from_state,
    normalized_correlations,
)
from uncertainty_lab.explorer import make_rng, random_hermitians, random_states

rng = make_rng(3)
psi = random_states(rng, 1, 5)[0]
obs = list(random_hermitians(rng, (3,), 5))
m = moments_from_state(obs, psi)
nc = normalized_correlations(m)
raw = gur_raw(m)
norm = gur_normalized(nc)
print("rho12, rho23, rho31 =", nc.rho[0, 1], nc.rho[1, 2], nc.rho[2, 0])
print("cos Sigma =", nc.cos_sigma)
print(f"raw margin / prod sigma^2 = {raw.margin / np.prod(m.sigma2):.12f}")
print(f"normalized margin         = {norm.margin:.12f}")

# %%
# Every rho below one half is allowed whatever the phase.
print()
print("rho = 1/2, cos Sigma = -1:", gur_normalized(RhoSigmaPoint(0.5, 0.5, 0.5, -1.0)).margin)

# %%
# Each rho_ij <= 1 separately, yet the triple (0.9, 0.3, 0.9) is impossible.
p = (0.9, 0.3, 0.9)
print("pairwise bounds hold:", all(r <= 1 for r in p))
print("inside the explicit forbidden box:", forbidden_region_check(*p))
print(f"weakened margin {gur_weakened(*p).margin:+.3f}")
for c in (1.0, 0.0, -1.0):
    print(f"  cos Sigma = {c:+.0f}: margin {gur_normalized(RhoSigmaPoint(*p, c)).margin:+.3f}")
