"""Searching for physical instances, and three-spin polarization correlations.

Run: python demos/05_probe_and_spins.py
"""
from uncertainty_lab.explorer import preset_row, probe_achievability, spin_demo, spin_preset

for target in ((0.4, 0.4, 0.4), (0.7, 0.2, 0.6), (0.9, 0.3, 0.9)):
    res = probe_achievability(target, budget=20_000, seed=5)
    rho = tuple(round(x, 4) for x in res.best_rho)
    print(f"target {target}: reached={res.reached} distance={res.best_distance:.2e} best rho={rho}")

# %%
# Three spins. A GHZ state saturates the relation with all rho = 1; a product
# state has no correlations at all.
print()
for name in ("ghz", "product"):
    row = preset_row(spin_preset(name))
    print(f"{name:>8}: rho={row['rho']} cos Sigma={row['cos_sigma']:+.0f} margin={row['margin']:.3g}")

rep = spin_demo(seed=1, trials=5000, axes=("x", "y", "z"))
print()
print("5000 random three-spin states, axes x, y, z:")
for key, value in rep.summary().items():
    print(f"  {key}: {value}")
