"""Slices of the allowed region in (rho12, rho31) at fixed rho23 and cos Sigma.

Run: python demos/04_region_map.py
Prints character maps: '.' allowed, '#' forbidden, 'o' boundary.
"""
import numpy as np

from uncertainty_lab.explorer import GridSpec, scan_arrays

steps = 21
symbols = {"allowed": ".", "forbidden": "#", "boundary": "o"}
for rho23 in (0.0, 0.3, 0.7):
    for sigma in (0.0, np.pi / 2, np.pi):
        g = GridSpec(
            rho_steps=steps,
            sigma_steps=1,
            rho23_bounds=(rho23, rho23),
            sigma_bounds=(sigma, sigma),
        )
        cols = scan_arrays(g, tol=1e-12)
        # Grid order is (rho12, rho23, rho31); rho23 is constant here.
        cls = cols["class"].reshape(steps, steps, steps)[:, 0, :]
        n_forbidden = int((cls == "forbidden").sum())
        print(f"rho23={rho23}, cos Sigma={np.cos(sigma):+.0f}: {n_forbidden} forbidden of {steps * steps}")
        for i in range(steps - 1, -1, -4):
            print("   " + "".join(symbols[c] for c in cls[i, ::2]))
        print()
