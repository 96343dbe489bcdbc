"""Gram matrices, principal minors, and the three-vector Cauchy inequality.

Run: python demos/02_gram_and_cauchy.py
"""
import numpy as np

from uncertainty_lab import cauchy_pair, gci_triple, gram_matrix, linear_dependence_check, psd_check
from uncertainty_lab.explorer import complex_normal, make_rng
from uncertainty_lab.relations import orthogonal_special

rng = make_rng(2)
vs = complex_normal(rng, (4, 6))
G = gram_matrix(vs)
v = psd_check(G)
print(f"random 4x4 Gram matrix: psd={v.is_psd}, min eigenvalue {v.min_eigenvalue:.4f}")
print(f"  smallest principal minor {v.worst_minor:.4f} on rows {v.worst_minor_rows}")

# %%
# Three vectors: the 3x3 minor is positive unless they are linearly dependent.
a, b = complex_normal(rng, (2, 5))
for label, triple in (("independent", [a, b, complex_normal(rng, 5)]), ("dependent", [a, b, 2 * a - 1j * b])):
    r = gci_triple(triple)
    print(f"{label:>12}: margin {r.margin: .3e}  saturated={r.saturated}  dependent={linear_dependence_check(triple)}")

# %%
# Probabilities |(a1, a2)|^2 / |a1|^2 |a2|^2 are bounded by 1 pairwise. With
# a2 orthogonal to a3 the two probabilities to find a2 or a3 in a1 cannot both
# be close to one.
e = np.eye(3)
print()
print("pair margin, orthogonal unit vectors:", cauchy_pair(e, 0, 1).margin)
for r12, r31 in ((0.5, 0.5), (1.0, 0.0), (0.8, 0.8)):
    rep = orthogonal_special(r12, r31)
    print(f"rho12={r12}, rho31={r31}: margin {rep.margin:+.2f} satisfied={rep.satisfied}")
