"""
Four ways to evaluate a Lovász extension
========================================

A set function on two criteria, and the same value computed along the
upper chain, along the lower chain, by affine interpolation on the order
simplex and through Möbius coefficients.
"""

# %%
import numpy as np

from choqlab import (
    LovaszExtension,
    eval_affine_interpolation,
    eval_lovasz,
    eval_lovasz_dual,
    eval_via_mobius,
    make_set_function,
    mobius_transform,
)

phi = make_set_function(2, [0.0, 0.3, 0.6, 1.0])
L = LovaszExtension(phi)
print("Möbius coefficients:", mobius_transform(phi).coefficients)

# %%
# At (3, 5) the second coordinate is larger, so the point sits in the
# simplex x1 <= x2 and every route should give 0.3*3 + 0.6*5 + 0.1*3.
x = np.array([3.0, 5.0])
for name, value in [
    ("upper chain", eval_lovasz(L, x)),
    ("lower chain", eval_lovasz_dual(L, x)),
    ("affine", eval_affine_interpolation(phi, x)),
    ("Möbius", eval_via_mobius(phi, x)),
]:
    print(f"{name:>12}: {value:.12g}")

# %%
# On cube vertices the extension reproduces phi exactly.
for A in range(4):
    vertex = np.array([A & 1, A >> 1], dtype=float)
    print(vertex, L(vertex), phi[A])

# %%
# The min capacity gives the minimum, even for mixed signs.
L_min = LovaszExtension(make_set_function(2, [0, 0, 0, 1]))
print(L_min([3, 5]), L_min([-3, 5]), eval_lovasz_dual(L_min, [-3, 5]))
