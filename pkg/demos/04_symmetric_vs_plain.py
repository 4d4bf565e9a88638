"""
Plain and symmetric extensions of one set function
==================================================

They coincide exactly when the centered plain extension is odd on the
nonnegative orthant.  A self-dual capacity is such a case.
"""

# %%
import numpy as np

from choqlab import (
    CheckConfig,
    LovaszExtension,
    SymmetricLovaszExtension,
    check_homogeneity,
    check_oddness_positive_orthant,
    make_set_function,
)

cfg = CheckConfig(trials=500)
rng = np.random.default_rng(0)
pts = rng.uniform(-5, 5, (2000, 2))

for values in ([0, 0.3, 0.6, 1], [0, 0.5, 0.5, 1]):
    phi = make_set_function(2, values)
    L, S = LovaszExtension(phi), SymmetricLovaszExtension(phi)
    gap = max(abs(L(p) - S(p)) for p in pts)
    odd = check_oddness_positive_orthant(L, cfg)
    print(values, "max gap %.3g" % gap, "odd:", odd.passed, odd.witness and odd.witness.inputs)

# %%
# Homogeneity with negative factors separates the two for the first table.
phi = make_set_function(2, [0, 0.3, 0.6, 1])
v = check_homogeneity(LovaszExtension(phi), cfg, probes=[([3, 0], -1.0)])
print(v.witness.inputs, v.witness.lhs, v.witness.rhs)
print(check_homogeneity(SymmetricLovaszExtension(phi), cfg).passed)
