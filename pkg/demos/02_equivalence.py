"""
Comonotonic and horizontal additivity
=====================================

Lovász extensions pass all three checks.  Products and absolute values do
not, and the checkers say exactly where.
"""

# %%
from choqlab import (
    BUILTINS,
    CheckConfig,
    LovaszExtension,
    check_comonotonic_additivity,
    check_horizontal_max_additivity,
    check_horizontal_min_additivity,
    random_set_function,
)

cfg = CheckConfig(trials=500, seed=1)
checks = {
    "comonotonic": check_comonotonic_additivity,
    "hmin": check_horizontal_min_additivity,
    "hmax": check_horizontal_max_additivity,
}

# %%
L = LovaszExtension(random_set_function(3, 7, "general"))
for name, chk in checks.items():
    print(name, chk(L, cfg).passed)

# %%
# The first witness for the product comes from the integer lattice: adding
# (1, 1) to itself gives 4 on the left and 2 on the right.
for fname in ("product2", "abs1"):
    for name, chk in checks.items():
        v = chk(BUILTINS[fname], cfg)
        print(fname, name, v.passed, v.witness.inputs, v.witness.lhs, v.witness.rhs)
