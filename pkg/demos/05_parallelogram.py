"""
The parallelogram picture
=========================

For x1 <= x2 a point splits two ways: along the diagonal up to (x1, x1)
and then straight up, or along the diagonal to (x2, x2) and then left.
The ``decompose`` command prints both splits.  A comonotonically additive
function adds up along either route, so it is fixed by its values on the
axes and on the diagonal.
"""

# %%
import io
import json

from choqlab import LovaszExtension, SectionFamily, make_set_function, reconstruct_from_sections
from choqlab.cli import main

x = [1.0, 3.0]


def decompose(mode, cut):
    out = io.StringIO()
    main(["decompose", json.dumps(x), f"--cut={cut}", "--mode", mode], stdout=out)
    return json.loads(out.getvalue())["results"]["parts"]


print("min route:", decompose("min", x[0]))
print("max route:", decompose("max", x[1]))

# %%
L = LovaszExtension(make_set_function(2, [0, 0.3, 0.6, 1]))
F = SectionFamily.from_function(L)
print(L(x), reconstruct_from_sections(F, x, "min"), reconstruct_from_sections(F, x, "max"))
print(L([1, 1]) + L([0, 2]), L([3, 3]) + L([-2, 0]))
