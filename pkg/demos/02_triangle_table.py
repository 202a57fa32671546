"""
Classifying triangles
=====================

Sample one conjugator per limit class, normalize its triangle and compare the
count-based classification against the Lie-algebra oracle.
"""

from cartanlimits import LimitClass, full_classify, print_hreal
from cartanlimits.sampling import instances

for row in LimitClass:
    inst = instances(row, 1, seed=3)[0]
    r = full_classify(inst.matrix)
    # the normalized invariants delta, epsilon, eta
    inv = ", ".join(print_hreal(v) for v in (inst.delta, inst.epsilon, inst.eta))
    print(f"{row.name:3s} ({inv}) -> triangle {r.triangle_class.name}, oracle {r.oracle_class.name}")

# %%
# The shadow of the conjugated Cartan plane is a 2-dimensional abelian algebra.
r = full_classify(instances(LimitClass.N1, 1, seed=3)[0].matrix)
for X in r.shadow_plane.basis:
    print([[str(c) for c in row] for row in X])
