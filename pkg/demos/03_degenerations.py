"""
One-parameter degenerations
===========================

Walk the digraph of limit classes and watch a real sequence of conjugated
Cartan planes converge.
"""

import numpy as np

from cartanlimits import GAMMA, LimitClass, one_param_path
from cartanlimits.numeric import detect_limit_plane, plane_plucker

C, N3 = LimitClass.C, LimitClass.N3
print("route:", [c.name for c in GAMMA.path(C, N3)])
print("N2 -> N3 reachable:", GAMMA.path(LimitClass.N2, N3) is not None)

# %%
# Numerically the limit plane is read off from Plücker coordinates
fam = one_param_path(C, N3)
est = detect_limit_plane(fam.matrix)
print(est.limit_class.name, est.distance_to(N3.canonical_algebra))

np.set_printoptions(precision=3, suppress=True)
print(plane_plucker(N3.canonical_algebra))
