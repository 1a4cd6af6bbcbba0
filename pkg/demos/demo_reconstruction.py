"""
Rebuilding points from their principal components
==================================================

After fitting L principal geodesics, each data point is summarised by its
projections onto them.  Folding those projections back together, one
geodesic intersection per level, gives an approximation of the point that
improves as more components are used.
"""

import numpy as np

from ccmpga import Sphere, ccm_epga, reconstruct
from ccmpga.datasets import DatasetSpec, gen_dataset

M = Sphere(5)
X = gen_dataset(DatasetSpec(dim=5, n=50, generator="hemisphere-uniform",
                            variance_target=0.3, seed=1))
res = ccm_epga(M, X, 5)

###############################################################################
# Mean squared reconstruction error for k = 0 (the mean alone) up to the
# full dimension.
for k in range(6):
    approx = np.array([reconstruct(res, j, k) for j in range(len(X))])
    err = np.mean(M.dist(X, approx) ** 2)
    print(f"k = {k}:  mean squared error {err:.3e}")

###############################################################################
# Each step records which root of the quadratic in cos^2(alpha_1) was used
# and how far apart the two geodesics are at the accepted angles.
_, steps = reconstruct(res, 0, 3, return_steps=True)
for k, st in enumerate(steps, 1):
    print(f"level {k}: root={st.root:10s} residual={st.residual:.1e} "
          f"rejected={[(name, round(float(val), 4)) for name, val, *_ in st.rejected]}")
