"""
Gaussians and covariance matrices as hyperbolic points
=======================================================

Normal densities with the Fisher metric form a hyperbolic plane, up to a
factor of two.  We check that numerically, push a few diagonal Gaussians onto
the hyperboloid, and split an SPD matrix into Iwasawa coordinates.
"""

import math

import numpy as np

from ccmpga import (DiagonalGaussian, Hyperboloid, UnivariateGaussian,
                    fisher_rao_vs_hyperbolic_check, frechet_mean, iwasawa_compose,
                    iwasawa_decompose, spd_embed)
from ccmpga.infogeo import diag_gaussian_to_hyperboloid

###############################################################################
# Fisher-Rao length of the half-plane geodesic, integrated numerically, against
# sqrt(2) times the closed-form hyperbolic distance.
pairs = [((0.0, 1.0), (0.0, math.e)), ((0.0, 1.0), (2.0, 1.0)), ((-1.0, 0.3), (4.0, 2.5))]
for a, b in pairs:
    r = fisher_rao_vs_hyperbolic_check(UnivariateGaussian(*a), UnivariateGaussian(*b))
    print(f"{a} -> {b}: Fisher-Rao {r.fisher_rao:.10f}  sqrt(2) d_H {math.sqrt(2) * r.half_plane:.10f}")

###############################################################################
# Diagonal Gaussians in 3 dimensions, concatenated onto H^6, and their mean.
rng = np.random.default_rng(0)
gs = [DiagonalGaussian(rng.normal(0, 1, 3), np.exp(rng.normal(0, 0.3, 3))) for _ in range(20)]
P = np.array([diag_gaussian_to_hyperboloid(g) for g in gs])
H = Hyperboloid(6)
print("\nmean of 20 Gaussians on H^6:", np.round(frechet_mean(H, P), 4))

###############################################################################
# Iwasawa coordinates: positive scalars for the diagonal part, and the
# coupling coefficients.
V = np.array([[4.0, 2.0, 0.4], [2.0, 3.0, 1.0], [0.4, 1.0, 2.0]])
c = iwasawa_decompose(V)
print("\nw =", np.round(c.w, 6))
print("x =", np.round(c.x_vector(), 6))
print("round trip error", np.linalg.norm(iwasawa_compose(c) - V))
points, xvec = spd_embed(V)
print("half-plane points", [(round(float(p.x), 4), round(float(p.y), 4)) for p in points])
