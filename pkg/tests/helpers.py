"""Sampling helpers shared by the test modules."""

import math

import numpy as np

from oracles import hyperboloid_geodesic, intersect_geodesics, sphere_geodesic


def unit_tangent(M, p, rng):
    v = M.random_tangent(p, rng)
    return v / M.norm(v)


def near(M, rng, center, rmax, n=None):
    """Points at geodesic distance uniform in ``[0, rmax]`` from ``center``."""
    if n is None:
        return M.exp(center, rng.uniform(0, rmax) * unit_tangent(M, center, rng))
    return np.array([near(M, rng, center, rmax) for _ in range(n)])


def triple(M, rng, rmax=1.2):
    """Base point, unit direction at it, and a data point within ``rmax``."""
    b = near(M, rng, M.base_point(), 1.0)
    return b, unit_tangent(M, b, rng), near(M, rng, b, rmax)


def reconstruction_oracle(M, res, j, x_prev, k):
    """Intersection of the two reconstruction geodesics by grid search."""
    mu, xbar, v = res.mean, res.components[j, k], res.directions[k]
    w = M.log(mu, x_prev)
    w /= M.norm(w)
    w_bar = M.transport(mu, xbar, w)
    v_bar = M.transport(mu, x_prev, v)
    geo = sphere_geodesic if M.curvature > 0 else hyperboloid_geodesic
    (t, _), gap = intersect_geodesics(lambda t: geo(x_prev, v_bar, t),
                                      lambda u: geo(xbar, w_bar, u),
                                      math.pi / 2 if M.curvature > 0 else 3.0)
    return geo(x_prev, v_bar, t), gap
