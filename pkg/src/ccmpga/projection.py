"""Closed-form projection onto a geodesic through a base point, and the
codimension-one descent built from it.

For a base point ``b`` and a tangent direction ``v`` at ``b`` the closest
point of the geodesic ``t -> Exp_b(t v / |v|)`` to a data point ``x`` sits at
the signed arc length

    sphere:       a = arctan( <v, x>   / ( <x, b>   |v| ) )
    hyperboloid:  a = arctanh( <v, x>_H / (-<x, b>_H |v| ) )

so no numerical minimisation is needed.  All functions broadcast over a
leading axis of data points.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .manifolds import ZERO_NORM

#: sphere projections need <x, base> above this value
SPHERE_DOMAIN_TOL = 1e-12


@dataclass(frozen=True)
class GeodesicSubspace:
    """One-dimensional geodesic submanifold ``Exp_base(R * direction)``."""

    base: np.ndarray
    direction: np.ndarray

    @classmethod
    def from_vector(cls, M, base, v):
        """Validate tangency and normalise ``v`` to unit length."""
        base = M.check_point(base, tol=1e-10)
        v = M.check_tangent(base, v)
        nv = M.norm(v)
        if nv < ZERO_NORM:
            raise DomainError("direction vector is zero")
        return cls(base, v / nv)


@dataclass(frozen=True)
class ProjectionResult:
    point: np.ndarray
    signed_coordinate: np.ndarray


def _dot(a, b):
    return np.einsum("...i,...i->...", a, b)


def _lor(a):
    out = np.array(a, dtype=float)
    out[..., 0] *= -1.0
    return out


def project_sphere(x, base, v):
    """Projection of ``x`` onto the great circle through ``base`` along ``v``.

    ``v`` need not be unit length (the formula divides by ``|v|``); ``x`` and
    ``v`` may carry matching leading axes.  Requires ``<x, base> > 0``.
    """
    x = np.asarray(x, dtype=float)
    base = np.asarray(base, dtype=float)
    v = np.asarray(v, dtype=float)
    cos_c = _dot(x, base)
    if np.any(cos_c <= SPHERE_DOMAIN_TOL):
        raise DomainError(
            "sphere projection needs <x, base> > 0 (point within pi/2 of the base)")
    nv = np.sqrt(_dot(v, v))
    a = np.arctan(_dot(v, x) / cos_c / nv)
    y = np.cos(a)[..., None] * base + np.sin(a)[..., None] * (v / nv[..., None])
    y = y / np.linalg.norm(y, axis=-1, keepdims=True)
    return ProjectionResult(y, a)


def project_hyperboloid(x, base, v):
    """Projection of ``x`` onto the hyperbolic geodesic through ``base`` along ``v``.

    Same calling convention as :func:`project_sphere`.
    """
    x = np.asarray(x, dtype=float)
    base = np.asarray(base, dtype=float)
    v = np.asarray(v, dtype=float)
    nv = np.sqrt(np.maximum(_dot(_lor(v), v), 0.0))
    ratio = _dot(_lor(v), x) / (-_dot(_lor(x), base)) / nv
    if np.any(np.abs(ratio) >= 1.0):
        raise DomainError("hyperboloid projection: arctanh argument outside (-1, 1)")
    a = np.arctanh(ratio)
    y = np.cosh(a)[..., None] * base + np.sinh(a)[..., None] * (v / nv[..., None])
    y[..., 0] = np.sqrt(1.0 + _dot(y[..., 1:], y[..., 1:]))
    return ProjectionResult(y, a)


def project(M, x, base, v):
    """Dispatch to :func:`project_sphere` or :func:`project_hyperboloid`."""
    if M.curvature > 0:
        return project_sphere(x, base, v)
    return project_hyperboloid(x, base, v)


def descend_codim1(M, x, mu, v, return_coordinate=False):
    """Project data onto the totally geodesic hypersurface through ``mu``
    orthogonal to the unit direction ``v``.

    For each point: project onto the geodesic ``(mu, v)`` to get ``y``, take
    ``Log_y(x)``, parallel transport it back to ``mu`` along that geodesic, and
    project ``x`` onto the geodesic through ``mu`` in the transported direction.
    Points already on the geodesic map to ``mu``.

    Returns the descended points, and with ``return_coordinate=True`` also the
    signed coordinates along ``v``.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    proj = project(M, x, mu, v)
    vi = M.log(proj.point, x)
    vi_mu = M.transport(proj.point, np.broadcast_to(mu, x.shape), vi)
    norms = M.norm(vi_mu)
    degenerate = norms < ZERO_NORM
    safe = np.where(degenerate, 1.0, norms)[:, None]
    # placeholder direction on degenerate rows; those rows are overwritten by mu
    dirs = np.where(degenerate[:, None], v, vi_mu / safe)
    out = project(M, x, mu, dirs).point
    out[degenerate] = mu
    if return_coordinate:
        return out, proj.signed_coordinate
    return out
