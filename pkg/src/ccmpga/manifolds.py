"""Closed-form Riemannian geometry of the unit hypersphere and the hyperboloid.

Points and tangent vectors are plain ``numpy`` arrays in ambient
``(N + 1)``-coordinates.  Every method broadcasts over leading axes, so a
dataset of ``n`` points is simply an ``(n, N + 1)`` array.  A tangent vector
only makes sense together with its base point, which is always passed
explicitly.

The hyperboloid model uses the first coordinate as the timelike one::

    H^N = {x : <x, x>_H = -1, x_0 > 0},   <x, y>_H = -x_0 y_0 + sum_i x_i y_i
"""

import numpy as np

from .errors import DomainError, InvalidArgumentError

#: below this norm a tangent vector is treated as zero
ZERO_NORM = 1e-12
#: below this angle theta/sin(theta) is replaced by its Taylor expansion
SMALL_ANGLE = 1e-8
#: sphere points with <p, q> <= -1 + ANTIPODAL_TOL are antipodal
ANTIPODAL_TOL = 1e-12


def minkowski_inner(x, y):
    """Lorentzian inner product ``-x_0 y_0 + sum_{i>=1} x_i y_i``.

    Broadcasts over leading axes.

    Examples
    --------
    >>> minkowski_inner([1., 0, 0], [1., 0, 0])
    -1.0
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != y.shape[-1]:
        raise InvalidArgumentError(
            f"length mismatch: {x.shape[-1]} vs {y.shape[-1]}")
    if x.shape[-1] < 2:
        raise InvalidArgumentError("Minkowski vectors need length >= 2")
    return _minkowski(x, y)


def _minkowski(x, y):
    out = np.einsum("...i,...i->...", x[..., 1:], y[..., 1:]) - x[..., 0] * y[..., 0]
    return out if out.ndim else float(out)


def _euclidean(x, y):
    out = np.einsum("...i,...i->...", x, y)
    return out if out.ndim else float(out)


def _taylor_ratio(theta, sign):
    """theta / sin(theta) (sign=+1) or theta / sinh(theta) (sign=-1)."""
    theta = np.asarray(theta, dtype=float)
    small = theta < SMALL_ANGLE
    safe = np.where(small, 1.0, theta)
    trig = np.sin(safe) if sign > 0 else np.sinh(safe)
    return np.where(small, 1.0 + sign * theta ** 2 / 6.0, safe / trig)


class ConstantCurvatureManifold:
    """Shared interface of :class:`Sphere` and :class:`Hyperboloid`.

    Parameters
    ----------
    dim : int
        Intrinsic dimension ``N >= 1``; points live in ``R^(N+1)``.
    """

    name = None
    curvature = 0

    def __init__(self, dim):
        dim = int(dim)
        if dim < 1:
            raise InvalidArgumentError(f"dimension must be >= 1, got {dim}")
        self.dim = dim

    @property
    def ambient_dim(self):
        return self.dim + 1

    def __repr__(self):
        return f"{type(self).__name__}({self.dim})"

    def __eq__(self, other):
        return type(self) is type(other) and self.dim == other.dim

    def __hash__(self):
        return hash((type(self).__name__, self.dim))

    # -- to be specialised ------------------------------------------------
    def inner(self, x, y):
        raise NotImplementedError

    def normalize(self, x):
        """Re-project an ambient vector onto the manifold."""
        raise NotImplementedError

    def to_tangent(self, p, v):
        """Orthogonal projection of ``v`` onto the tangent space at ``p``."""
        raise NotImplementedError

    def dist(self, p, q):
        raise NotImplementedError

    def _cos(self, t):
        raise NotImplementedError

    def _sin(self, t):
        raise NotImplementedError

    # -- shared -----------------------------------------------------------
    def _check_shape(self, *arrays):
        out = []
        for a in arrays:
            a = np.asarray(a, dtype=float)
            if a.shape[-1] != self.ambient_dim:
                raise InvalidArgumentError(
                    f"{self!r} expects ambient length {self.ambient_dim}, "
                    f"got {a.shape[-1]}")
            out.append(a)
        return out if len(out) > 1 else out[0]

    def base_point(self):
        """The canonical point ``e_0`` (north pole / hyperboloid vertex)."""
        e = np.zeros(self.ambient_dim)
        e[0] = 1.0
        return e

    def norm(self, v):
        """Riemannian norm of a tangent vector (base point not needed)."""
        return np.sqrt(np.maximum(self.inner(v, v), 0.0))

    def constraint_residual(self, x):
        """Deviation of ``x`` from the model constraint (0 on the manifold)."""
        raise NotImplementedError

    def check_point(self, x, tol=1e-12):
        """Raise :class:`InvalidArgumentError` unless ``x`` lies on the manifold."""
        x = self._check_shape(x)
        res = np.max(np.abs(self.constraint_residual(x)), initial=0.0)
        if not res <= tol:
            raise InvalidArgumentError(
                f"point(s) off {self!r}: constraint residual {res:.3e} > {tol:.1e}")
        return x

    def check_tangent(self, p, v, tol=1e-10):
        p, v = self._check_shape(p, v)
        res = np.max(np.abs(self.inner(p, v)), initial=0.0)
        if not res <= tol:
            raise InvalidArgumentError(
                f"vector not tangent: <p, v> = {res:.3e} > {tol:.1e}")
        return v

    def geodesic(self, p, u, t):
        """Point at arc length ``t`` along the geodesic from ``p`` with unit velocity ``u``."""
        t = np.asarray(t, dtype=float)[..., None]
        return self.normalize(self._cos(t) * p + self._sin(t) * u)

    def exp(self, p, v):
        """Riemannian exponential map ``Exp_p(v)``."""
        p, v = self._check_shape(p, v)
        n = self.norm(v)[..., None]
        zero = n < ZERO_NORM
        safe = np.where(zero, 1.0, n)
        q = self._cos(n) * p + self._sin(n) * (v / safe)
        return self.normalize(np.where(zero, p, q))

    def log(self, p, q):
        """Inverse exponential map: tangent vector at ``p`` pointing to ``q``."""
        raise NotImplementedError

    def transport(self, p, q, w):
        """Parallel transport of ``w`` in ``T_p`` to ``T_q`` along the geodesic."""
        raise NotImplementedError

    def tangent_basis(self, p):
        """Deterministic orthonormal basis of ``T_p``, shape ``(N, N+1)``.

        Coordinate axes projected to the tangent space, Gram-Schmidt in the
        fixed order ``e_0, e_1, ...``; axes that become dependent are skipped.
        """
        p = self._check_shape(p)
        basis = []
        for axis in np.eye(self.ambient_dim):
            b = self.to_tangent(p, axis)
            for _ in range(2):  # re-orthogonalise once
                for e in basis:
                    b = b - self.inner(e, b) * e
            nb = self.norm(b)
            if nb > 1e-8:
                basis.append(b / nb)
            if len(basis) == self.dim:
                break
        return np.array(basis)

    def random_tangent(self, p, rng, scale=1.0):
        """Gaussian tangent vector at ``p`` with isotropic ``scale``."""
        p = self._check_shape(p)
        basis = self.tangent_basis(p)
        coeff = rng.standard_normal(self.dim) * scale
        return coeff @ basis

    def random_point(self, rng, center=None, scale=1.0):
        """``Exp_center`` of a Gaussian tangent vector (handy for tests and demos)."""
        center = self.base_point() if center is None else center
        return self.exp(center, self.random_tangent(center, rng, scale))


class Sphere(ConstantCurvatureManifold):
    """Unit hypersphere ``S^N`` embedded in ``R^(N+1)``."""

    name = "sphere"
    curvature = 1

    def inner(self, x, y):
        return _euclidean(np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def _cos(self, t):
        return np.cos(t)

    def _sin(self, t):
        return np.sin(t)

    def normalize(self, x):
        x = np.asarray(x, dtype=float)
        return x / np.linalg.norm(x, axis=-1, keepdims=True)

    def constraint_residual(self, x):
        return np.einsum("...i,...i->...", x, x) - 1.0

    def to_tangent(self, p, v):
        return v - np.asarray(self.inner(p, v))[..., None] * p

    def dist(self, p, q):
        """Great-circle distance ``arccos(<p, q>)``.

        Evaluated as ``2 atan2(|p - q|, |p + q|)``, which equals the arccos form
        on the sphere but keeps full precision near 0 and pi and is exactly
        symmetric in its arguments.
        """
        p, q = self._check_shape(p, q)
        out = 2.0 * np.arctan2(np.linalg.norm(p - q, axis=-1),
                               np.linalg.norm(p + q, axis=-1))
        return out if out.ndim else float(out)

    def log(self, p, q):
        p, q = self._check_shape(p, q)
        ip = np.asarray(self.inner(p, q))
        if np.any(ip <= -1.0 + ANTIPODAL_TOL):
            raise DomainError("log map undefined for antipodal points")
        theta = np.asarray(self.dist(p, q))
        u = q - ip[..., None] * p
        v = _taylor_ratio(theta, +1)[..., None] * u
        return self.to_tangent(p, v)

    def transport(self, p, q, w):
        # Closed form of: keep the component normal to the geodesic plane,
        # rotate the in-plane component by the travelled angle.
        p, q, w = self._check_shape(p, q, w)
        ip = np.asarray(self.inner(p, q))
        if np.any(ip <= -1.0 + ANTIPODAL_TOL):
            raise DomainError("parallel transport undefined between antipodal points")
        coef = np.asarray(self.inner(q, w)) / (1.0 + ip)
        out = w - coef[..., None] * (p + q)
        return self.to_tangent(q, out)


class Hyperboloid(ConstantCurvatureManifold):
    """Hyperbolic space ``H^N`` in the hyperboloid (Lorentz) model."""

    name = "hyperboloid"
    curvature = -1

    def inner(self, x, y):
        return _minkowski(np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def _cos(self, t):
        return np.cosh(t)

    def _sin(self, t):
        return np.sinh(t)

    def normalize(self, x):
        # keep the spacelike part, solve the constraint for the timelike one
        x = np.array(x, dtype=float)
        x[..., 0] = np.sqrt(1.0 + np.einsum("...i,...i->...", x[..., 1:], x[..., 1:]))
        return x

    def constraint_residual(self, x):
        # relative residual: absolute rounding grows with x_0^2
        r = _minkowski(x, x) + 1.0
        return r / np.maximum(1.0, x[..., 0] ** 2)

    def check_point(self, x, tol=1e-12):
        x = super().check_point(x, tol)
        if np.any(x[..., 0] <= 0):
            raise InvalidArgumentError("hyperboloid points need x_0 > 0")
        return x

    def to_tangent(self, p, v):
        return v + np.asarray(self.inner(p, v))[..., None] * p

    def dist(self, p, q):
        """Hyperbolic distance ``arccosh(-<p, q>_H)``.

        Near the diagonal the Minkowski chord ``|p - q|_H = 2 sinh(d / 2)`` is
        used instead, since ``arccosh`` loses half the digits around 1.
        """
        p, q = self._check_shape(p, q)
        z = -np.asarray(_minkowski(p, q))
        chord2 = np.maximum(np.asarray(_minkowski(p - q, p - q)), 0.0)
        near = 2.0 * np.arcsinh(np.sqrt(chord2) / 2.0)
        far = np.arccosh(np.maximum(z, 1.0))
        out = np.where(z < 2.0, near, far)
        return out if out.ndim else float(out)

    def log(self, p, q):
        p, q = self._check_shape(p, q)
        ip = np.asarray(self.inner(p, q))
        theta = np.asarray(self.dist(p, q))
        u = q + ip[..., None] * p
        v = _taylor_ratio(theta, -1)[..., None] * u
        return self.to_tangent(p, v)

    def transport(self, p, q, w):
        # Closed form of: keep the normal component, boost the in-plane one.
        p, q, w = self._check_shape(p, q, w)
        ip = np.asarray(self.inner(p, q))
        coef = np.asarray(self.inner(q, w)) / (1.0 - ip)
        out = w + coef[..., None] * (p + q)
        return self.to_tangent(q, out)


MODELS = {"sphere": Sphere, "hyperboloid": Hyperboloid}


def make_manifold(model, dim):
    """Build a manifold from its tag (``"sphere"`` or ``"hyperboloid"``)."""
    try:
        cls = MODELS[str(model).lower()]
    except KeyError:
        raise InvalidArgumentError(
            f"unknown model {model!r}; expected one of {sorted(MODELS)}") from None
    return cls(dim)
