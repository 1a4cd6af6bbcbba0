"""Synthetic datasets on the sphere and the hyperboloid.

Both generators are centred on the base point ``e_0`` and draw points in
point-reflected pairs ``x, R x`` where ``R`` is the rotation by ``pi`` about
the ``e_0`` axis (``x_i -> -x_i`` for ``i >= 1``).  The pair structure makes
``e_0`` an exact critical point of the Fréchet functional, so the mean sits at
the base point and the requested variance is the one actually realised (up
to sampling noise).

``geodesic-perturbed``
    Arc length ``t`` uniform on ``[-T, T]`` (or, for large variance targets on
    the sphere, on ``[-T_max, -T_lo] U [T_lo, T_max]``) along the geodesic in
    direction ``e_1``, then a Gaussian step of standard deviation ``scale``
    in each normal direction ``e_2, ..., e_N``.
``hemisphere-uniform``
    Riemannian-uniform on the geodesic ball of radius ``R`` about ``e_0``.
    ``R`` is solved from the variance target; without a target it is the
    open hemisphere on the sphere and radius 1 on the hyperboloid.
"""

import hashlib
import json
import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy import integrate, optimize

from .errors import InvalidArgumentError
from .manifolds import MODELS, make_manifold

GENERATORS = ("geodesic-perturbed", "hemisphere-uniform")
#: sphere samples must satisfy d(e_0, x) < pi/2 - CONVEXITY_MARGIN
CONVEXITY_MARGIN = 1e-6
#: largest arc length used along the sphere geodesic
SPHERE_ARC_MAX = math.pi / 2 - 0.02
DEFAULT_BALL_RADIUS = 1.0


@dataclass(frozen=True)
class DatasetSpec:
    model: str = "sphere"
    dim: int = 2
    n: int = 100
    generator: str = "geodesic-perturbed"
    variance_target: Optional[float] = None
    scale: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise InvalidArgumentError(f"unknown model {self.model!r}")
        if int(self.dim) < 1:
            raise InvalidArgumentError("dim must be >= 1")
        if int(self.n) < 2:
            raise InvalidArgumentError("n must be >= 2")
        if self.generator not in GENERATORS:
            raise InvalidArgumentError(
                f"generator must be one of {GENERATORS}, got {self.generator!r}")
        if not self.scale >= 0:
            raise InvalidArgumentError("scale must be >= 0")
        if self.variance_target is not None and not self.variance_target >= 0:
            raise InvalidArgumentError("variance target must be >= 0")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise InvalidArgumentError("seed must be a 64-bit unsigned integer")

    def fingerprint(self):
        """Short hash of the spec (seed included)."""
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def _arc_bounds(v, sphere):
    """``(lo, hi)`` so that ``t`` uniform on ``+-[lo, hi]`` has ``E t^2 = v``."""
    if not sphere or v <= SPHERE_ARC_MAX ** 2 / 3:
        return 0.0, math.sqrt(3.0 * v)
    if v > SPHERE_ARC_MAX ** 2:
        raise InvalidArgumentError(
            f"variance target {v:.4g} unreachable inside the convexity ball "
            f"(max {SPHERE_ARC_MAX ** 2:.4g})")
    hi = SPHERE_ARC_MAX
    # (lo^2 + lo hi + hi^2) / 3 = v
    lo = 0.5 * (-hi + math.sqrt(12.0 * v - 3.0 * hi * hi))
    return lo, hi


def _ball_moment(R, dim, sphere):
    """``E r^2`` for the Riemannian-uniform ball of radius ``R``."""
    jac = (lambda r: np.sin(r) ** (dim - 1)) if sphere else (lambda r: np.sinh(r) ** (dim - 1))
    num = integrate.quad(lambda r: r * r * jac(r), 0.0, R)[0]
    den = integrate.quad(jac, 0.0, R)[0]
    return num / den


def _ball_radius(spec, sphere):
    rmax = math.pi / 2 - CONVEXITY_MARGIN if sphere else None
    if spec.variance_target is None:
        return rmax if sphere else DEFAULT_BALL_RADIUS
    v = spec.variance_target
    if v == 0:
        return 0.0
    if sphere:
        top = _ball_moment(rmax, spec.dim, True)
        if v >= top:
            raise InvalidArgumentError(
                f"variance target {v:.4g} unreachable on the hemisphere (max {top:.4g})")
    else:
        rmax = 1.0
        while _ball_moment(rmax, spec.dim, False) < v:
            rmax *= 2.0
    return optimize.brentq(lambda R: _ball_moment(R, spec.dim, sphere) - v,
                           1e-12, rmax, xtol=1e-14)


def _reflect(X):
    Y = X.copy()
    Y[:, 1:] *= -1.0
    return Y


def _geodesic_perturbed(M, spec, rng, m):
    sphere = M.curvature > 0
    v = 0.5 if spec.variance_target is None else spec.variance_target
    # the normal perturbation contributes about (N - 1) scale^2 to the variance
    v_arc = v - (M.dim - 1) * spec.scale ** 2
    if v_arc < 0:
        raise InvalidArgumentError(
            f"variance target {v:.4g} below the perturbation floor "
            f"{(M.dim - 1) * spec.scale ** 2:.4g}")
    lo, hi = _arc_bounds(v_arc, sphere)
    t = rng.uniform(lo, hi, m) * rng.choice([-1.0, 1.0], m)
    on = np.zeros((m, M.ambient_dim))
    on[:, 0], on[:, 1] = M._cos(t), M._sin(t)
    eps = np.zeros((m, M.ambient_dim))
    eps[:, 2:] = rng.standard_normal((m, M.dim - 1)) * spec.scale
    # e_2 .. e_N are tangent at every point of the e_0 e_1 geodesic
    return M.exp(on, eps)


def _ball_uniform(M, spec, rng, m, R):
    sphere = M.curvature > 0
    if R == 0:
        return np.tile(M.base_point(), (m, 1))
    jac = np.sin if sphere else np.sinh
    r = np.empty(0)
    while r.size < m:
        cand = rng.uniform(0.0, R, 2 * m)
        keep = rng.uniform(size=2 * m) < (jac(cand) / jac(R)) ** (M.dim - 1)
        r = np.concatenate([r, cand[keep]])
    r = r[:m]
    u = rng.standard_normal((m, M.dim))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    v = np.zeros((m, M.ambient_dim))
    v[:, 1:] = u * r[:, None]
    return M.exp(M.base_point(), v)


def gen_dataset(spec):
    """Draw the dataset described by ``spec``; same spec, same array."""
    M = make_manifold(spec.model, int(spec.dim))
    sphere = M.curvature > 0
    rng = np.random.default_rng(int(spec.seed))
    half = int(spec.n) // 2
    R = _ball_radius(spec, sphere) if spec.generator == "hemisphere-uniform" else None
    if spec.generator == "geodesic-perturbed" and M.dim == 1 and spec.scale > 0:
        raise InvalidArgumentError("no normal directions to perturb into when dim = 1")

    out = np.empty((0, M.ambient_dim))
    while len(out) < half:
        m = half - len(out)
        if R is None:
            X = _geodesic_perturbed(M, spec, rng, m)
        else:
            X = _ball_uniform(M, spec, rng, m, R)
        if sphere:
            X = X[X[:, 0] > math.sin(CONVEXITY_MARGIN)]
        out = np.concatenate([out, X])
    X = np.concatenate([out, _reflect(out)])
    if spec.n % 2:
        X = np.concatenate([X, M.base_point()[None, :]])
    return X
