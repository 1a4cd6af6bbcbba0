"""Gaussian families as hyperbolic spaces.

* Univariate normals ``(mu, sigma)`` with the Fisher metric are the Poincaré
  half-plane scaled by 2: the map ``(mu, sigma) -> (mu / sqrt(2), sigma)`` pulls
  the half-plane metric ``(dx^2 + dy^2) / y^2`` back to half the Fisher metric.
* Diagonal normals map componentwise to a product of half-planes.
* SPD matrices split by the recursive (partial) Iwasawa decomposition
  ``V_k = S_k^T diag(V_{k-1}, w_k) S_k``, ``S_k = [[I, x_k], [0, 1]]``, into
  positive scalars ``w_i`` and vectors ``x_i``.

Half-plane points are carried to the hyperboloid through the Cayley map onto
the Poincaré disk, so the rest of the library applies unchanged.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .errors import InvalidArgumentError, NumericalFailure
from .manifolds import Hyperboloid

SQRT2 = math.sqrt(2.0)


# -- Gaussian parameters ------------------------------------------------------

@dataclass(frozen=True)
class UnivariateGaussian:
    mean: float
    std: float

    def __post_init__(self):
        if not self.std > 0:
            raise InvalidArgumentError(f"standard deviation must be > 0, got {self.std}")


@dataclass(frozen=True)
class DiagonalGaussian:
    """Normal distribution with independent coordinates."""

    means: tuple
    stds: tuple

    def __post_init__(self):
        means = tuple(float(m) for m in np.ravel(self.means))
        stds = tuple(float(s) for s in np.ravel(self.stds))
        if len(means) != len(stds) or not means:
            raise InvalidArgumentError("means and stds must be nonempty and equally long")
        if not all(s > 0 for s in stds):
            raise InvalidArgumentError("all standard deviations must be > 0")
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "stds", stds)

    @property
    def dim(self):
        return len(self.means)

    def marginals(self):
        return [UnivariateGaussian(m, s) for m, s in zip(self.means, self.stds)]


class HalfPlanePoint(NamedTuple):
    x: float
    y: float


def _check_half_plane(p):
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != 2:
        raise InvalidArgumentError(f"half-plane points have 2 coordinates, got {p.shape}")
    if not np.all(p[..., 1] > 0):
        raise InvalidArgumentError("half-plane points need y > 0")
    return p


def fisher_matrix_univariate(g):
    """Fisher information of ``N(mu, sigma^2)`` in ``(mu, sigma)`` coordinates."""
    if not isinstance(g, UnivariateGaussian):
        g = UnivariateGaussian(*g)
    s2 = g.std ** 2
    return np.array([[1.0 / s2, 0.0], [0.0, 2.0 / s2]])


def to_half_plane(g):
    """``(mu, sigma) -> (mu / sqrt(2), sigma)``."""
    if not isinstance(g, UnivariateGaussian):
        g = UnivariateGaussian(*g)
    return HalfPlanePoint(g.mean / SQRT2, g.std)


def from_half_plane(p):
    x, y = _check_half_plane(p)
    return UnivariateGaussian(SQRT2 * x, y)


def diag_gaussian_to_half_planes(g):
    """One half-plane point per coordinate of a diagonal Gaussian."""
    return [to_half_plane(m) for m in g.marginals()]


def half_planes_to_diag_gaussian(points):
    gs = [from_half_plane(p) for p in points]
    return DiagonalGaussian([g.mean for g in gs], [g.std for g in gs])


# -- half-plane geometry ------------------------------------------------------

def half_plane_distance(p, q):
    """Hyperbolic distance in the upper half-plane; broadcasts over ``(..., 2)``."""
    p, q = _check_half_plane(p), _check_half_plane(q)
    dx = p[..., 0] - q[..., 0]
    dy = p[..., 1] - q[..., 1]
    # 2 asinh(chord / 2) avoids the cancellation in arccosh(1 + small)
    chord = np.sqrt(dx * dx + dy * dy) / np.sqrt(p[..., 1] * q[..., 1])
    return 2.0 * np.arcsinh(0.5 * chord)


def half_plane_to_hyperboloid(p):
    """Isometry from the upper half-plane onto ``H^2`` with ``i -> (1, 0, 0)``.

    Goes through the Cayley map ``w = (z - i) / (z + i)`` onto the unit disk.
    """
    p = _check_half_plane(p)
    z = p[..., 0] + 1j * p[..., 1]
    w = (z - 1j) / (z + 1j)
    r2 = np.abs(w) ** 2
    out = np.stack([1.0 + r2, 2.0 * w.real, 2.0 * w.imag], axis=-1) / (1.0 - r2)[..., None]
    return Hyperboloid(2).normalize(out)


def hyperboloid_to_half_plane(x):
    """Inverse of :func:`half_plane_to_hyperboloid`."""
    x = Hyperboloid(2).check_point(x, tol=1e-9)
    w = (x[..., 1] + 1j * x[..., 2]) / (1.0 + x[..., 0])
    z = 1j * (1.0 + w) / (1.0 - w)
    return np.stack([z.real, z.imag], axis=-1)


# -- Fisher-Rao versus hyperbolic distance ------------------------------------

@dataclass
class FisherRaoReport:
    fisher_rao: float
    half_plane: float
    discrepancy: float
    quadrature_error: float


def _half_plane_geodesic(p, q):
    """Parametrisation ``gamma(t), gamma'(t)`` on ``[t0, t1]`` of the geodesic p -> q."""
    (x1, y1), (x2, y2) = p, q
    if math.isclose(x1, x2, rel_tol=0.0, abs_tol=1e-14 * max(1.0, abs(x1))):
        # vertical line, parametrised by log(y)
        def curve(t):
            y = math.exp(t)
            return np.array([x1, y]), np.array([0.0, y])
        return curve, math.log(y1), math.log(y2)
    c = ((x2 * x2 + y2 * y2) - (x1 * x1 + y1 * y1)) / (2.0 * (x2 - x1))
    r = math.hypot(x1 - c, y1)

    def curve(t):
        return (np.array([c + r * math.cos(t), r * math.sin(t)]),
                np.array([-r * math.sin(t), r * math.cos(t)]))
    return curve, math.atan2(y1, x1 - c), math.atan2(y2, x2 - c)


def fisher_rao_vs_hyperbolic_check(g1, g2, epsabs=1e-12, epsrel=1e-12):
    """Fisher-Rao length of the image of the half-plane geodesic, by quadrature.

    The half-plane geodesic between ``F(g1)`` and ``F(g2)`` is pulled back to
    ``(mu, sigma)`` and its length is integrated under the Fisher matrix.  The
    result should equal ``sqrt(2)`` times the half-plane distance.
    """
    p, q = to_half_plane(g1), to_half_plane(g2)
    hp = float(half_plane_distance(p, q))
    if hp == 0.0:
        return FisherRaoReport(0.0, 0.0, 0.0, 0.0)
    curve, t0, t1 = _half_plane_geodesic(p, q)

    def speed(t):
        (x, y), (dx, dy) = curve(t)
        vel = np.array([SQRT2 * dx, dy])  # d/dt of (mu, sigma)
        G = fisher_matrix_univariate(UnivariateGaussian(SQRT2 * x, y))
        return math.sqrt(vel @ G @ vel)

    with np.errstate(all="raise"):
        try:
            length, err = integrate.quad(speed, min(t0, t1), max(t0, t1),
                                         epsabs=epsabs, epsrel=epsrel, limit=200)
        except (FloatingPointError, ValueError) as exc:
            raise NumericalFailure(f"Fisher-Rao quadrature failed: {exc}") from exc
    return FisherRaoReport(length, hp, abs(length - SQRT2 * hp), err)


# -- Iwasawa coordinates of SPD matrices --------------------------------------

@dataclass(frozen=True)
class IwasawaCoords:
    """Recursive Iwasawa coordinates of an SPD matrix.

    ``X`` is strictly upper triangular; its column ``i`` holds ``x_i`` in its
    first ``i`` entries. ``I + X`` is *not* the LDL factor: that factor is the
    product ``S_1 S_2 ... S_{n-1}`` of the elementary blocks.
    """

    w: np.ndarray
    X: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        X = np.asarray(self.X, dtype=float)
        if X.shape != (w.size, w.size):
            raise InvalidArgumentError("X must be square with side len(w)")
        if not np.all(w > 0):
            raise InvalidArgumentError("Iwasawa w-coordinates must be > 0")
        if np.any(np.tril(X) != 0):
            raise InvalidArgumentError("X must be strictly upper triangular")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "X", X)

    @property
    def n(self):
        return self.w.size

    def x_vector(self):
        """Upper-triangular coefficients, column by column (``x_1, x_2, ...``)."""
        return np.concatenate([self.X[:i, i] for i in range(1, self.n)]) \
            if self.n > 1 else np.zeros(0)

    @classmethod
    def from_parts(cls, w, xvec):
        w = np.asarray(w, dtype=float)
        n = w.size
        xvec = np.asarray(xvec, dtype=float).ravel()
        if xvec.size != n * (n - 1) // 2:
            raise InvalidArgumentError(
                f"expected {n * (n - 1) // 2} upper-triangular coefficients, got {xvec.size}")
        X = np.zeros((n, n))
        pos = 0
        for i in range(1, n):
            X[:i, i] = xvec[pos:pos + i]
            pos += i
        return cls(w, X)


def check_spd(V, sym_tol=1e-12):
    """Return ``V`` as an array if it is symmetric positive definite."""
    V = np.asarray(V, dtype=float)
    if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape[0] == 0:
        raise InvalidArgumentError(f"expected a square matrix, got shape {V.shape}")
    scale = max(1.0, float(np.max(np.abs(V))))
    if np.max(np.abs(V - V.T)) > sym_tol * scale:
        raise InvalidArgumentError("matrix is not symmetric")
    try:
        np.linalg.cholesky(V)
    except np.linalg.LinAlgError as exc:
        raise InvalidArgumentError("matrix is not positive definite") from exc
    return V


def iwasawa_decompose(V):
    """Peel ``V_k = [[V_{k-1}, V_{k-1} x], [x^T V_{k-1}, x^T V_{k-1} x + w]]``
    from the bottom-right corner down to ``w_0 = V_11``."""
    V = check_spd(V)
    n = len(V)
    w = np.empty(n)
    X = np.zeros((n, n))
    for k in range(n - 1, 0, -1):
        A = V[:k, :k]
        x = np.linalg.solve(A, V[:k, k])
        wk = V[k, k] - x @ A @ x
        if not wk > 0:
            raise InvalidArgumentError(f"non-positive Iwasawa coordinate w_{k} = {wk:.3e}")
        w[k] = wk
        X[:k, k] = x
    w[0] = V[0, 0]
    return IwasawaCoords(w, X)


def iwasawa_compose(c):
    """Rebuild the SPD matrix from its Iwasawa coordinates."""
    V = np.array([[c.w[0]]])
    for k in range(1, c.n):
        x = c.X[:k, k]
        Vx = V @ x
        V = np.block([[V, Vx[:, None]], [Vx[None, :], np.array([[x @ Vx + c.w[k]]])]])
    return V


def regularize_spd(V, jitter):
    """``V + jitter * I``; an explicit opt-in, never applied implicitly."""
    V = np.asarray(V, dtype=float)
    if jitter < 0:
        raise InvalidArgumentError("jitter must be >= 0")
    return V + jitter * np.eye(len(V))


def spd_embed(V):
    """Half-plane points ``F(0, w_i)`` for the diagonal part and the flat
    Euclidean vector of upper-triangular coefficients."""
    c = iwasawa_decompose(V)
    return [to_half_plane(UnivariateGaussian(0.0, wi)) for wi in c.w], c.x_vector()


def spd_unembed(points, xvec):
    w = [from_half_plane(p).std for p in points]
    return iwasawa_compose(IwasawaCoords.from_parts(w, xvec))


# -- several half-planes on hyperboloids --------------------------------------

def half_planes_to_hyperboloid(points, mode="product"):
    """Place ``N`` half-plane points on hyperbolic space.

    ``mode="product"``
        One ``H^2`` point per half-plane, shape ``(N, 3)``: the product
        ``(H^2)^N`` with ``d^2 = sum_i d_i^2`` (an isometric picture).
    ``mode="concat"``
        A single point of ``H^{2N}`` whose spatial part concatenates the
        spatial parts of the ``N`` images.  Not an isometry for ``N > 1``.
    """
    H = half_plane_to_hyperboloid(np.asarray(points, dtype=float))
    if mode == "product":
        return H
    if mode == "concat":
        return concat_embed(H)
    raise InvalidArgumentError(f"mode must be 'product' or 'concat', got {mode!r}")


def concat_embed(H):
    """``(..., N, 3)`` ``H^2`` points to ``(..., 2N + 1)`` points of ``H^{2N}``."""
    H = np.asarray(H, dtype=float)
    spatial = H[..., 1:].reshape(H.shape[:-2] + (-1,))
    return Hyperboloid(spatial.shape[-1]).normalize(
        np.concatenate([np.zeros(spatial.shape[:-1] + (1,)), spatial], axis=-1))


def concat_unembed(x):
    """Inverse of :func:`concat_embed`."""
    x = np.asarray(x, dtype=float)
    spatial = x[..., 1:].reshape(x.shape[:-1] + (-1, 2))
    return Hyperboloid(2).normalize(
        np.concatenate([np.zeros(spatial.shape[:-1] + (1,)), spatial], axis=-1))


def product_distance(P, Q):
    """Distance in ``(H^2)^N`` between stacks of shape ``(..., N, 3)``."""
    d = Hyperboloid(2).dist(P, Q)
    return np.sqrt(np.sum(d * d, axis=-1))


def spd_to_hyperboloid(V, mode="concat"):
    """Map the diagonal Iwasawa part of ``V`` to hyperbolic space.

    Returns ``(point, xvec)``; ``point`` has shape ``(2N + 1,)`` for
    ``mode="concat"`` and ``(N, 3)`` for ``mode="product"``.
    """
    points, xvec = spd_embed(V)
    return half_planes_to_hyperboloid(points, mode), xvec


def diag_gaussian_to_hyperboloid(g, mode="concat"):
    return half_planes_to_hyperboloid(diag_gaussian_to_half_planes(g), mode)
