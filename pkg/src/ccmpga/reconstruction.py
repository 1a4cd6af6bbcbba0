"""Recursive reconstruction of data points from principal directions and
principal components.

The approximation ``x^k`` of a datum from its first ``k`` components is the
intersection of two geodesics::

    G1(t) = cos(t) x^{k-1} + sin(t) v_bar      (v_k transported to x^{k-1})
    G2(u) = cos(u) xbar^k  + sin(u) w_bar      (direction of x^{k-1} seen from
                                                mu, transported to xbar^k)

where ``xbar^k`` is the ``k``-th principal component of the datum and
``x^0 = mu``.  Eliminating ``alpha_2`` from

    tan(alpha_1) tan(alpha_2) = <x^{k-1}, w_bar> <xbar^k, v_bar>
    cos(alpha_2) = cos(alpha_1) <mu, x^{k-1}> / <mu, xbar^k>

gives a quadratic in ``C = cos^2(alpha_1)``: ``a C^2 + b C + d = 0``.  On the
hyperboloid every trigonometric function becomes its hyperbolic counterpart
and ``<mu, .>`` becomes ``-<mu, .>_H``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InvalidArgumentError, NumericalFailure
from .manifolds import ZERO_NORM

#: tolerance on ||G1(alpha_1) - G2(alpha_2)|| for accepting a root
RESIDUAL_TOL = 1e-8
#: slack on the range of cos^2 / cosh^2 before a root is rejected
ROOT_SLACK = 1e-10


@dataclass
class ReconstructionStep:
    """One level of the recursion.

    ``root`` records which root of the quadratic was accepted: ``"signum"``
    for the one picked by the ``sgn(a)`` rule, ``"alternate"`` for the other.
    """

    point: np.ndarray
    alpha1: float
    alpha2: float
    coefficients: tuple
    residual: float
    quartic_residual: float
    root: str
    rejected: list = field(default_factory=list)


def _quadratic_roots(a, b, d):
    """Both roots of ``a C^2 + b C + d``, the ``sgn(a)`` root first.

    Uses the cancellation-free pair ``q / a``, ``d / q``.
    """
    disc = b * b - 4.0 * a * d
    if disc < 0:
        raise NumericalFailure("negative discriminant in reconstruction quadratic",
                               a=a, b=b, d=d, discriminant=disc)
    sq = np.sqrt(disc)
    signum = (-b + np.sign(a) * sq) / (2.0 * a) if a != 0 else np.nan
    q = -0.5 * (b + np.copysign(sq, b))
    pair = [q / a if a != 0 else np.nan, d / q if q != 0 else np.nan]
    # order as (signum root, other root)
    if np.isfinite(signum) and abs(pair[0] - signum) > abs(pair[1] - signum):
        pair.reverse()
    return pair


def reconstruct_step(M, mu, x_prev, xbar, v):
    """Approximation ``x^k`` from ``x^{k-1}``, the component ``xbar^k`` and ``v_k``.

    Parameters
    ----------
    M : Sphere or Hyperboloid
    mu : ndarray
        Fréchet mean.
    x_prev : ndarray
        Previous approximation ``x^{k-1}`` (``mu`` at the first level).
    xbar : ndarray
        ``k``-th principal component of the datum.
    v : ndarray
        ``k``-th principal direction, a unit tangent vector at ``mu``.

    Returns
    -------
    ReconstructionStep

    Raises
    ------
    NumericalFailure
        When neither root of the quadratic yields an intersection within
        ``RESIDUAL_TOL`` (on the hyperboloid this happens when the geodesics
        do not meet).
    """
    mu, x_prev, xbar, v = (np.asarray(a, dtype=float) for a in (mu, x_prev, xbar, v))
    sphere = M.curvature > 0
    # <mu, .> on the sphere, -<mu, .>_H on the hyperboloid: cos / cosh of the distance
    c_prev = float(M.inner(mu, x_prev)) * M.curvature
    c_bar = float(M.inner(mu, xbar)) * M.curvature
    if abs(c_bar) < ZERO_NORM:
        raise DomainError("<mu, xbar> vanishes; the component is at distance pi/2")

    w = M.log(mu, x_prev)
    nw = float(M.norm(w))
    if nw < ZERO_NORM:
        # x^{k-1} = mu: G2 passes through xbar at u = 0
        return ReconstructionStep(xbar.copy(), 0.0, 0.0, (np.nan, np.nan, np.nan),
                                  0.0, 0.0, "degenerate")
    w_bar = M.transport(mu, xbar, w / nw)
    v_bar = M.transport(mu, x_prev, v / float(M.norm(v)))

    p_w = float(M.inner(x_prev, w_bar))
    p_v = float(M.inner(xbar, v_bar))
    # same coefficients in both models once <mu, .> carries the curvature sign
    a = c_prev ** 2 * (p_w * p_v) ** 2 - c_prev ** 2
    b = c_bar ** 2 + c_prev ** 2
    d = -c_bar ** 2

    rejected = []
    for label, C in zip(("signum", "alternate"), _quadratic_roots(a, b, d)):
        if not np.isfinite(C):
            rejected.append((label, C, "non-finite"))
            continue
        if sphere:
            if not -ROOT_SLACK <= C <= 1.0 + ROOT_SLACK:
                rejected.append((label, C, "cos^2 outside [0, 1]"))
                continue
            alpha1 = float(np.arccos(np.sqrt(np.clip(C, 0.0, 1.0))))
            arg = np.cos(alpha1) * c_prev / c_bar
            if abs(arg) > 1.0 + ROOT_SLACK:
                rejected.append((label, C, "cos(alpha_2) outside [-1, 1]"))
                continue
            alpha2 = float(np.arccos(np.clip(arg, -1.0, 1.0)))
        else:
            if C < 1.0 - ROOT_SLACK:
                rejected.append((label, C, "cosh^2 below 1"))
                continue
            alpha1 = float(np.arccosh(np.sqrt(max(C, 1.0))))
            arg = np.cosh(alpha1) * c_prev / c_bar
            if arg < 1.0 - ROOT_SLACK:
                rejected.append((label, C, "cosh(alpha_2) below 1"))
                continue
            alpha2 = float(np.arccosh(max(arg, 1.0)))
        # signs follow the two factors of the tangent-product constraint
        alpha1 = float(np.copysign(alpha1, p_v))
        alpha2 = float(np.copysign(alpha2, p_w))
        g1 = M.geodesic(x_prev, v_bar, alpha1)
        g2 = M.geodesic(xbar, w_bar, alpha2)
        residual = float(np.linalg.norm(g1 - g2))
        if residual > RESIDUAL_TOL:
            rejected.append((label, C, f"intersection residual {residual:.3e}"))
            continue
        return ReconstructionStep(g1, alpha1, alpha2, (a, b, d), residual,
                                  float(a * C * C + b * C + d), label, rejected)
    raise NumericalFailure("geodesics of the reconstruction step do not intersect",
                           a=a, b=b, d=d, rejected=rejected)


def reconstruct(result, j, k, return_steps=False):
    """Approximate datum ``j`` of a PGA result from its first ``k`` components.

    ``k = 0`` gives the mean.  With ``return_steps=True`` the list of
    :class:`ReconstructionStep` records is returned as well.
    """
    M = result.manifold
    if not 0 <= int(k) <= result.n_components:
        raise InvalidArgumentError(
            f"k must lie in [0, {result.n_components}], got {k}")
    x = np.array(result.mean, dtype=float)
    steps = []
    for level in range(int(k)):
        step = reconstruct_step(M, result.mean, x, result.components[j, level],
                                result.directions[level])
        steps.append(step)
        x = step.point
    if return_steps:
        return x, steps
    return x
