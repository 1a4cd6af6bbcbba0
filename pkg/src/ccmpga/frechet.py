"""Fréchet mean and variance by Riemannian gradient descent."""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, ConvexityWarning, InvalidArgumentError


@dataclass(frozen=True)
class MeanConfig:
    max_iterations: int = 1000
    gradient_tolerance: float = 1e-10
    step_size: float = 1.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise InvalidArgumentError("max_iterations must be >= 1")
        if not self.gradient_tolerance > 0:
            raise InvalidArgumentError("gradient_tolerance must be > 0")
        if not 0 < self.step_size <= 2:
            raise InvalidArgumentError("step_size must lie in (0, 2]")


def fsum_rows(a):
    """Exactly rounded column sums of a 2-D array (order independent)."""
    a = np.asarray(a, dtype=float)
    return np.array([math.fsum(col) for col in a.T])


def as_dataset(M, X):
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[0] == 0:
        raise InvalidArgumentError("empty dataset")
    if X.ndim != 2 or X.shape[1] != M.ambient_dim:
        raise InvalidArgumentError(
            f"dataset must have shape (n, {M.ambient_dim}), got {X.shape}")
    return X


def _functional(M, mu, X):
    return math.fsum(M.dist(mu, X) ** 2) / len(X)


def frechet_mean(M, X, cfg=None, init=None, return_info=False):
    """Fréchet (Karcher) mean of ``X`` on ``M``.

    Iterates ``mu <- Exp_mu(step * mean_j Log_mu(x_j))`` starting from the
    first data point, halving the step whenever the Fréchet functional would
    increase.  Stops once the norm of the mean log vector drops below
    ``cfg.gradient_tolerance``.

    Parameters
    ----------
    M : Sphere or Hyperboloid
    X : array_like, shape (n, N+1)
    cfg : MeanConfig, optional
    init : array_like, optional
        Starting point; defaults to ``X[0]``.
    return_info : bool
        Also return a dict with ``iterations``, ``gradient_norm`` and the
        functional ``history``.

    Raises
    ------
    ConvergenceError
        If the tolerance is not met within ``cfg.max_iterations``; the last
        iterate is attached as ``err.last``.
    """
    cfg = cfg or MeanConfig()
    X = as_dataset(M, X)
    n = len(X)
    mu = X[0].copy() if init is None else M.normalize(np.asarray(init, dtype=float))
    f = _functional(M, mu, X)
    history = [f]
    gnorm = np.inf
    it = 0
    for it in range(1, cfg.max_iterations + 1):
        grad = fsum_rows(M.log(mu, X)) / n
        gnorm = float(M.norm(grad))
        if gnorm <= cfg.gradient_tolerance:
            break
        step = cfg.step_size
        while True:
            cand = M.exp(mu, step * grad)
            f_new = _functional(M, cand, X)
            # slack absorbs rounding once gnorm^2 falls below ulp(f)
            if f_new <= f + 1e-14 * max(1.0, f):
                break
            step *= 0.5
            if step < 1e-12:
                raise ConvergenceError(
                    "Fréchet mean line search stalled", last=mu, gradient_norm=gnorm)
        mu, f = cand, f_new
        history.append(f)
    else:
        grad = fsum_rows(M.log(mu, X)) / n
        gnorm = float(M.norm(grad))
        if gnorm > cfg.gradient_tolerance:
            raise ConvergenceError(
                f"Fréchet mean did not converge in {cfg.max_iterations} iterations "
                f"(gradient norm {gnorm:.3e})", last=mu, gradient_norm=gnorm)

    if M.curvature > 0:
        far = M.dist(mu, X) >= np.pi / 2
        if np.any(far):
            warnings.warn(
                f"{int(far.sum())} point(s) lie at distance >= pi/2 from the mean; "
                "uniqueness of the mean is not guaranteed", ConvexityWarning,
                stacklevel=2)
    if return_info:
        return mu, {"iterations": it, "gradient_norm": gnorm, "history": history}
    return mu


def frechet_variance(M, X, mu):
    """Mean squared geodesic distance ``(1/n) sum_j d(mu, x_j)^2``."""
    X = as_dataset(M, X)
    mu = np.asarray(mu, dtype=float)
    if mu.shape != (M.ambient_dim,):
        raise InvalidArgumentError(
            f"mean must have shape ({M.ambient_dim},), got {mu.shape}")
    return _functional(M, mu, X)
