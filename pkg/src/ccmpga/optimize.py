"""Small derivative-free optimisers used by the PGA variants.

Both are written against plain callables so they can be reused as oracles
in tests and demos.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
#: relative objective gain treated as rounding noise in the sphere ascent
NOISE_GAIN = 1e-14


def golden_section(f, lo, hi, tol=1e-10, max_iter=200):
    """Minimise a unimodal function on ``[lo, hi]`` by golden-section search.

    ``lo`` and ``hi`` may be arrays, in which case ``f`` must accept an array
    of abscissae of the same shape and return elementwise values; every
    interval is shrunk in lock-step (one vectorised call per iteration).

    Returns the abscissa with the smallest function value seen in the final
    bracket.
    """
    a = np.array(lo, dtype=float)
    b = np.array(hi, dtype=float)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = np.asarray(f(c), dtype=float)
    fd = np.asarray(f(d), dtype=float)
    for _ in range(max_iter):
        if np.all(b - a <= tol):
            break
        left = fc < fd
        # minimum bracketed by [a, d] (left) or [c, b] (right)
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        old_c, old_d, old_fc, old_fd = c, d, fc, fd
        x_new = np.where(left, b - INV_PHI * (b - a), a + INV_PHI * (b - a))
        f_new = np.asarray(f(x_new), dtype=float)
        c = np.where(left, x_new, old_d)
        fc = np.where(left, f_new, old_fd)
        d = np.where(left, old_c, x_new)
        fd = np.where(left, old_fc, f_new)
    best = np.where(fc <= fd, c, d)
    return best if best.ndim else float(best)


def fd_gradient(f, x, h=1e-6):
    """Central finite-difference gradient of ``f`` at ``x``."""
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2.0 * h)
    return g


@dataclass
class AscentResult:
    x: np.ndarray
    value: float
    iterations: int
    gradient_norm: float
    converged: bool


def maximize_on_sphere(f, x0, tol=1e-9, max_iter=500, h=1e-6):
    """Projected gradient ascent of ``f`` over the unit sphere of ``R^m``.

    ``f`` is evaluated on unit vectors only; the gradient is taken by central
    differences of the scale-invariant extension ``f(x / |x|)`` and projected
    onto the tangent space of the sphere.  Trial steps come from the
    Barzilai-Borwein rule and are safeguarded by Armijo backtracking.

    Converges when the projected gradient norm drops below ``tol``, or when
    the best available step gains no more than rounding noise in ``f`` (the
    gradient is then dominated by finite-difference error).  Raises
    :class:`ConvergenceError` after ``max_iter`` iterations.
    """
    x = np.asarray(x0, dtype=float)
    x = x / np.linalg.norm(x)
    fx = f(x)
    if x.size == 1:
        return AscentResult(x, fx, 0, 0.0, True)

    def grad(y):
        g = fd_gradient(lambda z: f(z / np.linalg.norm(z)), y, h)
        return g - (g @ y) * y

    g = grad(x)
    step = 1.0
    gnorm = float(np.linalg.norm(g))
    for it in range(1, max_iter + 1):
        if gnorm <= tol:
            return AscentResult(x, fx, it, gnorm, True)
        while True:
            cand = x + step * g
            cand = cand / np.linalg.norm(cand)
            fc = f(cand)
            if fc >= fx + 1e-4 * step * gnorm ** 2:
                break
            step *= 0.5
            if step * gnorm < 1e-15:
                return AscentResult(x, fx, it, gnorm, True)
        gain = fc - fx
        g_new = grad(cand)
        dx, dg = cand - x, g_new - g
        curv = -(dx @ dg)
        step = (dx @ dx) / curv if curv > 0 else 2.0 * step
        step = min(max(step, 1e-10), 1e6)
        x, fx, g = cand, fc, g_new
        gnorm = float(np.linalg.norm(g))
        if gain <= NOISE_GAIN * max(1.0, abs(fx)):
            # progress is at the rounding floor of f
            return AscentResult(x, fx, it, gnorm, True)
    raise ConvergenceError(
        f"direction search did not converge in {max_iter} iterations "
        f"(gradient norm {gnorm:.3e})", last=x, value=fx, gradient_norm=gnorm)
