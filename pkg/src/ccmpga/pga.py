"""Principal geodesic analysis on the sphere and the hyperboloid.

Three variants share one result type:

``ccm-epga``
    Exact PGA with closed-form projections.  Level ``k`` maximises the mean
    squared signed coordinate ``a`` of the projections of the level-``k-1``
    points onto the geodesic ``(mu, v)`` (``d(mu, Pi_S(x)) = |a|``), then moves
    every point onto the hypersurface orthogonal to ``v_k`` with
    :func:`~ccmpga.projection.descend_codim1`.
``tangent-pca``
    Linearised PGA: ordinary PCA of ``Log_mu`` of the data.
``exact-pga-baseline``
    Minimises the mean squared reconstruction error ``d(x, Pi_S(x))^2`` with
    ``Pi_S`` found numerically by cyclic coordinate-wise golden-section search.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, InvalidArgumentError
from .frechet import MeanConfig, as_dataset, frechet_mean
from .optimize import golden_section, maximize_on_sphere
from .projection import descend_codim1, project

METHODS = ("ccm-epga", "tangent-pca", "exact-pga-baseline")


@dataclass(frozen=True)
class DirectionSearchConfig:
    """Settings for the search over unit directions (``restarts`` includes the
    tangent-PCA start)."""

    restarts: int = 5
    tolerance: float = 1e-9
    max_iterations: int = 500
    fd_step: float = 1e-6
    seed: int = 0
    projection_tolerance: float = 1e-8

    def __post_init__(self):
        if self.restarts < 1:
            raise InvalidArgumentError("restarts must be >= 1")


@dataclass
class PgaResult:
    """Output of any PGA variant.

    Attributes
    ----------
    method : str
    manifold : Sphere or Hyperboloid
    mean : ndarray, shape (N+1,)
    directions : ndarray, shape (L, N+1)
        Unit, mutually orthogonal tangent vectors at ``mean``.
    coordinates : ndarray, shape (n, L)
        Signed coordinate of each point along each direction.
    components : ndarray, shape (n, L, N+1)
        The point on the ``k``-th principal geodesic belonging to each datum.
    per_level_points : list of ndarray
        ``per_level_points[k]`` is the dataset after removing ``k`` directions
        (index 0 is the input).
    variances : ndarray, shape (L,)
    timings : dict
    """

    method: str
    manifold: object
    mean: np.ndarray
    directions: np.ndarray
    coordinates: np.ndarray
    components: np.ndarray
    per_level_points: list
    variances: np.ndarray
    timings: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    @property
    def n_components(self):
        return len(self.directions)


def canonical_sign(v, tol=1e-12):
    """Flip ``v`` so that its first non-negligible component is positive."""
    v = np.asarray(v, dtype=float)
    idx = np.flatnonzero(np.abs(v) > tol)
    if idx.size and v[idx[0]] < 0:
        return -v
    return v


def _gram_schmidt_complement(vectors, dim):
    """Orthonormal basis of the complement of ``vectors`` in ``R^dim``.

    Completes with coordinate axes in fixed order, so the result is
    deterministic.
    """
    basis = [np.asarray(v, dtype=float) for v in vectors]
    out = []
    for axis in np.eye(dim):
        b = axis.copy()
        for _ in range(2):
            for e in basis + out:
                b = b - (e @ b) * e
        nb = np.linalg.norm(b)
        if nb > 1e-8:
            out.append(b / nb)
        if len(basis) + len(out) == dim:
            break
    return np.array(out).reshape(-1, dim)


def _tangent_coords(M, basis, V):
    """Coordinates of tangent vectors ``V`` in an orthonormal tangent basis."""
    return np.atleast_2d(M.inner(np.asarray(V)[..., None, :], basis))


def _admissible_basis(M, basis, prev):
    """Orthonormal ambient basis of the complement of ``prev`` in ``T_mu``."""
    if len(prev):
        pc = _tangent_coords(M, basis, np.asarray(prev))
        pc = pc / np.linalg.norm(pc, axis=1, keepdims=True)
    else:
        pc = np.zeros((0, M.dim))
    comp = _gram_schmidt_complement(list(pc), M.dim)
    return comp @ basis


def _top_direction(coords):
    """Leading eigenvector of the second-moment matrix of ``coords``."""
    cov = coords.T @ coords / len(coords)
    w, vec = np.linalg.eigh(cov)
    return vec[:, np.argmax(w)]


def _check_L(M, L):
    if not 1 <= int(L) <= M.dim:
        raise InvalidArgumentError(f"L must lie in [1, {M.dim}], got {L}")
    return int(L)


def _resolve_mean(M, X, mean, mean_cfg):
    if mean is not None:
        return M.check_point(mean, tol=1e-10)
    return frechet_mean(M, X, mean_cfg or MeanConfig())


def _search(objective, starts, cfg):
    """Run the sphere ascent from every start and keep the best run."""
    best = None
    failures = []
    for c0 in starts:
        try:
            res = maximize_on_sphere(objective, c0, tol=cfg.tolerance,
                                     max_iter=cfg.max_iterations, h=cfg.fd_step)
        except ConvergenceError as err:
            failures.append(err)
            continue
        if best is None or res.value > best.value:
            best = res
    if best is None:
        raise ConvergenceError(
            "direction search failed from every start",
            last=failures[-1].last, failures=len(failures))
    return best, len(failures)


def _starts(pca_dir, m, cfg, rng):
    starts = [pca_dir]
    for _ in range(cfg.restarts - 1):
        starts.append(rng.standard_normal(m))
    return starts


def mean_sq(values):
    values = np.asarray(values, dtype=float)
    return math.fsum((values ** 2).ravel()) / len(values)


def ccm_epga(M, X, L, cfg=None, mean=None, mean_cfg=None):
    """Exact PGA with analytic projections and codimension-one descent.

    Parameters
    ----------
    M : Sphere or Hyperboloid
    X : array_like, shape (n, N+1)
    L : int
        Number of principal directions, ``1 <= L <= N``.
    cfg : DirectionSearchConfig, optional
    mean : array_like, optional
        Precomputed Fréchet mean; computed with ``mean_cfg`` otherwise.
    """
    cfg = cfg or DirectionSearchConfig()
    X = as_dataset(M, X)
    L = _check_L(M, L)
    t0 = time.perf_counter()
    mu = _resolve_mean(M, X, mean, mean_cfg)
    t_mean = time.perf_counter() - t0
    basis = M.tangent_basis(mu)
    rng = np.random.default_rng(cfg.seed)

    levels = [X]
    dirs, coords, comps, variances, iters = [], [], [], [], []
    failed = 0
    for _ in range(L):
        Xk = levels[-1]
        Q = _admissible_basis(M, basis, dirs)

        def objective(c, Xk=Xk, Q=Q):
            return mean_sq(project(M, Xk, mu, c @ Q).signed_coordinate)

        pca_dir = _top_direction(_tangent_coords(M, Q, M.log(mu, Xk)))
        best, nfail = _search(objective, _starts(pca_dir, len(Q), cfg, rng), cfg)
        failed += nfail
        iters.append(best.iterations)
        v = best.x @ Q
        v = canonical_sign(v / M.norm(v))
        proj = project(M, Xk, mu, v)
        dirs.append(v)
        coords.append(proj.signed_coordinate)
        comps.append(proj.point)
        variances.append(mean_sq(proj.signed_coordinate))
        levels.append(descend_codim1(M, Xk, mu, v))

    return PgaResult(
        method="ccm-epga", manifold=M, mean=mu, directions=np.array(dirs),
        coordinates=np.column_stack(coords), components=np.stack(comps, axis=1),
        per_level_points=levels, variances=np.array(variances),
        timings={"mean_s": t_mean, "total_s": time.perf_counter() - t0},
        diagnostics={"ascent_iterations": iters, "failed_restarts": failed})


def tangent_pca(M, X, L, mean=None, mean_cfg=None):
    """Linearised PGA: PCA of the log-mapped data in ``T_mu M``.

    Eigenvalues below ``1e-12`` times the largest are treated as zero and
    their eigenvectors replaced by a Gram-Schmidt completion against the
    tangent-basis axes in fixed order.
    """
    X = as_dataset(M, X)
    L = _check_L(M, L)
    t0 = time.perf_counter()
    mu = _resolve_mean(M, X, mean, mean_cfg)
    t_mean = time.perf_counter() - t0
    basis = M.tangent_basis(mu)
    C = _tangent_coords(M, basis, M.log(mu, X))
    cov = C.T @ C / len(C)
    w, vec = np.linalg.eigh(cov)
    order = np.argsort(-w, kind="stable")
    w, vec = w[order], vec[:, order]
    keep = w > 1e-12 * max(w[0], 0.0) if w[0] > 0 else np.zeros_like(w, bool)
    if not keep.all():
        kept = list(vec[:, keep].T)
        vec = np.column_stack(kept + list(_gram_schmidt_complement(kept, M.dim)))
        w = np.where(keep, w, 0.0)

    dirs = np.array([canonical_sign(vec[:, k] @ basis) for k in range(L)])
    dcoords = _tangent_coords(M, basis, dirs)          # (L, N)
    coords = C @ dcoords.T                             # (n, L)
    comps = np.stack([M.exp(mu, coords[:, [k]] * dirs[k]) for k in range(L)], axis=1)
    levels = [X]
    resid = C.copy()
    for k in range(L):
        resid = resid - np.outer(coords[:, k], dcoords[k])
        levels.append(M.exp(mu, resid @ basis))
    return PgaResult(
        method="tangent-pca", manifold=M, mean=mu, directions=dirs,
        coordinates=coords, components=comps, per_level_points=levels,
        variances=w[:L].copy(),
        timings={"mean_s": t_mean, "total_s": time.perf_counter() - t0})


def numerical_projection(M, X, mu, V, tol=1e-8, max_cycles=200, golden_tol=1e-10):
    """Closest point of ``Exp_mu(span V)`` to each row of ``X``, found numerically.

    Minimises ``s -> d(x, Exp_mu(sum_i s_i V_i))`` one coordinate at a time by
    golden-section search, cycling until no coordinate moves by more than
    ``tol``.  ``V`` must be orthonormal tangent vectors at ``mu``.

    Returns ``(s, points)`` with shapes ``(n, k)`` and ``(n, N+1)``.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    V = np.atleast_2d(np.asarray(V, dtype=float))
    n, k = len(X), len(V)
    radius = np.asarray(M.dist(mu, X)) + 1e-3
    if M.curvature > 0:
        radius = np.minimum(radius, np.pi / 2)
    s = np.zeros((n, k))
    for cycle in range(1, max_cycles + 1):
        moved = 0.0
        for i in range(k):
            rest = s @ V - s[:, [i]] * V[i]

            def along(t, rest=rest, i=i):
                return M.dist(X, M.exp(mu, rest + t[:, None] * V[i]))

            new = golden_section(along, -radius, radius, tol=golden_tol)
            moved = max(moved, float(np.max(np.abs(new - s[:, i]))))
            s[:, i] = new
        if moved <= tol or k == 1:
            break
    else:
        raise ConvergenceError(
            f"numerical projection did not settle in {max_cycles} cycles",
            last=s, moved=moved)
    return s, M.exp(mu, s @ V)


def exact_pga_baseline(M, X, L, cfg=None, mean=None, mean_cfg=None):
    """Optimisation-based exact PGA minimising the reconstruction error.

    Level ``k`` picks ``v`` orthogonal to the previous directions so that the
    ``k``-dimensional geodesic subspace ``Exp_mu(span(v_1, ..., v_{k-1}, v))``
    minimises ``(1/n) sum_j d(x_j, Pi_S(x_j))^2``, with ``Pi_S`` computed by
    :func:`numerical_projection`.
    """
    cfg = cfg or DirectionSearchConfig()
    X = as_dataset(M, X)
    L = _check_L(M, L)
    t0 = time.perf_counter()
    mu = _resolve_mean(M, X, mean, mean_cfg)
    t_mean = time.perf_counter() - t0
    basis = M.tangent_basis(mu)
    rng = np.random.default_rng(cfg.seed)
    logs = M.log(mu, X)

    dirs, variances, iters = [], [], []
    levels = [X]
    comps = []
    failed = 0
    coords = None
    for _ in range(L):
        Q = _admissible_basis(M, basis, dirs)
        prev = np.array(dirs).reshape(-1, M.ambient_dim)

        def objective(c, Q=Q, prev=prev):
            V = np.vstack([prev, c @ Q])
            _, P = numerical_projection(M, X, mu, V, tol=cfg.projection_tolerance)
            return -mean_sq(M.dist(X, P))

        pca_dir = _top_direction(_tangent_coords(M, Q, logs))
        best, nfail = _search(objective, _starts(pca_dir, len(Q), cfg, rng), cfg)
        failed += nfail
        iters.append(best.iterations)
        v = best.x @ Q
        dirs.append(canonical_sign(v / M.norm(v)))
        coords, P = numerical_projection(M, X, mu, np.array(dirs),
                                         tol=cfg.projection_tolerance)
        levels.append(P)
        comps.append(M.exp(mu, coords[:, [-1]] * dirs[-1]))
        variances.append(mean_sq(coords[:, -1]))

    return PgaResult(
        method="exact-pga-baseline", manifold=M, mean=mu, directions=np.array(dirs),
        coordinates=coords, components=np.stack(comps, axis=1),
        per_level_points=levels, variances=np.array(variances),
        timings={"mean_s": t_mean, "total_s": time.perf_counter() - t0},
        diagnostics={"ascent_iterations": iters, "failed_restarts": failed})


def average_projection_error(M, X, mu, v):
    """Mean squared distance from each point to its closest point on the
    geodesic ``Exp_mu(t v)``, using the closed-form projection."""
    X = as_dataset(M, X)
    proj = project(M, X, mu, v)
    return mean_sq(M.dist(X, proj.point))


def subspace_projection_error(M, X, mu, V, tol=1e-8):
    """Average projection error onto ``Exp_mu(span V)``.

    One direction uses the closed form; more directions use
    :func:`numerical_projection`.
    """
    V = np.atleast_2d(np.asarray(V, dtype=float))
    if len(V) == 1:
        return average_projection_error(M, X, mu, V[0])
    X = as_dataset(M, X)
    _, P = numerical_projection(M, X, mu, V, tol=tol)
    return mean_sq(M.dist(X, P))


def run_pga(method, M, X, L, cfg=None, mean=None, mean_cfg=None):
    """Dispatch on a method tag (``ccm``/``tangent``/``exact`` short forms accepted)."""
    tag = {"ccm": "ccm-epga", "tangent": "tangent-pca", "pga": "tangent-pca",
           "exact": "exact-pga-baseline"}.get(method, method)
    if tag == "ccm-epga":
        return ccm_epga(M, X, L, cfg, mean, mean_cfg)
    if tag == "tangent-pca":
        return tangent_pca(M, X, L, mean, mean_cfg)
    if tag == "exact-pga-baseline":
        return exact_pga_baseline(M, X, L, cfg, mean, mean_cfg)
    raise InvalidArgumentError(f"unknown PGA method {method!r}; expected one of {METHODS}")
