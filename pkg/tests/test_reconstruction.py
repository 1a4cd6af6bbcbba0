import math

import numpy as np
import pytest

from ccmpga import (Hyperboloid, InvalidArgumentError, NumericalFailure, Sphere, ccm_epga,
                    reconstruct, reconstruct_step)
from ccmpga.reconstruction import _quadratic_roots

from helpers import near, reconstruction_oracle


def fitted(M, rng, n=50, L=2, rmax=0.9):
    X = near(M, rng, M.base_point(), rmax, n)
    return X, ccm_epga(M, X, L)


@pytest.mark.parametrize("M", [Sphere(5), Hyperboloid(5)], ids=repr)
def test_base_and_first_level(M, rng):
    X, res = fitted(M, rng, n=20)
    for j in range(len(X)):
        assert np.array_equal(reconstruct(res, j, 0), res.mean)
        assert np.max(np.abs(reconstruct(res, j, 1) - res.components[j, 0])) <= 1e-12


@pytest.mark.parametrize("M", [Sphere(3), Hyperboloid(3)], ids=repr)
def test_point_on_first_geodesic_reconstructs_exactly(M, rng):
    X, res = fitted(M, rng, n=20)
    x = M.exp(res.mean, 0.6 * res.directions[0])
    step = reconstruct_step(M, res.mean, res.mean, x, res.directions[0])
    assert np.allclose(step.point, x, atol=1e-12)
    assert step.root == "degenerate"


@pytest.mark.parametrize("M", [Sphere(5), Hyperboloid(5)], ids=repr)
def test_steps_match_intersection_oracle(M, rng):
    X, res = fitted(M, rng, n=12)
    for j in range(len(X)):
        x1 = reconstruct(res, j, 1)
        step = reconstruct_step(M, res.mean, x1, res.components[j, 1], res.directions[1])
        ref, gap = reconstruction_oracle(M, res, j, x1, 1)
        assert gap < 1e-7
        assert np.max(np.abs(step.point - ref)) <= 1e-5
        assert step.residual <= 1e-8
        assert abs(M.constraint_residual(step.point)) <= 1e-12


@pytest.mark.parametrize("M", [Sphere(5), Hyperboloid(5)], ids=repr)
def test_constraints_hold_at_accepted_angles(M, rng):
    X, res = fitted(M, rng, n=20)
    mu = res.mean
    c = M.curvature
    tan = np.tan if c > 0 else np.tanh
    cos = np.cos if c > 0 else np.cosh
    for j in range(len(X)):
        x1 = reconstruct(res, j, 1)
        xbar, v = res.components[j, 1], res.directions[1]
        st = reconstruct_step(M, mu, x1, xbar, v)
        w = M.log(mu, x1)
        w_bar = M.transport(mu, xbar, w / M.norm(w))
        v_bar = M.transport(mu, x1, v)
        rhs = M.inner(x1, w_bar) * M.inner(xbar, v_bar)
        assert abs(tan(st.alpha1) * tan(st.alpha2) - rhs) <= 1e-9
        assert abs(cos(st.alpha2) * c * M.inner(mu, xbar)
                   - cos(st.alpha1) * c * M.inner(mu, x1)) <= 1e-9
        a, b, d = st.coefficients
        C = cos(st.alpha1) ** 2
        assert abs(a * C * C + b * C + d) <= 1e-9
        assert abs(st.quartic_residual) <= 1e-9


def test_sphere_root_choice_is_recorded(rng):
    # on the sphere a < 0 and the signum root lies above 1, so the other root
    # is the one that intersects
    M = Sphere(5)
    X, res = fitted(M, rng, n=10)
    for j in range(len(X)):
        _, steps = reconstruct(res, j, 2, return_steps=True)
        st = steps[1]
        a = st.coefficients[0]
        assert a < 0
        assert st.root == "alternate"
        assert st.rejected and st.rejected[0][0] == "signum"
        assert st.rejected[0][1] > 1


def test_quadratic_roots_are_stable():
    for a, b, d in [(-2.0, 3.0, -0.5), (1e-12, 2.0, -1.0), (3.0, 1e8, -1.0)]:
        roots = _quadratic_roots(a, b, d)
        for r in roots:
            assert abs(a * r * r + b * r + d) <= 1e-12 * max(abs(b * r), abs(d), 1.0)
    with pytest.raises(NumericalFailure):
        _quadratic_roots(1.0, 0.0, 1.0)


def test_reconstruction_error_decreases(rng):
    M = Sphere(5)
    X, res = fitted(M, rng, n=50)
    err = [np.mean([M.dist(X[j], reconstruct(res, j, k)) ** 2 for j in range(50)])
           for k in (1, 2)]
    assert err[1] < err[0]


def test_full_rank_reconstruction_recovers_data(rng):
    M = Sphere(2)
    X, res = fitted(M, rng, n=15, L=2)
    for j in range(15):
        assert np.allclose(reconstruct(res, j, 2), X[j], atol=1e-9)


def test_hyperbolic_non_intersection_raises():
    # far apart along both axes the two geodesics no longer meet
    H = Hyperboloid(2)
    mu = H.base_point()
    e = np.eye(3)
    x_prev = H.exp(mu, 2.0 * e[1])
    xbar = H.exp(mu, 2.0 * e[2])
    assert math.cosh(2.0) * math.tanh(2.0) > 1
    with pytest.raises(NumericalFailure) as exc:
        reconstruct_step(H, mu, x_prev, xbar, e[2])
    assert "a" in exc.value.details


def test_invalid_level(rng):
    M = Sphere(3)
    _, res = fitted(M, rng, n=10)
    with pytest.raises(InvalidArgumentError):
        reconstruct(res, 0, 3)
