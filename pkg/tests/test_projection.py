import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ccmpga import (DomainError, GeodesicSubspace, Hyperboloid, InvalidArgumentError, Sphere,
                    descend_codim1, project, project_hyperboloid, project_sphere)

from helpers import near, triple, unit_tangent
from oracles import geodesic_argmin


@pytest.mark.parametrize("M", [Sphere(4), Hyperboloid(4)], ids=repr)
def test_trivial_cases(M, rng):
    b, v, _ = triple(M, rng)
    r = project(M, b, b, v)
    assert abs(r.signed_coordinate) < 1e-13
    assert np.allclose(r.point, b, atol=1e-13)
    # a point whose inner product with v vanishes projects to the base
    w = M.random_tangent(b, rng)
    w -= M.inner(w, v) * v
    x = M.exp(b, 0.7 * w / M.norm(w))
    r = project(M, x, b, v)
    assert abs(r.signed_coordinate) < 1e-13
    assert np.allclose(r.point, b, atol=1e-14)


@pytest.mark.parametrize("M, model", [(Sphere(10), "sphere"), (Hyperboloid(10), "hyperboloid")],
                         ids=["S10", "H10"])
def test_coordinate_matches_golden_section(M, model, rng):
    for _ in range(200):
        b, v, x = triple(M, rng)
        a = project(M, x, b, v).signed_coordinate
        t = geodesic_argmin(model, x, b, v, math.pi / 2 if model == "sphere" else 5.0)
        assert abs(a - t) <= 1e-6


@pytest.mark.parametrize("M", [Sphere(5), Hyperboloid(5)], ids=repr)
def test_projection_is_closest_on_samples(M, rng):
    ts = np.linspace(-1.5, 1.5, 10 ** 4)
    for _ in range(20):
        b, v, x = triple(M, rng)
        y = project(M, x, b, v).point
        curve = M.exp(b, ts[:, None] * v)
        assert M.dist(x, y) <= np.min(M.dist(x, curve)) + 1e-8


@pytest.mark.parametrize("M", [Sphere(5), Hyperboloid(5)], ids=repr)
def test_result_lies_on_geodesic_and_is_orthogonal(M, rng):
    for _ in range(50):
        b, v, x = triple(M, rng)
        r = project(M, x, b, v)
        assert np.allclose(r.point, M.exp(b, r.signed_coordinate * v), atol=1e-10)
        assert M.dist(b, r.point) == pytest.approx(abs(r.signed_coordinate), abs=1e-12)
        # residual direction is orthogonal to the geodesic at the foot point
        tangent = M.transport(b, r.point, v)
        assert abs(M.inner(M.log(r.point, x), tangent)) <= 1e-9


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from(["sphere", "hyperboloid"]),
       st.floats(0.1, 10.0))
def test_sign_flip_and_norm_independence(seed, model, scale):
    rng = np.random.default_rng(seed)
    M = Sphere(4) if model == "sphere" else Hyperboloid(4)
    b, v, x = triple(M, rng)
    r = project(M, x, b, v)
    flipped = project(M, x, b, -v)
    scaled = project(M, x, b, scale * v)
    assert abs(flipped.signed_coordinate + r.signed_coordinate) <= 1e-12
    assert np.max(np.abs(flipped.point - r.point)) <= 1e-12
    assert abs(scaled.signed_coordinate - r.signed_coordinate) <= 1e-12
    assert np.max(np.abs(scaled.point - r.point)) <= 1e-12


def test_vectorised_matches_loop(rng):
    for M in (Sphere(3), Hyperboloid(3)):
        b, v, _ = triple(M, rng)
        X = near(M, rng, b, 1.2, 30)
        batch = project(M, X, b, v)
        for i, x in enumerate(X):
            one = project(M, x, b, v)
            assert one.signed_coordinate == pytest.approx(batch.signed_coordinate[i], abs=1e-15)


def test_domain_errors():
    S, H = Sphere(2), Hyperboloid(2)
    e = np.eye(3)
    with pytest.raises(DomainError):
        project_sphere(e[2], e[0], e[1])
    with pytest.raises(DomainError):
        project_sphere(-e[0], e[0], e[1])
    # on the manifold |arg| < 1 always holds; the guard catches corrupted input
    with pytest.raises(DomainError):
        project_hyperboloid(np.array([1.0, 2.0, 0.0]), e[0], e[1])
    assert project(S, e[0], e[0], e[1]).signed_coordinate == 0.0
    assert project(H, e[0], e[0], e[1]).signed_coordinate == 0.0


def test_geodesic_subspace_validation():
    S = Sphere(2)
    e = np.eye(3)
    g = GeodesicSubspace.from_vector(S, e[0], 3 * e[1])
    assert np.allclose(g.direction, e[1])
    with pytest.raises(DomainError):
        GeodesicSubspace.from_vector(S, e[0], np.zeros(3))
    with pytest.raises(InvalidArgumentError):
        GeodesicSubspace.from_vector(S, e[0], e[0])


# -- codimension-one descent -------------------------------------------------------

@pytest.mark.parametrize("M", [Sphere(2), Sphere(5), Sphere(10),
                               Hyperboloid(2), Hyperboloid(5), Hyperboloid(10)], ids=repr)
def test_descent_orthogonality(M, rng):
    mu = near(M, rng, M.base_point(), 1.0)
    for _ in range(10):
        v = unit_tangent(M, mu, rng)
        X = near(M, rng, mu, 1.2, 30)
        Xd = descend_codim1(M, X, mu, v)
        assert np.max(np.abs(M.inner(M.log(mu, Xd), v))) <= 1e-8
        assert np.max(np.abs(M.constraint_residual(Xd))) <= 1e-12


@pytest.mark.parametrize("M", [Sphere(4), Hyperboloid(4)], ids=repr)
def test_descent_on_geodesic_returns_mean(M, rng):
    mu = near(M, rng, M.base_point(), 1.0)
    v = unit_tangent(M, mu, rng)
    X = M.exp(mu, np.linspace(-1.0, 1.0, 7)[:, None] * v)
    out, coord = descend_codim1(M, X, mu, v, return_coordinate=True)
    assert np.allclose(out, mu, atol=1e-12)
    assert np.allclose(coord, np.linspace(-1.0, 1.0, 7), atol=1e-12)


@pytest.mark.parametrize("M", [Sphere(4), Hyperboloid(4)], ids=repr)
def test_descent_fixed_point_and_idempotent(M, rng):
    mu = near(M, rng, M.base_point(), 1.0)
    v = unit_tangent(M, mu, rng)
    w = M.random_tangent(mu, rng)
    w -= M.inner(w, v) * v
    x = M.exp(mu, 0.7 * w / M.norm(w))
    assert np.allclose(descend_codim1(M, x, mu, v)[0], x, atol=1e-12)
    X = near(M, rng, mu, 1.2, 20)
    once = descend_codim1(M, X, mu, v)
    assert np.allclose(descend_codim1(M, once, mu, v), once, atol=1e-10)


def test_descent_on_sphere_is_normalised_orthogonal_projection(rng):
    # on the sphere the descent drops the v-component of x in ambient space
    M = Sphere(6)
    mu = M.random_point(rng)
    v = unit_tangent(M, mu, rng)
    X = near(M, rng, mu, 1.2, 40)
    ref = X - np.outer(X @ v, v)
    ref /= np.linalg.norm(ref, axis=1, keepdims=True)
    assert np.allclose(descend_codim1(M, X, mu, v), ref, atol=1e-12)
