import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ccmpga import DomainError, Hyperboloid, InvalidArgumentError, Sphere, minkowski_inner
from ccmpga.manifolds import make_manifold

from oracles import hyperboloid_dist, lorentz, sphere_dist

E = np.eye(3)


def pairs(M, rng, n, scale):
    P = np.array([M.random_point(rng, scale=scale) for _ in range(n)])
    Q = np.array([M.random_point(rng, center=p, scale=scale) for p in P])
    return P, Q


# -- minkowski_inner -------------------------------------------------------------

@pytest.mark.parametrize("x, y, expected", [
    ((1, 0, 0), (1, 0, 0), -1.0),
    ((0, 1, 0), (0, 0, 1), 0.0),
    ((math.cosh(1), math.sinh(1), 0), (1, 0, 0), -math.cosh(1)),
])
def test_minkowski_inner_examples(x, y, expected):
    assert minkowski_inner(x, y) == pytest.approx(expected, abs=1e-15)


def test_minkowski_inner_rejects_mismatch():
    with pytest.raises(InvalidArgumentError):
        minkowski_inner([1, 0, 0], [1, 0])
    with pytest.raises(InvalidArgumentError):
        minkowski_inner([1.0], [1.0])


# -- distance ------------------------------------------------------------------

def test_distance_examples():
    S, H = Sphere(2), Hyperboloid(2)
    assert S.dist(E[0], E[0]) == 0.0
    assert S.dist(E[0], E[1]) == pytest.approx(math.pi / 2, abs=1e-15)
    q = np.array([math.cosh(1), math.sinh(1), 0.0])
    assert H.dist(E[0], q) == pytest.approx(1.0, abs=1e-15)


def test_distance_rejects_model_mismatch():
    with pytest.raises(InvalidArgumentError):
        Sphere(2).dist(np.eye(4)[0], E[0])
    with pytest.raises(InvalidArgumentError):
        make_manifold("torus", 2)


@pytest.mark.parametrize("M", [Sphere(5), Hyperboloid(5)], ids=repr)
def test_distance_matches_textbook_formula(M, rng):
    P, Q = pairs(M, rng, 300, 0.6)
    ref = sphere_dist(P, Q) if M.curvature > 0 else hyperboloid_dist(P, Q)
    # textbook formulas lose precision near 0, so compare well-separated pairs
    far = ref > 1e-3
    assert np.allclose(M.dist(P, Q)[far], ref[far], rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("M", [Sphere(2), Sphere(5), Sphere(10),
                               Hyperboloid(2), Hyperboloid(5), Hyperboloid(10)], ids=repr)
def test_metric_axioms(M, rng):
    n = 1000
    P, Q = pairs(M, rng, n, 0.5)
    R = np.array([M.random_point(rng, center=q, scale=0.5) for q in Q])
    dpq, dqp = M.dist(P, Q), M.dist(Q, P)
    assert np.all(dpq >= 0)
    assert np.max(np.abs(dpq - dqp)) <= 1e-12
    assert np.all(M.dist(P, R) <= dpq + M.dist(Q, R) + 1e-10)
    assert np.all(M.dist(P, P) == 0)


# -- exp / log -----------------------------------------------------------------

def test_exp_examples():
    S, H = Sphere(2), Hyperboloid(2)
    assert np.array_equal(S.exp(E[0], np.zeros(3)), E[0])
    assert np.allclose(S.exp(E[0], (math.pi / 2) * E[1]), E[1], atol=1e-15)
    assert np.allclose(H.exp(E[0], E[1]), [math.cosh(1), math.sinh(1), 0], atol=1e-15)
    assert np.array_equal(S.exp(E[0], 1e-13 * E[1]), E[0])


def test_log_examples():
    S = Sphere(2)
    assert np.array_equal(S.log(E[0], E[0]), np.zeros(3))
    assert np.allclose(S.log(E[0], E[1]), (math.pi / 2) * E[1], atol=1e-15)
    assert np.array_equal(Hyperboloid(2).log(E[0], E[0]), np.zeros(3))


def test_log_antipodal_raises():
    with pytest.raises(DomainError):
        Sphere(2).log(E[0], -E[0])
    with pytest.raises(DomainError):
        Sphere(2).transport(E[0], -E[0], E[1])


def test_log_small_angle_series():
    S, H = Sphere(3), Hyperboloid(3)
    for M in (S, H):
        p = M.base_point()
        v = np.array([0, 1e-9, -2e-9, 0.5e-9])
        q = M.exp(p, v)
        assert np.allclose(M.log(p, q), v, rtol=1e-6, atol=1e-20)


@pytest.mark.parametrize("M", [Sphere(10), Hyperboloid(10)], ids=repr)
def test_exp_log_roundtrip(M, rng):
    P, Q = pairs(M, rng, 500, 0.8)
    V = M.log(P, Q)
    assert np.max(np.abs(M.exp(P, V) - Q)) <= 1e-10
    assert np.allclose(M.norm(V), M.dist(P, Q), atol=1e-12)
    assert np.max(np.abs(M.inner(P, V))) <= 1e-10


@given(st.integers(1, 8), st.floats(0.0, 3.0), st.integers(0, 2 ** 32 - 1))
def test_exp_distance_equals_norm(dim, length, seed):
    rng = np.random.default_rng(seed)
    for M in (Sphere(dim), Hyperboloid(dim)):
        p = M.random_point(rng, scale=0.7)
        u = M.random_tangent(p, rng)
        if M.norm(u) < 1e-6:
            continue
        v = u / M.norm(u) * length
        q = M.exp(p, v)
        assert abs(M.constraint_residual(q)) <= 1e-12
        assert M.dist(p, q) == pytest.approx(length, abs=1e-9 * max(1.0, length))


# -- parallel transport ------------------------------------------------------------

def test_transport_examples():
    S = Sphere(2)
    w = E[2]
    assert np.array_equal(S.transport(E[0], E[0], E[1]), E[1])
    assert np.allclose(S.transport(E[0], E[1], w), w, atol=1e-15)
    out = S.transport(E[0], E[1], E[1])
    assert np.allclose(out, -E[0], atol=1e-15)
    assert abs(S.inner(out, E[1])) < 1e-15


@pytest.mark.parametrize("M", [Sphere(2), Sphere(5), Sphere(10),
                               Hyperboloid(2), Hyperboloid(5), Hyperboloid(10)], ids=repr)
def test_transport_preserves_gram(M, rng):
    for _ in range(100):
        p = M.random_point(rng, scale=0.6)
        q = M.random_point(rng, center=p, scale=0.6)
        W = np.array([M.random_tangent(p, rng) for _ in range(3)])
        T = M.transport(p, q, W)
        G0 = M.inner(W[:, None, :], W[None, :, :])
        G1 = M.inner(T[:, None, :], T[None, :, :])
        assert np.max(np.abs(G0 - G1)) <= 1e-10
        assert np.max(np.abs(M.inner(q, T))) <= 1e-10
        assert np.max(np.abs(M.transport(q, p, T) - W)) <= 1e-9
        # the geodesic velocity is carried to the geodesic velocity
        u = M.log(p, q)
        assert np.allclose(M.transport(p, q, u), -M.log(q, p), atol=1e-10)


def test_points_satisfy_constraint(rng):
    for M in (Sphere(4), Hyperboloid(4)):
        X = np.array([M.random_point(rng, scale=1.5) for _ in range(200)])
        assert np.max(np.abs(M.constraint_residual(X))) <= 1e-12
        M.check_point(X)


def test_check_point_and_tangent():
    H = Hyperboloid(2)
    with pytest.raises(InvalidArgumentError):
        H.check_point(-E[0])
    with pytest.raises(InvalidArgumentError):
        Sphere(2).check_point([1.0, 1.0, 0.0])
    with pytest.raises(InvalidArgumentError):
        Sphere(2).check_tangent(E[0], E[0])
    assert np.array_equal(H.check_tangent(E[0], E[1]), E[1])


def test_tangent_basis_orthonormal(rng):
    for M in (Sphere(6), Hyperboloid(6)):
        p = M.random_point(rng, scale=1.0)
        B = M.tangent_basis(p)
        assert B.shape == (6, 7)
        assert np.allclose(M.inner(B[:, None, :], B[None, :, :]), np.eye(6), atol=1e-12)
        assert np.max(np.abs(M.inner(p, B))) < 1e-12


def test_hyperboloid_tangents_are_spacelike(rng):
    H = Hyperboloid(3)
    p = H.random_point(rng)
    v = H.to_tangent(p, rng.standard_normal(4))
    assert H.inner(v, v) >= 0


def test_manifolds_hashable_and_equal():
    assert Sphere(3) == Sphere(3)
    assert Sphere(3) != Hyperboloid(3)
    assert len({Sphere(2), Sphere(2), Hyperboloid(2)}) == 2
    assert lorentz(E[0], E[0]) == -1.0
