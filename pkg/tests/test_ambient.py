import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biharmonic_lab.ambient import (
    AmbientSpace,
    AmbientVector,
    NormalDecomposition,
    curvature_tensor,
    ricci_normal,
    ricci_tangent_coefficient,
    vertical_field,
)
from biharmonic_lab.errors import ConsistencyError


def brute_force_curvature(space, x, y, z):
    """Independent term-by-term expansion of the product curvature tensor."""
    et = vertical_field(space)
    g = space.inner
    terms = [
        g(y, z) * x,
        -g(x, z) * y,
        -(g(y, et) * g(z, et)) * x,
        (g(x, et) * g(z, et)) * y,
        (g(x, z) * g(y, et)) * et,
        -(g(y, z) * g(x, et)) * et,
    ]
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return float(space.c) * out


def random_vector(space, rng):
    return AmbientVector(rng.standard_normal(space.horizontal_dim), rng.standard_normal())


@pytest.mark.parametrize(
    "c,m,alpha,expected",
    [(1, 2, math.pi / 2, 1.0), (-1, 3, 0.0, 0.0), (1, 5, math.pi / 2, 4.0)],
)
def test_ricci_normal_examples(c, m, alpha, expected):
    assert ricci_normal(AmbientSpace(c, m), alpha) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize(
    "c,m,alpha,expected",
    [
        (1, 2, math.pi / 2, 0.0),
        (1, 4, 0.0, -3.0),
        # direct evaluation of -c (m-1) cos(alpha)
        (-1, 3, math.pi, -2.0),
    ],
)
def test_ricci_tangent_examples(c, m, alpha, expected):
    assert ricci_tangent_coefficient(AmbientSpace(c, m), alpha) == pytest.approx(
        expected, abs=1e-14
    )


@given(alpha=st.floats(-10.0, 10.0), c=st.sampled_from([-1, 0, 1]), m=st.integers(2, 9))
@settings(deadline=None, max_examples=60)
def test_ricci_normalization_identity(alpha, c, m):
    space = AmbientSpace(c, m)
    total = ricci_normal(space, alpha) + c * (m - 1) * math.cos(alpha) ** 2
    assert total == pytest.approx(c * (m - 1), abs=1e-12)


def test_curvature_flat_ambient_vanishes():
    space = AmbientSpace(0, 3)
    rng = np.random.default_rng(0)
    x, y, z = (random_vector(space, rng) for _ in range(3))
    out = curvature_tensor(space, x, y, z)
    assert np.all(out.horizontal == 0.0) and out.vertical == 0.0


def test_curvature_equal_arguments_vanish():
    space = AmbientSpace(1, 3)
    rng = np.random.default_rng(1)
    x = random_vector(space, rng)
    z = random_vector(space, rng)
    out = curvature_tensor(space, x, x, z)
    assert np.max(np.abs(out.horizontal)) < 1e-14 and abs(out.vertical) < 1e-14


def test_curvature_horizontal_orthonormal_case():
    # c = 1, X, Y horizontal orthonormal, Z = Y: only the first term survives
    space = AmbientSpace(1, 3)
    x = AmbientVector(np.array([1.0, 0.0, 0.0, 0.0]), 0.0)
    y = AmbientVector(np.array([0.0, 1.0, 0.0, 0.0]), 0.0)
    out = curvature_tensor(space, x, y, y)
    brute = brute_force_curvature(space, x, y, y)
    assert np.allclose(out.horizontal, x.horizontal, atol=1e-15)
    assert out.vertical == pytest.approx(0.0, abs=1e-15)
    assert np.allclose(out.horizontal, brute.horizontal, atol=1e-15)


@pytest.mark.parametrize("c", [-1, 0, 1])
@pytest.mark.parametrize("m", [2, 4])
def test_curvature_matches_brute_force_expansion(c, m):
    space = AmbientSpace(c, m)
    rng = np.random.default_rng(42 + m + c)
    for _ in range(25):
        x, y, z = (random_vector(space, rng) for _ in range(3))
        got = curvature_tensor(space, x, y, z)
        want = brute_force_curvature(space, x, y, z)
        assert np.allclose(got.horizontal, want.horizontal, atol=1e-12)
        assert got.vertical == pytest.approx(want.vertical, abs=1e-12)


@given(seed=st.integers(0, 10_000))
@settings(deadline=None, max_examples=40)
def test_curvature_antisymmetry(seed):
    space = AmbientSpace(1, 3)
    rng = np.random.default_rng(seed)
    x, y, z = (random_vector(space, rng) for _ in range(3))
    fwd = curvature_tensor(space, x, y, z)
    bwd = curvature_tensor(space, y, x, z)
    assert np.allclose(fwd.horizontal, -bwd.horizontal, atol=1e-12)
    assert fwd.vertical == pytest.approx(-bwd.vertical, abs=1e-12)


def _orthonormal_frame_with_normal(space, cos_alpha, rng):
    """Random orthonormal frame (e_1..e_m, xi) of the product tangent space.

    Base point: the pole of the space-form factor, where the tangent space
    is spanned by the last m horizontal directions plus the vertical one
    and the induced inner product is Euclidean for both signs of c.
    """
    m = space.m
    basis = []
    for i in range(m):
        h = np.zeros(space.horizontal_dim)
        h[i + 1] = 1.0
        basis.append(AmbientVector(h, 0.0))
    basis.append(vertical_field(space))
    w = rng.standard_normal(m)
    w /= np.linalg.norm(w)
    sin_alpha = math.sqrt(1.0 - cos_alpha**2)
    xi_coords = np.concatenate([sin_alpha * w, [cos_alpha]])
    mat = np.column_stack([xi_coords, rng.standard_normal((m + 1, m))])
    q, _ = np.linalg.qr(mat)

    def assemble(coords):
        combo = AmbientVector(np.zeros(space.horizontal_dim), 0.0)
        for weight, b in zip(coords, basis):
            combo = combo + float(weight) * b
        return combo

    xi = assemble(xi_coords)
    frame = [assemble(q[:, j]) for j in range(1, m + 1)]
    return frame, xi


@pytest.mark.parametrize("c", [-1, 1])
@pytest.mark.parametrize("m", [2, 3, 5])
def test_ricci_contraction_consistency(c, m):
    space = AmbientSpace(c, m)
    rng = np.random.default_rng(7 * m + c)
    for _ in range(10):
        cos_alpha = rng.uniform(-0.99, 0.99)
        frame, xi = _orthonormal_frame_with_normal(space, cos_alpha, rng)
        total = sum(
            space.inner(curvature_tensor(space, e, xi, xi), e) for e in frame
        )
        alpha = math.acos(cos_alpha)
        assert total == pytest.approx(ricci_normal(space, alpha), abs=1e-10)


def test_normal_decomposition_invariant():
    NormalDecomposition(cos_alpha=0.6, tangent_norm=0.8)
    with pytest.raises(ConsistencyError):
        NormalDecomposition(cos_alpha=0.6, tangent_norm=0.9)
    with pytest.raises(ConsistencyError):
        NormalDecomposition(cos_alpha=1.5, tangent_norm=0.0)


def test_space_validation():
    with pytest.raises(ConsistencyError):
        AmbientSpace(2, 3)
    with pytest.raises(ConsistencyError):
        AmbientSpace(1, 1)
