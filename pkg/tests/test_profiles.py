import math

import numpy as np
import pytest

from biharmonic_lab.errors import ConsistencyError, DomainError, SingularityError
from biharmonic_lab.profiles import (
    ProfileJet,
    ProfileKind,
    angle_from_height,
    cylinder_profile,
    gauss_curvature_surface,
    linear_cos_arclength_window,
    linear_cos_k_jet,
    linear_cos_profile,
    load_profile,
    mean_curvature_jet,
    mean_curvature_sphere,
    mean_curvature_surface,
    semiparallel_case3_profile,
    semiparallel_profile,
    shape_spectrum_sphere,
    sine_profile,
    slice_profile,
    table_profile,
    tilt_from_height,
)


def fd_derivative(fn, x, order, h):
    """High-order central finite differences, the jet oracle."""
    if order == 1:
        return (fn(x - 2 * h) - 8 * fn(x - h) + 8 * fn(x + h) - fn(x + 2 * h)) / (12 * h)
    if order == 2:
        return (
            -fn(x - 2 * h) + 16 * fn(x - h) - 30 * fn(x) + 16 * fn(x + h) - fn(x + 2 * h)
        ) / (12 * h * h)
    if order == 3:
        return (fn(x + 2 * h) - 2 * fn(x + h) + 2 * fn(x - h) - fn(x - 2 * h)) / (2 * h**3)
    if order == 4:
        return (
            fn(x + 2 * h) - 4 * fn(x + h) + 6 * fn(x) - 4 * fn(x - h) + fn(x - 2 * h)
        ) / (h**4)
    raise ValueError(order)


def assert_jet_consistent(jet_fn, x, depth=4, h=1e-3, rtol=2e-4):
    value = lambda t: jet_fn(t).value
    jet = jet_fn(x)
    slots = [jet.d1, jet.d2, jet.d3] + ([jet.d4] if depth >= 4 and jet.d4 is not None else [])
    for order, got in enumerate(slots, start=1):
        want = fd_derivative(value, x, order, h)
        assert got == pytest.approx(want, rel=rtol, abs=5e-4), f"d{order} at {x}"


# ---------------------------------------------------------------------------
# angle conventions
# ---------------------------------------------------------------------------


def test_angle_hypersurface_flat_height():
    jet = ProfileJet(0.3, 1.0, 0.0, 0.0, 0.0)
    assert angle_from_height(jet, ProfileKind.SPHERE_HYPERSURFACE) == pytest.approx(math.pi)


def test_angle_surface_cylinder_and_slice():
    h = ProfileJet(0.0, 0.0, 1.0, 0.0, 0.0)
    k = ProfileJet(0.0, 0.5, 0.0, 0.0, 0.0)
    assert angle_from_height(h, ProfileKind.SPHERE_SURFACE, k) == pytest.approx(math.pi / 2)
    h2 = ProfileJet(0.0, 0.0, 0.0, 0.0, 0.0)
    k2 = ProfileJet(0.0, 0.5, 1.0, 0.0, 0.0)
    assert angle_from_height(h2, ProfileKind.SPHERE_SURFACE, k2) == pytest.approx(0.0)


def test_angle_surface_requires_arclength_slope():
    h = ProfileJet(0.0, 0.0, 0.5, 0.0, 0.0)
    k = ProfileJet(0.0, 0.5, 1.2, 0.0, 0.0)
    with pytest.raises(DomainError):
        angle_from_height(h, ProfileKind.SPHERE_SURFACE, k)


# ---------------------------------------------------------------------------
# hypersurface curvature data
# ---------------------------------------------------------------------------


def test_shape_spectrum_examples():
    s = math.pi / 3
    umbilic = ProfileJet(s, math.sin(s), math.cos(s), -math.sin(s), -math.cos(s))
    spec = shape_spectrum_sphere(umbilic, s, 3)
    assert spec.lam == pytest.approx(0.5)
    assert spec.mu == pytest.approx(0.5)
    assert spec.mu_multiplicity == 2

    flat = ProfileJet(math.pi / 4, -1.0, 0.0, 0.0, 0.0)
    spec = shape_spectrum_sphere(flat, math.pi / 4, 2)
    assert spec.lam == 0.0
    assert spec.mu == pytest.approx(-1.0)

    zero = ProfileJet(1.0, 0.0, 0.0, 0.0, 0.0)
    spec = shape_spectrum_sphere(zero, 1.0, 4)
    assert spec.lam == spec.mu == 0.0
    assert spec.squared_norm == 0.0


def test_shape_spectrum_pole_singularity():
    jet = ProfileJet(0.0, 0.5, 0.0, 0.0, 0.0)
    with pytest.raises(SingularityError):
        shape_spectrum_sphere(jet, 1e-9, 3)


def test_mean_curvature_sphere_examples():
    flat = ProfileJet(math.pi / 4, -1.0, 0.0, 0.0, 0.0)
    assert mean_curvature_sphere(flat, math.pi / 4, 2) == pytest.approx(-0.5)
    zero = ProfileJet(1.0, 0.0, 0.0, 0.0, 0.0)
    assert mean_curvature_sphere(zero, 1.0, 5) == 0.0
    s = math.pi / 3
    umbilic = ProfileJet(s, math.sin(s), math.cos(s), -math.sin(s), -math.cos(s))
    assert mean_curvature_sphere(umbilic, s, 3) == pytest.approx(0.5)


def test_mean_curvature_jet_matches_finite_differences():
    m = 3

    def u_fn(s):
        return ProfileJet(s, 0.3 * math.sin(s), 0.3 * math.cos(s), -0.3 * math.sin(s),
                          -0.3 * math.cos(s))

    def H(s):
        return mean_curvature_sphere(u_fn(s), s, m)

    for s in (0.7, 1.2, 2.0):
        jet = mean_curvature_jet(u_fn(s), s, m)
        assert jet.value == pytest.approx(H(s), rel=1e-12)
        assert jet.d1 == pytest.approx(fd_derivative(H, s, 1, 1e-4), rel=1e-6)
        assert jet.d2 == pytest.approx(fd_derivative(H, s, 2, 1e-3), rel=1e-5)


def test_trace_identity_consistency():
    rng = np.random.default_rng(3)
    for _ in range(50):
        s = rng.uniform(0.3, 2.7)
        if abs(math.sin(s)) < 0.1:
            continue
        m = int(rng.integers(2, 7))
        jet = ProfileJet(s, *rng.uniform(-1, 1, 4))
        spec = shape_spectrum_sphere(jet, s, m)
        H = mean_curvature_sphere(jet, s, m)
        assert H == pytest.approx((spec.lam + (m - 1) * spec.mu) / m, abs=1e-12)


# ---------------------------------------------------------------------------
# surface curvature data
# ---------------------------------------------------------------------------


def jet_const(x, value):
    return ProfileJet(x, value, 0.0, 0.0, 0.0, 0.0)


def test_mean_curvature_surface_examples():
    cyl_k = jet_const(0.0, math.pi / 4)
    cyl_h = ProfileJet(0.0, 0.0, 1.0, 0.0, 0.0)
    assert mean_curvature_surface(cyl_k, cyl_h) == pytest.approx(-0.5)

    slice_k = ProfileJet(0.0, 0.4, 1.0, 0.0, 0.0)
    slice_h = jet_const(0.0, 2.0)
    assert mean_curvature_surface(slice_k, slice_h) == 0.0

    # 45-degree profile at k = pi/6: frozen from -tan(pi/6) / (2 sqrt(2)) * ... = -1/(2 sqrt 6)
    r2 = 1 / math.sqrt(2)
    k = ProfileJet(0.0, math.pi / 6, r2, 0.0, 0.0)
    h = ProfileJet(0.0, 0.0, r2, 0.0, 0.0)
    assert mean_curvature_surface(k, h) == pytest.approx(-1.0 / (2.0 * math.sqrt(6.0)))
    assert mean_curvature_surface(k, h) == pytest.approx(-0.2041241452319315)


def test_mean_curvature_surface_static_profile_needs_flat_height():
    k = jet_const(0.0, math.pi / 4)
    h = ProfileJet(0.0, 0.0, 1.0, 0.5, 0.0)
    with pytest.raises(SingularityError):
        mean_curvature_surface(k, h)


def test_gauss_curvature_surface_examples():
    slice_k = ProfileJet(0.0, 0.4, 1.0, 0.0, 0.0)
    slice_h = jet_const(0.0, 2.0)
    assert gauss_curvature_surface(slice_k, slice_h) == pytest.approx(1.0)

    cyl_k = jet_const(0.0, math.pi / 4)
    cyl_h = ProfileJet(0.0, 0.0, 1.0, 0.0, 0.0)
    assert gauss_curvature_surface(cyl_k, cyl_h) == pytest.approx(0.0, abs=1e-15)


def test_gauss_curvature_vanishes_on_linear_cos_family():
    rng = np.random.default_rng(11)
    count = 0
    while count < 10:
        A = rng.uniform(-0.8, 0.8)
        B = rng.uniform(-0.3, 0.6)
        if abs(A) < 0.05:
            continue
        try:
            lo, hi = linear_cos_arclength_window(A, B)
        except DomainError:
            continue
        profile = linear_cos_profile(A, B)
        for r in np.linspace(lo + 1e-6, hi - 1e-6, 7):
            K = gauss_curvature_surface(profile.k_jet(float(r)), profile.h_jet(float(r)))
            assert abs(K) < 1e-12
        count += 1


def test_hyperbolic_gauss_curvature_vanishes_on_linear_sinh_family():
    A, B = 0.5, 0.2
    for r in np.linspace(0.3, 2.0, 7):
        w = A * r + B
        q = 1.0 + w * w
        k = ProfileJet(r, math.asinh(w), A * q**-0.5, -A * A * w * q**-1.5, 0.0)
        p2 = 1.0 - k.d1**2
        h1 = math.sqrt(p2)
        h2 = -k.d1 * k.d2 / h1
        h = ProfileJet(r, 0.0, h1, h2, 0.0)
        K = gauss_curvature_surface(k, h, ProfileKind.HYPERBOLIC_SURFACE)
        assert abs(K) < 1e-13


# ---------------------------------------------------------------------------
# semi-parallel profile family
# ---------------------------------------------------------------------------


def test_semiparallel_constant_branch():
    jet = semiparallel_case3_profile(0.0, 0.9)
    assert jet.value == pytest.approx(1.0)
    assert jet.d1 == pytest.approx(0.0, abs=1e-15)


def test_semiparallel_value_example():
    jet = semiparallel_case3_profile(-0.25, math.pi / 4)
    assert jet.value == pytest.approx(math.sqrt(0.5))


def test_semiparallel_defining_relation():
    rng = np.random.default_rng(5)
    for _ in range(30):
        C = rng.uniform(-0.4, 2.0)
        s = rng.uniform(0.2, 1.3)
        if abs(s - math.pi / 2) < 0.05:
            continue
        try:
            jet = semiparallel_case3_profile(C, s)
        except DomainError:
            continue
        lhs = jet.value * jet.d1 / math.tan(s)
        assert lhs == pytest.approx(jet.value**2 - 1.0, abs=1e-10)


def test_semiparallel_domain_error():
    with pytest.raises(DomainError):
        semiparallel_case3_profile(-0.5, math.pi / 4)  # 1 + C sec^2 = 0


def test_semiparallel_jets_match_finite_differences():
    for C, s in ((1.0, 0.9), (-0.2, 0.5), (0.3, 2.2)):
        assert_jet_consistent(
            lambda t: semiparallel_case3_profile(C, t), s, depth=3, h=1e-3
        )


# ---------------------------------------------------------------------------
# built-in families: jets against the finite-difference oracle
# ---------------------------------------------------------------------------


def test_linear_cos_k_jets_match_finite_differences():
    for A, B, r in ((0.5, 0.1, 0.6), (-0.3, 0.4, 0.5), (1.0, 0.0, 0.55)):
        assert_jet_consistent(lambda t: linear_cos_k_jet(A, B, t), r, depth=4, h=1e-3)


def test_sine_profile_jets_match_finite_differences():
    prof = sine_profile(0.25, frequency=1.3, phase=0.4, offset=0.7,
                        kind=ProfileKind.SPHERE_SURFACE)
    for r in (0.2, 0.9, 1.7):
        assert_jet_consistent(prof.k_jet, r, depth=4, h=1e-3)
        assert_jet_consistent(prof.h_jet, r, depth=3, h=1e-3)


def test_arclength_constraint_on_families():
    profiles = [
        sine_profile(0.25, frequency=1.3, offset=0.7, kind=ProfileKind.SPHERE_SURFACE),
        linear_cos_profile(0.5, 0.1),
        cylinder_profile(),
        slice_profile(),
    ]
    for profile in profiles:
        if profile.label.startswith("linear-cos"):
            lo, hi = linear_cos_arclength_window(0.5, 0.1)
            grid = np.linspace(lo + 1e-6, hi - 1e-6, 9)
        else:
            grid = np.linspace(0.1, 1.2, 9)
        for r in grid:
            assert abs(profile.arclength_defect(float(r))) < 1e-12


def test_tilt_sign_convention_consistency():
    # lam = -alpha'(s) cos(alpha) and mu = -sin(alpha) cot(s) reproduce the
    # tilt-jet spectrum for randomized smooth height profiles
    rng = np.random.default_rng(17)
    for _ in range(10):
        a, b, w, v = rng.uniform(0.2, 0.8, 4)

        def h_fn(s):
            return ProfileJet(
                s,
                a + b * s + w * math.sin(v * s),
                b + w * v * math.cos(v * s),
                -w * v * v * math.sin(v * s),
                -w * v**3 * math.cos(v * s),
            )

        def alpha_fn(s):
            return angle_from_height(h_fn(s), ProfileKind.SPHERE_HYPERSURFACE)

        s = float(rng.uniform(0.5, 2.2))
        if abs(math.sin(s)) < 0.2:
            continue
        u = tilt_from_height(h_fn(s))
        spec = shape_spectrum_sphere(u, s, 3)
        alpha = alpha_fn(s)
        d_alpha = fd_derivative(alpha_fn, s, 1, 1e-5)
        assert spec.lam == pytest.approx(-d_alpha * math.cos(alpha), rel=1e-6, abs=1e-9)
        assert spec.mu == pytest.approx(
            -math.sin(alpha) / math.tan(s), rel=1e-12, abs=1e-12
        )
        assert u.value == pytest.approx(-math.sin(alpha), rel=1e-12)


# ---------------------------------------------------------------------------
# scenario loading
# ---------------------------------------------------------------------------


def test_load_profile_families():
    cyl = load_profile({"expr": "cylinder", "params": {"k0": 0.7}})
    assert cyl.k_jet(1.0).value == 0.7
    semi = load_profile({"expr": "semiparallel-case3", "params": {"C": 1.0}})
    assert semi.kind is ProfileKind.SPHERE_HYPERSURFACE
    sine = load_profile(
        {"kind": "sphere_surface", "expr": "sine-profile", "params": {"amplitude": 0.2}}
    )
    assert sine.kind is ProfileKind.SPHERE_SURFACE
    with pytest.raises(DomainError):
        load_profile({"expr": "nonesuch"})
    with pytest.raises(DomainError):
        load_profile({"params": {}})


def test_load_profile_file_round_trip(tmp_path):
    import json

    path = tmp_path / "scenario.json"
    path.write_text(json.dumps({"expr": "slice", "params": {"height": 1.5}}))
    from biharmonic_lab.profiles import load_profile_file

    profile = load_profile_file(str(path))
    assert profile.h_jet(0.3).value == 1.5


def test_table_profile_uncertified():
    s = np.linspace(0.2, 1.4, 25)
    prof = table_profile(s, np.sin(s))
    assert prof.certified is False
    assert prof.u_jet(0.7).value == pytest.approx(math.sin(0.7), abs=1e-6)


def test_profile_kind_mismatch_errors():
    semi = semiparallel_profile(1.0)
    with pytest.raises(DomainError):
        semi.k_jet(0.4)
    cyl = cylinder_profile()
    with pytest.raises(DomainError):
        cyl.u_jet(0.4)


def test_jet_requires_finite_entries():
    with pytest.raises(ConsistencyError):
        ProfileJet(0.0, math.nan, 0.0, 0.0, 0.0)
