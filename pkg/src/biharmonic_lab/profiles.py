"""Rotation profiles and their closed-form curvature data.

Rotation hypersurfaces of the sphere-line product are described by a tilt
function u(s) = -sin(alpha(s)) along the profile parameter; rotation
surfaces of the two-dimensional products are described by an arclength
profile (k(r), h(r)) with k'^2 + h'^2 = 1, where k is the polar coordinate
on the surface factor and h the height.  Everything here is evaluated from
pointwise jets (value plus the first three derivatives, with an optional
fourth slot used by the fourth-order surface system).

Profiles used for residual certification must be closed form: every
built-in family carries analytic derivatives.  Sampled-table profiles are
cubic-interpolated and flagged uncertified; they are only admissible for
oracle comparisons.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import ConsistencyError, DomainError, SingularityError

__all__ = [
    "ProfileKind",
    "ProfileJet",
    "ShapeSpectrum",
    "RotationProfile",
    "SINGULAR_TOL",
    "angle_from_height",
    "tilt_from_height",
    "shape_spectrum_sphere",
    "mean_curvature_sphere",
    "mean_curvature_jet",
    "mean_curvature_surface",
    "gauss_curvature_surface",
    "semiparallel_case3_profile",
    "cylinder_profile",
    "slice_profile",
    "linear_cos_profile",
    "linear_cos_k_jet",
    "linear_cos_arclength_window",
    "semiparallel_profile",
    "sine_profile",
    "table_profile",
    "load_profile",
    "load_profile_file",
]

# Evaluation is refused within this distance of coordinate singularities
# (zeros of sin s, cos k, sinh k, k') instead of extrapolating across them.
SINGULAR_TOL = 1e-6


class ProfileKind(str, Enum):
    SPHERE_HYPERSURFACE = "sphere_hypersurface"
    SPHERE_SURFACE = "sphere_surface"
    HYPERBOLIC_SURFACE = "hyperbolic_surface"


@dataclass(frozen=True)
class ProfileJet:
    """Value and derivatives of a profile function at one parameter point."""

    s: float
    value: float
    d1: float
    d2: float
    d3: float
    d4: Optional[float] = None

    def __post_init__(self) -> None:
        entries = [self.s, self.value, self.d1, self.d2, self.d3]
        if self.d4 is not None:
            entries.append(self.d4)
        if not all(math.isfinite(v) for v in entries):
            raise ConsistencyError(f"jet entries must be finite: {self}")

    def require_d4(self) -> float:
        if self.d4 is None:
            raise ConsistencyError("fourth derivative required but not supplied")
        return self.d4


@dataclass(frozen=True)
class ShapeSpectrum:
    """Principal curvatures of a rotation hypersurface.

    lam is the curvature along the profile direction, mu the (m-1)-fold
    curvature of the rotation orbits.
    """

    lam: float
    mu: float
    mu_multiplicity: int

    @property
    def squared_norm(self) -> float:
        return self.lam**2 + self.mu_multiplicity * self.mu**2


@dataclass(frozen=True)
class RotationProfile:
    """A rotation profile given by jet callables.

    For the hypersurface kind ``u_or_k`` is the tilt function u(s); for the
    surface kinds it is the polar profile k(r) and ``h`` the height h(r).
    ``h_value`` optionally supplies the height value for immersion sampling
    when only derivative data is closed form.
    """

    kind: ProfileKind
    u_or_k: Callable[[float], ProfileJet]
    h: Optional[Callable[[float], ProfileJet]] = None
    label: str = ""
    certified: bool = True
    # False when the height jets carry derivatives only (arclength families):
    # immersion sampling must then integrate h' for the height value.
    h_value_known: bool = True

    def u_jet(self, s: float) -> ProfileJet:
        if self.kind is not ProfileKind.SPHERE_HYPERSURFACE:
            raise DomainError(f"{self.kind.value} profile carries no tilt function")
        return self.u_or_k(s)

    def k_jet(self, r: float) -> ProfileJet:
        if self.kind is ProfileKind.SPHERE_HYPERSURFACE:
            raise DomainError("hypersurface profile carries no polar function")
        return self.u_or_k(r)

    def h_jet(self, r: float) -> ProfileJet:
        if self.h is None:
            raise DomainError(f"profile {self.label!r} carries no height function")
        return self.h(r)

    def arclength_defect(self, r: float) -> float:
        """k'^2 + h'^2 - 1 at r; zero for genuine arclength surface profiles."""
        return self.k_jet(r).d1 ** 2 + self.h_jet(r).d1 ** 2 - 1.0


def angle_from_height(
    h_jet: ProfileJet,
    kind: ProfileKind,
    k_jet: Optional[ProfileJet] = None,
) -> float:
    """Tilt angle alpha of the profile frame, in the kind's sign convention.

    Hypersurface convention: cos(alpha) = -1/sqrt(1 + h'^2), sin(alpha) =
    h'/sqrt(1 + h'^2).  Surface conventions: cos(alpha) = k' and
    sin(alpha) = h', which requires the arclength k-jet alongside.
    """
    if kind is ProfileKind.SPHERE_HYPERSURFACE:
        speed = math.sqrt(1.0 + h_jet.d1**2)
        return math.atan2(h_jet.d1 / speed, -1.0 / speed)
    if k_jet is None:
        raise DomainError("surface kinds need the polar jet to orient the angle")
    if abs(k_jet.d1) > 1.0 + SINGULAR_TOL:
        raise DomainError(f"|k'| = {abs(k_jet.d1)} exceeds 1: not an arclength profile")
    return math.atan2(h_jet.d1, min(1.0, max(-1.0, k_jet.d1)))


def tilt_from_height(h_jet: ProfileJet) -> ProfileJet:
    """Tilt jet u = -h'/sqrt(1 + h'^2) from a height jet (two derivatives)."""
    p = h_jet.d1
    q = 1.0 + p * p
    u = -p / math.sqrt(q)
    u1 = -h_jet.d2 / q**1.5
    u2 = -h_jet.d3 / q**1.5 + 3.0 * p * h_jet.d2**2 / q**2.5
    return ProfileJet(h_jet.s, u, u1, u2, 0.0)


def _check_sin_s(s: float) -> float:
    sin_s = math.sin(s)
    if abs(sin_s) < SINGULAR_TOL:
        raise SingularityError(f"profile parameter s = {s} is within {SINGULAR_TOL} of a pole")
    return sin_s


def shape_spectrum_sphere(u_jet: ProfileJet, s: float, m: int) -> ShapeSpectrum:
    """Principal curvatures of the rotation hypersurface at parameter s.

    lam = u' along the profile direction and mu = u cot(s) with
    multiplicity m - 1 along the orbit directions.
    """
    sin_s = _check_sin_s(s)
    cot_s = math.cos(s) / sin_s
    return ShapeSpectrum(lam=u_jet.d1, mu=u_jet.value * cot_s, mu_multiplicity=m - 1)


def mean_curvature_sphere(u_jet: ProfileJet, s: float, m: int) -> float:
    """Mean curvature H = (u' + (m-1) u cot s) / m of the rotation hypersurface."""
    sin_s = _check_sin_s(s)
    cot_s = math.cos(s) / sin_s
    return (u_jet.d1 + (m - 1) * u_jet.value * cot_s) / m


def mean_curvature_jet(u_jet: ProfileJet, s: float, m: int) -> ProfileJet:
    """Jet (H, H', H'') of the mean curvature along the profile parameter.

    Differentiates H = (u' + (m-1) u cot s)/m twice, so the tilt jet must
    carry three derivatives.
    """
    sin_s = _check_sin_s(s)
    cot = math.cos(s) / sin_s
    csc2 = 1.0 / sin_s**2
    n = m - 1
    h0 = (u_jet.d1 + n * u_jet.value * cot) / m
    h1 = (u_jet.d2 + n * (u_jet.d1 * cot - u_jet.value * csc2)) / m
    h2 = (
        u_jet.d3
        + n * (u_jet.d2 * cot - 2.0 * u_jet.d1 * csc2 + 2.0 * u_jet.value * csc2 * cot)
    ) / m
    return ProfileJet(s, h0, h1, h2, 0.0)


def _surface_trig(k: float, kind: ProfileKind) -> tuple[float, float]:
    """(orbit-curvature factor, its derivative factor) for the surface kinds.

    Returns (w, w') understood as w = tan k for the sphere and w = -coth k
    for the hyperbolic plane, so that the orbit principal curvature is
    always -h' w.
    """
    if kind is ProfileKind.SPHERE_SURFACE:
        if abs(math.cos(k)) < SINGULAR_TOL:
            raise DomainError(f"polar value k = {k} is within {SINGULAR_TOL} of the equator")
        return math.tan(k), 1.0 / math.cos(k) ** 2
    if kind is ProfileKind.HYPERBOLIC_SURFACE:
        if abs(math.sinh(k)) < SINGULAR_TOL:
            raise DomainError(f"polar value k = {k} is within {SINGULAR_TOL} of the axis")
        coth = math.cosh(k) / math.sinh(k)
        return -coth, coth**2 - 1.0
    raise DomainError("surface curvature formulas need a surface kind")


def _profile_principal_curvatures(
    k_jet: ProfileJet, h_jet: ProfileJet, kind: ProfileKind
) -> tuple[float, float]:
    """(lambda_1, lambda_2) of a rotation surface from arclength jets.

    lambda_1 = h''/k' along the profile and lambda_2 = -h' tan k (sphere)
    or h' coth k (hyperbolic plane) along the orbit.  At k' = 0 the
    arclength constraint forces h'' = 0 and the quotient is replaced by its
    limit -h' k'' (zero on a vertical cylinder, where the profile direction
    is a ruling).
    """
    w, _ = _surface_trig(k_jet.value, kind)
    lam2 = -h_jet.d1 * w
    if abs(k_jet.d1) < SINGULAR_TOL:
        if abs(h_jet.d2) > SINGULAR_TOL:
            raise SingularityError(
                "k' = 0 with h'' != 0: the profile is not arclength and the "
                "principal curvature along it is undefined"
            )
        return -h_jet.d1 * k_jet.d2, lam2
    return h_jet.d2 / k_jet.d1, lam2


def mean_curvature_surface(
    k_jet: ProfileJet, h_jet: ProfileJet, kind: ProfileKind = ProfileKind.SPHERE_SURFACE
) -> float:
    """Mean curvature H = (lambda_1 + lambda_2)/2 of a rotation surface."""
    lam1, lam2 = _profile_principal_curvatures(k_jet, h_jet, kind)
    return 0.5 * (lam1 + lam2)


def gauss_curvature_surface(
    k_jet: ProfileJet, h_jet: ProfileJet, kind: ProfileKind = ProfileKind.SPHERE_SURFACE
) -> float:
    """Gauss curvature K = lambda_1 lambda_2 + c cos^2(alpha), cos(alpha) = k'."""
    lam1, lam2 = _profile_principal_curvatures(k_jet, h_jet, kind)
    c = 1.0 if kind is ProfileKind.SPHERE_SURFACE else -1.0
    return lam1 * lam2 + c * k_jet.d1**2


def semiparallel_case3_profile(C: float, s: float) -> ProfileJet:
    """Tilt jet of the semi-parallel rotation family u = sqrt(1 + C sec^2 s).

    The family is the positive branch of u u' cot s = u^2 - 1, the profile
    equation of semi-parallel rotation hypersurfaces that are neither
    umbilical nor cylinders.  Derivatives follow from g := u u' =
    C sec^2(s) tan(s).
    """
    cos_s = math.cos(s)
    _check_sin_s(s)
    if abs(cos_s) < SINGULAR_TOL:
        raise SingularityError(f"s = {s} is within {SINGULAR_TOL} of the equator")
    sec2 = 1.0 / cos_s**2
    t = math.tan(s)
    radicand = 1.0 + C * sec2
    if radicand < SINGULAR_TOL**2:
        raise DomainError(f"1 + C sec^2 s = {radicand} is not positive at s = {s}")
    u = math.sqrt(radicand)
    g = C * sec2 * t
    g1 = C * sec2 * (2.0 * t * t + sec2)
    g2 = C * sec2 * t * (4.0 * t * t + 8.0 * sec2)
    u1 = g / u
    u2 = (g1 - u1 * u1) / u
    u3 = (g2 - 3.0 * u1 * u2) / u
    return ProfileJet(s, u, u1, u2, u3)


# ---------------------------------------------------------------------------
# built-in families
# ---------------------------------------------------------------------------


def _const_jet(s: float, value: float) -> ProfileJet:
    return ProfileJet(s, value, 0.0, 0.0, 0.0, 0.0)


def cylinder_profile(k0: float = math.pi / 4, kind: ProfileKind = ProfileKind.SPHERE_SURFACE) -> RotationProfile:
    """Vertical cylinder: constant polar radius, unit-speed height."""
    return RotationProfile(
        kind=kind,
        u_or_k=lambda r: _const_jet(r, k0),
        h=lambda r: ProfileJet(r, r, 1.0, 0.0, 0.0, 0.0),
        label=f"cylinder(k0={k0})",
    )


def slice_profile(
    height: float = 0.0, kind: ProfileKind = ProfileKind.SPHERE_SURFACE
) -> RotationProfile:
    """Totally geodesic slice: the profile runs along the surface factor."""
    if kind is ProfileKind.SPHERE_HYPERSURFACE:
        return RotationProfile(
            kind=kind,
            u_or_k=lambda s: _const_jet(s, 0.0),
            h=lambda s: _const_jet(s, height),
            label="slice",
        )
    return RotationProfile(
        kind=kind,
        u_or_k=lambda r: ProfileJet(r, r, 1.0, 0.0, 0.0, 0.0),
        h=lambda r: _const_jet(r, height),
        label="slice",
    )


def linear_cos_k_jet(A: float, B: float, r: float) -> ProfileJet:
    """Polar jet of the flat family cos k = A r + B (four derivatives).

    Defined wherever |A r + B| < 1; no arclength constraint is imposed, so
    the jet is usable for the pure profile-factor algebra even where the
    companion height would be imaginary.
    """
    w = A * r + B
    q = 1.0 - w * w
    if q < SINGULAR_TOL:
        raise DomainError(f"cos k = {w} at r = {r} leaves the polar chart")
    k = math.acos(w)
    k1 = -A * q**-0.5
    k2 = -(A**2) * w * q**-1.5
    k3 = -(A**3) * (q**-1.5 + 3.0 * w * w * q**-2.5)
    k4 = -(A**4) * (9.0 * w * q**-2.5 + 15.0 * w**3 * q**-3.5)
    return ProfileJet(r, k, k1, k2, k3, k4)


def linear_cos_arclength_window(A: float, B: float, margin: float = 1e-3) -> tuple[float, float]:
    """r-interval on which cos k = A r + B admits an arclength height.

    Requires cos k in (0, 1) and |k'| <= 1, i.e. (A r + B)^2 <= 1 - A^2.
    Raises DomainError when the window is empty (|A| >= 1 leaves no room).
    """
    if A == 0.0:
        raise DomainError("A = 0 degenerates to a constant profile; use the cylinder family")
    top = 1.0 - A * A - margin
    if top <= margin:
        raise DomainError(f"no arclength window for |A| = {abs(A)}: |k'| exceeds 1 everywhere")
    w_lo, w_hi = margin, math.sqrt(top)
    lo, hi = sorted(((w_lo - B) / A, (w_hi - B) / A))
    return lo, hi


def _arclength_height_jets(k_jet: ProfileJet, branch: float = 1.0) -> ProfileJet:
    """Height jet from an arclength polar jet: h' = branch * sqrt(1 - k'^2).

    The height value itself is not determined pointwise (it is the integral
    of h'); the value slot carries 0 and immersion sampling must integrate
    separately when needed.
    """
    p2 = 1.0 - k_jet.d1**2
    if p2 < SINGULAR_TOL**2:
        raise DomainError(f"|k'| = {abs(k_jet.d1)} too close to 1 for the height branch")
    h1 = branch * math.sqrt(p2)
    h2 = -k_jet.d1 * k_jet.d2 / h1
    h3 = -(k_jet.d2**2 + k_jet.d1 * k_jet.d3 + h2 * h2) / h1
    return ProfileJet(k_jet.s, 0.0, h1, h2, h3)


def linear_cos_profile(A: float, B: float, branch: float = 1.0) -> RotationProfile:
    """Flat rotation-surface family cos k = A r + B with arclength height."""
    lo, hi = linear_cos_arclength_window(A, B)

    def k_fn(r: float) -> ProfileJet:
        if not lo <= r <= hi:
            raise DomainError(f"r = {r} outside the arclength window [{lo}, {hi}]")
        return linear_cos_k_jet(A, B, r)

    return RotationProfile(
        kind=ProfileKind.SPHERE_SURFACE,
        u_or_k=k_fn,
        h=lambda r: _arclength_height_jets(k_fn(r), branch),
        label=f"linear-cos(A={A},B={B})",
        h_value_known=False,
    )


def semiparallel_profile(C: float) -> RotationProfile:
    """Semi-parallel rotation-hypersurface tilt family."""
    return RotationProfile(
        kind=ProfileKind.SPHERE_HYPERSURFACE,
        u_or_k=lambda s: semiparallel_case3_profile(C, s),
        label=f"semiparallel(C={C})",
    )


def sine_profile(
    amplitude: float,
    frequency: float = 1.0,
    phase: float = 0.0,
    offset: float = 0.0,
    kind: ProfileKind = ProfileKind.SPHERE_HYPERSURFACE,
    branch: float = 1.0,
) -> RotationProfile:
    """Sinusoidal profile: the tilt u(s), or the polar k(r), is a sine wave.

    For surface kinds the height jets come from the arclength constraint;
    the amplitude and frequency must keep |k'| < 1 on the range used.
    """

    def jet(x: float) -> ProfileJet:
        a = frequency * x + phase
        return ProfileJet(
            x,
            offset + amplitude * math.sin(a),
            amplitude * frequency * math.cos(a),
            -amplitude * frequency**2 * math.sin(a),
            -amplitude * frequency**3 * math.cos(a),
            amplitude * frequency**4 * math.sin(a),
        )

    if kind is ProfileKind.SPHERE_HYPERSURFACE:
        return RotationProfile(kind=kind, u_or_k=jet, label="sine-profile")
    return RotationProfile(
        kind=kind,
        u_or_k=jet,
        h=lambda r: _arclength_height_jets(jet(r), branch),
        label="sine-profile",
        h_value_known=False,
    )


def table_profile(
    samples_s: "np.ndarray",
    samples_value: "np.ndarray",
    kind: ProfileKind = ProfileKind.SPHERE_HYPERSURFACE,
    height: Optional["np.ndarray"] = None,
) -> RotationProfile:
    """Cubic-spline profile through sampled data.

    Interpolated profiles are never admissible for residual certification
    (interpolation error would masquerade as residual signal), so the
    result is flagged ``certified=False`` and is intended for oracle
    comparisons only.
    """
    from scipy.interpolate import CubicSpline

    spline = CubicSpline(np.asarray(samples_s, float), np.asarray(samples_value, float))

    def jet(x: float) -> ProfileJet:
        return ProfileJet(
            x, float(spline(x)), float(spline(x, 1)), float(spline(x, 2)), float(spline(x, 3))
        )

    h_fn = None
    if height is not None:
        h_spline = CubicSpline(np.asarray(samples_s, float), np.asarray(height, float))

        def h_fn(x: float) -> ProfileJet:
            return ProfileJet(
                x,
                float(h_spline(x)),
                float(h_spline(x, 1)),
                float(h_spline(x, 2)),
                float(h_spline(x, 3)),
            )

    return RotationProfile(kind=kind, u_or_k=jet, h=h_fn, label="table", certified=False)


_FAMILIES = {
    "cylinder": cylinder_profile,
    "slice": slice_profile,
    "linear-cos": linear_cos_profile,
    "semiparallel-case3": semiparallel_profile,
    "sine-profile": sine_profile,
}


def load_profile(spec: dict) -> RotationProfile:
    """Build a profile from a scenario mapping {"kind": ..., "expr": ..., "params": ...}."""
    try:
        expr = spec["expr"]
    except KeyError as exc:
        raise DomainError("profile scenario needs an 'expr' family name") from exc
    params = dict(spec.get("params", {}))
    kind = spec.get("kind")
    if kind is not None:
        params.setdefault("kind", kind)
    if "kind" in params:
        params["kind"] = ProfileKind(params["kind"])
    if expr == "table":
        return table_profile(
            np.asarray(params["s"], float),
            np.asarray(params["value"], float),
            kind=params.get("kind", ProfileKind.SPHERE_HYPERSURFACE),
            height=np.asarray(params["height"], float) if "height" in params else None,
        )
    try:
        family = _FAMILIES[expr]
    except KeyError as exc:
        raise DomainError(f"unknown profile family {expr!r}") from exc
    try:
        return family(**params)
    except TypeError as exc:
        raise DomainError(f"bad parameters for family {expr!r}: {exc}") from exc


def load_profile_file(path: str) -> RotationProfile:
    with open(path, "r", encoding="utf-8") as fh:
        return load_profile(json.load(fh))
