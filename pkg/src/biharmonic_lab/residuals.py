"""Pointwise biharmonicity residuals.

A hypersurface with mean curvature H and shape operator A inside the
product of an m-dimensional space form of curvature c with a line is
biharmonic exactly when

    normal:      Lap(H) - H (|A|^2 - c (m-1) sin^2(alpha)) = 0,
    tangential:  A(grad H) + (m/2) H grad H + c (m-1) cos(alpha) H T = 0,

where alpha is the tilt angle of the unit normal against the vertical
field and T the tangential part of the vertical field.  Every operation in
this module evaluates one specialization of that system from pointwise jet
data: the rotation-hypersurface reduction in the tilt variable u(s), the
fourth-order rotation-surface systems on the two-dimensional products, the
constant-tilt frame system, and the umbilical four-dimensional system.
All functions are pure; reports carry raw residual values against an
absolute tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import ConsistencyError, SingularityError
from .profiles import (
    SINGULAR_TOL,
    ProfileJet,
    mean_curvature_jet,
)

__all__ = [
    "DEFAULT_TOLERANCE",
    "ResidualReport",
    "HypersurfaceJet",
    "SurfaceFrameState",
    "rotation_hypersurface_jet",
    "normal_residual",
    "tangential_residual",
    "rotation_residual_tangential",
    "rotation_residual_normal",
    "surface_main_residual",
    "surface_flux_residual",
    "sphere_surface_residuals",
    "hyperbolic_surface_residuals",
    "constant_angle_frame_residuals",
    "umbilic_dim4_residuals",
    "vertical_identities",
    "constant_mean_residuals",
]

DEFAULT_TOLERANCE = 1e-8


@dataclass(frozen=True)
class ResidualReport:
    """Named residual magnitudes with a pass verdict against a tolerance."""

    names: tuple[str, ...]
    values: tuple[float, ...]
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self) -> None:
        if len(self.names) != len(self.values):
            raise ConsistencyError("each residual value needs a name")
        if not self.tolerance > 0:
            raise ConsistencyError("tolerance must be positive")
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @property
    def max_abs(self) -> float:
        return max(abs(v) for v in self.values)

    @property
    def passed(self) -> bool:
        return self.max_abs <= self.tolerance

    def value(self, name: str) -> float:
        return self.values[self.names.index(name)]

    def to_dict(self) -> dict:
        return {
            "names": list(self.names),
            "values": list(self.values),
            "tolerance": self.tolerance,
            "max_abs": self.max_abs,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class HypersurfaceJet:
    """Pointwise data of a rotation hypersurface in frame form.

    Derivatives are along the flow of the unit profile direction e1 (the
    direction of T), so H_d1 = e1(H) and H_d2 = e1(e1(H)).  lam and mu are
    the principal curvatures along e1 and along the m-1 orbit directions;
    s is the profile parameter when the orbit curvature carries cot(s).
    """

    m: int
    c: int
    alpha: float
    H: float
    H_d1: float
    H_d2: float
    lam: float
    mu: float
    alpha_d1: float = 0.0
    alpha_d2: float = 0.0
    s: Optional[float] = None
    _tol: float = field(default=1e-12, repr=False)

    def __post_init__(self) -> None:
        mean = (self.lam + (self.m - 1) * self.mu) / self.m
        if abs(mean - self.H) > self._tol * max(1.0, abs(self.H)):
            raise ConsistencyError(
                f"H = {self.H} violates the trace identity (lam + (m-1) mu)/m = {mean}"
            )

    @property
    def shape_norm_sq(self) -> float:
        return self.lam**2 + (self.m - 1) * self.mu**2


def rotation_hypersurface_jet(
    u_jet: ProfileJet, s: float, m: int, c: int = 1
) -> HypersurfaceJet:
    """Frame jet of a rotation hypersurface from its tilt jet.

    Change of variables for the profile frame: sin(alpha) = -u and, with
    the normal pointing downward along the axis, cos(alpha) =
    -sqrt(1 - u^2); the unit profile direction acts as e1 = -cos(alpha)
    d/ds, so e1(H) = -cos(alpha) H' and e1(e1(H)) = (1-u^2) H'' - u u' H'.
    """
    u, u1 = u_jet.value, u_jet.d1
    if abs(u) > 1.0:
        raise ConsistencyError(f"|u| = {abs(u)} > 1 admits no tilt angle")
    cos_a = -math.sqrt(1.0 - u * u)
    alpha = math.atan2(-u, cos_a)
    h = mean_curvature_jet(u_jet, s, m)
    sin_s = math.sin(s)
    return HypersurfaceJet(
        m=m,
        c=c,
        alpha=alpha,
        H=h.value,
        H_d1=-cos_a * h.d1,
        H_d2=(1.0 - u * u) * h.d2 - u * u1 * h.d1,
        lam=u1,
        mu=u * math.cos(s) / sin_s,
        alpha_d1=u1,
        alpha_d2=-cos_a * u_jet.d2,
        s=s,
    )


def normal_residual(jet: HypersurfaceJet) -> float:
    """Normal (trace) component of the biharmonicity system.

    Lap(H) expands in the profile frame as e1(e1(H)) + (m-1) cot(alpha) mu
    e1(H); the residual is Lap(H) - H (|A|^2 - c (m-1) sin^2(alpha)) and
    vanishes at biharmonic points.
    """
    sin_a = math.sin(jet.alpha)
    coupling = jet.mu * jet.H_d1
    if abs(sin_a) < SINGULAR_TOL:
        if abs(coupling) > SINGULAR_TOL:
            raise SingularityError(
                "cot(alpha) term active within 1e-6 of sin(alpha) = 0"
            )
        tangent_term = 0.0
    else:
        tangent_term = (jet.m - 1) * (math.cos(jet.alpha) / sin_a) * coupling
    laplacian = jet.H_d2 + tangent_term
    return laplacian - jet.H * (jet.shape_norm_sq - jet.c * (jet.m - 1) * sin_a**2)


def tangential_residual(jet: HypersurfaceJet) -> float:
    """Tangential component of the biharmonicity system along e1.

    With T = sin(alpha) e1 the vector equation has a single component:
    (m/2 H + lam) e1(H) + c (m-1) sin(alpha) cos(alpha) H.
    """
    sin_a, cos_a = math.sin(jet.alpha), math.cos(jet.alpha)
    return (0.5 * jet.m * jet.H + jet.lam) * jet.H_d1 + jet.c * (jet.m - 1) * sin_a * cos_a * jet.H


def _validated_mean_jet(
    u_jet: ProfileJet, s: float, m: int, H_jet: Optional[ProfileJet], tol: float = 1e-9
) -> ProfileJet:
    computed = mean_curvature_jet(u_jet, s, m)
    if H_jet is None:
        return computed
    for got, want, label in (
        (H_jet.value, computed.value, "H"),
        (H_jet.d1, computed.d1, "H'"),
        (H_jet.d2, computed.d2, "H''"),
    ):
        if abs(got - want) > tol * max(1.0, abs(want)):
            raise ConsistencyError(
                f"supplied {label} = {got} disagrees with the tilt jet value {want}"
            )
    return computed


def rotation_residual_tangential(
    u_jet: ProfileJet,
    s: float,
    m: int,
    H_jet: Optional[ProfileJet] = None,
    c: int = 1,
) -> float:
    """First-order rotation-hypersurface equation in the tilt variable.

    (3u' + (m-1) u cot s) H' + 2 c (m-1) u H, the tangential biharmonicity
    component written in profile coordinates.  A supplied mean-curvature
    jet is validated against the tilt jet, never trusted.
    """
    h = _validated_mean_jet(u_jet, s, m, H_jet)
    cot = math.cos(s) / math.sin(s)
    return (3.0 * u_jet.d1 + (m - 1) * u_jet.value * cot) * h.d1 + 2.0 * c * (
        m - 1
    ) * u_jet.value * h.value


def rotation_residual_normal(
    u_jet: ProfileJet,
    s: float,
    m: int,
    H_jet: Optional[ProfileJet] = None,
    c: int = 1,
) -> float:
    """Second-order rotation-hypersurface equation in the tilt variable.

    (1-u^2) H'' + ((m-1)(1-u^2) cot s - u u') H'
                + ((m-1) u^2 (c - cot^2 s) - u'^2) H,
    the normal biharmonicity component in profile coordinates; H'' needs
    the third tilt derivative.
    """
    if abs(u_jet.value) > 1.0 + SINGULAR_TOL:
        raise ConsistencyError(f"|u| = {abs(u_jet.value)} > 1 admits no tilt angle")
    h = _validated_mean_jet(u_jet, s, m, H_jet)
    cot = math.cos(s) / math.sin(s)
    u, u1 = u_jet.value, u_jet.d1
    return (
        (1.0 - u * u) * h.d2
        + ((m - 1) * (1.0 - u * u) * cot - u * u1) * h.d1
        + ((m - 1) * u * u * (c - cot * cot) - u1 * u1) * h.value
    )


# ---------------------------------------------------------------------------
# fourth-order rotation-surface systems on the two-dimensional products
# ---------------------------------------------------------------------------


def surface_main_residual(k: ProfileJet, hyperbolic: bool) -> float:
    """Fourth-order biharmonicity equation of the polar profile alone.

    Functions of r pick up the radial Laplacian Lap u = u'' + (ln sigma)' u'
    of the induced metric dr^2 + sigma(k)^2 dtheta^2, with orbit radius
    sigma = cos k on the sphere product and sinh k on the hyperbolic one:

        sphere:     Lap^2 k + 2 Lap k + 2 sec^2(k) tan(k) k'^2
                    + (1 - tan^2 k) tan k,
        hyperbolic: Lap^2 k - 2 Lap k - 2 coth(k)(coth^2 k - 1) k'^2
                    + (1 + coth^2 k) coth k.

    The value is linear in the fourth derivative with unit coefficient,
    which is what the flow reduction solves for.
    """
    k1, k2, k3 = k.d1, k.d2, k.d3
    k4 = k.require_d4()
    if not hyperbolic:
        if abs(math.cos(k.value)) < SINGULAR_TOL:
            raise SingularityError(f"cos k = {math.cos(k.value)} within 1e-6 of the equator")
        t = math.tan(k.value)
        t1 = 1.0 + t * t  # derivative of tan at k
        # Lap k and its first two r-derivatives
        w0 = k2 - k1 * k1 * t
        w1 = k3 - 2.0 * k1 * k2 * t - k1**3 * t1
        w2 = k4 - 2.0 * k2 * k2 * t - 2.0 * k1 * k3 * t - 5.0 * k1 * k1 * k2 * t1 - 2.0 * k1**4 * t1 * t
        lap2 = w2 - k1 * t * w1
        return lap2 + 2.0 * w0 + 2.0 * t1 * t * k1 * k1 + (1.0 - t * t) * t
    sh = math.sinh(k.value)
    if abs(sh) < SINGULAR_TOL:
        raise SingularityError(f"sinh k = {sh} within 1e-6 of the axis")
    ct = math.cosh(k.value) / sh
    ct1 = ct * ct - 1.0  # -(coth)' at k equals csch^2 = coth^2 - 1
    w0 = k2 + k1 * k1 * ct
    w1 = k3 + 2.0 * k1 * k2 * ct - k1**3 * ct1
    w2 = k4 + 2.0 * k2 * k2 * ct + 2.0 * k1 * k3 * ct - 5.0 * k1 * k1 * k2 * ct1 + 2.0 * k1**4 * ct1 * ct
    lap2 = w2 + k1 * ct * w1
    return lap2 - 2.0 * w0 - 2.0 * ct * (ct * ct - 1.0) * k1 * k1 + (1.0 + ct * ct) * ct


def surface_flux_residual(k: ProfileJet, h: ProfileJet, C: float, hyperbolic: bool) -> float:
    """First-integral equation (k' H)' = C / sigma_dual in height form.

    Written through the height derivatives, 2 k' H = h'' -/+ h' k'
    (tan k | coth k), so vertical cylinders (k' = 0) are regular points.
    sigma_dual is cos k on the sphere product and sinh k on the hyperbolic
    one.
    """
    k1 = k.d1
    if not hyperbolic:
        if abs(math.cos(k.value)) < SINGULAR_TOL:
            raise SingularityError(f"cos k = {math.cos(k.value)} within 1e-6 of the equator")
        t = math.tan(k.value)
        t1 = 1.0 + t * t
        return 0.5 * (h.d3 - h.d2 * k1 * t - h.d1 * k.d2 * t - h.d1 * k1 * k1 * t1) - C / math.cos(
            k.value
        )
    sh = math.sinh(k.value)
    if abs(sh) < SINGULAR_TOL:
        raise SingularityError(f"sinh k = {sh} within 1e-6 of the axis")
    ct = math.cosh(k.value) / sh
    ct1 = ct * ct - 1.0
    return 0.5 * (h.d3 + h.d2 * k1 * ct + h.d1 * k.d2 * ct - h.d1 * k1 * k1 * ct1) - C / sh


def _surface_system_values(
    k: ProfileJet, h: ProfileJet, C: float, hyperbolic: bool
) -> tuple[float, float, float]:
    main = surface_main_residual(k, hyperbolic)
    flux = surface_flux_residual(k, h, C, hyperbolic)
    arc = k.d1 * k.d1 + h.d1 * h.d1 - 1.0
    return main, flux, arc


def sphere_surface_residuals(
    k_jet: ProfileJet,
    h_jet: ProfileJet,
    C: float,
    tolerance: float = DEFAULT_TOLERANCE,
) -> ResidualReport:
    """Biharmonicity residuals of a rotation surface in the sphere product.

    main: Lap^2 k + 2 Lap k + 2 sec^2(k) tan(k) k'^2 + (1 - tan^2 k) tan k,
    flux: (k' H)' - C sec k, written height-side so vertical cylinders are
    regular points; arc: k'^2 + h'^2 - 1.  The polar jet needs four
    derivatives.
    """
    main, flux, arc = _surface_system_values(k_jet, h_jet, C, hyperbolic=False)
    return ResidualReport(("main", "flux", "arc"), (main, flux, arc), tolerance)


def hyperbolic_surface_residuals(
    k_jet: ProfileJet,
    h_jet: ProfileJet,
    C: float,
    tolerance: float = DEFAULT_TOLERANCE,
) -> ResidualReport:
    """Biharmonicity residuals of a rotation surface in the hyperbolic product.

    main: Lap^2 k - 2 Lap k - 2 coth(k)(coth^2 k - 1) k'^2
          + (1 + coth^2 k) coth k,
    with the radial Laplacian Lap u = u'' + coth(k) k' u' of the induced
    metric dr^2 + sinh^2(k) dtheta^2; flux: (k' H)' - C / sinh k; arc as in
    the spherical case.
    """
    main, flux, arc = _surface_system_values(k_jet, h_jet, C, hyperbolic=True)
    return ResidualReport(("main", "flux", "arc"), (main, flux, arc), tolerance)


# ---------------------------------------------------------------------------
# constant-tilt frame system on the two-dimensional products
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceFrameState:
    """State of the principal frame of a surface with constant tilt angle.

    The frame diagonalizes the shape operator (eigenvalues lambda1,
    lambda2) and f is the angle of T against the first principal
    direction: T = sin(alpha)(cos f e1 + sin f e2).  Directional
    derivatives of H and f along the frame are part of the state; the
    principal curvatures are treated as locally constant, which is exactly
    the regime the classification sweep probes.
    """

    lambda1: float
    lambda2: float
    f: float
    alpha: float
    H: float
    e1H: float = 0.0
    e2H: float = 0.0
    e1f: float = 0.0
    e2f: float = 0.0
    _tol: float = field(default=1e-12, repr=False)

    def __post_init__(self) -> None:
        mean = 0.5 * (self.lambda1 + self.lambda2)
        if abs(mean - self.H) > self._tol * max(1.0, abs(self.H)):
            raise ConsistencyError(
                f"H = {self.H} violates the trace identity (lambda1+lambda2)/2 = {mean}"
            )

    @property
    def shape_norm_sq(self) -> float:
        return self.lambda1**2 + self.lambda2**2


def constant_angle_frame_residuals(
    state: SurfaceFrameState, c: int, tolerance: float = DEFAULT_TOLERANCE
) -> ResidualReport:
    """Compatibility system of a constant-tilt principal frame.

    Six scalar residuals under e1(alpha) = e2(alpha) = 0:

    tilt_e1 / tilt_e2:  lambda1 cos f and lambda2 sin f, the forcing of the
        tilt derivative along each principal direction;
    codazzi_e1 / codazzi_e2:  (lambda2 - lambda1) omega(e_i) -
        c sin(alpha) cos(alpha) (cos f | sin f), the source terms that must
        vanish for the principal curvatures to stay constant, with the
        connection form omega(e1) = e1(f) + lambda1 cot(alpha) sin f and
        omega(e2) = e2(f) - lambda2 cot(alpha) cos f;
    tangential_e1 / tangential_e2:  (lambda_i + H) e_i(H) +
        c sin(alpha) cos(alpha) (cos f | sin f) H, the two components of
        the tangential biharmonicity equation.
    """
    sin_a, cos_a = math.sin(state.alpha), math.cos(state.alpha)
    if abs(sin_a) < SINGULAR_TOL:
        raise SingularityError("frame system undefined within 1e-6 of sin(alpha) = 0")
    cot_a = cos_a / sin_a
    cf, sf = math.cos(state.f), math.sin(state.f)
    omega1 = state.e1f + state.lambda1 * cot_a * sf
    omega2 = state.e2f - state.lambda2 * cot_a * cf
    sc = c * sin_a * cos_a
    values = (
        state.lambda1 * cf,
        state.lambda2 * sf,
        (state.lambda2 - state.lambda1) * omega2 - sc * cf,
        (state.lambda2 - state.lambda1) * omega1 - sc * sf,
        (state.lambda1 + state.H) * state.e1H + sc * cf * state.H,
        (state.lambda2 + state.H) * state.e2H + sc * sf * state.H,
    )
    names = ("tilt_e1", "tilt_e2", "codazzi_e1", "codazzi_e2", "tangential_e1", "tangential_e2")
    return ResidualReport(names, values, tolerance)


# ---------------------------------------------------------------------------
# umbilical hypersurfaces in dimension four
# ---------------------------------------------------------------------------


def umbilic_dim4_residuals(
    alpha_jet: ProfileJet, c: int, tolerance: float = DEFAULT_TOLERANCE
) -> ResidualReport:
    """Residuals of the umbilical biharmonic system in dimension four.

    With H = alpha' along the curve parametrizing the tilt:

    sine_gordon:  phi'' + c sin(phi) for phi = 2 alpha (the structure
        equation of the umbilical tilt);
    tangential:   H' + c cos(alpha) sin(alpha);
    normal:       H'' + 3 cot(alpha) H H' - 4 H^3 + 3 c sin^2(alpha) H;
    combined:     -alpha' (4 c cos(2 alpha) + (2 alpha')^2), the
        eliminant of the previous two: it coincides with ``normal``
        whenever sine_gordon and tangential vanish.
    """
    a, a1, a2, a3 = alpha_jet.value, alpha_jet.d1, alpha_jet.d2, alpha_jet.d3
    sin_a, cos_a = math.sin(a), math.cos(a)
    sine_gordon = 2.0 * a2 + c * math.sin(2.0 * a)
    tangential = a2 + c * cos_a * sin_a
    H, H1, H2 = a1, a2, a3
    cubic = -4.0 * H**3 + 3.0 * c * sin_a**2 * H
    coupling = H * H1
    if abs(sin_a) < SINGULAR_TOL:
        if abs(coupling) > SINGULAR_TOL:
            raise SingularityError("cot(alpha) term active within 1e-6 of sin(alpha) = 0")
        normal = H2 + cubic
    else:
        normal = H2 + 3.0 * (cos_a / sin_a) * coupling + cubic
    combined = -a1 * (4.0 * c * math.cos(2.0 * a) + (2.0 * a1) ** 2)
    return ResidualReport(
        ("sine_gordon", "tangential", "normal", "combined"),
        (sine_gordon, tangential, normal, combined),
        tolerance,
    )


# ---------------------------------------------------------------------------
# vertical identities and constant-mean-curvature specialization
# ---------------------------------------------------------------------------


def vertical_identities(
    theta: float,
    H: float,
    m: int,
    laplacian_h: float,
    laplacian_Htheta: float,
    tolerance: float = DEFAULT_TOLERANCE,
) -> ResidualReport:
    """Height identities against externally supplied Laplacians.

    height: Lap(h) - m theta H, the Laplacian of the height function of any
    hypersurface of the product; biharmonic_height: Lap(H theta), which is
    the bilaplacian of the height and must vanish on biharmonic inputs.
    The Laplacian values come from the caller (typically the embedding
    oracle); this operation only forms the residuals.
    """
    return ResidualReport(
        ("height", "biharmonic_height"),
        (laplacian_h - m * theta * H, laplacian_Htheta),
        tolerance,
    )


def constant_mean_residuals(
    curvatures: Sequence[float],
    m: int,
    c: int,
    alpha: float,
    tolerance: float = DEFAULT_TOLERANCE,
) -> ResidualReport:
    """Biharmonicity residuals of a constant-mean-curvature hypersurface.

    For constant H the gradient terms drop and the system reduces to

        normal:     -H (|A|^2 - c (m-1) sin^2(alpha)),
        tangential: |c (m-1) cos(alpha) sin(alpha) H|,

    evaluated from an explicit principal-curvature spectrum.  This covers
    vertical cylinders, whose spectra need not have the two-eigenvalue
    rotation shape.
    """
    if len(curvatures) != m:
        raise ConsistencyError(f"expected {m} principal curvatures, got {len(curvatures)}")
    H = sum(curvatures) / m
    norm_sq = sum(k * k for k in curvatures)
    sin_a, cos_a = math.sin(alpha), math.cos(alpha)
    normal = -H * (norm_sq - c * (m - 1) * sin_a**2)
    tangential = abs(c * (m - 1) * cos_a * sin_a * H)
    return ResidualReport(("normal", "tangential"), (normal, tangential), tolerance)
