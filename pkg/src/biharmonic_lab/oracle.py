"""Finite-difference ground truth from explicit immersions.

The rotation geometries are realized as explicit immersions into flat
R^{m+2} (Lorentzian when the surface factor is hyperbolic) and all
geometric quantities are recovered by central differences of the
immersion map alone: induced metric, second fundamental form against a
normal obtained as the null direction of the tangent-plus-factor-normal
system, principal and mean curvature, intrinsic Gauss curvature from the
orbit radius, the tilt decomposition of the vertical field, and the
Laplace-Beltrami operator in divergence form.

Nothing in this module evaluates the closed-form curvature formulas of
the profile modules; the only shared ingredient is the immersion map
itself, so agreeing values genuinely certify both routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.linalg import eigh

from .ambient import NormalDecomposition
from .errors import ConsistencyError, DomainError
from .profiles import ProfileKind

__all__ = [
    "ImmersionSampler",
    "FundamentalForms",
    "rotation_hypersurface_sampler",
    "sphere_surface_sampler",
    "hyperbolic_surface_sampler",
    "profile_sampler",
    "fundamental_forms",
    "shape_operator",
    "principal_curvatures",
    "mean_curvature",
    "intrinsic_gauss_curvature",
    "laplace_beltrami",
    "angle_and_T",
    "codazzi_residual",
    "unit_sphere_point",
]

DEFAULT_STEP = 1e-3


@dataclass(frozen=True)
class ImmersionSampler:
    """An explicit immersion chart into (possibly Lorentzian) flat space.

    ``immersion`` maps chart parameters to the flat ambient; ``signature``
    is the diagonal of the flat inner product; ``factor_normal`` returns
    the unit normal of the curved product inside flat space at an ambient
    point (the position vector of the space-form factor); ``orient``
    returns a rough direction fixing the sign of the surface normal per
    the frame convention of the corresponding closed-form section.
    """

    chart_dim: int
    ambient_dim: int
    immersion: Callable[[np.ndarray], np.ndarray]
    signature: np.ndarray
    factor_normal: Callable[[np.ndarray], np.ndarray]
    orient: Callable[[np.ndarray], np.ndarray]
    c: int
    step: float = DEFAULT_STEP
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "signature", np.asarray(self.signature, dtype=float))
        if not 1e-6 <= self.step <= 1e-2:
            raise ConsistencyError(f"finite-difference step {self.step} outside [1e-6, 1e-2]")
        if self.signature.shape != (self.ambient_dim,):
            raise ConsistencyError("signature must list one sign per ambient coordinate")

    def inner(self, x: np.ndarray, y: np.ndarray) -> float:
        return float(np.dot(self.signature * x, y))


@dataclass(frozen=True)
class FundamentalForms:
    """First and second fundamental forms with the frame that produced them."""

    first: np.ndarray
    second: np.ndarray
    frame: np.ndarray
    normal: np.ndarray
    point: np.ndarray

    def __post_init__(self) -> None:
        try:
            np.linalg.cholesky(self.first)
        except np.linalg.LinAlgError as exc:
            raise DomainError("induced metric is not positive definite on this chart") from exc


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------


def unit_sphere_point(v: np.ndarray) -> np.ndarray:
    """Spherical-coordinate point of the unit sphere S^{d} in R^{d+1}."""
    v = np.atleast_1d(np.asarray(v, dtype=float))
    d = len(v)
    out = np.empty(d + 1)
    running = 1.0
    for i in range(d):
        out[i] = running * math.cos(v[i])
        running *= math.sin(v[i])
    out[d] = running
    return out


def rotation_hypersurface_sampler(
    h_value: Callable[[float], float], m: int, step: float = DEFAULT_STEP
) -> ImmersionSampler:
    """Rotation hypersurface of the sphere product in R^{m+2}.

    Chart (s, v_1, ..., v_{m-1}) mapping to (cos s, phi(v) sin s, h(s))
    with phi the spherical parametrization of the orbit sphere.  The
    normal convention of the profile frame points downward along the
    height axis, so orientation is fixed by a negative last component.
    """

    def immersion(x: np.ndarray) -> np.ndarray:
        s = x[0]
        phi = unit_sphere_point(x[1:])
        return np.concatenate(([math.cos(s)], math.sin(s) * phi, [h_value(s)]))

    def factor_normal(p: np.ndarray) -> np.ndarray:
        n = np.concatenate((p[:-1], [0.0]))
        return n / np.linalg.norm(n)

    down = np.zeros(m + 2)
    down[-1] = -1.0
    return ImmersionSampler(
        chart_dim=m,
        ambient_dim=m + 2,
        immersion=immersion,
        signature=np.ones(m + 2),
        factor_normal=factor_normal,
        orient=lambda x: down,
        c=1,
        step=step,
        label=f"rotation-hypersurface(m={m})",
    )


def _surface_orient(
    k_value: Callable[[float], float],
    h_value: Callable[[float], float],
    radial_tangent: Callable[[float, float], np.ndarray],
    vertical: np.ndarray,
    step: float,
) -> Callable[[np.ndarray], np.ndarray]:
    """Orientation field -h' d_rho + k' d_t from centered profile slopes."""

    def orient(x: np.ndarray) -> np.ndarray:
        r = x[0]
        k1 = (k_value(r + step) - k_value(r - step)) / (2.0 * step)
        h1 = (h_value(r + step) - h_value(r - step)) / (2.0 * step)
        return -h1 * radial_tangent(k_value(r), x[1]) + k1 * vertical

    return orient


def sphere_surface_sampler(
    k_value: Callable[[float], float],
    h_value: Callable[[float], float],
    step: float = DEFAULT_STEP,
) -> ImmersionSampler:
    """Rotation surface of the sphere product in R^4.

    Chart (r, theta) -> (sin k, cos k cos theta, cos k sin theta, h); the
    normal convention is -sin(alpha) d_rho + cos(alpha) d_t with
    cos(alpha) = k', sin(alpha) = h'.
    """

    def immersion(x: np.ndarray) -> np.ndarray:
        k, h = k_value(x[0]), h_value(x[0])
        return np.array(
            [math.sin(k), math.cos(k) * math.cos(x[1]), math.cos(k) * math.sin(x[1]), h]
        )

    def factor_normal(p: np.ndarray) -> np.ndarray:
        n = np.array([p[0], p[1], p[2], 0.0])
        return n / np.linalg.norm(n)

    def radial_tangent(k: float, theta: float) -> np.ndarray:
        return np.array(
            [math.cos(k), -math.sin(k) * math.cos(theta), -math.sin(k) * math.sin(theta), 0.0]
        )

    return ImmersionSampler(
        chart_dim=2,
        ambient_dim=4,
        immersion=immersion,
        signature=np.ones(4),
        factor_normal=factor_normal,
        orient=_surface_orient(
            k_value, h_value, radial_tangent, np.array([0.0, 0.0, 0.0, 1.0]), step
        ),
        c=1,
        step=step,
        label="sphere-surface",
    )


def hyperbolic_surface_sampler(
    k_value: Callable[[float], float],
    h_value: Callable[[float], float],
    step: float = DEFAULT_STEP,
) -> ImmersionSampler:
    """Rotation surface of the hyperbolic product in Lorentzian R^4.

    Chart (r, theta) -> (cosh k, sinh k cos theta, sinh k sin theta, h)
    with inner product signature (-, +, +, +): the surface factor is the
    upper hyperboloid, whose flat normal is the (timelike) position.
    """

    def immersion(x: np.ndarray) -> np.ndarray:
        k, h = k_value(x[0]), h_value(x[0])
        return np.array(
            [math.cosh(k), math.sinh(k) * math.cos(x[1]), math.sinh(k) * math.sin(x[1]), h]
        )

    signature = np.array([-1.0, 1.0, 1.0, 1.0])

    def factor_normal(p: np.ndarray) -> np.ndarray:
        n = np.array([p[0], p[1], p[2], 0.0])
        norm = math.sqrt(abs(np.dot(signature * n, n)))
        return n / norm

    def radial_tangent(k: float, theta: float) -> np.ndarray:
        return np.array(
            [math.sinh(k), math.cosh(k) * math.cos(theta), math.cosh(k) * math.sin(theta), 0.0]
        )

    return ImmersionSampler(
        chart_dim=2,
        ambient_dim=4,
        immersion=immersion,
        signature=signature,
        factor_normal=factor_normal,
        orient=_surface_orient(
            k_value, h_value, radial_tangent, np.array([0.0, 0.0, 0.0, 1.0]), step
        ),
        c=-1,
        step=step,
        label="hyperbolic-surface",
    )


def profile_sampler(profile, m: int = 2, step: float = DEFAULT_STEP,
                    h_value: Optional[Callable[[float], float]] = None) -> ImmersionSampler:
    """Sampler for a RotationProfile, integrating the height when needed.

    Closed-form families carry derivative jets but not always an explicit
    height value; for surface kinds with an arclength height the value is
    recovered by quadrature of h' from r = 0, which only feeds the
    immersion map (never the closed-form residuals).
    """
    from scipy.integrate import quad

    if profile.kind is ProfileKind.SPHERE_HYPERSURFACE:
        raise DomainError("hypersurface profiles are height-parametrized; build the "
                          "sampler from the height function directly")

    def k_value(r: float) -> float:
        return profile.k_jet(r).value

    if h_value is None:
        if profile.h_value_known:
            def h_value(r: float) -> float:
                return profile.h_jet(r).value
        else:
            def h_value(r: float) -> float:
                return quad(lambda x: profile.h_jet(x).d1, 0.0, r, epsabs=1e-13, epsrel=1e-13)[0]

    builder = (
        sphere_surface_sampler
        if profile.kind is ProfileKind.SPHERE_SURFACE
        else hyperbolic_surface_sampler
    )
    return builder(k_value, h_value, step=step)


# ---------------------------------------------------------------------------
# finite-difference machinery
# ---------------------------------------------------------------------------


def _shift(x: np.ndarray, i: int, delta: float) -> np.ndarray:
    out = np.array(x, dtype=float)
    out[i] += delta
    return out


def _jacobian(fn: Callable, x: np.ndarray, dim: int, h: float) -> np.ndarray:
    return np.array([(fn(_shift(x, i, h)) - fn(_shift(x, i, -h))) / (2.0 * h) for i in range(dim)])


def _hessian_entry(fn: Callable, x: np.ndarray, i: int, j: int, h: float) -> np.ndarray:
    if i == j:
        return (fn(_shift(x, i, h)) - 2.0 * np.asarray(fn(x)) + fn(_shift(x, i, -h))) / (h * h)
    xpp = _shift(_shift(x, i, h), j, h)
    xpm = _shift(_shift(x, i, h), j, -h)
    xmp = _shift(_shift(x, i, -h), j, h)
    xmm = _shift(_shift(x, i, -h), j, -h)
    return (fn(xpp) - fn(xpm) - fn(xmp) + fn(xmm)) / (4.0 * h * h)


def _second_derivatives(fn: Callable, x: np.ndarray, dim: int, h: float,
                        richardson: bool) -> np.ndarray:
    def at(step: float) -> np.ndarray:
        return np.array(
            [[_hessian_entry(fn, x, i, j, step) for j in range(dim)] for i in range(dim)]
        )

    if not richardson:
        return at(h)
    fine, coarse = at(h), at(2.0 * h)
    return (4.0 * fine - coarse) / 3.0


def fundamental_forms(
    sampler: ImmersionSampler,
    point: Sequence[float],
    step: Optional[float] = None,
    richardson: bool = True,
) -> FundamentalForms:
    """First and second fundamental forms at a chart point.

    Tangents and second derivatives come from central differences of the
    immersion; the unit normal is the null direction of the system spanned
    by the tangents and the factor normal, oriented by the sampler's
    convention.  Second-derivative data is Richardson-extrapolated by
    default.  The flat second derivatives may be paired with the normal
    directly: the correction relating them to the product connection lies
    along the factor normal, which is orthogonal to the surface normal.
    """
    h = sampler.step if step is None else step
    x = np.asarray(point, dtype=float)
    value = np.asarray(sampler.immersion(x))
    frame = _jacobian(sampler.immersion, x, sampler.chart_dim, h)
    weighted = frame * sampler.signature
    first = weighted @ frame.T

    rows = np.vstack([frame, sampler.factor_normal(value)])
    _, _, vt = np.linalg.svd(rows * sampler.signature)
    normal = vt[-1]
    norm_sq = sampler.inner(normal, normal)
    if norm_sq <= 0:
        raise DomainError("degenerate normal direction; chart too close to a singularity")
    normal = normal / math.sqrt(norm_sq)
    if sampler.inner(normal, sampler.orient(x)) < 0:
        normal = -normal

    seconds = _second_derivatives(
        sampler.immersion, x, sampler.chart_dim, h, richardson=richardson
    )
    second = np.array(
        [
            [sampler.inner(seconds[i, j], normal) for j in range(sampler.chart_dim)]
            for i in range(sampler.chart_dim)
        ]
    )
    return FundamentalForms(first=first, second=second, frame=frame, normal=normal, point=x)


def shape_operator(forms: FundamentalForms) -> np.ndarray:
    return np.linalg.solve(forms.first, forms.second)


def principal_curvatures(forms: FundamentalForms) -> np.ndarray:
    """Eigenvalues of the shape operator, ascending."""
    return eigh(forms.second, forms.first, eigvals_only=True)


def mean_curvature(forms: FundamentalForms) -> float:
    return float(np.trace(shape_operator(forms)) / forms.first.shape[0])


def angle_and_T(
    sampler: ImmersionSampler, point: Sequence[float], step: Optional[float] = None
) -> NormalDecomposition:
    """Tilt decomposition of the vertical field against the sampled normal."""
    forms = fundamental_forms(sampler, point, step=step)
    cos_alpha = float(np.clip(forms.normal[-1], -1.0, 1.0))
    return NormalDecomposition(
        cos_alpha=cos_alpha, tangent_norm=math.sqrt(max(0.0, 1.0 - cos_alpha**2))
    )


def _metric(sampler: ImmersionSampler, x: np.ndarray, h: float) -> np.ndarray:
    frame = _jacobian(sampler.immersion, x, sampler.chart_dim, h)
    return (frame * sampler.signature) @ frame.T


def laplace_beltrami(
    sampler: ImmersionSampler,
    fn: Callable[[np.ndarray], float],
    point: Sequence[float],
    step: Optional[float] = None,
) -> float:
    """Divergence-form Laplace-Beltrami of a chart function.

    Lap u = det(g)^{-1/2} d_i ( det(g)^{1/2} g^{ij} d_j u ), with every
    ingredient sampled by central differences; overall accuracy O(step^2).
    """
    h = sampler.step if step is None else step
    x = np.asarray(point, dtype=float)
    dim = sampler.chart_dim

    def flux(y: np.ndarray) -> np.ndarray:
        g = _metric(sampler, y, h)
        grad = np.array(
            [(fn(_shift(y, j, h)) - fn(_shift(y, j, -h))) / (2.0 * h) for j in range(dim)]
        )
        return math.sqrt(np.linalg.det(g)) * np.linalg.solve(g, grad)

    divergence = 0.0
    for i in range(dim):
        divergence += (flux(_shift(x, i, h))[i] - flux(_shift(x, i, -h))[i]) / (2.0 * h)
    g0 = _metric(sampler, x, h)
    return divergence / math.sqrt(np.linalg.det(g0))


def intrinsic_gauss_curvature(
    sampler: ImmersionSampler, point: Sequence[float], step: Optional[float] = None
) -> float:
    """Gauss curvature of a rotationally symmetric 2-chart from the metric.

    For an induced metric E(r) dr^2 + G(r) dtheta^2 the curvature is
    K = -(1 / 2 sqrt(EG)) d_r ( G'(r) / sqrt(EG) ), evaluated with nested
    central differences of the first fundamental form only; the second
    fundamental form never enters, keeping this an independent route.
    """
    if sampler.chart_dim != 2:
        raise DomainError("intrinsic curvature shortcut needs a 2-dimensional chart")
    h = sampler.step if step is None else step
    x = np.asarray(point, dtype=float)

    def eg(r: float) -> tuple[float, float]:
        g = _metric(sampler, np.array([r, x[1]]), h)
        return g[0, 0], g[1, 1]

    def p(r: float) -> float:
        e_mid, g_mid = eg(r)
        _, g_plus = eg(r + h)
        _, g_minus = eg(r - h)
        return (g_plus - g_minus) / (2.0 * h) / math.sqrt(e_mid * g_mid)

    e0, g0 = eg(x[0])
    return -(p(x[0] + h) - p(x[0] - h)) / (2.0 * h) / (2.0 * math.sqrt(e0 * g0))


def codazzi_residual(
    sampler: ImmersionSampler,
    point: Sequence[float],
    step: Optional[float] = None,
    pair: tuple[int, int] = (0, 1),
) -> float:
    """Max-norm defect of the Codazzi equation at a chart point.

    Checks (D_X A)Y - (D_Y A)X = c cos(alpha) (<Y,T> X - <X,T> Y) for the
    coordinate pair, with the shape operator field, Christoffel symbols
    and tilt all sampled by finite differences; O(step^2) on smooth
    charts.
    """
    h = sampler.step if step is None else step
    x = np.asarray(point, dtype=float)
    dim = sampler.chart_dim
    i, j = pair

    def s_matrix(y: np.ndarray) -> np.ndarray:
        return shape_operator(fundamental_forms(sampler, y, step=h))

    def metric(y: np.ndarray) -> np.ndarray:
        return _metric(sampler, y, h)

    g0 = metric(x)
    dg = np.array([(metric(_shift(x, a, h)) - metric(_shift(x, a, -h))) / (2.0 * h)
                   for a in range(dim)])
    ginv = np.linalg.inv(g0)
    gamma = np.empty((dim, dim, dim))
    for k in range(dim):
        for a in range(dim):
            for b in range(dim):
                gamma[k, a, b] = 0.5 * np.sum(
                    ginv[k] * (dg[a][b] + dg[b][a] - dg[:, a, b])
                )

    s0 = s_matrix(x)
    ds = np.array([(s_matrix(_shift(x, a, h)) - s_matrix(_shift(x, a, -h))) / (2.0 * h)
                   for a in range(dim)])

    def nabla(a: int, b: int) -> np.ndarray:
        # components of (D_a S)(d_b)
        out = ds[a][:, b].copy()
        for l in range(dim):
            out += gamma[:, a, l] * s0[l, b]
            out -= gamma[l, a, b] * s0[:, l]
        return out

    forms = fundamental_forms(sampler, x, step=h)
    cos_alpha = forms.normal[-1]
    vertical = np.zeros(sampler.ambient_dim)
    vertical[-1] = 1.0
    t_embedded = vertical - cos_alpha * forms.normal
    t_flat = np.array([sampler.inner(forms.frame[a], t_embedded) for a in range(dim)])

    lhs = nabla(i, j) - nabla(j, i)
    rhs = np.zeros(dim)
    rhs[i] += sampler.c * cos_alpha * t_flat[j]
    rhs[j] -= sampler.c * cos_alpha * t_flat[i]
    return float(np.max(np.abs(lhs - rhs)))
