"""Ambient product geometry of a space form times a line.

The ambient space is the Riemannian product of an m-dimensional space form
of curvature c in {-1, 0, +1} with the real line.  Points and tangent
vectors are represented in the flat embedding R^{m+1} x R: a horizontal
component living in the linear space that carries the space form (with a
Lorentzian inner product when c = -1) and a vertical scalar along the line
factor.  The curvature tensor, the Ricci contractions against a unit
normal, and the splitting of the vertical unit field are all algebraic in
this representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError

__all__ = [
    "AmbientSpace",
    "AmbientVector",
    "NormalDecomposition",
    "vertical_field",
    "ricci_normal",
    "ricci_tangent_coefficient",
    "curvature_tensor",
]


@dataclass(frozen=True)
class AmbientSpace:
    """The product of an m-dimensional space form of curvature c with a line.

    c: curvature sign of the space-form factor, one of -1, 0, +1.
    m: dimension of the space-form factor, at least 2.
    """

    c: int
    m: int

    def __post_init__(self) -> None:
        if self.c not in (-1, 0, 1):
            raise ConsistencyError(f"curvature sign must be -1, 0 or 1, got {self.c}")
        if self.m < 2:
            raise ConsistencyError(f"factor dimension must be >= 2, got {self.m}")

    @property
    def horizontal_dim(self) -> int:
        """Dimension of the linear space carrying the space-form factor."""
        return self.m + 1

    def horizontal_signature(self) -> np.ndarray:
        """Diagonal of the inner product on the horizontal factor.

        Euclidean for c in {0, 1}; Lorentzian (-,+,...,+) for c = -1, so the
        hyperboloid model carries the induced Riemannian metric.
        """
        signs = np.ones(self.horizontal_dim)
        if self.c == -1:
            signs[0] = -1.0
        return signs

    def inner(self, x: "AmbientVector", y: "AmbientVector") -> float:
        """Ambient inner product, signature-aware on the horizontal factor."""
        signs = self.horizontal_signature()
        return float(np.dot(signs * x.horizontal, y.horizontal) + x.vertical * y.vertical)


@dataclass(frozen=True)
class AmbientVector:
    """A tangent vector to the product, split into horizontal and vertical parts."""

    horizontal: np.ndarray
    vertical: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "horizontal", np.asarray(self.horizontal, dtype=float))
        if not np.all(np.isfinite(self.horizontal)) or not np.isfinite(self.vertical):
            raise ConsistencyError("ambient vector entries must be finite")

    def __add__(self, other: "AmbientVector") -> "AmbientVector":
        return AmbientVector(self.horizontal + other.horizontal, self.vertical + other.vertical)

    def __sub__(self, other: "AmbientVector") -> "AmbientVector":
        return AmbientVector(self.horizontal - other.horizontal, self.vertical - other.vertical)

    def __rmul__(self, scalar: float) -> "AmbientVector":
        return AmbientVector(scalar * self.horizontal, scalar * self.vertical)

    def __neg__(self) -> "AmbientVector":
        return AmbientVector(-self.horizontal, -self.vertical)


def vertical_field(space: AmbientSpace) -> AmbientVector:
    """The unit vector field along the line factor."""
    return AmbientVector(np.zeros(space.horizontal_dim), 1.0)


@dataclass(frozen=True)
class NormalDecomposition:
    """Splitting of the vertical unit field along a hypersurface.

    The vertical field decomposes as T + cos(alpha) xi, with xi the chosen
    unit normal, T the tangential part and alpha the tilt angle.  The two
    stored numbers therefore satisfy cos_alpha^2 + tangent_norm^2 = 1.
    """

    cos_alpha: float
    tangent_norm: float
    _tol: float = field(default=1e-9, repr=False)

    def __post_init__(self) -> None:
        if not -1.0 - self._tol <= self.cos_alpha <= 1.0 + self._tol:
            raise ConsistencyError(f"cos_alpha out of [-1, 1]: {self.cos_alpha}")
        if self.tangent_norm < -self._tol:
            raise ConsistencyError(f"tangent norm must be nonnegative: {self.tangent_norm}")
        defect = abs(self.cos_alpha**2 + self.tangent_norm**2 - 1.0)
        if defect > self._tol:
            raise ConsistencyError(
                f"cos_alpha^2 + |T|^2 deviates from 1 by {defect:.3e}"
            )


def ricci_normal(space: AmbientSpace, alpha: float) -> float:
    """Ricci curvature of the ambient space against the unit normal.

    For a unit normal making angle alpha with the vertical field the value
    is c (m - 1) sin^2(alpha).
    """
    return space.c * (space.m - 1) * np.sin(alpha) ** 2


def ricci_tangent_coefficient(space: AmbientSpace, alpha: float) -> float:
    """Scalar multiplying T in the tangential part of the Ricci operator of xi.

    The tangential projection of Ric(xi) equals -c (m - 1) cos(alpha) T;
    this returns the coefficient -c (m - 1) cos(alpha).
    """
    return -space.c * (space.m - 1) * np.cos(alpha)


def curvature_tensor(
    space: AmbientSpace,
    x: AmbientVector,
    y: AmbientVector,
    z: AmbientVector,
) -> AmbientVector:
    """Riemann curvature R(x, y)z of the product metric.

    Six terms: the constant-curvature part of the space-form factor
    corrected by vertical projections, so that any slot carrying the
    vertical field is flattened out.  Antisymmetric in (x, y); identically
    zero when c = 0.
    """
    if space.c == 0:
        return AmbientVector(np.zeros(space.horizontal_dim), 0.0)
    yz = space.inner(y, z)
    xz = space.inner(x, z)
    xt = x.vertical
    yt = y.vertical
    zt = z.vertical
    out = (
        yz * x
        - xz * y
        - (yt * zt) * x
        + (xt * zt) * y
        + (xz * yt - yz * xt) * vertical_field(space)
    )
    return float(space.c) * out
