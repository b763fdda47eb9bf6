"""First-order reductions and adaptive integration of the profile ODEs.

The flow reductions here drive the highest-order biharmonicity equation of
each setting (the lower-order companion equations become monitored
invariants, since the overdetermined pair holds only on genuine
solutions).  Integration is adaptive embedded Runge-Kutta with terminal
guard events; guards cross zero exactly on the coordinate singularities
the residual formulas refuse, so trajectories stop cleanly instead of
extrapolating across a pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from .errors import ConsistencyError, DomainError
from .profiles import ProfileJet, mean_curvature_sphere
from .residuals import (
    rotation_residual_tangential,
    surface_flux_residual,
    surface_main_residual,
)

__all__ = [
    "Termination",
    "OdeSystem",
    "Trajectory",
    "integrate",
    "reduce_rotation_biharmonic",
    "reduce_surface_biharmonic",
    "minimal_profile_system",
]

DEFAULT_TOLERANCES = (1e-10, 1e-10)
MONITOR_CEILING = 1e6
GUARD_MARGIN = 1e-8


class Termination(str, Enum):
    RANGE_END = "range_end"
    SINGULARITY = "singularity"
    STEP_UNDERFLOW = "step_underflow"
    MONITOR_BLOWUP = "monitor_blowup"


@dataclass(frozen=True)
class OdeSystem:
    """A first-order flow with singularity guards and residual monitors.

    Guards are scalar functions positive on the valid region; integration
    terminates where one crosses zero.  Monitors are named residuals
    evaluated along accepted steps.  ``jets`` optionally reconstructs the
    profile jets implied by a state (using the flow relation for the top
    derivative), which is what residual cross-checks consume.
    """

    dimension: int
    rhs: Callable[[float, np.ndarray], np.ndarray]
    guards: dict[str, Callable[[float, np.ndarray], float]] = field(default_factory=dict)
    monitors: dict[str, Callable[[float, np.ndarray], float]] = field(default_factory=dict)
    state_names: tuple[str, ...] = ()
    jets: Optional[Callable[[float, np.ndarray], dict[str, ProfileJet]]] = None
    label: str = ""


@dataclass(frozen=True)
class Trajectory:
    """Accepted integration samples plus step metadata."""

    parameters: np.ndarray
    states: np.ndarray
    termination: Termination
    t_stop: float
    monitor_values: dict[str, np.ndarray]
    max_monitor: dict[str, float]
    interpolant: Optional[CubicHermiteSpline]
    tolerances: tuple[float, float]

    @property
    def samples(self) -> list[tuple[float, np.ndarray]]:
        return [(float(t), self.states[i]) for i, t in enumerate(self.parameters)]

    def final_state(self) -> np.ndarray:
        return self.states[-1]


def integrate(
    system: OdeSystem,
    initial: np.ndarray,
    span: tuple[float, float],
    tolerances: tuple[float, float] = DEFAULT_TOLERANCES,
    max_step: float = np.inf,
    monitor_ceiling: float = MONITOR_CEILING,
) -> Trajectory:
    """Integrate a flow over ``span`` with guard and blow-up detection.

    Embedded Runge-Kutta (Dormand-Prince 5(4)) with local error controlled
    by the (abs, rel) tolerances.  Terminal events: any guard reaching
    zero (termination ``singularity``, with the crossing parameter located
    by root refinement on the dense output), or any monitor exceeding the
    ceiling (``monitor_blowup``).  Samples whose guards have dipped below
    1e-8 are not emitted.  Dense output is a cubic Hermite interpolant
    through the accepted steps; certification-grade values should be read
    at the accepted steps themselves.
    """
    initial = np.asarray(initial, dtype=float)
    if initial.shape != (system.dimension,):
        raise DomainError(f"initial state must have shape ({system.dimension},)")
    t0, t1 = float(span[0]), float(span[1])
    if t0 == t1:
        raise DomainError("empty integration range")
    for name, guard in system.guards.items():
        if guard(t0, initial) <= 0.0:
            raise DomainError(f"initial state violates guard {name!r}")

    events = []
    guard_names = list(system.guards)
    for name in guard_names:
        fn = system.guards[name]

        def event(t, y, fn=fn):
            return fn(t, y)

        event.terminal = True
        event.direction = 0
        events.append(event)
    monitor_names = list(system.monitors)
    if math.isfinite(monitor_ceiling):
        for name in monitor_names:
            fn = system.monitors[name]

            def blowup(t, y, fn=fn):
                return monitor_ceiling**2 - fn(t, y) ** 2

            blowup.terminal = True
            blowup.direction = 0
            events.append(blowup)

    sol = solve_ivp(
        system.rhs,
        (t0, t1),
        initial,
        method="RK45",
        rtol=tolerances[1],
        atol=tolerances[0],
        max_step=max_step,
        events=events or None,
        dense_output=False,
    )

    if sol.status == -1:
        termination = Termination.STEP_UNDERFLOW
    elif sol.status == 1:
        fired = [i for i, te in enumerate(sol.t_events) if len(te)]
        termination = (
            Termination.SINGULARITY
            if fired and fired[0] < len(guard_names)
            else Termination.MONITOR_BLOWUP
        )
    else:
        termination = Termination.RANGE_END

    params = sol.t
    states = sol.y.T
    # never emit samples inside the guard margin
    keep = np.ones(len(params), dtype=bool)
    for guard in system.guards.values():
        for i in range(len(params)):
            if keep[i] and guard(params[i], states[i]) < GUARD_MARGIN:
                keep[i] = False
    params = params[keep]
    states = states[keep]
    if len(params) == 0:
        raise DomainError("no sample survived the guard margin; range starts singular")

    monitor_values = {
        name: np.array([fn(t, states[i]) for i, t in enumerate(params)])
        for name, fn in system.monitors.items()
    }
    max_monitor = {
        name: float(np.max(np.abs(vals))) if len(vals) else 0.0
        for name, vals in monitor_values.items()
    }

    interpolant = None
    if len(params) >= 2:
        derivs = np.array([system.rhs(t, states[i]) for i, t in enumerate(params)])
        order = slice(None) if params[1] > params[0] else slice(None, None, -1)
        interpolant = CubicHermiteSpline(params[order], states[order], derivs[order], axis=0)

    t_stop = float(sol.t[-1])
    if sol.status == 1:
        for te in sol.t_events:
            if len(te):
                t_stop = float(te[0])
                break

    return Trajectory(
        parameters=params,
        states=states,
        termination=termination,
        t_stop=t_stop,
        monitor_values=monitor_values,
        max_monitor=max_monitor,
        interpolant=interpolant,
        tolerances=tolerances,
    )


# ---------------------------------------------------------------------------
# reductions
# ---------------------------------------------------------------------------


def reduce_rotation_biharmonic(m: int, c: int = 1) -> OdeSystem:
    """Third-order flow of the rotation-hypersurface tilt function.

    State (u, u', u'').  The second-order mean-curvature equation is solved
    for the top tilt derivative (its H'' coefficient is (1 - u^2)/m); the
    first-order companion equation is installed as the monitor
    ``tangential`` and vanishes along the flow only on genuine biharmonic
    profiles.  Guards keep sin(s) and 1 - u^2 positive.
    """
    if m < 2:
        raise DomainError("factor dimension must be >= 2")
    n = m - 1

    def u3_of(t: float, y: np.ndarray) -> float:
        u, u1, u2 = y
        cot = math.cos(t) / math.sin(t)
        csc2 = 1.0 / math.sin(t) ** 2
        one = 1.0 - u * u
        h0 = (u1 + n * u * cot) / m
        h1 = (u2 + n * (u1 * cot - u * csc2)) / m
        h2_target = -(((n * one * cot - u * u1) * h1
                       + (n * u * u * (c - cot * cot) - u1 * u1) * h0) / one)
        return m * h2_target - n * (u2 * cot - 2.0 * u1 * csc2 + 2.0 * u * csc2 * cot)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return np.array([y[1], y[2], u3_of(t, y)])

    def jets(t: float, y: np.ndarray) -> dict[str, ProfileJet]:
        return {"u": ProfileJet(t, y[0], y[1], y[2], u3_of(t, y))}

    def tangential(t: float, y: np.ndarray) -> float:
        return rotation_residual_tangential(ProfileJet(t, y[0], y[1], y[2], 0.0), t, m, c=c)

    return OdeSystem(
        dimension=3,
        rhs=rhs,
        guards={
            "axis_distance": lambda t, y: math.sin(t),
            "tilt_bound": lambda t, y: 1.0 - y[0] * y[0],
        },
        monitors={"tangential": tangential},
        state_names=("u", "u_d1", "u_d2"),
        jets=jets,
        label=f"rotation-biharmonic(m={m},c={c})",
    )


def _surface_height_jets(y: np.ndarray) -> tuple[float, float]:
    """(h'', h''') implied by the arclength relation h' h'' = -k' k''."""
    _, k1, k2, k3, _, h1 = y
    h2 = -k1 * k2 / h1
    h3 = -(k2 * k2 + k1 * k3 + h2 * h2) / h1
    return h2, h3


def reduce_surface_biharmonic(kind: str, C: float) -> OdeSystem:
    """Fourth-order flow of the rotation-surface polar profile.

    State (k, k', k'', k''', h, h').  The fourth-order polar equation is
    solved for k'''' (unit leading coefficient); the height travels along
    as an independently integrated state so the ``arc`` monitor measures
    genuine constraint drift rather than holding by construction.  The
    first-integral equation is the ``flux`` monitor.
    """
    hyperbolic = {"sphere": False, "hyperbolic": True}.get(kind)
    if hyperbolic is None:
        raise DomainError(f"kind must be 'sphere' or 'hyperbolic', got {kind!r}")

    def k4_of(t: float, y: np.ndarray) -> float:
        probe = ProfileJet(t, y[0], y[1], y[2], y[3], 0.0)
        return -surface_main_residual(probe, hyperbolic)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        h2, _ = _surface_height_jets(y)
        return np.array([y[1], y[2], y[3], k4_of(t, y), y[5], h2])

    def jets(t: float, y: np.ndarray) -> dict[str, ProfileJet]:
        h2, h3 = _surface_height_jets(y)
        return {
            "k": ProfileJet(t, y[0], y[1], y[2], y[3], k4_of(t, y)),
            "h": ProfileJet(t, y[4], y[5], h2, h3),
        }

    def flux(t: float, y: np.ndarray) -> float:
        h2, h3 = _surface_height_jets(y)
        return surface_flux_residual(
            ProfileJet(t, y[0], y[1], y[2], y[3]),
            ProfileJet(t, y[4], y[5], h2, h3),
            C,
            hyperbolic,
        )

    guards = {
        "speed_bound": lambda t, y: 1.0 - y[1] * y[1],
        "height_branch": lambda t, y: y[5],
    }
    if hyperbolic:
        guards["axis_distance"] = lambda t, y: math.sinh(y[0])
    else:
        guards["polar_distance"] = lambda t, y: math.cos(y[0])

    return OdeSystem(
        dimension=6,
        rhs=rhs,
        guards=guards,
        monitors={
            "flux": flux,
            "arc": lambda t, y: y[1] * y[1] + y[5] * y[5] - 1.0,
        },
        state_names=("k", "k_d1", "k_d2", "k_d3", "h", "h_d1"),
        jets=jets,
        label=f"surface-biharmonic({kind},C={C})",
    )


def surface_initial_state(k0: float, k1: float, k2: float = 0.0, k3: float = 0.0,
                          h0: float = 0.0) -> np.ndarray:
    """Initial state for the surface flow on the positive height branch."""
    if abs(k1) > 1.0:
        raise DomainError(f"|k'| = {abs(k1)} > 1 violates the arclength constraint")
    return np.array([k0, k1, k2, k3, h0, math.sqrt(1.0 - k1 * k1)])


def minimal_profile_system(kind: str, m: int = 2) -> OdeSystem:
    """Flows generating zero-mean-curvature profiles for null tests.

    sphere_hypersurface: u' = -(m-1) u cot s, the vanishing of the rotation
    mean curvature (closed form u = const / sin^{m-1} s).
    sphere_surface / hyperbolic_surface: arclength profile flow with
    h'' = h' k' tan k and k'' = -h'^2 tan k (coth analogues in the
    hyperbolic case), which keeps both the arclength and the vanishing of
    the surface mean curvature exact along the flow.
    """
    if kind == "sphere_hypersurface":
        n = m - 1

        def jets(t: float, y: np.ndarray) -> dict[str, ProfileJet]:
            cot = math.cos(t) / math.sin(t)
            csc2 = 1.0 / math.sin(t) ** 2
            u = y[0]
            u1 = -n * u * cot
            u2 = -n * (u1 * cot - u * csc2)
            u3 = -n * (u2 * cot - 2.0 * u1 * csc2 + 2.0 * u * csc2 * cot)
            return {"u": ProfileJet(t, u, u1, u2, u3)}

        def mean(t: float, y: np.ndarray) -> float:
            return mean_curvature_sphere(jets(t, y)["u"], t, m)

        return OdeSystem(
            dimension=1,
            rhs=lambda t, y: np.array([-n * y[0] * math.cos(t) / math.sin(t)]),
            guards={"axis_distance": lambda t, y: math.sin(t)},
            monitors={"mean_curvature": mean},
            state_names=("u",),
            jets=jets,
            label=f"minimal-hypersurface(m={m})",
        )

    if kind == "sphere_surface":

        def jets_s(t: float, y: np.ndarray) -> dict[str, ProfileJet]:
            k, k1, h, h1 = y
            tau = math.tan(k)
            sec2 = 1.0 + tau * tau
            k2 = -h1 * h1 * tau
            k3 = -h1 * h1 * k1 * (3.0 * tau * tau + 1.0)
            k4 = -h1 * h1 * tau * (
                (3.0 * tau * tau + 1.0) * (2.0 * k1 * k1 - h1 * h1) + 6.0 * k1 * k1 * sec2
            )
            h2 = h1 * k1 * tau
            h3 = h1 * (tau * tau * (k1 * k1 - h1 * h1) + k1 * k1 * sec2)
            return {"k": ProfileJet(t, k, k1, k2, k3, k4), "h": ProfileJet(t, h, h1, h2, h3)}

        return OdeSystem(
            dimension=4,
            rhs=lambda t, y: np.array(
                [
                    y[1],
                    -y[3] * y[3] * math.tan(y[0]),
                    y[3],
                    y[3] * y[1] * math.tan(y[0]),
                ]
            ),
            guards={"polar_distance": lambda t, y: math.cos(y[0])},
            monitors={"arc": lambda t, y: y[1] * y[1] + y[3] * y[3] - 1.0},
            state_names=("k", "k_d1", "h", "h_d1"),
            jets=jets_s,
            label="minimal-surface(sphere)",
        )

    if kind == "hyperbolic_surface":

        def jets_h(t: float, y: np.ndarray) -> dict[str, ProfileJet]:
            k, k1, h, h1 = y
            ct = math.cosh(k) / math.sinh(k)
            ct1 = ct * ct - 1.0
            k2 = h1 * h1 * ct
            k3 = -h1 * h1 * k1 * (3.0 * ct * ct - 1.0)
            k4 = h1 * h1 * ct * (
                (3.0 * ct * ct - 1.0) * (2.0 * k1 * k1 - h1 * h1) + 6.0 * k1 * k1 * ct1
            )
            h2 = -h1 * k1 * ct
            h3 = h1 * (ct * ct * (k1 * k1 - h1 * h1) + k1 * k1 * ct1)
            return {"k": ProfileJet(t, k, k1, k2, k3, k4), "h": ProfileJet(t, h, h1, h2, h3)}

        return OdeSystem(
            dimension=4,
            rhs=lambda t, y: np.array(
                [
                    y[1],
                    y[3] * y[3] * math.cosh(y[0]) / math.sinh(y[0]),
                    y[3],
                    -y[3] * y[1] * math.cosh(y[0]) / math.sinh(y[0]),
                ]
            ),
            guards={"axis_distance": lambda t, y: math.sinh(y[0])},
            monitors={"arc": lambda t, y: y[1] * y[1] + y[3] * y[3] - 1.0},
            state_names=("k", "k_d1", "h", "h_d1"),
            jets=jets_h,
            label="minimal-surface(hyperbolic)",
        )

    raise DomainError(f"unknown minimal profile kind {kind!r}")
