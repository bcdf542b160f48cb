"""State of the semi-explicit DAE, consistent initialization and equilibria."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .constitutive import (
    Bingham,
    DashpotLaw,
    SystemParams,
    bingham_force_from_velocity,
    dashpot_residual,
)

SPRING_RTOL = 1e-14
DASHPOT_ATOL = 1e-12


class InconsistentInitError(ValueError):
    """Initial data that cannot satisfy the algebraic constraints."""


@dataclass(frozen=True)
class State:
    """Instantaneous unknowns ``(t, x, v, F_s, F_d)``."""

    t: float
    x: float
    v: float
    F_s: float
    F_d: float

    def violations(self, params: SystemParams, law: DashpotLaw) -> list:
        """Return the list of broken state invariants (empty if consistent)."""
        out = []
        x_spring = self.F_s / params.k
        if abs(self.x - x_spring) > SPRING_RTOL * max(abs(self.x), abs(x_spring)):
            out.append(f"spring: x={self.x!r} but F_s/k={x_spring!r}")
        r = dashpot_residual(law, self.v, self.F_d)
        if abs(r) > DASHPOT_ATOL:
            out.append(f"dashpot residual {r!r}")
        return out

    def is_consistent(self, params: SystemParams, law: DashpotLaw) -> bool:
        return not self.violations(params, law)


@dataclass(frozen=True)
class EquilibriumInterval:
    """Closed interval ``[x_lo, x_hi]`` of rest displacements."""

    x_lo: float
    x_hi: float

    def __contains__(self, x):
        return self.x_lo <= x <= self.x_hi

    @property
    def width(self) -> float:
        return self.x_hi - self.x_lo


def consistent_init(
    params: SystemParams,
    law: DashpotLaw,
    x0: float,
    F_d0: Optional[float] = None,
    v0: Optional[float] = None,
    t0: float = 0.0,
) -> State:
    """Build a state at ``t0`` that satisfies both algebraic constraints.

    With ``F_d0`` given, the velocity follows from the dashpot law. With only a
    nonzero ``v0``, the dashpot force comes from the slip-branch inverse
    (Bingham) or is rejected for other laws unless ``F_d0`` is also supplied.
    When the force is set-valued (``v0 == 0`` or nothing supplied) it defaults
    to zero.
    """
    F_s = params.k * x0
    if F_d0 is not None:
        v = law.velocity(F_d0)
        if v0 is not None and abs(v0 - v) > DASHPOT_ATOL:
            raise InconsistentInitError(
                f"inconsistent-pair: v0={v0!r} but the law gives v={v!r} for F_d0={F_d0!r}"
            )
        return State(t0, x0, v, F_s, F_d0)
    if v0 is None or v0 == 0.0:
        return State(t0, x0, 0.0, F_s, 0.0)
    if isinstance(law, Bingham):
        F_d = bingham_force_from_velocity(law, v0)
    else:
        F_d = _invert_monotone(law, v0)
    return State(t0, x0, v0, F_s, F_d)


def _invert_monotone(law: DashpotLaw, v0: float) -> float:
    from scipy.optimize import brentq

    hi = 1.0
    for _ in range(200):
        if (law.velocity(hi) - abs(v0)) > 0 and (law.velocity(-hi) + abs(v0)) < 0:
            break
        hi *= 2.0
    else:
        raise InconsistentInitError(f"no force produces v0={v0!r}")
    F = brentq(lambda F: law.velocity(F) - v0, -hi, hi, xtol=1e-15, rtol=1e-15)
    return F


def rhs_ode_part(params: SystemParams, state: State, F_ext: float):
    """Differential part of the DAE: ``(dv/dt, dF_s/dt)``."""
    dv_dt = (F_ext - state.F_s - state.F_d) / params.m
    dFs_dt = params.k * state.v
    return dv_dt, dFs_dt


def equilibrium_interval(
    params: SystemParams, law: Bingham, F_bar: float
) -> EquilibriumInterval:
    """Displacements where a constant load ``F_bar`` can be held at rest."""
    return EquilibriumInterval(
        (F_bar - law.threshold) / params.k, (F_bar + law.threshold) / params.k
    )


def is_equilibrium(
    params: SystemParams, law: Bingham, state: State, F_bar: float
) -> bool:
    # exact zero: the stick branch assigns v = 0 literally
    return state.v == 0.0 and state.x in equilibrium_interval(params, law, F_bar)
