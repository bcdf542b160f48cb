"""Set-valued right-hand side of the Bingham system and trajectory certification.

For ``v != 0`` the admissible rates form a single point. At ``v = 0`` the
dashpot force may be anything in ``[-threshold, threshold]``, so the
acceleration ranges over an interval of width ``2 threshold / m`` while the
displacement rate is pinned at zero.

Trajectories are certified node by node: the backward difference of
``(v, x, F_s)`` over each step must lie in the set evaluated at the end of
the step. This is the discrete counterpart of "almost everywhere in time".
Distances use the max norm over components.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np

from .constitutive import Bingham, SystemParams
from .forcing import Forcing
from .system import State

DEFAULT_TOL = 1e-8


class UnsupportedLawError(TypeError):
    pass


@dataclass(frozen=True)
class Singleton:
    dv_dt: float
    dx_dt: float
    dFs_dt: float


@dataclass(frozen=True)
class AccelInterval:
    dv_lo: float
    dv_hi: float
    dx_dt: float = 0.0
    dFs_dt: float = 0.0

    @property
    def width(self) -> float:
        return self.dv_hi - self.dv_lo


FilippovSet = Union[Singleton, AccelInterval]


@dataclass(frozen=True)
class InclusionReport:
    steps_checked: int
    violations: List[Tuple[int, float]]
    max_distance: float
    tol: float
    distances: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return not self.violations


def filippov_set(
    params: SystemParams, law: Bingham, state: State, F_ext: float
) -> FilippovSet:
    if not isinstance(law, Bingham):
        raise UnsupportedLawError(
            f"unsupported-law: set-valued field only defined for Bingham, got {type(law).__name__}"
        )
    m, k = params.m, params.k
    v = state.v
    net = F_ext - state.F_s
    if v > 0:
        return Singleton((net - (v / law.gamma + law.threshold)) / m, v, k * v)
    if v < 0:
        return Singleton((net - (v / law.gamma - law.threshold)) / m, v, k * v)
    return AccelInterval((net - law.threshold) / m, (net + law.threshold) / m)


def _interval_distance(value, lo, hi):
    if value < lo:
        return lo - value
    if value > hi:
        return value - hi
    return 0.0


def contains(
    fset: FilippovSet,
    dv_dt: float,
    dx_dt: float,
    tol: float = 0.0,
    dFs_dt: Optional[float] = None,
):
    """Membership test. Returns ``(inside, distance)``.

    ``dFs_dt`` is optional; when given, the spring-rate component is checked
    too.
    """
    if isinstance(fset, Singleton):
        d = max(abs(dv_dt - fset.dv_dt), abs(dx_dt - fset.dx_dt))
    else:
        d = max(_interval_distance(dv_dt, fset.dv_lo, fset.dv_hi), abs(dx_dt - fset.dx_dt))
    if dFs_dt is not None:
        d = max(d, abs(dFs_dt - fset.dFs_dt))
    return d <= tol, d


def default_tolerance(trajectory) -> float:
    """``1e-8`` scaled by ``max(1, k max|x| / m)``."""
    p = trajectory.params
    x_max = float(np.max(np.abs(trajectory.x))) if len(trajectory.x) else 0.0
    return DEFAULT_TOL * max(1.0, p.k * x_max / p.m)


def check_inclusion(
    trajectory,
    forcing: Optional[Forcing] = None,
    tol: Optional[float] = None,
    check_spring_rate: bool = True,
) -> InclusionReport:
    """Certify that every backward difference lies in the set-valued field.

    ``tol=None`` selects :func:`default_tolerance`. The external force at
    ``t_{n+1}`` comes from ``forcing`` or, if omitted, the stored ``F`` column.
    """
    tr = trajectory
    if tol is None:
        tol = default_tolerance(tr)
    n_steps = len(tr.t) - 1
    distances = np.zeros(max(n_steps, 0))
    violations = []
    for n in range(n_steps):
        end = tr.state(n + 1)
        F_ext = forcing(end.t) if forcing is not None else float(tr.F[n + 1])
        fset = filippov_set(tr.params, tr.law, end, F_ext)
        dv = (tr.v[n + 1] - tr.v[n]) / tr.dt
        dx = (tr.x[n + 1] - tr.x[n]) / tr.dt
        dFs = (tr.F_s[n + 1] - tr.F_s[n]) / tr.dt if check_spring_rate else None
        # spring-rate distance expressed in displacement-rate units
        inside, d = contains(fset, dv, dx, tol)
        if dFs is not None:
            d = max(d, abs(dFs - fset.dFs_dt) / tr.params.k)
            inside = d <= tol
        distances[n] = d
        if not inside:
            violations.append((n + 1, float(d)))
    return InclusionReport(
        n_steps,
        violations,
        float(distances.max(initial=0.0)),
        tol,
        distances,
    )
