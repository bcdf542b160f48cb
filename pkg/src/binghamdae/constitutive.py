"""Force/kinematics constitutive laws for the lumped mass-spring-dashpot system.

The spring is linear (displacement given by force over stiffness). Dashpot
laws are written the "other way round": velocity as a function of force.
Three variants are provided:

- :class:`Bingham` -- zero velocity below a yield force, linear excess above it.
- :class:`LinearViscous` -- velocity = force / c.
- :class:`GenericMonotone` -- any user supplied nondecreasing map.

All laws are immutable. Each exposes ``velocity(F)``, ``slope(F)`` (derivative
of velocity with respect to force, used by the root-finding corrector) and
``velocity_scale`` (used for the numerical zero-velocity convention).
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import Callable, Optional, Union

import numpy as np


class ConstitutiveError(ValueError):
    """Raised when a law or a parameter set violates its invariants."""


class SetValuedError(ValueError):
    """Raised when an inverse is requested where the law is set-valued."""


def sgn(value: float) -> float:
    """Sign with ``sgn(0) = 0``."""
    if value > 0.0:
        return 1.0
    if value < 0.0:
        return -1.0
    return 0.0


@dataclass(frozen=True)
class SystemParams:
    """Mass ``m`` and spring stiffness ``k`` of the lumped system."""

    m: float
    k: float

    def __post_init__(self):
        if not (np.isfinite(self.m) and self.m > 0):
            raise ConstitutiveError("m must be > 0")
        if not (np.isfinite(self.k) and self.k > 0):
            raise ConstitutiveError("k must be > 0")


@dataclass(frozen=True)
class ValidationReport:
    """Findings of :func:`law_wellformed`. Empty ``problems`` means valid."""

    problems: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return "valid"
        return "invalid: " + "; ".join(self.problems)


@dataclass(frozen=True)
class Bingham:
    """Bingham dashpot.

    ``v = 0`` when ``|F| <= threshold``, otherwise
    ``v = gamma * (F - sgn(F) * threshold)``.

    Parameters
    ----------
    gamma : float
        Slope of the slip branch (velocity per force), > 0.
    threshold : float
        Yield force (static friction coefficient times normal force), >= 0.
    strict : bool
        Reject invalid parameters at construction. Pass ``False`` to build a
        law that can then be inspected with :func:`law_wellformed`.
    """

    gamma: float
    threshold: float
    strict: InitVar[bool] = True

    def __post_init__(self, strict):
        if strict:
            _raise_if_invalid(self)

    def velocity(self, F: float) -> float:
        return bingham_velocity(self, F)

    def slope(self, F: float) -> float:
        return self.gamma if abs(F) > self.threshold else 0.0

    @property
    def velocity_scale(self) -> float:
        return self.gamma * self.threshold if self.threshold > 0 else 1.0


@dataclass(frozen=True)
class LinearViscous:
    """Newtonian dashpot, ``v = F / c``."""

    c: float
    strict: InitVar[bool] = True

    def __post_init__(self, strict):
        if strict:
            _raise_if_invalid(self)

    def velocity(self, F: float) -> float:
        return F / self.c

    def slope(self, F: float) -> float:
        return 1.0 / self.c

    @property
    def velocity_scale(self) -> float:
        return 1.0


@dataclass(frozen=True)
class GenericMonotone:
    """User supplied velocity-from-force map ``g``.

    ``g`` must satisfy ``g(0) = 0``, be nondecreasing and dissipative
    (``F * g(F) >= 0``). These properties are checked by sampling ``g`` on
    ``n_samples`` points over ``force_range``; the check is best effort, since
    monotonicity of an arbitrary callable is not decidable.

    ``dg`` is an optional derivative. Without it a central difference is used.
    """

    g: Callable[[float], float]
    dg: Optional[Callable[[float], float]] = None
    force_range: tuple = (-10.0, 10.0)
    n_samples: int = 257
    scale: float = 1.0
    strict: InitVar[bool] = True

    def __post_init__(self, strict):
        if strict:
            _raise_if_invalid(self)

    def velocity(self, F: float) -> float:
        return float(self.g(F))

    def slope(self, F: float) -> float:
        if self.dg is not None:
            return float(self.dg(F))
        h = 1e-7 * max(1.0, abs(F))
        return (float(self.g(F + h)) - float(self.g(F - h))) / (2.0 * h)

    @property
    def velocity_scale(self) -> float:
        return self.scale


DashpotLaw = Union[Bingham, LinearViscous, GenericMonotone]


def bingham_velocity(law: Bingham, F_d: float) -> float:
    """Velocity of a Bingham dashpot carrying force ``F_d``."""
    if abs(F_d) <= law.threshold:
        return 0.0
    return law.gamma * (F_d - sgn(F_d) * law.threshold)


def bingham_force_from_velocity(law: Bingham, v: float) -> float:
    """Inverse of the slip branch: ``v / gamma + sgn(v) * threshold``.

    Raises
    ------
    SetValuedError
        For ``v == 0``, where any force in ``[-threshold, threshold]`` fits.
    """
    if v == 0.0:
        raise SetValuedError(
            "set-valued-at-zero: any force in [-threshold, threshold] gives v = 0"
        )
    return v / law.gamma + sgn(v) * law.threshold


def dashpot_residual(law: DashpotLaw, v: float, F_d: float) -> float:
    """``v - g(F_d)``; zero iff ``(v, F_d)`` satisfies the law."""
    return v - law.velocity(F_d)


def spring_displacement(params: SystemParams, F_s: float) -> float:
    return F_s / params.k


def law_wellformed(law: DashpotLaw) -> ValidationReport:
    """Collect every violated invariant of ``law``."""
    problems = []
    if isinstance(law, Bingham):
        if not law.gamma > 0:
            problems.append("gamma <= 0")
        if not law.threshold >= 0:
            problems.append("threshold < 0")
    elif isinstance(law, LinearViscous):
        if not law.c > 0:
            problems.append("c <= 0")
    elif isinstance(law, GenericMonotone):
        problems.extend(_sample_generic(law))
    else:
        problems.append(f"unknown law type {type(law).__name__}")
    return ValidationReport(tuple(problems))


def _sample_generic(law: GenericMonotone) -> list:
    problems = []
    lo, hi = law.force_range
    if law.n_samples < 2 or not hi > lo:
        return ["invalid sampling grid"]
    grid = np.linspace(lo, hi, law.n_samples)
    try:
        g0 = float(law.g(0.0))
        values = np.array([float(law.g(F)) for F in grid])
    except Exception as exc:  # user callable
        return [f"g raised {type(exc).__name__}: {exc}"]
    if not np.all(np.isfinite(values)) or not np.isfinite(g0):
        problems.append("g returned a non-finite value")
        return problems
    if g0 != 0.0:
        problems.append(f"g(0) = {g0!r} != 0")
    if np.any(np.diff(values) < 0):
        problems.append("monotonicity: g decreases on the sampling grid")
    if np.any(grid * values < 0):
        problems.append("dissipation: F * g(F) < 0 on the sampling grid")
    return problems


def _raise_if_invalid(law):
    report = law_wellformed(law)
    if not report.valid:
        raise ConstitutiveError(f"{type(law).__name__}: {report}")
