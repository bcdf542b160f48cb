"""Backward-Euler predictor-corrector for the Bingham mass-spring-dashpot DAE.

One step from ``t_n`` to ``t_{n+1}``:

1. predictor ``F~ = m v_n / dt + F(t_{n+1}) - F_s^n``;
2. corrector: solve ``A v + (dt/m) F_d = (dt/m) F~`` together with the
   dashpot law, where ``A = 1 + dt^2 k / m``. For a Bingham law this has a
   closed form (stick when ``|F~| <= threshold``); other laws go through a
   safeguarded Newton iteration in ``F_d`` alone;
3. spring update ``F_s^{n+1} = F_s^n + dt k v^{n+1}``, ``x = F_s / k``.

:func:`residual_check` re-evaluates the discrete equations on a finished
trajectory without touching the corrector code.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .constitutive import Bingham, DashpotLaw, SystemParams, sgn
from .forcing import Forcing
from .system import State

DEFAULT_STEP_BUDGET = 10_000_000
NEWTON_MAX_ITER = 200


class StepMode(str, enum.Enum):
    STICK = "stick"
    SLIP = "slip"


class NumericalError(RuntimeError):
    """Base class for numerical failures of the stepper."""


class NonConvergenceError(NumericalError):
    pass


class BracketError(NumericalError):
    pass


class StepBudgetError(NumericalError):
    pass


@dataclass(frozen=True)
class StepCoefficients:
    """``A = 1 + dt^2 k/m`` and, for Bingham laws, ``D = gamma A + dt/m``."""

    A: float
    D: Optional[float]
    dt: float

    @classmethod
    def build(cls, params: SystemParams, law: DashpotLaw, dt: float):
        if not dt > 0:
            raise ValueError("dt must be > 0")
        A = 1.0 + dt * dt * params.k / params.m
        D = law.gamma * A + dt / params.m if isinstance(law, Bingham) else None
        return cls(A, D, dt)


@dataclass
class Trajectory:
    """Node values of a simulation on a uniform grid ``t_n = t_0 + n dt``.

    Arrays all have length ``N + 1``; ``modes`` has length ``N`` (one entry per
    step). ``F`` holds the external force sampled at each node.
    """

    params: SystemParams
    law: DashpotLaw
    forcing: Optional[Forcing]
    dt: float
    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    F_s: np.ndarray
    F_d: np.ndarray
    F: np.ndarray
    modes: List[StepMode] = field(default_factory=list)

    def __len__(self):
        return len(self.t)

    def state(self, n: int) -> State:
        return State(
            float(self.t[n]), float(self.x[n]), float(self.v[n]),
            float(self.F_s[n]), float(self.F_d[n]),
        )

    @property
    def states(self) -> List[State]:
        return [self.state(n) for n in range(len(self))]

    @property
    def final_state(self) -> State:
        return self.state(len(self) - 1)

    def copy(self) -> "Trajectory":
        return Trajectory(
            self.params, self.law, self.forcing, self.dt,
            self.t.copy(), self.x.copy(), self.v.copy(),
            self.F_s.copy(), self.F_d.copy(), self.F.copy(), list(self.modes),
        )


@dataclass(frozen=True)
class ResidualReport:
    max_momentum_residual: float
    max_spring_residual: float
    max_constitutive_residual: float
    worst_step_index: Optional[int]
    momentum: np.ndarray = field(repr=False, compare=False)
    spring: np.ndarray = field(repr=False, compare=False)
    constitutive: np.ndarray = field(repr=False, compare=False)

    @property
    def max_residual(self) -> float:
        return max(
            self.max_momentum_residual,
            self.max_spring_residual,
            self.max_constitutive_residual,
        )

    def passes(self, tol: float = 1e-10) -> bool:
        return self.max_residual <= tol


def predictor(params: SystemParams, state_n: State, F_next: float, dt: float) -> float:
    return params.m * state_n.v / dt + F_next - state_n.F_s


def corrector_bingham(params: SystemParams, law: Bingham, F_tilde: float, dt: float):
    """Closed-form corrector. Returns ``(v_next, F_d_next, mode)``."""
    threshold = law.threshold
    if abs(F_tilde) <= threshold:
        return 0.0, F_tilde, StepMode.STICK
    coef = StepCoefficients.build(params, law, dt)
    s = sgn(F_tilde)
    # s*threshold + (dt/m)(F~ - s*threshold)/D, algebraically the usual
    # weighted mean but keeps |F_d| >= threshold under rounding
    F_d = s * threshold + (dt / params.m) * (F_tilde - s * threshold) / coef.D
    v = law.gamma * (F_d - sgn(F_d) * threshold)
    return v, F_d, StepMode.SLIP


def corrector_generic(
    params: SystemParams,
    law: DashpotLaw,
    F_tilde: float,
    dt: float,
    max_iter: int = NEWTON_MAX_ITER,
):
    """Root-finding corrector for any monotone velocity-from-force law.

    Solves ``h(F) = A g(F) - (dt/m)(F~ - F) = 0`` for the dashpot force. ``h``
    is strictly increasing and changes sign over ``[min(0, F~), max(0, F~)]``,
    so Newton steps are accepted only inside the shrinking bracket and only
    when they reduce ``|h|``; bisection is used otherwise.

    Raises
    ------
    BracketError
        If ``h`` has no sign change on the bracket (``g`` violates its
        invariants).
    NonConvergenceError
        After ``max_iter`` iterations without convergence.
    """
    coef = StepCoefficients.build(params, law, dt)
    A, w = coef.A, dt / params.m

    def h(F):
        return A * law.velocity(F) - w * (F_tilde - F)

    if F_tilde == 0.0:
        return _generic_result(law, 0.0)

    lo, hi = min(0.0, F_tilde), max(0.0, F_tilde)
    h_lo, h_hi = h(lo), h(hi)
    if h_lo == 0.0:
        return _generic_result(law, lo)
    if h_hi == 0.0:
        return _generic_result(law, hi)
    if h_lo > 0.0 or h_hi < 0.0:
        raise BracketError(
            f"bracket-failure: h({lo!r})={h_lo!r}, h({hi!r})={h_hi!r}"
        )

    ftol = 1e-12 * max(1.0, abs(F_tilde))
    F = F_tilde
    hF = h_hi if F == hi else h_lo
    for _ in range(max_iter):
        dh = A * law.slope(F) + w
        candidate = F - hF / dh if dh > 0 else math.nan
        if lo < candidate < hi:
            h_c = h(candidate)
            if abs(h_c) >= abs(hF):
                candidate = None
        else:
            candidate = None
        if candidate is None:
            candidate = 0.5 * (lo + hi)
            h_c = h(candidate)
        step = abs(candidate - F)
        F, hF = candidate, h_c
        if hF == 0.0:
            break
        if hF < 0.0:
            lo = F
        else:
            hi = F
        xtol = 4.0 * np.finfo(float).eps * max(1.0, abs(F))
        if abs(hF) <= ftol and step <= xtol:
            break
        if hi - lo <= xtol:
            # bracket collapsed to rounding level
            break
    else:
        raise NonConvergenceError(
            f"non-convergence: corrector did not converge in {max_iter} iterations"
            f" (F_tilde={F_tilde!r}, residual={hF!r})"
        )
    return _generic_result(law, F)


def _generic_result(law: DashpotLaw, F_d: float):
    v = law.velocity(F_d)
    if v == 0.0 or abs(v) <= 1e-14 * law.velocity_scale:
        return v, F_d, StepMode.STICK
    return v, F_d, StepMode.SLIP


def step(
    params: SystemParams,
    law: DashpotLaw,
    state_n: State,
    F_next: float,
    dt: float,
):
    """Advance ``state_n`` by one backward-Euler step. Returns ``(State, StepMode)``."""
    F_tilde = predictor(params, state_n, F_next, dt)
    if isinstance(law, Bingham):
        v, F_d, mode = corrector_bingham(params, law, F_tilde, dt)
    else:
        v, F_d, mode = corrector_generic(params, law, F_tilde, dt)
    F_s = state_n.F_s + dt * params.k * v
    return State(state_n.t + dt, F_s / params.k, v, F_s, F_d), mode


def simulate(
    params: SystemParams,
    law: DashpotLaw,
    forcing: Forcing,
    init: State,
    dt: float,
    t_end: float,
    max_steps: int = DEFAULT_STEP_BUDGET,
) -> Trajectory:
    """Integrate from ``init`` to ``t_end`` with ``round((t_end - t0)/dt)`` steps.

    Forcing is sampled at the end of each step.
    """
    if not dt > 0:
        raise ValueError("dt must be > 0")
    if t_end < init.t:
        raise ValueError("t_end must be >= init.t")
    n_steps = int(round((t_end - init.t) / dt))
    if n_steps > max_steps:
        raise StepBudgetError(
            f"step-budget: {n_steps} steps requested, budget is {max_steps}"
        )
    t0 = init.t
    t = t0 + dt * np.arange(n_steps + 1)
    x = np.empty(n_steps + 1)
    v = np.empty(n_steps + 1)
    F_s = np.empty(n_steps + 1)
    F_d = np.empty(n_steps + 1)
    F = np.empty(n_steps + 1)
    modes = []
    x[0], v[0], F_s[0], F_d[0] = init.x, init.v, init.F_s, init.F_d
    F[0] = forcing(t0)
    state = init
    for n in range(n_steps):
        F_next = forcing(t[n + 1])
        state, mode = step(params, law, state, F_next, dt)
        x[n + 1], v[n + 1] = state.x, state.v
        F_s[n + 1], F_d[n + 1] = state.F_s, state.F_d
        F[n + 1] = F_next
        modes.append(mode)
        # keep the clock on the uniform grid instead of accumulating dt
        state = State(t[n + 1], state.x, state.v, state.F_s, state.F_d)
    return Trajectory(params, law, forcing, dt, t, x, v, F_s, F_d, F, modes)


def residual_check(trajectory: Trajectory, forcing: Optional[Forcing] = None) -> ResidualReport:
    """Re-evaluate the discrete balance, spring-rate and dashpot equations.

    The external force at ``t_{n+1}`` is taken from ``forcing`` when given and
    from the trajectory's stored ``F`` column otherwise.
    """
    tr = trajectory
    m, k, dt = tr.params.m, tr.params.k, tr.dt
    if forcing is not None:
        F_next = np.array([forcing(float(ti)) for ti in tr.t[1:]])
    else:
        F_next = np.asarray(tr.F[1:], dtype=float)
    v0, v1 = tr.v[:-1], tr.v[1:]
    Fs0, Fs1 = tr.F_s[:-1], tr.F_s[1:]
    Fd1 = tr.F_d[1:]

    momentum = np.abs((v1 - v0) / dt - (F_next - Fs1 - Fd1) / m)
    spring = np.abs((Fs1 - Fs0) / dt - k * v1)
    constitutive = np.abs(tr.v - _law_velocity(tr.law, tr.F_d))

    if len(momentum) == 0:
        return ResidualReport(0.0, 0.0, float(constitutive.max(initial=0.0)), None,
                              momentum, spring, constitutive)
    per_step = np.maximum(np.maximum(momentum, spring), constitutive[1:])
    return ResidualReport(
        float(momentum.max()),
        float(spring.max()),
        float(constitutive.max()),
        int(np.argmax(per_step)),
        momentum,
        spring,
        constitutive,
    )


def _law_velocity(law: DashpotLaw, F_d: np.ndarray) -> np.ndarray:
    if isinstance(law, Bingham):
        excess = np.abs(F_d) > law.threshold
        return np.where(
            excess, law.gamma * (F_d - np.sign(F_d) * law.threshold), 0.0
        )
    return np.array([law.velocity(float(f)) for f in F_d])


@dataclass(frozen=True)
class ConvergenceRow:
    dt: float
    error: float
    observed_order: Optional[float]


def convergence_study(
    params: SystemParams,
    law: DashpotLaw,
    forcing: Forcing,
    init: State,
    t_end: float,
    dt_list: Sequence[float],
    dt_ref: Optional[float] = None,
) -> List[ConvergenceRow]:
    """Self-convergence of the displacement against a fine reference run.

    ``error`` is the max-norm difference of ``x`` on the nodes shared with the
    reference; ``observed_order`` is ``log(e_i / e_{i+1}) / log(dt_i / dt_{i+1})``.
    """
    dt_list = [float(d) for d in dt_list]
    if any(a <= b for a, b in zip(dt_list, dt_list[1:])):
        raise ValueError("dt_list must be strictly decreasing")
    if dt_ref is None:
        dt_ref = min(dt_list) / 10.0
    if dt_ref > min(dt_list) / 10.0 * (1 + 1e-12):
        raise ValueError("dt_ref must be <= min(dt_list) / 10")
    span = t_end - init.t
    ref = simulate(params, law, forcing, init, dt_ref, t_end)

    rows = []
    prev = None
    for dt in dt_list:
        ratio = dt / dt_ref
        stride = int(round(ratio))
        if abs(ratio - stride) > 1e-9 * ratio:
            raise ValueError(f"dt={dt!r} is not a multiple of dt_ref={dt_ref!r}")
        if abs(span / dt - round(span / dt)) > 1e-9 * span / dt:
            raise ValueError(f"dt={dt!r} does not divide the time span")
        run = simulate(params, law, forcing, init, dt, t_end)
        x_ref = ref.x[::stride][: len(run.x)]
        error = float(np.max(np.abs(run.x[: len(x_ref)] - x_ref)))
        order = None
        if prev is not None:
            prev_dt, prev_err = prev
            if error > 0 and prev_err > 0:
                order = math.log(prev_err / error) / math.log(prev_dt / dt)
        rows.append(ConvergenceRow(dt, error, order))
        prev = (dt, error)
    return rows
