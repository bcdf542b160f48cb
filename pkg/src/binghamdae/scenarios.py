"""Reference experiments, the naive signum comparator and trajectory summaries."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .constitutive import Bingham, SystemParams, sgn
from .forcing import F1, F2, Forcing, Zero
from .stepper import StepMode, Trajectory, simulate
from .system import State, consistent_init

PAPER_PARAMS = SystemParams(m=1.0, k=100.0)
PAPER_LAW = Bingham(gamma=1.0, threshold=1.0)
PAPER_DT = 1e-4
DEFAULT_T_END = 2.0
REST_MARGIN = 0.1


class ScenarioId(str, enum.Enum):
    F1_FORCED = "f1"
    F2_FORCED = "f2"
    SMALL_DISPLACEMENT = "small"
    LARGE_DISPLACEMENT = "large"


# (forcing, x0); F_d(0) = 0 in every case
_CASES = {
    ScenarioId.F1_FORCED: (F1, 0.0),
    ScenarioId.F2_FORCED: (F2, 0.0),
    ScenarioId.SMALL_DISPLACEMENT: (Zero(), 0.005),
    ScenarioId.LARGE_DISPLACEMENT: (Zero(), 0.5),
}

# the x0 = 0.5 free decay is still sliding at t = 2 and settles near t = 3.15
DEFAULT_HORIZON = {
    ScenarioId.F1_FORCED: DEFAULT_T_END,
    ScenarioId.F2_FORCED: DEFAULT_T_END,
    ScenarioId.SMALL_DISPLACEMENT: DEFAULT_T_END,
    ScenarioId.LARGE_DISPLACEMENT: 4.0,
}


@dataclass(frozen=True)
class TrajectorySummary:
    final_state: State
    extrema: List[Tuple[float, float]]
    rest_time: Optional[float]
    total_dissipation: float
    max_abs_x: float
    stick_fraction: float

    def as_dict(self) -> dict:
        s = self.final_state
        return {
            "final_t": s.t,
            "final_x": s.x,
            "final_v": s.v,
            "final_Fs": s.F_s,
            "final_Fd": s.F_d,
            "n_extrema": len(self.extrema),
            "extrema_abs_x": " ".join(repr(abs(x)) for _, x in self.extrema),
            "rest_time": "none" if self.rest_time is None else self.rest_time,
            "total_dissipation": self.total_dissipation,
            "max_abs_x": self.max_abs_x,
            "stick_fraction": self.stick_fraction,
        }


@dataclass(frozen=True)
class EnergyAudit:
    work_in: float
    spring_delta: float
    kinetic_delta: float
    dissipated: float
    closure_error: float


def case_setup(case: ScenarioId):
    """``(params, law, forcing, init)`` for one of the reference cases."""
    case = ScenarioId(case)
    forcing, x0 = _CASES[case]
    init = consistent_init(PAPER_PARAMS, PAPER_LAW, x0, F_d0=0.0)
    return PAPER_PARAMS, PAPER_LAW, forcing, init


def run_paper_case(case: ScenarioId, t_end: Optional[float] = None, dt: float = PAPER_DT):
    case = ScenarioId(case)
    if t_end is None:
        t_end = DEFAULT_HORIZON[case]
    if not t_end > 0:
        raise ValueError("t_end must be > 0")
    params, law, forcing, init = case_setup(case)
    traj = simulate(params, law, forcing, init, dt, t_end)
    return traj, summarize(traj)


def naive_signum_simulate(
    params: SystemParams,
    law: Bingham,
    forcing: Forcing,
    x0: float,
    v0: float,
    dt: float,
    t_end: float,
    coulomb: bool = False,
) -> Trajectory:
    """Classical RK4 integration of the signum-friction ODE.

    ``m dv/dt = F(t) - k x - sgn(v) threshold - v/gamma`` with ``sgn(0) = 0``.
    This formulation assigns a friction force at zero velocity and so cannot
    hold the mass at rest against a stretched spring; it exists as a foil for
    the DAE stepper. ``coulomb=True`` drops the viscous ``v/gamma`` term.
    """
    if not dt > 0:
        raise ValueError("dt must be > 0")
    m, k, thr = params.m, params.k, law.threshold
    visc = 0.0 if coulomb else 1.0 / law.gamma

    def damping(v):
        return sgn(v) * thr + visc * v

    def rhs(t, x, v):
        return v, (forcing(t) - k * x - damping(v)) / m

    n_steps = int(round(t_end / dt))
    t = dt * np.arange(n_steps + 1)
    x = np.empty(n_steps + 1)
    v = np.empty(n_steps + 1)
    x[0], v[0] = x0, v0
    for n in range(n_steps):
        tn, xn, vn = t[n], x[n], v[n]
        k1x, k1v = rhs(tn, xn, vn)
        k2x, k2v = rhs(tn + dt / 2, xn + dt / 2 * k1x, vn + dt / 2 * k1v)
        k3x, k3v = rhs(tn + dt / 2, xn + dt / 2 * k2x, vn + dt / 2 * k2v)
        k4x, k4v = rhs(tn + dt, xn + dt * k3x, vn + dt * k3v)
        x[n + 1] = xn + dt / 6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        v[n + 1] = vn + dt / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)

    F_d = np.array([damping(vi) for vi in v])
    F = np.array([forcing(ti) for ti in t])
    modes = [StepMode.STICK if vi == 0.0 else StepMode.SLIP for vi in v[1:]]
    return Trajectory(params, law, forcing, dt, t, x, v, k * x, F_d, F, modes)


def _extrema(t, x, v) -> List[Tuple[float, float]]:
    """Interior displacement turning points.

    A strict sign change of ``v`` between nodes ``n-1`` and ``n`` marks a turning
    point at ``n-1``. A run of exact zeros counts once, at its first node, when
    the motion after it reverses direction or never resumes.
    """
    out = []
    last_sign = 0.0
    n, N = 1, len(v)
    while n < N:
        s = sgn(v[n])
        if s != 0.0:
            if last_sign != 0.0 and s != last_sign and sgn(v[n - 1]) != 0.0:
                out.append((float(t[n - 1]), float(x[n - 1])))
            last_sign = s
            n += 1
            continue
        entry = n
        while n < N and v[n] == 0.0:
            n += 1
        if last_sign == 0.0:
            continue
        resumed = sgn(v[n]) if n < N else 0.0
        if resumed != last_sign:
            out.append((float(t[entry]), float(x[entry])))
    return out


def summarize(trajectory: Trajectory) -> TrajectorySummary:
    tr = trajectory
    if len(tr.t) == 0:
        raise ValueError("empty trajectory")
    moving = np.nonzero(tr.v != 0.0)[0]
    rest_idx = 0 if len(moving) == 0 else int(moving[-1]) + 1
    rest_time = None
    if rest_idx < len(tr.t) and tr.t[-1] - tr.t[rest_idx] >= REST_MARGIN - 1e-12:
        rest_time = float(tr.t[rest_idx])
    dissipation = float(np.sum(tr.F_d[1:] * tr.v[1:]) * tr.dt)
    n_steps = len(tr.modes)
    stick = sum(1 for mode in tr.modes if mode == StepMode.STICK)
    return TrajectorySummary(
        final_state=tr.final_state,
        extrema=_extrema(tr.t, tr.x, tr.v),
        rest_time=rest_time,
        total_dissipation=dissipation,
        max_abs_x=float(np.max(np.abs(tr.x))),
        stick_fraction=stick / n_steps if n_steps else 1.0,
    )


def energy_audit(trajectory: Trajectory, forcing: Optional[Forcing] = None) -> EnergyAudit:
    """Discrete work/energy bookkeeping.

    Backward Euler dissipates ``m/2 (dv)^2 + (dF_s)^2/(2k)`` per step on top of
    the dashpot, which is what ``closure_error`` measures.
    """
    tr = trajectory
    m, k, dt = tr.params.m, tr.params.k, tr.dt
    if forcing is not None:
        F_next = np.array([forcing(float(ti)) for ti in tr.t[1:]])
    else:
        F_next = tr.F[1:]
    work_in = float(np.sum(F_next * tr.v[1:]) * dt)
    spring_delta = 0.5 * k * (tr.x[-1] ** 2 - tr.x[0] ** 2)
    kinetic_delta = 0.5 * m * (tr.v[-1] ** 2 - tr.v[0] ** 2)
    dissipated = float(np.sum(tr.F_d[1:] * tr.v[1:]) * dt)
    closure = abs(work_in - spring_delta - kinetic_delta - dissipated)
    return EnergyAudit(work_in, float(spring_delta), float(kinetic_delta), dissipated, float(closure))


def compare_naive(case: ScenarioId = ScenarioId.SMALL_DISPLACEMENT, t_end=None, dt=PAPER_DT,
                  coulomb=False):
    """Run a reference case through both integrators and report how they differ."""
    case = ScenarioId(case)
    if t_end is None:
        t_end = DEFAULT_HORIZON[case]
    params, law, forcing, init = case_setup(case)
    dae = simulate(params, law, forcing, init, dt, t_end)
    naive = naive_signum_simulate(params, law, forcing, init.x, init.v, dt, t_end,
                                  coulomb=coulomb)
    return dae, naive, divergence_report(dae, naive)


def divergence_report(dae: Trajectory, naive: Trajectory) -> dict:
    from .filippov import check_inclusion

    return {
        "dae_zero_velocity_fraction": float(np.mean(dae.v == 0.0)),
        "naive_nonzero_velocity_fraction": float(np.mean(naive.v != 0.0)),
        "dae_stick_fraction": summarize(dae).stick_fraction,
        "naive_stick_fraction": summarize(naive).stick_fraction,
        "max_abs_x_difference": float(np.max(np.abs(dae.x - naive.x))),
        "dae_inclusion_violations": len(check_inclusion(dae).violations),
        "naive_inclusion_violations": len(check_inclusion(naive).violations),
    }
