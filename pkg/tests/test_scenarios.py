import numpy as np
import pytest

from binghamdae import (
    Bingham,
    F2,
    State,
    SystemParams,
    Zero,
    consistent_init,
    energy_audit,
    equilibrium_interval,
    is_equilibrium,
    naive_signum_simulate,
    simulate,
    summarize,
)
from binghamdae.scenarios import (
    PAPER_LAW,
    PAPER_PARAMS,
    ScenarioId,
    compare_naive,
    run_paper_case,
)
from binghamdae.stepper import Trajectory, StepMode

P, LAW = PAPER_PARAMS, PAPER_LAW


def numerical_dissipation(tr):
    """Energy lost to the backward-Euler stencil itself.

    Multiplying the discrete balance by ``v^{n+1} dt`` and the spring update by
    ``F_s^{n+1}/k`` gives work = dKE + dPE + dashpot + this sum, term by term.
    """
    return float(np.sum(0.5 * tr.params.m * np.diff(tr.v) ** 2)
                 + np.sum(np.diff(tr.F_s) ** 2) / (2 * tr.params.k))


def test_paper_parameters():
    assert (P.m, P.k, LAW.gamma, LAW.threshold) == (1.0, 100.0, 1.0, 1.0)


def test_f1_forced(paper_runs):
    tr, s = paper_runs["f1"]
    assert not np.any(tr.x) and not np.any(tr.v) and not np.any(tr.F_s)
    assert np.max(np.abs(tr.F_d - [F2.__class__(0.5, F2.omega, 1.0)(t) for t in tr.t])) <= 1e-12


def test_small_displacement(paper_runs):
    tr, s = paper_runs["small"]
    assert np.all(tr.x == 0.005) and np.all(tr.v == 0.0)
    assert s.rest_time == 0.0 and s.stick_fraction == 1.0 and s.extrema == []
    assert s.total_dissipation == 0.0
    assert is_equilibrium(P, LAW, s.final_state, 0.0) and s.final_state.x != 0.0


def test_large_displacement(paper_runs):
    tr, s = paper_runs["large"]
    mags = [abs(x) for _, x in s.extrema]
    assert len(mags) >= 5
    assert all(a > b for a, b in zip(mags, mags[1:]))
    assert s.final_state.v == 0.0 and abs(s.final_state.x) <= 0.01
    assert s.final_state.x in equilibrium_interval(P, LAW, 0.0)
    assert 0.0 < s.total_dissipation <= 0.5 * P.k * 0.5 ** 2
    assert s.rest_time is not None


def test_f2_moves_then_rests(paper_runs):
    tr, s = paper_runs["f2"]
    assert s.max_abs_x > 0.01
    assert s.rest_time is not None and s.rest_time > 1.0
    assert abs(s.final_state.x) <= 0.01


def test_run_paper_case_validates_horizon():
    with pytest.raises(ValueError):
        run_paper_case("f1", t_end=0.0)
    tr, _ = run_paper_case(ScenarioId.SMALL_DISPLACEMENT, t_end=0.01)
    assert len(tr) == 101


class TestSummarize:
    def test_constant(self):
        tr = simulate(P, LAW, Zero(), consistent_init(P, LAW, 0.003), 1e-3, 1.0)
        s = summarize(tr)
        assert s.extrema == [] and s.rest_time == 0.0 and s.total_dissipation == 0.0

    def _manual(self, v):
        v = np.asarray(v, dtype=float)
        n = len(v)
        t = 0.1 * np.arange(n)
        x = np.cumsum(v) * 0.1
        return Trajectory(P, LAW, None, 0.1, t, x, v, P.k * x, np.sign(v) + v, np.zeros(n),
                          [StepMode.STICK if vi == 0 else StepMode.SLIP for vi in v[1:]])

    def test_strict_sign_change(self):
        s = summarize(self._manual([0, 1, 2, 1, -1, -2, -1, 1, 0]))
        assert [round(t, 10) for t, _ in s.extrema] == [0.3, 0.6, 0.8]

    def test_plateau_counts_once(self):
        s = summarize(self._manual([0, 1, 1, 0, 0, 0, -1, -1, 0, 0, 0, 1]))
        assert [round(t, 10) for t, _ in s.extrema] == [0.3, 0.8]

    def test_plateau_without_reversal_is_not_extremum(self):
        s = summarize(self._manual([0, 1, 0, 0, 1, 1]))
        assert s.extrema == []

    def test_rest_needs_margin(self):
        assert summarize(self._manual([0, 1, 0])).rest_time is None
        assert summarize(self._manual([0, 1, 0, 0])).rest_time == pytest.approx(0.2)
        assert summarize(self._manual([0, 1, -1])).rest_time is None


class TestEnergyAudit:
    def test_constant(self):
        tr = simulate(P, LAW, Zero(), consistent_init(P, LAW, 0.005), 1e-3, 1.0)
        e = energy_audit(tr, Zero())
        assert (e.work_in, e.spring_delta, e.kinetic_delta, e.dissipated, e.closure_error) == (0, 0, 0, 0, 0)

    @pytest.mark.parametrize("case", ["large", "f2"])
    def test_closure_is_stencil_dissipation(self, paper_runs, case):
        tr, _ = paper_runs[case]
        e = energy_audit(tr)
        assert e.dissipated >= 0
        assert e.closure_error == pytest.approx(numerical_dissipation(tr), rel=1e-6, abs=1e-12)

    def test_closure_shrinks_first_order(self, paper_runs):
        coarse = energy_audit(paper_runs["large"][0])
        fine_tr, _ = run_paper_case("large", dt=1e-5)
        fine = energy_audit(fine_tr)
        ratio = coarse.closure_error / fine.closure_error
        assert 8.0 <= ratio <= 12.0
        assert coarse.closure_error <= 0.1


class TestNaive:
    def test_chatter(self):
        tr = naive_signum_simulate(P, LAW, Zero(), 0.005, 0.0, 1e-4, 2.0)
        assert np.mean(tr.v != 0.0) > 0.1
        # RK4 stage accelerations with sgn flipping between stages:
        # -0.5, +0.5, -1.5, +0.5 (to O(dt)), so v1 = dt/6 * (-2) = -dt/3
        assert tr.v[1] == pytest.approx(-1e-4 / 3, rel=1e-3)
        assert summarize(tr).stick_fraction < 0.9

    def test_zero(self):
        tr = naive_signum_simulate(P, LAW, Zero(), 0.0, 0.0, 1e-3, 1.0)
        assert not np.any(tr.x) and not np.any(tr.v)

    def test_coulomb_flag(self):
        a = naive_signum_simulate(P, LAW, Zero(), 0.5, 0.0, 1e-3, 0.3)
        b = naive_signum_simulate(P, LAW, Zero(), 0.5, 0.0, 1e-3, 0.3, coulomb=True)
        assert not np.array_equal(a.x, b.x)
        assert np.all(np.abs(b.F_d) <= LAW.threshold)

    def test_compare(self):
        dae, naive, rep = compare_naive()
        assert rep["dae_zero_velocity_fraction"] == 1.0
        assert rep["naive_nonzero_velocity_fraction"] > 0.1
        assert rep["dae_stick_fraction"] == 1.0 and rep["naive_stick_fraction"] < 0.9
        assert rep["dae_inclusion_violations"] == 0 and rep["naive_inclusion_violations"] > 0
