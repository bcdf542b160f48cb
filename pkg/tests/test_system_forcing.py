import math

import numpy as np
import pytest

from binghamdae import (
    Bingham,
    Constant,
    F1,
    F2,
    LinearViscous,
    State,
    SystemParams,
    Tabulated,
    WindowedSinusoid,
    Zero,
    consistent_init,
    dashpot_residual,
    equilibrium_interval,
    is_equilibrium,
    max_abs_on_grid,
    rhs_ode_part,
)
from binghamdae.system import InconsistentInitError

P = SystemParams(1.0, 100.0)
LAW = Bingham(1.0, 1.0)


class TestConsistentInit:
    def test_zero(self):
        assert consistent_init(P, LAW, 0.0, F_d0=0.0) == State(0.0, 0.0, 0.0, 0.0, 0.0)

    def test_stretched(self):
        s = consistent_init(P, LAW, 0.005, F_d0=0.0)
        assert (s.x, s.v, s.F_s, s.F_d) == (0.005, 0.0, 0.5, 0.0)

    def test_from_velocity(self):
        s = consistent_init(P, LAW, 0.0, v0=1.0)
        assert (s.v, s.F_d, s.F_s) == (1.0, 2.0, 0.0)
        assert dashpot_residual(LAW, s.v, s.F_d) == 0.0

    def test_defaults_to_zero_force(self):
        assert consistent_init(P, LAW, 0.3).F_d == 0.0
        assert consistent_init(P, LAW, 0.3, v0=0.0).F_d == 0.0

    def test_inconsistent_pair(self):
        with pytest.raises(InconsistentInitError, match="inconsistent-pair"):
            consistent_init(P, LAW, 0.0, F_d0=5.0, v0=0.0)
        assert consistent_init(P, LAW, 0.0, F_d0=2.0, v0=1.0).v == 1.0

    def test_generic_inverse(self):
        law = LinearViscous(2.0)
        s = consistent_init(P, law, 0.1, v0=0.75)
        assert s.F_d == pytest.approx(1.5, rel=1e-14)
        assert s.is_consistent(P, law)

    @pytest.mark.parametrize("x0", [0.0, 0.005, 0.5, -0.37, 1e-9])
    @pytest.mark.parametrize("kw", [{"F_d0": 0.0}, {"F_d0": 3.0}, {"v0": -2.0}, {}])
    def test_invariants(self, x0, kw):
        s = consistent_init(P, LAW, x0, **kw)
        assert s.is_consistent(P, LAW), s.violations(P, LAW)


@pytest.mark.parametrize(
    "state, F_ext, expected",
    [
        (State(0, 0.005, 0.0, 0.5, -0.5), 0.0, (0.0, 0.0)),
        (State(0, 0.0, 1.0, 0.0, 2.0), 0.0, (-2.0, 100.0)),
        (State(0, 0.0, 0.0, 0.0, 0.0), 0.3, (0.3, 0.0)),
    ],
)
def test_rhs(state, F_ext, expected):
    assert rhs_ode_part(P, state, F_ext) == expected


@pytest.mark.parametrize(
    "thr, F_bar, lo, hi", [(1, 0, -0.01, 0.01), (1, 0.5, -0.005, 0.015), (0, 0, 0.0, 0.0)]
)
def test_equilibrium_interval(thr, F_bar, lo, hi):
    iv = equilibrium_interval(P, Bingham(1, thr), F_bar)
    assert iv.x_lo == pytest.approx(lo, abs=1e-17)
    assert iv.x_hi == pytest.approx(hi, abs=1e-17)
    assert iv.width == pytest.approx(2 * thr / P.k, abs=1e-17)
    assert 0.5 * (iv.x_lo + iv.x_hi) == pytest.approx(F_bar / P.k, abs=1e-17)


def test_every_equilibrium_point_is_balanced():
    F_bar = 0.3
    iv = equilibrium_interval(P, LAW, F_bar)
    for x in np.linspace(iv.x_lo, iv.x_hi, 41):
        F_d = F_bar - P.k * x
        assert abs(F_d) <= LAW.threshold + 1e-12
        dv, dFs = rhs_ode_part(P, State(0, x, 0.0, P.k * x, F_d), F_bar)
        assert abs(dv) <= 1e-14 and dFs == 0.0


def test_is_equilibrium():
    assert is_equilibrium(P, LAW, State(0, 0.005, 0.0, 0.5, 0.0), 0.0)
    assert not is_equilibrium(P, LAW, State(0, 0.5, 0.0, 50.0, 0.0), 0.0)
    assert not is_equilibrium(P, LAW, State(0, 0.0, 1.0, 0.0, 2.0), 0.0)


class TestForcing:
    def test_paper_forcings(self):
        assert F1(0.1) == pytest.approx(0.5, abs=1e-15)
        assert F2(1.5) == 0.0
        assert F1(0.0) == 0.0
        assert abs(F2(1.0)) <= 1e-12 * 10 and abs(F1(1.0)) <= 1e-12

    def test_max_abs(self):
        assert max_abs_on_grid(F1, 0, 2, 20001) == pytest.approx(0.5, abs=1e-12)
        assert max_abs_on_grid(F2, 0, 2, 20001) == pytest.approx(10.0, abs=1e-12)
        assert max_abs_on_grid(Zero(), 0, 5, 3) == 0.0
        assert max_abs_on_grid(F1, 0, 2, 20001) < 1.0 < max_abs_on_grid(F2, 0, 2, 20001)

    def test_frequency_constructor(self):
        f = WindowedSinusoid.from_frequency(0.5, 2.5, 1.0)
        assert f.omega == pytest.approx(5 * math.pi, rel=1e-15)

    def test_constant_and_tabulated(self):
        assert Constant(2.5)(7.0) == 2.5
        tab = Tabulated.from_pairs([(0, 0), (1, 2), (2, 0)])
        assert tab(0.5) == 1.0 and tab(1.5) == 1.0
        assert tab(2.5) == 0.0

    def test_tabulated_invariants(self):
        with pytest.raises(ValueError):
            Tabulated.from_pairs([(0, 0)])
        with pytest.raises(ValueError):
            Tabulated.from_pairs([(0, 0), (0, 1)])
        with pytest.raises(ValueError):
            WindowedSinusoid(1, 1, -1)
