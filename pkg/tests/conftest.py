from fractions import Fraction

import pytest

from binghamdae import Bingham, SystemParams
from binghamdae.scenarios import run_paper_case


@pytest.fixture(scope="session")
def paper_runs():
    """The four reference cases at their default horizons, simulated once."""
    return {case: run_paper_case(case) for case in ("f1", "f2", "small", "large")}


@pytest.fixture
def clean():
    """Unit parameters where the slip step is exact in binary arithmetic."""
    return SystemParams(m=1.0, k=1.0), Bingham(gamma=1.0, threshold=1.0)


def enumerate_corrector(m, k, gamma, thr, F_tilde, dt):
    """Brute-force oracle for one corrector step in exact rationals.

    Tries the stick candidate and both slip candidates of the backward-Euler
    balance ``A v = (dt/m)(F~ - F_d)`` and keeps the ones consistent with the
    branch conditions. Returns a list of ``(v, F_d)`` pairs.
    """
    m, k, gamma, thr, F_tilde, dt = map(Fraction, (m, k, gamma, thr, F_tilde, dt))
    A = 1 + dt * dt * k / m
    w = dt / m
    found = []
    if abs(F_tilde) <= thr:
        found.append((Fraction(0), F_tilde))
    for s in (1, -1):
        # A gamma (F - s thr) = w (F~ - F)
        F = (w * F_tilde + A * gamma * s * thr) / (A * gamma + w)
        v = gamma * (F - s * thr)
        if s * v > 0 and abs(F) > thr:
            found.append((v, F))
    return found


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0][2:])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  {detail}")
