"""External force signals F(t)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np


@dataclass(frozen=True)
class Zero:
    def __call__(self, t: float) -> float:
        return 0.0


@dataclass(frozen=True)
class Constant:
    value: float

    def __call__(self, t: float) -> float:
        return self.value


@dataclass(frozen=True)
class WindowedSinusoid:
    """``amplitude * sin(omega * t)`` for ``t <= t_end``, zero afterwards."""

    amplitude: float
    omega: float
    t_end: float

    def __post_init__(self):
        if not self.t_end >= 0:
            raise ValueError("t_end must be >= 0")

    @classmethod
    def from_frequency(cls, amplitude, frequency, t_end):
        """Build from a cycles-per-time frequency instead of ``omega``."""
        return cls(amplitude, 2.0 * math.pi * frequency, t_end)

    def __call__(self, t: float) -> float:
        if t > self.t_end:
            return 0.0
        return self.amplitude * math.sin(self.omega * t)


@dataclass(frozen=True)
class Tabulated:
    """Piecewise-linear signal through ``(t, F)`` samples, zero outside them."""

    times: tuple
    values: tuple

    def __post_init__(self):
        if len(self.times) != len(self.values):
            raise ValueError("times and values must have equal length")
        if len(self.times) < 2:
            raise ValueError("tabulated forcing needs at least 2 samples")
        if np.any(np.diff(np.asarray(self.times, dtype=float)) <= 0):
            raise ValueError("tabulated times must be strictly increasing")

    @classmethod
    def from_pairs(cls, pairs):
        pairs = list(pairs)
        return cls(
            tuple(float(t) for t, _ in pairs), tuple(float(F) for _, F in pairs)
        )

    def __call__(self, t: float) -> float:
        if t < self.times[0] or t > self.times[-1]:
            return 0.0
        return float(np.interp(t, self.times, self.values))


Forcing = Union[Zero, Constant, WindowedSinusoid, Tabulated]

# the two excitations used in the numerical examples
F1 = WindowedSinusoid(0.5, 5.0 * math.pi, 1.0)
F2 = WindowedSinusoid(10.0, 5.0 * math.pi, 1.0)


def evaluate(forcing: Forcing, t: float) -> float:
    return float(forcing(t))


def max_abs_on_grid(forcing: Forcing, t0: float, t1: float, n: int) -> float:
    """Largest ``|F|`` over ``n`` uniformly spaced samples of ``[t0, t1]``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return max(abs(forcing(float(t))) for t in np.linspace(t0, t1, n))
