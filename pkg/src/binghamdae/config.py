"""Run configuration: flat ``key = value`` text with ``#`` comments.

Example::

    paper_defaults = true
    scenario = f2

or fully explicit::

    m = 1
    k = 100
    law = bingham
    gamma = 1
    threshold = 1
    x0 = 0
    fd0 = 0
    dt = 1e-4
    t_end = 2
    forcing.type = sinusoid
    forcing.amplitude = 10
    forcing.omega = 15.707963267948966
    forcing.t_end = 1

``forcing.frequency`` (cycles per time) may replace ``forcing.omega``.
Tabulated forcing takes ``forcing.samples = t0:F0, t1:F1, ...``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from .constitutive import (
    Bingham,
    ConstitutiveError,
    DashpotLaw,
    LinearViscous,
    SystemParams,
)
from .forcing import Constant, Forcing, Tabulated, WindowedSinusoid, Zero
from .scenarios import (
    DEFAULT_HORIZON,
    PAPER_DT,
    PAPER_LAW,
    PAPER_PARAMS,
    ScenarioId,
    case_setup,
)
from .stepper import DEFAULT_STEP_BUDGET
from .system import DASHPOT_ATOL

DEFAULT_DT = 1e-4
DEFAULT_T_END = 2.0

KNOWN_KEYS = {
    "paper_defaults", "scenario",
    "m", "k", "law", "gamma", "threshold", "c",
    "x0", "fd0", "v0", "dt", "t_end", "max_steps",
    "forcing.type", "forcing.amplitude", "forcing.omega", "forcing.frequency",
    "forcing.t_end", "forcing.value", "forcing.samples",
    "output.csv", "output.summary", "output.svg_dir",
    "naive.coulomb",
}


class ConfigParseError(ValueError):
    """Malformed configuration text (exit code 1)."""


class ConfigValidationError(ValueError):
    """Well-formed text describing an invalid system (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    law: DashpotLaw
    forcing: Forcing
    x0: float = 0.0
    fd0: Optional[float] = 0.0
    v0: Optional[float] = None
    dt: float = DEFAULT_DT
    t_end: float = DEFAULT_T_END
    scenario: Optional[ScenarioId] = None
    max_steps: int = DEFAULT_STEP_BUDGET
    csv_path: Optional[str] = None
    summary_path: Optional[str] = None
    svg_dir: Optional[str] = None
    naive_coulomb: bool = False

    def initial_state(self):
        from .system import consistent_init

        return consistent_init(self.params, self.law, self.x0, F_d0=self.fd0, v0=self.v0)

    def with_overrides(self, **values) -> "RunConfig":
        return replace(self, **values)


def parse_pairs(text: str) -> dict:
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key:
            raise ConfigParseError(f"line {lineno}: empty key")
        if key not in KNOWN_KEYS:
            raise ConfigParseError(f"line {lineno}: unknown key {key!r}")
        if key in pairs:
            raise ConfigParseError(f"line {lineno}: duplicate key {key!r}")
        pairs[key] = (value, lineno)
    return pairs


def _float(pairs, key, default=None, required=False):
    if key not in pairs:
        if required:
            raise ConfigValidationError(f"missing required key {key!r}")
        return default
    value, lineno = pairs[key]
    try:
        out = float(value)
    except ValueError:
        raise ConfigParseError(f"line {lineno}: {key} = {value!r} is not a number") from None
    if not math.isfinite(out):
        raise ConfigValidationError(f"{key} must be finite")
    return out


def _bool(pairs, key, default=False):
    if key not in pairs:
        return default
    value, lineno = pairs[key]
    low = value.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ConfigParseError(f"line {lineno}: {key} = {value!r} is not a boolean")


def _str(pairs, key, default=None):
    return pairs[key][0] if key in pairs else default


def _forcing(pairs) -> Optional[Forcing]:
    kind = _str(pairs, "forcing.type")
    if kind is None:
        return None
    kind = kind.lower()
    if kind == "zero":
        return Zero()
    if kind == "constant":
        return Constant(_float(pairs, "forcing.value", required=True))
    if kind in ("sinusoid", "windowed_sinusoid"):
        amplitude = _float(pairs, "forcing.amplitude", required=True)
        omega = _float(pairs, "forcing.omega")
        freq = _float(pairs, "forcing.frequency")
        if (omega is None) == (freq is None):
            raise ConfigValidationError("give exactly one of forcing.omega, forcing.frequency")
        if omega is None:
            omega = 2.0 * math.pi * freq
        t_end = _float(pairs, "forcing.t_end", default=math.inf)
        if not t_end >= 0:
            raise ConfigValidationError("forcing.t_end must be >= 0")
        return WindowedSinusoid(amplitude, omega, t_end)
    if kind == "tabulated":
        raw, lineno = pairs.get("forcing.samples", (None, None))
        if raw is None:
            raise ConfigValidationError("missing required key 'forcing.samples'")
        try:
            samples = [tuple(float(p) for p in item.split(":")) for item in raw.split(",")]
            if any(len(s) != 2 for s in samples):
                raise ValueError
        except ValueError:
            raise ConfigParseError(f"line {lineno}: forcing.samples must be 't:F, t:F, ...'") from None
        try:
            return Tabulated.from_pairs(samples)
        except ValueError as exc:
            raise ConfigValidationError(str(exc)) from None
    raise ConfigValidationError(f"unknown forcing.type {kind!r}")


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration.

    Raises
    ------
    ConfigParseError
        Syntax problems, unknown keys, non-numeric values.
    ConfigValidationError
        Values that break a model invariant, e.g. ``k must be > 0``.
    """
    pairs = parse_pairs(text)
    paper = _bool(pairs, "paper_defaults")
    scenario = _str(pairs, "scenario")
    if scenario is not None:
        try:
            scenario = ScenarioId(scenario.lower())
        except ValueError:
            raise ConfigValidationError(
                f"unknown scenario {scenario!r} (choose from {', '.join(s.value for s in ScenarioId)})"
            ) from None

    if paper:
        base_params, base_law = PAPER_PARAMS, PAPER_LAW
        base_dt = PAPER_DT
    else:
        base_params = base_law = None
        base_dt = DEFAULT_DT

    base_forcing, base_x0 = Zero(), 0.0
    base_t_end = DEFAULT_T_END
    if scenario is not None:
        _, _, base_forcing, init = case_setup(scenario)
        base_x0 = init.x
        base_t_end = DEFAULT_HORIZON[scenario]

    try:
        m = _float(pairs, "m", base_params.m if base_params else None, required=base_params is None)
        k = _float(pairs, "k", base_params.k if base_params else None, required=base_params is None)
        params = SystemParams(m, k)
        law = _law(pairs, base_law)
    except ConstitutiveError as exc:
        raise ConfigValidationError(str(exc)) from None

    forcing = _forcing(pairs) or base_forcing
    x0 = _float(pairs, "x0", base_x0)
    v0 = _float(pairs, "v0")
    fd0 = _float(pairs, "fd0")
    if fd0 is None and v0 is None:
        fd0 = 0.0
    dt = _float(pairs, "dt", base_dt)
    t_end = _float(pairs, "t_end", base_t_end)
    if not dt > 0:
        raise ConfigValidationError("dt must be > 0")
    if not t_end >= 0:
        raise ConfigValidationError("t_end must be >= 0")
    max_steps = int(_float(pairs, "max_steps", DEFAULT_STEP_BUDGET))
    if fd0 is not None and v0 is not None:
        if abs(law.velocity(fd0) - v0) > DASHPOT_ATOL:
            raise ConfigValidationError("fd0 and v0 do not satisfy the dashpot law")

    return RunConfig(
        params=params,
        law=law,
        forcing=forcing,
        x0=x0,
        fd0=fd0,
        v0=v0,
        dt=dt,
        t_end=t_end,
        scenario=scenario,
        max_steps=max_steps,
        csv_path=_str(pairs, "output.csv"),
        summary_path=_str(pairs, "output.summary"),
        svg_dir=_str(pairs, "output.svg_dir"),
        naive_coulomb=_bool(pairs, "naive.coulomb"),
    )


def _law(pairs, base_law) -> DashpotLaw:
    kind = _str(pairs, "law", "bingham").lower()
    if kind == "bingham":
        if base_law is not None and isinstance(base_law, Bingham):
            gamma = _float(pairs, "gamma", base_law.gamma)
            threshold = _float(pairs, "threshold", base_law.threshold)
        else:
            gamma = _float(pairs, "gamma", required=True)
            threshold = _float(pairs, "threshold", required=True)
        return Bingham(gamma, threshold)
    if kind in ("linear", "linear_viscous"):
        return LinearViscous(_float(pairs, "c", required=True))
    raise ConfigValidationError(f"unknown law {kind!r} (choose bingham or linear)")


def load_config(path) -> RunConfig:
    with open(path) as fh:
        return parse_config(fh.read())


def paper_config(case) -> RunConfig:
    return parse_config(f"paper_defaults = true\nscenario = {ScenarioId(case).value}\n")
