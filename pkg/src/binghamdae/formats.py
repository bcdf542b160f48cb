"""Trajectory CSV and flat ``key = value`` report files."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Optional

import numpy as np

from .constitutive import DashpotLaw, SystemParams
from .stepper import StepMode, Trajectory

HEADER = ("t", "x", "v", "Fs", "Fd", "F", "mode")


class TrajectoryFormatError(ValueError):
    pass


def fmt_float(value: float) -> str:
    # 17 significant digits round-trip every binary64 value
    return "%.17g" % value


def trajectory_to_csv(trajectory: Trajectory) -> str:
    tr = trajectory
    lines = [",".join(HEADER)]
    modes = ["init"] + [StepMode(m).value for m in tr.modes]
    for n in range(len(tr.t)):
        row = (tr.t[n], tr.x[n], tr.v[n], tr.F_s[n], tr.F_d[n], tr.F[n])
        lines.append(",".join(fmt_float(float(c)) for c in row) + "," + modes[n])
    return "\n".join(lines) + "\n"


def write_trajectory_csv(trajectory: Trajectory, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(trajectory_to_csv(trajectory))
    return path


def read_trajectory_csv(path, params: SystemParams, law: DashpotLaw, dt=None) -> Trajectory:
    return parse_trajectory_csv(Path(path).read_text(), params, law, dt)


def parse_trajectory_csv(
    text: str,
    params: SystemParams,
    law: DashpotLaw,
    dt: Optional[float] = None,
) -> Trajectory:
    """Parse trajectory CSV text.

    The file does not carry the system description, so ``params`` and ``law``
    must be supplied. ``dt`` defaults to the mean node spacing.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise TrajectoryFormatError("empty trajectory file") from None
    if tuple(header) != HEADER:
        raise TrajectoryFormatError(f"bad header {header!r}, expected {','.join(HEADER)}")
    cols = [[] for _ in range(6)]
    modes = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 7:
            raise TrajectoryFormatError(f"line {lineno}: expected 7 fields, got {len(row)}")
        try:
            for col, cell in zip(cols, row[:6]):
                col.append(float(cell))
        except ValueError as exc:
            raise TrajectoryFormatError(f"line {lineno}: {exc}") from None
        mode = row[6]
        if lineno == 2:
            if mode != "init":
                raise TrajectoryFormatError("line 2: first row must have mode 'init'")
        elif mode not in ("stick", "slip"):
            raise TrajectoryFormatError(f"line {lineno}: unknown mode {mode!r}")
        else:
            modes.append(StepMode(mode))
    if not cols[0]:
        raise TrajectoryFormatError("trajectory has no rows")
    t, x, v, F_s, F_d, F = (np.array(c) for c in cols)
    if dt is None:
        dt = (t[-1] - t[0]) / (len(t) - 1) if len(t) > 1 else 1.0
    return Trajectory(params, law, None, dt, t, x, v, F_s, F_d, F, modes)


def format_report(items: dict) -> str:
    lines = []
    for key, value in items.items():
        if isinstance(value, float):
            value = repr(value)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out
