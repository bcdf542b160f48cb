"""Minimal dependency-free SVG line plots of trajectory components."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

WIDTH, HEIGHT = 800, 500
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 80, 20, 40, 50
MAX_POINTS = 4000

SERIES = (("x", "x"), ("v", "v"), ("F_s", "Fs"), ("F_d", "Fd"))


def nice_ticks(lo: float, hi: float, target: int = 6):
    """Tick positions at round numbers (1, 2, 5 times a power of ten)."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        return []
    if hi <= lo:
        pad = abs(lo) * 0.1 or 1.0
        lo, hi = lo - pad, hi + pad
    raw = (hi - lo) / max(target, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    value = first
    while value <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(value) < 1e-12 * step else value)
        value += step
    return ticks


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def line_svg(t, y, title: str, ylabel: str) -> str:
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(t) > MAX_POINTS:
        idx = np.unique(np.linspace(0, len(t) - 1, MAX_POINTS).astype(int))
        t, y = t[idx], y[idx]
    tlo, thi = float(t.min()), float(t.max())
    ylo, yhi = float(y.min()), float(y.max())
    xt = nice_ticks(tlo, thi)
    yt = nice_ticks(ylo, yhi)
    if xt:
        tlo, thi = min(tlo, xt[0]), max(thi, xt[-1])
    if yt:
        ylo, yhi = min(ylo, yt[0]), max(yhi, yt[-1])
    if thi == tlo:
        thi = tlo + 1.0
    if yhi == ylo:
        yhi = ylo + 1.0
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def px(tv):
        return MARGIN_L + (tv - tlo) / (thi - tlo) * pw

    def py(yv):
        return MARGIN_T + (yhi - yv) / (yhi - ylo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="24" text-anchor="middle" font-size="16">{title}</text>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for tv in xt:
        X = px(tv)
        out.append(f'<line x1="{X:.2f}" y1="{MARGIN_T + ph}" x2="{X:.2f}" y2="{MARGIN_T + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{X:.2f}" y="{MARGIN_T + ph + 20}" text-anchor="middle" font-size="12">{_fmt(tv)}</text>')
    for yv in yt:
        Y = py(yv)
        out.append(f'<line x1="{MARGIN_L - 5}" y1="{Y:.2f}" x2="{MARGIN_L}" y2="{Y:.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN_L - 8}" y="{Y + 4:.2f}" text-anchor="end" font-size="12">{_fmt(yv)}</text>')
    out.append(f'<text x="{MARGIN_L + pw / 2}" y="{HEIGHT - 10}" text-anchor="middle" font-size="14">t</text>')
    out.append(f'<text x="18" y="{MARGIN_T + ph / 2}" text-anchor="middle" font-size="14" '
               f'transform="rotate(-90 18 {MARGIN_T + ph / 2})">{ylabel}</text>')
    points = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(t, y))
    out.append(f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{points}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_trajectory_svgs(trajectory, directory, stem: str = "trajectory"):
    """One SVG per variable (x, v, F_s, F_d against t). Returns the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for attr, label in SERIES:
        path = directory / f"{stem}_{label}.svg"
        path.write_text(line_svg(trajectory.t, getattr(trajectory, attr), f"{label}(t)", label))
        paths.append(path)
    return paths
