"""Deterministic SVG plot of screening functions on ``0 <= x <= 10``."""
from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from ..tfsolver import omega_eval

__all__ = ["fig1_svg", "emit_fig1_svg"]

log = logging.getLogger(__name__)

WIDTH, HEIGHT = 640, 480
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 20, 60
X_RANGE = (0.0, 10.0)
Y_RANGE = (0.0, 1.0)
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
N_POINTS = 201


def _px(x):
    return LEFT + (x - X_RANGE[0]) / (X_RANGE[1] - X_RANGE[0]) * (WIDTH - LEFT - RIGHT)


def _py(y):
    return HEIGHT - BOTTOM - (y - Y_RANGE[0]) / (Y_RANGE[1] - Y_RANGE[0]) * (HEIGHT - TOP - BOTTOM)


def fig1_svg(solutions) -> str:
    """SVG text with one polyline per converged solution; others are skipped with a warning."""
    good = []
    for s in solutions:
        if s.converged:
            good.append(s)
        else:
            log.warning("skipping alpha=%g: solution is %s", s.alpha, s.classification)
    if not good:
        raise ValueError("no converged solution to plot")
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    x0, x1, y0, y1 = _px(X_RANGE[0]), _px(X_RANGE[1]), _py(Y_RANGE[0]), _py(Y_RANGE[1])
    out.append(f'<g stroke="black" fill="none"><line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y0:.2f}"/>'
               f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x0:.2f}" y2="{y1:.2f}"/></g>')
    for t in range(0, 11, 2):
        px = _px(float(t))
        out.append(f'<line x1="{px:.2f}" y1="{y0:.2f}" x2="{px:.2f}" y2="{y0 + 5:.2f}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{y0 + 20:.2f}" text-anchor="middle">{t}</text>')
    for k in range(6):
        v = 0.2 * k
        py = _py(v)
        out.append(f'<line x1="{x0 - 5:.2f}" y1="{py:.2f}" x2="{x0:.2f}" y2="{py:.2f}" stroke="black"/>')
        out.append(f'<text x="{x0 - 8:.2f}" y="{py + 4:.2f}" text-anchor="end">{v:.1f}</text>')
    out.append(f'<text x="{(x0 + x1) / 2:.2f}" y="{HEIGHT - 15}" text-anchor="middle">x</text>')
    out.append(f'<text x="20" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" '
               f'transform="rotate(-90 20 {(y0 + y1) / 2:.2f})">omega(x)</text>')
    xs = np.linspace(*X_RANGE, N_POINTS)
    for i, s in enumerate(good):
        color = COLORS[i % len(COLORS)]
        w = np.empty_like(xs)
        w[0] = 1.0
        w[1:] = omega_eval(s, xs[1:])[0]
        pts = " ".join(f"{_px(x):.2f},{_py(y):.2f}" for x, y in zip(xs, w))
        label = f"alpha={s.alpha:g}"
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"><title>{label}</title></polyline>')
        ly = TOP + 20 + 18 * i
        lx = x1 - 110
        out.append(f'<line x1="{lx:.2f}" y1="{ly:.2f}" x2="{lx + 25:.2f}" y2="{ly:.2f}" stroke="{color}" stroke-width="1.5"/>')
        out.append(f'<text x="{lx + 32:.2f}" y="{ly + 4:.2f}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_fig1_svg(solutions, path) -> Path:
    path = Path(path)
    path.write_text(fig1_svg(solutions), newline="\n")
    return path
