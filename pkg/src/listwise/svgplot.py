"""Minimal deterministic SVG line charts for the emitted plot series."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

PANEL_W = 420
PANEL_H = 300
MARGIN = dict(left=60, right=20, top=40, bottom=50)


@dataclass
class Series:
    label: str
    xs: Sequence[float]
    ys: Sequence[float]


@dataclass
class Panel:
    title: str
    xlabel: str
    ylabel: str
    series: list[Series] = field(default_factory=list)
    ylim: tuple[float, float] | None = (0.0, 1.0)
    log_x: bool = False


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _tick_label(v: float) -> str:
    if v != 0 and (abs(v) >= 1e5 or abs(v) < 1e-2):
        return f"{v:.0e}"
    return f"{v:g}" if float(v).is_integer() else f"{v:.2f}"


def _panel(p: Panel, ox: float, oy: float) -> list[str]:
    plot_w = PANEL_W - MARGIN["left"] - MARGIN["right"]
    plot_h = PANEL_H - MARGIN["top"] - MARGIN["bottom"]
    x0, y0 = ox + MARGIN["left"], oy + MARGIN["top"]
    tx = (lambda v: math.log10(v)) if p.log_x else (lambda v: float(v))
    xs = [tx(x) for s in p.series for x in s.xs]
    ys = [float(y) for s in p.series for y in s.ys]
    xlo, xhi = (min(xs), max(xs)) if xs else (0.0, 1.0)
    if xhi == xlo:
        xlo, xhi = xlo - 0.5, xhi + 0.5
    if p.ylim is not None:
        ylo, yhi = p.ylim
    else:
        ylo, yhi = (min(ys), max(ys)) if ys else (0.0, 1.0)
        if yhi == ylo:
            ylo, yhi = ylo - 0.5, yhi + 0.5

    def sx(v: float) -> float:
        return x0 + (tx(v) - xlo) / (xhi - xlo) * plot_w

    def sy(v: float) -> float:
        return y0 + plot_h - (v - ylo) / (yhi - ylo) * plot_h

    out = [
        f'<g class="panel">',
        f'<text x="{_fmt(ox + PANEL_W / 2)}" y="{_fmt(oy + 22)}" text-anchor="middle" font-size="14">{escape(p.title)}</text>',
        f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#000"/>',
    ]
    for v in _ticks(xlo, xhi):
        label = _tick_label(10 ** v if p.log_x else v)
        px = x0 + (v - xlo) / (xhi - xlo) * plot_w
        out.append(f'<text x="{_fmt(px)}" y="{_fmt(y0 + plot_h + 16)}" text-anchor="middle" font-size="10">{label}</text>')
    for v in _ticks(ylo, yhi):
        out.append(f'<text x="{_fmt(x0 - 6)}" y="{_fmt(sy(v) + 3)}" text-anchor="end" font-size="10">{_tick_label(v)}</text>')
    out.append(f'<text x="{_fmt(x0 + plot_w / 2)}" y="{_fmt(oy + PANEL_H - 10)}" text-anchor="middle" font-size="12">{escape(p.xlabel)}</text>')
    out.append(f'<text x="{_fmt(ox + 14)}" y="{_fmt(y0 + plot_h / 2)}" text-anchor="middle" font-size="12" '
               f'transform="rotate(-90 {_fmt(ox + 14)} {_fmt(y0 + plot_h / 2)})">{escape(p.ylabel)}</text>')
    for idx, s in enumerate(p.series):
        color = PALETTE[idx % len(PALETTE)]
        pts = " ".join(f"{_fmt(sx(x))},{_fmt(sy(float(y)))}" for x, y in zip(s.xs, s.ys))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = y0 + 14 + 14 * idx
        out.append(f'<text x="{_fmt(x0 + plot_w - 6)}" y="{_fmt(ly)}" text-anchor="end" font-size="10" fill="{color}">{escape(s.label)}</text>')
    out.append("</g>")
    return out


def render(panels: Sequence[Panel], version: str = "") -> str:
    width = PANEL_W * len(panels)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL_H}" viewBox="0 0 {width} {PANEL_H}">',
        f"<!-- listwise {escape(version)} -->",
        f'<rect width="{width}" height="{PANEL_H}" fill="#fff"/>',
    ]
    for i, p in enumerate(panels):
        lines.extend(_panel(p, i * PANEL_W, 0))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
