"""Minimal static SVG scatter plot: diamonds for exact eigenvalues, crosses for approximations."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 720, 360
MARGIN = dict(left=70, right=20, top=40, bottom=50)


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        lo, hi = lo - 0.5, hi + 0.5
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [round(i * step, 12) for i in range(first, last + 1)]


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".") if x else "0"


def _tick_label(x: float) -> str:
    return f"{x:.6g}" if x != 0 else "0"


def scatter_svg(exact, approx, title: str = "") -> str:
    """Render two complex point sets in the (Re, Im) plane as an SVG 1.1 document."""
    pts = [complex(p) for p in list(exact) + list(approx)]
    re = [p.real for p in pts] or [0.0]
    im = [p.imag for p in pts] or [0.0]
    pad_x = 0.05 * (max(re) - min(re) or 1.0)
    pad_y = 0.1 * (max(im) - min(im) or 0.1)
    x0, x1 = min(re) - pad_x, max(re) + pad_x
    y0, y1 = min(im) - pad_y, max(im) + pad_y
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(x):
        return MARGIN["left"] + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return MARGIN["top"] + (y1 - y) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" '
        'fill="none" stroke="black" stroke-width="1"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.2f}" y="22" text-anchor="middle" font-family="sans-serif" '
                   f'font-size="14">{escape(title)}</text>')
    base = MARGIN["top"] + ph
    for t in _nice_ticks(x0, x1):
        if x0 <= t <= x1:
            x = sx(t)
            out.append(f'<line x1="{_fmt(x)}" y1="{_fmt(base)}" x2="{_fmt(x)}" y2="{_fmt(base + 5)}" stroke="black"/>')
            out.append(f'<text x="{_fmt(x)}" y="{_fmt(base + 18)}" text-anchor="middle" '
                       f'font-family="sans-serif" font-size="11">{_tick_label(t)}</text>')
    for t in _nice_ticks(y0, y1):
        if y0 <= t <= y1:
            y = sy(t)
            out.append(f'<line x1="{MARGIN["left"] - 5}" y1="{_fmt(y)}" x2="{MARGIN["left"]}" y2="{_fmt(y)}" stroke="black"/>')
            out.append(f'<text x="{MARGIN["left"] - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
                       f'font-family="sans-serif" font-size="11">{_tick_label(t)}</text>')
    out.append(f'<text x="{_fmt(MARGIN["left"] + pw / 2)}" y="{HEIGHT - 10}" text-anchor="middle" '
               'font-family="sans-serif" font-size="12">Re</text>')
    out.append(f'<text x="16" y="{_fmt(MARGIN["top"] + ph / 2)}" text-anchor="middle" font-family="sans-serif" '
               f'font-size="12" transform="rotate(-90 16 {_fmt(MARGIN["top"] + ph / 2)})">Im</text>')

    r = 5
    for p in exact:
        x, y = sx(complex(p).real), sy(complex(p).imag)
        out.append(f'<path d="M {_fmt(x)} {_fmt(y - r)} L {_fmt(x + r)} {_fmt(y)} L {_fmt(x)} {_fmt(y + r)} '
                   f'L {_fmt(x - r)} {_fmt(y)} Z" fill="none" stroke="blue" stroke-width="1.2"/>')
    for p in approx:
        x, y = sx(complex(p).real), sy(complex(p).imag)
        out.append(f'<path d="M {_fmt(x - r)} {_fmt(y - r)} L {_fmt(x + r)} {_fmt(y + r)} '
                   f'M {_fmt(x - r)} {_fmt(y + r)} L {_fmt(x + r)} {_fmt(y - r)}" stroke="red" stroke-width="1.2"/>')

    lx, ly = WIDTH - MARGIN["right"] - 150, MARGIN["top"] + 14
    out.append(f'<path d="M {lx} {ly - r} L {lx + r} {ly} L {lx} {ly + r} L {lx - r} {ly} Z" '
               'fill="none" stroke="blue" stroke-width="1.2"/>')
    out.append(f'<text x="{lx + 12}" y="{ly + 4}" font-family="sans-serif" font-size="11">exact eigenvalues</text>')
    ly += 18
    out.append(f'<path d="M {lx - r} {ly - r} L {lx + r} {ly + r} M {lx - r} {ly + r} L {lx + r} {ly - r}" '
               'stroke="red" stroke-width="1.2"/>')
    out.append(f'<text x="{lx + 12}" y="{ly + 4}" font-family="sans-serif" font-size="11">Bohr-Sommerfeld</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
