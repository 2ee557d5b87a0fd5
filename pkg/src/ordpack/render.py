"""Layout pictures: deterministic SVG and a coarse ASCII view."""

from __future__ import annotations

import math
from html import escape

from .model import Instance
from .realize import Placement

PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
)
ASCII_MARKS = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789"


def _num(x: float) -> str:
    text = f"{x:.2f}".rstrip("0").rstrip(".")
    return text if text != "-0" else "0"


def emit_svg(instance: Instance, placement: Placement, dims: tuple[int, int] = (0, 1),
             target: int = 600, margin: int = 10) -> str:
    """One rectangle per item, the second dimension pointing up."""
    a, b = dims
    W, H = instance.container.sizes[a], instance.container.sizes[b]
    scale = target / max(W, H, 1)
    width = W * scale + 2 * margin
    height = H * scale + 2 * margin
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        f'<rect x="{margin}" y="{margin}" width="{_num(W * scale)}" height="{_num(H * scale)}" '
        f'fill="white" stroke="black" stroke-width="2"/>',
    ]
    for v in range(instance.n):
        x0 = placement.coords[v][a]
        y0 = placement.coords[v][b]
        w = instance.width(v, a)
        h = instance.width(v, b)
        px = margin + x0 * scale
        py = margin + (H - y0 - h) * scale
        color = PALETTE[v % len(PALETTE)]
        out.append(f'<rect x="{_num(px)}" y="{_num(py)}" width="{_num(w * scale)}" height="{_num(h * scale)}" '
                   f'fill="{color}" stroke="black" stroke-width="1"/>')
        size = max(6.0, min(w, h) * scale / 3)
        out.append(f'<text x="{_num(px + w * scale / 2)}" y="{_num(py + h * scale / 2)}" '
                   f'font-family="monospace" font-size="{_num(min(size, 18))}" text-anchor="middle" '
                   f'dominant-baseline="middle">{escape(instance.names[v])}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def ascii_layout(instance: Instance, placement: Placement, dims: tuple[int, int] = (0, 1),
                 max_cols: int = 120) -> str:
    """Character grid, one mark per item; cells are sampled at their centres."""
    a, b = dims
    W, H = instance.container.sizes[a], instance.container.sizes[b]
    cell = max(1, math.ceil(W / max_cols))
    cols = math.ceil(W / cell)
    rows = math.ceil(H / cell)
    grid = [["." for _ in range(cols)] for _ in range(rows)]
    for v in range(instance.n):
        mark = ASCII_MARKS[v % len(ASCII_MARKS)]
        x0, y0 = placement.coords[v][a], placement.coords[v][b]
        x1, y1 = x0 + instance.width(v, a), y0 + instance.width(v, b)
        for r in range(rows):
            cy = r * cell + cell / 2
            if not y0 <= cy < y1:
                continue
            for c in range(cols):
                cx = c * cell + cell / 2
                if x0 <= cx < x1:
                    grid[r][c] = mark
    lines = ["".join(row) for row in reversed(grid)]
    legend = " ".join(f"{ASCII_MARKS[v % len(ASCII_MARKS)]}={instance.names[v]}" for v in range(instance.n))
    return "\n".join(lines) + f"\n(1 char = {cell} unit{'s' if cell > 1 else ''}) {legend}\n"
