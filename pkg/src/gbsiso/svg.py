"""Static SVG pictures of limit angles in the positive quadrant of two primes."""
from __future__ import annotations

import math
from typing import Sequence

from .exponents import ExpVector
from .sequence import LimitAngle

SIZE = 480
MARGIN = 40
RADIUS = SIZE - 2 * MARGIN


def _unit(v: ExpVector, primes: Sequence[int]) -> tuple[float, float]:
    x, y = v.get(primes[0]), v.get(primes[1])
    n = math.hypot(x, y)
    return x / n, y / n


def _pt(x: float, y: float) -> str:
    # quadrant origin at the lower left
    return f"{MARGIN + x * RADIUS:.2f},{SIZE - MARGIN - y * RADIUS:.2f}"


def _angle_key(v: ExpVector, primes) -> float:
    return math.atan2(v.get(primes[1]), v.get(primes[0]))


def render(primes: Sequence[int], directions: Sequence[ExpVector], cones: Sequence[LimitAngle],
           highlight: LimitAngle | None = None, vectors: Sequence[ExpVector] = (), title: str = "") -> str:
    """Rays for ``directions``, gray wedges for ``cones`` (the highlighted one
    darker) and dots for ``vectors``.  Output depends only on the inputs."""
    if len(primes) != 2:
        raise ValueError("plots need exactly two primes")
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{SIZE // 2}" y="20" text-anchor="middle" font-family="sans-serif" '
                   f'font-size="13">{title}</text>')
    ordered = sorted(cones, key=lambda c: (_angle_key(c.minus, primes), _angle_key(c.plus, primes)))
    for i, cone in enumerate(ordered):
        shade = "#606060" if cone == highlight else ("#b0b0b0" if i % 2 else "#d0d0d0")
        a, b = _unit(cone.minus, primes), _unit(cone.plus, primes)
        out.append(f'<polygon points="{_pt(0, 0)} {_pt(*a)} {_pt(*b)}" fill="{shade}" '
                   f'fill-opacity="0.6" stroke="none"/>')
    for d in sorted(set(directions), key=lambda v: (_angle_key(v, primes), v.sort_key())):
        ux, uy = _unit(d, primes)
        out.append(f'<line x1="{MARGIN}" y1="{SIZE - MARGIN}" x2="{_pt(ux, uy).split(",")[0]}" '
                   f'y2="{_pt(ux, uy).split(",")[1]}" stroke="#303030" stroke-width="0.6"/>')
    # axes
    out.append(f'<line x1="{MARGIN}" y1="{SIZE - MARGIN}" x2="{SIZE - MARGIN}" y2="{SIZE - MARGIN}" stroke="black"/>')
    out.append(f'<line x1="{MARGIN}" y1="{SIZE - MARGIN}" x2="{MARGIN}" y2="{MARGIN}" stroke="black"/>')
    out.append(f'<text x="{SIZE - MARGIN}" y="{SIZE - MARGIN + 18}" text-anchor="end" '
               f'font-family="sans-serif" font-size="12">{primes[0]}</text>')
    out.append(f'<text x="{MARGIN - 8}" y="{MARGIN}" text-anchor="end" '
               f'font-family="sans-serif" font-size="12">{primes[1]}</text>')
    for v in vectors:
        if v.get(primes[0]) < 0 or v.get(primes[1]) < 0 or not v.exps:
            continue
        ux, uy = _unit(v, primes)
        x, y = _pt(0.9 * ux, 0.9 * uy).split(",")
        out.append(f'<circle cx="{x}" cy="{y}" r="3.5" fill="#c03030"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
