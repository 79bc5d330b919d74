"""Static SVG snapshot of a 2-D planning run."""
from __future__ import annotations

from pathlib import Path

import numpy as np

CANVAS_WIDTH = 800.0


class UnsupportedDimension(ValueError):
    pass


def render_svg(result, scenario) -> str:
    if scenario.dim != 2:
        raise UnsupportedDimension(f"SVG output needs a 2-D scenario, got dim={scenario.dim}")
    lo = scenario.world.bounds.lo
    hi = scenario.world.bounds.hi
    scale = CANVAS_WIDTH / (hi[0] - lo[0])
    height = (hi[1] - lo[1]) * scale

    def xy(q):
        # flip y so the scene reads like a plot
        return (q[0] - lo[0]) * scale, height - (q[1] - lo[1]) * scale

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{CANVAS_WIDTH:.0f}" height="{height:.2f}" viewBox="0 0 {CANVAS_WIDTH:.0f} {height:.2f}">',
        f'<rect class="bounds" x="0" y="0" width="{CANVAS_WIDTH:.0f}" height="{height:.2f}" '
        'fill="white" stroke="black" stroke-width="2"/>',
    ]
    for box in scenario.world.obstacles:
        blo = np.maximum(box.lo, lo)
        bhi = np.minimum(box.hi, hi)
        x0, y1 = xy(blo)
        x1, y0 = xy(bhi)
        out.append(
            f'<rect class="obstacle" x="{x0:.2f}" y="{y0:.2f}" width="{x1 - x0:.2f}" '
            f'height="{y1 - y0:.2f}" fill="#555555"/>'
        )

    tree = result.tree
    out.append('<g class="tree" stroke="#4a7bd0" stroke-width="0.6">')
    for i in range(1, len(tree)):
        x0, y0 = xy(tree.config(tree.parent(i)))
        x1, y1 = xy(tree.config(i))
        out.append(f'<line class="edge" x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}"/>')
    out.append("</g>")

    out.append('<g class="fail" fill="red">')
    for f in result.fail_set.items:
        cx, cy = xy(f.config)
        out.append(f'<circle class="xfail" cx="{cx:.2f}" cy="{cy:.2f}" r="3"/>')
    out.append("</g>")

    if result.best_path:
        pts = " ".join("{:.2f},{:.2f}".format(*xy(q)) for q in result.best_path)
        out.append(f'<polyline class="best-path" points="{pts}" fill="none" stroke="#e08000" stroke-width="4"/>')

    gx, gy = xy(scenario.goal.center)
    out.append(
        f'<circle class="goal" cx="{gx:.2f}" cy="{gy:.2f}" r="{scenario.goal.radius * scale:.2f}" '
        'fill="none" stroke="green" stroke-width="2"/>'
    )
    sx, sy = xy(scenario.start)
    out.append(f'<circle class="start" cx="{sx:.2f}" cy="{sy:.2f}" r="6" fill="gold" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(result, scenario, path) -> None:
    text = render_svg(result, scenario)
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise OSError(f"cannot write SVG to {path}: {e}") from e
