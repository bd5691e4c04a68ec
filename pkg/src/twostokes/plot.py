"""Minimal SVG scatter plot of region datasets."""

from xml.sax.saxutils import escape

from .region import VERTEX_COORDS

X_RANGE = (-0.6, 1.1)
Y_RANGE = (-0.1, 1.1)
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")
# families drawn as connected sweeps rather than clouds
LINE_FAMILIES = {"werner", "AE", "DE", "AC_classical"}


class _Frame:
    def __init__(self, width, height, margin):
        self.width, self.height, self.margin = width, height, margin

    def px(self, x, y):
        w = self.width - 2 * self.margin
        h = self.height - 2 * self.margin
        u = self.margin + (x - X_RANGE[0]) / (X_RANGE[1] - X_RANGE[0]) * w
        v = self.margin + (Y_RANGE[1] - y) / (Y_RANGE[1] - Y_RANGE[0]) * h
        return f"{u:.2f}", f"{v:.2f}"


def emit_svg_scatter(datasets, width=640, height=480, title=None):
    """SVG 1.1 document with the A-E polygon and one layer per dataset.

    Output depends only on the arguments.
    """
    datasets = list(datasets)
    if not datasets:
        raise ValueError("nothing to plot")
    f = _Frame(width, height, 50)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.2f}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>')

    # axes through the origin, with end ticks
    x0, y0 = f.px(X_RANGE[0], 0.0)
    x1, _ = f.px(X_RANGE[1], 0.0)
    ax, ay0 = f.px(0.0, Y_RANGE[0])
    _, ay1 = f.px(0.0, Y_RANGE[1])
    out.append(f'<g id="axes" stroke="black" stroke-width="1">')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>')
    out.append(f'<line x1="{ax}" y1="{ay0}" x2="{ax}" y2="{ay1}"/>')
    out.append("</g>")
    tx, ty = f.px(1.05, -0.07)
    out.append(f'<text x="{tx}" y="{ty}" font-size="12">P12^2</text>')
    tx, ty = f.px(-0.58, -0.07)
    out.append(f'<text x="{tx}" y="{ty}" font-size="12">-Pm^2</text>')
    tx, ty = f.px(0.02, 1.07)
    out.append(f'<text x="{tx}" y="{ty}" font-size="12">mean P^2</text>')

    outline = " ".join(",".join(f.px(*VERTEX_COORDS[k])) for k in ("D", "C", "B", "A", "E", "D"))
    out.append(f'<polyline id="polygon" points="{outline}" fill="none" stroke="gray" stroke-dasharray="4,3"/>')

    for k, ds in enumerate(datasets):
        color = PALETTE[k % len(PALETTE)]
        out.append(f'<g id="dataset-{k}" class="{escape(ds.family)}" fill="{color}" stroke="{color}">')
        coords = [f.px(p.x, p.y) for p in ds.points]
        if ds.family in LINE_FAMILIES and len(coords) > 1:
            pts = " ".join(f"{u},{v}" for u, v in coords)
            out.append(f'<polyline points="{pts}" fill="none" stroke-width="1.5"/>')
        for u, v in coords:
            out.append(f'<circle cx="{u}" cy="{v}" r="1.5" stroke="none"/>')
        out.append("</g>")

    out.append('<g id="vertices" font-size="14">')
    for label, (x, y) in VERTEX_COORDS.items():
        u, v = f.px(x, y)
        out.append(f'<circle class="vertex" id="vertex-{label}" cx="{u}" cy="{v}" r="4" fill="black"/>')
        out.append(f'<text x="{float(u) + 6:.2f}" y="{float(v) - 6:.2f}">{label}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
