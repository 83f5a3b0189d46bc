"""Standalone SVG 1.1 pictures of disk representations and triangle gadgets.

Coordinates are exact rationals rounded to doubles for drawing only.  The
y axis is flipped so pictures read like the usual math orientation.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

_PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _document(bounds, body, stroke) -> str:
    xmin, ymin, xmax, ymax = bounds
    pad = max(xmax - xmin, ymax - ymin) * 0.05 or 1.0
    xmin, ymin, xmax, ymax = xmin - pad, ymin - pad, xmax + pad, ymax + pad
    w, h = xmax - xmin, ymax - ymin
    return (
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="800" height="{800 * h / w:.0f}" viewBox="{xmin!r} {-ymax!r} {w!r} {h!r}">\n'
        f'<g transform="scale(1,-1)" stroke="black" stroke-width="{stroke!r}">\n'
        + "\n".join(body)
        + "\n</g>\n</svg>\n"
    )


def representation_svg(rep, show_labels: bool = True) -> str:
    disks = rep.disks
    xs = [float(d.center_x) for d in disks]
    ys = [float(d.center_y) for d in disks]
    rs = [float(d.radius) for d in disks]
    bounds = (min(x - r for x, r in zip(xs, rs)), min(y - r for y, r in zip(ys, rs)),
              max(x + r for x, r in zip(xs, rs)), max(y + r for y, r in zip(ys, rs)))
    stroke = max(bounds[2] - bounds[0], bounds[3] - bounds[1]) / 800
    body = []
    for i, (x, y, r) in enumerate(zip(xs, ys, rs)):
        color = _PALETTE[i % len(_PALETTE)]
        body.append(f'<circle cx="{x!r}" cy="{y!r}" r="{r!r}" fill="{color}" fill-opacity="0.15"/>')
        if show_labels:
            label = rep.labels[i] if rep.labels is not None else str(i)
            size = stroke * 14
            # undo the flip for the text itself
            body.append(
                f'<text x="{x!r}" y="{-y!r}" transform="scale(1,-1)" font-size="{size!r}" '
                f'stroke="none" text-anchor="middle">{escape(str(label))}</text>'
            )
    return _document(bounds, body, stroke)


def triangles_svg(triangles, vertex_count=None, labels=None) -> str:
    """Filled translucent triangles; the first ``vertex_count`` are drawn in red."""
    pts = [(float(x), float(y)) for t in triangles for x, y in t.points]
    bounds = (min(p[0] for p in pts), min(p[1] for p in pts), max(p[0] for p in pts), max(p[1] for p in pts))
    stroke = max(bounds[2] - bounds[0], bounds[3] - bounds[1]) / 800
    body = []
    for i, t in enumerate(triangles):
        if vertex_count is not None and i < vertex_count:
            color = "#d62728"
        else:
            color = "#1f77b4" if vertex_count is None or (i - vertex_count) % 2 == 0 else "#2ca02c"
        coords = " ".join(f"{float(x)!r},{float(y)!r}" for x, y in t.points)
        title = f"<title>{escape(str(labels[i]))}</title>" if labels is not None else ""
        body.append(f'<polygon points="{coords}" fill="{color}" fill-opacity="0.2">{title}</polygon>')
    return _document(bounds, body, stroke)
