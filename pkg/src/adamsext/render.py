"""Text and SVG pictures of Ext charts.

Stem runs left to right and filtration bottom to top.  Classes sharing a
cell sit side by side; h0 edges are vertical and h1 edges have slope one.
"""

from __future__ import annotations

from .resolve import ExtChart

COL = 4


def _stem_range(chart: ExtChart):
    stems = chart.stems()
    lo = min(stems + [0])
    return lo, max(chart.max_stem, lo)


def _top(chart: ExtChart) -> int:
    used = [s for _, s, _ in chart.classes]
    return max(used) if used else 0


def render_ascii(chart: ExtChart, max_filtration: int | None = None) -> str:
    """One text row per filtration, four columns per stem.

    A cell prints one 'o' per class; an h0 edge out of a cell is drawn as
    '|' on the row in between, an h1 edge as '/'.
    """
    lo, hi = _stem_range(chart)
    top = _top(chart) if max_filtration is None else max_filtration
    cells = chart.cells()
    h0_src = {chart.classes[a][:2] for a, _ in chart.h0}
    h1_src = {chart.classes[a][:2] for a, _ in chart.h1}
    width = (hi - lo + 1) * COL
    lines = []
    for s in range(top, -1, -1):
        row = [" "] * width
        for n in range(lo, hi + 1):
            k = len(cells.get((n, s), ()))
            base = (n - lo) * COL
            for j in range(min(k, COL - 1)):
                row[base + j] = "o"
            if k >= COL:
                row[base + COL - 2] = "+"
        lines.append(f"{s:>3} " + "".join(row).rstrip())
        if s == 0:
            break
        link = [" "] * width
        for n in range(lo, hi + 1):
            base = (n - lo) * COL
            if (n, s - 1) in h0_src:
                link[base] = "|"
            if (n, s - 1) in h1_src:
                link[base + COL - 1] = "/"
        lines.append("    " + "".join(link).rstrip())
    axis = "".join(f"{n:<{COL}}" for n in range(lo, hi + 1))
    lines.append("    " + axis.rstrip())
    return "\n".join(lines) + "\n"


def render_svg(chart: ExtChart, max_filtration: int | None = None, unit: int = 40) -> str:
    lo, hi = _stem_range(chart)
    top = _top(chart) if max_filtration is None else max_filtration
    cells = chart.cells()
    margin = unit
    w = (hi - lo + 1) * unit + 2 * margin
    h = (top + 1) * unit + 2 * margin
    pos = {}
    for (n, s), ids in cells.items():
        k = len(ids)
        for j, cid in enumerate(ids):
            off = (j - (k - 1) / 2) * unit * 0.22
            x = margin + (n - lo) * unit + unit / 2 + off
            y = h - margin - s * unit - unit / 2
            pos[cid] = (x, y)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
           f'viewBox="0 0 {w:.0f} {h:.0f}">',
           '<rect width="100%" height="100%" fill="white"/>']
    # grid
    for n in range(lo, hi + 2):
        x = margin + (n - lo) * unit
        out.append(f'<line x1="{x}" y1="{margin}" x2="{x}" y2="{h - margin}" stroke="#ddd"/>')
    for s in range(top + 2):
        y = h - margin - s * unit
        out.append(f'<line x1="{margin}" y1="{y}" x2="{w - margin}" y2="{y}" stroke="#ddd"/>')
    for n in range(lo, hi + 1):
        x = margin + (n - lo) * unit + unit / 2
        out.append(f'<text x="{x}" y="{h - margin / 3}" font-size="12" text-anchor="middle">{n}</text>')
    for s in range(top + 1):
        y = h - margin - s * unit - unit / 2 + 4
        out.append(f'<text x="{margin / 2}" y="{y}" font-size="12" text-anchor="middle">{s}</text>')
    for cls_name, edges in (("h0", chart.h0), ("h1", chart.h1)):
        for a, b in edges:
            if a in pos and b in pos:
                (x1, y1), (x2, y2) = pos[a], pos[b]
                out.append(f'<line class="{cls_name}" x1="{x1:.1f}" y1="{y1:.1f}" '
                           f'x2="{x2:.1f}" y2="{y2:.1f}" stroke="black" stroke-width="1.5"/>')
    for cid, (x, y) in sorted(pos.items()):
        n, s, _ = chart.classes[cid]
        out.append(f'<circle class="class" data-stem="{n}" data-filtration="{s}" '
                   f'cx="{x:.1f}" cy="{y:.1f}" r="{unit * 0.08:.1f}" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
