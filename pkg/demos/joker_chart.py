"""Resolve the Joker over A(1) and draw its Ext chart as text and SVG."""

from pathlib import Path

from adamsext.fpmodule import parse_cell_diagram
from adamsext.render import render_ascii, render_svg
from adamsext.resolve import ext_chart, minimal_resolution

here = Path(__file__).parent
m = parse_cell_diagram((here / "joker.cells").read_text(), label="Joker")
res = minimal_resolution(m, 8, 20)
chart = ext_chart(res, 12)
print(render_ascii(chart))
(here / "joker.svg").write_text(render_svg(chart))
print("wrote", here / "joker.svg")
