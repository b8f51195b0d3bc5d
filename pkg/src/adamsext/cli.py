"""Command-line driver.

Exit codes: 0 success, 1 verification mismatch, 2 input error,
3 uncertified collapse.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .adams import (UncertifiedCollapseError, abp_e2, anderson_groups, assemble_groups,
                    certify_collapse, group_to_csv, parse_group, same_group, format_group)
from .chargen import CATALOG, CATALOG_LABELS, catalog, catalog_entry
from .fpmodule import ModuleInputError, WindowEscapeError, parse_cell_diagram, truncate
from .render import render_ascii, render_svg
from .resolve import ExtChart, ext_chart, minimal_resolution
from .steenrod import DegreeCapError

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_UNCERTIFIED = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    target: str | None = None
    max_stem: int = 5
    s_max: int = 24
    t_max: int | None = None
    fmt: str | None = None
    expected: str | None = None
    allow_uncertified: bool = False
    output: str | None = None
    anderson: bool = False

    def __post_init__(self):
        if self.max_stem < 0:
            raise InputError("--max-stem must be >= 0")
        if self.s_max < self.max_stem:
            raise InputError("--smax must be >= --max-stem")


def shipped_table_path():
    return resources.files("adamsext") / "data" / "expected_tables.csv"


def read_expected(text: str) -> dict:
    """CSV rows label,n,group -> {(label, n): factor list}."""
    out = {}
    reader = csv.reader(io.StringIO(text))
    for lineno, row in enumerate(reader, 1):
        if not row or row[0].startswith("#"):
            continue
        if [c.strip() for c in row] == ["label", "n", "group"]:
            continue
        if len(row) != 3:
            raise InputError(f"expected table line {lineno}: need 3 fields, got {len(row)}")
        label, n, group = (c.strip() for c in row)
        try:
            key = (catalog_entry(label).label, int(n))
            out[key] = parse_group(group)
        except (KeyError, ValueError) as e:
            raise InputError(f"expected table line {lineno}: {e}") from None
    return out


def _load_module(target: str, cfg: RunConfig):
    path = Path(target)
    if path.exists():
        m = parse_cell_diagram(path.read_text(), label=path.stem)
        if cfg.t_max is not None:
            m = truncate(m, cfg.t_max)
        return m
    try:
        catalog_entry(target)
    except KeyError:
        raise InputError(f"{target!r} is neither a file nor a catalog label") from None
    window = (-1, cfg.t_max) if cfg.t_max is not None else (-1, max(12, cfg.max_stem + 7))
    return catalog(target, window)


def _homotopy(label: str, cfg: RunConfig):
    entry = catalog_entry(label)
    window = (-1, cfg.t_max) if cfg.t_max is not None else (-1, max(12, cfg.max_stem + 7))
    x = catalog(entry.label, window)
    page = abp_e2(x, cfg.max_stem, cfg.s_max, label=entry.label)
    cert = certify_collapse(page)
    return page, cert, assemble_groups(page, cert, allow_uncertified=cfg.allow_uncertified)


def cmd_resolve(cfg: RunConfig, out) -> int:
    m = _load_module(cfg.target, cfg)
    res = minimal_resolution(m, cfg.s_max, cfg.max_stem + cfg.s_max)
    chart = ext_chart(res, cfg.max_stem, label=m.label)
    if cfg.output:
        Path(cfg.output).write_text(chart.to_json())
    fmt = cfg.fmt or "json"
    table = io.StringIO()
    table.write(f"# {m.label} over {res.algebra.label}: dim Ext^(s,t)\n# s t dim\n")
    for (s, t), d in sorted(res.ext_dims().items()):
        if t - s <= cfg.max_stem:
            table.write(f"# {s} {t} {d}\n")
    if fmt == "json":
        sys.stderr.write(table.getvalue())
        out.write(chart.to_json() + "\n")
    else:
        out.write(table.getvalue())
        out.write(render_ascii(chart) if fmt == "ascii" else render_svg(chart))
    return EXIT_OK


def cmd_chart(cfg: RunConfig, out) -> int:
    path = Path(cfg.target)
    if not path.exists():
        raise InputError(f"no such chart file: {cfg.target}")
    chart = ExtChart.from_json(path.read_text())
    fmt = cfg.fmt or "ascii"
    if fmt == "json":
        out.write(chart.to_json() + "\n")
    elif fmt == "svg":
        out.write(render_svg(chart))
    else:
        out.write(render_ascii(chart))
    return EXIT_OK


def cmd_homotopy(cfg: RunConfig, out) -> int:
    try:
        page, cert, rep = _homotopy(cfg.target, cfg)
    except UncertifiedCollapseError as e:
        out.write(f"{cfg.target}: {e}; rerun with --allow-uncertified\n")
        return EXIT_UNCERTIFIED
    if cfg.fmt == "json":
        d = rep.to_dict()
        d["potential_differentials"] = [
            {"r": p.r, "source": list(p.source), "target": list(p.target)} for p in cert.potential]
        if cfg.anderson:
            a = anderson_groups(rep, range(0, cfg.max_stem))
            d["anderson"] = {str(n): a.describe(n) for n in range(0, cfg.max_stem)}
        out.write(json.dumps(d, indent=1) + "\n")
        return EXIT_OK
    entry = catalog_entry(cfg.target)
    out.write(f"{entry.group} = MSpin ^ {entry.spectrum}\n")
    for n in rep.stems():
        out.write(f"  pi_{n} = {rep.group_str(n, two_complete_note=True)}\n")
    for k, v in rep.flags.items():
        out.write(f"  {k}: {'yes' if v else 'no'}\n")
    if rep.exotic_stems:
        out.write(f"  exotic extensions not excluded in stems {list(rep.exotic_stems)}\n")
    if cfg.anderson:
        a = anderson_groups(rep, range(0, cfg.max_stem))
        for n in range(0, cfg.max_stem):
            out.write(f"  [X, S^{n} I_Z] = {a.describe(n)}\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    if cfg.expected:
        p = Path(cfg.expected)
        if not p.exists():
            raise InputError(f"no such expected table: {cfg.expected}")
        text = p.read_text()
    else:
        text = shipped_table_path().read_text()
    expected = read_expected(text)
    if cfg.target in (None, "all"):
        labels = [l for l in CATALOG_LABELS if any(k[0] == l for k in expected)]
    else:
        labels = [catalog_entry(cfg.target).label]
    bad = 0
    checked = 0
    for label in labels:
        rows = sorted(n for l, n in expected if l == label)
        if not rows:
            raise InputError(f"expected table has no rows for {label}")
        need = max(rows) + 1
        sub = RunConfig("homotopy", label, max(cfg.max_stem, need), cfg.s_max, cfg.t_max,
                        allow_uncertified=cfg.allow_uncertified)
        try:
            _, _, rep = _homotopy(label, sub)
        except UncertifiedCollapseError as e:
            out.write(f"{label}: {e}\n")
            return EXIT_UNCERTIFIED
        for n in rows:
            want = expected[(label, n)]
            got = rep.groups.get(n)
            checked += 1
            if got is None or not same_group(got, want):
                bad += 1
                shown = group_to_csv(got) if got is not None else "(not computed)"
                out.write(f"MISMATCH {label} pi_{n}: expected {group_to_csv(want)}, computed {shown}\n")
            else:
                out.write(f"ok       {label} pi_{n} = {format_group(got)}\n")
    out.write(f"{checked - bad}/{checked} cells match\n")
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_catalog(cfg: RunConfig, out) -> int:
    if cfg.target not in (None, "list"):
        raise InputError(f"unknown catalog subcommand {cfg.target!r}")
    for e in CATALOG:
        out.write(f"{e.label:8} s={e.s:3} {e.group:10} MSpin ^ {e.spectrum}\n")
    return EXIT_OK


COMMANDS = {
    "resolve": cmd_resolve,
    "chart": cmd_chart,
    "homotopy": cmd_homotopy,
    "verify": cmd_verify,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adamsext", description="Adams E2 pages and bordism groups over A(1).")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("target", nargs="?", help="module file, chart file, catalog label, 'all' or 'list'")
    p.add_argument("--max-stem", type=int, default=5)
    p.add_argument("--smax", type=int, default=24)
    p.add_argument("--tmax", type=int, default=None)
    p.add_argument("--format", choices=("ascii", "svg", "json"), default=None)
    p.add_argument("--expected", default=None, help="CSV table label,n,group")
    p.add_argument("--allow-uncertified", action="store_true")
    p.add_argument("--anderson", action="store_true", help="also print Anderson-dual groups")
    p.add_argument("-o", "--output", default=None, help="write the chart as JSON to this file")
    return p


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.target, args.max_stem, args.smax, args.tmax,
                        args.format, args.expected, args.allow_uncertified, args.output,
                        args.anderson)
        if cfg.command in ("resolve", "chart", "homotopy") and not cfg.target:
            raise InputError(f"{cfg.command} needs a target")
        return COMMANDS[cfg.command](cfg, out)
    except (InputError, ModuleInputError, WindowEscapeError, DegreeCapError,
            KeyError, ValueError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        sys.stderr.write(f"adamsext: error: {msg}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
