"""Adams E2 pages over A(1), collapse certification and group assembly.

Within one stem the h0-multiplications make the E2 classes into a graded
F2[h0]-module, i.e. a persistence module indexed by filtration.  Its
barcode is read off from ranks of iterated h0 maps: a bar [a, b] with
b < s_max is a Z/2^(b-a+1) summand and a bar reaching s_max is a copy of
the 2-adic integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .f2la import Echelon, iter_bits
from .fpmodule import ModulePresentation
from .resolve import ExtChart, minimal_resolution, ext_chart

ABP_STEM_LIMIT = 7


class StemBoundError(ValueError):
    pass


class UncertifiedCollapseError(RuntimeError):
    pass


@dataclass(frozen=True)
class E2Page:
    chart: ExtChart
    validity_bound: int
    label: str = ""

    @property
    def s_max(self) -> int:
        return self.chart.max_filtration

    @property
    def max_stem(self) -> int:
        return self.chart.max_stem


def abp_e2(x: ModulePresentation, max_stem: int = 5, s_max: int = 24, label: str | None = None) -> E2Page:
    """E2 page for MSpin smashed with X, computed over A(1)."""
    if x.algebra.label != "A(1)":
        raise ValueError("the reduction to A(1) needs an A(1)-module")
    if max_stem > ABP_STEM_LIMIT:
        raise StemBoundError(f"max_stem {max_stem} exceeds {ABP_STEM_LIMIT}; the A(1) reduction needs t - s < 8")
    if max_stem < 0:
        raise StemBoundError("max_stem must be non-negative")
    res = minimal_resolution(x, s_max, max_stem + s_max)
    name = label if label is not None else x.label
    return E2Page(ext_chart(res, max_stem, label=name), ABP_STEM_LIMIT, name)


def persistence_length(s_max: int) -> int:
    return max(4, s_max // 4)


# ---------------------------------------------------------------- chart linear algebra


class _StemData:
    """h0 maps of one stem as matrices between filtration cells."""

    def __init__(self, chart: ExtChart, n: int):
        self.n = n
        self.s_max = chart.max_filtration
        cells = chart.cells()
        self.cells = [cells.get((n, s), []) for s in range(self.s_max + 1)]
        self.maps = [chart.h_matrix(0, n, s) for s in range(self.s_max + 1)]

    def dim(self, s: int) -> int:
        return len(self.cells[s]) if 0 <= s <= self.s_max else 0

    def push(self, s: int, v: int, k: int) -> int:
        """h0^k applied to a vector in cell s."""
        for j in range(k):
            if s + j > self.s_max - 1 or not v:
                return 0
            out = 0
            for i in iter_bits(v):
                out ^= self.maps[s + j][i]
            v = out
        return v

    def rank(self, a: int, b: int) -> int:
        """Rank of h0^(b-a) from cell a to cell b."""
        if a < 0 or b > self.s_max or a > b:
            return 0
        ech = Echelon()
        for i in range(self.dim(a)):
            ech.add(self.push(a, 1 << i, b - a))
        return len(ech)

    def bars(self) -> list:
        out = []
        top = self.s_max
        for a in range(top + 1):
            if not self.dim(a):
                continue
            for b in range(a, top + 1):
                c = self.rank(a, b) - self.rank(a - 1, b)
                if b < top:
                    c -= self.rank(a, b + 1) - self.rank(a - 1, b + 1)
                out.extend([(a, b)] * c)
        return out

    def injective(self, s: int) -> bool | None:
        """Whether h0 is injective on cell s; None when the answer is off the chart."""
        if s < self.s_max:
            ech = Echelon()
            rows = self.maps[s]
            for r in rows:
                if not ech.add(r):
                    return False
            return True
        # top row: injective if the whole cell sits on long strings from below
        L = persistence_length(self.s_max)
        ech = Echelon()
        for i in range(self.dim(s - L)):
            ech.add(self.push(s - L, 1 << i, L))
        return len(ech) == self.dim(s) if self.dim(s) else True

    def on_tower(self, s: int, i: int) -> bool:
        """Class i of cell s supports an h0-string reaching the top filtration."""
        v = 1 << i
        if s == self.s_max:
            return self.injective(s) is True
        return self.push(s, v, self.s_max - s) != 0

    def tower_through(self, s: int) -> bool:
        """Some element of cell s lies on a string reaching the top filtration."""
        for i in range(self.dim(s)):
            if s == self.s_max:
                return bool(self.dim(s)) and self.injective(s) is True
            if self.push(s, 1 << i, self.s_max - s):
                return True
        return False


def _h1_image_zero(chart: ExtChart, cid: int) -> bool | None:
    n, s, _ = chart.classes[cid]
    if n + 1 > chart.max_stem or s + 1 > chart.max_filtration:
        return None
    return not any(a == cid for a, _ in chart.h1)


def _h1_injective(chart: ExtChart, n: int, s: int) -> bool | None:
    if n + 1 > chart.max_stem or s + 1 > chart.max_filtration:
        return None
    ech = Echelon()
    for r in chart.h_matrix(1, n, s):
        if not ech.add(r):
            return False
    return True


# ---------------------------------------------------------------- collapse


@dataclass(frozen=True)
class PotentialDifferential:
    r: int
    source: tuple
    target: tuple
    source_class: int


@dataclass(frozen=True)
class CollapseCertificate:
    certified: bool
    potential: tuple = ()

    def __bool__(self) -> bool:
        return self.certified


def certify_collapse(page: E2Page) -> CollapseCertificate:
    chart = page.chart
    smax = chart.max_filtration
    cells = chart.cells()
    stems = {}

    def stem(n):
        if n not in stems:
            stems[n] = _StemData(chart, n)
        return stems[n]

    found = []
    for cid, (n, s, idx) in enumerate(chart.classes):
        src = stem(n)
        tgt_stem = stem(n - 1)
        x_tower = src.on_tower(s, idx)
        h0x_zero = src.push(s, 1 << idx, 1) == 0 if s < smax else None
        h1x_zero = _h1_image_zero(chart, cid)
        for r in range(2, smax - s + 1):
            t = (n - 1, s + r)
            if not cells.get(t):
                continue
            if x_tower:
                # a string of infinite length can only hit another infinite string
                if not tgt_stem.tower_through(s + r):
                    continue
                found.append(PotentialDifferential(r, (n, s), t, cid))
                continue
            if h0x_zero and tgt_stem.injective(s + r) is True:
                continue
            if h1x_zero and _h1_injective(chart, t[0], t[1]) is True:
                continue
            found.append(PotentialDifferential(r, (n, s), t, cid))
    return CollapseCertificate(not found, tuple(found))


# ---------------------------------------------------------------- groups


@dataclass(frozen=True)
class Factor:
    order_log2: int | None  # None for the 2-adic integers

    def __str__(self) -> str:
        if self.order_log2 is None:
            return "Z"
        return f"Z/{2 ** self.order_log2}"

    @property
    def free(self) -> bool:
        return self.order_log2 is None


def _factor_key(f: Factor):
    return (0, 0) if f.free else (1, -f.order_log2)


@dataclass
class HomotopyReport:
    label: str
    groups: dict  # stem -> list of Factor
    collapse_certified: bool
    exotic_extension_possible: bool
    tower_height_assumed: bool
    assumed_collapse: bool = False
    exotic_stems: tuple = ()
    assumed_stems: tuple = ()
    bars: dict = field(default_factory=dict)

    @property
    def flags(self) -> dict:
        return {
            "collapse-certified": self.collapse_certified,
            "exotic-extension-possible": self.exotic_extension_possible,
            "tower-height-assumed": self.tower_height_assumed,
            "assumed-collapse": self.assumed_collapse,
        }

    def group(self, n: int) -> list:
        return self.groups[n]

    def group_str(self, n: int, two_complete_note: bool = False) -> str:
        return format_group(self.groups[n], two_complete_note)

    def stems(self) -> list:
        return sorted(self.groups)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "groups": {str(n): [str(f) for f in self.groups[n]] for n in self.stems()},
            "flags": self.flags,
        }


def format_group(factors, two_complete_note: bool = False) -> str:
    if not factors:
        return "0"
    parts = []
    for f in factors:
        s = str(f)
        if f.free and two_complete_note:
            s = "Z (2-complete)"
        parts.append(s)
    return " x ".join(parts)


def _exotic_possible(bars: list, s_max: int) -> bool:
    # a finite string ending at e (top class has h0 x = 0) next to a string
    # starting at filtration >= e + 2 that is not an h0-multiple
    for a, e in bars:
        if e >= s_max:
            continue
        for b, _ in bars:
            if b >= e + 2:
                return True
    return False


def assemble_groups(page: E2Page, collapse: CollapseCertificate | None = None,
                    allow_uncertified: bool = False, stems=None) -> HomotopyReport:
    if collapse is None:
        collapse = certify_collapse(page)
    if not collapse.certified and not allow_uncertified:
        raise UncertifiedCollapseError(
            f"collapse not certified: {len(collapse.potential)} potential differentials")
    chart = page.chart
    smax = chart.max_filtration
    L = persistence_length(smax)
    if stems is None:
        stems = range(0, chart.max_stem)
    groups, all_bars = {}, {}
    exotic, assumed = [], []
    for n in stems:
        sd = _StemData(chart, n)
        bars = sd.bars()
        all_bars[n] = bars
        factors = []
        for a, b in bars:
            if b == smax:
                if b - a < L:
                    assumed.append(n)
                factors.append(Factor(None))
            else:
                factors.append(Factor(b - a + 1))
        factors.sort(key=_factor_key)
        groups[n] = factors
        if _exotic_possible(bars, smax):
            exotic.append(n)
    return HomotopyReport(page.label, groups, collapse.certified, bool(exotic), bool(assumed),
                          assumed_collapse=not collapse.certified,
                          exotic_stems=tuple(exotic), assumed_stems=tuple(sorted(set(assumed))),
                          bars=all_bars)


# ---------------------------------------------------------------- Anderson duals


@dataclass(frozen=True)
class AndersonReport:
    label: str
    torsion: dict  # degree -> list of Factor
    free_rank: dict  # degree -> int, or None where pi_n is not covered
    covered_upto: int

    def describe(self, n: int) -> str:
        tor = format_group(self.torsion[n])
        fr = self.free_rank[n]
        if fr is None:
            return f"{tor} (+ free part not covered)"
        free = "Z^%d" % fr if fr > 1 else ("Z" if fr == 1 else "")
        if tor == "0":
            return free or "0"
        return f"{free} x {tor}" if free else tor


def anderson_groups(h: HomotopyReport, degrees=None) -> AndersonReport:
    """[X, S^n I_Z] = Torsion(pi_{n-1}) + Free(pi_n), degree by degree."""
    covered = h.stems()
    if not covered:
        raise ValueError("empty homotopy report")
    lo, hi = covered[0], covered[-1]
    if degrees is None:
        degrees = range(lo, hi + 2)
    torsion, free = {}, {}
    for n in degrees:
        if n - 1 < lo - 1 or n - 1 > hi:
            raise ValueError(f"degree {n} out of range: homotopy known for stems {lo}..{hi}")
        # below the bottom stem the groups vanish by connectivity
        prev = h.groups.get(n - 1, [])
        torsion[n] = [f for f in prev if not f.free]
        if n in h.groups:
            free[n] = sum(1 for f in h.groups[n] if f.free)
        else:
            free[n] = None
    return AndersonReport(h.label, torsion, free, hi)


# ---------------------------------------------------------------- group strings

_TOKEN = re.compile(r"^\(?Z(?:/(\d+)(?:\^(\d+))?)?\)?(?:\^(\d+))?$")


def parse_group(text: str) -> list:
    """Parse '0', 'Z', 'Z/2^k', 'Z/8', 'Z^2', '(Z/2)^3' and products joined by 'x'."""
    s = text.strip().replace("×", "x").replace(" ", "")
    if s in ("0", ""):
        return []
    out = []
    for tok in s.split("x"):
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad group factor {tok!r}")
        base, exp, mult = m.group(1), m.group(2), m.group(3)
        if tok.startswith("(") != (")" in tok):
            raise ValueError(f"bad group factor {tok!r}")
        count = int(mult) if mult else 1
        if base is None:
            f = Factor(None)
        else:
            b = int(base)
            if exp is not None:
                if b != 2:
                    raise ValueError("only 2-primary factors are supported")
                k = int(exp)
            else:
                if b < 2 or b & (b - 1):
                    raise ValueError(f"{b} is not a power of 2")
                k = b.bit_length() - 1
            if k < 1:
                raise ValueError("trivial cyclic factor")
            f = Factor(k)
        out.extend([f] * count)
    out.sort(key=_factor_key)
    return out


def group_to_csv(factors) -> str:
    """Canonical expected-table spelling: Z/2, Z/2^2, ... joined by x."""
    if not factors:
        return "0"
    parts = []
    for f in sorted(factors, key=_factor_key):
        if f.free:
            parts.append("Z")
        elif f.order_log2 == 1:
            parts.append("Z/2")
        else:
            parts.append(f"Z/2^{f.order_log2}")
    return "x".join(parts)


def same_group(a, b) -> bool:
    return sorted(a, key=_factor_key) == sorted(b, key=_factor_key)
