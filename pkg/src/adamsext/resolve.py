"""Minimal free resolutions and Ext charts.

P_s is free on generators g with internal degrees t; an element of P_s in
degree t is a sum of pairs (h, a) meaning basis element a of the algebra
times generator h.  Generators are adjoined degree by degree, so a
resolution computed up to ``t_cap`` is exact in every internal degree
up to that cap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .f2la import Echelon, F2Matrix, iter_bits, kernel_rows
from .fpmodule import ModulePresentation, WindowEscapeError


class CoverageError(WindowEscapeError):
    """The resolution does not reach far enough for the requested chart."""


@dataclass
class FreeResolution:
    module: ModulePresentation
    s_max: int
    t_cap: int
    # gens[s] = internal degrees of the generators of P_s, ascending
    gens: list
    # diffs[0][k] = module vector of epsilon(g_k); for s >= 1, a tuple of (h, a) pairs in P_{s-1}
    diffs: list
    t_min: int = 0

    @property
    def algebra(self):
        return self.module.algebra

    def ext_dims(self) -> dict:
        out: dict = {}
        for s, degs in enumerate(self.gens):
            for t in degs:
                out[(s, t)] = out.get((s, t), 0) + 1
        return out

    def generators_at(self, s: int, t: int) -> list:
        return [k for k, d in enumerate(self.gens[s]) if d == t]

    def basis(self, s: int, t: int) -> list:
        """Basis of P_s in internal degree t as (generator, algebra index) pairs."""
        alg = self.algebra
        out = []
        for h, d in enumerate(self.gens[s]):
            for a in alg.by_degree.get(t - d, ()):
                out.append((h, a))
        return out

    def stem_bound(self):
        return self.module.valid_stem_bound()


def _free_action(alg, d_img, a: int) -> dict:
    """a * (sum of (h', a') pairs), returned as a set of (h', c) pairs."""
    out: set = set()
    for h2, a2 in d_img:
        for c in iter_bits(alg.mult_column(a2)[a]):
            key = (h2, c)
            if key in out:
                out.remove(key)
            else:
                out.add(key)
    return out


def differential_rows(res: FreeResolution, s: int, t: int) -> tuple:
    """Rows of d_s in internal degree t: (source basis, target basis, row masks)."""
    alg = res.algebra
    src = res.basis(s, t)
    if s == 0:
        m = res.module
        tgt_idx = m.in_degree(t)
        pos = {j: k for k, j in enumerate(tgt_idx)}
        rows = []
        for h, a in src:
            v = m.act(a, res.diffs[0][h])
            r = 0
            for j in iter_bits(v):
                r |= 1 << pos[j]
            rows.append(r)
        return src, tgt_idx, rows
    tgt = res.basis(s - 1, t)
    pos = {p: k for k, p in enumerate(tgt)}
    rows = []
    for h, a in src:
        r = 0
        for key in _free_action(alg, res.diffs[s][h], a):
            r |= 1 << pos[key]
        rows.append(r)
    return src, tgt, rows


def differential_matrix(res: FreeResolution, s: int, t: int) -> F2Matrix:
    src, tgt, rows = differential_rows(res, s, t)
    return F2Matrix(len(src), len(tgt), tuple(rows))


def minimal_resolution(m: ModulePresentation, s_max: int, t_cap: int) -> FreeResolution:
    """Minimal resolution of ``m`` through filtration ``s_max`` and internal degree ``t_cap``."""
    if s_max < 0:
        raise ValueError("s_max must be non-negative")
    alg = m.algebra
    res = FreeResolution(m, s_max, t_cap, [], [], t_min=m.t_min)
    if not m.names:
        res.gens = [[] for _ in range(s_max + 1)]
        res.diffs = [[] for _ in range(s_max + 1)]
        return res
    t_lo = m.min_degree()

    # s = 0: generators of M modulo decomposables
    gens0, eps = [], []
    kernels: dict = {}
    res.gens.append(gens0)
    res.diffs.append(eps)
    for t in range(t_lo, t_cap + 1):
        src, tgt_idx, rows = differential_rows(res, 0, t)
        ech = Echelon()
        for r in rows:
            ech.add(r)
        for k, j in enumerate(tgt_idx):
            if ech.add(1 << k):
                gens0.append(t)
                eps.append(1 << j)
        kernels[t] = (src, kernel_rows(rows))

    for s in range(1, s_max + 1):
        gens_s, diffs_s = [], []
        res.gens.append(gens_s)
        res.diffs.append(diffs_s)
        new_kernels: dict = {}
        for t in range(t_lo + s, t_cap + 1):
            prev_src, kern = kernels.get(t, ([], []))
            src, tgt, rows = differential_rows(res, s, t)
            if kern:
                # generators of degree t were appended after the kernel was taken,
                # so the old basis is a prefix of the current one
                assert tgt[:len(prev_src)] == prev_src
                ech = Echelon()
                for r in rows:
                    ech.add(r)
                for kv in kern:
                    # kernel vectors are over prev_src, which equals basis(s-1, t)
                    if ech.add(kv):
                        gens_s.append(t)
                        img = tuple(prev_src[j] for j in iter_bits(kv))
                        diffs_s.append(img)
            new_kernels[t] = (src, kernel_rows(rows))
        kernels = new_kernels
    return res


def check_minimality(res: FreeResolution):
    """None when every differential entry lies in the augmentation ideal, else a witness."""
    alg = res.algebra
    for s in range(1, len(res.diffs)):
        for k, img in enumerate(res.diffs[s]):
            for h, a in img:
                if alg.degrees[a] == 0:
                    return {"s": s, "generator": k, "t": res.gens[s][k],
                            "hits": (h, res.gens[s - 1][h])}
    return None


def check_d_squared(res: FreeResolution) -> bool:
    for s in range(1, len(res.gens)):
        for k, t in enumerate(res.gens[s]):
            img = res.diffs[s][k]
            if s == 1:
                v = 0
                for h, a in img:
                    v ^= res.module.act(a, res.diffs[0][h])
                if v:
                    return False
            else:
                acc: set = set()
                for h, a in img:
                    acc ^= _free_action(res.algebra, res.diffs[s - 1][h], a)
                if acc:
                    return False
    return True


def check_exactness(res: FreeResolution, t_max: int | None = None) -> bool:
    """ker d_{s-1} = im d_s in every internal degree up to the cap (s < s_max)."""
    top = res.t_cap if t_max is None else min(t_max, res.t_cap)
    lo = res.module.min_degree()
    if lo is None:
        return True
    m = res.module
    for t in range(lo, top + 1):
        # surjectivity onto M
        _, tgt, rows = differential_rows(res, 0, t)
        ech = Echelon()
        for r in rows:
            ech.add(r)
        if len(ech) != len(tgt):
            return False
        for s in range(1, len(res.gens)):
            _, _, prev_rows = differential_rows(res, s - 1, t)
            kdim = len(kernel_rows(prev_rows))
            _, _, rows = differential_rows(res, s, t)
            ech = Echelon()
            for r in rows:
                ech.add(r)
            if len(ech) != kdim:
                return False
    return True


def h_product(res: FreeResolution, i: int, cls: tuple) -> list:
    """Generators g' of P_{s+1} paired nonzero with h_i times the dual of g.

    ``cls`` is (s, generator index).  The pairing is the coefficient of the
    basis element carrying Sq^(2^i) on g in d(g').
    """
    s, k = cls
    if s + 1 >= len(res.gens):
        raise CoverageError(f"filtration {s + 1} not resolved")
    alg = res.algebra
    sq = 1 << i
    functional = alg.square_functional(sq)
    t = res.gens[s][k] + sq
    if t > res.t_cap:
        raise CoverageError(f"internal degree {t} beyond the cap {res.t_cap}")
    out = []
    for k2, t2 in enumerate(res.gens[s + 1]):
        if t2 != t:
            continue
        c = 0
        for h, a in res.diffs[s + 1][k2]:
            if h == k and (functional >> a) & 1:
                c ^= 1
        if c:
            out.append(k2)
    return out


# ---------------------------------------------------------------- charts


@dataclass(frozen=True)
class ExtChart:
    algebra: str
    module: str
    max_stem: int
    max_filtration: int
    classes: tuple  # of (stem, filtration, index)
    h0: tuple = ()
    h1: tuple = ()
    min_stem: int | None = field(default=None, compare=False)

    def cells(self) -> dict:
        out: dict = {}
        for cid, (n, s, _) in enumerate(self.classes):
            out.setdefault((n, s), []).append(cid)
        return out

    def count(self, n: int, s: int) -> int:
        return len(self.cells().get((n, s), ()))

    def dims(self) -> dict:
        return {k: len(v) for k, v in self.cells().items()}

    def stems(self) -> list:
        return sorted({n for n, _, _ in self.classes})

    def edges(self, i: int) -> tuple:
        return self.h0 if i == 0 else self.h1

    def h_matrix(self, i: int, n: int, s: int) -> list:
        """Matrix of h_i from cell (n, s) to (n + i, s + 1) as row bitmasks."""
        cells = self.cells()
        src = cells.get((n, s), [])
        dst = cells.get((n + i, s + 1), [])
        pos = {c: k for k, c in enumerate(dst)}
        spos = {c: k for k, c in enumerate(src)}
        rows = [0] * len(src)
        for a, b in self.edges(i):
            if a in spos and b in pos:
                rows[spos[a]] ^= 1 << pos[b]
        return rows

    def shifted(self, r: int) -> "ExtChart":
        classes = tuple((n + r, s, k) for n, s, k in self.classes)
        return ExtChart(self.algebra, self.module, self.max_stem + r, self.max_filtration,
                        classes, self.h0, self.h1)

    def restricted(self, max_stem: int, max_filtration: int | None = None, min_stem: int | None = None) -> "ExtChart":
        smax = self.max_filtration if max_filtration is None else max_filtration
        keep = [cid for cid, (n, s, _) in enumerate(self.classes)
                if n <= max_stem and s <= smax and (min_stem is None or n >= min_stem)]
        remap = {old: new for new, old in enumerate(keep)}
        classes = tuple(self.classes[c] for c in keep)
        h0 = tuple((remap[a], remap[b]) for a, b in self.h0 if a in remap and b in remap)
        h1 = tuple((remap[a], remap[b]) for a, b in self.h1 if a in remap and b in remap)
        return ExtChart(self.algebra, self.module, max_stem, smax, classes, h0, h1)

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "module": self.module,
            "window": {"max_stem": self.max_stem, "max_filtration": self.max_filtration},
            "classes": [{"stem": n, "filtration": s, "index": k} for n, s, k in self.classes],
            "h0": [[a, b] for a, b in self.h0],
            "h1": [[a, b] for a, b in self.h1],
        }

    def to_json(self, indent: int | None = 1) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "ExtChart":
        try:
            classes = tuple((int(c["stem"]), int(c["filtration"]), int(c["index"])) for c in d["classes"])
            h0 = tuple((int(a), int(b)) for a, b in d.get("h0", []))
            h1 = tuple((int(a), int(b)) for a, b in d.get("h1", []))
            win = d["window"]
            chart = cls(str(d["algebra"]), str(d["module"]), int(win["max_stem"]),
                        int(win["max_filtration"]), classes, h0, h1)
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"malformed chart: {e}") from None
        n = len(classes)
        for a, b in h0 + h1:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError("malformed chart: edge refers to a missing class")
        return chart

    @classmethod
    def from_json(cls, text: str) -> "ExtChart":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"malformed chart: {e}") from None
        return cls.from_dict(d)


def ext_chart(res: FreeResolution, max_stem: int, max_filtration: int | None = None,
              label: str | None = None) -> ExtChart:
    smax = res.s_max if max_filtration is None else max_filtration
    if smax > res.s_max:
        raise CoverageError(f"filtration {smax} beyond the resolved {res.s_max}")
    if max_stem + smax > res.t_cap:
        raise CoverageError(
            f"stems <= {max_stem} at filtration <= {smax} need internal degree {max_stem + smax}, "
            f"resolution stops at {res.t_cap}")
    bound = res.stem_bound()
    if bound is not None and max_stem > bound:
        raise CoverageError(
            f"module window ends at degree {res.module.t_max}; Ext is only determined for stems <= {bound}")
    ids: dict = {}
    raw = []
    for s in range(smax + 1):
        for k, t in enumerate(res.gens[s]):
            if t - s <= max_stem:
                raw.append((t - s, s, k))
    raw.sort()
    classes = []
    counter: dict = {}
    for n, s, k in raw:
        idx = counter.get((n, s), 0)
        counter[(n, s)] = idx + 1
        ids[(s, k)] = len(classes)
        classes.append((n, s, idx))
    h0, h1 = [], []
    for (s, k), cid in ids.items():
        if s + 1 > smax:
            continue
        for i, edges in ((0, h0), (1, h1)):
            t2 = res.gens[s][k] + (1 << i)
            if t2 - (s + 1) > max_stem:
                continue
            for k2 in h_product(res, i, (s, k)):
                edges.append((cid, ids[(s + 1, k2)]))
    h0.sort()
    h1.sort()
    name = label if label is not None else res.module.label
    return ExtChart(res.algebra.label, name, max_stem, smax, tuple(classes), tuple(h0), tuple(h1))


def chart(m: ModulePresentation, max_stem: int, s_max: int, label: str | None = None) -> ExtChart:
    """Resolve ``m`` just far enough and return its chart."""
    res = minimal_resolution(m, s_max, max_stem + s_max)
    return ext_chart(res, max_stem, label=label)
