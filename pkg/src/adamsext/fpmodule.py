"""Finite graded modules over a subalgebra, given by generator actions.

A module is a list of named basis elements with degrees plus, for every
algebra generator, the image of each basis element as a bitmask over the
whole basis.  Images that would land above ``t_max`` are not stored; the
pair (generator, element) is recorded in ``escaped`` instead and any Ext
query that could see those degrees is refused downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .f2la import Echelon, iter_bits
from .steenrod import SubalgebraSpec, act_all, parse_algebra_label, subalgebra


class ModuleInputError(ValueError):
    pass


class ModuleSyntaxError(ModuleInputError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class UnknownGeneratorError(ModuleInputError):
    pass


class DegreeMismatchError(ModuleInputError):
    pass


class ModuleValidationError(ModuleInputError):
    def __init__(self, report: "ValidationReport"):
        super().__init__(str(report))
        self.report = report


class WindowEscapeError(ValueError):
    """Module data outside the window would be needed."""


@dataclass(frozen=True)
class ModulePresentation:
    algebra: SubalgebraSpec
    t_min: int
    t_max: int
    names: tuple
    degrees: tuple
    actions: dict = field(hash=False)
    escaped: frozenset = frozenset()
    label: str = ""

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate basis names")
        if list(self.degrees) != sorted(self.degrees):
            raise ValueError("basis must be sorted by degree")
        for d in self.degrees:
            if not self.t_min <= d <= self.t_max:
                raise ValueError(f"degree {d} outside window [{self.t_min}, {self.t_max}]")
        for g in self.algebra.gen_names:
            imgs = self.actions.get(g)
            if imgs is None or len(imgs) != len(self.names):
                raise ValueError(f"missing action for {g}")

    # -- basic queries

    def __len__(self) -> int:
        return len(self.names)

    @property
    def dimension(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGeneratorError(f"unknown generator {name!r}") from None

    @property
    def _index(self) -> dict:
        cache = self.__dict__.get("_index_cache")
        if cache is None:
            cache = {n: i for i, n in enumerate(self.names)}
            object.__setattr__(self, "_index_cache", cache)
        return cache

    def in_degree(self, d: int) -> list:
        return [i for i, e in enumerate(self.degrees) if e == d]

    def degree_dims(self) -> dict:
        out: dict = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return out

    def min_degree(self):
        return self.degrees[0] if self.degrees else None

    def max_degree(self):
        return self.degrees[-1] if self.degrees else None

    def gen_degree(self, g: str) -> int:
        return self.algebra.gen_elements[self.algebra.gen_names.index(g)].degree

    def apply(self, g: str, v: int) -> int:
        imgs = self.actions[g]
        out = 0
        for j in iter_bits(v):
            out ^= imgs[j]
        return out

    def act_table(self) -> tuple:
        """For each basis element m, the images b*m for every algebra basis element b."""
        cache = self.__dict__.get("_act_cache")
        if cache is None:
            gens = self.algebra.gen_names
            imgs = [self.actions[g] for g in gens]

            def apply_gen(gi, v):
                out = 0
                for j in iter_bits(v):
                    out ^= imgs[gi][j]
                return out

            cache = tuple(act_all(self.algebra, apply_gen, 1 << m) for m in range(len(self.names)))
            object.__setattr__(self, "_act_cache", cache)
        return cache

    def act(self, b: int, v: int) -> int:
        """Action of algebra basis element ``b`` on a vector."""
        table = self.act_table()
        out = 0
        for m in iter_bits(v):
            out ^= table[m][b]
        return out

    def act_element(self, x, v: int) -> int:
        out = 0
        for b in iter_bits(self.algebra.coords(x)):
            out ^= self.act(b, v)
        return out

    def vector_str(self, v: int) -> str:
        if not v:
            return "0"
        return " + ".join(self.names[j] for j in iter_bits(v))

    @property
    def is_exact(self) -> bool:
        return not self.escaped

    def valid_stem_bound(self):
        """Largest stem in which Ext of this presentation equals Ext of the windowed module."""
        return None if not self.escaped else self.t_max - 1

    def with_label(self, label: str) -> "ModulePresentation":
        return ModulePresentation(self.algebra, self.t_min, self.t_max, self.names, self.degrees,
                                  self.actions, self.escaped, label)

    def action_matrix(self, g: str, d: int) -> list:
        """Rows: basis of degree d; columns: basis of degree d + |g|, as 0/1 lists."""
        src = self.in_degree(d)
        dst = self.in_degree(d + self.gen_degree(g))
        return [[(self.actions[g][i] >> j) & 1 for j in dst] for i in src]

    def __str__(self) -> str:
        return to_text(self)


def make_module(algebra: SubalgebraSpec, t_min: int, t_max: int, basis, actions, escaped=(), label="") -> ModulePresentation:
    """Build a module from (name, degree) pairs and name-keyed actions.

    ``actions[g][name]`` is an iterable of target names.  The basis is
    stably sorted by degree.
    """
    basis = sorted(basis, key=lambda nd: nd[1])
    names = tuple(n for n, _ in basis)
    degrees = tuple(d for _, d in basis)
    idx = {n: i for i, n in enumerate(names)}
    acts = {}
    for g in algebra.gen_names:
        imgs = [0] * len(names)
        for src, tgts in actions.get(g, {}).items():
            v = 0
            for t in tgts:
                v ^= 1 << idx[t]
            imgs[idx[src]] = v
        acts[g] = tuple(imgs)
    esc = frozenset((g, idx[n]) for g, n in escaped)
    return ModulePresentation(algebra, t_min, t_max, names, degrees, acts, esc, label)


def _window_escapes(algebra, degrees, t_max) -> frozenset:
    out = set()
    for g, x in zip(algebra.gen_names, algebra.gen_elements):
        for i, d in enumerate(degrees):
            if d + x.degree > t_max:
                out.add((g, i))
    return frozenset(out)


def zero_module(algebra: SubalgebraSpec, t_min: int = 0, t_max: int = 0) -> ModulePresentation:
    acts = {g: () for g in algebra.gen_names}
    return ModulePresentation(algebra, t_min, t_max, (), (), acts, frozenset(), "0")


def trivial_module(algebra: SubalgebraSpec, degree: int = 0, name: str = "x0") -> ModulePresentation:
    acts = {g: (0,) for g in algebra.gen_names}
    return ModulePresentation(algebra, degree, degree, (name,), (degree,), acts, frozenset(), "F2")


def regular_module(algebra: SubalgebraSpec) -> ModulePresentation:
    names = tuple(str(b).replace(" ", "") for b in algebra.basis)
    acts = {g: tuple(algebra.left_mult[i]) for i, g in enumerate(algebra.gen_names)}
    return ModulePresentation(algebra, 0, algebra.top_degree, names, tuple(algebra.degrees),
                              acts, frozenset(), algebra.label)


# ---------------------------------------------------------------- validation


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    generator: str = ""
    algebra_element: str = ""
    module_element: str = ""
    composite: int = 0
    reduced: int = 0
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return self.detail


def validate(m: ModulePresentation) -> ValidationReport:
    """Check that the generator actions define a module over the algebra.

    With rho built from the generator actions along the algebra's word
    tree, the actions define a module exactly when rho(g) rho(b) equals
    rho(g*b) for every generator g and basis element b.  Comparisons whose
    result would lie above the window are skipped.
    """
    alg = m.algebra
    for g in alg.gen_names:
        gd = m.gen_degree(g)
        for i, d in enumerate(m.degrees):
            tgt = m.actions[g][i]
            for j in iter_bits(tgt):
                if m.degrees[j] != d + gd:
                    return ValidationReport(
                        False, g, g, m.names[i],
                        detail=f"{g} on {m.names[i]} hits {m.names[j]} in the wrong degree")
    table = m.act_table()
    for mi, md in enumerate(m.degrees):
        row = table[mi]
        for gi, g in enumerate(alg.gen_names):
            gd = m.gen_degree(g)
            lm = alg.left_mult[gi]
            for b, bd in enumerate(alg.degrees):
                if md + bd + gd > m.t_max:
                    continue
                lhs = m.apply(g, row[b])
                rhs = 0
                for c in iter_bits(lm[b]):
                    rhs ^= row[c]
                if lhs != rhs:
                    bname = str(alg.basis[b])
                    red = str(alg.element(lm[b]))
                    return ValidationReport(
                        False, g, bname, m.names[mi], lhs, rhs,
                        detail=(f"on {m.names[mi]}: {g}*({bname}) gives {m.vector_str(lhs)} "
                                f"but its reduction {red} gives {m.vector_str(rhs)}"))
    return ValidationReport(True)


# ---------------------------------------------------------------- parsing

_NAME = re.compile(r"^[A-Za-z0-9_]+$")


def parse_cell_diagram(text: str, label: str = "", check: bool = True) -> ModulePresentation:
    algebra = None
    window = None
    basis: list = []
    seen: dict = {}
    edges: list = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0].lower()
        if kw == "algebra":
            if len(parts) != 2:
                raise ModuleSyntaxError(lineno, "expected 'algebra <label>'")
            try:
                algebra = parse_algebra_label(parts[1])
            except ValueError as e:
                raise ModuleSyntaxError(lineno, str(e)) from None
        elif kw == "range":
            if len(parts) != 3:
                raise ModuleSyntaxError(lineno, "expected 'range <t_min> <t_max>'")
            try:
                window = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise ModuleSyntaxError(lineno, "range bounds must be integers") from None
            if window[0] > window[1]:
                raise ModuleSyntaxError(lineno, "empty range")
        elif kw == "gen":
            if len(parts) != 3 or not _NAME.match(parts[1]):
                raise ModuleSyntaxError(lineno, "expected 'gen <name> <degree>'")
            try:
                deg = int(parts[2])
            except ValueError:
                raise ModuleSyntaxError(lineno, "degree must be an integer") from None
            if parts[1] in seen:
                raise ModuleSyntaxError(lineno, f"duplicate generator {parts[1]!r}")
            seen[parts[1]] = deg
            basis.append((parts[1], deg))
        elif re.match(r"^(sq\d+|q\d+)$", kw):
            if len(parts) < 4 or parts[2] != "=":
                raise ModuleSyntaxError(lineno, f"expected '{kw} <name> = <name> [+ <name>]*'")
            rhs = " ".join(parts[3:]).split("+")
            tgts = [t.strip() for t in rhs]
            if any(not _NAME.match(t) for t in tgts) or not _NAME.match(parts[1]):
                raise ModuleSyntaxError(lineno, "malformed sum")
            edges.append((lineno, kw, parts[1], tgts))
        else:
            raise ModuleSyntaxError(lineno, f"unknown keyword {parts[0]!r}")
    if algebra is None:
        raise ModuleSyntaxError(0, "missing 'algebra' header")
    if window is None:
        raise ModuleSyntaxError(0, "missing 'range' line")
    for name, deg in basis:
        if not window[0] <= deg <= window[1]:
            raise DegreeMismatchError(f"generator {name} in degree {deg} outside range {window}")
    actions: dict = {g: {} for g in algebra.gen_names}
    for lineno, op, src, tgts in edges:
        if op not in algebra.gen_names:
            raise ModuleSyntaxError(lineno, f"{op} is not a generator of {algebra.label}")
        k = algebra.gen_elements[algebra.gen_names.index(op)].degree
        for n in [src] + tgts:
            if n not in seen:
                raise UnknownGeneratorError(f"line {lineno}: unknown generator {n!r}")
        for t in tgts:
            if seen[t] != seen[src] + k:
                raise DegreeMismatchError(
                    f"line {lineno}: {op} {src} (degree {seen[src]}) cannot hit {t} (degree {seen[t]})")
        cur = actions[op].setdefault(src, [])
        for t in tgts:
            # mod 2 sums: repeated names cancel
            if t in cur:
                cur.remove(t)
            else:
                cur.append(t)
    m = make_module(algebra, window[0], window[1], basis, actions, label=label)
    esc = _window_escapes(algebra, m.degrees, m.t_max)
    m = ModulePresentation(m.algebra, m.t_min, m.t_max, m.names, m.degrees, m.actions, esc, label)
    if check:
        rep = validate(m)
        if not rep.ok:
            raise ModuleValidationError(rep)
    return m


def to_text(m: ModulePresentation) -> str:
    lines = [f"algebra {m.algebra.label}", f"range {m.t_min} {m.t_max}"]
    safe = all(_NAME.match(n) for n in m.names)
    names = m.names if safe else tuple(f"e{i}" for i in range(len(m.names)))
    for n, d in zip(names, m.degrees):
        lines.append(f"gen {n} {d}")
    for g in m.algebra.gen_names:
        for i, v in enumerate(m.actions[g]):
            if v:
                lines.append(f"{g} {names[i]} = " + " + ".join(names[j] for j in iter_bits(v)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- constructors


def suspend(m: ModulePresentation, r: int) -> ModulePresentation:
    label = m.label if r == 0 else f"S^{r} {m.label}".strip()
    return ModulePresentation(m.algebra, m.t_min + r, m.t_max + r, m.names,
                              tuple(d + r for d in m.degrees), m.actions, m.escaped, label)


def truncate(m: ModulePresentation, t_cap: int) -> ModulePresentation:
    if t_cap > m.t_max:
        raise ValueError("truncation cap above the window")
    keep = [i for i, d in enumerate(m.degrees) if d <= t_cap]
    remap = {old: new for new, old in enumerate(keep)}
    acts = {}
    esc = set()
    for g in m.algebra.gen_names:
        imgs = []
        for old in keep:
            v = m.actions[g][old]
            out = 0
            lost = False
            for j in iter_bits(v):
                if j in remap:
                    out |= 1 << remap[j]
                else:
                    lost = True
            if lost or (g, old) in m.escaped:
                esc.add((g, remap[old]))
            imgs.append(out)
        acts[g] = tuple(imgs)
    t_min = min(m.t_min, t_cap)
    return ModulePresentation(m.algebra, t_min, t_cap, tuple(m.names[i] for i in keep),
                              tuple(m.degrees[i] for i in keep), acts, frozenset(esc), m.label)


def _effective_top(m: ModulePresentation):
    return m.t_max if m.escaped else None


def direct_sum(a: ModulePresentation, b: ModulePresentation) -> ModulePresentation:
    if a.algebra is not b.algebra:
        raise ValueError("modules over different algebras")
    tops = [t for t in (_effective_top(a), _effective_top(b)) if t is not None]
    if tops:
        cap = min(tops)
        if a.t_max > cap:
            a = truncate(a, cap)
        if b.t_max > cap:
            b = truncate(b, cap)
        t_max = cap
    else:
        t_max = max(a.t_max, b.t_max)
    clash = set(a.names) & set(b.names)
    an = a.names if not clash else tuple(f"L_{n}" for n in a.names)
    bn = b.names if not clash else tuple(f"R_{n}" for n in b.names)
    entries = [(d, 0, i) for i, d in enumerate(a.degrees)] + [(d, 1, i) for i, d in enumerate(b.degrees)]
    entries.sort()
    pos = {(s, i): k for k, (_, s, i) in enumerate(entries)}
    names = tuple((an, bn)[s][i] for _, s, i in entries)
    degrees = tuple(d for d, _, _ in entries)
    acts = {}
    for g in a.algebra.gen_names:
        imgs = [0] * len(entries)
        for s, mod in ((0, a), (1, b)):
            for i, v in enumerate(mod.actions[g]):
                out = 0
                for j in iter_bits(v):
                    out |= 1 << pos[(s, j)]
                imgs[pos[(s, i)]] = out
        acts[g] = tuple(imgs)
    esc = frozenset((g, pos[(0, i)]) for g, i in a.escaped) | frozenset((g, pos[(1, i)]) for g, i in b.escaped)
    t_min = min(a.t_min, b.t_min)
    label = f"{a.label} + {b.label}"
    return ModulePresentation(a.algebra, t_min, t_max, names, degrees, acts, esc, label)


def tensor(a: ModulePresentation, b: ModulePresentation) -> ModulePresentation:
    """Tensor product with the diagonal action through the coproduct."""
    if a.algebra is not b.algebra:
        raise ValueError("modules over different algebras")
    alg = a.algebra
    if not a.names or not b.names:
        return zero_module(alg, a.t_min + b.t_min, a.t_max + b.t_max)
    amin, bmin = a.min_degree(), b.min_degree()
    tops = []
    if a.escaped:
        tops.append(a.t_max + bmin)
    if b.escaped:
        tops.append(b.t_max + amin)
    t_max = min(tops) if tops else a.t_max + b.t_max
    pairs = [(da + db, i, j) for i, da in enumerate(a.degrees) for j, db in enumerate(b.degrees)
             if da + db <= t_max]
    pairs.sort()
    pos = {(i, j): k for k, (_, i, j) in enumerate(pairs)}
    names = tuple(f"{a.names[i]}⊗{b.names[j]}" for _, i, j in pairs)
    degrees = tuple(d for d, _, _ in pairs)
    at, bt = a.act_table(), b.act_table()
    acts = {}
    esc = set()
    for gi, g in enumerate(alg.gen_names):
        gd = alg.gen_elements[gi].degree
        split = alg.coproduct_basis(alg.gen_elements[gi])
        imgs = []
        for k, (d, i, j) in enumerate(pairs):
            if d + gd > t_max:
                if tops:
                    esc.add((g, k))
                imgs.append(0)
                continue
            out = 0
            for p, q in split:
                left, right = at[i][p], bt[j][q]
                for x in iter_bits(left):
                    for y in iter_bits(right):
                        out ^= 1 << pos[(x, y)]
            imgs.append(out)
        acts[g] = tuple(imgs)
    label = f"{a.label} x {b.label}"
    return ModulePresentation(alg, a.t_min + b.t_min, t_max, names, degrees, acts, frozenset(esc), label)


def coinduced_quotient(big: SubalgebraSpec, small: SubalgebraSpec) -> ModulePresentation:
    """big // small: the regular module of ``big`` modulo big * I(small)."""
    ideal_gens = []
    for i in small.augmentation_ideal():
        x = small.basis[i]
        if not big.contains(x):
            raise ValueError(f"{small.label} is not contained in {big.label}")
        ideal_gens.append(big.coords(x))
    # span of c * x for c in big, x in the ideal generators, by degree
    span: dict = {}
    for x in ideal_gens:
        prods = [0] * big.dimension
        for a in iter_bits(x):
            col = big.mult_column(a)
            for c in range(big.dimension):
                prods[c] ^= col[c]
        xd = big.degrees[next(iter_bits(x))]
        for c, v in enumerate(prods):
            if v:
                d = big.degrees[c] + xd
                span.setdefault(d, Echelon()).add(v)
    echs = span
    leaders = []
    for i, d in enumerate(big.degrees):
        ech = echs.get(d)
        if ech is None or not (ech.mask >> i) & 1:
            leaders.append(i)
    pos = {i: k for k, i in enumerate(leaders)}
    acts = {}
    for gi, g in enumerate(big.gen_names):
        imgs = []
        for i in leaders:
            v = big.left_mult[gi][i]
            if v:
                d = big.degrees[next(iter_bits(v))]
                if d in echs:
                    v = echs[d].reduce(v)[0]
            out = 0
            for j in iter_bits(v):
                out |= 1 << pos[j]
            imgs.append(out)
        acts[g] = tuple(imgs)
    names = tuple(str(big.basis[i]).replace(" ", "") for i in leaders)
    degrees = tuple(big.degrees[i] for i in leaders)
    top = degrees[-1] if degrees else 0
    return ModulePresentation(big, 0, top, names, degrees, acts, frozenset(),
                              f"{big.label}//{small.label}")


def restrict(m: ModulePresentation, sub: SubalgebraSpec) -> ModulePresentation:
    """The same vector space viewed as a module over a smaller subalgebra."""
    big = m.algebra
    acts = {}
    esc = set()
    for g, x in zip(sub.gen_names, sub.gen_elements):
        coords = big.coords(x)
        imgs = []
        for i, d in enumerate(m.degrees):
            if d + x.degree > m.t_max:
                if m.escaped:
                    esc.add((g, i))
                imgs.append(0)
                continue
            out = 0
            for bidx in iter_bits(coords):
                out ^= m.act(bidx, 1 << i)
            imgs.append(out)
        acts[g] = tuple(imgs)
    return ModulePresentation(sub, m.t_min, m.t_max, m.names, m.degrees, acts, frozenset(esc), m.label)


def indecomposables(m: ModulePresentation) -> dict:
    """Dimension of (M / I*M) in each degree, i.e. minimal generator counts."""
    dec: dict = {}
    for g in m.algebra.gen_names:
        for v in m.actions[g]:
            if v:
                d = m.degrees[next(iter_bits(v))]
                dec.setdefault(d, Echelon()).add(v)
    out = {}
    for d, n in m.degree_dims().items():
        k = n - (len(dec[d]) if d in dec else 0)
        if k:
            out[d] = k
    return out


# ---------------------------------------------------------------- exact sequences


@dataclass(frozen=True)
class ShortExactSequence:
    sub: ModulePresentation
    total: ModulePresentation
    quotient: ModulePresentation
    inclusion: tuple
    projection: tuple

    def check(self) -> tuple:
        """(ok, message) for injectivity, surjectivity, exactness and linearity."""
        sub, tot, quo = self.sub, self.total, self.quotient
        for i, v in enumerate(self.inclusion):
            if any(tot.degrees[j] != sub.degrees[i] for j in iter_bits(v)):
                return False, "inclusion does not preserve degree"
        for i, v in enumerate(self.projection):
            if any(quo.degrees[j] != tot.degrees[i] for j in iter_bits(v)):
                return False, "projection does not preserve degree"
        ech = Echelon()
        for v in self.inclusion:
            if not ech.add(v):
                return False, "inclusion not injective"
        img = Echelon()
        for v in self.projection:
            img.add(v)
        if len(img) != len(quo):
            return False, "projection not surjective"
        comp = [_apply(self.projection, v) for v in self.inclusion]
        if any(comp):
            return False, "composite not zero"
        if len(sub) + len(quo) != len(tot):
            return False, "dimensions do not add up"
        for g in tot.algebra.gen_names:
            for i in range(len(sub)):
                if _apply(self.inclusion, sub.actions[g][i]) != tot.apply(g, self.inclusion[i]):
                    return False, f"inclusion does not commute with {g}"
            for i in range(len(tot)):
                if (g, i) in tot.escaped:
                    continue
                if _apply(self.projection, tot.actions[g][i]) != quo.apply(g, self.projection[i]):
                    return False, f"projection does not commute with {g}"
        return True, "ok"


def _apply(images, v: int) -> int:
    out = 0
    for j in iter_bits(v):
        out ^= images[j]
    return out


def split_off_submodule(total: ModulePresentation, sub_names) -> ShortExactSequence:
    """0 -> S -> M -> M/S -> 0 for S spanned by the named basis elements.

    The named span must be closed under the algebra action.
    """
    sub_idx = sorted(total.index(n) for n in sub_names)
    subset = set(sub_idx)
    mask = 0
    for i in sub_idx:
        mask |= 1 << i
    for g in total.algebra.gen_names:
        for i in sub_idx:
            if total.actions[g][i] & ~mask:
                raise ValueError(f"{g} maps {total.names[i]} out of the proposed submodule")
    rest = [i for i in range(len(total)) if i not in subset]
    spos = {i: k for k, i in enumerate(sub_idx)}
    qpos = {i: k for k, i in enumerate(rest)}
    sacts, qacts = {}, {}
    sesc, qesc = set(), set()
    for g in total.algebra.gen_names:
        sacts[g] = tuple(sum(1 << spos[j] for j in iter_bits(total.actions[g][i])) for i in sub_idx)
        qacts[g] = tuple(sum(1 << qpos[j] for j in iter_bits(total.actions[g][i]) if j in qpos) for i in rest)
        for g2, i in total.escaped:
            if g2 == g:
                (sesc.add((g, spos[i])) if i in spos else qesc.add((g, qpos[i])))
    sub = ModulePresentation(total.algebra, total.t_min, total.t_max, tuple(total.names[i] for i in sub_idx),
                             tuple(total.degrees[i] for i in sub_idx), sacts, frozenset(sesc), "sub")
    quo = ModulePresentation(total.algebra, total.t_min, total.t_max, tuple(total.names[i] for i in rest),
                             tuple(total.degrees[i] for i in rest), qacts, frozenset(qesc), "quotient")
    inc = tuple(1 << i for i in sub_idx)
    proj = tuple((1 << qpos[i]) if i in qpos else 0 for i in range(len(total)))
    return ShortExactSequence(sub, total, quo, inc, proj)


def a1() -> SubalgebraSpec:
    return subalgebra("A", 1)
