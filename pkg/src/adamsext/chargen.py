"""Cohomology of BO(n), BSO(n), BU(1) and their Thom spectra as Steenrod modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .fpmodule import ModulePresentation, suspend, tensor, truncate
from .steenrod import SubalgebraSpec, binom2, subalgebra

Poly = frozenset


def _xor(acc: set, items) -> None:
    for t in items:
        if t in acc:
            acc.remove(t)
        else:
            acc.add(t)


@dataclass(eq=False)
class PolyCohomology:
    """Polynomial ring over GF(2) with a Steenrod action given on the variables.

    Monomials are exponent tuples aligned with ``var_names``.  ``sq_var[v][k]``
    holds Sq^k of variable v for 0 <= k <= deg v; the Cartan formula extends
    this to everything.
    """

    var_names: tuple
    var_degrees: tuple
    t_max: int
    sq_var: tuple
    name: str = ""
    _sq_cache: dict = field(default_factory=dict, repr=False)

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    def one(self) -> Poly:
        return frozenset([(0,) * self.nvars])

    def zero(self) -> Poly:
        return frozenset()

    def var(self, name: str) -> Poly:
        i = self.var_names.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return frozenset([tuple(e)])

    def mono_degree(self, m: tuple) -> int:
        return sum(e * d for e, d in zip(m, self.var_degrees))

    def degree(self, p: Poly):
        degs = {self.mono_degree(m) for m in p}
        if len(degs) > 1:
            raise ValueError("inhomogeneous polynomial")
        return degs.pop() if degs else None

    def monomials(self, d: int) -> list:
        """Monomials of degree d in graded lexicographic order (w1^d first)."""
        return list(_monomials(self.var_degrees, d))

    def basis_upto(self, d: int) -> list:
        out = []
        for k in range(d + 1):
            out.extend(self.monomials(k))
        return out

    def mul(self, p: Poly, q: Poly) -> Poly:
        acc: set = set()
        for a in p:
            for b in q:
                _xor(acc, [tuple(x + y for x, y in zip(a, b))])
        return frozenset(acc)

    def add(self, *ps: Poly) -> Poly:
        acc: set = set()
        for p in ps:
            _xor(acc, p)
        return frozenset(acc)

    def power(self, p: Poly, e: int) -> Poly:
        out = self.one()
        for _ in range(e):
            out = self.mul(out, p)
        return out

    def parse(self, text: str) -> Poly:
        """Parse sums of products like 'w1^2w2 + w3' or '1'."""
        acc: set = set()
        for term in text.replace(" ", "").split("+"):
            if term in ("", "0"):
                continue
            e = [0] * self.nvars
            if term != "1":
                rest = term
                while rest:
                    for i, n in sorted(enumerate(self.var_names), key=lambda x: -len(x[1])):
                        if rest.startswith(n):
                            rest = rest[len(n):]
                            k = 1
                            if rest.startswith("^"):
                                j = 1
                                while j < len(rest) and rest[j].isdigit():
                                    j += 1
                                k = int(rest[1:j])
                                rest = rest[j:]
                            e[i] += k
                            break
                    else:
                        raise ValueError(f"cannot parse {term!r}")
            _xor(acc, [tuple(e)])
        return frozenset(acc)

    def mono_str(self, m: tuple) -> str:
        parts = []
        for n, e in zip(self.var_names, m):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "".join(parts) or "1"

    def to_str(self, p: Poly) -> str:
        if not p:
            return "0"
        order = sorted(p, key=lambda m: (self.mono_degree(m), tuple(-x for x in m)))
        return " + ".join(self.mono_str(m) for m in order)

    def _total_sq_mono(self, m: tuple) -> tuple:
        """(Sq^0 m, Sq^1 m, ..., Sq^deg m) for a monomial."""
        hit = self._sq_cache.get(m)
        if hit is not None:
            return hit
        d = self.mono_degree(m)
        if d == 0:
            out = (self.one(),)
        else:
            i = next(k for k, e in enumerate(m) if e)
            rest = list(m)
            rest[i] -= 1
            rest = tuple(rest)
            left = self.sq_var[i]
            right = self._total_sq_mono(rest)
            graded = [set() for _ in range(d + 1)]
            for a, pa in enumerate(left):
                for b, pb in enumerate(right):
                    if pa and pb:
                        _xor(graded[a + b], self.mul(pa, pb))
            out = tuple(frozenset(g) for g in graded)
        self._sq_cache[m] = out
        return out

    def sq(self, k: int, p: Poly) -> Poly:
        acc: set = set()
        for m in p:
            tot = self._total_sq_mono(m)
            if k < len(tot):
                _xor(acc, tot[k])
        return frozenset(acc)


@lru_cache(maxsize=None)
def _monomials(var_degrees: tuple, d: int) -> tuple:
    if not var_degrees:
        return ((),) if d == 0 else ()
    out = []
    first = var_degrees[0]
    for e in range(d // first, -1, -1):
        for rest in _monomials(var_degrees[1:], d - e * first):
            out.append((e,) + rest)
    return tuple(out)


def _wu_terms(i: int, j: int, n: int) -> list:
    """Sq^i(w_j) in BO(n) as a list of index pairs (a, b) meaning w_a w_b (w_0 = 1)."""
    if i > j:
        return []
    if i == 0:
        return [(0, j)]
    out = []
    for k in range(i + 1):
        a, b = i - k, j + k
        if b > n:
            continue
        if binom2(j - i + k - 1, k):
            out.append((a, b))
    return out


def _index_poly(pairs, nvars: int, index_of) -> Poly:
    acc: set = set()
    for a, b in pairs:
        e = [0] * nvars
        ok = True
        for w in (a, b):
            if w == 0:
                continue
            pos = index_of(w)
            if pos is None:
                ok = False
                break
            e[pos] += 1
        if ok:
            _xor(acc, [tuple(e)])
    return frozenset(acc)


def _stiefel_whitney_ring(n: int, t_max: int, oriented: bool, name: str) -> PolyCohomology:
    idx = [j for j in range(1, n + 1) if not (oriented and j == 1)]
    names = tuple(f"w{j}" for j in idx)
    pos = {j: k for k, j in enumerate(idx)}
    sq_var = []
    for j in idx:
        sq_var.append(tuple(_index_poly(_wu_terms(i, j, n), len(idx), pos.get) for i in range(j + 1)))
    return PolyCohomology(names, tuple(idx), t_max, tuple(sq_var), name)


def bo_cohomology(n: int, t_max: int = 24) -> PolyCohomology:
    if n < 1:
        raise ValueError("n must be positive")
    return _stiefel_whitney_ring(n, t_max, False, f"BO{n}")


def bso_cohomology(n: int, t_max: int = 24) -> PolyCohomology:
    """BO(n) data with w1 set to zero."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return _stiefel_whitney_ring(n, t_max, True, f"BSO{n}")


def bu1_cohomology(t_max: int = 24) -> PolyCohomology:
    """Z/2[w2] with Sq1 w2 = 0, Sq2 w2 = w2^2."""
    r = _stiefel_whitney_ring(2, t_max, True, "BU1")
    return r


def wu_sq(i: int, j: int, n: int) -> Poly:
    """Sq^i(w_j) in H*(BO(n)) from the Wu formula, as a polynomial over w1..wn."""
    if not 1 <= j <= n or i < 0:
        raise ValueError("need 1 <= j <= n and i >= 0")
    return _index_poly(_wu_terms(i, j, n), n, lambda w: w - 1)


# ---------------------------------------------------------------- Stiefel-Whitney data


@dataclass(frozen=True)
class SWData:
    ring: PolyCohomology = field(compare=False)
    dimension: int
    classes: tuple  # classes[i] = wbar_i, a homogeneous polynomial of degree i

    def __post_init__(self):
        if not self.classes or self.classes[0] != self.ring.one():
            raise ValueError("wbar_0 must be 1")
        for i, p in enumerate(self.classes):
            if p and self.ring.degree(p) != i:
                raise ValueError(f"wbar_{i} has the wrong degree")

    def w(self, i: int) -> Poly:
        return self.classes[i] if i < len(self.classes) else self.ring.zero()

    def total(self, t_max: int) -> list:
        return [self.w(i) for i in range(t_max + 1)]


def tautological_sw(ring: PolyCohomology, dimension: int | None = None) -> SWData:
    """Total class 1 + w1 + w2 + ... of the universal bundle."""
    top = max(ring.var_degrees) if ring.var_degrees else 0
    classes = [ring.one()]
    for i in range(1, top + 1):
        name = f"w{i}"
        classes.append(ring.var(name) if name in ring.var_names else ring.zero())
    dim = top if dimension is None else dimension
    return SWData(ring, dim, tuple(classes))


def invert_total_class(sw: SWData, t_max: int) -> SWData:
    """The class of the negated (virtual) bundle: power-series inverse of w."""
    ring = sw.ring
    inv = [ring.one()]
    for d in range(1, t_max + 1):
        acc: set = set()
        for i in range(1, d + 1):
            wi = sw.w(i)
            if wi:
                _xor(acc, ring.mul(wi, inv[d - i]))
        inv.append(frozenset(acc))
    while len(inv) > 1 and not inv[-1]:
        inv.pop()
    return SWData(ring, -sw.dimension, tuple(inv))


def series_product(sw1: SWData, sw2: SWData, t_max: int) -> list:
    ring = sw1.ring
    out = []
    for d in range(t_max + 1):
        acc: set = set()
        for i in range(d + 1):
            _xor(acc, ring.mul(sw1.w(i), sw2.w(d - i)))
        out.append(frozenset(acc))
    return out


# ---------------------------------------------------------------- Thom modules


@dataclass(eq=False)
class ThomModule:
    base: PolyCohomology
    sw: SWData
    shift: int
    t_max: int
    algebra: SubalgebraSpec
    basis: list  # monomials of the base, ascending degree
    module: ModulePresentation
    name: str = ""

    def sq_thom(self, k: int, x: Poly) -> Poly:
        """Th^{-1} Sq^k(x U) = sum_{i+j=k} Sq^i(x) wbar_j."""
        return _sq_thom(self.base, self.sw, k, x)

    def element_name(self, m: tuple) -> str:
        s = self.base.mono_str(m)
        return "U" if s == "1" else f"{s}U"


def _sq_thom(base, sw, k, x) -> Poly:
    acc: set = set()
    for i in range(k + 1):
        wj = sw.w(k - i)
        if not wj:
            continue
        si = base.sq(i, x)
        if si:
            _xor(acc, base.mul(si, wj))
    return frozenset(acc)


def thom_module(base: PolyCohomology, sw: SWData, n: int | None = None, t_max: int | None = None,
                algebra: SubalgebraSpec | None = None, t_min: int | None = None, name: str = "") -> ThomModule:
    """H*(Thom spectrum) = H*(base) . U with U in degree n, exported over ``algebra``."""
    if algebra is None:
        algebra = subalgebra("A", 1)
    if algebra.kind != "A":
        raise ValueError("Thom modules are exported over A(n); restrict afterwards for E(n)")
    n = sw.dimension if n is None else n
    t_max = base.t_max + n if t_max is None else t_max
    top = t_max - n
    if top < 0:
        raise ValueError("window overflow: the window ends below the Thom class")
    monos = base.basis_upto(top)
    names = []
    for m in monos:
        s = base.mono_str(m)
        names.append("U" if s == "1" else f"{s}U")
    pos = {m: k for k, m in enumerate(monos)}
    acts = {}
    esc = set()
    for g, x in zip(algebra.gen_names, algebra.gen_elements):
        k = x.degree
        imgs = []
        for i, m in enumerate(monos):
            img = _sq_thom(base, sw, k, frozenset([m]))
            v = 0
            if img:
                if base.mono_degree(m) + k > top:
                    esc.add((g, i))
                else:
                    for mm in img:
                        v |= 1 << pos[mm]
            imgs.append(v)
        acts[g] = tuple(imgs)
    degrees = tuple(base.mono_degree(m) + n for m in monos)
    lo = n if t_min is None else t_min
    label = name or f"Thom({base.name})"
    mod = ModulePresentation(algebra, lo, t_max, tuple(names), degrees, acts, frozenset(esc), label)
    return ThomModule(base, sw, n, t_max, algebra, monos, mod, label)


def smash(a, b) -> ModulePresentation:
    """Module of a smash product of Thom spectra (Kunneth)."""
    ma = a.module if isinstance(a, ThomModule) else a
    mb = b.module if isinstance(b, ThomModule) else b
    return tensor(ma, mb)


# ---------------------------------------------------------------- named spectra


def mo(n: int, t_max: int, algebra=None) -> ThomModule:
    base = bo_cohomology(n, t_max - n + 8)
    return thom_module(base, tautological_sw(base, n), n, t_max, algebra, name=f"MO{n}")


def mto(n: int, t_max: int, algebra=None) -> ThomModule:
    base = bo_cohomology(n, t_max + n + 8)
    sw = invert_total_class(tautological_sw(base, n), t_max + n + 8)
    return thom_module(base, sw, -n, t_max, algebra, name=f"MTO{n}")


def mso(n: int, t_max: int, algebra=None) -> ThomModule:
    base = bso_cohomology(n, t_max - n + 8)
    return thom_module(base, tautological_sw(base, n), n, t_max, algebra, name=f"MSO{n}")


def mu1(t_max: int, algebra=None) -> ThomModule:
    base = bu1_cohomology(t_max - 2 + 8)
    return thom_module(base, tautological_sw(base, 2), 2, t_max, algebra, name="MU1")


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    s: str
    group: str
    spectrum: str


CATALOG = (
    CatalogEntry("mspin", "0", "MSpin", "S^0"),
    CatalogEntry("pin-", "+1", "MTPin-", "S^-1 MO1"),
    CatalogEntry("pin+", "-1", "MTPin+", "S^1 MTO1"),
    CatalogEntry("pinc~-", "+2", "MTPinc~-", "S^-2 MO2"),
    CatalogEntry("pinc~+", "-2", "MTPinc~+", "S^2 MTO2"),
    CatalogEntry("g+", "+3", "MTG+", "S^-3 MO3"),
    CatalogEntry("g-", "-3", "MTG-", "S^3 MTO3"),
    CatalogEntry("g0", "+4", "MTG0", "S^-3 MSO3"),
    CatalogEntry("spinc", "c0", "MTSpinc", "S^-2 MU1"),
    CatalogEntry("pinc", "c1", "MTPinc", "S^-3 MU1 ^ MO1"),
)

CATALOG_LABELS = tuple(e.label for e in CATALOG)

_ALIASES = {e.s: e.label for e in CATALOG}
_ALIASES.update({"1": "pin-", "2": "pinc~-", "3": "g+", "4": "g0", "+0": "mspin"})


def catalog_entry(label: str) -> CatalogEntry:
    key = label.strip().lower()
    key = _ALIASES.get(key, key)
    for e in CATALOG:
        if e.label == key:
            return e
    raise KeyError(f"unknown catalog label {label!r}")


def catalog(label: str, window: tuple = (-1, 12), algebra: SubalgebraSpec | None = None) -> ModulePresentation:
    """The A(1)-module of X(H) for a symmetry label, bottom class in degree 0."""
    entry = catalog_entry(label)
    lo, hi = window
    alg = algebra or subalgebra("A", 1)
    key = entry.label
    if key == "mspin":
        from .fpmodule import trivial_module
        m = trivial_module(alg, 0, "U")
        m = ModulePresentation(alg, lo, hi, m.names, m.degrees, m.actions, frozenset(), "")
    elif key == "pin-":
        m = suspend(mo(1, hi + 1, alg).module, -1)
    elif key == "pin+":
        m = suspend(mto(1, hi - 1, alg).module, 1)
    elif key == "pinc~-":
        m = suspend(mo(2, hi + 2, alg).module, -2)
    elif key == "pinc~+":
        m = suspend(mto(2, hi - 2, alg).module, 2)
    elif key == "g+":
        m = suspend(mo(3, hi + 3, alg).module, -3)
    elif key == "g-":
        m = suspend(mto(3, hi - 3, alg).module, 3)
    elif key == "g0":
        m = suspend(mso(3, hi + 3, alg).module, -3)
    elif key == "spinc":
        m = suspend(mu1(hi + 2, alg).module, -2)
    else:
        # MU1 ^ MO1 up to degree hi + 3 needs MU1 to hi + 2 and MO1 to hi + 1
        m = smash(mu1(hi + 2, alg), mo(1, hi + 1, alg))
        m = suspend(truncate(m, hi + 3), -3)
    m = ModulePresentation(m.algebra, min(lo, m.t_min), m.t_max, m.names, m.degrees, m.actions,
                           m.escaped, entry.spectrum)
    return m
