"""The mod 2 Steenrod algebra in bounded degree.

Monomials are tuples of positive ints, ``(i1, ..., ik)`` meaning
Sq^i1 ... Sq^ik; the empty tuple is the unit.  Elements are frozensets of
admissible monomials of a common degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable

from .f2la import Echelon, iter_bits

DEFAULT_TMAX = 64

Monomial = tuple


class DegreeCapError(ValueError):
    """A computation would exceed the configured degree cap."""


def binom2(n: int, k: int) -> int:
    """Binomial coefficient mod 2 (Lucas), extended to negative n."""
    if k < 0:
        return 0
    if n < 0:
        # binom(n, k) = (-1)^k binom(k - n - 1, k)
        n = k - n - 1
    return 1 if (n & k) == k else 0


def is_admissible(word: Iterable[int]) -> bool:
    w = tuple(word)
    return all(w[j] >= 2 * w[j + 1] for j in range(len(w) - 1))


def _check_cap(deg: int, t_max: int) -> None:
    if deg > t_max:
        raise DegreeCapError(f"degree {deg} exceeds cap {t_max}")


def adem(a: int, b: int) -> list[Monomial]:
    """Admissible expansion of Sq^a Sq^b for 0 < a < 2b."""
    out = []
    for c in range(a // 2 + 1):
        if binom2(b - c - 1, a - 2 * c):
            out.append((a + b - c, c) if c else (a + b,))
    return out


def _xor_into(acc: set, terms: Iterable) -> None:
    for t in terms:
        if t in acc:
            acc.remove(t)
        else:
            acc.add(t)


@lru_cache(maxsize=None)
def _reduce_left(word: Monomial) -> frozenset:
    for j in range(len(word) - 1):
        a, b = word[j], word[j + 1]
        if a < 2 * b:
            acc: set = set()
            for t in adem(a, b):
                _xor_into(acc, _reduce_left(word[:j] + t + word[j + 2:]))
            return frozenset(acc)
    return frozenset([word])


@lru_cache(maxsize=None)
def _reduce_right(word: Monomial) -> frozenset:
    for j in range(len(word) - 2, -1, -1):
        a, b = word[j], word[j + 1]
        if a < 2 * b:
            acc: set = set()
            for t in adem(a, b):
                _xor_into(acc, _reduce_right(word[:j] + t + word[j + 2:]))
            return frozenset(acc)
    return frozenset([word])


def adem_reduce(word, strategy: str = "leftmost", t_max: int = DEFAULT_TMAX) -> "SteenrodElement":
    """Admissible expansion of the composite Sq^w1 ... Sq^wk."""
    w = tuple(int(i) for i in word)
    if any(i < 0 for i in w):
        raise ValueError("negative exponent")
    w = tuple(i for i in w if i)
    deg = sum(w)
    _check_cap(deg, t_max)
    if strategy == "leftmost":
        terms = _reduce_left(w)
    elif strategy == "rightmost":
        terms = _reduce_right(w)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return SteenrodElement(deg, terms)


def mono_str(m: Monomial) -> str:
    return "".join(f"Sq{i}" for i in m) if m else "1"


@dataclass(frozen=True)
class SteenrodElement:
    degree: int
    terms: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "terms", frozenset(self.terms))
        for t in self.terms:
            if sum(t) != self.degree:
                raise ValueError(f"term {t} not of degree {self.degree}")
            if not is_admissible(t):
                raise ValueError(f"term {t} not admissible")

    @classmethod
    def one(cls) -> "SteenrodElement":
        return cls(0, frozenset([()]))

    @classmethod
    def zero(cls, degree: int = 0) -> "SteenrodElement":
        return cls(degree, frozenset())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add elements of different degree")
        return SteenrodElement(self.degree, self.terms ^ other.terms)

    def __mul__(self, other: "SteenrodElement") -> "SteenrodElement":
        return multiply(self, other)

    def sorted_terms(self) -> list:
        return sorted(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(mono_str(t) for t in sorted(self.terms, reverse=True))

    def __repr__(self) -> str:
        return f"SteenrodElement({self})"


def Sq(k: int) -> SteenrodElement:
    if k < 0:
        raise ValueError("negative square")
    return SteenrodElement(k, frozenset([(k,) if k else ()]))


def multiply(x: SteenrodElement, y: SteenrodElement, t_max: int = DEFAULT_TMAX) -> SteenrodElement:
    deg = x.degree + y.degree
    if x.is_zero() or y.is_zero():
        return SteenrodElement.zero(deg)
    _check_cap(deg, t_max)
    acc: set = set()
    for a in x.terms:
        for b in y.terms:
            _xor_into(acc, _reduce_left(a + b))
    return SteenrodElement(deg, frozenset(acc))


@lru_cache(maxsize=None)
def _coproduct_word(word: Monomial) -> frozenset:
    # multiplicative extension of psi(Sq^k) = sum Sq^i x Sq^(k-i)
    acc = {((), ())}
    for k in word:
        nxt: set = set()
        for left, right in acc:
            for i in range(k + 1):
                lw = left + ((i,) if i else ())
                rw = right + ((k - i,) if k - i else ())
                for lt in _reduce_left(lw):
                    for rt in _reduce_left(rw):
                        _xor_into(nxt, [(lt, rt)])
        acc = nxt
    return frozenset(acc)


def coproduct(x: SteenrodElement) -> frozenset:
    """psi(x) as a frozenset of (left, right) admissible monomial pairs."""
    acc: set = set()
    for t in x.terms:
        _xor_into(acc, _coproduct_word(t))
    return frozenset(acc)


def tensor_degree_split(pairs: Iterable) -> dict:
    """Group coproduct pairs by (left degree, right degree)."""
    out: dict = {}
    for l, r in pairs:
        out.setdefault((sum(l), sum(r)), set()).add((l, r))
    return out


@lru_cache(maxsize=None)
def _antipode(k: int) -> frozenset:
    if k == 0:
        return frozenset([()])
    acc: set = set()
    for i in range(1, k + 1):
        for t in _antipode(k - i):
            _xor_into(acc, _reduce_left((i,) + t))
    return frozenset(acc)


def antipode(k: int, t_max: int = DEFAULT_TMAX) -> SteenrodElement:
    """chi(Sq^k) via sum_i Sq^i chi(Sq^(k-i)) = 0."""
    if k < 0:
        raise ValueError("negative degree")
    _check_cap(k, t_max)
    return SteenrodElement(k, _antipode(k))


def milnor_q(i: int) -> SteenrodElement:
    if not 0 <= i <= 3:
        raise ValueError("Q_i is only provided for 0 <= i <= 3")
    q = Sq(1)
    for j in range(1, i + 1):
        s = Sq(1 << j)
        q = multiply(s, q) + multiply(q, s)
    return q


@lru_cache(maxsize=None)
def admissible_monomials(deg: int, max_first: int | None = None) -> tuple:
    """All admissible monomials of a degree, sorted lexicographically."""
    if deg == 0:
        return ((),)
    out = []
    top = deg if max_first is None else min(deg, max_first)
    for first in range(1, top + 1):
        for rest in admissible_monomials(deg - first, first // 2):
            out.append((first,) + rest)
    return tuple(sorted(out))


# ---------------------------------------------------------------- subalgebras


@dataclass
class SubalgebraSpec:
    """A finite sub-Hopf algebra A(n) or E(n) with an explicit basis.

    ``basis`` is ordered by degree, and within a degree it is the reduced
    echelon basis of the span with respect to lexicographically ordered
    admissible monomials.  ``words`` is an auxiliary spanning tree: each
    word element is a generator times an earlier word element, which makes
    the action of the whole algebra on a module computable from generator
    actions alone.
    """

    kind: str
    n: int
    gen_names: tuple
    gen_elements: tuple
    basis: list
    degrees: list
    # per degree: admissible monomial list and column lookup
    columns: dict
    # word tree: (gen index or -1, parent word index), degree
    words: list
    word_degrees: list
    # canonical basis index -> bitmask over word indices
    word_expansion: list
    # generator index -> tuple of bitmasks (image of each basis element)
    left_mult: list
    by_degree: dict
    _mult: dict = field(default_factory=dict, repr=False)

    @property
    def label(self) -> str:
        return f"{self.kind}({self.n})"

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def top_degree(self) -> int:
        return self.degrees[-1]

    @property
    def gen_degrees(self) -> tuple:
        return tuple(g.degree for g in self.gen_elements)

    def degree_dims(self) -> list:
        return [len(self.by_degree.get(d, ())) for d in range(self.top_degree + 1)]

    def augmentation_ideal(self) -> list:
        return [i for i, d in enumerate(self.degrees) if d > 0]

    def coords(self, x: SteenrodElement) -> int:
        """Bitmask over the global basis for an element of the subalgebra."""
        if x.is_zero():
            return 0
        cols = self.columns.get(x.degree)
        if cols is None:
            raise ValueError(f"{x} is not in {self.label}")
        lookup, _ = cols
        v = 0
        for t in x.terms:
            v |= 1 << lookup[t]
        out = 0
        ech = self._echelon(x.degree)
        for p in iter_bits(v & ech.mask):
            out ^= ech.tags[p]
            v ^= ech.rows[p]
        if v:
            raise ValueError(f"{x} is not in {self.label}")
        return out

    def _echelon(self, d: int) -> Echelon:
        cache = self.__dict__.setdefault("_ech_cache", {})
        if d not in cache:
            ech = Echelon()
            lookup, _ = self.columns[d]
            for i in self.by_degree.get(d, ()):
                v = 0
                for t in self.basis[i].terms:
                    v |= 1 << lookup[t]
                ech.add(v, 1 << i)
            cache[d] = ech
        return cache[d]

    def contains(self, x: SteenrodElement) -> bool:
        try:
            self.coords(x)
            return True
        except ValueError:
            return False

    def element(self, mask: int) -> SteenrodElement:
        acc = None
        for i in iter_bits(mask):
            acc = self.basis[i] if acc is None else acc + self.basis[i]
        return acc if acc is not None else SteenrodElement.zero()

    def mult_column(self, a: int) -> tuple:
        """Images b * basis[a] for every basis index b, as bitmasks."""
        col = self._mult.get(a)
        if col is None:
            col = act_all(self, lambda g, v: _apply_masks(self.left_mult[g], v), 1 << a)
            self._mult[a] = col
        return col

    def product(self, b: int, a: int) -> int:
        return self.mult_column(a)[b]

    def multiplication_table(self) -> list:
        n = len(self.basis)
        cols = [self.mult_column(a) for a in range(n)]
        return [[cols[a][b] for a in range(n)] for b in range(n)]

    def pivot_monomial(self, i: int) -> Monomial:
        # lowest lex term: the echelon pivot of basis element i
        return min(self.basis[i].terms)

    def coproduct_basis(self, x: SteenrodElement) -> tuple:
        """psi(x) written as pairs (i, j) of basis indices, meaning sum b_i (x) b_j."""
        cache = self.__dict__.setdefault("_cop_cache", {})
        if x in cache:
            return cache[x]
        pairs = coproduct(x)
        out = []
        piv = {}
        for i in range(len(self.basis)):
            piv[self.pivot_monomial(i)] = i
        for l, r in pairs:
            if l in piv and r in piv:
                out.append((piv[l], piv[r]))
        # the pivot read-off is only valid if psi(x) lies in B (x) B
        check: set = set()
        for i, j in out:
            for l in self.basis[i].terms:
                for r in self.basis[j].terms:
                    _xor_into(check, [(l, r)])
        if frozenset(check) != pairs:
            raise ValueError(f"coproduct of {x} does not lie in {self.label} (x) {self.label}")
        cache[x] = tuple(sorted(out))
        return cache[x]

    def square_functional(self, k: int) -> int:
        """Coefficient functional for the monomial Sq^k, as a basis bitmask."""
        out = 0
        for i in self.by_degree.get(k, ()):
            if (k,) in self.basis[i].terms:
                out |= 1 << i
        return out


def _apply_masks(images, v: int) -> int:
    out = 0
    for j in iter_bits(v):
        out ^= images[j]
    return out


def act_all(alg: SubalgebraSpec, apply_gen, v):
    """Images of v under every basis element of ``alg``.

    ``apply_gen(g, w)`` applies generator ``g`` to a vector ``w``.  The
    result is a tuple indexed by canonical basis index.
    """
    word_imgs = [None] * len(alg.words)
    for k, (g, parent) in enumerate(alg.words):
        word_imgs[k] = v if g < 0 else apply_gen(g, word_imgs[parent])
    out = []
    for exp in alg.word_expansion:
        acc = 0
        for k in iter_bits(exp):
            acc ^= word_imgs[k]
        out.append(acc)
    return tuple(out)


# A(3) reaches degree 72, above the default cap used for user-facing calls
_BUILD_CAP = 128


def _build(kind: str, n: int, gens: list, names: list) -> SubalgebraSpec:
    gdeg = [g.degree for g in gens]
    columns: dict = {}

    def cols(d):
        if d not in columns:
            monos = admissible_monomials(d)
            columns[d] = ({m: j for j, m in enumerate(monos)}, monos)
        return columns[d]

    def vec(x: SteenrodElement) -> int:
        lookup, _ = cols(x.degree)
        v = 0
        for t in x.terms:
            v |= 1 << lookup[t]
        return v

    # word tree by degree; each degree spanned by g * (words of lower degree)
    words = [(-1, -1)]
    word_deg = [0]
    word_elem = [SteenrodElement.one()]
    per_degree_words = {0: [0]}
    ech_by_deg = {}
    d = 1
    empty_run = 0
    while empty_run <= max(gdeg):
        ech = Echelon()
        found = []
        for gi, g in enumerate(gens):
            for parent in per_degree_words.get(d - gdeg[gi], []):
                prod = multiply(g, word_elem[parent], t_max=_BUILD_CAP)
                if prod.is_zero():
                    continue
                if ech.add(vec(prod), 1 << len(found)):
                    found.append(len(words))
                    words.append((gi, parent))
                    word_deg.append(d)
                    word_elem.append(prod)
        if found:
            per_degree_words[d] = found
            ech_by_deg[d] = (ech, found)
            empty_run = 0
        else:
            empty_run += 1
        d += 1

    # canonical basis: reduced echelon rows of each degree, lex column order
    basis = [SteenrodElement.one()]
    degrees = [0]
    word_expansion = [1]
    by_degree = {0: [0]}
    for d in sorted(ech_by_deg):
        ech, found = ech_by_deg[d]
        _, monos = cols(d)
        by_degree[d] = []
        for p in sorted(ech.rows):
            row, tag = ech.rows[p], ech.tags[p]
            terms = frozenset(monos[j] for j in iter_bits(row))
            wexp = 0
            for k in iter_bits(tag):
                wexp |= 1 << found[k]
            by_degree[d].append(len(basis))
            basis.append(SteenrodElement(d, terms))
            degrees.append(d)
            word_expansion.append(wexp)

    cols(0)
    spec = SubalgebraSpec(
        kind=kind, n=n, gen_names=tuple(names), gen_elements=tuple(gens),
        basis=basis, degrees=degrees, columns=columns, words=words,
        word_degrees=word_deg, word_expansion=word_expansion, left_mult=[],
        by_degree=by_degree,
    )
    for g in gens:
        imgs = []
        for b in basis:
            prod = multiply(g, b, t_max=_BUILD_CAP)
            imgs.append(spec.coords(prod) if not prod.is_zero() and prod.degree in by_degree else 0)
        spec.left_mult.append(tuple(imgs))
    return spec


@lru_cache(maxsize=None)
def subalgebra(kind: str, n: int) -> SubalgebraSpec:
    """A(n) for 0 <= n <= 3 or E(n) for 0 <= n <= 2."""
    kind = kind.upper()
    if kind == "A" and 0 <= n <= 3:
        gens = [Sq(1 << i) for i in range(n + 1)]
        names = [f"sq{1 << i}" for i in range(n + 1)]
    elif kind == "E" and 0 <= n <= 2:
        gens = [milnor_q(i) for i in range(n + 1)]
        names = [f"q{i}" for i in range(n + 1)]
    else:
        raise ValueError(f"unsupported subalgebra {kind}({n})")
    return _build(kind, n, gens, names)


def parse_algebra_label(label: str) -> SubalgebraSpec:
    s = label.strip().replace(" ", "")
    if len(s) >= 4 and s[1] == "(" and s[-1] == ")" and s[2:-1].isdigit():
        return subalgebra(s[0], int(s[2:-1]))
    raise ValueError(f"bad algebra label {label!r}")


def multisets(values: Iterable[int], size: int):
    return combinations_with_replacement(sorted(values), size)
