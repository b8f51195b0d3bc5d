"""Linear algebra over GF(2).

Vectors are packed into Python ints: bit ``j`` holds coordinate ``j``.
The public types wrap those ints with an explicit length so that
out-of-range access fails instead of reading a silent zero.  The
``*_rows`` helpers work on bare ints and are what the resolution engine
calls in its inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class InconsistentSystemError(ValueError):
    """Raised by :func:`solve` when the right-hand side is not in the column space."""


def _check_fits(bits: int, length: int) -> None:
    if bits < 0:
        raise ValueError("bit pattern must be non-negative")
    if bits >> length:
        raise ValueError(f"bit pattern does not fit in {length} coordinates")


@dataclass(frozen=True)
class F2Vector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        _check_fits(self.bits, self.length)

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "F2Vector":
        bits = 0
        for j, v in enumerate(values):
            if v & 1:
                bits |= 1 << j
        return cls(len(values), bits)

    @classmethod
    def zero(cls, length: int) -> "F2Vector":
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, j: int) -> "F2Vector":
        if not 0 <= j < length:
            raise IndexError(j)
        return cls(length, 1 << j)

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(f"coordinate {j} outside length {self.length}")
        return (self.bits >> j) & 1

    def __len__(self) -> int:
        return self.length

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return F2Vector(self.length, self.bits ^ other.bits)

    __sub__ = __add__

    def dot(self, other: "F2Vector") -> int:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def support(self) -> list[int]:
        return list(iter_bits(self.bits))

    def is_zero(self) -> bool:
        return self.bits == 0

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    def __repr__(self) -> str:
        return "F2Vector(" + "".join(str(b) for b in self.to_list()) + ")"


@dataclass(frozen=True)
class F2Matrix:
    rows: int
    cols: int
    data: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError("row count does not match data")
        for r in self.data:
            _check_fits(r, self.cols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged rows")
            data.append(F2Vector.from_list(row).bits)
        return cls(len(rows), cols, tuple(data))

    @classmethod
    def from_vectors(cls, vectors: Sequence[F2Vector], cols: int | None = None) -> "F2Matrix":
        if cols is None:
            cols = vectors[0].length if vectors else 0
        for v in vectors:
            if v.length != cols:
                raise ValueError("length mismatch")
        return cls(len(vectors), cols, tuple(v.bits for v in vectors))

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    def row(self, i: int) -> F2Vector:
        return F2Vector(self.cols, self.data[i])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not 0 <= j < self.cols:
            raise IndexError(j)
        return (self.data[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [F2Vector(self.cols, r).to_list() for r in self.data]

    def column(self, j: int) -> F2Vector:
        if not 0 <= j < self.cols:
            raise IndexError(j)
        bits = 0
        for i, r in enumerate(self.data):
            if (r >> j) & 1:
                bits |= 1 << i
        return F2Vector(self.rows, bits)

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.cols, self.rows, tuple(self.column(j).bits for j in range(self.cols)))

    def apply(self, x: F2Vector) -> F2Vector:
        """Matrix times column vector."""
        if x.length != self.cols:
            raise ValueError("length mismatch")
        bits = 0
        for i, r in enumerate(self.data):
            if (r & x.bits).bit_count() & 1:
                bits |= 1 << i
        return F2Vector(self.rows, bits)

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.data:
            acc = 0
            for k in iter_bits(r):
                acc ^= other.data[k]
            out.append(acc)
        return F2Matrix(self.rows, other.cols, tuple(out))

    def rank(self) -> int:
        return len(echelon_rows(self.data)[1])


def iter_bits(x: int) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def lowbit(x: int) -> int:
    return (x & -x).bit_length() - 1


def echelon_rows(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Fully reduced echelon form of a list of packed rows.

    Returns ``(reduced, pivots)`` with pivots ascending; the pivot of a row
    is its lowest set bit and no other row has that bit set.
    """
    basis: dict[int, int] = {}
    for r in rows:
        for p, b in basis.items():
            if (r >> p) & 1:
                r ^= b
        if r:
            p = lowbit(r)
            for q in basis:
                if (basis[q] >> p) & 1:
                    basis[q] ^= r
            basis[p] = r
    pivots = sorted(basis)
    return [basis[p] for p in pivots], pivots


class Echelon:
    """Incrementally grown reduced basis of a subspace of GF(2)^n.

    ``add`` reduces a vector against the basis and keeps the remainder if
    it is nonzero.  Optional tags track which combination of inserted
    vectors produced each basis row.
    """

    __slots__ = ("rows", "tags", "mask")

    def __init__(self):
        self.rows: dict[int, int] = {}
        self.tags: dict[int, int] = {}
        self.mask = 0

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        # rows are fully reduced, so one pass over the pivots hit by v suffices
        rows, tags = self.rows, self.tags
        for p in iter_bits(v & self.mask):
            v ^= rows[p]
            tag ^= tags[p]
        return v, tag

    def add(self, v: int, tag: int = 0) -> bool:
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        p = lowbit(v)
        for q, b in self.rows.items():
            if (b >> p) & 1:
                self.rows[q] = b ^ v
                self.tags[q] ^= tag
        self.rows[p] = v
        self.tags[p] = tag
        self.mask |= 1 << p
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def __len__(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)


def kernel_rows(rows: Sequence[int], ncols: int | None = None) -> list[int]:
    """Kernel of the map x -> sum_i x_i rows[i], as packed vectors over the row index.

    Free variables are taken in ascending row order.
    """
    ech = Echelon()
    kern = []
    for i, r in enumerate(rows):
        rem, tag = ech.reduce(r, 1 << i)
        if rem:
            ech.add(rem, tag)
        else:
            kern.append(tag)
    return kern


def rref(m: F2Matrix) -> tuple[F2Matrix, list[int]]:
    reduced, pivots = echelon_rows(m.data)
    data = tuple(reduced) + (0,) * (m.rows - len(reduced))
    return F2Matrix(m.rows, m.cols, data), pivots


def kernel_basis(m: F2Matrix) -> list[F2Vector]:
    """Basis of {x : m x = 0}, one vector per free column in ascending order."""
    reduced, pivots = echelon_rows(m.data)
    pivset = set(pivots)
    out = []
    for f in range(m.cols):
        if f in pivset:
            continue
        bits = 1 << f
        for p, r in zip(pivots, reduced):
            if (r >> f) & 1:
                bits |= 1 << p
        out.append(F2Vector(m.cols, bits))
    return out


def solve(m: F2Matrix, b: F2Vector) -> F2Vector:
    """Particular solution of m x = b with zeros on the free columns."""
    if b.length != m.rows:
        raise ValueError("right-hand side has wrong length")
    # augment each row with its entry of b in column `cols`
    aug = [r | (((b.bits >> i) & 1) << m.cols) for i, r in enumerate(m.data)]
    reduced, pivots = echelon_rows(aug)
    x = 0
    for p, r in zip(pivots, reduced):
        if p == m.cols:
            raise InconsistentSystemError("system is inconsistent")
        if (r >> m.cols) & 1:
            x |= 1 << p
    return F2Vector(m.cols, x)


def rank(m: F2Matrix) -> int:
    return m.rank()
