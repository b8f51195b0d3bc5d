"""Hand-typed modules and charts from the cell diagrams and Adams charts.

Infinite modules (the M-infinity family and its extensions) are typed
as their periodic pattern and cut off at ``TOP``; the cut is recorded
as a window escape, so charts are trusted only below it.
"""

from adamsext.fpmodule import make_module, parse_cell_diagram, suspend
from adamsext.steenrod import subalgebra

A1 = subalgebra("A", 1)
TOP = 24


def _mod(label, basis, sq1=(), sq2=(), top=None):
    names = {n for n, _ in basis}
    acts = {"sq1": {}, "sq2": {}}
    for g, edges in (("sq1", sq1), ("sq2", sq2)):
        for a, b in edges:
            if a in names and b in names:
                acts[g].setdefault(a, []).append(b)
    return make_module(A1, min(d for _, d in basis), TOP if top is None else top, basis, acts,
                       escaped=_escapes(basis, top), label=label)


def _escapes(basis, top):
    if top is not None:
        return ()
    out = []
    for name, d in basis:
        for g, k in (("sq1", 1), ("sq2", 2)):
            if d + k > TOP:
                out.append((g, name))
    return out


def m_infinity_edges(prefix="m", shift=0, top=TOP):
    """Basis and edges of the periodic module M_infinity (classes 0, 2, 3, 4, ...)."""
    degs = [0] + list(range(2, top - shift + 1))
    basis = [(f"{prefix}{d}", d + shift) for d in degs]
    n = lambda d: f"{prefix}{d}"
    sq1 = [(n(2), n(3))]
    sq2 = [(n(0), n(2)), (n(3), n(5))]
    for j in range(1, top // 4 + 2):
        sq1 += [(n(4 * j), n(4 * j + 1)), (n(4 * j + 2), n(4 * j + 3))]
        sq2 += [(n(4 * j), n(4 * j + 2)), (n(4 * j + 3), n(4 * j + 5))]
    return basis, sq1, sq2


def m_n(n):
    """M_n: the first n+1 blocks of M_infinity, a finite module."""
    top = 4 * n + 5
    basis, sq1, sq2 = m_infinity_edges(top=top)
    basis = [b for b in basis if b[1] <= top and b[1] != 4 * n + 4]
    keep = {b[0] for b in basis}
    sq1 = [e for e in sq1 if e[0] in keep and e[1] in keep]
    sq2 = [e for e in sq2 if e[0] in keep and e[1] in keep]
    return _mod(f"M{n}", basis, sq1, sq2, top=top)


def m_infinity():
    return _mod("Minf", *m_infinity_edges())


def r0():
    basis, sq1, sq2 = m_infinity_edges()
    return _mod("R0", basis + [("x1", 1)], sq1 + [("m0", "x1")], sq2)


def r1():
    basis, sq1, sq2 = m_infinity_edges(shift=1)
    extra = [("e0", 0), ("e2", 2)]
    return _mod("R1", extra + basis, sq1 + [("m0", "e2")], sq2 + [("e0", "e2")])


def r3():
    basis, sq1, sq2 = m_infinity_edges()
    extra = [("x1", 1), ("y3", 3), ("y4", 4)]
    return _mod("R3", basis + extra,
                sq1 + [("m0", "x1"), ("y3", "y4")],
                sq2 + [("x1", "y3"), ("m2", "y4")])


def r5():
    basis, sq1, sq2 = m_infinity_edges(shift=1)
    joker = [("d0", 0), ("d1", 1), ("c2", 2), ("d3", 3), ("d4", 4)]
    return _mod("R5", joker + basis,
                sq1 + [("d0", "d1"), ("d3", "d4"), ("m0", "c2")],
                sq2 + [("d0", "c2"), ("d1", "d3"), ("c2", "d4")])


def r6():
    basis, sq1, sq2 = m_infinity_edges()
    b_basis, b1, b2 = m_infinity_edges(prefix="b", shift=2)
    # S R1 sits on a1, y3 and the double suspension of M_infinity
    return _mod("R6", basis + [("a1", 1), ("y3", 3)] + b_basis,
                sq1 + b1 + [("m0", "a1"), ("b0", "y3")],
                sq2 + b2 + [("a1", "y3")])


def joker():
    return parse_cell_diagram(
        "algebra A(1)\nrange 0 12\n"
        "gen x0 0\ngen x1 1\ngen x2 2\ngen x3 3\ngen x4 4\n"
        "sq1 x0 = x1\nsq1 x3 = x4\nsq2 x0 = x2\nsq2 x1 = x3\nsq2 x2 = x4\n", label="J")


def question():
    return parse_cell_diagram(
        "algebra A(1)\nrange 0 12\ngen x0 0\ngen x2 2\ngen x3 3\nsq2 x0 = x2\nsq1 x2 = x3\n", label="Q")


def m0():
    return parse_cell_diagram(
        "algebra A(1)\nrange 0 12\ngen x0 0\ngen x2 2\ngen x3 3\ngen x5 5\n"
        "sq2 x0 = x2\nsq1 x2 = x3\nsq2 x3 = x5\n", label="M0")


def r2():
    """Sigma^-1 of the augmentation ideal of A(1)."""
    from adamsext.fpmodule import regular_module, split_off_submodule
    reg = regular_module(A1)
    ideal = [n for n, d in zip(reg.names, reg.degrees) if d > 0]
    return suspend(split_off_submodule(reg, ideal).sub, -1).with_label("R2")
