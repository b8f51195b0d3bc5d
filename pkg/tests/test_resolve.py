import random

import pytest
from hypothesis import given, settings, strategies as st

from adamsext.chargen import catalog
from adamsext.fpmodule import (coinduced_quotient, direct_sum, parse_cell_diagram, regular_module, restrict,
                               split_off_submodule, suspend, tensor, trivial_module, zero_module)
from adamsext.resolve import (CoverageError, ExtChart, FreeResolution, chart, check_d_squared,
                              check_exactness, check_minimality, ext_chart, h_product, minimal_resolution)
from adamsext.steenrod import subalgebra

import fixtures
from charts import Expect, figure_charts, signature
from oracles import koszul_count

A1 = subalgebra("A", 1)
E1 = subalgebra("E", 1)
F2 = trivial_module(A1)


# ---------------------------------------------------------------- resolutions


def test_F2_generator_degrees():
    res = minimal_resolution(F2, 3, 8)
    assert res.gens[0] == [0]
    assert res.gens[1] == [1, 2]
    assert res.gens[2] == [2, 4]


def test_M0_one_generator_per_filtration():
    res = minimal_resolution(fixtures.m0(), 8, 12)
    for s in range(9):
        assert res.gens[s] == [s]
        if s:
            assert h_product(res, 0, (s - 1, 0)) == [0]


def test_free_module_resolves_in_one_step():
    res = minimal_resolution(regular_module(A1), 5, 12)
    assert res.gens[0] == [0]
    assert all(g == [] for g in res.gens[1:])


def test_zero_module():
    res = minimal_resolution(zero_module(A1), 3, 6)
    assert all(g == [] for g in res.gens)
    assert ext_chart(res, 3).classes == ()


@pytest.mark.parametrize("build", [lambda: F2, fixtures.joker, fixtures.question, fixtures.m0,
                                   fixtures.r0, fixtures.r5, lambda: catalog("g+"), lambda: catalog("pinc")])
def test_resolution_invariants(build):
    res = minimal_resolution(build(), 6, 11)
    assert check_minimality(res) is None
    assert check_d_squared(res)
    assert check_exactness(res)


def test_planted_nonminimal_witness():
    res = minimal_resolution(F2, 3, 6)
    diffs = [list(d) for d in res.diffs]
    gens = [list(g) for g in res.gens]
    # a redundant generator of P_1 mapping by the unit onto the bottom generator of P_0
    gens[1].append(0)
    diffs[1].append(((0, 0),))
    bad = FreeResolution(res.module, res.s_max, res.t_cap, gens, diffs)
    w = check_minimality(bad)
    assert w is not None and w["s"] == 1 and w["generator"] == len(gens[1]) - 1


def test_euler_characteristic_oracle():
    # sum_s (-1)^s dim (P_s)_t = dim M_t for t below the filtration reach
    dims_a = A1.degree_dims()
    for m in (F2, fixtures.joker(), fixtures.question(), catalog("g-"), fixtures.r3()):
        s_max, lo = 12, m.min_degree()
        res = minimal_resolution(m, s_max, lo + s_max)
        mdims = m.degree_dims()
        for t in range(lo, lo + s_max + 1):
            total = 0
            for s, degs in enumerate(res.gens):
                for d in degs:
                    if 0 <= t - d < len(dims_a):
                        total += (-1) ** s * dims_a[t - d]
            assert total == mdims.get(t, 0), (m.label, t)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_koszul_over_E(n):
    e = subalgebra("E", n)
    res = minimal_resolution(trivial_module(e), 6, 22)
    dims = res.ext_dims()
    for s in range(7):
        for t in range(23):
            assert dims.get((s, t), 0) == koszul_count(n, s, t), (s, t)


# ---------------------------------------------------------------- charts from the figures


FIGURES = [f for f in figure_charts() if not f[0].startswith("ASS")]


@pytest.mark.parametrize("name,build,max_stem,max_s,expect", FIGURES, ids=[f[0] for f in FIGURES])
def test_figure_chart(name, build, max_stem, max_s, expect):
    assert expect.matches(chart(build(), max_stem, max_s))


def test_A1_mod_E1_has_no_h1():
    assert chart(coinduced_quotient(A1, E1), 10, 7).h1 == ()


def test_product_with_phi_h0_worked_extension():
    # the pull-back extension of A1//E1 by Sigma Z/2 is non-split, so phi h0 != 0
    ext = parse_cell_diagram("algebra A(1)\nrange 0 12\ngen x0 0\ngen y1 1\ngen x2 2\n"
                             "sq1 x0 = y1\nsq2 x0 = x2\n")
    base = chart(coinduced_quotient(A1, E1), 2, 4)
    assert signature(base, 0, 1)[1] == {(0, 0, 0): 1}
    c = chart(ext, 2, 4)
    # the connecting map hits phi h0, so stem 0 keeps only the bottom class
    assert c.count(0, 0) == 1 and c.count(0, 1) == 0


def test_h1_vanishes_on_A1_mod_E1_resolution():
    res = minimal_resolution(coinduced_quotient(A1, E1), 6, 14)
    for s in range(6):
        for k in range(len(res.gens[s])):
            if res.gens[s][k] + 2 <= 14:
                assert h_product(res, 1, (s, k)) == []


def test_g0_splits_as_Q_plus_shifted_R2():
    lhs = chart(catalog("g0"), 5, 6)
    rhs = chart(direct_sum(fixtures.question(), suspend(fixtures.r2(), 4)), 5, 6)
    assert signature(lhs, 5, 6) == signature(rhs, 5, 6)


def test_truncating_g_plus_keeps_low_stems():
    low = chart(catalog("g+", (-1, 11)), 5, 5)
    high = chart(catalog("g+", (-1, 16)), 5, 5)
    assert signature(low, 5, 5) == signature(high, 5, 5)


# ---------------------------------------------------------------- structural laws


@pytest.mark.parametrize("build", [fixtures.joker, fixtures.question, fixtures.r5])
@pytest.mark.parametrize("r", [-3, 2, 5])
def test_suspension_shifts_chart(build, r):
    m = build()
    base = chart(m, 6, 6)
    moved = chart(suspend(m, r), 6 + r, 6)
    assert signature(moved, 6 + r, 6) == signature(base.shifted(r), 6 + r, 6)


def test_additivity():
    a, b = fixtures.joker(), fixtures.question()
    both = chart(direct_sum(a, b), 6, 6)
    ca, cb = chart(a, 6, 6), chart(b, 6, 6)
    cells, ranks = signature(both, 6, 6)
    for key in set(cells) | set(ca.dims()) | set(cb.dims()):
        assert cells.get(key, 0) == ca.dims().get(key, 0) + cb.dims().get(key, 0)
    sa, sb = signature(ca, 6, 6)[1], signature(cb, 6, 6)[1]
    for key in set(ranks) | set(sa) | set(sb):
        assert ranks.get(key, 0) == sa.get(key, 0) + sb.get(key, 0)


@pytest.mark.parametrize("m", [F2, fixtures.m0()], ids=["F2", "M0"])
def test_change_of_rings(m):
    induced = tensor(coinduced_quotient(A1, E1), m)
    over_a1 = minimal_resolution(induced, 6, 14)
    over_e1 = minimal_resolution(restrict(m, E1), 6, 14)
    da, de = over_a1.ext_dims(), over_e1.ext_dims()
    keys = {k for k in set(da) | set(de) if k[1] - k[0] <= 7}
    for k in keys:
        assert da.get(k, 0) == de.get(k, 0), k
    ca, ce = ext_chart(over_a1, 7, 6), ext_chart(over_e1, 7, 6)
    for n, s in ca.dims():
        ra = signature(ca, 7, 6)[1].get((0, n, s), 0)
        re_ = signature(ce, 7, 6)[1].get((0, n, s), 0)
        assert ra == re_


def _les_ok(dq, dt, ds, t_cap, s_max):
    """Long exact sequence ... Ext(Q) -> Ext(T) -> Ext(S) -> Ext^{+1}(Q) ... admits ranks."""
    for t in range(t_cap + 1):
        z = 0
        for s in range(s_max):
            a, b, c = dq.get((s, t), 0), dt.get((s, t), 0), ds.get((s, t), 0)
            x = a - z
            y = b - x
            z = c - y
            if min(x, y, z) < 0:
                return False
            if b > a + c:
                return False
    return True


@pytest.mark.parametrize("build,sub", [
    (fixtures.r0, ["x1"]), (fixtures.r1, ["e0", "e2"]), (fixtures.r3, ["x1", "y3", "y4"]),
    (fixtures.r5, ["d0", "d1", "c2", "d3", "d4"]), (fixtures.r6, ["a1", "y3"])])
def test_les_rank_consistency(build, sub):
    ses = split_off_submodule(build(), sub)
    t_cap, s_max = 12, 7
    dims = [minimal_resolution(x, s_max, t_cap).ext_dims() for x in (ses.quotient, ses.total, ses.sub)]
    assert _les_ok(*dims, t_cap, s_max)


def test_les_check_rejects_inconsistent_ranks():
    assert not _les_ok({}, {(0, 0): 1}, {}, 0, 3)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["joker", "question", "m0", "r5"]), st.integers(-4, 4))
def test_vanishing_below_bottom_cell(name, r):
    m = suspend(getattr(fixtures, name)(), r)
    c = chart(m, 6 + r, 5)
    assert all(n >= m.min_degree() for n, _, _ in c.classes)


# ---------------------------------------------------------------- serialization and coverage


def test_json_round_trip():
    c = chart(fixtures.joker(), 8, 6)
    again = ExtChart.from_json(c.to_json())
    assert again == c
    d = c.to_dict()
    assert list(d) == ["algebra", "module", "window", "classes", "h0", "h1"]
    assert d["window"] == {"max_stem": 8, "max_filtration": 6}


@pytest.mark.parametrize("text", ["{", '{"classes": []}', '{"algebra": "A(1)", "module": "x", '
                                  '"window": {"max_stem": 1, "max_filtration": 1}, '
                                  '"classes": [], "h0": [[0, 1]]}'])
def test_json_malformed(text):
    with pytest.raises(ValueError):
        ExtChart.from_json(text)


def test_coverage_errors():
    res = minimal_resolution(F2, 4, 6)
    with pytest.raises(CoverageError):
        ext_chart(res, 5)
    with pytest.raises(CoverageError):
        ext_chart(res, 2, max_filtration=5)
    # module window of M_infinity ends at 24: stems past 23 are not determined
    res = minimal_resolution(fixtures.m_infinity(), 2, 27)
    with pytest.raises(CoverageError):
        ext_chart(res, 25)
