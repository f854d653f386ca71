import pytest

from mirahall.bimodule import act, pi_table, u_bip
from mirahall.errors import (
    CostGuard,
    FieldMismatch,
    NonIntegral,
    NotInTable,
    UsageError,
)
from mirahall.hall import u_elt
from mirahall.laurent import LaurentPoly, QPoly
from mirahall.partitions import bipartitions_of, partitions_of
from mirahall.traces import (
    GreenLabel,
    TraceCell,
    fiber_oracle_check,
    green_freeness_check,
    green_labels,
    green_mul,
    irreducible_polys,
    trace_value,
)


def test_trace_cell_arithmetic():
    s = TraceCell(QPoly.zero(), QPoly.one(), 2)
    one_c = TraceCell(QPoly.one(), QPoly.zero(), 2)
    assert (s * s).a == QPoly({1: 1})
    both = (one_c + s) * (one_c + s)
    assert both.a == QPoly({0: 1, 1: 1})
    assert both.b == QPoly.from_int(2)
    assert both.evaluate() == (3, 2)
    with pytest.raises(NonIntegral):
        both.as_integer()
    with pytest.raises(FieldMismatch):
        s + TraceCell(QPoly.one(), QPoly.zero(), 3)


def test_trace_cell_from_laurent():
    cell = TraceCell.from_laurent(LaurentPoly({-1: 1, -3: 1}), 3, 2)
    assert cell.a == QPoly({0: 1, 1: 1})
    assert cell.b.is_zero()
    with pytest.raises(NonIntegral):
        TraceCell.from_laurent(LaurentPoly({-4: 1}), 3)


def test_trace_value_golden_cells():
    tab = pi_table(2, 2)
    cell = trace_value(((1,), (1,)), ((), (1, 1)), tab, 2)
    assert cell.a == QPoly({0: 1, 1: 1})
    assert cell.b.is_zero()
    assert cell.as_integer() == 3
    assert trace_value(((2,), ()), ((), (2,)), tab, 3) == TraceCell(
        QPoly.one(), QPoly.zero(), 3
    )
    assert trace_value(((1, 1), ()), ((2,), ()), tab, 2).is_zero()
    with pytest.raises(NotInTable):
        trace_value(((3,), ()), ((2,), ()), tab, 2)


def test_trace_diagonal_is_one():
    for n in (1, 2, 3):
        tab = pi_table(n, n)
        for col in tab.order:
            assert trace_value(col, col, tab, 2) == TraceCell(
                QPoly.one(), QPoly.zero(), 2
            ), col


def test_fiber_oracle_small():
    for q in (2, 3):
        for n in (1, 2, 3):
            rep = fiber_oracle_check(n, q)
            assert rep["passed"] and rep["epsilon"] == 1
            assert len(rep["cells"]) == (n + 1) * len(bipartitions_of(n))


def test_fiber_oracle_size_four():
    assert fiber_oracle_check(4, 2)["passed"]


def test_fiber_example_cells():
    rep = fiber_oracle_check(2, 2)
    cells = {(tuple(map(tuple, c["stratum"])), c["m"]): c for c in rep["cells"]}
    assert cells[(((), (1, 1)), 1)]["count"] == 3
    for sig in (((2,), ()), ((1,), (1,)), ((1, 1), ())):
        assert cells[(sig, 2)]["count"] == 0, sig
    assert cells[(((2,), ()), 0)]["count"] == 1


def test_fiber_oracle_guards():
    with pytest.raises(CostGuard):
        fiber_oracle_check(5, 2)
    with pytest.raises(CostGuard):
        fiber_oracle_check(4, 3)
    with pytest.raises(UsageError):
        fiber_oracle_check(2, 2, table=pi_table(3, 3))


def test_irreducible_polys_enumeration():
    assert irreducible_polys(2, 2) == ((1, 1), (1, 1, 1))
    assert irreducible_polys(3, 1) == ((1, 1), (2, 1))
    assert len(irreducible_polys(3, 2)) == 5  # two linear plus three quadratic
    assert (0, 1) not in irreducible_polys(5, 1)


def test_green_label_guards():
    with pytest.raises(UsageError):
        GreenLabel(2, {(0, 1): ((1,), ())})
    with pytest.raises(UsageError):
        GreenLabel(2, {(1, 0, 1): ((1,), ())})  # square of t+1
    with pytest.raises(UsageError):
        GreenLabel(2, [((1, 1), ((1,), ())), ((1, 1), ((), (1,)))])
    lab = GreenLabel(2, {(1, 1): ((), ()), (1, 1, 1): ((1,), (1,))})
    assert lab.support() == {(1, 1, 1): ((1,), (1,))}
    assert lab.size() == 4
    assert not lab.is_pure()
    assert GreenLabel(2).is_pure()


def test_green_label_enumeration():
    assert [g.pretty() for g in green_labels(1, 2)] == [
        "[t+1]:((), (1,))",
        "[t+1]:((1,), ())",
    ]
    assert len(green_labels(2, 2)) == 7
    assert len(green_labels(2, 3)) == 20
    assert green_labels(0, 2) == [GreenLabel(2)]


def test_green_unit_two_sided():
    q = 2
    unit_cls = GreenLabel(q)
    x = {lab: i + 1 for i, lab in enumerate(green_labels(2, q))}
    assert green_mul("left", unit_cls, x) == x
    assert green_mul("right", unit_cls, x) == x


def test_green_mul_degree_one_seed():
    q = 2
    cls = GreenLabel(q, {(1, 1): ((), (1,))})
    got = green_mul("left", cls, {GreenLabel(q): 1})
    assert got == {
        GreenLabel(q, {(1, 1): ((1,), ())}): 1,
        GreenLabel(q, {(1, 1): ((), (1,))}): 1,
    }


def test_green_mul_degree_two_evaluation():
    q = 2
    f = (1, 1, 1)
    cls = GreenLabel(q, {f: ((), (1,))})
    got = green_mul("left", cls, {GreenLabel(q, {f: ((), (1,))}): 1})
    assert got[GreenLabel(q, {f: ((), (1, 1))})] == q**2 + 1
    g = (1, 1)
    cls1 = GreenLabel(q, {g: ((), (1,))})
    got1 = green_mul("left", cls1, {GreenLabel(q, {g: ((), (1,))}): 1})
    assert got1[GreenLabel(q, {g: ((), (1, 1))})] == q + 1


def test_green_mixed_support_factorizes():
    q = 3
    f, g = (1, 1), (2, 1)
    cls = GreenLabel(q, {f: ((), (1,))})
    x = {GreenLabel(q, {g: ((1,), ())}): 2}
    got = green_mul("left", cls, x)
    assert got == {
        GreenLabel(q, {f: ((1,), ()), g: ((1,), ())}): 2,
        GreenLabel(q, {f: ((), (1,)), g: ((1,), ())}): 2,
    }


def test_green_guards():
    with pytest.raises(FieldMismatch):
        green_mul("left", GreenLabel(2), {GreenLabel(3): 1})
    with pytest.raises(UsageError):
        green_mul("left", GreenLabel(2, {(1, 1): ((1,), ())}), {GreenLabel(2): 1})
    with pytest.raises(UsageError):
        green_mul("up", GreenLabel(2), {GreenLabel(2): 1})


def test_green_bimodule_axiom_sampled():
    for q in (2, 3):
        for an in (1, 2):
            for bn in (1, 2):
                for xn in range(0, 3 - max(an, bn)):
                    for a in green_labels(an, q, pure=True):
                        for b in green_labels(bn, q, pure=True):
                            for lab in green_labels(xn, q):
                                x = {lab: 1}
                                lhs = green_mul("left", a, green_mul("right", b, x))
                                rhs = green_mul("right", b, green_mul("left", a, x))
                                assert lhs == rhs, (q, a, b, lab)


def test_green_freeness():
    dims = {}
    for q in (2, 3):
        for n in (0, 1, 2):
            rep = green_freeness_check(n, q)
            assert rep["passed"]
            dims[(n, q)] = rep["dimension"]
    assert dims[(1, 2)] == 2
    assert dims[(1, 3)] == 4
    assert dims[(2, 2)] == 7
    assert dims[(2, 3)] == 20


def test_green_degree_one_matches_finite_action():
    q = 2
    f = (1, 1)
    for side in ("left", "right"):
        for wn in (1, 2):
            for srcn in range(0, 3 - wn):
                for w in partitions_of(wn):
                    cls = GreenLabel(q, {f: ((), w)})
                    for src in bipartitions_of(srcn):
                        got = green_mul(side, cls, {GreenLabel(q, {f: src}): 1})
                        rank = wn + srcn
                        fin = act(side, u_elt(w, rank), u_bip(src, rank))
                        want = {}
                        for bp, lp in fin._c.items():
                            assert all(e % 2 == 0 for e, _ in lp.items()), bp
                            val = sum(c * q ** (e // 2) for e, c in lp.items())
                            if val:
                                want[GreenLabel(q, {f: bp})] = val
                        assert got == want, (side, w, src)
