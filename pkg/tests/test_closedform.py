import pytest

from mirahall.closedform import (
    closed_form_G,
    closed_left_table,
    rho_check,
    right_via_star,
    shift_labels,
    stable_right_constant,
    verify_closed_form,
)
from mirahall.errors import UsageError
from mirahall.laurent import QPoly
from mirahall.partitions import add_parts, bipartitions_of, trim
from mirahall import pairs

one = QPoly.one()
q = QPoly.q_power(1)


def test_row_for_smallest_vector_source():
    row = closed_form_G(1, ((), (1,)))
    assert row[((1,), (1,))] == one
    assert row[((), (1, 1))] == one + q
    assert row[((), (2,))] == one
    assert row[((1, 1), ())] == one
    assert ((2,), ()) not in row


def test_trivial_slices():
    assert closed_left_table(((2, 1), (1,)), 0) == {((2, 1), (1,)): one}
    assert closed_left_table(((1,), (1,)), 5) == {}
    with pytest.raises(UsageError):
        closed_left_table(((1,), ()), -1)


def test_two_gap_split():
    # the one-depth bucketing collapses these two sources into one class
    table = closed_left_table(((2, 1, 1), (1,)), 1)
    assert table[((2, 1), (1,))] == QPoly.q_power(2)
    assert table[((2,), (1, 1))] == q
    assert table[((1, 1, 1), (1,))] == one
    assert len(table) == 3


def test_closed_matches_counted_on_awkward_targets():
    # targets chosen for gap structure: several distinct first-slot rows,
    # interleaved second slots, and a legless one for the no-gap path
    for tgt, r in [
        (((2, 1), (1,)), 1),
        (((2, 2), (1,)), 2),
        (((3, 1), (1, 1)), 2),
        (((2,), (2, 1)), 1),
        (((), (2, 1)), 1),
    ]:
        verify_closed_form(tgt, r)


def test_closed_matches_counted_exhaustive_small():
    for n in range(1, 5):
        for tgt in bipartitions_of(n):
            for r in range(1, n + 1):
                verify_closed_form(tgt, r)


def _unshift(table, rows):
    out = {}
    for (lam, mu), val in table.items():
        if len(lam) != rows or (lam and lam[-1] == 0):
            continue
        out[(trim(tuple(x - 1 for x in lam)), mu)] = val
    return out


def test_column_shift_roundtrip():
    for tgt, r in [(((1,), (1,)), 1), (((2,), (1, 1)), 2), (((), (2,)), 1)]:
        rows = len(add_parts(*tgt)) + 1
        big = closed_left_table(shift_labels(tgt, 1, rows), r)
        assert _unshift(big, rows) == dict(closed_left_table(tgt, r))


def test_mirrored_right_constants():
    assert right_via_star(((), (2,)), ((), (1,)), 1, 2) == one
    assert right_via_star(((), (1, 1)), ((), (1,)), 1, 2) == q
    assert right_via_star(((1,), ()), ((), ()), 1, 2).is_zero()
    assert right_via_star(((), (1,)), ((), ()), 1, 2) == one


def test_stable_right_constant_sheds_boundary_mass():
    # the raw count at this cell is 1 + q; one extra column drains the
    # unit that belongs to a label with a negative first-slot row
    raw = pairs.right_elementary_constants(((), (1, 1)), 1)[((), (1,))]
    assert raw == one + q
    assert stable_right_constant(((), (1, 1)), ((), (1,)), 1, 2) == q


def test_rho_check_small_sources():
    assert rho_check(((), (1,)), 1, 2)
    assert rho_check(((), ()), 1, 2)
    assert rho_check(((1,), ()), 1, 2)
    assert rho_check(((1,), (1,)), 2, 3)
    assert rho_check(((), (2,)), 1, 3)


def test_guards():
    with pytest.raises(UsageError):
        right_via_star(((), (1,)), ((), ()), 2, 2)
    with pytest.raises(UsageError):
        right_via_star(((), (1,)), ((), ()), 0, 2)
    with pytest.raises(UsageError):
        rho_check(((1, 1, 1), ()), 1, 2)
