import random

from qsln.scalar import HBAR, Q, ScalarPoly, sp_var
from qsln.rtt import (
    antisym_scalar,
    check_antisym_exchange,
    check_center,
    check_gt_commutativity,
    check_minor_comm_first,
    check_minor_comm_second,
    check_minor_entry_commutes,
    check_r_specialization,
    check_rtt_entrywise,
    check_rtt_multi,
    check_rtt_pairwise,
    gt_family,
)


def ok(result):
    passed, detail = result
    assert passed, detail


def test_rtt_pairwise_small():
    ok(check_rtt_pairwise(2))
    ok(check_rtt_pairwise(3))


def test_rtt_pairwise_corrupted_fails():
    passed, detail = check_rtt_pairwise(2, corrupt=True)
    assert not passed and detail


def test_rtt_entrywise_diagonal_pair():
    # both sides vanish when all four indices are diagonal Cartan entries
    ok(check_rtt_entrywise(2, (1, 1, 2, 2)))


def test_rtt_entrywise_all_small():
    ok(check_rtt_entrywise(2))
    ok(check_rtt_entrywise(3))


def test_rtt_multi_three_legs():
    ok(check_rtt_multi(2, 3))


def test_antisym_exchange():
    ok(check_antisym_exchange(2, 2))
    ok(check_antisym_exchange(2, 3))
    ok(check_antisym_exchange(3, 2))


def test_antisym_scalar_values():
    assert antisym_scalar(2) == -HBAR
    assert antisym_scalar(3) == HBAR ** 3 * Q(-2)


def test_r_specialization():
    ok(check_r_specialization(2, 2))
    ok(check_r_specialization(2, 3))
    ok(check_r_specialization(3, 2))


def test_minor_comm_size_one_reduces_to_entry_relation():
    for k in (1, 2):
        for l in (1, 2):
            ok(check_minor_comm_first(2, k, l, (1,), (2,)))
            ok(check_minor_comm_second(2, k, l, (2,), (1,)))


def test_minor_comm_n3_selected():
    ok(check_minor_comm_first(3, 1, 3, (1, 2), (1, 2)))
    ok(check_minor_comm_second(3, 1, 3, (1, 2), (1, 2)))
    ok(check_minor_comm_first(3, 2, 2, (1, 3), (2, 3)))
    ok(check_minor_comm_second(3, 3, 1, (2, 3), (1, 3)))


def test_minor_entry_commutes():
    ok(check_minor_entry_commutes(2, (1, 2), (1, 2)))
    ok(check_minor_entry_commutes(3, (1, 2), (2, 3)))


def test_minor_comm_random_n4():
    rng = random.Random(11)
    for _ in range(3):
        rows = tuple(rng.sample(range(1, 5), 2))
        cols = tuple(rng.sample(range(1, 5), 2))
        k, l = rng.randint(1, 4), rng.randint(1, 4)
        ok(check_minor_comm_first(4, k, l, rows, cols))


def test_gt_family_counts():
    fam = gt_family(3)
    assert [(k, j) for k, j, _ in fam] == [
        (1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]
    # second-from-top coefficient of the full determinant is the trace, zero
    assert fam[-1][2].is_zero


def test_gt_commutativity_small():
    ok(check_gt_commutativity(2))
    ok(check_gt_commutativity(3))


def test_center_small():
    ok(check_center(2))
    ok(check_center(3))
