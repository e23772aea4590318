import itertools

import pytest

from qsln.scalar import HBAR, Q, sp_var
from qsln.laurent import Laurent
from qsln.evaluation import (
    check_y1,
    check_y2,
    check_y2prime,
    check_y3,
    check_y4,
    check_y6_deg0,
    check_yangian,
    check_zero_modes,
    ev_x,
    ev_xi,
    recursive_form_check,
    t11_compare,
    t11_images,
    zero_mode,
)
from qsln.uea import Algebra


def ok(result):
    passed, detail = result
    assert passed, detail


# ---------------------------------------------------------------------------
# the currents themselves
# ---------------------------------------------------------------------------

def test_sl2_raising_current_closed_form():
    # inverse of (u - (hbar/2)(h-1)) times hbar*e12, expanded by hand
    A = Algebra.get(2)
    cur = ev_x(2, 1, 1, 4)
    w = (A.h(1) - 1).scale(HBAR * Q(1, 2))  # (hbar/2)(h-1)
    expect_m1 = A.e(1, 2).scale(HBAR)
    assert cur.coeff(-1) == expect_m1
    assert cur.coeff(-2) == w * expect_m1
    assert cur.coeff(-3) == w * w * expect_m1


def test_sl2_lowering_current_closed_form():
    A = Algebra.get(2)
    cur = ev_x(2, -1, 1, 3)
    w = (A.h(1) + 1).scale(HBAR * Q(1, 2))
    assert cur.coeff(-1) == A.e(2, 1).scale(HBAR)
    assert cur.coeff(-2) == w * A.e(2, 1).scale(HBAR)


def test_zero_modes():
    ok(check_zero_modes(2))
    ok(check_zero_modes(3))


def test_zero_mode_values_n3():
    A = Algebra.get(3)
    assert zero_mode(3, "xi", 2) == A.h(2)
    assert zero_mode(3, "x", 1, +1) == A.e(1, 2)
    assert zero_mode(3, "x", 2, -1) == A.e(3, 2)


def test_x_currents_have_no_nonnegative_powers():
    for n, k, s in [(2, 1, 1), (3, 1, -1), (3, 2, 1)]:
        cur = ev_x(n, s, k, 3)
        assert cur.hi() <= -1


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

def test_y1_all_pairs_n3():
    for i, j in itertools.product((1, 2), repeat=2):
        ok(check_y1(3, i, j, 4))


def test_y2_n2():
    ok(check_y2(2, 1, 1, +1, 4))
    ok(check_y2(2, 1, 1, -1, 4))


def test_y2_n3_mixed_pair():
    ok(check_y2(3, 1, 2, +1, 4))
    ok(check_y2(3, 2, 1, -1, 4))


def test_y2prime_n2():
    ok(check_y2prime(2, 1, 1, +1, 4))
    ok(check_y2prime(2, 1, 1, -1, 4))


def test_y3_n2_and_n3():
    ok(check_y3(2, 1, 1, +1, 4))
    ok(check_y3(3, 1, 2, +1, 4))
    ok(check_y3(3, 1, 2, -1, 4))


def test_y4_diagonal():
    ok(check_y4(2, 1, 1, 4))
    ok(check_y4(3, 2, 2, 4))


def test_y4_off_diagonal_both_sides_vanish():
    ok(check_y4(3, 1, 2, 4))
    ok(check_y4(3, 2, 1, 4))


def test_y6_degree_zero():
    ok(check_y6_deg0(3, 1, 2, +1))
    ok(check_y6_deg0(3, 2, 1, -1))
    ok(check_y6_deg0(4, 1, 3, +1))  # commuting case


def test_dispatcher_rejects_unknown():
    with pytest.raises(ValueError):
        check_yangian("Y9", 2, 1, 1, 4)


# ---------------------------------------------------------------------------
# recursive form and the degree-one Cartan mode
# ---------------------------------------------------------------------------

def test_recursive_form_level_one_is_definition():
    ok(recursive_form_check(2, 1, 4))
    ok(recursive_form_check(3, 1, 4))


def test_recursive_form_level_two():
    ok(recursive_form_check(3, 2, 4))


def test_t11_n2_and_n3():
    ok(t11_compare(2))
    ok(t11_compare(3))


def test_t11_closed_value_n3():
    A = Algebra.get(3)
    imgs = t11_images(3)
    expect = (A.coweight(2) * A.h(1) - A.e(1, 2) * A.e(2, 1)
              - A.e(2, 1) * A.e(1, 2)).scale(HBAR * Q(1, 2))
    assert imgs["moments"] == expect
