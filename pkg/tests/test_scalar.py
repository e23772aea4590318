from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from qsln.scalar import (
    Q,
    ExactDivisionError,
    IncompleteSplittingError,
    ScalarPoly,
    Series,
    SeriesDomainError,
    factorization_check,
    g_series,
    rational_roots,
    series_map,
    sinh_ratio_series,
    sp_var,
)

S = ScalarPoly
U = sp_var("u")
V = sp_var("v")
H = sp_var("hbar")


# ---------------------------------------------------------------------------
# polynomial arithmetic
# ---------------------------------------------------------------------------

def test_difference_of_squares():
    assert (U + H) * (U - H) == U ** 2 - H ** 2


def test_substitute_linear():
    t = sp_var("t")
    p = U ** 2 - H ** 2
    assert p.substitute({"u": H * t}) == H ** 2 * t ** 2 - H ** 2


def test_two_variable_difference_of_squares():
    assert (U - V - H) * (U - V + H) == (U - V) ** 2 - H ** 2


def test_coeff_extraction_and_division():
    p = U ** 2 * H + 3 * U * H ** 2 + S.const(5)
    assert p.coeff("u", 2) == H
    assert p.coeff("u", 1) == 3 * H ** 2
    assert p.coeff("u", 0) == S.const(5)
    assert (p - S.const(5)).div_exact("hbar", 1) == U ** 2 + 3 * U * H
    with pytest.raises(ExactDivisionError):
        p.div_exact("hbar", 1)


def test_univariate_and_eval():
    p = 2 * U ** 2 - 3 * U + 1
    assert p.univariate("u") == [Q(1), Q(-3), Q(2)]
    assert p.eval_at({"u": Q(1, 2)}) == 0
    with pytest.raises(ValueError):
        (U * V).univariate("u")


rationals = st.builds(Q, st.integers(-30, 30), st.integers(1, 12))


def polys(vars_=("hbar", "u")):
    term = st.tuples(
        st.tuples(*[st.integers(0, 3) for _ in vars_]), rationals)
    def build(pairs):
        acc = S.zero()
        for exps, c in pairs:
            mono = S.const(c)
            for name, e in zip(vars_, exps):
                mono = mono * sp_var(name) ** e
            acc = acc + mono
        return acc
    return st.lists(term, max_size=5).map(build)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


# ---------------------------------------------------------------------------
# truncated series
# ---------------------------------------------------------------------------

def test_exp_log_roundtrip_order6():
    x = Series.x("x", 6)
    assert series_map(series_map(1 + x, "log"), "exp") == 1 + x


def test_sqrt_squares_back():
    s = Series("x", [1, 0, Q(1, 24), 0, Q(1, 1920), 0])
    r = s.sqrt()
    assert r == Series("x", [1, 0, Q(1, 48), 0, Q(1, 23040), 0])
    assert r * r == s


def test_inverse_geometric():
    x = Series.x("x", 4)
    assert (1 + x).inverse() == Series("x", [1, -1, 1, -1])


def test_series_domain_errors():
    x = Series.x("x", 4)
    with pytest.raises(SeriesDomainError):
        (1 + x).exp()
    with pytest.raises(SeriesDomainError):
        x.log()
    with pytest.raises(SeriesDomainError):
        (2 + x).sqrt()
    with pytest.raises(SeriesDomainError):
        x.inverse()


def test_valuation_div():
    s = Series("hbar", [0, 0, 3, 5])
    assert s.valuation_div(2) == Series("hbar", [3, 5])
    with pytest.raises(ExactDivisionError):
        Series("hbar", [1, 0, 3]).valuation_div(1)


def test_min_order_arithmetic():
    a = Series("x", [1, 2, 3, 4])
    b = Series("x", [1, 1])
    assert (a + b).order == 2
    assert (a * b).order == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(rationals, min_size=5, max_size=5))
def test_exp_log_identity_random(tail):
    s = Series("x", [Q(1)] + tail)
    assert s.log().exp() == s
    assert s.inverse() * s == Series.one("x", 6)


# ---------------------------------------------------------------------------
# the G series
# ---------------------------------------------------------------------------

def test_g_series_low_order():
    gp, gm = g_series(3)
    assert gp == Series("x", [1, 0, Q(1, 48)])
    assert gm == gp
    gp1, _ = g_series(1)
    assert gp1 == Series("x", [1])


def test_g_series_constant_term_is_one():
    gp, gm = g_series(8)
    assert gp.coeffs[0] == 1 and gm.coeffs[0] == 1


def test_factorization_identities_hold():
    for order in range(1, 13):
        gp, gm = g_series(order)
        rep = factorization_check(gp, gm)
        assert rep.ok, f"order {order}: {rep}"


def test_factorization_parity_failure():
    one_plus_x = 1 + Series.x("x", 4)
    rep = factorization_check(one_plus_x, one_plus_x)
    assert rep.parity_first_fail == 1


def test_factorization_product_failure():
    one = Series.one("x", 4)
    rep = factorization_check(one, one)
    assert rep.parity_first_fail is None
    assert rep.product_first_fail == 2
    assert sinh_ratio_series(4).coeffs[2] == Q(1, 24)


# ---------------------------------------------------------------------------
# rational roots
# ---------------------------------------------------------------------------

def test_roots_difference_of_squares():
    assert rational_roots([-1, 0, 1]) == [(Q(-1), 1), (Q(1), 1)]


def test_roots_quadratic_formula_oracle():
    # 2t^2 - 3t + 1: roots via the quadratic formula, (3 +- 1)/4
    disc = Q(3) ** 2 - 4 * Q(2) * Q(1)
    assert disc == 1
    expected = sorted([(Q(3) - 1) / 4, (Q(3) + 1) / 4])
    got = rational_roots([1, -3, 2], require_complete=True)
    assert [r for r, _ in got] == expected
    assert all(m == 1 for _, m in got)


def test_roots_incomplete_splitting():
    assert rational_roots([-2, 0, 1]) == []
    with pytest.raises(IncompleteSplittingError):
        rational_roots([-2, 0, 1], require_complete=True)


def test_roots_multiplicity_and_zero():
    # t^2 (t - 1/2)^3
    p = [Q(0), Q(0), Q(-1, 8), Q(3, 4), Q(-3, 2), Q(1)]
    assert rational_roots(p, require_complete=True) == [
        (Q(0), 2), (Q(1, 2), 3)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.builds(Q, st.integers(-6, 6), st.integers(1, 4)),
                min_size=1, max_size=4))
def test_roots_reconstruct(roots):
    # expand prod (t - r) and recover the multiset of roots
    p = [Q(1)]
    for r in roots:
        p = [(p[i - 1] if i else Q(0)) - r * (p[i] if i < len(p) else Q(0))
             for i in range(len(p) + 1)]
    found = rational_roots(p, require_complete=True)
    flat = []
    for r, m in found:
        flat.extend([r] * m)
    assert sorted(flat) == sorted(roots)
    for r, _ in found:
        acc = Q(0)
        for c in reversed(p):
            acc = acc * r + c
        assert acc == 0
