import pytest

from qsln.scalar import HBAR, IncompleteSplittingError, Q, Series
from qsln.spectra import (
    HbarMatrix,
    NonCommutingFamilyError,
    NonSemisimpleError,
    Rep,
    SpectrumTable,
    charpoly,
    check_partial_fractions,
    hbar_exp,
    mat,
    mat_commutator,
    mat_eye,
    mat_is_zero,
    mat_mul,
    nullspace,
    simultaneous_eigenbasis,
)
from qsln.rtt import gt_family
from qsln.uea import Algebra


def ok(result):
    passed, detail = result
    assert passed, detail


# ---------------------------------------------------------------------------
# rational linear algebra
# ---------------------------------------------------------------------------

def test_charpoly_diag():
    m = mat([[1, 0], [0, -1]])
    assert charpoly(m) == [Q(-1), Q(0), Q(1)]  # t^2 - 1


def test_nullspace():
    m = mat([[1, 2], [2, 4]])
    basis = nullspace(m)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] * 1 + v[1] * 2 == 0


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

def test_defining_rep_images():
    r = Rep.defining(2)
    A = r.algebra
    assert r.images[A.h_idx(1)] == mat([[1, 0], [0, -1]])
    assert r.images[A.e_idx(1, 2)] == mat([[0, 1], [0, 0]])


def test_defining_rep_validates_relations():
    for n in (2, 3, 4):
        Rep.defining(n)  # raises on any broken relation


def test_tensor_rep_h_image():
    r = Rep.tensor(Rep.defining(2), Rep.defining(2))
    A = r.algebra
    h = r.images[A.h_idx(1)]
    assert h == mat([[2, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -2]])


def test_rational_matrix_products():
    r = Rep.defining(2)
    A = r.algebra
    assert r.rational_matrix(A.e(1, 2) * A.e(2, 1)) == mat([[1, 0], [0, 0]])
    assert r.rational_matrix(A.one()) == mat_eye(2)
    h, e, f = A.h(1), A.e(1, 2), A.e(2, 1)
    cas = e * f + f * e + h * h * Q(1, 2)
    assert r.rational_matrix(cas * 2 + 1) == mat([[4, 0], [0, 4]])


def test_hbar_matrix_image():
    r = Rep.defining(2)
    A = r.algebra
    x = A.e(1, 2).scale(HBAR) + A.one()
    m = r.hbar_matrix(x, 3)
    assert m.rows[0][1].coeffs == (Q(0), Q(1), Q(0))
    assert m.rows[0][0].coeffs == (Q(1), Q(0), Q(0))


def test_hbar_exp_inverse():
    h = mat([[1, 0], [0, -1]])
    k = hbar_exp(h, 1, 6)
    kinv = hbar_exp(h, -1, 6)
    assert (k * kinv) == HbarMatrix.eye(2, 6)


# ---------------------------------------------------------------------------
# simultaneous diagonalization
# ---------------------------------------------------------------------------

def test_simdiag_already_diagonal():
    blocks = simultaneous_eigenbasis([mat([[Q(1, 2), 0], [0, Q(-1, 2)]])])
    flat = [v for b in blocks for v in b]
    assert sorted(flat) == sorted([(Q(1), Q(0)), (Q(0), Q(1))])
    assert all(len(b) == 1 for b in blocks)


def test_simdiag_rejects_nilpotent():
    with pytest.raises(NonSemisimpleError):
        simultaneous_eigenbasis([mat([[0, 1], [0, 0]])])


def test_simdiag_rejects_noncommuting():
    with pytest.raises(NonCommutingFamilyError):
        simultaneous_eigenbasis([mat([[0, 1], [0, 0]]),
                                 mat([[0, 0], [1, 0]])])


def test_simdiag_rejects_irrational():
    with pytest.raises(IncompleteSplittingError):
        simultaneous_eigenbasis([mat([[0, 2], [1, 0]])])


def test_simdiag_splits_commuting_pair():
    a = mat([[1, 0, 0], [0, 1, 0], [0, 0, 5]])
    b = mat([[2, 1, 0], [1, 2, 0], [0, 0, 7]])
    blocks = simultaneous_eigenbasis([a, b])
    assert sorted(len(bl) for bl in blocks) == [1, 1, 1]


# ---------------------------------------------------------------------------
# spectrum tables
# ---------------------------------------------------------------------------

def test_spectrum_defining_sl2():
    r = Rep.defining(2)
    t = SpectrumTable.build(r)
    # the level-2 minor has roots +-hbar on both vectors
    for vec_roots in t.roots[2]:
        assert vec_roots == [Q(-1), Q(1)]
    # level 1: root hbar/2 on the weight +1 vector, -hbar/2 on the other
    assert sorted(x[0] for x in t.roots[1]) == [Q(-1, 2), Q(1, 2)]
    # number of roots at level k equals k
    for k, per_vec in t.roots.items():
        assert all(len(v) == k for v in per_vec)


def test_spectrum_family_commutes_on_reps():
    for rep in (Rep.defining(2), Rep.defining(3),
                Rep.tensor(Rep.defining(2), Rep.defining(2))):
        mats = [rep.rational_matrix(c) for _, _, c in gt_family(rep.n)]
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                assert mat_is_zero(mat_commutator(mats[i], mats[j]))


def test_spectrum_tensor_square_sl2():
    t = SpectrumTable.build(Rep.tensor(Rep.defining(2), Rep.defining(2)))
    assert t.dim() == 4
    # triplet vectors carry level-2 roots +-(3/2)hbar, the singlet +-hbar/2
    root_sets = sorted(tuple(v) for v in t.roots[2])
    assert root_sets.count((Q(-3, 2), Q(3, 2))) == 3
    assert root_sets.count((Q(-1, 2), Q(1, 2))) == 1


def test_spectrum_root_scaling_hbar_free():
    # eigen-polynomial coefficients of u^(k-j) are rational multiples of
    # hbar^j by construction; the root data must be plain rationals
    t = SpectrumTable.build(Rep.defining(3))
    for k, per_vec in t.roots.items():
        for v in per_vec:
            assert all(type(x) is type(Q(1)) for x in v)


def test_permuted_table():
    t = SpectrumTable.build(Rep.defining(3))
    p = t.permuted({2: (1, 0)})
    for orig, perm in zip(t.roots[2], p.roots[2]):
        assert perm == [orig[1], orig[0]]


# ---------------------------------------------------------------------------
# residue form of the currents
# ---------------------------------------------------------------------------

def test_partial_fractions_sl2():
    r = Rep.defining(2)
    t = SpectrumTable.build(r)
    ok(check_partial_fractions(r, t, 1, +1, 4))
    ok(check_partial_fractions(r, t, 1, -1, 4))


def test_partial_fractions_sl3_all_levels():
    r = Rep.defining(3)
    t = SpectrumTable.build(r)
    for k in (1, 2):
        for sign in (1, -1):
            ok(check_partial_fractions(r, t, k, sign, 4))


def test_partial_fractions_leading_coefficient():
    # the u^-1 coefficient of the raising current is hbar * e12
    r = Rep.defining(2)
    t = SpectrumTable.build(r)
    from qsln.evaluation import ev_x
    cur = ev_x(2, 1, 1, 2)
    m = r.hbar_matrix(cur.coeff(-1), 3)
    e12 = r.rational_matrix(r.algebra.e(1, 2))
    assert m == HbarMatrix.from_rational(e12, 3).scale_series(
        Series("hbar", [0, 1, 0]))
