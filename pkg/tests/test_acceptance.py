"""Acceptance suite: every verified claim at its stated scale.

Each criterion prints one pass/fail line.  All arithmetic is exact, so
every tolerance is zero; a criterion passes only when the residual is
identically zero (or the exact structure matches) at the stated n, depth
and truncation order.  The slow criteria (minor exchange at n = 4, the
reduction-operator laws at n = 4, the current relations at depth 6) run
in minutes; everything else in seconds.
"""

import itertools
import random

import pytest

from qsln.scalar import HBAR, Q, factorization_check, g_series, sp_var
from qsln.uea import Algebra
from qsln.tmatrix import TMatrix, principal_minor
from qsln import evaluation, phi, psi, rtt, spectra


def report(name, okay, detail=""):
    print(f"ACCEPTANCE {name}: {'PASS' if okay else 'FAIL'}"
          + (f" ({detail})" if detail and not okay else ""))
    assert okay, f"{name}: {detail}"


@pytest.fixture(scope="module")
def sl2_defining():
    r = spectra.Rep.defining(2)
    return r, spectra.SpectrumTable.build(r)


@pytest.fixture(scope="module")
def sl2_tensor():
    r = spectra.Rep.tensor(spectra.Rep.defining(2), spectra.Rep.defining(2))
    return r, spectra.SpectrumTable.build(r)


@pytest.fixture(scope="module")
def sl3_defining():
    r = spectra.Rep.defining(3)
    return r, spectra.SpectrumTable.build(r)


def test_criterion_01_exchange_relation():
    """Pairwise exchange relation, exact in u, v, hbar, for n = 2, 3, 4."""
    for n in (2, 3, 4):
        okay, detail = rtt.check_rtt_pairwise(n)
        report(f"1 exchange relation n={n}", okay, detail)
        Algebra.get(n).trim_memos()


def test_criterion_02_antisymmetrizer_scalar():
    """Laddered R product equals c_N times the antisymmetrizer, N = 2, 3."""
    assert rtt.antisym_scalar(3) == HBAR ** 3 * Q(-2)
    for n in (2, 3):
        for legs in (2, 3):
            okay, detail = rtt.check_r_specialization(n, legs)
            report(f"2 antisymmetrizer scalar n={n} N={legs}", okay, detail)


def test_criterion_03_sl2_principal_minor():
    """Level-2 principal minor at n = 2 equals its closed form, exactly."""
    A = Algebra.get(2)
    h, e, f = A.h(1), A.e(1, 2), A.e(2, 1)
    casimir = e * f + f * e + h * h * Q(1, 2)
    u = sp_var("u")
    want = A.scalar(u ** 2) - (casimir * 2 + 1) * (HBAR ** 2 * Q(1, 4))
    okay = principal_minor(TMatrix.get(2), 2) == want
    report("3 sl2 principal minor", okay)


def test_criterion_04_minor_exchange():
    """Both minor exchange identities and the own-entry corollary:
    all index choices for n <= 3 at sizes 1 and 2, random sample at n = 4."""
    for n in (2, 3):
        for size in (1, 2):
            tuples = list(itertools.product(range(1, n + 1), repeat=size))
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    for a in tuples:
                        for b in tuples:
                            okay, d = rtt.check_minor_comm_first(n, k, l, a, b)
                            assert okay, f"ordered n={n} {(k, l, a, b)}: {d}"
                            okay, d = rtt.check_minor_comm_second(n, k, l, a, b)
                            assert okay, f"reversed n={n} {(k, l, a, b)}: {d}"
            for a in tuples:
                for b in tuples:
                    okay, d = rtt.check_minor_entry_commutes(n, a, b)
                    assert okay, f"corollary n={n} {(a, b)}: {d}"
        report(f"4 minor exchange n={n} sizes 1-2 (all indices)", True)
        Algebra.get(n).trim_memos()
    rng = random.Random(2024)
    for _ in range(5):
        a = tuple(rng.sample(range(1, 5), 2))
        b = tuple(rng.sample(range(1, 5), 2))
        k, l = rng.randint(1, 4), rng.randint(1, 4)
        okay, d = rtt.check_minor_comm_first(4, k, l, a, b)
        assert okay, f"n=4 sample {(k, l, a, b)}: {d}"
        okay, d = rtt.check_minor_comm_second(4, k, l, a, b)
        assert okay, f"n=4 sample reversed {(k, l, a, b)}: {d}"
    report("4 minor exchange n=4 (random sample)", True)
    Algebra.get(4).trim_memos()


def test_criterion_05_commuting_family_and_center():
    """Coefficient family commutes for n <= 4; top level is central, n <= 3."""
    for n in (2, 3, 4):
        okay, detail = rtt.check_gt_commutativity(n)
        report(f"5 commuting coefficient family n={n}", okay, detail)
        Algebra.get(n).trim_memos()
    for n in (2, 3):
        okay, detail = rtt.check_center(n)
        report(f"5 central top coefficients n={n}", okay, detail)


def test_criterion_06_reduction_operators():
    """Exchange relations and iteration for the reduction operators at
    depth 4, n = 3 and 4; plus the exact three-minor identity at n = 3."""
    okay, detail = psi.check_psi_rtt(3, 1, 4)
    report("6 reduction-operator exchange n=3 k=1 K=4", okay, detail)
    Algebra.get(3).trim_memos()
    for k in (1, 2):
        okay, detail = psi.check_psi_rtt(4, k, 4)
        report(f"6 reduction-operator exchange n=4 k={k} K=4", okay, detail)
        Algebra.get(4).trim_memos()
    okay, detail = psi.check_psi_iteration(4, 1, 1, 4)
    report("6 iteration law n=4 (1,1) K=4", okay, detail)
    Algebra.get(4).trim_memos()
    okay, detail = psi.check_psi_det_identity(3, 1)
    report("6 determinant identity n=3 l=1", okay, detail)


def test_criterion_07_current_relations():
    """All current-form defining relations coefficientwise to depth 6 for
    n = 2, 3, every index pair and sign; zero modes are the classical
    generators."""
    K = 6
    for n in (2, 3):
        okay, detail = evaluation.check_zero_modes(n)
        report(f"7 zero modes n={n}", okay, detail)
        idx = range(1, n)
        for i, j in itertools.product(idx, idx):
            okay, d = evaluation.check_y1(n, i, j, K)
            assert okay, f"Y1 n={n} ({i},{j}): {d}"
            okay, d = evaluation.check_y4(n, i, j, K)
            assert okay, f"Y4 n={n} ({i},{j}): {d}"
            for s in (1, -1):
                okay, d = evaluation.check_y2(n, i, j, s, K)
                assert okay, f"Y2 n={n} ({i},{j},{s}): {d}"
                okay, d = evaluation.check_y2prime(n, i, j, s, K)
                assert okay, f"Y2' n={n} ({i},{j},{s}): {d}"
                okay, d = evaluation.check_y3(n, i, j, s, K)
                assert okay, f"Y3 n={n} ({i},{j},{s}): {d}"
            Algebra.get(n).trim_memos()
        for i, j in itertools.product(idx, idx):
            if i != j:
                for s in (1, -1):
                    okay, d = evaluation.check_y6_deg0(n, i, j, s)
                    assert okay, f"Y6 deg-0 n={n} ({i},{j},{s}): {d}"
        report(f"7 current relations n={n} K={K} (all pairs)", True)


def test_criterion_08_recursive_form():
    """Reduction-operator form of the currents matches the definitions
    at n = 3, depth 4."""
    for k in (1, 2):
        okay, detail = evaluation.recursive_form_check(3, k, 4)
        report(f"8 recursive current form n=3 k={k} K=4", okay, detail)


def test_criterion_09_t11_triple():
    """Three routes to the degree-one Cartan mode agree exactly at n = 3."""
    okay, detail = evaluation.t11_compare(3)
    report("9 degree-one Cartan mode, three routes, n=3", okay, detail)


def test_criterion_10_partial_fractions(sl2_defining, sl3_defining):
    """Residue form equals the direct expansion to depth 4 on the
    defining representations, n = 2 and 3, both signs, all levels."""
    for (rep, table) in (sl2_defining, sl3_defining):
        for k in range(1, rep.n):
            for sign in (1, -1):
                okay, d = spectra.check_partial_fractions(rep, table, k,
                                                          sign, 4)
                assert okay, f"n={rep.n} k={k} sign={sign}: {d}"
        report(f"10 residue form n={rep.n} (all levels, both signs)", True)


def test_criterion_11_deformed_relations(sl2_defining, sl2_tensor,
                                         sl3_defining):
    """Deformed relations mod hbar^8 at n = 2 (defining and tensor square)
    and mod hbar^6 at n = 3; classical limit; closed form at n = 2;
    composition route agrees mod hbar^6."""
    cases = [(sl2_defining, 8, "defining(2)"),
             (sl2_tensor, 8, "tensor square"),
             (sl3_defining, 6, "defining(3)")]
    for (rep, table), order, label in cases:
        images = phi.phi_images(rep, table, order)
        for law, idx, okay, detail in phi.verify_qg(images):
            assert okay, f"{label} {law}{idx}: {detail}"
        report(f"11 deformed relations mod hbar^{order} on {label}", True)
        if rep.n == 2:
            okay, detail = phi.sl2_closed_form_check(images)
            report(f"11 closed form on {label}", okay, detail)
        for k in range(1, rep.n):
            okay, detail = phi.compose_crosscheck(images, k)
            assert okay, f"{label} composition k={k}: {detail}"
        report(f"11 composition route on {label}", True)


def test_criterion_12_g_factorization():
    """The chosen G series satisfies both defining identities to order 12."""
    rep = factorization_check(*g_series(12))
    report("12 G-series factorization to order 12", rep.ok, str(rep))


def test_criterion_13_root_shuffle(sl3_defining):
    """Shuffling the stored root order leaves the images unchanged, n = 3."""
    rep, table = sl3_defining
    images = phi.phi_images(rep, table, 6)
    for seed in (1, 7):
        okay, detail = phi.root_shuffle_check(images, seed)
        assert okay, f"seed {seed}: {detail}"
    report("13 root-order invariance n=3", True)
