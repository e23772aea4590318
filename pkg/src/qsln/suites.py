"""Named verification suites dispatching into the law-check modules.

A suite is a deterministic list of (law id, indices, callable); results are
collected in execution order, failures are data rather than exceptions,
and the law ordering within "all" goes from cheapest to most expensive so
problems surface early.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from . import evaluation, phi, psi, rtt, spectra
from .report import LawResult, SuiteReport
from .scalar import factorization_check, g_series
from .tmatrix import (EXPANSION_MODES, TMatrix, qminor, qminor_expanded,
                      qminor_row_form)
from .scalar import HBAR, Q, sp_var

SUITES = ("rtt", "minors", "center", "psi", "yangian",
          "partialfractions", "phi", "gseries", "all")

PHI_NOTE = ("finite-representation checks certify the homomorphism "
            "relations mod hbar^N on the chosen representations; they do "
            "not by themselves certify the abstract isomorphism claim")


@dataclass
class SuiteConfig:
    suite: str = "all"
    n: int = 3
    laurent_depth: int = 6
    hbar_order: int = 6
    rep: str = "defining"
    fmt: str = "text"
    seed: int = 0
    corrupt_t: bool = False  # test hook: breaks one generator-matrix entry

    def validate(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}")
        if not 2 <= self.n <= 4:
            raise ValueError("n must be 2, 3 or 4")
        if self.laurent_depth < 2:
            raise ValueError("laurent depth must be at least 2")
        if self.hbar_order < 2:
            raise ValueError("hbar order must be at least 2")
        if self.rep not in ("defining", "tensor2"):
            raise ValueError(f"unknown representation {self.rep!r}")
        if self.rep == "tensor2" and self.n != 2:
            raise ValueError("the tensor-square representation needs n = 2")
        if self.fmt not in ("text", "json"):
            raise ValueError(f"unknown format {self.fmt!r}")

    def to_dict(self) -> Dict:
        return {"suite": self.suite, "n": self.n,
                "laurent_depth": self.laurent_depth,
                "hbar_order": self.hbar_order, "rep": self.rep,
                "seed": self.seed}


Law = Tuple[str, Tuple, Callable[[], Tuple[bool, str]]]


def _rep_for(cfg: SuiteConfig) -> spectra.Rep:
    if cfg.rep == "tensor2":
        base = spectra.Rep.defining(2)
        return spectra.Rep.tensor(base, base)
    return spectra.Rep.defining(cfg.n)


def _laws_gseries(cfg: SuiteConfig) -> List[Law]:
    def check(order):
        def run():
            rep = factorization_check(*g_series(order))
            return rep.ok, "" if rep.ok else str(rep)
        return run
    return [("gseries.factorization", (order,), check(order))
            for order in range(1, 13)]


def _laws_rtt(cfg: SuiteConfig) -> List[Law]:
    n = cfg.n
    laws: List[Law] = [
        ("rtt.pairwise", (n,),
         lambda: rtt.check_rtt_pairwise(n, corrupt=cfg.corrupt_t)),
        ("rtt.entrywise", (n,), lambda: rtt.check_rtt_entrywise(n)),
    ]
    legs_max = 3 if n <= 3 else 2
    for legs in range(2, legs_max + 1):
        laws.append(("rtt.multi", (n, legs),
                     lambda legs=legs: rtt.check_rtt_multi(n, legs)))
    for legs in (2, 3):
        laws.append(("rtt.antisym", (n, legs),
                     lambda legs=legs: rtt.check_antisym_exchange(n, legs)))
        laws.append(("rtt.scalar", (legs,),
                     lambda legs=legs: rtt.check_r_specialization(n, legs)))
    return laws


def _laws_minors(cfg: SuiteConfig) -> List[Law]:
    n = cfg.n
    rng = random.Random(cfg.seed)
    laws: List[Law] = []

    def expansions(rows, cols, shift_num):
        def run():
            T = TMatrix.get(n)
            base = sp_var("u") + HBAR * Q(shift_num, 2)
            direct = qminor(T, rows, cols, base)
            if qminor_row_form(T, rows, cols, base) != direct:
                return False, "row form differs"
            for mode in EXPANSION_MODES:
                if qminor_expanded(T, rows, cols, base, mode) != direct:
                    return False, f"{mode} expansion differs"
            return True, ""
        return run

    for _ in range(3):
        m = rng.randint(1, min(3, n))
        rows = tuple(rng.randint(1, n) for _ in range(m))
        cols = tuple(rng.randint(1, n) for _ in range(m))
        laws.append(("minor.expansions", rows + cols,
                     expansions(rows, cols, rng.randint(-2, 2))))

    if n <= 3:
        quads = [(k, l, a, b)
                 for k in range(1, n + 1) for l in range(1, n + 1)
                 for a in itertools.product(range(1, n + 1), repeat=2)
                 for b in itertools.product(range(1, n + 1), repeat=2)]
    else:
        quads = []
        for _ in range(6):
            quads.append((rng.randint(1, n), rng.randint(1, n),
                          tuple(rng.sample(range(1, n + 1), 2)),
                          tuple(rng.sample(range(1, n + 1), 2))))
    first_fail: Dict[str, str] = {}

    def sweep(name, checker):
        def run():
            for (k, l, a, b) in quads:
                okay, detail = checker(n, k, l, a, b)
                if not okay:
                    return False, f"(k,l,a,b)=({k},{l},{a},{b}): {detail}"
            return True, ""
        return run

    laws.append(("minor.exchange-ordered", (n, len(quads)),
                 sweep("first", rtt.check_minor_comm_first)))
    laws.append(("minor.exchange-reversed", (n, len(quads)),
                 sweep("second", rtt.check_minor_comm_second)))

    def entries_commute():
        for size in (1, 2):
            for rows in itertools.combinations(range(1, n + 1), size):
                for cols in itertools.combinations(range(1, n + 1), size):
                    okay, detail = rtt.check_minor_entry_commutes(n, rows, cols)
                    if not okay:
                        return False, f"{rows}x{cols}: {detail}"
        return True, ""

    laws.append(("minor.own-entries-commute", (n,), entries_commute))
    return laws


def _laws_center(cfg: SuiteConfig) -> List[Law]:
    n = cfg.n
    laws: List[Law] = [
        ("center.family-commutes", (n,), lambda: rtt.check_gt_commutativity(n)),
    ]
    nc = min(n, 3)
    laws.append(("center.top-coefficients-central", (nc,),
                 lambda: rtt.check_center(nc)))
    return laws


def _laws_psi(cfg: SuiteConfig) -> List[Law]:
    n, K = cfg.n, cfg.laurent_depth
    laws: List[Law] = [
        ("psi.level-zero", (n,), lambda: psi.check_psi_zero_level(n)),
    ]
    for k in range(1, min(2, n - 2) + 1):
        laws.append(("psi.rtt", (n, k, K),
                     lambda k=k: psi.check_psi_rtt(n, k, K)))
    for k, l in ((1, 1), (1, 2), (2, 1)):
        if 1 <= k and 1 <= l and k + l <= n - 2:
            laws.append(("psi.iteration", (n, k, l, K),
                         lambda k=k, l=l: psi.check_psi_iteration(n, k, l, K)))
    if n >= 3:
        laws.append(("psi.det-identity", (n, 1),
                     lambda: psi.check_psi_det_identity(n, 1)))
    return laws


def _laws_yangian(cfg: SuiteConfig) -> List[Law]:
    n, K = cfg.n, cfg.laurent_depth
    laws: List[Law] = [
        ("yangian.zero-modes", (n,), lambda: evaluation.check_zero_modes(n)),
    ]
    idx = range(1, n)
    for i, j in itertools.product(idx, idx):
        laws.append(("yangian.Y1cur", (i, j),
                     lambda i=i, j=j: evaluation.check_y1(n, i, j, K)))
    for i, j in itertools.product(idx, idx):
        for s in (1, -1):
            laws.append(("yangian.Y2cur", (i, j, s),
                         lambda i=i, j=j, s=s: evaluation.check_y2(n, i, j, s, K)))
            laws.append(("yangian.Y2prime", (i, j, s),
                         lambda i=i, j=j, s=s:
                         evaluation.check_y2prime(n, i, j, s, K)))
            laws.append(("yangian.Y3cur", (i, j, s),
                         lambda i=i, j=j, s=s: evaluation.check_y3(n, i, j, s, K)))
    for i, j in itertools.product(idx, idx):
        laws.append(("yangian.Y4cur", (i, j),
                     lambda i=i, j=j: evaluation.check_y4(n, i, j, K)))
    for i, j in itertools.product(idx, idx):
        if i == j:
            continue
        for s in (1, -1):
            laws.append(("yangian.Y6deg0", (i, j, s),
                         lambda i=i, j=j, s=s:
                         evaluation.check_y6_deg0(n, i, j, s)))
    for i, j in itertools.product(idx, idx):
        if abs(i - j) == 1:
            # the positive-degree Serre family follows from the other laws
            # plus its degree-zero case; recorded, not recomputed
            laws.append(("yangian.Y6full", (i, j),
                         lambda: ("implied", "follows from the degree-0 case")))
    for k in range(1, n):
        laws.append(("yangian.recursive-form", (k,),
                     lambda k=k: evaluation.recursive_form_check(n, k, 4)))
    laws.append(("yangian.t11-triple", (n,),
                 lambda: evaluation.t11_compare(n)))
    return laws


def _laws_partialfractions(cfg: SuiteConfig) -> List[Law]:
    rep = _rep_for(cfg)
    table = spectra.SpectrumTable.build(rep)
    K = cfg.laurent_depth
    laws: List[Law] = []
    for k in range(1, rep.n):
        for s in (1, -1):
            laws.append(
                ("partialfractions.residues", (k, s, K),
                 lambda k=k, s=s:
                 spectra.check_partial_fractions(rep, table, k, s, K)))
    return laws


def _laws_phi(cfg: SuiteConfig) -> List[Law]:
    rep = _rep_for(cfg)
    table = spectra.SpectrumTable.build(rep)
    images = phi.phi_images(rep, table, cfg.hbar_order)
    laws: List[Law] = []

    def qg_all():
        results = phi.verify_qg(images)
        for law, idx_, okay, detail in results:
            if not okay:
                return False, f"{law}{idx_}: {detail}"
        return True, ""

    laws.append(("phi.relations", (cfg.n, cfg.hbar_order), qg_all))
    if cfg.n == 2:
        laws.append(("phi.sl2-closed-form", (cfg.rep,),
                     lambda: phi.sl2_closed_form_check(images)))
    for k in range(1, cfg.n):
        laws.append(("phi.compose", (k,),
                     lambda k=k: phi.compose_crosscheck(images, k)))
    laws.append(("phi.root-shuffle", (cfg.seed,),
                 lambda: phi.root_shuffle_check(images, cfg.seed)))
    return laws


_BUILDERS = {
    "gseries": _laws_gseries,
    "rtt": _laws_rtt,
    "minors": _laws_minors,
    "center": _laws_center,
    "psi": _laws_psi,
    "yangian": _laws_yangian,
    "partialfractions": _laws_partialfractions,
    "phi": _laws_phi,
}

# cheapest first, so failures surface early in the combined run
_ALL_ORDER = ("gseries", "rtt", "minors", "center", "psi",
              "partialfractions", "yangian", "phi")


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    from .uea import Algebra
    cfg.validate()
    names = _ALL_ORDER if cfg.suite == "all" else (cfg.suite,)
    report = SuiteReport(config=cfg.to_dict())
    for name in names:
        for law, indices, fn in _BUILDERS[name](cfg):
            t0 = time.perf_counter()
            try:
                okay, detail = fn()
                if okay is True:
                    status = "pass"
                elif okay is False:
                    status = "fail"
                else:
                    status = okay  # e.g. "implied"
            except Exception as exc:  # law failures are data, not crashes
                status = "fail"
                detail = f"{type(exc).__name__}: {exc}"
            ms = (time.perf_counter() - t0) * 1000.0
            report.laws.append(LawResult(law, indices, status, detail, ms))
            # product memos from one big law rarely help the next one
            Algebra.get(cfg.n).trim_memos()
    if cfg.suite in ("phi", "all"):
        report.notes.append(PHI_NOTE)
    return report
