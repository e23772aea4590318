"""Rank-reduction operators built from bordered principal minors.

For a matrix function satisfying the exchange relations, the level-k
operator divides each bordered principal (k+1)x(k+1) minor by the principal
k x k minor (inverse on the left, both at argument shifted down by k/2).
Level 0 returns the matrix itself; levels iterate, and every level again
satisfies the exchange relations entrywise.  Both facts are checked here as
truncated-series identities.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from .scalar import HBAR, Q, ScalarPoly, sp_var
from .laurent import Double, Laurent, TruncationError
from .tmatrix import TMatrix, perm_sign, qminor
from .uea import Algebra, UEAElement


class LaurentMatrix:
    """Square matrix of Laurent series in one variable, with shift access."""

    def __init__(self, algebra: Algebra, var: str,
                 entries: List[List[Laurent]]):
        self.algebra = algebra
        self.var = var
        self.entries = entries
        self.size = len(entries)

    @classmethod
    def from_tmatrix(cls, T: TMatrix, var: str = "u") -> "LaurentMatrix":
        u = sp_var(var)
        ents = [[Laurent.from_poly(T.entry_at(i, j, u), var)
                 for j in range(1, T.n + 1)] for i in range(1, T.n + 1)]
        return cls(T.algebra, var, ents)

    def entry(self, i: int, j: int) -> Laurent:
        """1-indexed entry at the base argument."""
        return self.entries[i - 1][j - 1]

    def entry_shifted(self, i: int, j: int, s: ScalarPoly,
                      floor: Optional[int]) -> Laurent:
        return self.entry(i, j).subst_shift(s, floor)

    def min_floor(self) -> Optional[int]:
        floors = [e.lo for row in self.entries for e in row]
        if any(f is not None for f in floors):
            return min(f for f in floors if f is not None)
        return None


def qminor_matrix(M: LaurentMatrix, rows: Sequence[int], cols: Sequence[int],
                  shift: ScalarPoly, floor: Optional[int]) -> Laurent:
    """Quantum minor of a matrix of series, at base argument u + shift."""
    m = len(rows)
    if m == 0:
        return Laurent.one(M.algebra, M.var)
    out = Laurent(M.algebra, M.var, {}, None)
    for sigma in itertools.permutations(range(m)):
        prod = M.entry_shifted(rows[sigma[0]], cols[0], shift, floor)
        for j in range(1, m):
            prod = prod.mul(M.entry_shifted(rows[sigma[j]], cols[j],
                                            shift + HBAR * j, floor),
                            floor=floor)
        out = out + prod.scale(perm_sign(sigma))
    return out


def psi_step(M: LaurentMatrix, k: int, depth: int) -> LaurentMatrix:
    """Level-k reduction of a matrix function (k >= 1).

    Entries of the result are known down to roughly var^(-depth); the exact
    floor is recorded on each entry.
    """
    m = M.size - k
    if m < 1:
        raise ValueError("level too large for the matrix size")
    shift = HBAR * Q(-k, 2)
    head = tuple(range(1, k + 1))
    floor = -(depth + k + 1)
    den = qminor_matrix(M, head, head, shift, floor)
    den_inv = den.invert(depth + k + 1)
    ents = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, m + 1):
            num = qminor_matrix(M, head + (k + i,), head + (k + j,),
                                shift, floor)
            row.append(den_inv.mul(num))
        ents.append(row)
    return LaurentMatrix(M.algebra, M.var, ents)


def psi_operator(n: int, k: int, depth: int, var: str = "u") -> LaurentMatrix:
    """The level-k operator attached to the generator matrix of sl_n."""
    if not (0 <= k <= n - 2):
        raise ValueError(f"level {k} out of range for n={n}")
    M = LaurentMatrix.from_tmatrix(TMatrix.get(n), var)
    if k == 0:
        return M
    return psi_step(M, k, depth)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

CheckResult = Tuple[bool, str]


def _zero_report(diff, need_u: int, need_v: Optional[int] = None) -> CheckResult:
    if isinstance(diff, Double):
        if not diff.covers(need_u, need_v if need_v is not None else 0):
            raise TruncationError(
                f"window {diff.lo_u},{diff.lo_v} does not reach the "
                f"requested depth {need_u},{need_v}")
        if diff.known_zero():
            return True, ""
        key, val = diff.first_nonzero()
        return False, f"first nonzero at (u^{key[0]}, v^{key[1]}): {val}"
    if diff.lo is not None and diff.lo > -need_u:
        raise TruncationError(
            f"window floor {diff.lo} does not reach depth {need_u}")
    if diff.known_zero():
        return True, ""
    p, val = diff.first_nonzero()
    return False, f"first nonzero at power {p}: {val}"


def check_psi_zero_level(n: int) -> CheckResult:
    """Level 0 is the matrix itself, exactly."""
    T = TMatrix.get(n)
    M = psi_operator(n, 0, 1)
    u = sp_var("u")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            direct = Laurent.from_poly(T.entry_at(i, j, u), "u")
            if not (M.entry(i, j) - direct).known_zero():
                return False, f"entry ({i},{j}) differs"
    return True, ""


def check_psi_rtt(n: int, k: int, K: int) -> CheckResult:
    """Entrywise exchange relation for the level-k operator, to depth K."""
    psi_u = psi_operator(n, k, K + 1, "u")
    m = psi_u.size
    ents_u: Dict[Tuple[int, int], Double] = {}
    ents_v: Dict[Tuple[int, int], Double] = {}
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            e = psi_u.entry(i, j).truncate(-(K + 1))
            ents_u[(i, j)] = Double.from_u(e, "v")
            ents_v[(i, j)] = Double.from_v(e.rename("v"), "u")
    cache: Dict[Tuple, Double] = {}

    def prod(u_idx, v_idx, u_first):
        key = (u_idx, v_idx, u_first)
        got = cache.get(key)
        if got is None:
            if u_first:
                got = ents_u[u_idx].mul(ents_v[v_idx])
            else:
                got = ents_v[v_idx].mul(ents_u[u_idx])
            cache[key] = got
        return got

    for a, b, c, d in itertools.product(range(1, m + 1), repeat=4):
        comm = prod((a, b), (c, d), True) - prod((a, b), (c, d), False)
        lhs = comm.shift_u(1) - comm.shift_v(1)
        rhs = (prod((a, d), (c, b), True)
               - prod((c, b), (a, d), False)).scale(HBAR)
        ok, detail = _zero_report(lhs - rhs, K, K)
        if not ok:
            return False, f"(a,b,c,d)={(a, b, c, d)}: {detail}"
    return True, ""


def check_psi_iteration(n: int, k: int, l: int, K: int) -> CheckResult:
    """Level k of level l equals level k+l, entrywise to depth K."""
    if k + l > n - 2:
        raise ValueError("iterated level out of range")
    psi_l = psi_operator(n, l, K + 2)
    lhs = psi_step(psi_l, k, K + 2) if k else psi_l
    rhs = psi_operator(n, k + l, K + 2)
    for i in range(1, lhs.size + 1):
        for j in range(1, lhs.size + 1):
            ok, detail = _zero_report(lhs.entry(i, j) - rhs.entry(i, j), K)
            if not ok:
                return False, f"entry ({i},{j}): {detail}"
    return True, ""


def check_psi_det_identity(n: int, l: int) -> CheckResult:
    """Exact three-minor identity behind the iteration law.

    minor(1..l+1,a | 1..l+1,b)(u) * minor(1..l)(u+hbar)
      = minor(1..l+1)(u) * minor(1..l,a | 1..l,b)(u+hbar)
      - minor(1..l,a | 1..l+1)(u) * minor(1..l+1 | 1..l,b)(u+hbar)
    for a, b >= l+2, as polynomials.
    """
    T = TMatrix.get(n)
    u = sp_var("u")
    uh = u + HBAR
    head = tuple(range(1, l + 1))
    head1 = tuple(range(1, l + 2))
    for a in range(l + 2, n + 1):
        for b in range(l + 2, n + 1):
            lhs = qminor(T, head1 + (a,), head1 + (b,), u) * \
                qminor(T, head, head, uh)
            rhs = qminor(T, head1, head1, u) * \
                qminor(T, head + (a,), head + (b,), uh) - \
                qminor(T, head + (a,), head1, u) * \
                qminor(T, head1, head + (b,), uh)
            if lhs != rhs:
                return False, f"fails at borders (a,b)=({a},{b})"
    return True, ""
