"""Exchange-relation checks on tensor powers.

The shifted generator matrix satisfies the Yang R-matrix exchange relation;
this module builds both sides of that relation (and its multi-factor,
antisymmetrized and entrywise variants) as elements of
End((C^n)^{tensor N}) tensor U and reports the residual, which must vanish
identically in all spectral variables.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from .scalar import HBAR, Q, ScalarPoly, sp_var
from .tmatrix import TMatrix, perm_sign, principal_minor, p_coefficients, qminor
from .uea import Algebra, UEAElement

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]

SPECTRAL_VARS = ("u", "v", "w", "x")


class TensorOp:
    """Sparse operator on (C^n)^{tensor N} with UEA-valued entries."""

    __slots__ = ("n", "legs", "algebra", "entries")

    def __init__(self, n: int, legs: int, algebra: Algebra,
                 entries: Dict[Key, UEAElement]):
        self.n = n
        self.legs = legs
        self.algebra = algebra
        self.entries = {k: v for k, v in entries.items() if not v.is_zero}

    @classmethod
    def identity(cls, n: int, legs: int, algebra: Algebra) -> "TensorOp":
        one = algebra.one()
        ents = {(idx, idx): one
                for idx in itertools.product(range(n), repeat=legs)}
        return cls(n, legs, algebra, ents)

    def __add__(self, other: "TensorOp") -> "TensorOp":
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k)
            out[k] = v if s is None else s + v
        return TensorOp(self.n, self.legs, self.algebra, out)

    def __sub__(self, other: "TensorOp") -> "TensorOp":
        return self + other.scale(-1)

    def scale(self, c) -> "TensorOp":
        return TensorOp(self.n, self.legs, self.algebra,
                        {k: v.scale(c) for k, v in self.entries.items()})

    def __mul__(self, other: "TensorOp") -> "TensorOp":
        by_row: Dict[Tuple[int, ...], List[Tuple[Tuple[int, ...], UEAElement]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: Dict[Key, UEAElement] = {}
        for (r, m), v1 in self.entries.items():
            for c, v2 in by_row.get(m, ()):  # middle index must match
                prod = v1 * v2
                if prod.is_zero:
                    continue
                key = (r, c)
                s = out.get(key)
                out[key] = prod if s is None else s + prod
        return TensorOp(self.n, self.legs, self.algebra, out)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def first_nonzero(self) -> Optional[Tuple[Key, UEAElement]]:
        if not self.entries:
            return None
        key = min(self.entries)
        return key, self.entries[key]


def r_pair(n: int, legs: int, i: int, j: int, spectral: ScalarPoly,
           algebra: Algebra) -> TensorOp:
    """Yang R-matrix spectral*Id + hbar*P acting on legs i, j (0-indexed)."""
    ents: Dict[Key, UEAElement] = {}
    spec = algebra.scalar(spectral)
    hbar1 = algebra.scalar(HBAR)
    for idx in itertools.product(range(n), repeat=legs):
        ents[(idx, idx)] = spec
        swapped = list(idx)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        key = (tuple(swapped), idx)
        s = ents.get(key)
        ents[key] = hbar1 if s is None else s + hbar1
    return TensorOp(n, legs, algebra, ents)


def t_leg(T: TMatrix, legs: int, leg: int, arg: ScalarPoly) -> TensorOp:
    """The shifted generator matrix acting on one tensor leg."""
    n = T.n
    ents: Dict[Key, UEAElement] = {}
    for col in itertools.product(range(n), repeat=legs):
        for a in range(n):
            row = col[:leg] + (a,) + col[leg + 1:]
            val = T.entry_at(a + 1, col[leg] + 1, arg)
            if not val.is_zero:
                ents[(row, col)] = val
    return TensorOp(n, legs, T.algebra, ents)


def antisymmetrizer(n: int, legs: int, algebra: Algebra) -> TensorOp:
    ents: Dict[Key, UEAElement] = {}
    one = algebra.one()
    for col in itertools.product(range(n), repeat=legs):
        for sigma in itertools.permutations(range(legs)):
            row = tuple(col[sigma[i]] for i in range(legs))
            sgn = perm_sign(sigma)
            val = one.scale(sgn)
            s = ents.get((row, col))
            ents[(row, col)] = val if s is None else s + val
    return TensorOp(n, legs, algebra, ents)


def r_multi(n: int, legs: int, args: Sequence[ScalarPoly], algebra: Algebra,
            reversed_order: bool = False) -> TensorOp:
    """Ordered product of pair R-matrices over all legs.

    The default grouping multiplies, left to right, the blocks for
    i = legs-1 down to 1, each block running R_{i,legs} ... R_{i,i+1}.
    The reversed grouping is the mirror-ordered product; the two agree by
    the Yang-Baxter equation and checking both guards the bookkeeping.
    """
    factors: List[Tuple[int, int]] = []
    if not reversed_order:
        for i in range(legs - 2, -1, -1):
            for j in range(legs - 1, i, -1):
                factors.append((i, j))
    else:
        for i in range(legs - 1):
            for j in range(i + 1, legs):
                factors.append((i, j))
    out = TensorOp.identity(n, legs, algebra)
    for i, j in factors:
        out = out * r_pair(n, legs, i, j, args[i] - args[j], algebra)
    return out


# ---------------------------------------------------------------------------
# law checks: each returns (ok, detail)
# ---------------------------------------------------------------------------

CheckResult = Tuple[bool, str]


def _residual_report(diff) -> CheckResult:
    if diff.is_zero:
        return True, ""
    if isinstance(diff, TensorOp):
        key, val = diff.first_nonzero()
        return False, f"entry {key}: {val}"
    return False, str(diff)


def check_rtt_pairwise(n: int, corrupt: bool = False) -> CheckResult:
    T = _maybe_corrupt(TMatrix.get(n), corrupt)
    A = T.algebra
    u, v = sp_var("u"), sp_var("v")
    R = r_pair(n, 2, 0, 1, u - v, A)
    T1 = t_leg(T, 2, 0, u)
    T2 = t_leg(T, 2, 1, v)
    return _residual_report(R * T1 * T2 - T2 * T1 * R)


def check_rtt_entrywise(n: int, ij_kl: Optional[Tuple[int, int, int, int]] = None
                        ) -> CheckResult:
    """(u-v)[T_ij(u), T_kl(v)] = hbar (T_kj(v)T_il(u) - T_kj(u)T_il(v))."""
    T = TMatrix.get(n)
    u, v = sp_var("u"), sp_var("v")
    quads = ([ij_kl] if ij_kl else
             itertools.product(range(1, n + 1), repeat=4))
    for (i, j, k, l) in quads:
        lhs = (T.entry_at(i, j, u) * T.entry_at(k, l, v)
               - T.entry_at(k, l, v) * T.entry_at(i, j, u)).scale(u - v)
        rhs = (T.entry_at(k, j, v) * T.entry_at(i, l, u)
               - T.entry_at(k, j, u) * T.entry_at(i, l, v)).scale(HBAR)
        if lhs != rhs:
            return False, f"entry relation fails at (i,j,k,l)={(i, j, k, l)}"
    return True, ""


def check_rtt_multi(n: int, legs: int) -> CheckResult:
    T = TMatrix.get(n)
    A = T.algebra
    args = [sp_var(SPECTRAL_VARS[i]) for i in range(legs)]
    R = r_multi(n, legs, args, A)
    if not (R - r_multi(n, legs, args, A, reversed_order=True)).is_zero:
        return False, "the two orderings of the R product disagree"
    lhs = R
    for i in range(legs):
        lhs = lhs * t_leg(T, legs, i, args[i])
    rhs = TensorOp.identity(n, legs, A)
    for i in range(legs - 1, -1, -1):
        rhs = rhs * t_leg(T, legs, i, args[i])
    rhs = rhs * R
    return _residual_report(lhs - rhs)


def check_antisym_exchange(n: int, legs: int) -> CheckResult:
    """A_N T_1(u) ... T_N(u + hbar(N-1)) = reversed product times A_N."""
    T = TMatrix.get(n)
    A = T.algebra
    u = sp_var("u")
    args = [u + HBAR * i for i in range(legs)]
    anti = antisymmetrizer(n, legs, A)
    lhs = anti
    for i in range(legs):
        lhs = lhs * t_leg(T, legs, i, args[i])
    rhs = TensorOp.identity(n, legs, A)
    for i in range(legs - 1, -1, -1):
        rhs = rhs * t_leg(T, legs, i, args[i])
    rhs = rhs * anti
    return _residual_report(lhs - rhs)


def antisym_scalar(legs: int) -> ScalarPoly:
    """The scalar relating the laddered R product to the antisymmetrizer."""
    c = ScalarPoly.const((-1) ** (legs * (legs - 1) // 2))
    c = c * HBAR ** (legs * (legs - 1) // 2)
    fact = 1
    for m in range(1, legs):
        f = 1
        for i in range(2, m + 1):
            f *= i
        fact *= f
    return c * Q(fact)


def check_r_specialization(n: int, legs: int) -> CheckResult:
    """On the ladder u_i = u + hbar(i-1), the R product collapses to a
    scalar multiple of the antisymmetrizer."""
    A = Algebra.get(n)
    u = sp_var("u")
    args = [u + HBAR * i for i in range(legs)]
    R = r_multi(n, legs, args, A)
    expected = antisymmetrizer(n, legs, A).scale(antisym_scalar(legs))
    return _residual_report(R - expected)


def _maybe_corrupt(T: TMatrix, corrupt: bool) -> TMatrix:
    if not corrupt:
        return T
    bad = TMatrix(T.n)
    bad.entries[0][1] = bad.entries[0][1] + bad.algebra.h(1)
    return bad


# ---------------------------------------------------------------------------
# minor commutation
# ---------------------------------------------------------------------------

def _replace(t: Sequence[int], i: int, x: int) -> Tuple[int, ...]:
    return tuple(t[:i]) + (x,) + tuple(t[i + 1:])


def check_minor_comm_first(n: int, k: int, l: int, rows: Sequence[int],
                           cols: Sequence[int]) -> CheckResult:
    """(u-v)[T_kl(u), minor(v)] as a sum of single-entry replacements."""
    T = TMatrix.get(n)
    u, v = sp_var("u"), sp_var("v")
    N = len(rows)
    minor = qminor(T, rows, cols, v)
    tkl = T.entry_at(k, l, u)
    lhs = (tkl * minor - minor * tkl).scale(u - v)
    rhs = T.algebra.zero()
    for i in range(N):
        rhs = rhs + qminor(T, rows, _replace(cols, i, l), v) * \
            T.entry_at(k, cols[i], u)
        rhs = rhs - T.entry_at(rows[i], l, u) * \
            qminor(T, _replace(rows, i, k), cols, v)
    rhs = rhs.scale(HBAR)
    diff = lhs - rhs
    return _residual_report(diff)


def check_minor_comm_second(n: int, k: int, l: int, rows: Sequence[int],
                            cols: Sequence[int]) -> CheckResult:
    """(u-v-hbar(N-1))[T_kl(u), minor(v)], products in the other order."""
    T = TMatrix.get(n)
    u, v = sp_var("u"), sp_var("v")
    N = len(rows)
    minor = qminor(T, rows, cols, v)
    tkl = T.entry_at(k, l, u)
    lhs = (tkl * minor - minor * tkl).scale(u - v - HBAR * (N - 1))
    rhs = T.algebra.zero()
    for i in range(N):
        rhs = rhs + T.entry_at(k, cols[i], u) * \
            qminor(T, rows, _replace(cols, i, l), v)
        rhs = rhs - qminor(T, _replace(rows, i, k), cols, v) * \
            T.entry_at(rows[i], l, u)
    rhs = rhs.scale(HBAR)
    return _residual_report(lhs - rhs)


def check_minor_entry_commutes(n: int, rows: Sequence[int],
                               cols: Sequence[int]) -> CheckResult:
    """Entries taken from the minor's own rows and columns commute with it."""
    T = TMatrix.get(n)
    u, v = sp_var("u"), sp_var("v")
    minor = qminor(T, rows, cols, v)
    for a in rows:
        for b in cols:
            t = T.entry_at(a, b, u)
            if t * minor != minor * t:
                return False, f"entry ({a},{b}) does not commute"
    return True, ""


# ---------------------------------------------------------------------------
# the commuting coefficient family and the center
# ---------------------------------------------------------------------------

def gt_family(n: int) -> List[Tuple[int, int, UEAElement]]:
    """All principal-minor coefficients (level, power, element)."""
    T = TMatrix.get(n)
    out = []
    for k in range(1, n + 1):
        for j, c in enumerate(p_coefficients(T, k)):
            out.append((k, j, c))
    return out


def check_gt_commutativity(n: int) -> CheckResult:
    fam = gt_family(n)
    for a in range(len(fam)):
        for b in range(a + 1, len(fam)):
            ka, ja, ca = fam[a]
            kb, jb, cb = fam[b]
            if ca * cb != cb * ca:
                return False, f"[c({ka},{ja}), c({kb},{jb})] != 0"
    return True, ""


def check_center(n: int) -> CheckResult:
    """Top-level coefficients commute with every generator."""
    T = TMatrix.get(n)
    A = T.algebra
    top = p_coefficients(T, n)
    for j, c in enumerate(top):
        for g in range(A.gen_count):
            gen = A.gen(g)
            if c * gen != gen * c:
                return False, f"[c({n},{j}), {A.gen_name(g)}] != 0"
    return True, ""
