"""The matrix of generators, its u-shifted form, and quantum minors.

T has coweight differences on the diagonal and matrix units off it, so its
trace vanishes; T(u) = u*Id - hbar*T.  Quantum minors are alternating sums
of entry products at arguments staggered by hbar, computed here directly
from that sum; the four one-row/one-column expansions serve as independent
evaluation strategies for cross-checking.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Sequence, Tuple

from .scalar import HBAR, Q, ScalarPoly, sp_var
from .uea import Algebra, UEAElement

U = sp_var("u")


def perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


class TMatrix:
    """Generator matrix for a fixed n, with cached u-independent entries."""

    _instances: Dict[int, "TMatrix"] = {}

    @classmethod
    def get(cls, n: int) -> "TMatrix":
        inst = cls._instances.get(n)
        if inst is None:
            inst = cls(n)
            cls._instances[n] = inst
        return inst

    def __init__(self, n: int):
        self.n = n
        self.algebra = Algebra.get(n)
        A = self.algebra
        self.entries = [[A.e(i, j) if i != j
                         else A.coweight(i) - A.coweight(i - 1)
                         for j in range(1, n + 1)] for i in range(1, n + 1)]
        self._minor_cache: Dict[Tuple, UEAElement] = {}

    def entry(self, i: int, j: int) -> UEAElement:
        """Constant entry T_ij (1-indexed)."""
        return self.entries[i - 1][j - 1]

    def entry_at(self, i: int, j: int, arg: ScalarPoly) -> UEAElement:
        """Entry of the shifted matrix: arg*delta_ij - hbar*T_ij."""
        A = self.algebra
        out = self.entry(i, j).scale(-HBAR)
        if i == j:
            out = out + A.scalar(arg)
        return out

    def trace(self) -> UEAElement:
        out = self.algebra.zero()
        for i in range(1, self.n + 1):
            out = out + self.entry(i, i)
        return out


def qminor(T: TMatrix, rows: Sequence[int], cols: Sequence[int],
           base: ScalarPoly) -> UEAElement:
    """Quantum minor at base argument, as the direct alternating sum.

    The j-th column factor is evaluated at base + hbar*(j-1); repeated
    row or column indices are allowed and give zero by antisymmetry.
    """
    m = len(rows)
    if m != len(cols):
        raise ValueError("row and column tuples must have equal length")
    A = T.algebra
    if m == 0:
        return A.one()
    key = (tuple(rows), tuple(cols), tuple(sorted(base.terms.items())))
    cached = T._minor_cache.get(key)
    if cached is not None:
        return cached
    args = [base + HBAR * j for j in range(m)]
    out = A.zero()
    for sigma in itertools.permutations(range(m)):
        prod = T.entry_at(rows[sigma[0]], cols[0], args[0])
        for j in range(1, m):
            prod = prod * T.entry_at(rows[sigma[j]], cols[j], args[j])
        out = out + prod.scale(perm_sign(sigma))
    T._minor_cache[key] = out
    return out


def qminor_row_form(T: TMatrix, rows: Sequence[int], cols: Sequence[int],
                    base: ScalarPoly) -> UEAElement:
    """Same minor as a sum over column permutations (descending arguments)."""
    m = len(rows)
    A = T.algebra
    if m == 0:
        return A.one()
    args = [base + HBAR * j for j in range(m)]
    out = A.zero()
    for sigma in itertools.permutations(range(m)):
        prod = T.entry_at(rows[0], cols[sigma[0]], args[m - 1])
        for j in range(1, m):
            prod = prod * T.entry_at(rows[j], cols[sigma[j]], args[m - 1 - j])
        out = out + prod.scale(perm_sign(sigma))
    return out


def _drop(t: Sequence[int], i: int) -> Tuple[int, ...]:
    return tuple(t[:i]) + tuple(t[i + 1:])


def qminor_expanded(T: TMatrix, rows: Sequence[int], cols: Sequence[int],
                    base: ScalarPoly, mode: str) -> UEAElement:
    """One-row/one-column expansions of the minor.

    mode: 'last-col'  minor(u) * entry(u + hbar(N-1)), dropping b_N
          'last-row'  minor(u + hbar) * entry(u), dropping a_N
          'first-col' entry(u) * minor(u + hbar), dropping b_1
          'first-row' entry(u + hbar(N-1)) * minor(u), dropping a_1
    """
    m = len(rows)
    A = T.algebra
    if m == 0:
        return A.one()
    out = A.zero()
    if mode == "last-col":
        for k in range(m):
            piece = qminor(T, _drop(rows, k), _drop(cols, m - 1), base) * \
                T.entry_at(rows[k], cols[m - 1], base + HBAR * (m - 1))
            out = out + piece.scale((-1) ** (m - 1 - k))
    elif mode == "last-row":
        for k in range(m):
            piece = qminor(T, _drop(rows, m - 1), _drop(cols, k), base + HBAR) * \
                T.entry_at(rows[m - 1], cols[k], base)
            out = out + piece.scale((-1) ** (m - 1 - k))
    elif mode == "first-col":
        for k in range(m):
            piece = T.entry_at(rows[k], cols[0], base) * \
                qminor(T, _drop(rows, k), _drop(cols, 0), base + HBAR)
            out = out + piece.scale((-1) ** k)
    elif mode == "first-row":
        for k in range(m):
            piece = T.entry_at(rows[0], cols[k], base + HBAR * (m - 1)) * \
                qminor(T, _drop(rows, 0), _drop(cols, k), base)
            out = out + piece.scale((-1) ** k)
    else:
        raise ValueError(f"unknown expansion mode {mode!r}")
    return out


EXPANSION_MODES = ("last-col", "last-row", "first-col", "first-row")


def principal_minor(T: TMatrix, k: int, var: str = "u") -> UEAElement:
    """The monic degree-k principal minor with the symmetric argument shift."""
    if not (0 <= k <= T.n):
        raise ValueError(f"principal minor level {k} out of range")
    if k == 0:
        return T.algebra.one()
    base = sp_var(var) - HBAR * Q(k - 1, 2)
    return qminor(T, tuple(range(1, k + 1)), tuple(range(1, k + 1)), base)


def qdet(T: TMatrix, var: str = "u") -> UEAElement:
    """Quantum determinant; asserts the column and row forms agree."""
    n = T.n
    idx = tuple(range(1, n + 1))
    col = qminor(T, idx, idx, sp_var(var))
    row = qminor_row_form(T, idx, idx, sp_var(var))
    if col != row:
        raise AssertionError("column and row quantum determinants differ")
    return col


def qdet_mu_form(T: TMatrix, mu: Sequence[int], var: str = "u") -> UEAElement:
    """Column determinant along an arbitrary column ordering mu."""
    n = T.n
    base = sp_var(var)
    args = [base + HBAR * j for j in range(n)]
    A = T.algebra
    out = A.zero()
    for sigma in itertools.permutations(range(1, n + 1)):
        prod = T.entry_at(sigma[0], mu[0], args[0])
        for j in range(1, n):
            prod = prod * T.entry_at(sigma[j], mu[j], args[j])
        out = out + prod.scale(perm_sign(sigma))
    return out.scale(perm_sign(mu))


def p_coefficients(T: TMatrix, k: int, var: str = "u") -> List[UEAElement]:
    """Coefficients of the principal minor tower, with hbar weight removed.

    principal_minor(k) = u^k + sum_j coeff[j] * hbar^(k-j) * u^j; the
    returned elements are hbar-free.
    """
    P = principal_minor(T, k, var)
    top = P.extract(var, k)
    if top != T.algebra.one():
        raise AssertionError(f"principal minor of level {k} is not monic")
    out = []
    for j in range(k):
        out.append(P.extract(var, j).hbar_div(k - j))
    return out
