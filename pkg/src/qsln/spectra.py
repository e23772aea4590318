"""Exact finite-dimensional representations and joint spectra.

Representations map generators to rational matrices and are validated
against the defining relations on construction.  The commuting family of
principal-minor coefficients is diagonalized simultaneously by recursive
splitting over exact rational eigenvalues; per eigenvector, each level-k
minor then factors as a product of k distinct linear factors whose roots
are rational multiples of hbar.  That root data drives the residue-form
cross-check of the raising/lowering currents.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from .scalar import (HBAR, IncompleteSplittingError, Q, QONE, QZERO,
                     ScalarPoly, Series, rational_roots, sp_var)
from .laurent import Laurent
from .rtt import gt_family
from .tmatrix import TMatrix, principal_minor, qminor
from .uea import Algebra, UEAElement

Mat = Tuple[Tuple[Q, ...], ...]


class NonSemisimpleError(ArithmeticError):
    """A family member does not act semisimply."""


class NonCommutingFamilyError(ArithmeticError):
    """Simultaneous diagonalization requires a commuting family."""


# ---------------------------------------------------------------------------
# exact rational matrices
# ---------------------------------------------------------------------------

def mat(rows) -> Mat:
    return tuple(tuple(Q(x) for x in row) for row in rows)


def mat_zero(d: int) -> Mat:
    return tuple(tuple(QZERO for _ in range(d)) for _ in range(d))


def mat_eye(d: int) -> Mat:
    return tuple(tuple(QONE if i == j else QZERO for j in range(d))
                 for i in range(d))


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def mat_scale(a: Mat, c: Q) -> Mat:
    return tuple(tuple(x * c for x in row) for row in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), QZERO)
                       for col in bt) for row in a)


def mat_commutator(a: Mat, b: Mat) -> Mat:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_is_zero(a: Mat) -> bool:
    return all(x == 0 for row in a for x in row)


def mat_kron(a: Mat, b: Mat) -> Mat:
    da, db = len(a), len(b)
    return tuple(tuple(a[i // db][j // db] * b[i % db][j % db]
                       for j in range(da * db)) for i in range(da * db))


def charpoly(a: Mat) -> List[Q]:
    """Characteristic polynomial (ascending), by the trace recursion."""
    d = len(a)
    coeffs = [QZERO] * (d + 1)
    coeffs[d] = QONE
    m = mat_eye(d)
    for k in range(1, d + 1):
        m = mat_mul(a, m)
        c = -sum((m[i][i] for i in range(d)), QZERO) / k
        coeffs[d - k] = c
        if k < d:
            m = mat_add(m, mat_scale(mat_eye(d), c))
    return coeffs


def nullspace(a: Mat) -> List[Tuple[Q, ...]]:
    """Basis of the kernel, by exact reduced row echelon form."""
    d_rows = len(a)
    d_cols = len(a[0]) if d_rows else 0
    m = [list(row) for row in a]
    pivots = []
    r = 0
    for c in range(d_cols):
        piv = None
        for i in range(r, d_rows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(d_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == d_rows:
            break
    free = [c for c in range(d_cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [QZERO] * d_cols
        vec[fc] = QONE
        for row_i, pc in enumerate(pivots):
            vec[pc] = -m[row_i][fc]
        basis.append(tuple(vec))
    return basis


def solve_columns(b_cols: List[Tuple[Q, ...]], target_cols:
                  List[Tuple[Q, ...]]) -> Mat:
    """Solve B X = target for X, where B has full column rank."""
    rows = len(b_cols[0])
    k = len(b_cols)
    t = len(target_cols)
    m = [[b_cols[j][i] for j in range(k)] + [target_cols[j][i]
                                             for j in range(t)]
         for i in range(rows)]
    r = 0
    pivots = []
    for c in range(k):
        piv = None
        for i in range(r, rows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            raise ValueError("columns are not independent")
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if any(x != 0 for x in m[i][k:]):
            raise ValueError("system is inconsistent")
    return tuple(tuple(m[i][k + j] for j in range(t)) for i in range(k))


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

class Rep:
    """A representation as a generator-to-matrix map, validated exactly."""

    def __init__(self, n: int, dim: int, images: Dict[int, Mat],
                 name: str = "rep"):
        self.n = n
        self.dim = dim
        self.algebra = Algebra.get(n)
        self.images = images
        self.name = name
        self._mono_cache: Dict[Tuple[int, ...], Mat] = {(): mat_eye(dim)}
        self._validate()

    def _validate(self):
        A = self.algebra
        for a in range(A.gen_count):
            for b in range(A.gen_count):
                want = mat_zero(self.dim)
                for gen, c in A._brackets[(a, b)]:
                    want = mat_add(want, mat_scale(self.images[gen], c))
                got = mat_commutator(self.images[a], self.images[b])
                if got != want:
                    raise AssertionError(
                        f"defining relation fails on [{A.gen_name(a)}, "
                        f"{A.gen_name(b)}]")

    @classmethod
    def defining(cls, n: int) -> "Rep":
        A = Algebra.get(n)
        images = {}
        for idx in range(A.gen_count):
            kind, a, b = A.meta[idx]
            m = [[QZERO] * n for _ in range(n)]
            if kind == "e":
                m[a - 1][b - 1] = QONE
            else:
                m[a - 1][a - 1] = QONE
                m[a][a] = -QONE
            images[idx] = mat(m)
        return cls(n, n, images, name=f"defining({n})")

    @classmethod
    def tensor(cls, r1: "Rep", r2: "Rep") -> "Rep":
        if r1.n != r2.n:
            raise ValueError("tensor factors must share n")
        A = Algebra.get(r1.n)
        d1, d2 = r1.dim, r2.dim
        images = {}
        for idx in range(A.gen_count):
            images[idx] = mat_add(mat_kron(r1.images[idx], mat_eye(d2)),
                                  mat_kron(mat_eye(d1), r2.images[idx]))
        return cls(r1.n, d1 * d2, images, name=f"{r1.name} (x) {r2.name}")

    def mono_matrix(self, mono: Tuple[int, ...]) -> Mat:
        got = self._mono_cache.get(mono)
        if got is None:
            got = mat_mul(self.mono_matrix(mono[:-1]), self.images[mono[-1]])
            self._mono_cache[mono] = got
        return got

    def rational_matrix(self, elem: UEAElement) -> Mat:
        """Image of an element whose coefficients are plain rationals."""
        out = mat_zero(self.dim)
        for mono, p in elem.terms.items():
            if not p.is_const():
                raise ValueError("element has non-constant coefficients")
            out = mat_add(out, mat_scale(self.mono_matrix(mono),
                                         p.constant_term()))
        return out

    def hbar_matrix(self, elem: UEAElement, order: int) -> "HbarMatrix":
        """Image of an element with hbar-polynomial coefficients."""
        out = HbarMatrix.zero(self.dim, order)
        for mono, p in elem.terms.items():
            if p.degree("u") > 0 or p.degree("v") > 0:
                raise ValueError("element still depends on a spectral variable")
            coeffs = [QZERO] * order
            for key, c in p.terms.items():
                e = key[0] if key else 0
                if e < order:
                    coeffs[e] = coeffs[e] + c
            s = Series("hbar", coeffs)
            out = out + HbarMatrix.from_rational(
                self.mono_matrix(mono), order).scale_series(s)
        return out


# ---------------------------------------------------------------------------
# matrices over truncated hbar series
# ---------------------------------------------------------------------------

class HbarMatrix:
    """Square matrix with truncated hbar-series entries of uniform order."""

    __slots__ = ("dim", "order", "rows")

    def __init__(self, rows: List[List[Series]]):
        self.rows = rows
        self.dim = len(rows)
        self.order = rows[0][0].order if rows else 0

    @classmethod
    def zero(cls, dim: int, order: int) -> "HbarMatrix":
        return cls([[Series.zero("hbar", order) for _ in range(dim)]
                    for _ in range(dim)])

    @classmethod
    def eye(cls, dim: int, order: int) -> "HbarMatrix":
        out = cls.zero(dim, order)
        for i in range(dim):
            out.rows[i][i] = Series.one("hbar", order)
        return out

    @classmethod
    def from_rational(cls, m: Mat, order: int) -> "HbarMatrix":
        return cls([[Series("hbar", [x] + [QZERO] * (order - 1))
                     for x in row] for row in m])

    @classmethod
    def diagonal(cls, entries: List[Series]) -> "HbarMatrix":
        d = len(entries)
        out = cls.zero(d, entries[0].order)
        for i, s in enumerate(entries):
            out.rows[i][i] = s
        return out

    def __add__(self, other: "HbarMatrix") -> "HbarMatrix":
        return HbarMatrix([[x + y for x, y in zip(ra, rb)]
                           for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "HbarMatrix") -> "HbarMatrix":
        return HbarMatrix([[x - y for x, y in zip(ra, rb)]
                           for ra, rb in zip(self.rows, other.rows)])

    def __mul__(self, other: "HbarMatrix") -> "HbarMatrix":
        bt = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in bt:
                acc = row[0] * col[0]
                for x, y in zip(row[1:], col[1:]):
                    acc = acc + x * y
                new.append(acc)
            out.append(new)
        return HbarMatrix(out)

    def scale_series(self, s: Series) -> "HbarMatrix":
        return HbarMatrix([[x * s for x in row] for row in self.rows])

    def scale(self, c: Q) -> "HbarMatrix":
        return HbarMatrix([[x * c for x in row] for row in self.rows])

    def truncate(self, order: int) -> "HbarMatrix":
        return HbarMatrix([[x.truncate(order) for x in row]
                           for row in self.rows])

    def valuation_div(self, k: int) -> "HbarMatrix":
        return HbarMatrix([[x.valuation_div(k) for x in row]
                           for row in self.rows])

    def commutator(self, other: "HbarMatrix") -> "HbarMatrix":
        return self * other - other * self

    @property
    def is_zero(self) -> bool:
        return all(x.is_zero for row in self.rows for x in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HbarMatrix):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    def constant_part(self) -> Mat:
        return tuple(tuple(x.coeffs[0] for x in row) for row in self.rows)

    def first_nonzero(self) -> str:
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if not x.is_zero:
                    return f"entry ({i},{j}) = {x}"
        return "zero"


def hbar_exp(m: Mat, half_steps: int, order: int) -> HbarMatrix:
    """exp(hbar * half_steps/2 * M) as an hbar-series matrix."""
    d = len(m)
    out = HbarMatrix.eye(d, order)
    term = HbarMatrix.eye(d, order)
    factor = HbarMatrix.from_rational(
        m, order).scale_series(Series("hbar", [0, Q(half_steps, 2)]
                                      + [0] * (order - 2)))
    for k in range(1, order):
        term = term * factor
        term = term.scale(Q(1, k))
        out = out + term
    return out


# ---------------------------------------------------------------------------
# simultaneous diagonalization and the spectrum table
# ---------------------------------------------------------------------------

def simultaneous_eigenbasis(family: Sequence[Mat]
                            ) -> List[List[Tuple[Q, ...]]]:
    """Split the space into joint eigenblocks of a commuting family.

    Returns blocks of column vectors; on each block every family member
    acts as a scalar.  Raises on non-commuting input, irrational spectra
    and non-semisimple action.
    """
    if not family:
        raise ValueError("empty family")
    d = len(family[0])
    for a, b in itertools.combinations(family, 2):
        if not mat_is_zero(mat_commutator(a, b)):
            raise NonCommutingFamilyError("family members do not commute")
    blocks: List[List[Tuple[Q, ...]]] = [
        [tuple(QONE if i == j else QZERO for i in range(d))
         for j in range(d)]]
    for M in family:
        new_blocks: List[List[Tuple[Q, ...]]] = []
        for block in blocks:
            if len(block) == 1:
                new_blocks.append(block)
                continue
            cols = [tuple(sum((M[i][k] * vec[k] for k in range(d)), QZERO)
                          for i in range(d)) for vec in block]
            restric = solve_columns(block, cols)
            # restric is k x k with column-action convention
            k = len(block)
            poly = charpoly(restric)
            roots = rational_roots(poly, require_complete=True)
            covered = 0
            for lam, mult in roots:
                shifted = mat_sub(restric, mat_scale(mat_eye(k), lam))
                kern = nullspace(shifted)
                if len(kern) != mult:
                    raise NonSemisimpleError(
                        "eigenspace smaller than multiplicity")
                covered += len(kern)
                sub = []
                for coef in kern:
                    vec = tuple(sum((block[t][i] * coef[t]
                                     for t in range(k)), QZERO)
                                for i in range(d))
                    sub.append(vec)
                new_blocks.append(sub)
            if covered != k:
                raise NonSemisimpleError("matrix does not act semisimply")
        blocks = new_blocks
    return blocks


class SpectrumTable:
    """Per-eigenvector root data of the principal minor tower.

    roots[k] is a list over basis vectors; each entry is the list of the k
    rational values r with root hbar*r, in the stored order (ascending by
    default, permutable for symmetry tests).
    """

    def __init__(self, rep: Rep, basis: List[Tuple[Q, ...]],
                 roots: Dict[int, List[List[Q]]],
                 coeff_eigs: Dict[Tuple[int, int], List[Q]]):
        self.rep = rep
        self.basis = basis
        self.roots = roots
        self.coeff_eigs = coeff_eigs

    @classmethod
    def build(cls, rep: Rep) -> "SpectrumTable":
        n = rep.n
        fam = gt_family(n)
        mats = [rep.rational_matrix(c) for _, _, c in fam]
        blocks = simultaneous_eigenbasis(mats)
        basis = [vec for block in blocks for vec in block]
        d = rep.dim
        # eigenvalue of each family member on each basis vector
        coeff_eigs: Dict[Tuple[int, int], List[Q]] = {}
        for (k, j, _), M in zip(fam, mats):
            vals = []
            for vec in basis:
                img = tuple(sum((M[i][t] * vec[t] for t in range(d)), QZERO)
                            for i in range(d))
                pivot = next(i for i, x in enumerate(vec) if x != 0)
                lam = img[pivot] / vec[pivot]
                if tuple(x * lam for x in vec) != img:
                    raise AssertionError("basis vector is not an eigenvector")
                vals.append(lam)
            coeff_eigs[(k, j)] = vals
        roots: Dict[int, List[List[Q]]] = {}
        for k in range(1, n + 1):
            per_vec = []
            for t in range(len(basis)):
                poly = [coeff_eigs[(k, j)][t] for j in range(k)] + [QONE]
                found = rational_roots(poly, require_complete=True)
                if any(m > 1 for _, m in found):
                    raise AssertionError(
                        f"level-{k} roots are not distinct on vector {t}")
                flat = [r for r, _ in found]
                if len(flat) != k:
                    raise AssertionError("wrong number of roots")
                per_vec.append(flat)
            roots[k] = per_vec
        return cls(rep, basis, roots, coeff_eigs)

    def dim(self) -> int:
        return len(self.basis)

    def root_diag(self, k: int, i: int) -> List[Q]:
        """Diagonal of the i-th root (1-indexed) at level k, over vectors."""
        return [self.roots[k][t][i - 1] for t in range(self.dim())]

    def permuted(self, perms: Dict[int, Sequence[int]]) -> "SpectrumTable":
        """Copy with the stored root order shuffled per level."""
        roots = {}
        for k, per_vec in self.roots.items():
            if k in perms:
                p = perms[k]
                roots[k] = [[vec_roots[p[i]] for i in range(k)]
                            for vec_roots in per_vec]
            else:
                roots[k] = [list(v) for v in per_vec]
        return SpectrumTable(self.rep, self.basis, roots, self.coeff_eigs)

    def basis_matrix(self) -> Mat:
        """Change of basis: columns are the eigenvectors."""
        d = self.dim()
        return tuple(tuple(self.basis[j][i] for j in range(d))
                     for i in range(d))

    def to_eigenbasis_rational(self, m: Mat) -> Mat:
        """Conjugate a standard-basis matrix into the eigenbasis."""
        b = self.basis_matrix()
        binv = _mat_inverse(b)
        return mat_mul(binv, mat_mul(m, b))


def _mat_inverse(m: Mat) -> Mat:
    d = len(m)
    aug = [list(row) + [QONE if i == j else QZERO for j in range(d)]
           for i, row in enumerate(m)]
    for c in range(d):
        piv = next(i for i in range(c, d) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(d):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[d:]) for row in aug)


# ---------------------------------------------------------------------------
# residue form of the raising/lowering currents on a representation
# ---------------------------------------------------------------------------

def reduced_minor_coeffs(n: int, rows: Tuple[int, ...], cols: Tuple[int, ...]
                         ) -> List[UEAElement]:
    """hbar-free coefficients of a minor at base u: the minor is
    sum_m coeff[m] * hbar^(size-m) * u^m with size = len(rows)."""
    T = TMatrix.get(n)
    m = len(rows)
    minor = qminor(T, rows, cols, sp_var("u"))
    out = []
    for power in range(m + 1):
        out.append(minor.extract("u", power).hbar_div(m - power))
    return out


def _eval_reduced_at_diag(coeff_mats: List[Mat], diag: List[Q]
                          ) -> Tuple[Mat, Mat]:
    """Evaluate sum coeff[m] * D^m with the diagonal applied on the right
    and on the left; both placements are returned so agreement can be
    asserted.  All matrices must be in the eigenbasis already."""
    d = len(diag)
    right = mat_zero(d)
    left = mat_zero(d)
    dpow = [QONE] * d
    for cm in coeff_mats:
        right = mat_add(right, tuple(
            tuple(cm[i][j] * dpow[j] for j in range(d)) for i in range(d)))
        left = mat_add(left, tuple(
            tuple(dpow[i] * cm[i][j] for j in range(d)) for i in range(d)))
        dpow = [x * y for x, y in zip(dpow, diag)]
    return right, left


def _divide_by_diag(m: Mat, denom: List[Q]) -> Mat:
    """Divide by a diagonal scalar; both placements must agree."""
    d = len(denom)
    left = tuple(tuple(m[r][c] / denom[r] for c in range(d))
                 for r in range(d))
    right = tuple(tuple(m[r][c] / denom[c] for c in range(d))
                  for r in range(d))
    if left != right:
        raise AssertionError(
            "matrix does not commute with the root-difference diagonal")
    return left


def residue_data(rep: Rep, table: SpectrumTable, k: int, sign: int
                 ) -> List[Tuple[List[Q], Mat]]:
    """Pole locations and residue matrices for the level-k current.

    Everything is expressed in the joint eigenbasis.  For each root index
    i the pole sits at root -+ hbar/2 (a rational diagonal times hbar) and
    the residue matrix is hbar-free.  Root-vs-minor commutation is
    asserted, never assumed.
    """
    n = rep.n
    A = Algebra.get(n)
    d = rep.dim
    head = tuple(range(1, k + 1))
    conj = table.to_eigenbasis_rational

    out = []
    for i in range(1, k + 1):
        diag_r = table.root_diag(k, i)
        bracket = mat_zero(d)
        for j in range(1, k + 1):
            if sign > 0:
                rows = tuple(x for x in head if x != j)
                cols = tuple(range(1, k))
                shift = Q(-(k - 1), 2)
                unit = A.e(j, k + 1)
            else:
                rows = tuple(range(1, k))
                cols = tuple(x for x in head if x != j)
                shift = Q(-(k - 3), 2)
                unit = A.e(k + 1, j)
            coeff_mats = [conj(rep.rational_matrix(c))
                          for c in reduced_minor_coeffs(n, rows, cols)]
            arg = [r + shift for r in diag_r]
            right, left = _eval_reduced_at_diag(coeff_mats, arg)
            if right != left:
                raise AssertionError(
                    "root diagonal does not commute with the minor images")
            denom = [QONE] * d
            for c in range(1, k + 1):
                if c != i:
                    other = table.root_diag(k, c)
                    denom = [x * (ri - rc)
                             for x, ri, rc in zip(denom, diag_r, other)]
            if any(x == 0 for x in denom):
                raise AssertionError("repeated roots in the residue sum")
            term = mat_mul(_divide_by_diag(right, denom),
                           conj(rep.rational_matrix(unit)))
            if (k - j) % 2 == 1:
                term = mat_scale(term, Q(-1))
            bracket = mat_add(bracket, term)
        pole = [r - sign * Q(1, 2) for r in diag_r]
        out.append((pole, bracket))
    return out


def check_partial_fractions(rep: Rep, table: SpectrumTable, k: int,
                            sign: int, K: int, order: Optional[int] = None
                            ) -> Tuple[bool, str]:
    """Residue form equals the direct current expansion, to depth K."""
    from .evaluation import ev_x
    n = rep.n
    N = order if order is not None else K + 2
    cur = ev_x(n, sign, k, K)
    d = rep.dim
    basis = HbarMatrix.from_rational(table.basis_matrix(), N)
    basis_inv = HbarMatrix.from_rational(_mat_inverse(table.basis_matrix()), N)
    data = residue_data(rep, table, k, sign)
    for depth in range(1, K + 1):
        direct = basis_inv * rep.hbar_matrix(cur.coeff(-depth), N) * basis
        residue = HbarMatrix.zero(d, N)
        for pole, bmat in data:
            # coefficient of u^-depth in hbar/(u - pole): hbar * pole^(depth-1)
            entries = []
            for t in range(d):
                coeffs = [QZERO] * N
                if depth < N:
                    coeffs[depth] = pole[t] ** (depth - 1)
                entries.append(Series("hbar", coeffs))
            residue = residue + HbarMatrix.diagonal(entries) * \
                HbarMatrix.from_rational(bmat, N)
        if not (direct - residue).is_zero:
            return False, (f"u^-{depth} coefficient differs: "
                           f"{(direct - residue).first_nonzero()}")
    return True, ""
