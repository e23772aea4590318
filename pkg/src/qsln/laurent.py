"""Truncated Laurent series (and double series) with UEA coefficients.

A series knows its coefficients for powers >= lo and is exactly zero above
its top; lo = None means the series is exact (a Laurent polynomial).  Every
operation computes the knowledge floor of its result from the floors of its
operands, so precision is tracked rather than assumed, and zero checks are
made only on the known window.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .scalar import HBAR, Q, QONE, ScalarPoly
from .uea import Algebra, UEAElement


class TruncationError(ArithmeticError):
    """A coefficient was requested outside the known window."""


def _binom(p: int, m: int) -> Q:
    """Generalized binomial coefficient, p any integer, m >= 0."""
    num = QONE
    for t in range(m):
        num = num * (p - t)
    den = 1
    for t in range(2, m + 1):
        den *= t
    return num / den


def _floor_max(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


class Laurent:
    """Single-variable truncated Laurent series over the enveloping algebra.

    Coefficients are UEAElements that must not involve the series variable
    in their scalar parts.
    """

    __slots__ = ("algebra", "var", "terms", "lo")

    def __init__(self, algebra: Algebra, var: str,
                 terms: Dict[int, UEAElement], lo: Optional[int]):
        self.algebra = algebra
        self.var = var
        if lo is not None:
            terms = {p: c for p, c in terms.items() if p >= lo}
        self.terms = {p: c for p, c in terms.items() if not c.is_zero}
        self.lo = lo

    # -- constructors ------------------------------------------------------

    @classmethod
    def exact(cls, algebra: Algebra, var: str,
              terms: Dict[int, UEAElement]) -> "Laurent":
        return cls(algebra, var, terms, None)

    @classmethod
    def one(cls, algebra: Algebra, var: str) -> "Laurent":
        return cls.exact(algebra, var, {0: algebra.one()})

    @classmethod
    def from_poly(cls, elem: UEAElement, var: str) -> "Laurent":
        """Split a polynomial-valued element along powers of var."""
        deg = elem.degree_in(var)
        terms = {}
        for p in range(max(deg, 0) + 1):
            c = elem.extract(var, p)
            if not c.is_zero:
                terms[p] = c
        return cls.exact(elem.algebra, var, terms)

    # -- structure -----------------------------------------------------

    def hi(self) -> Optional[int]:
        """Largest power that could be nonzero (None = exact zero)."""
        if self.terms:
            return max(self.terms)
        if self.lo is None:
            return None
        return self.lo - 1

    @property
    def is_exact_zero(self) -> bool:
        return not self.terms and self.lo is None

    def known_zero(self) -> bool:
        """Zero everywhere on the known window."""
        return not self.terms

    def coeff(self, p: int) -> UEAElement:
        if self.lo is not None and p < self.lo:
            raise TruncationError(
                f"coefficient of {self.var}^{p} below the floor {self.lo}")
        return self.terms.get(p, self.algebra.zero())

    def first_nonzero(self) -> Optional[Tuple[int, UEAElement]]:
        if not self.terms:
            return None
        p = max(self.terms)
        return p, self.terms[p]

    def rename(self, var: str) -> "Laurent":
        return Laurent(self.algebra, var, self.terms, self.lo)

    def truncate(self, lo: int) -> "Laurent":
        return Laurent(self.algebra, self.var, self.terms,
                       lo if self.lo is None else max(lo, self.lo))

    # -- arithmetic --------------------------------------------------------

    def _like(self, other: "Laurent"):
        if self.var != other.var or self.algebra is not other.algebra:
            raise ValueError("incompatible Laurent series")

    def __add__(self, other: "Laurent") -> "Laurent":
        self._like(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            s = out.get(p)
            if s is None:
                out[p] = c
            else:
                s = s + c
                if s.is_zero:
                    del out[p]
                else:
                    out[p] = s
        return Laurent(self.algebra, self.var, out,
                       _floor_max(self.lo, other.lo))

    def __neg__(self) -> "Laurent":
        return Laurent(self.algebra, self.var,
                       {p: -c for p, c in self.terms.items()}, self.lo)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def scale(self, c) -> "Laurent":
        """Multiply by a central scalar (rational or variable-free poly)."""
        return Laurent(self.algebra, self.var,
                       {p: x.scale(c) for p, x in self.terms.items()}, self.lo)

    def lmul_elem(self, x: UEAElement) -> "Laurent":
        return Laurent(self.algebra, self.var,
                       {p: x * c for p, c in self.terms.items()}, self.lo)

    def rmul_elem(self, x: UEAElement) -> "Laurent":
        return Laurent(self.algebra, self.var,
                       {p: c * x for p, c in self.terms.items()}, self.lo)

    def shift(self, k: int) -> "Laurent":
        """Multiply by var**k."""
        return Laurent(self.algebra, self.var,
                       {p + k: c for p, c in self.terms.items()},
                       None if self.lo is None else self.lo + k)

    def mul(self, other: "Laurent", floor: Optional[int] = None) -> "Laurent":
        self._like(other)
        if self.is_exact_zero or other.is_exact_zero:
            return Laurent(self.algebra, self.var, {}, None)
        cands = []
        if self.lo is not None:
            cands.append(self.lo + other.hi())
        if other.lo is not None:
            cands.append(other.lo + self.hi())
        lo = max(cands) if cands else None
        lo = _floor_max(lo, floor)
        out: Dict[int, UEAElement] = {}
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                p = p1 + p2
                if lo is not None and p < lo:
                    continue
                prod = c1 * c2
                if prod.is_zero:
                    continue
                s = out.get(p)
                out[p] = prod if s is None else s + prod
        return Laurent(self.algebra, self.var, out, lo)

    __mul__ = mul

    def subst_shift(self, s: ScalarPoly, floor: Optional[int] = None
                    ) -> "Laurent":
        """Substitute var -> var + s for a variable-free shift s.

        Negative powers expand into infinite tails; for exact input with
        negative support a floor is required.
        """
        if s.is_zero:
            return self if floor is None else self.truncate(floor)
        if s.degree(self.var) > 0:
            raise ValueError("shift must not involve the series variable")
        lo = _floor_max(self.lo, floor)
        if lo is None:
            if any(p < 0 for p in self.terms):
                raise TruncationError(
                    "shifting negative powers of an exact series needs a floor")
            out: Dict[int, UEAElement] = {}
            for p, c in self.terms.items():
                for m in range(p + 1):
                    b = _binom(p, m)
                    if b == 0:
                        continue
                    contrib = c.scale(s ** m * b)
                    t = p - m
                    sacc = out.get(t)
                    out[t] = contrib if sacc is None else sacc + contrib
            return Laurent(self.algebra, self.var, out, None)
        out = {}
        spow: List[ScalarPoly] = [ScalarPoly.one()]
        for p, c in self.terms.items():
            for t in range(lo, p + 1):
                m = p - t
                while len(spow) <= m:
                    spow.append(spow[-1] * s)
                b = _binom(p, m)
                if b == 0:
                    continue
                contrib = c.scale(spow[m].scale(b))
                sacc = out.get(t)
                out[t] = contrib if sacc is None else sacc + contrib
        return Laurent(self.algebra, self.var, out, lo)

    # -- inverses and logarithms -----------------------------------------

    def leading(self) -> Tuple[int, UEAElement]:
        h = self.hi()
        if h is None:
            raise ValueError("zero series has no leading term")
        return h, self.terms.get(h, self.algebra.zero())

    def invert(self, depth: int) -> "Laurent":
        """Two-sided inverse of a series with unit leading coefficient.

        Returns depth coefficients starting at the reciprocal top power.
        """
        d, lead = self.leading()
        if lead != self.algebra.one():
            raise ValueError("inversion needs unit leading coefficient")
        # geometric series in the strictly lower-order tail
        floor = -(depth - 1)
        neg_tail = (Laurent.one(self.algebra, self.var)
                    - self.shift(-d)).truncate(floor)
        acc = Laurent.one(self.algebra, self.var)
        power = Laurent.one(self.algebra, self.var)
        for _ in range(depth - 1):
            power = power.mul(neg_tail, floor=floor)
            if power.known_zero():
                break
            acc = acc + power
        # truncate keeps the honest floor if the input window was shallower
        return acc.shift(-d).truncate(-d - depth + 1)

    def log_unit(self) -> "Laurent":
        """log of a series of the form 1 + (strictly lower order terms)."""
        h = self.hi()
        if h != 0 or self.terms.get(0) != self.algebra.one():
            raise ValueError("log needs constant leading term 1")
        if self.lo is None:
            raise ValueError("log of an exact unit needs a truncation floor")
        m = self - Laurent.one(self.algebra, self.var)
        depth = -self.lo
        acc = Laurent(self.algebra, self.var, {}, self.lo)
        power = Laurent.one(self.algebra, self.var)
        for k in range(1, depth + 1):
            power = power.mul(m, floor=self.lo)
            if power.known_zero():
                break
            acc = acc + power.scale(Q((-1) ** (k + 1), k))
        return acc

    def check_inverse(self, inv: "Laurent") -> bool:
        one = Laurent.one(self.algebra, self.var)
        left = self.mul(inv) - one
        right = inv.mul(self) - one
        return left.known_zero() and right.known_zero()

    def __str__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            parts = []
            for p in sorted(self.terms, reverse=True):
                parts.append(f"[{self.var}^{p}] ({self.terms[p]})")
            body = " + ".join(parts)
        tail = "" if self.lo is None else f" + O({self.var}^{self.lo - 1})"
        return body + tail

    __repr__ = __str__


class Double:
    """Truncated double series in two variables over the enveloping algebra."""

    __slots__ = ("algebra", "uvar", "vvar", "terms", "lo_u", "lo_v")

    def __init__(self, algebra: Algebra, uvar: str, vvar: str,
                 terms: Dict[Tuple[int, int], UEAElement],
                 lo_u: Optional[int], lo_v: Optional[int]):
        self.algebra = algebra
        self.uvar = uvar
        self.vvar = vvar
        pruned = {}
        for (pu, pv), c in terms.items():
            if lo_u is not None and pu < lo_u:
                continue
            if lo_v is not None and pv < lo_v:
                continue
            if not c.is_zero:
                pruned[(pu, pv)] = c
        self.terms = pruned
        self.lo_u = lo_u
        self.lo_v = lo_v

    @classmethod
    def from_u(cls, s: Laurent, vvar: str) -> "Double":
        return cls(s.algebra, s.var, vvar,
                   {(p, 0): c for p, c in s.terms.items()}, s.lo, None)

    @classmethod
    def from_v(cls, s: Laurent, uvar: str) -> "Double":
        return cls(s.algebra, uvar, s.var,
                   {(0, p): c for p, c in s.terms.items()}, None, s.lo)

    def _like(self, other: "Double"):
        if (self.uvar != other.uvar or self.vvar != other.vvar
                or self.algebra is not other.algebra):
            raise ValueError("incompatible double series")

    def _hi_u(self) -> Optional[int]:
        if self.terms:
            return max(p for p, _ in self.terms)
        return None if self.lo_u is None else self.lo_u - 1

    def _hi_v(self) -> Optional[int]:
        if self.terms:
            return max(p for _, p in self.terms)
        return None if self.lo_v is None else self.lo_v - 1

    @property
    def is_exact_zero(self) -> bool:
        return not self.terms and self.lo_u is None and self.lo_v is None

    def __add__(self, other: "Double") -> "Double":
        self._like(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
        return Double(self.algebra, self.uvar, self.vvar, out,
                      _floor_max(self.lo_u, other.lo_u),
                      _floor_max(self.lo_v, other.lo_v))

    def __neg__(self) -> "Double":
        return Double(self.algebra, self.uvar, self.vvar,
                      {k: -c for k, c in self.terms.items()},
                      self.lo_u, self.lo_v)

    def __sub__(self, other: "Double") -> "Double":
        return self + (-other)

    def scale(self, c) -> "Double":
        return Double(self.algebra, self.uvar, self.vvar,
                      {k: x.scale(c) for k, x in self.terms.items()},
                      self.lo_u, self.lo_v)

    def shift_u(self, k: int) -> "Double":
        return Double(self.algebra, self.uvar, self.vvar,
                      {(pu + k, pv): c for (pu, pv), c in self.terms.items()},
                      None if self.lo_u is None else self.lo_u + k, self.lo_v)

    def shift_v(self, k: int) -> "Double":
        return Double(self.algebra, self.uvar, self.vvar,
                      {(pu, pv + k): c for (pu, pv), c in self.terms.items()},
                      self.lo_u, None if self.lo_v is None else self.lo_v + k)

    def mul(self, other: "Double") -> "Double":
        self._like(other)
        if self.is_exact_zero or other.is_exact_zero:
            return Double(self.algebra, self.uvar, self.vvar, {}, None, None)
        cu = []
        if self.lo_u is not None and other._hi_u() is not None:
            cu.append(self.lo_u + other._hi_u())
        elif self.lo_u is not None:
            cu.append(self.lo_u)
        if other.lo_u is not None and self._hi_u() is not None:
            cu.append(other.lo_u + self._hi_u())
        elif other.lo_u is not None:
            cu.append(other.lo_u)
        lo_u = max(cu) if cu else None
        cv = []
        if self.lo_v is not None and other._hi_v() is not None:
            cv.append(self.lo_v + other._hi_v())
        elif self.lo_v is not None:
            cv.append(self.lo_v)
        if other.lo_v is not None and self._hi_v() is not None:
            cv.append(other.lo_v + self._hi_v())
        elif other.lo_v is not None:
            cv.append(other.lo_v)
        lo_v = max(cv) if cv else None
        out: Dict[Tuple[int, int], UEAElement] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                pu, pv = a1 + a2, b1 + b2
                if lo_u is not None and pu < lo_u:
                    continue
                if lo_v is not None and pv < lo_v:
                    continue
                prod = c1 * c2
                if prod.is_zero:
                    continue
                key = (pu, pv)
                s = out.get(key)
                out[key] = prod if s is None else s + prod
        return Double(self.algebra, self.uvar, self.vvar, out, lo_u, lo_v)

    __mul__ = mul

    def lmul_elem(self, x: UEAElement) -> "Double":
        return Double(self.algebra, self.uvar, self.vvar,
                      {k: x * c for k, c in self.terms.items()},
                      self.lo_u, self.lo_v)

    def rmul_elem(self, x: UEAElement) -> "Double":
        return Double(self.algebra, self.uvar, self.vvar,
                      {k: c * x for k, c in self.terms.items()},
                      self.lo_u, self.lo_v)

    def known_zero(self) -> bool:
        return not self.terms

    def covers(self, depth_u: int, depth_v: int) -> bool:
        """Knowledge window reaches down to u^-depth_u, v^-depth_v."""
        ok_u = self.lo_u is None or self.lo_u <= -depth_u
        ok_v = self.lo_v is None or self.lo_v <= -depth_v
        return ok_u and ok_v

    def first_nonzero(self) -> Optional[Tuple[Tuple[int, int], UEAElement]]:
        if not self.terms:
            return None
        key = max(self.terms)
        return key, self.terms[key]

    def __str__(self) -> str:
        n = len(self.terms)
        return (f"<double series, {n} coefficients, "
                f"floors ({self.lo_u}, {self.lo_v})>")

    __repr__ = __str__


def commutator_double(a: Double, b: Double) -> Double:
    return a.mul(b) - b.mul(a)
