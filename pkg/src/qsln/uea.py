"""U(sl_n) with polynomial coefficients and a PBW normal form.

Generators are h_1..h_{n-1} and the off-diagonal matrix units e_kl.  The
fixed PBW order is: lowering block (k > l, lexicographic), then the Cartan
block, then the raising block (k < l, lexicographic).  Products are
straightened by moving out-of-order adjacent pairs through the commutator,
which is always a rational-linear combination of single generators (diagonal
differences are rewritten into the h basis), so the rewriting terminates.
Equality of elements is equality of normal forms.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .scalar import Q, QONE, QZERO, ScalarPoly, raw_poly_mul

Mono = Tuple[int, ...]


class Algebra:
    """The enveloping algebra of sl_n; holds generator tables and memos.

    Use Algebra.get(n); instances are cached so straightening memos are
    shared across a process.
    """

    _instances: Dict[int, "Algebra"] = {}

    # straightening results above this size are recomputed, not cached
    MEMO_RESULT_CAP = 256
    # products of words longer than this are not worth caching
    MEMO_WORD_CAP = 64

    @classmethod
    def get(cls, n: int) -> "Algebra":
        inst = cls._instances.get(n)
        if inst is None:
            inst = cls(n)
            cls._instances[n] = inst
        return inst

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need n >= 2")
        self.n = n
        meta: List[Tuple[str, int, int]] = []
        for k in range(2, n + 1):
            for l in range(1, k):
                meta.append(("e", k, l))
        for i in range(1, n):
            meta.append(("h", i, 0))
        for k in range(1, n):
            for l in range(k + 1, n + 1):
                meta.append(("e", k, l))
        self.meta = meta
        self.gen_count = len(meta)
        self._e_index = {(k, l): i for i, (kind, k, l) in enumerate(meta)
                         if kind == "e"}
        self._h_index = {k: i for i, (kind, k, l) in enumerate(meta)
                         if kind == "h"}
        self._brackets = self._build_bracket_table()
        self._insert_memo: Dict[Tuple[Mono, int], Dict[Mono, Q]] = {}
        self._mul_memo: Dict[Tuple[Mono, Mono], Dict[Mono, Q]] = {}

    # -- generator bookkeeping ----------------------------------------

    def gen_name(self, idx: int) -> str:
        kind, a, b = self.meta[idx]
        return f"h{a}" if kind == "h" else f"e{a}{b}"

    def e_idx(self, k: int, l: int) -> int:
        return self._e_index[(k, l)]

    def h_idx(self, i: int) -> int:
        return self._h_index[i]

    def _build_bracket_table(self):
        table: Dict[Tuple[int, int], Tuple[Tuple[int, Q], ...]] = {}
        for a in range(self.gen_count):
            for b in range(self.gen_count):
                table[(a, b)] = tuple(self._bracket_pair(a, b))
        return table

    def _bracket_pair(self, a: int, b: int) -> List[Tuple[int, Q]]:
        ka, i1, j1 = self.meta[a]
        kb, i2, j2 = self.meta[b]
        if ka == "h" and kb == "h":
            return []
        if ka == "h":
            c = self._cartan_weight(i1, i2, j2)
            return [(b, Q(c))] if c else []
        if kb == "h":
            c = self._cartan_weight(i2, i1, j1)
            return [(a, Q(-c))] if c else []
        # [e_{kl}, e_{k'l'}] = d_{lk'} e_{kl'} - d_{kl'} e_{k'l}
        k, l, kp, lp = i1, j1, i2, j2
        if l == kp and k == lp:
            return self._diagonal_difference(k, l)
        if l == kp:
            return [(self.e_idx(k, lp), QONE)]
        if k == lp:
            return [(self.e_idx(kp, l), -QONE)]
        return []

    @staticmethod
    def _cartan_weight(i: int, k: int, l: int) -> int:
        # [h_i, e_kl] coefficient
        return ((1 if i == k else 0) - (1 if i == l else 0)
                - (1 if i + 1 == k else 0) + (1 if i + 1 == l else 0))

    def _diagonal_difference(self, k: int, l: int) -> List[Tuple[int, Q]]:
        # e_kk - e_ll rewritten as a sum of h_j
        if k < l:
            return [(self.h_idx(j), QONE) for j in range(k, l)]
        return [(self.h_idx(j), -QONE) for j in range(l, k)]

    # -- straightening -------------------------------------------------

    def _insert(self, mono: Mono, g: int) -> Dict[Mono, Q]:
        """Normal form of mono * g for an out-of-order junction.

        Callers handle the sorted-append case inline; here mono is
        nonempty with mono[-1] > g.
        """
        key = (mono, g)
        res = self._insert_memo.get(key)
        if res is not None:
            return res
        a = mono[-1]
        rest = mono[:-1]
        out: Dict[Mono, Q] = {}
        if not rest or rest[-1] <= g:
            swapped = {rest + (g,): QONE}
        else:
            swapped = self._insert(rest, g)
        for m1, c1 in swapped.items():
            if not m1 or m1[-1] <= a:
                s = out.get(m1 + (a,))
                out[m1 + (a,)] = c1 if s is None else s + c1
            else:
                for m2, c2 in self._insert(m1, a).items():
                    c = c1 * c2
                    s = out.get(m2)
                    out[m2] = c if s is None else s + c
        for gen, cb in self._brackets[(a, g)]:
            if not rest or rest[-1] <= gen:
                s = out.get(rest + (gen,))
                out[rest + (gen,)] = cb if s is None else s + cb
            else:
                for m2, c2 in self._insert(rest, gen).items():
                    c = c2 * cb
                    s = out.get(m2)
                    out[m2] = c if s is None else s + c
        res = {m: c for m, c in out.items() if c != 0}
        if len(res) <= self.MEMO_RESULT_CAP:
            self._insert_memo[key] = res
        return res

    def mul_mono(self, m1: Mono, m2: Mono) -> Dict[Mono, Q]:
        """Normal form of a product of two PBW monomials.

        Recurses on the right factor one generator at a time, so memo
        entries for (intermediate monomial, right suffix) are shared
        across products with a common right factor.
        """
        if not m2:
            return {m1: QONE}
        if not m1:
            return {m2: QONE}
        if m1[-1] <= m2[0]:  # junction already ordered
            return {m1 + m2: QONE}
        memoize = len(m1) + len(m2) <= self.MEMO_WORD_CAP
        if memoize:
            key = (m1, m2)
            res = self._mul_memo.get(key)
            if res is not None:
                return res
        mul_mono = self.mul_mono
        head, tail = m2[0], m2[1:]
        out: Dict[Mono, Q] = {}
        out_get = out.get
        for mid, c1 in self._insert(m1, head).items():
            if tail and (not mid or mid[-1] <= tail[0]):
                mk = mid + tail
                s = out_get(mk)
                out[mk] = c1 if s is None else s + c1
                continue
            for m, c2 in mul_mono(mid, tail).items():
                c = c1 * c2
                s = out_get(m)
                out[m] = c if s is None else s + c
        res = {m: c for m, c in out.items() if c != 0}
        if memoize and len(res) <= self.MEMO_RESULT_CAP:
            self._mul_memo[key] = res
        return res

    def trim_memos(self):
        """Drop the product memo (cheap to rebuild; the insert memo stays)."""
        self._mul_memo.clear()

    # -- element constructors -------------------------------------------

    def zero(self) -> "UEAElement":
        return UEAElement(self, {})

    def one(self) -> "UEAElement":
        return UEAElement(self, {(): ScalarPoly.one()})

    def scalar(self, p) -> "UEAElement":
        if isinstance(p, ScalarPoly):
            pass
        else:
            p = ScalarPoly.const(p)
        if p.is_zero:
            return self.zero()
        return UEAElement(self, {(): p})

    def gen(self, idx: int) -> "UEAElement":
        return UEAElement(self, {(idx,): ScalarPoly.one()})

    def e(self, k: int, l: int) -> "UEAElement":
        if not (1 <= k <= self.n and 1 <= l <= self.n and k != l):
            raise ValueError(f"e({k},{l}) out of range for n={self.n}")
        return self.gen(self.e_idx(k, l))

    def h(self, i: int) -> "UEAElement":
        if not (1 <= i < self.n):
            raise ValueError(f"h({i}) out of range for n={self.n}")
        return self.gen(self.h_idx(i))

    def generators(self) -> List["UEAElement"]:
        return [self.gen(i) for i in range(self.gen_count)]

    def coweight(self, i: int) -> "UEAElement":
        """Fundamental coweight as a rational combination of the h_j."""
        n = self.n
        if i == 0 or i == n:
            return self.zero()
        if not (1 <= i < n):
            raise ValueError(f"coweight index {i} out of range for n={n}")
        out = self.zero()
        for j in range(1, i):
            out = out + self.h(j) * Q(j * (n - i), n)
        for j in range(i, n):
            out = out + self.h(j) * Q(i * (n - j), n)
        return out


class UEAElement:
    """Finite combination of PBW monomials with ScalarPoly coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Algebra, terms: Dict[Mono, ScalarPoly]):
        self.algebra = algebra
        self.terms = terms

    # -- predicates ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def max_word_length(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> Optional["UEAElement"]:
        if isinstance(other, UEAElement):
            if other.algebra is not self.algebra:
                raise ValueError("elements of different algebras")
            return other
        if isinstance(other, (int, ScalarPoly)) or type(other) is type(QONE):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other) -> "UEAElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, p in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = p
            else:
                s = s + p
                if s.is_zero:
                    del out[m]
                else:
                    out[m] = s
        return UEAElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "UEAElement":
        return UEAElement(self.algebra, {m: -p for m, p in self.terms.items()})

    def __sub__(self, other) -> "UEAElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "UEAElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "UEAElement":
        """Multiply by a central scalar (rational or ScalarPoly)."""
        if isinstance(c, ScalarPoly):
            if c.is_zero:
                return self.algebra.zero()
            out = {}
            for m, p in self.terms.items():
                q = p * c
                if not q.is_zero:
                    out[m] = q
            return UEAElement(self.algebra, out)
        c = Q(c)
        if c == 0:
            return self.algebra.zero()
        return UEAElement(self.algebra,
                          {m: p.scale(c) for m, p in self.terms.items()})

    def __mul__(self, other) -> "UEAElement":
        if isinstance(other, UEAElement):
            if other.algebra is not self.algebra:
                raise ValueError("elements of different algebras")
            alg = self.algebra
            mul_mono = alg.mul_mono
            # accumulate coefficients as raw exponent->Q dicts; wrap once
            acc: Dict[Mono, Dict] = {}
            for m1, p1 in self.terms.items():
                t1 = p1.terms
                for m2, p2 in other.terms.items():
                    pt = raw_poly_mul(t1, p2.terms)
                    if not pt:
                        continue
                    for m, q in mul_mono(m1, m2).items():
                        d = acc.get(m)
                        if d is None:
                            d = acc[m] = {}
                        if q == 1:
                            for k, c in pt.items():
                                s = d.get(k)
                                d[k] = c if s is None else s + c
                        else:
                            for k, c in pt.items():
                                cq = c * q
                                s = d.get(k)
                                d[k] = cq if s is None else s + cq
            out: Dict[Mono, ScalarPoly] = {}
            for m, d in acc.items():
                cleaned = {k: c for k, c in d.items() if c != 0}
                if cleaned:
                    out[m] = ScalarPoly(cleaned)
            return UEAElement(alg, out)
        if isinstance(other, (int, ScalarPoly)) or type(other) is type(QONE):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "UEAElement":
        # scalars are central, so left/right scalar products agree
        if isinstance(other, (int, ScalarPoly)) or type(other) is type(QONE):
            return self.scale(other)
        return NotImplemented

    def bracket(self, other: "UEAElement") -> "UEAElement":
        return self * other - other * self

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    # -- coefficient manipulation ---------------------------------------

    def extract(self, name: str, power: int) -> "UEAElement":
        """Coefficient of name**power, an element with name removed."""
        out = {}
        for m, p in self.terms.items():
            q = p.coeff(name, power)
            if not q.is_zero:
                out[m] = q
        return UEAElement(self.algebra, out)

    def degree_in(self, name: str) -> int:
        return max((p.degree(name) for p in self.terms.values()), default=-1)

    def subs(self, binding: Dict[str, ScalarPoly]) -> "UEAElement":
        out = self.algebra.zero()
        for m, p in self.terms.items():
            q = p.substitute(binding)
            if not q.is_zero:
                out = out + UEAElement(self.algebra, {m: q})
        return out

    def hbar_div(self, k: int) -> "UEAElement":
        """Exact division by hbar**k."""
        return UEAElement(self.algebra,
                          {m: p.div_exact("hbar", k)
                           for m, p in self.terms.items()})

    def coefficient_vars(self) -> Tuple[str, ...]:
        seen = set()
        for p in self.terms.values():
            seen.update(p.vars_present())
        return tuple(sorted(seen))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        alg = self.algebra
        parts = []
        for m in sorted(self.terms):
            word = "*".join(alg.gen_name(g) for g in m) if m else "1"
            parts.append(f"({self.terms[m]})*{word}")
        return " + ".join(parts)

    __repr__ = __str__
