"""Exact scalar arithmetic.

Everything downstream is built over the rationals: sparse multivariate
polynomials in a global ordered set of commuting indeterminates, and
truncated power series in a single indeterminate with exp/log/sqrt.
No floating point anywhere.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is normally available
    from fractions import Fraction as Q

QZERO = Q(0)
QONE = Q(1)


class SeriesDomainError(ValueError):
    """Series operation applied outside its domain (wrong constant term)."""


class ExactDivisionError(ArithmeticError):
    """A division that must be exact left a remainder."""


class IncompleteSplittingError(ArithmeticError):
    """A polynomial required to split over Q has an irrational factor."""


# ---------------------------------------------------------------------------
# indeterminate universe
# ---------------------------------------------------------------------------

# One global ordered universe.  hbar comes first; u, v, w, x serve as spectral
# parameters (multi-factor relations need up to four of them).
_NAMES: List[str] = ["hbar", "u", "v", "w", "x", "y", "z"]
_INDEX: Dict[str, int] = {nm: i for i, nm in enumerate(_NAMES)}


def indet_index(name: str) -> int:
    """Index of an indeterminate, registering it if unseen."""
    idx = _INDEX.get(name)
    if idx is None:
        idx = len(_NAMES)
        _NAMES.append(name)
        _INDEX[name] = idx
    return idx


def indet_name(idx: int) -> str:
    return _NAMES[idx]


def _strip(key: Tuple[int, ...]) -> Tuple[int, ...]:
    n = len(key)
    while n and key[n - 1] == 0:
        n -= 1
    return key[:n]


def _key_mul(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


class ScalarPoly:
    """Sparse polynomial over Q in the global indeterminates.

    Keys are exponent tuples with trailing zeros stripped, so the key space
    is stable when new indeterminates are registered.  Instances are treated
    as immutable after construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, ...], Q]] = None):
        # terms must already be canonical: no zero values, stripped keys
        self.terms = terms if terms is not None else {}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "ScalarPoly":
        return _SP_ZERO

    @staticmethod
    def one() -> "ScalarPoly":
        return _SP_ONE

    @staticmethod
    def const(c) -> "ScalarPoly":
        c = Q(c)
        if c == 0:
            return _SP_ZERO
        return ScalarPoly({(): c})

    @staticmethod
    def var(name: str, power: int = 1, coeff=1) -> "ScalarPoly":
        coeff = Q(coeff)
        if coeff == 0:
            return _SP_ZERO
        if power < 0:
            raise ValueError("negative exponent")
        if power == 0:
            return ScalarPoly.const(coeff)
        idx = indet_index(name)
        key = tuple([0] * idx + [power])
        return ScalarPoly({key: coeff})

    @staticmethod
    def monomial(key: Tuple[int, ...], coeff) -> "ScalarPoly":
        coeff = Q(coeff)
        if coeff == 0:
            return _SP_ZERO
        return ScalarPoly({_strip(tuple(key)): coeff})

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_term(self) -> Q:
        return self.terms.get((), QZERO)

    def vars_present(self) -> Tuple[str, ...]:
        seen = set()
        for key in self.terms:
            for i, e in enumerate(key):
                if e:
                    seen.add(i)
        return tuple(_NAMES[i] for i in sorted(seen))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "ScalarPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s == 0:
                    del out[k]
                else:
                    out[k] = s
        return ScalarPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "ScalarPoly":
        return ScalarPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "ScalarPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ScalarPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "ScalarPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return _SP_ZERO
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: Dict[Tuple[int, ...], Q] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = _key_mul(ka, kb)
                c = ca * cb
                s = out.get(k)
                if s is None:
                    out[k] = c
                else:
                    s = s + c
                    if s == 0:
                        del out[k]
                    else:
                        out[k] = s
        return ScalarPoly(out)

    __rmul__ = __mul__

    def scale(self, q) -> "ScalarPoly":
        """Fast multiply by a rational."""
        if q == 1:
            return self
        if q == 0:
            return _SP_ZERO
        return ScalarPoly({k: c * q for k, c in self.terms.items()})

    def __pow__(self, n: int) -> "ScalarPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = _SP_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None  # mutable dict inside; not hashable

    # -- structure ---------------------------------------------------------

    def degree(self, name: str) -> int:
        """Degree in one indeterminate (-1 for the zero polynomial)."""
        idx = indet_index(name)
        deg = -1
        for key in self.terms:
            e = key[idx] if idx < len(key) else 0
            if e > deg:
                deg = e
        return deg

    def coeff(self, name: str, power: int) -> "ScalarPoly":
        """Coefficient of name**power, as a polynomial in the other vars."""
        idx = indet_index(name)
        out: Dict[Tuple[int, ...], Q] = {}
        for key, c in self.terms.items():
            e = key[idx] if idx < len(key) else 0
            if e != power:
                continue
            if idx < len(key):
                newkey = _strip(key[:idx] + (0,) + key[idx + 1:])
            else:
                newkey = key
            out[newkey] = out.get(newkey, QZERO) + c
        return ScalarPoly({k: c for k, c in out.items() if c != 0})

    def div_exact(self, name: str, power: int) -> "ScalarPoly":
        """Divide by name**power; every term must be divisible."""
        if power == 0:
            return self
        idx = indet_index(name)
        out: Dict[Tuple[int, ...], Q] = {}
        for key, c in self.terms.items():
            e = key[idx] if idx < len(key) else 0
            if e < power:
                raise ExactDivisionError(
                    f"term {key} not divisible by {name}**{power}")
            newkey = _strip(key[:idx] + (e - power,) + key[idx + 1:])
            out[newkey] = c
        return ScalarPoly(out)

    def substitute(self, binding: Dict[str, "ScalarPoly"]) -> "ScalarPoly":
        """Simultaneous substitution of indeterminates by polynomials."""
        idx_map = {indet_index(nm): _coerce(p) for nm, p in binding.items()}
        out = _SP_ZERO
        powcache: Dict[Tuple[int, int], ScalarPoly] = {}
        for key, c in self.terms.items():
            kept = list(key)
            factor = ScalarPoly.const(c)
            for i, e in enumerate(key):
                if e and i in idx_map:
                    kept[i] = 0
                    pw = powcache.get((i, e))
                    if pw is None:
                        pw = idx_map[i] ** e
                        powcache[(i, e)] = pw
                    factor = factor * pw
            kept_key = _strip(tuple(kept))
            if kept_key:
                factor = factor * ScalarPoly.monomial(kept_key, 1)
            out = out + factor
        return out

    def univariate(self, name: str) -> List[Q]:
        """Ascending coefficient list; fails if other vars are present."""
        idx = indet_index(name)
        deg = self.degree(name)
        coeffs = [QZERO] * (deg + 1)
        for key, c in self.terms.items():
            e = key[idx] if idx < len(key) else 0
            rest = _strip(key[:idx] + (0,) + key[idx + 1:]) if idx < len(key) else key
            if rest:
                raise ValueError(f"polynomial is not univariate in {name}")
            coeffs[e] = coeffs[e] + c
        return coeffs

    def eval_at(self, binding: Dict[str, Q]) -> Q:
        """Evaluate fully; every present indeterminate must be bound."""
        vals = {indet_index(nm): Q(v) for nm, v in binding.items()}
        total = QZERO
        for key, c in self.terms.items():
            term = c
            for i, e in enumerate(key):
                if e:
                    term = term * vals[i] ** e
            total = total + term
        return total

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            mono = "*".join(
                f"{_NAMES[i]}^{e}" if e > 1 else _NAMES[i]
                for i, e in enumerate(key) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    __repr__ = __str__


_SP_ZERO = ScalarPoly({})
_SP_ONE = ScalarPoly({(): QONE})


def raw_poly_mul(a: Dict[Tuple[int, ...], Q],
                 b: Dict[Tuple[int, ...], Q]) -> Dict[Tuple[int, ...], Q]:
    """Product of two term dicts without ScalarPoly wrapping (hot path)."""
    if len(a) > len(b):
        a, b = b, a
    out: Dict[Tuple[int, ...], Q] = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = _key_mul(ka, kb)
            c = ca * cb
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s == 0:
                    del out[k]
                else:
                    out[k] = s
    return out


def _coerce(x) -> Optional[ScalarPoly]:
    if isinstance(x, ScalarPoly):
        return x
    if isinstance(x, int) or type(x) is type(QONE):
        return ScalarPoly.const(x)
    return None


def sp_var(name: str) -> ScalarPoly:
    return ScalarPoly.var(name)


HBAR = sp_var("hbar")


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------

class Series:
    """Truncated power series in one indeterminate over Q.

    coeffs[k] is the coefficient of var**k; the order (number of retained
    coefficients) is explicit and arithmetic takes the minimum order of the
    operands, so precision loss is always visible in the result.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Iterable):
        self.var = var
        self.coeffs = tuple(Q(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("series needs at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @staticmethod
    def zero(var: str, order: int) -> "Series":
        return Series(var, [QZERO] * order)

    @staticmethod
    def one(var: str, order: int) -> "Series":
        return Series(var, [QONE] + [QZERO] * (order - 1))

    @staticmethod
    def x(var: str, order: int, coeff=1) -> "Series":
        c = [QZERO] * order
        if order > 1:
            c[1] = Q(coeff)
        return Series(var, c)

    def truncate(self, order: int) -> "Series":
        if order >= self.order:
            return self
        return Series(self.var, self.coeffs[:order])

    def _check(self, other: "Series") -> int:
        if self.var != other.var:
            raise ValueError(f"series variable mismatch: {self.var} vs {other.var}")
        return min(self.order, other.order)

    def __add__(self, other) -> "Series":
        if isinstance(other, Series):
            n = self._check(other)
            return Series(self.var,
                          [self.coeffs[i] + other.coeffs[i] for i in range(n)])
        c = Q(other)
        return Series(self.var, (self.coeffs[0] + c,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series(self.var, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Series) else -Q(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "Series":
        if isinstance(other, Series):
            n = self._check(other)
            a, b = self.coeffs, other.coeffs
            out = [QZERO] * n
            for i in range(n):
                ai = a[i]
                if ai == 0:
                    continue
                for j in range(n - i):
                    if b[j] != 0:
                        out[i + j] += ai * b[j]
            return Series(self.var, out)
        c = Q(other)
        return Series(self.var, [c * ci for ci in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (self.var == other.var and self.order == other.order
                and self.coeffs == other.coeffs)

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # -- transcendental maps -------------------------------------------

    def exp(self) -> "Series":
        if self.coeffs[0] != 0:
            raise SeriesDomainError("exp needs constant term 0")
        n = self.order
        out = Series.one(self.var, n)
        term = Series.one(self.var, n)
        for m in range(1, n):
            term = term * self * Q(1, m)
            out = out + term
        return out

    def log(self) -> "Series":
        if self.coeffs[0] != 1:
            raise SeriesDomainError("log needs constant term 1")
        n = self.order
        h = self - 1
        out = Series.zero(self.var, n)
        term = Series.one(self.var, n)
        for m in range(1, n):
            term = term * h
            out = out + term * Q((-1) ** (m + 1), m)
        return out

    def sqrt(self) -> "Series":
        """Square root with constant term 1."""
        if self.coeffs[0] != 1:
            raise SeriesDomainError("sqrt needs constant term 1")
        n = self.order
        g = [QONE] + [QZERO] * (n - 1)
        for k in range(1, n):
            acc = self.coeffs[k]
            for j in range(1, k):
                acc -= g[j] * g[k - j]
            g[k] = acc / 2
        return Series(self.var, g)

    def inverse(self) -> "Series":
        if self.coeffs[0] != 1:
            raise SeriesDomainError("inverse needs constant term 1")
        n = self.order
        g = [QONE] + [QZERO] * (n - 1)
        for k in range(1, n):
            acc = QZERO
            for j in range(1, k + 1):
                if self.coeffs[j] != 0:
                    acc += self.coeffs[j] * g[k - j]
            g[k] = -acc
        return Series(self.var, g)

    def valuation_div(self, k: int) -> "Series":
        """Exact division by var**k; order drops by k."""
        if k == 0:
            return self
        if k >= self.order:
            raise ExactDivisionError("valuation shift exceeds order")
        if any(c != 0 for c in self.coeffs[:k]):
            raise ExactDivisionError(
                f"series has {self.var}-valuation below {k}")
        return Series(self.var, self.coeffs[k:])

    def shift_up(self, k: int) -> "Series":
        """Multiply by var**k, keeping the same order."""
        if k == 0:
            return self
        return Series(self.var, (QZERO,) * k + self.coeffs[:self.order - k])

    def at_scaled(self, r, var: str = "hbar") -> "Series":
        """Substitute x -> r*x and rename the variable (default hbar)."""
        r = Q(r)
        pw = QONE
        out = []
        for c in self.coeffs:
            out.append(c * pw)
            pw = pw * r
        return Series(var, out)

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                v = self.var if k == 1 else f"{self.var}^{k}"
                parts.append(v if c == 1 else f"{c}*{v}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({self.var}^{self.order})"

    __repr__ = __str__


def series_map(s: Series, f: str) -> Series:
    """Apply one of exp/log/sqrt/inverse by name."""
    try:
        return getattr(s, f)()
    except AttributeError:
        raise ValueError(f"unknown series map {f!r}") from None


# ---------------------------------------------------------------------------
# the G series and its defining identities
# ---------------------------------------------------------------------------

def sinh_ratio_series(order: int, var: str = "x") -> Series:
    """(e^{x/2} - e^{-x/2}) / x as a truncated series; even, constant 1."""
    coeffs = []
    for j in range(order):
        if j % 2 == 0:
            # coefficient of x^j in 2*sinh(x/2)/x
            coeffs.append(Q(1, 2 ** j * _factorial(j + 1)))
        else:
            coeffs.append(QZERO)
    return Series(var, coeffs)


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def g_series(order: int, var: str = "x") -> Tuple[Series, Series]:
    """The even square-root solution of the two-sided factorization problem.

    Returns (G+, G-); with this choice the two coincide, since the square
    root of an even series is even.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    g = sinh_ratio_series(order, var).sqrt()
    return g, g


class FactorizationReport:
    """Outcome of checking the G+/G- defining identities up to an order."""

    __slots__ = ("order", "parity_first_fail", "product_first_fail")

    def __init__(self, order, parity_first_fail, product_first_fail):
        self.order = order
        self.parity_first_fail = parity_first_fail
        self.product_first_fail = product_first_fail

    @property
    def ok(self) -> bool:
        return self.parity_first_fail is None and self.product_first_fail is None

    def __str__(self) -> str:
        def leg(fail):
            return f"holds to order {self.order}" if fail is None \
                else f"fails at index {fail}"
        return (f"reflection: {leg(self.parity_first_fail)}; "
                f"product: {leg(self.product_first_fail)}")


def factorization_check(gplus: Series, gminus: Series) -> FactorizationReport:
    """Check G-(x) = G+(-x) and G+(x)G-(x) = (e^{x/2}-e^{-x/2})/x."""
    n = min(gplus.order, gminus.order)
    parity = None
    for k in range(n):
        if gminus.coeffs[k] != (-1) ** k * gplus.coeffs[k]:
            parity = k
            break
    target = sinh_ratio_series(n, gplus.var)
    prod = gplus.truncate(n) * gminus.truncate(n)
    product = None
    for k in range(n):
        if prod.coeffs[k] != target.coeffs[k]:
            product = k
            break
    return FactorizationReport(n, parity, product)


# ---------------------------------------------------------------------------
# rational roots
# ---------------------------------------------------------------------------

def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a // gcd(a, b) * b


def rational_roots(coeffs: Sequence, require_complete: bool = False
                   ) -> List[Tuple[Q, int]]:
    """All rational roots of a univariate polynomial over Q.

    coeffs is ascending.  Roots are found by the rational-root candidate
    test on the integer-cleared polynomial, verified by exact evaluation
    and removed by deflation, so multiplicities are exact.  Returns a list
    of (root, multiplicity) sorted by root.  With require_complete, raises
    IncompleteSplittingError if a nonconstant factor remains.
    """
    p = [Q(c) for c in coeffs]
    while p and p[-1] == 0:
        p.pop()
    if not p:
        raise ValueError("zero polynomial has no well-defined roots")

    found: Dict[Q, int] = {}

    # factor out powers of t
    v = 0
    while p[v] == 0:
        v += 1
    if v:
        found[QZERO] = v
        p = p[v:]

    if len(p) > 1:
        den = 1
        for c in p:
            den = _lcm(den, int(c.denominator))
        ip = [int(c * den) for c in p]
        candidates = set()
        for num in _divisors(ip[0]):
            for d in _divisors(ip[-1]):
                candidates.add(Q(num, d))
                candidates.add(Q(-num, d))
        for r in sorted(candidates):
            while len(p) > 1 and _poly_eval(p, r) == 0:
                p = _deflate(p, r)
                found[r] = found.get(r, 0) + 1

    if require_complete and len(p) > 1:
        raise IncompleteSplittingError(
            f"degree-{len(p) - 1} factor has no rational roots")
    return sorted(found.items())


def _poly_eval(p: Sequence[Q], r: Q) -> Q:
    acc = QZERO
    for c in reversed(p):
        acc = acc * r + c
    return acc


def _deflate(p: List[Q], r: Q) -> List[Q]:
    """Divide by (t - r); the remainder must vanish."""
    n = len(p) - 1
    out = [QZERO] * n
    acc = p[n]
    for i in range(n - 1, -1, -1):
        out[i] = acc
        acc = p[i] + acc * r
    if acc != 0:
        raise ExactDivisionError("deflation by a non-root")
    return out
