"""Grassmann numbers with paired conjugate generators.

A :class:`GrassmannNumber` lives in the exterior algebra on ``2N`` odd
symbols ``x1..xN`` and their conjugates ``X1..XN``.  Symbol ``j`` (1-based,
``xk = k`` and ``Xk = N + k``) is bit ``j - 1`` of a monomial mask, and a
monomial is always stored in increasing index order.

Conjugation is antilinear on scalars, swaps ``xk <-> Xk`` and is
multiplicative, ``conj(a*b) == conj(a)*conj(b)``, with no reversal sign.
"""

from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from math import factorial
from numbers import Rational
from typing import Iterable, Mapping

from .errors import BackendMismatch, BackendUnsupported, NotInvertible, ParseError
from .scalars import (
    DEFAULT_TOL,
    ExactScalar,
    format_scalar,
    parse_scalar,
)


@lru_cache(maxsize=None)
def _mul_sign(a: int, b: int) -> int:
    """Sign of ``mono(a) * mono(b)`` after sorting into increasing order."""
    swaps = 0
    j = 0
    bb = b
    while bb:
        if bb & 1:
            swaps += bin(a >> (j + 1)).count("1")
        bb >>= 1
        j += 1
    return -1 if swaps & 1 else 1


def _indices(mask: int) -> list[int]:
    out, j = [], 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def _sort_sign(seq: list[int]) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv & 1 else 1


@lru_cache(maxsize=None)
def _conj_mask(mask: int, n: int) -> tuple[int, int]:
    swapped = [j + n if j <= n else j - n for j in _indices(mask)]
    new = 0
    for j in swapped:
        new |= 1 << (j - 1)
    return new, _sort_sign(swapped)


def _parity_of(mask: int) -> int:
    return bin(mask).count("1") & 1


class GrassmannNumber:
    """Immutable element of the exterior algebra over one scalar backend.

    ``terms`` maps monomial masks to nonzero scalars.  ``exact`` selects the
    backend (:class:`~supercircle.scalars.ExactScalar` coefficients vs
    ``complex``); ``tol`` is the coefficientwise tolerance used by ``==`` on
    the floating backend.
    """

    __slots__ = ("n", "terms", "exact", "tol")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None,
                 exact: bool = True, tol: float = DEFAULT_TOL):
        self.n = n
        self.exact = exact
        self.tol = tol
        clean = {}
        limit = 1 << (2 * n)
        for mask, c in (terms or {}).items():
            if mask >= limit:
                raise ValueError(f"monomial mask {mask:#x} uses more than {2 * n} generators")
            c = self._coerce(c)
            if c:
                clean[mask] = c
        self.terms = clean

    # --- construction -----------------------------------------------------

    def _coerce(self, c):
        if self.exact:
            if isinstance(c, ExactScalar):
                return c
            if isinstance(c, (int, Rational)):
                return ExactScalar(c)
            if not isinstance(c, (complex, float)):
                raise TypeError(f"not a scalar: {c!r}")
            raise BackendMismatch(f"floating scalar {c!r} in an exact Grassmann number")
        if isinstance(c, (ExactScalar, complex, float, int, Rational)):
            return complex(c)
        raise TypeError(f"not a scalar: {c!r}")

    @classmethod
    def _raw(cls, n, terms, exact, tol):
        obj = cls.__new__(cls)
        obj.n, obj.terms, obj.exact, obj.tol = n, terms, exact, tol
        return obj

    def _like(self, terms):
        return GrassmannNumber._raw(self.n, terms, self.exact, self.tol)

    @classmethod
    def scalar(cls, c, n: int, exact: bool = True, tol: float = DEFAULT_TOL) -> "GrassmannNumber":
        return cls(n, {0: c}, exact, tol)

    @classmethod
    def zero(cls, n: int, exact: bool = True, tol: float = DEFAULT_TOL) -> "GrassmannNumber":
        return cls(n, {}, exact, tol)

    @classmethod
    def one(cls, n: int, exact: bool = True, tol: float = DEFAULT_TOL) -> "GrassmannNumber":
        return cls(n, {0: 1}, exact, tol)

    @classmethod
    def generator(cls, k: int, n: int, conjugate: bool = False, exact: bool = True,
                  tol: float = DEFAULT_TOL) -> "GrassmannNumber":
        """``xk`` (or ``Xk`` when ``conjugate``), ``1 <= k <= n``."""
        if not 1 <= k <= n:
            raise ValueError(f"generator index {k} outside 1..{n}")
        j = k + n if conjugate else k
        return cls(n, {1 << (j - 1): 1}, exact, tol)

    def generators(self) -> list["GrassmannNumber"]:
        n = self.n
        return [GrassmannNumber.generator(k, n, c, self.exact, self.tol)
                for c in (False, True) for k in range(1, n + 1)]

    # --- inspection -------------------------------------------------------

    @property
    def body(self):
        return self.terms.get(0, ExactScalar(0) if self.exact else 0j)

    @property
    def soul(self) -> "GrassmannNumber":
        return self._like({m: c for m, c in self.terms.items() if m})

    @property
    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements (zero counts as even), else None."""
        ps = {_parity_of(m) for m in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def is_even(self) -> bool:
        return all(not _parity_of(m) for m in self.terms)

    def is_odd(self) -> bool:
        return all(_parity_of(m) for m in self.terms)

    def even_part(self) -> "GrassmannNumber":
        return self._like({m: c for m, c in self.terms.items() if not _parity_of(m)})

    def odd_part(self) -> "GrassmannNumber":
        return self._like({m: c for m, c in self.terms.items() if _parity_of(m)})

    def coeff(self, *symbols: str):
        """Coefficient of a monomial given by names, e.g. ``coeff('x1', 'X2')``."""
        g = GrassmannNumber.one(self.n, self.exact, self.tol)
        for s in symbols:
            g = g * _symbol(s, self.n, self.exact, self.tol)
        if not g.terms:
            raise ValueError("monomial with a repeated generator is zero")
        (mask, sign), = g.terms.items()
        c = self.terms.get(mask, 0)
        return c * sign if c else (ExactScalar(0) if self.exact else 0j)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _check(self, other: "GrassmannNumber"):
        if other.n != self.n:
            raise BackendMismatch(f"generator counts differ: {self.n} vs {other.n}")
        if other.exact != self.exact:
            raise BackendMismatch("exact and floating Grassmann numbers cannot be mixed")

    def _lift(self, other) -> "GrassmannNumber":
        if isinstance(other, GrassmannNumber):
            self._check(other)
            return other
        return GrassmannNumber(self.n, {0: other}, self.exact, self.tol)

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            o = self._lift(other)
        except BackendMismatch:
            raise
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except BackendMismatch:
            raise
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GrassmannNumber):
            try:
                c = self._coerce(other)
            except BackendMismatch:
                raise
            except TypeError:
                return NotImplemented
            if not c:
                return self._like({})
            return self._like({m: v * c for m, v in self.terms.items()})
        self._check(other)
        out: dict[int, object] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue
                v = ca * cb
                if _mul_sign(ma, mb) < 0:
                    v = -v
                m = ma | mb
                s = out.get(m)
                out[m] = v if s is None else s + v
        return self._like({m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        # scalars are central
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, GrassmannNumber):
            return self * other.inv()
        c = self._coerce(other)
        if not c:
            raise NotInvertible("division by zero scalar")
        return self * (1 / c if not self.exact else c.inverse())

    def __rtruediv__(self, other):
        return self._lift(other) * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = GrassmannNumber.one(self.n, self.exact, self.tol)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inv(self) -> "GrassmannNumber":
        """Inverse via the terminating geometric series in the soul."""
        c = self.body
        if (self.exact and not c) or (not self.exact and abs(c) <= self.tol):
            raise NotInvertible("Grassmann number with zero body is not invertible")
        cinv = c.inverse() if self.exact else 1 / c
        # (c + n)^{-1} = c^{-1} sum_j (-n/c)^j
        step = self.soul * (-cinv)
        total = GrassmannNumber.one(self.n, self.exact, self.tol)
        power = total
        while True:
            power = power * step
            if not power:
                break
            total = total + power
        return total * cinv

    def conj(self) -> "GrassmannNumber":
        out = {}
        for m, c in self.terms.items():
            nm, sign = _conj_mask(m, self.n)
            cc = c.conjugate()
            out[nm] = -cc if sign < 0 else cc
        return self._like(out)

    def exp(self) -> "GrassmannNumber":
        """``e**body * sum_j soul**j / j!``; the sum terminates."""
        if not self.is_even():
            raise ValueError("exp is defined here for even elements only")
        c = self.body
        if self.exact:
            if c:
                raise BackendUnsupported(
                    f"e**({format_scalar(c)}) is not an exact scalar; use the float backend")
            scale = ExactScalar(1)
        else:
            scale = cmath.exp(c)
        nil = self.soul
        total = GrassmannNumber.one(self.n, self.exact, self.tol)
        power = total
        j = 0
        while True:
            j += 1
            power = power * nil
            if not power:
                break
            total = total + power * (Fraction(1, factorial(j)) if self.exact else 1 / factorial(j))
        return total * scale

    # --- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrassmannNumber):
            try:
                other = self._lift(other)
            except (TypeError, BackendMismatch):
                return NotImplemented
        if other.n != self.n or other.exact != self.exact:
            return False
        if self.exact:
            return self.terms == other.terms
        return self.close(other)

    def close(self, other, tol: float | None = None) -> bool:
        """Coefficientwise ``|a - b| <= tol * max(1, largest coefficient)``."""
        tol = self.tol if tol is None else tol
        other = self._lift(other) if not isinstance(other, GrassmannNumber) else other
        bound = tol * max(1.0, self.max_abs(), other.max_abs())
        for m in set(self.terms) | set(other.terms):
            a = complex(self.terms.get(m, 0))
            b = complex(other.terms.get(m, 0))
            if abs(a - b) > bound:
                return False
        return True

    def max_abs(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    __hash__ = None

    # --- conversion -------------------------------------------------------

    def to_float(self, tol: float = DEFAULT_TOL) -> "GrassmannNumber":
        return GrassmannNumber(self.n, {m: complex(c) for m, c in self.terms.items()}, False, tol)

    def with_generators(self, n: int) -> "GrassmannNumber":
        """Re-embed into the algebra on ``n >= self.n`` paired generators."""
        if n < self.n:
            raise ValueError("cannot shrink the generator count")
        out = {}
        for m, c in self.terms.items():
            new = 0
            for j in _indices(m):
                new |= 1 << ((j if j <= self.n else j - self.n + n) - 1)
            out[new] = c
        return GrassmannNumber(n, out, self.exact, self.tol)

    def monomials(self) -> list[tuple[list[int], object]]:
        return [(_indices(m), self.terms[m]) for m in sorted(self.terms, key=_term_order)]

    def __repr__(self) -> str:
        return f"GrassmannNumber({format_grassmann(self)!r})"

    __str__ = lambda self: format_grassmann(self)  # noqa: E731


def _term_order(mask: int):
    return (bin(mask).count("1"), _indices(mask))


# --- functional aliases ---------------------------------------------------


def gr_mul(a: GrassmannNumber, b: GrassmannNumber) -> GrassmannNumber:
    return a * b


def gr_inv(a: GrassmannNumber) -> GrassmannNumber:
    return a.inv()


def gr_conj(a: GrassmannNumber) -> GrassmannNumber:
    return a.conj()


def gr_exp(a: GrassmannNumber) -> GrassmannNumber:
    return a.exp()


def realify(a: GrassmannNumber) -> GrassmannNumber:
    """The conjugation-fixed part ``(a + conj(a)) / 2``."""
    return (a + a.conj()) * (Fraction(1, 2) if a.exact else 0.5)


def is_real(a: GrassmannNumber) -> bool:
    return a == a.conj()


def supercommutator(a: GrassmannNumber, b: GrassmannNumber) -> GrassmannNumber:
    """``ab - (-1)^{p(a)p(b)} ba`` for homogeneous a, b."""
    pa, pb = a.parity, b.parity
    if pa is None or pb is None:
        raise ValueError("supercommutator needs homogeneous arguments")
    return a * b - (b * a if not (pa and pb) else -(b * a))


# --- text form ------------------------------------------------------------

_SYM_RE = re.compile(r"^([xX])(\d+)$")


def _symbol(sym: str, n: int, exact: bool, tol: float) -> GrassmannNumber:
    m = _SYM_RE.match(sym)
    if not m:
        raise ParseError(f"bad generator symbol {sym!r}")
    k = int(m[2])
    if not 1 <= k <= n:
        raise ParseError(f"generator {sym} outside 1..{n}")
    return GrassmannNumber.generator(k, n, m[1] == "X", exact, tol)


def format_grassmann(a: GrassmannNumber) -> str:
    """Canonical literal, e.g. ``(1/2+3i) + (2)*x1^x2 + (1i)*X1``."""
    if not a.terms:
        return "(0)"
    parts = []
    for idx, c in a.monomials():
        s = f"({format_scalar(c)})"
        if idx:
            names = [f"x{j}" if j <= a.n else f"X{j - a.n}" for j in idx]
            s += "*" + "^".join(names)
        parts.append(s)
    return " + ".join(parts)


def _split_terms(text: str) -> list[tuple[int, str]]:
    """Split at top-level ``+``/``-`` signs, tracking bracket depth."""
    out, depth, cur, sign = [], 0, [], 1
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty Grassmann literal")
    i = 0
    while i < len(s):
        ch = s[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        if depth == 0 and ch in "+-" and (cur or i == 0):
            if cur:
                out.append((sign, "".join(cur)))
                cur = []
            sign = -1 if ch == "-" else 1
        else:
            cur.append(ch)
        i += 1
    if depth:
        raise ParseError(f"unbalanced brackets in {text!r}")
    if not cur:
        raise ParseError(f"dangling sign in {text!r}")
    out.append((sign, "".join(cur)))
    return out


def literal_is_float(text: str) -> bool:
    # scan only the parenthesised scalars for floating tokens
    return any(("." in t or re.search(r"\d[eE][+-]?\d", t)) for t in re.findall(r"\(([^()]*)\)", text))


def parse_grassmann(text: str, n: int | None = None, exact: bool | None = None,
                    tol: float = DEFAULT_TOL) -> GrassmannNumber:
    """Parse the textual literal produced by :func:`format_grassmann`."""
    if exact is None:
        exact = not literal_is_float(text)
    if n is None:
        ks = [int(k) for k in re.findall(r"[xX](\d+)", text)]
        n = max(ks, default=1)
    total = GrassmannNumber.zero(n, exact, tol)
    for sign, term in _split_terms(text):
        coeff = 1
        mono = term
        if term.startswith("("):
            depth = 0
            for pos, ch in enumerate(term):
                depth += ch == "("
                depth -= ch == ")"
                if depth == 0:
                    break
            coeff = parse_scalar(term[1:pos], exact=exact)
            mono = term[pos + 1:]
            if mono.startswith("*"):
                mono = mono[1:]
            elif mono:
                raise ParseError(f"expected '*' after scalar in term {term!r}")
        g = GrassmannNumber.one(n, exact, tol)
        if mono:
            for sym in mono.split("^"):
                g = g * _symbol(sym, n, exact, tol)
        elif not term.startswith("("):
            raise ParseError(f"empty term in {text!r}")
        total = total + g * coeff * sign
    return total


def grassmann_sum(items: Iterable[GrassmannNumber], like: GrassmannNumber) -> GrassmannNumber:
    total = like._like({})
    for x in items:
        total = total + x
    return total
