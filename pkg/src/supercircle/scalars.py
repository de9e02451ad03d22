"""Scalar fields for the two backends.

The exact backend is the Gaussian rationals Q(i), optionally extended by a
single real square root ``sqrt(d)`` with ``d`` a squarefree integer > 1.
Elements are stored as ``a + b*sqrt(d)`` with ``a, b`` in Q(i); the root is
reduced eagerly (``sqrt(d)**2 -> d``).  The floating backend is plain
Python ``complex``.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

from .errors import BackendUnsupported, NoSolution, NotInvertible, ParseError

DEFAULT_TOL = 1e-10


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n > 0`` as ``c**2 * d`` with ``d`` squarefree; return (c, d)."""
    c, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        c *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1
    return c, d * n


def _q(x):
    if isinstance(x, Fraction):
        return mpq(int(x.numerator), int(x.denominator))
    return mpq(x)


def _common_root(d1: int, d2: int) -> int:
    if d1 == 1:
        return d2
    if d2 == 1 or d1 == d2:
        return d1
    raise BackendUnsupported(
        f"exact backend holds one adjoined root; got sqrt({d1}) and sqrt({d2})"
    )


class ExactScalar:
    """Element ``(ar + i*ai) + (br + i*bi)*sqrt(d)`` of Q(i)(sqrt d)."""

    __slots__ = ("ar", "ai", "br", "bi", "d")

    def __init__(self, ar=0, ai=0, br=0, bi=0, d: int = 1):
        ar, ai, br, bi = _q(ar), _q(ai), _q(br), _q(bi)
        if d == 1:
            ar, ai, br, bi = ar + br, ai + bi, _Q0, _Q0
        elif not br and not bi:
            d = 1
        self.ar, self.ai, self.br, self.bi, self.d = ar, ai, br, bi, d

    @classmethod
    def _new(cls, ar, ai, br, bi, d):
        # trusted constructor: components already mpq and normalised except for a vanishing root part
        obj = object.__new__(cls)
        if d != 1 and not br and not bi:
            d = 1
        obj.ar, obj.ai, obj.br, obj.bi, obj.d = ar, ai, br, bi, d
        return obj

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Rational)) or type(x) is _MPQ:
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to an exact scalar")

    # --- predicates -------------------------------------------------------

    @property
    def has_root(self) -> bool:
        return self.d != 1

    def is_gaussian(self) -> bool:
        return self.d == 1

    def __bool__(self) -> bool:
        return bool(self.ar or self.ai or self.br or self.bi)

    def _key(self):
        return (self.ar, self.ai, self.br, self.bi, self.d)

    def __eq__(self, other) -> bool:
        if isinstance(other, complex):
            return complex(self) == other
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self.d == 1 and not self.ai:
            return hash(self.ar)
        return hash(self._key())

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (complex, float)):
            return complex(self) + other
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.d == 1 and o.d == 1:
            return ExactScalar._new(self.ar + o.ar, self.ai + o.ai, _Q0, _Q0, 1)
        d = _common_root(self.d, o.d)
        return ExactScalar._new(self.ar + o.ar, self.ai + o.ai, self.br + o.br, self.bi + o.bi, d)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._new(-self.ar, -self.ai, -self.br, -self.bi, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (complex, float)):
            return complex(self) - other
        try:
            return self + (-ExactScalar.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (complex, float)):
            return complex(self) * other
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.d == 1 and o.d == 1:
            ar, ai, cr, ci = self.ar, self.ai, o.ar, o.ai
            return ExactScalar._new(ar * cr - ai * ci, ar * ci + ai * cr, _Q0, _Q0, 1)
        d = _common_root(self.d, o.d)
        # (a + b s)(a' + b' s) = a a' + d b b' + (a b' + b a') s
        ar, ai, br, bi = self.ar, self.ai, self.br, self.bi
        cr, ci, er, ei = o.ar, o.ai, o.br, o.bi
        rr = ar * cr - ai * ci + d * (br * er - bi * ei)
        ri = ar * ci + ai * cr + d * (br * ei + bi * er)
        sr = ar * er - ai * ei + br * cr - bi * ci
        si = ar * ei + ai * er + br * ci + bi * cr
        return ExactScalar._new(rr, ri, sr, si, d)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if not self:
            raise NotInvertible("exact scalar zero has no inverse")
        # (a + b s)^{-1} = (a - b s) / (a^2 - d b^2); the denominator lies in Q(i)
        a = ExactScalar(self.ar, self.ai)
        b = ExactScalar(self.br, self.bi)
        den = a * a - b * b * self.d
        nr = den.ar * den.ar + den.ai * den.ai
        den_inv = ExactScalar(den.ar / nr, -den.ai / nr)
        num = ExactScalar(self.ar, self.ai, -self.br, -self.bi, self.d)
        return num * den_inv

    def __truediv__(self, other):
        if isinstance(other, (complex, float)):
            return complex(self) / other
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (complex, float)):
            return other / complex(self)
        return ExactScalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ExactScalar(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "ExactScalar":
        # the adjoined root is real, so only the Gaussian parts flip
        return ExactScalar._new(self.ar, -self.ai, self.br, -self.bi, self.d)

    def norm2(self) -> "ExactScalar":
        """``|x|**2`` as an exact scalar."""
        return self * self.conjugate()

    def __complex__(self) -> complex:
        s = math.sqrt(self.d)
        return complex(float(self.ar) + float(self.br) * s, float(self.ai) + float(self.bi) * s)

    def __abs__(self) -> float:
        return abs(complex(self))

    @property
    def real(self) -> "ExactScalar":
        return ExactScalar(self.ar, 0, self.br, 0, self.d)

    @property
    def imag(self) -> "ExactScalar":
        return ExactScalar(self.ai, 0, self.bi, 0, self.d)

    def is_real(self) -> bool:
        return not self.ai and not self.bi

    def __repr__(self) -> str:
        return f"ExactScalar({format_scalar(self)})"


_Q0 = mpq(0)
_MPQ = type(_Q0)

I = ExactScalar(0, 1)
ONE = ExactScalar(1)
ZERO = ExactScalar(0)


def gaussian(re=0, im=0) -> ExactScalar:
    return ExactScalar(re, im)


def is_exact(x) -> bool:
    return isinstance(x, (ExactScalar, int, Rational))


def to_complex(x) -> complex:
    return complex(x)


def conj(x):
    if isinstance(x, (int, Rational)):
        return x
    return x.conjugate()


def is_zero(x, tol: float | None = None) -> bool:
    if isinstance(x, (complex, float)) and tol is not None:
        return abs(x) <= tol
    return not x


def close(x, y, tol: float = DEFAULT_TOL) -> bool:
    if is_exact(x) and is_exact(y):
        return ExactScalar.coerce(x) == ExactScalar.coerce(y)
    return abs(complex(x) - complex(y)) <= tol


# --- square roots ---------------------------------------------------------


def _rational_sqrt(q):
    """Exact rational square root of ``q >= 0`` or None."""
    q = _q(q)
    if q < 0:
        return None
    n, d = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return mpq(rn, rd)
    return None


def _root_parts(q) -> tuple:
    """``sqrt(q) = c*sqrt(d)`` for rational q > 0, d squarefree; returns (c, d)."""
    q = _q(q)
    num, den = int(q.numerator), int(q.denominator)
    # sqrt(p/r) = sqrt(p*r)/r
    c, d = _squarefree_split(num * den)
    return mpq(c, den), d


def sqrt_rational(q) -> ExactScalar:
    """Principal square root of a rational: ``c*sqrt(d)``, times ``i`` if q < 0."""
    q = _q(q)
    neg = q < 0
    if not q:
        return ExactScalar(0)
    c, d = _root_parts(abs(q))
    root = ExactScalar(c) if d == 1 else ExactScalar(0, 0, c, 0, d)
    return root * I if neg else root


def sqrt_exact(x) -> ExactScalar:
    """Principal square root (non-negative real part) of a Gaussian rational.

    Raises :class:`NoSolution` when the root leaves Q(i)(sqrt d) for a single
    squarefree ``d``.
    """
    x = ExactScalar.coerce(x)
    if x.has_root:
        raise NoSolution("square roots of already-extended scalars are not supported")
    if not x.ai:
        return sqrt_rational(x.ar)
    # (p + i q)^2 = a + i b  =>  p^2 = (a + |x|)/2, q = b / (2p)
    mod = _rational_sqrt(x.ar * x.ar + x.ai * x.ai)
    if mod is None:
        raise NoSolution(f"sqrt of {format_scalar(x)} needs a nested radical")
    p2 = (x.ar + mod) / 2
    p = _rational_sqrt(p2)
    if p is not None:
        return ExactScalar(p, x.ai / (2 * p))
    # p = c*sqrt(d): q = b/(2 c sqrt d) = b sqrt(d) / (2 c d)
    pc, d = _root_parts(p2)
    return ExactScalar(0, 0, pc, x.ai / (2 * pc * d), d)


def sqrt_scalar(x):
    """Principal square root on either backend."""
    if is_exact(x):
        return sqrt_exact(x)
    return cmath.sqrt(complex(x))


def modulus(x):
    """``|x|`` exactly (through one adjoined root) or as a float."""
    if is_exact(x):
        x = ExactScalar.coerce(x)
        if x.has_root:
            raise BackendUnsupported("modulus of an already-extended scalar")
        return sqrt_rational(x.ar * x.ar + x.ai * x.ai)
    return abs(complex(x))


def sqrt_neg(m: int, exact: bool = True):
    """Principal ``sqrt(-m)``: ``i*sqrt(m)`` for m > 0, ``sqrt(|m|)`` for m < 0."""
    if exact:
        return sqrt_rational(-m)
    return 1j * math.sqrt(m) if m > 0 else complex(math.sqrt(-m))


def sqrt_pos_branch(m: int, exact: bool = True):
    """Principal ``sqrt(m)`` (the alternate normalisation)."""
    return sqrt_neg(-m, exact)


# --- text form ------------------------------------------------------------

_NUM = r"(?:\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+|\d+(?:/\d+)?)"
_GAUSS_RE = re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<im>[+-](?:{_NUM})?i)?$")
_IMAG_RE = re.compile(rf"^(?P<re>)(?P<im>[+-]?(?:{_NUM})?i)$")
_ROOT_RE = re.compile(r"^\[(?P<a>[^\]]*)\]\+\[(?P<b>[^\]]*)\]\*sqrt\((?P<d>\d+)\)$")


def _is_float_token(tok: str) -> bool:
    return "." in tok or "e" in tok.lower()


def _parse_num(tok: str):
    return float(tok) if _is_float_token(tok) else Fraction(tok)


def parse_scalar(text: str, exact: bool | None = None):
    """Parse ``1/2+3i``, ``-i``, ``0.5-2.0i`` or ``[a]+[b]*sqrt(d)``."""
    s = text.replace(" ", "")
    m = _ROOT_RE.match(s)
    if m:
        a = parse_scalar(m["a"], exact=True)
        b = parse_scalar(m["b"], exact=True)
        d = int(m["d"])
        c, dd = _squarefree_split(d)
        if dd == 1:
            raise ParseError(f"sqrt({d}) is rational; write it without a root")
        return a + ExactScalar(0, 0, b.ar * c, b.ai * c, dd)
    m = _IMAG_RE.match(s) or _GAUSS_RE.match(s)
    if not m:
        raise ParseError(f"bad scalar literal: {text!r}")
    re_tok, im_tok = m["re"], m["im"]
    floaty = any(t is not None and _is_float_token(t) for t in (re_tok, im_tok))
    if exact is None:
        exact = not floaty
    re_v = _parse_num(re_tok) if re_tok else 0
    if im_tok:
        body = im_tok[:-1]
        im_v = _parse_num(body + "1") if body in ("", "+", "-") else _parse_num(body)
    else:
        im_v = 0
    if exact:
        if floaty:
            raise ParseError(f"floating literal {text!r} in exact context")
        return ExactScalar(re_v, im_v)
    return complex(float(re_v), float(im_v))


def _fmt_q(q: Fraction) -> str:
    return str(q)


def _fmt_gauss(re_: Fraction, im: Fraction) -> str:
    if not im:
        return _fmt_q(re_)
    im_s = _fmt_q(im) + "i"
    if not re_:
        return im_s
    return f"{_fmt_q(re_)}{'' if im < 0 else '+'}{im_s}"


def format_scalar(x) -> str:
    if isinstance(x, (int, Rational)):
        x = ExactScalar(x)
    if isinstance(x, ExactScalar):
        a = _fmt_gauss(x.ar, x.ai)
        if not x.has_root:
            return a
        return f"[{a}]+[{_fmt_gauss(x.br, x.bi)}]*sqrt({x.d})"
    z = complex(x)
    im = repr(z.imag)
    sign = "" if im.startswith("-") else "+"
    return f"{z.real!r}{sign}{im}i"
