"""Global algebraic sections of (C^{1|1})^x, super vector fields and one-forms.

Sections are ``a(w) + b(w) eta`` with Laurent polynomials ``a, b`` in ``w``.
A derivation is stored by its values on the coordinates, ``D(w)`` and
``D(eta)``; a one-form ``A dw + B deta`` by its two coefficient sections.
Endomorphisms of the shape ``(w, eta) -> (f(w), g(w) eta)`` act on all of
these by pullback.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from .errors import NoSolution, ParseError, Unsupported
from .grassmann import GrassmannNumber
from .scalars import ExactScalar, format_scalar, is_exact, parse_scalar, sqrt_scalar


def _zero_like(c):
    return ExactScalar(0) if is_exact(c) else 0j


class Laurent:
    """Laurent polynomial in ``w``: a finite map exponent -> nonzero scalar."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, c, e: int) -> "Laurent":
        return cls({e: c})

    @classmethod
    def const(cls, c) -> "Laurent":
        return cls({0: c})

    def __bool__(self):
        return bool(self.coeffs)

    def degree_bounds(self) -> tuple[int, int] | None:
        if not self.coeffs:
            return None
        return min(self.coeffs), max(self.coeffs)

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def __add__(self, other):
        other = _as_laurent(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __rsub__(self, other):
        return _as_laurent(other) - self

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            return Laurent({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, object] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            if not self.is_monomial():
                raise Unsupported("only monomials are units of the Laurent ring")
            (e, c), = self.coeffs.items()
            inv = 1 / c if not is_exact(c) else ExactScalar.coerce(c).inverse()
            return Laurent({e * n: inv ** -n})
        out = Laurent.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, complex, ExactScalar)):
            other = Laurent.const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.coeffs == other.coeffs

    def close(self, other: "Laurent", tol: float = 1e-10) -> bool:
        keys = set(self.coeffs) | set(other.coeffs)
        return all(abs(complex(self.coeffs.get(e, 0)) - complex(other.coeffs.get(e, 0))) <= tol
                   for e in keys)

    __hash__ = None

    def derivative(self) -> "Laurent":
        return Laurent({e - 1: c * e for e, c in self.coeffs.items() if e})

    def compose(self, f: "Laurent") -> "Laurent":
        """``self(f(w))``; negative powers need ``f`` to be a monomial."""
        total = Laurent()
        for e, c in self.coeffs.items():
            if e < 0 and not f.is_monomial():
                raise Unsupported("negative powers of a non-monomial leave the Laurent ring")
            total = total + (f ** e) * c
        return total

    def evaluate(self, x):
        """Evaluate at a scalar or an even Grassmann number."""
        if isinstance(x, GrassmannNumber):
            total = GrassmannNumber.zero(x.n, x.exact, x.tol)
            xinv = None
            for e, c in self.coeffs.items():
                if e < 0 and xinv is None:
                    xinv = x.inv()
                total = total + ((x ** e) if e >= 0 else xinv ** (-e)) * c
            return total
        total = _zero_like(x)
        for e, c in self.coeffs.items():
            total = total + c * x ** e
        return total

    def divide_monomial(self, c, e: int) -> "Laurent":
        inv = 1 / c if not is_exact(c) else ExactScalar.coerce(c).inverse()
        return Laurent({k - e: v * inv for k, v in self.coeffs.items()})

    def conj(self) -> "Laurent":
        return Laurent({e: c.conjugate() for e, c in self.coeffs.items()})

    def __repr__(self):
        return f"Laurent({format_laurent(self)!r})"


def _as_laurent(x) -> Laurent:
    return x if isinstance(x, Laurent) else Laurent.const(x)


W = Laurent({1: 1})


def format_laurent(p: Laurent) -> str:
    """``3*w^-2 + (1i)*w`` style literal; terms by increasing exponent."""
    if not p.coeffs:
        return "0"
    parts = []
    for e in sorted(p.coeffs):
        c = format_scalar(p.coeffs[e])
        cs = c if re.fullmatch(r"-?\d+(/\d+)?", c) else f"({c})"
        if e == 0:
            parts.append(cs)
        elif e == 1:
            parts.append(f"{cs}*w")
        else:
            parts.append(f"{cs}*w^{e}")
    return " + ".join(parts)


_TERM_RE = re.compile(r"^(?:(?P<c>\([^()]*\)|-?[\d/.]+)\*?)?(?P<w>w(?:\^(?P<e>-?\d+))?)?$")


def parse_laurent(text: str, exact: bool | None = None) -> Laurent:
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty Laurent literal")
    out = Laurent()
    for part in re.split(r"\+(?![^()]*\))", s):
        m = _TERM_RE.match(part)
        if not part or not m or (m["c"] is None and m["w"] is None):
            raise ParseError(f"bad Laurent term {part!r}")
        c = m["c"]
        if c is None:
            coeff = parse_scalar("1", exact=exact if exact is not None else True)
        else:
            coeff = parse_scalar(c[1:-1] if c.startswith("(") else c, exact=exact)
        e = 0 if m["w"] is None else int(m["e"] or 1)
        out = out + Laurent({e: coeff})
    return out


# --- sections ---------------------------------------------------------------


@dataclass(eq=False)
class Section:
    """``even(w) + odd(w) * eta``."""

    even: Laurent = field(default_factory=Laurent)
    odd: Laurent = field(default_factory=Laurent)

    @classmethod
    def w(cls) -> "Section":
        return cls(W, Laurent())

    @classmethod
    def eta(cls) -> "Section":
        return cls(Laurent(), Laurent.const(1))

    @classmethod
    def const(cls, c) -> "Section":
        return cls(Laurent.const(c), Laurent())

    def __bool__(self) -> bool:
        return bool(self.even or self.odd)

    @property
    def parity(self) -> int | None:
        if not self.odd:
            return 0
        if not self.even:
            return 1
        return None

    def __add__(self, other):
        other = _as_section(other)
        return Section(self.even + other.even, self.odd + other.odd)

    __radd__ = __add__

    def __neg__(self):
        return Section(-self.even, -self.odd)

    def __sub__(self, other):
        return self + (-_as_section(other))

    def __mul__(self, other):
        if not isinstance(other, Section):
            return Section(self.even * other, self.odd * other)
        # (a + b eta)(c + d eta) = ac + (ad + bc) eta, eta^2 = 0
        return Section(self.even * other.even, self.even * other.odd + self.odd * other.even)

    def __rmul__(self, other):
        return Section(self.even * other, self.odd * other)

    def __eq__(self, other):
        other = _as_section(other)
        return self.even == other.even and self.odd == other.odd

    __hash__ = None

    def close(self, other: "Section", tol: float = 1e-10) -> bool:
        return self.even.close(other.even, tol) and self.odd.close(other.odd, tol)

    def reduced_at(self, w0=1):
        """Value of the eta-free part at ``w = w0`` (the reduced value)."""
        return self.even.evaluate(w0)

    def __repr__(self):
        return f"Section({format_laurent(self.even)} + ({format_laurent(self.odd)})*eta)"


def _as_section(x) -> Section:
    if isinstance(x, Section):
        return x
    if isinstance(x, Laurent):
        return Section(x, Laurent())
    return Section.const(x)


# --- derivations ------------------------------------------------------------


@dataclass(eq=False)
class SuperDerivation:
    """Derivation fixed by ``on_w = D(w)`` and ``on_eta = D(eta)``."""

    on_w: Section
    on_eta: Section
    parity: int

    def __post_init__(self):
        # D(w) has parity p, D(eta) has parity p + 1
        if self.on_w and self.on_w.parity != self.parity:
            raise ValueError(f"D(w) must have parity {self.parity}")
        if self.on_eta and self.on_eta.parity != 1 - self.parity:
            raise ValueError(f"D(eta) must have parity {1 - self.parity}")

    def __call__(self, s: Section) -> Section:
        return der_apply(self, s)

    def __add__(self, other: "SuperDerivation") -> "SuperDerivation":
        if other.parity != self.parity:
            raise ValueError("sum of derivations of different parity")
        return SuperDerivation(self.on_w + other.on_w, self.on_eta + other.on_eta, self.parity)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c) -> "SuperDerivation":
        return SuperDerivation(self.on_w * c, self.on_eta * c, self.parity)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SuperDerivation):
            return NotImplemented
        if not (self.on_w or self.on_eta) and not (other.on_w or other.on_eta):
            return True
        return self.parity == other.parity and self.on_w == other.on_w and self.on_eta == other.on_eta

    __hash__ = None

    def at_identity(self) -> tuple:
        """Tangent vector at (1, 0): coefficients of (d/dw, d/deta)."""
        return self.on_w.reduced_at(1), self.on_eta.reduced_at(1)

    def __repr__(self):
        return f"SuperDerivation(w -> {self.on_w}, eta -> {self.on_eta}, parity={self.parity})"


def der_apply(D: SuperDerivation, s: Section) -> Section:
    """``D(a(w) + b(w) eta) = a' D(w) + b' D(w) eta + b D(eta)``."""
    s = _as_section(s)
    eta = Section.eta()
    return (Section(s.even.derivative()) * D.on_w
            + Section(s.odd.derivative()) * D.on_w * eta
            + Section(s.odd) * D.on_eta)


def der_bracket(D1: SuperDerivation, D2: SuperDerivation) -> SuperDerivation:
    """``[D1, D2] = D1 D2 - (-1)^{p1 p2} D2 D1``, read off on ``w`` and ``eta``."""
    sign = -1 if (D1.parity and D2.parity) else 1
    on_w = der_apply(D1, D2.on_w) - der_apply(D2, D1.on_w) * sign
    on_eta = der_apply(D1, D2.on_eta) - der_apply(D2, D1.on_eta) * sign
    return SuperDerivation(on_w, on_eta, (D1.parity + D2.parity) % 2)


def euler_field() -> SuperDerivation:
    """``C = w d/dw + eta d/deta``."""
    return SuperDerivation(Section.w(), Section.eta(), 0)


def left_invariant_odd(k) -> SuperDerivation:
    """``Z = -k eta d/dw + w d/deta``."""
    return SuperDerivation(Section.eta() * (-k), Section.w(), 1)


def susy_field(k) -> SuperDerivation:
    """``Z_k = k eta d/dw + w d/deta``."""
    return SuperDerivation(Section.eta() * k, Section.w(), 1)


def is_leibniz(D: SuperDerivation, s: Section, t: Section) -> bool:
    """Graded Leibniz rule for homogeneous ``s``."""
    ps = s.parity
    if ps is None:
        raise ValueError("Leibniz check needs a homogeneous first factor")
    sign = -1 if (D.parity and ps) else 1
    return der_apply(D, s * t) == der_apply(D, s) * t + s * der_apply(D, t) * sign


# --- one-forms ----------------------------------------------------------------


@dataclass(eq=False)
class SuperOneForm:
    """``dw_coef * dw + deta_coef * deta``."""

    dw_coef: Section
    deta_coef: Section

    def __eq__(self, other):
        if not isinstance(other, SuperOneForm):
            return NotImplemented
        return self.dw_coef == other.dw_coef and self.deta_coef == other.deta_coef

    __hash__ = None

    def __mul__(self, s) -> "SuperOneForm":
        s = _as_section(s)
        return SuperOneForm(s * self.dw_coef, s * self.deta_coef)

    __rmul__ = __mul__

    def pair(self, D: SuperDerivation) -> Section:
        """Contraction ``A D(w) + B D(eta)``."""
        return self.dw_coef * D.on_w + self.deta_coef * D.on_eta

    def __repr__(self):
        return f"SuperOneForm(({self.dw_coef}) dw + ({self.deta_coef}) deta)"


def susy_form(k) -> SuperOneForm:
    """``omega_k = w dw - k eta deta``."""
    return SuperOneForm(Section.w(), Section.eta() * (-k))


def dw_form() -> SuperOneForm:
    return SuperOneForm(Section.const(1), Section())


# --- endomorphisms ------------------------------------------------------------


@dataclass(eq=False)
class LaurentEndo:
    """``(w, eta) -> (f(w), g(w) eta)``."""

    f: Laurent
    g: Laurent

    @classmethod
    def identity(cls) -> "LaurentEndo":
        return cls(W, Laurent.const(1))

    def __eq__(self, other):
        if not isinstance(other, LaurentEndo):
            return NotImplemented
        return self.f == other.f and self.g == other.g

    __hash__ = None

    def pull_function(self, s: Section) -> Section:
        """``F^*(a + b eta) = a(f) + b(f) g eta``."""
        s = _as_section(s)
        return Section(s.even.compose(self.f), s.odd.compose(self.f) * self.g)

    def apply(self, p):
        """Act on a T-point ``SuperPoint(w, eta)``."""
        from .dk_group import SuperPoint

        return SuperPoint(self.f.evaluate(p.w), self.g.evaluate(p.w) * p.eta)

    def __repr__(self):
        return f"LaurentEndo(f={format_laurent(self.f)}, g={format_laurent(self.g)})"


def compose_endo(F: LaurentEndo, G: LaurentEndo) -> LaurentEndo:
    """``F o G`` (apply G first)."""
    return LaurentEndo(F.f.compose(G.f), F.g.compose(G.f) * G.g)


def pullback_form(F: LaurentEndo, omega: SuperOneForm) -> SuperOneForm:
    """``F^*(A dw + B deta)`` with ``d f = f' dw`` and ``d(g eta) = g' eta dw + g deta``."""
    A = F.pull_function(omega.dw_coef)
    B = F.pull_function(omega.deta_coef)
    df = Section(F.f.derivative())
    d_geta_dw = Section(Laurent(), F.g.derivative())
    d_geta_deta = Section(F.g)
    return SuperOneForm(A * df + B * d_geta_dw, B * d_geta_deta)


def conformal_factor(F: LaurentEndo, k) -> Laurent | None:
    """The ``h`` with ``F^* omega_k = h omega_k``, or None if no even invertible ``h`` exists."""
    pulled = pullback_form(F, susy_form(k))
    A, B = pulled.dw_coef, pulled.deta_coef
    if A.odd or B.even:
        return None
    h = A.even.divide_monomial(1, 1)
    if not h.is_monomial():
        return None
    if pulled != susy_form(k) * Section(h):
        return None
    return h


def preserves_susy(F: LaurentEndo, k) -> bool:
    return conformal_factor(F, k) is not None


def laurent_sqrt(h: Laurent) -> list[Laurent]:
    """Both square roots of a monomial ``c w^{2e}``."""
    if not h.is_monomial():
        raise NoSolution("square roots are only taken of monomials")
    (e, c), = h.coeffs.items()
    if e % 2:
        raise NoSolution(f"w^{e} has no Laurent square root")
    r = sqrt_scalar(c)
    return [Laurent({e // 2: r}), Laurent({e // 2: -r})]


def solve_susy_gauge(k, reduced: Laurent | None = None) -> list[LaurentEndo]:
    """All ``F = (reduced, g eta)`` with ``F^* omega_k = h omega_k``, ``h`` even invertible.

    With ``F = (f, g eta)``: ``F^* omega_k = f f' dw - k g^2 eta deta``, so
    ``h = f f' / w`` and ``g^2 = h``.  Returned in the order (+, -).
    """
    if not k:
        raise ValueError("k must be nonzero")
    f = reduced if reduced is not None else Laurent({-1: 1})
    # dw coefficient does not see g; read it off with g = 0
    probe = pullback_form(LaurentEndo(f, Laurent()), susy_form(k))
    if probe.dw_coef.odd:
        raise NoSolution("pullback has an odd dw coefficient")
    h = probe.dw_coef.even.divide_monomial(1, 1)
    if not h.is_monomial():
        return []
    out = []
    for g in laurent_sqrt(h):
        F = LaurentEndo(f, g)
        if conformal_factor(F, k) == h:
            out.append(F)
    return out


def susy_frame_check(k) -> bool:
    """Z_k spans ker(omega_k) and (Z_k, [Z_k, Z_k]) is a frame at (1, 0)."""
    Zk = susy_field(k)
    B = der_bracket(Zk, Zk)
    omega = susy_form(k)
    if omega.pair(Zk) != Section():
        return False
    z_w, z_eta = Zk.at_identity()
    b_w, b_eta = B.at_identity()
    det = z_w * b_eta - z_eta * b_w
    if not is_exact(det):
        return abs(det) > 1e-12
    return bool(det)
SuperLaurentSection = Section
