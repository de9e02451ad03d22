"""Real structures on (C^{1|1})^x_k and the compact real form S^{1|1}.

Conjugations ``s(w, eta) = (conj w, u conj eta)``, real structures
``rho = P_sign o s``, the fixed-point group, its two charts over the circle,
and the induced real forms of the Lie superalgebra.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

from .errors import ChartUndefined, InvalidConjugation, InvalidRealForm
from .grassmann import GrassmannNumber
from .dk_group import SuperPoint, g_inv, g_mul
from .sampling import random_real_even, random_real_odd
from .scalars import DEFAULT_TOL, ExactScalar, I, close, conj, is_exact, modulus, sqrt_scalar
from .sections_susy import der_bracket, euler_field, left_invariant_odd


def _i_like(x):
    return I if is_exact(x) else 1j


def _is_zero(x, tol=DEFAULT_TOL) -> bool:
    return not x if is_exact(x) else abs(x) <= tol


@dataclass(frozen=True)
class Conjugation:
    u: object
    k: object

    def is_valid(self, tol: float = DEFAULT_TOL) -> bool:
        u, k = self.u, self.k
        if _is_zero(k, tol):
            return False
        return close(u * u, conj(k) / k, tol) and close(u * conj(u), 1, tol)


def conjugation_roots(k) -> list:
    """Both ``u`` with ``u**2 = conj(k)/k``: ``u = +-conj(k)/|k|``."""
    if _is_zero(k):
        raise ValueError("k must be nonzero")
    u = conj(k) / modulus(k)
    return [u, -u]


def apply_s(c: Conjugation, p: SuperPoint, strict: bool = True) -> SuperPoint:
    """``s(w, eta) = (conj w, u conj eta)``."""
    if strict and not c.is_valid():
        raise InvalidConjugation(f"u={c.u!r} does not satisfy u^2 = conj(k)/k, |u| = 1")
    return SuperPoint(p.w.conj(), p.eta.conj() * c.u)


def s_is_morphism_on(c: Conjugation, p: SuperPoint, q: SuperPoint) -> bool:
    """``s(p q) == s(p) s(q)`` with the law at ``k`` on both sides."""
    lhs = apply_s(c, g_mul(p, q, c.k), strict=False)
    rhs = g_mul(apply_s(c, p, strict=False), apply_s(c, q, strict=False), c.k)
    return lhs == rhs


@dataclass(frozen=True)
class RealStructure:
    """``rho = P_sign o s``: ``(w, eta) -> (conj(w)^-1, sign i u conj(w)^-2 conj(eta))``."""

    conj: Conjugation
    sign: int = 1

    @classmethod
    def make(cls, k, u=None, sign: int = 1) -> "RealStructure":
        if u is None:
            u = conjugation_roots(k)[0]
        r = cls(Conjugation(u, k), sign)
        if not r.conj.is_valid():
            raise InvalidConjugation(f"u={u!r} is not a conjugation for k={k!r}")
        return r

    @property
    def odd_factor(self):
        """The scalar ``sign * i * u`` multiplying ``conj(w)^-2 conj(eta)``."""
        u = self.conj.u
        return _i_like(u) * u * self.sign


def apply_rho(r: RealStructure, p: SuperPoint) -> SuperPoint:
    if not r.conj.is_valid():
        raise InvalidConjugation("invalid conjugation inside real structure")
    wb_inv = p.w.conj().inv()
    return SuperPoint(wb_inv, wb_inv * wb_inv * p.eta.conj() * r.odd_factor)


def is_fixed_point(r: RealStructure, p: SuperPoint, tol: float | None = None) -> bool:
    """Both ``w = conj(w)^-1`` and ``eta = sign i u conj(eta) conj(w)^-2``."""
    img = apply_rho(r, p)
    if p.exact:
        return img == p
    return img.close(p, tol)


def fixed_point_from(r: RealStructure, phase_t, tau: GrassmannNumber) -> SuperPoint:
    """The fixed point ``(w, c w tau)`` for even ``w`` with ``w conj(w) = 1`` and real ``tau``.

    ``c = 1 + v`` (or ``i(1 - v)`` when ``v = -1``) with ``v = sign i u``
    satisfies ``c = v conj(c)``, which is exactly the odd fixed-point equation.
    """
    w = phase_t
    v = r.odd_factor
    c = 1 + v
    if _is_zero(c):
        c = _i_like(v) * (1 - v)
    return SuperPoint(w, w * tau * c)


def unit_phase(rng: random.Random, n: int, exact: bool) -> GrassmannNumber:
    """Random even ``w`` with ``w * conj(w) == 1``.

    The exact body is a Pythagorean point of the circle; the soul is ``exp(i t)``
    for a real nilpotent ``t``.
    """
    t = random_real_even(rng, n, exact=exact)
    t = t.soul
    if exact:
        a, b = rng.randint(1, 6), rng.randint(0, 6)
        body = ExactScalar(a * a - b * b, 2 * a * b) / (a * a + b * b)
        if rng.random() < 0.5:
            body = -body
        return (t * I).exp() * body
    theta = rng.uniform(0, 2 * math.pi)
    return (t * 1j + theta * 1j).exp()


def random_fixed_point(rng: random.Random, r: RealStructure, n: int = 4,
                       exact: bool | None = None) -> SuperPoint:
    if exact is None:
        exact = is_exact(r.conj.u) and is_exact(r.conj.k)
    w = unit_phase(rng, n, exact)
    tau = random_real_odd(rng, n, exact=exact)
    return fixed_point_from(r, w, tau)


# --- charts over the reduced circle --------------------------------------------


@dataclass(frozen=True)
class ChartRecord:
    t: float
    x: float
    y: float
    zeta_per_sigma: float | None  # chart 1: zeta = factor * sigma
    sigma_per_zeta: float | None  # chart 2: sigma = factor * zeta
    proportional: bool


def _reduce_angle(t: float) -> float:
    return t % (2 * math.pi)


def chart_factor(t: float, chart: int, tol: float = DEFAULT_TOL) -> float:
    """``cos 2t / (1 - sin 2t)`` (chart 1) or ``cos 2t / (1 + sin 2t)`` (chart 2)."""
    t = _reduce_angle(t)
    s2, c2 = math.sin(2 * t), math.cos(2 * t)
    den = 1 - s2 if chart == 1 else 1 + s2
    if chart not in (1, 2):
        raise ValueError("chart is 1 or 2")
    if abs(den) <= tol:
        raise ChartUndefined(f"chart {chart} is undefined at t={t}")
    return c2 / den


def odd_equations(t: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """Coefficients ``(of sigma, of zeta)`` of the two odd relations at ``x=cos t, y=sin t``.

    ``sigma(x^2-y^2) + 2xy zeta - zeta = 0`` and ``zeta(x^2-y^2) - 2xy sigma - sigma = 0``.
    """
    x, y = math.cos(t), math.sin(t)
    e1 = (x * x - y * y, 2 * x * y - 1)
    e2 = (-2 * x * y - 1, x * x - y * y)
    return e1, e2


def chart_coords(t: float, tol: float = DEFAULT_TOL) -> ChartRecord:
    t = _reduce_angle(t)
    x, y = math.cos(t), math.sin(t)
    e1, e2 = odd_equations(t)
    proportional = abs(e1[0] * e2[1] - e1[1] * e2[0]) <= tol
    factors = []
    for chart in (1, 2):
        try:
            factors.append(chart_factor(t, chart, tol))
        except ChartUndefined:
            factors.append(None)
    if factors == [None, None]:  # pragma: no cover - 1 - sin and 1 + sin never vanish together
        raise ChartUndefined(f"no chart contains t={t}")
    return ChartRecord(t, x, y, factors[0], factors[1], proportional)


def chart_point(t: float, sigma: GrassmannNumber) -> SuperPoint:
    """Point of S^{1|1} (k=1, u=1) in chart 1: ``eta = sigma + i zeta``, ``zeta = factor*sigma``."""
    f = chart_factor(t, 1)
    w = GrassmannNumber.scalar(cmath.exp(1j * t), sigma.n, exact=False)
    sigma = sigma.to_float() if sigma.exact else sigma
    return SuperPoint(w, sigma * (1 + 1j * f))


# --- Lie superalgebra involutions ------------------------------------------------


def _der_match(D1, D2, tol: float = DEFAULT_TOL) -> bool:
    if D1 == D2:
        return True
    return D1.on_w.close(D2.on_w, tol) and D1.on_eta.close(D2.on_eta, tol)


def zz_structure_constant(k):
    """``c`` with ``[Z, Z] = c C`` for ``Z = -k eta d/dw + w d/deta``."""
    C = euler_field()
    B = der_bracket(left_invariant_odd(k), left_invariant_odd(k))
    c = B.on_w.even.coeffs.get(1, 0)
    if not _der_match(B, C * c):
        raise AssertionError("[Z, Z] is not proportional to C")
    return c


@dataclass(frozen=True)
class LieInvolution:
    a: object
    k: object

    def satisfies_constraints(self, tol: float = DEFAULT_TOL) -> bool:
        a, k = self.a, self.k
        return close(a * conj(a), 1, tol) and close(a * a, -conj(k) / k, tol)


def lie_involution_solve(k) -> list[LieInvolution]:
    """Both ``a`` for ``rho(C) = -C, rho(Z) = a Z`` antilinear, involutive, bracket preserving.

    Antilinearity turns ``rho([Z,Z]) = [rho Z, rho Z]`` into ``conj(c) * (-1) = a^2 c``
    with ``[Z,Z] = c C``; involutivity is ``|a| = 1``.
    """
    if _is_zero(k):
        raise ValueError("k must be nonzero")
    c = zz_structure_constant(k)
    target = -conj(c) / c
    a = sqrt_scalar(target)
    out = [LieInvolution(a, k), LieInvolution(-a, k)]
    for inv in out:
        if not inv.satisfies_constraints():
            raise AssertionError("constructed involution violates its constraints")
    return out


def differential_at_identity(r: RealStructure) -> list[list]:
    """Jacobian at (1, 0) of ``(w, eta) -> (w^-1, sign i u w^-2 eta)``.

    Evaluated on the first-order point ``(1 + e, o)`` with ``e = x1 X1``
    (even, square zero) and ``o = x2``; entry ``[i][j]`` is the derivative of
    output ``i`` along input ``j``, both ordered ``(w, eta)``.
    """
    exact = is_exact(r.conj.u)
    n = 2
    x1 = GrassmannNumber.generator(1, n, exact=exact)
    e = x1 * GrassmannNumber.generator(1, n, conjugate=True, exact=exact)
    o = GrassmannNumber.generator(2, n, exact=exact)
    w = 1 + e
    winv = w.inv()
    out_w = winv
    out_eta = winv * winv * o * r.odd_factor

    def d(g, direction):
        (mask, _), = direction.terms.items()
        return g.terms.get(mask, ExactScalar(0) if exact else 0j)

    return [[d(out_w, e), d(out_w, o)], [d(out_eta, e), d(out_eta, o)]]


def antilinear_square(D: list[list]) -> list[list]:
    """Matrix of ``J o J`` for ``J(v) = D conj(v)``: ``D conj(D)``."""
    return [[sum((D[i][m] * conj(D[m][j]) for m in range(2)), 0 * D[0][0]) for j in range(2)]
            for i in range(2)]


# --- real forms of the Lie superalgebra -----------------------------------------


@dataclass(frozen=True)
class RealFormBasis:
    """Generators ``C' = iC``, ``Z' = bZ``; valid iff ``b / conj(b) = i conj(k)/|k|``."""

    b: object
    k: object

    def is_valid(self, tol: float = DEFAULT_TOL) -> bool:
        b, k = self.b, self.k
        if _is_zero(b, tol):
            return False
        return close(b / conj(b), _i_like(k) * conj(k) / modulus(k), tol)


def real_form_basis(k, scale=1) -> RealFormBasis:
    """A valid ``b``: ``scale * (1 + a)`` with ``a = i conj(k)/|k|``."""
    a = _i_like(k) * conj(k) / modulus(k)
    b = 1 + a
    if _is_zero(b):
        b = _i_like(k) * (1 - a)
    return RealFormBasis(b * scale, k)


def real_form_bracket(basis: RealFormBasis) -> dict:
    """Structure constants of the real form, keyed by generator pairs.

    Values are coefficients against ``C'``; ``("Z'", "Z'")`` equals
    ``-2 |b|^2 |k|``.
    """
    if not basis.is_valid():
        raise InvalidRealForm(f"b={basis.b!r} does not satisfy b/conj(b) = i conj(k)/|k|")
    k, b = basis.k, basis.b
    i = _i_like(k)
    C = euler_field()
    Cp = C * i
    Zp = left_invariant_odd(k) * b

    def coefficient(D):
        c = D.on_w.even.coeffs.get(1, 0)
        # C' = i C, so D = (c / i) C'
        coef = c / i if c else 0 * i
        if not _der_match(D, Cp * coef):
            raise AssertionError("bracket leaves span{C'}")
        return coef

    return {
        ("C'", "C'"): coefficient(der_bracket(Cp, Cp)),
        ("C'", "Z'"): coefficient(der_bracket(Cp, Zp)),
        ("Z'", "Z'"): coefficient(der_bracket(Zp, Zp)),
    }


def expected_zz(basis: RealFormBasis):
    b, k = basis.b, basis.k
    return -2 * (b * conj(b)) * modulus(k)


def closure_check(r: RealStructure, p: SuperPoint, q: SuperPoint) -> bool:
    """Fixed points are closed under product and inverse at ``k``."""
    k = r.conj.k
    return is_fixed_point(r, g_mul(p, q, k)) and is_fixed_point(r, g_inv(p))
