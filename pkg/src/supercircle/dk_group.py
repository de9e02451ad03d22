"""The supergroups (C^{1|1})^x_k and the additive supergroup, on T-points.

A T-point of (C^{1|1})^x_k is a pair ``(w, eta)`` of Grassmann numbers, ``w``
even with invertible body and ``eta`` odd.  The group law depends on a
parameter ``k`` which is passed to each operation rather than stored on the
point, so that points can be compared across different ``k``.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass

from .errors import NotInvertible
from .grassmann import GrassmannNumber, literal_is_float, format_grassmann, is_real, parse_grassmann


@dataclass(frozen=True, eq=False)
class SuperPoint:
    w: GrassmannNumber
    eta: GrassmannNumber

    def __post_init__(self):
        if not self.w.is_even():
            raise ValueError("w must be even")
        if not self.eta.is_odd():
            raise ValueError("eta must be odd")
        self.w._check(self.eta)
        body = self.w.body
        if (self.w.exact and not body) or (not self.w.exact and abs(body) <= self.w.tol):
            raise NotInvertible("w must have an invertible body")

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> "SuperPoint":
        return cls(GrassmannNumber.one(n, exact), GrassmannNumber.zero(n, exact))

    @property
    def n(self) -> int:
        return self.w.n

    @property
    def exact(self) -> bool:
        return self.w.exact

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperPoint):
            return NotImplemented
        return self.w == other.w and self.eta == other.eta

    def close(self, other: "SuperPoint", tol: float | None = None) -> bool:
        return self.w.close(other.w, tol) and self.eta.close(other.eta, tol)

    def to_float(self) -> "SuperPoint":
        return SuperPoint(self.w.to_float(), self.eta.to_float())

    def __repr__(self) -> str:
        return f"SuperPoint(w={format_grassmann(self.w)}, eta={format_grassmann(self.eta)})"


@dataclass(frozen=True, eq=False)
class AdditivePoint:
    t: GrassmannNumber
    tau: GrassmannNumber

    def __post_init__(self):
        if not self.t.is_even():
            raise ValueError("t must be even")
        if not self.tau.is_odd():
            raise ValueError("tau must be odd")
        self.t._check(self.tau)

    @classmethod
    def zero(cls, n: int, exact: bool = True) -> "AdditivePoint":
        return cls(GrassmannNumber.zero(n, exact), GrassmannNumber.zero(n, exact))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AdditivePoint):
            return NotImplemented
        return self.t == other.t and self.tau == other.tau

    def close(self, other: "AdditivePoint", tol: float | None = None) -> bool:
        return self.t.close(other.t, tol) and self.tau.close(other.tau, tol)


def g_mul(p: SuperPoint, q: SuperPoint, k) -> SuperPoint:
    """``(w, eta)(w', eta') = (w w' + k eta eta', w eta' + w' eta)``."""
    return SuperPoint(p.w * q.w + p.eta * q.eta * k, p.w * q.eta + q.w * p.eta)


def g_inv(p: SuperPoint, k=None) -> SuperPoint:
    """``(w^{-1}, -w^{-2} eta)``; the formula does not involve ``k``."""
    winv = p.w.inv()
    return SuperPoint(winv, -(winv * winv * p.eta))


def g_identity_like(p: SuperPoint) -> SuperPoint:
    return SuperPoint.identity(p.n, p.exact)


def add_mul(a: AdditivePoint, b: AdditivePoint) -> AdditivePoint:
    """``(t, tau)(t', tau') = (t + t' + tau tau', tau + tau')``."""
    return AdditivePoint(a.t + b.t + a.tau * b.tau, a.tau + b.tau)


def add_inv(a: AdditivePoint) -> AdditivePoint:
    # (t, tau)(-t, -tau) = (-tau*tau, 0) = (0, 0)
    return AdditivePoint(-a.t, -a.tau)


def rescale(p: SuperPoint, c) -> SuperPoint:
    """``(w, eta) -> (w, c eta)``: an isomorphism from law ``k`` to law ``k/c**2``."""
    return SuperPoint(p.w, p.eta * c)


def super_exp(z: GrassmannNumber, zeta: GrassmannNumber) -> SuperPoint:
    """``Exp(z, zeta) = (e^z, e^z zeta)``."""
    ez = z.exp()
    return SuperPoint(ez, ez * zeta)


def cover_p(a: AdditivePoint, require_real: bool = True) -> SuperPoint:
    """``p(t, tau) = (e^{it}, e^{i pi/4} e^{it} tau)``, landing in S^{1|1} at k=1, u=1."""
    t, tau = a.t, a.tau
    if t.exact:
        t, tau = t.to_float(), tau.to_float()
    if require_real and not (is_real(t) and is_real(tau)):
        raise ValueError("cover_p expects conjugation-fixed (real) t and tau")
    e = (t * 1j).exp()
    return SuperPoint(e, e * tau * cmath.exp(1j * cmath.pi / 4))


# --- serialization ----------------------------------------------------------


def superpoint_to_dict(p: SuperPoint) -> dict:
    return {"w": format_grassmann(p.w), "eta": format_grassmann(p.eta)}


def superpoint_from_dict(doc: dict, n: int | None = None, exact: bool | None = None) -> SuperPoint:
    if set(doc) != {"w", "eta"}:
        raise ValueError("a SuperPoint document has exactly the fields 'w' and 'eta'")
    if exact is None:
        exact = not any(literal_is_float(doc[f]) for f in ("w", "eta"))
    if n is None:
        n = max(parse_grassmann(doc[f], exact=exact).n for f in ("w", "eta"))
    return SuperPoint(parse_grassmann(doc["w"], n, exact), parse_grassmann(doc["eta"], n, exact))


def superpoint_to_json(p: SuperPoint) -> str:
    return json.dumps(superpoint_to_dict(p))


def superpoint_from_json(text: str, n: int | None = None) -> SuperPoint:
    return superpoint_from_dict(json.loads(text), n)
