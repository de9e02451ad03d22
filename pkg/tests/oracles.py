"""Independent reference computations used to freeze expected values.

Nothing here imports the package's arithmetic: Grassmann products are redone
with tuples and bubble sorts over sympy coefficients, derivations with sympy
calculus, ranks with sympy matrices, and Fourier coefficients with Bessel
functions.
"""

from __future__ import annotations

import sympy as sp

from supercircle.scalars import ExactScalar

w_sym = sp.Symbol("w")


def to_sympy(x) -> sp.Expr:
    """Exact scalar -> sympy number (reads the stored components only)."""
    if isinstance(x, ExactScalar):
        ar, ai, br, bi = (sp.Rational(int(c.numerator), int(c.denominator))
                          for c in (x.ar, x.ai, x.br, x.bi))
        return ar + sp.I * ai + (br + sp.I * bi) * sp.sqrt(x.d)
    if isinstance(x, complex):
        return sp.Float(x.real) + sp.I * sp.Float(x.imag)
    return sp.nsimplify(x)


def same(a, b) -> bool:
    diff = sp.expand(sp.radsimp(sp.expand(a - b)))
    return diff == 0 or sp.simplify(diff) == 0


# --- Grassmann oracle -----------------------------------------------------------


def bubble_sign(seq: tuple) -> tuple[int, tuple | None]:
    """Sort by adjacent swaps; returns (sign, sorted) or (0, None) on a repeat."""
    s = list(seq)
    sign = 1
    for i in range(len(s)):
        for j in range(len(s) - 1 - i):
            if s[j] > s[j + 1]:
                s[j], s[j + 1] = s[j + 1], s[j]
                sign = -sign
    if len(set(s)) != len(s):
        return 0, None
    return sign, tuple(s)


def oracle_from(g) -> dict:
    """GrassmannNumber -> {sorted index tuple: sympy coefficient}."""
    return {tuple(idx): to_sympy(c) for idx, c in g.monomials()}


def omul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            sign, key = bubble_sign(ka + kb)
            if sign:
                out[key] = out.get(key, 0) + sign * ca * cb
    return {k: sp.expand(v) for k, v in out.items() if sp.expand(v) != 0}


def oadd(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + scale * v
    return {k: sp.expand(v) for k, v in out.items() if sp.expand(v) != 0}


def oscale(a: dict, c) -> dict:
    return {k: sp.expand(v * c) for k, v in a.items() if sp.expand(v * c) != 0}


def oconj(a: dict, n: int) -> dict:
    """Antilinear, swap x_j <-> X_j, re-sort (multiplicative convention)."""
    out = {}
    for k, v in a.items():
        swapped = tuple(j + n if j <= n else j - n for j in k)
        sign, key = bubble_sign(swapped)
        out[key] = sp.expand(sign * sp.conjugate(v))
    return out


def oinv(a: dict) -> dict:
    body = a.get((), 0)
    nil = {k: v for k, v in a.items() if k}
    # (c + n)^-1 = c^-1 sum (-n/c)^j
    term = {(): 1 / body}
    total = dict(term)
    step = oscale(nil, -1 / body)
    while True:
        term = omul(term, step)
        if not term:
            return total
        total = oadd(total, term)


def oequal(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    return all(same(a.get(k, 0), b.get(k, 0)) for k in keys)


# --- group law through the oracle ----------------------------------------------------


def og_mul(p, q, k):
    (w, e), (w2, e2) = p, q
    return (oadd(omul(w, w2), oscale(omul(e, e2), k)), oadd(omul(w, e2), omul(w2, e)))


# --- derivations with sympy calculus ----------------------------------------------------
# a section is (even, odd) with sympy expressions in w; eta is handled by hand


def sympy_der_apply(D, s):
    """D given by (D(w), D(eta)) as sections; s = (a, b) meaning a + b eta."""
    (dw_e, dw_o), (deta_e, deta_o) = D
    a, b = s
    da, db = sp.diff(a, w_sym), sp.diff(b, w_sym)
    # a' D(w) + b' D(w) eta + b D(eta); eta^2 = 0
    even = da * dw_e + b * deta_e
    odd = da * dw_o + db * dw_e + b * deta_o
    return sp.expand(even), sp.expand(odd)


def sympy_bracket_coefficient_zz(k):
    """``c`` with ``[Z, Z] = c C`` for ``Z = -k eta d/dw + w d/deta`` via sympy."""
    Z = ((0, -k), (w_sym, 0))
    # [Z, Z] = 2 Z Z for odd Z; evaluate on w
    zw = sympy_der_apply(Z, Z[0])
    # C(w) = w, so c = (2 Z(Z(w)))_even / w
    return sp.simplify(2 * zw[0] / w_sym)


# --- linear algebra -------------------------------------------------------------------


def sympy_matrix(M) -> sp.Matrix:
    return sp.Matrix([[to_sympy(x) for x in row] for row in M])
