"""Finite-dimensional representations of S^{1|1} as Harish-Chandra pairs.

A representation is a list of weight blocks.  On a block of weight ``m`` the
circle acts by ``t -> t^m`` and the odd generator ``Z`` acts by an odd matrix
(even basis vectors first, then odd ones) with ``Z^2 = -m``.  ``C`` acts by
``m``.
"""

from __future__ import annotations

import cmath
import json
import random
from collections import Counter
from dataclasses import dataclass, field

from . import linalg as la
from .errors import (BackendUnsupported, NotARepresentation, NotInG, NotInvertible,
                     ParseError, UseTrivialOrPiMinus)
from .grassmann import GrassmannNumber
from .dk_group import SuperPoint, g_mul
from .real_forms import RealStructure, is_fixed_point, random_fixed_point
from .scalars import (DEFAULT_TOL, ExactScalar, I, format_scalar, is_exact, parse_scalar,
                      sqrt_neg, sqrt_pos_branch)

BRANCHES = ("default", "compat_sqrt_m")


def weight_factor(m: int, exact: bool = True, branch: str = "default"):
    """``sqrt(-m)`` (default) or ``sqrt(m)`` (alternate normalisation), principal branch."""
    if branch == "default":
        return sqrt_neg(m, exact)
    if branch == "compat_sqrt_m":
        return sqrt_pos_branch(m, exact)
    raise ValueError(f"unknown branch {branch!r}; expected one of {BRANCHES}")


def _i(exact):
    return I if exact else 1j


# --- blocks -------------------------------------------------------------------


@dataclass
class RepBlock:
    m: int
    p: int
    q: int
    Z: la.Matrix

    def __post_init__(self):
        n = self.p + self.q
        if la.shape(self.Z) != (n, n) and not (n == 0 and self.Z == []):
            raise ValueError(f"Z must be {n}x{n} for p={self.p}, q={self.q}")

    @property
    def exact(self) -> bool:
        return all(is_exact(x) for row in self.Z for x in row)

    @property
    def A(self) -> la.Matrix:
        """Even -> odd part of Z (q x p)."""
        return la.block(self.Z, self.p, self.p + self.q, 0, self.p)

    @property
    def B(self) -> la.Matrix:
        """Odd -> even part of Z (p x q)."""
        return la.block(self.Z, 0, self.p, self.p, self.p + self.q)

    def circle_action(self, t):
        """Matrix of ``t`` in the reduced circle: ``t^m I``."""
        n = self.p + self.q
        return la.scale(la.identity(n, exact=is_exact(t)), t ** self.m)


@dataclass
class GradedRep:
    blocks: list[RepBlock] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(b.exact for b in self.blocks)


@dataclass(frozen=True)
class SuperWeightSpace:
    """The 1|1 irreducible of weight ``m``: ``Z = [[0, s], [s, 0]]``, ``s^2 = -m``."""

    m: int
    s: object

    @property
    def Z(self) -> la.Matrix:
        z = 0 * self.s
        return [[z, self.s], [self.s, z]]

    def block(self) -> RepBlock:
        return RepBlock(self.m, 1, 1, self.Z)


@dataclass(frozen=True)
class PiMinus:
    """Weight 0, basis (u even, w odd), ``Z u = w``, ``Z w = 0``."""

    exact: bool = True
    reversed: bool = False  # parity-reversed copy: u odd, w even

    def block(self) -> RepBlock:
        z, one = (ExactScalar(0), ExactScalar(1)) if self.exact else (0j, 1 + 0j)
        if self.reversed:
            # even w first, odd u second: Z u = w
            return RepBlock(0, 1, 1, [[z, one], [z, z]])
        return RepBlock(0, 1, 1, [[z, z], [one, z]])


def make_weight_rep(m: int, branch: int = 1, exact: bool = True) -> SuperWeightSpace:
    if m == 0:
        raise UseTrivialOrPiMinus("weight 0 has no super weight space; use the trivial rep or pi_minus")
    if branch not in (1, -1):
        raise ValueError("branch is +1 or -1")
    return SuperWeightSpace(m, sqrt_neg(m, exact) * branch)


def branch_intertwiner(exact: bool = True) -> la.Matrix:
    """``diag(i, -i)``: conjugates the + branch of a weight space to the - branch."""
    i = _i(exact)
    return [[i, 0 * i], [0 * i, -i]]


# --- checking -----------------------------------------------------------------


@dataclass(frozen=True)
class RepVerdict:
    ok: bool
    block: int | None = None
    identity: str | None = None
    message: str = ""


def check_rep(r: GradedRep, tol: float = DEFAULT_TOL) -> RepVerdict:
    """Parity of Z, ``Z^2 = -m I`` and ``[rho(C), rho(Z)] = 0`` for every block."""
    for idx, b in enumerate(r.blocks):
        n = b.p + b.q
        p = b.p
        exact = b.exact
        for i in range(n):
            for j in range(n):
                if (i < p) == (j < p) and la._nonzero(b.Z[i][j], tol):
                    return RepVerdict(False, idx, "Z is odd",
                                      f"block {idx}: entry ({i},{j}) links equal parities")
        Z2 = la.matmul(b.Z, b.Z)
        target = la.scale(la.identity(n, exact), -b.m)
        same = la.mat_eq(Z2, target) if exact else la.mat_close(Z2, target, tol)
        if not same:
            return RepVerdict(False, idx, "Z^2 = -m I",
                              f"block {idx} (m={b.m}): Z^2 != -({b.m}) I")
        C = la.scale(la.identity(n, exact), b.m)
        comm = la.sub(la.matmul(C, b.Z), la.matmul(b.Z, C))
        if not la.is_zero_matrix(comm, tol):  # pragma: no cover - C is scalar on a block
            return RepVerdict(False, idx, "[C, Z] = 0", f"block {idx}: C and Z do not commute")
    return RepVerdict(True)


# --- decomposition -------------------------------------------------------------


SUMMARY_KEYS = ("pi_minus", "pi_minus_reversed", "trivial_even", "trivial_odd")


def weight_key(m: int) -> str:
    return f"weight:{m}"


@dataclass
class BlockDecomposition:
    """``certificate @ normal_form @ certificate^-1 == Z`` for one input block."""

    index: int
    m: int
    parts: Counter
    certificate: la.Matrix
    normal_form: la.Matrix


@dataclass
class Decomposition:
    summary: Counter
    blocks: list[BlockDecomposition]

    def verify(self, r: GradedRep, tol: float = DEFAULT_TOL) -> bool:
        for bd in self.blocks:
            b = r.blocks[bd.index]
            T = bd.certificate
            lhs = la.matmul(la.matmul(T, bd.normal_form), la.inverse(T, tol))
            if not (la.mat_eq(lhs, b.Z) if b.exact else la.mat_close(lhs, b.Z, tol)):
                return False
            if not _is_parity_preserving(T, b.p):
                return False
        return True


def _is_parity_preserving(T: la.Matrix, p: int) -> bool:
    n = len(T)
    return all(not T[i][j] for i in range(n) for j in range(n) if (i < p) != (j < p))


def _embed(vec_even: list | None, vec_odd: list | None, p: int, q: int, exact: bool) -> list:
    z = ExactScalar(0) if exact else 0j
    return list(vec_even if vec_even is not None else [z] * p) + \
        list(vec_odd if vec_odd is not None else [z] * q)


def _decompose_weight(b: RepBlock, tol: float) -> tuple[Counter, la.Matrix, la.Matrix]:
    if b.p != b.q:
        raise NotARepresentation(
            f"weight {b.m} block has dim {b.p}|{b.q}; Z is odd and invertible so p must equal q",
            identity="p = q")
    exact = b.exact
    s = sqrt_neg(b.m, exact)
    p = b.p
    # pair e_i with nu_i = Z e_i / s; then Z e_i = s nu_i and Z nu_i = s e_i
    inv_s = 1 / s
    even_cols, odd_cols = [], []
    for i in range(p):
        e = [ExactScalar(0) if exact else 0j for _ in range(2 * p)]
        e[i] = ExactScalar(1) if exact else 1 + 0j
        nu = [x * inv_s for x in la.column(b.Z, i)]
        even_cols.append(e)
        odd_cols.append(nu)
    T = la.from_columns(even_cols + odd_cols)
    z = la.zeros(p, p, exact)
    sI = la.scale(la.identity(p, exact), s)
    D = [zr + sr for zr, sr in zip(z, sI)] + [sr + zr for sr, zr in zip(sI, z)]
    return Counter({weight_key(b.m): p}), T, D


def _decompose_zero(b: RepBlock, tol: float) -> tuple[Counter, la.Matrix, la.Matrix]:
    """Super Jordan form of a square-zero odd operator."""
    exact = b.exact
    p, q = b.p, b.q
    A, B = b.A, b.B
    zero = ExactScalar(0) if exact else 0j
    one = ExactScalar(1) if exact else 1 + 0j

    def unit(n, i):
        v = [zero] * n
        v[i] = one
        return v

    piv_a = la.pivot_columns(A, tol) if p and q else []
    piv_b = la.pivot_columns(B, tol) if p and q else []
    u_even = [unit(p, c) for c in piv_a]                  # heads of pi_minus
    w_odd = [la.column(A, c) for c in piv_a]              # Z u
    x_odd = [unit(q, c) for c in piv_b]                   # heads of reversed pi_minus
    w_even = [la.column(B, c) for c in piv_b]             # Z x
    ker_a = la.nullspace(A, exact, tol) if q else [unit(p, i) for i in range(p)]
    ker_b = la.nullspace(B, exact, tol) if p else [unit(q, i) for i in range(q)]
    triv_even = la.extend_to_basis(w_even, ker_a, tol)
    triv_odd = la.extend_to_basis(w_odd, ker_b, tol)

    ra, rb = len(piv_a), len(piv_b)
    te, to = len(triv_even), len(triv_odd)
    if ra + rb + te != p or ra + rb + to != q:
        raise NotARepresentation("weight 0 block does not square to zero consistently",
                                 identity="Z^2 = 0")
    even_cols = [_embed(v, None, p, q, exact) for v in u_even + w_even + triv_even]
    odd_cols = [_embed(None, v, p, q, exact) for v in w_odd + x_odd + triv_odd]
    T = la.from_columns(even_cols + odd_cols)

    D = la.zeros(p + q, p + q, exact)
    for i in range(ra):  # Z u_i = w_i
        D[p + i][i] = one
    for j in range(rb):  # Z x_j = w'_j
        D[ra + j][p + ra + j] = one
    parts = Counter({"pi_minus": ra, "pi_minus_reversed": rb,
                     "trivial_even": te, "trivial_odd": to})
    return +parts, T, D


def decompose(r: GradedRep, tol: float = DEFAULT_TOL) -> Decomposition:
    verdict = check_rep(r, tol)
    if not verdict.ok:
        raise NotARepresentation(verdict.message, verdict.block, verdict.identity)
    order = sorted(range(len(r.blocks)), key=lambda i: (r.blocks[i].m, i))
    summary: Counter = Counter()
    out = []
    for idx in order:
        b = r.blocks[idx]
        if b.p + b.q == 0:
            continue
        try:
            parts, T, D = (_decompose_zero if b.m == 0 else _decompose_weight)(b, tol)
        except NotARepresentation as exc:
            raise NotARepresentation(f"block {idx}: {exc}", idx, exc.identity) from None
        summary.update(parts)
        out.append(BlockDecomposition(idx, b.m, parts, T, D))
    dec = Decomposition(+summary, out)
    if not dec.verify(r, tol):  # pragma: no cover - construction guarantees this
        raise AssertionError("decomposition certificate failed to verify")
    return dec


# --- assembly of test representations -----------------------------------------------


def assemble(parts: Counter, exact: bool = True, rng: random.Random | None = None,
             conjugate: bool = True) -> GradedRep:
    """Direct sum realising ``parts``, one block per weight, optionally scrambled.

    Scrambling conjugates each block by a random parity-preserving invertible matrix.
    """
    by_weight: dict[int, list[RepBlock]] = {}
    for key, mult in sorted(parts.items()):
        if key.startswith("weight:"):
            m = int(key.split(":")[1])
            by_weight.setdefault(m, []).extend([make_weight_rep(m, exact=exact).block()] * mult)
        elif key == "pi_minus":
            by_weight.setdefault(0, []).extend([PiMinus(exact).block()] * mult)
        elif key == "pi_minus_reversed":
            by_weight.setdefault(0, []).extend([PiMinus(exact, reversed=True).block()] * mult)
        elif key == "trivial_even":
            by_weight.setdefault(0, []).extend([RepBlock(0, 1, 0, la.zeros(1, 1, exact))] * mult)
        elif key == "trivial_odd":
            by_weight.setdefault(0, []).extend([RepBlock(0, 0, 1, la.zeros(1, 1, exact))] * mult)
        else:
            raise ValueError(f"unknown summary key {key!r}")
    blocks = []
    for m in sorted(by_weight):
        blk = direct_sum(by_weight[m], exact)
        if conjugate and rng is not None:
            blk = scramble(blk, rng)
        blocks.append(blk)
    return GradedRep(blocks)


def direct_sum(blocks: list[RepBlock], exact: bool = True) -> RepBlock:
    """Direct sum of equal-weight blocks, reordered even-first."""
    m = blocks[0].m
    p = sum(b.p for b in blocks)
    q = sum(b.q for b in blocks)
    n = p + q
    Z = la.zeros(n, n, exact)
    pe, po = 0, p  # next even / odd slot
    for b in blocks:
        idx = list(range(pe, pe + b.p)) + list(range(po, po + b.q))
        for i in range(b.p + b.q):
            for j in range(b.p + b.q):
                Z[idx[i]][idx[j]] = b.Z[i][j]
        pe += b.p
        po += b.q
    return RepBlock(m, p, q, Z)


def scramble(b: RepBlock, rng: random.Random) -> RepBlock:
    exact = b.exact
    T0 = la.random_invertible(rng, b.p, exact)
    T1 = la.random_invertible(rng, b.q, exact)
    T = la.block_diag([T0, T1], exact)
    Z = la.matmul(la.matmul(T, b.Z), la.inverse(T))
    return RepBlock(b.m, b.p, b.q, Z)


def random_parts(rng: random.Random, max_weight: int = 10, max_mult: int = 3,
                 max_distinct: int = 3, padding: bool = True) -> Counter:
    weights = [m for m in range(-max_weight, max_weight + 1) if m]
    chosen = rng.sample(weights, rng.randint(1, max_distinct))
    parts = Counter({weight_key(m): rng.randint(1, max_mult) for m in chosen})
    if padding:
        for key in SUMMARY_KEYS:
            parts[key] = rng.randint(0, 2)
    return +parts


# --- pi_minus indecomposability ------------------------------------------------------


def invariant_complements(Z: la.Matrix, line: list) -> list | None:
    """Lines ``span(v)`` complementary to the invariant ``span(line)`` with ``Z v in span(v)``.

    Works in dimension 2.  Every complementary line has a unique generator
    ``v_c = e + c * line`` where ``e`` is the standard basis vector completing
    ``line``; invariance is the vanishing of ``det[v_c, Z v_c]``, a polynomial
    in ``c`` of degree at most 2.  Returns the list of roots ``c``, or None if
    every ``c`` works.
    """
    if la.shape(Z) != (2, 2):
        raise ValueError("the complement search is written for 2-dimensional spaces")
    Zl = [row[0] * line[0] + row[1] * line[1] for row in Z]
    if line[0] * Zl[1] - line[1] * Zl[0]:
        raise ValueError("the given line is not invariant")
    zero, one = ExactScalar(0), ExactScalar(1)
    e = [one, zero] if line[1] else [zero, one]
    # v_c = e + c l; Z v_c = Ze + c Zl; det = (e0 + c l0)(Ze1 + c Zl1) - (e1 + c l1)(Ze0 + c Zl0)
    Ze = [row[0] * e[0] + row[1] * e[1] for row in Z]
    c0 = e[0] * Ze[1] - e[1] * Ze[0]
    c1 = e[0] * Zl[1] + line[0] * Ze[1] - e[1] * Zl[0] - line[1] * Ze[0]
    c2 = line[0] * Zl[1] - line[1] * Zl[0]
    return _roots_upto_quadratic(c0, c1, c2)


def _roots_upto_quadratic(c0, c1, c2) -> list | None:
    from .scalars import sqrt_exact

    if c2:
        disc = c1 * c1 - 4 * c2 * c0
        r = sqrt_exact(disc)
        return sorted({(-c1 + r) / (2 * c2), (-c1 - r) / (2 * c2)}, key=repr)
    if c1:
        return [-c0 / c1]
    if c0:
        return []
    return None


def graded_complements(Z: la.Matrix, p: int, line: list) -> list:
    """Homogeneous lines complementary to ``span(line)`` that are Z-invariant (2-dim case)."""
    out = []
    for i in range(2):
        v = [ExactScalar(int(i == j)) for j in range(2)]
        if v[0] * line[1] - v[1] * line[0] == 0:
            continue  # not complementary
        Zv = [row[0] * v[0] + row[1] * v[1] for row in Z]
        if v[0] * Zv[1] - v[1] * Zv[0] == 0:
            out.append(v)
    return out


# --- matrix elements through the exponential ------------------------------------------


GMatrix = list[list[GrassmannNumber]]


def gmat_mul(a: GMatrix, b: GMatrix) -> GMatrix:
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][j] * b[j][c] for j in range(1, k)), a[i][0] * b[0][c]) for c in range(m)]
            for i in range(n)]


def gmat_close(a: GMatrix, b: GMatrix, tol: float = DEFAULT_TOL) -> bool:
    return all(x.close(y, tol) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def exp_closed_form(m: int, t: float, theta: GrassmannNumber, branch: str = "default") -> GMatrix:
    """``[[e, s e theta], [-i s e theta, e]]`` with ``e = e^{imt}``, ``s = sqrt(-m)``."""
    if theta.exact:
        raise BackendUnsupported("e^{imt} needs the float backend")
    s = weight_factor(m, exact=False, branch=branch)
    e = cmath.exp(1j * m * t)
    one = GrassmannNumber.one(theta.n, exact=False, tol=theta.tol)
    return [[one * e, theta * (s * e)], [theta * (-1j * s * e), one * e]]


def rho_u(m: int, branch: str = "default", exact: bool = False):
    """Scalar matrix of ``rho_m(U)``: ``s [[0, 1], [-i, 0]]``."""
    s = weight_factor(m, exact=exact, branch=branch)
    return [[0 * s, s], [-_i(exact) * s, 0 * s]]


def exp_series(m: int, t: float, theta: GrassmannNumber, branch: str = "default") -> GMatrix:
    """``e^{imt} sum_j N^j / j!`` with ``N = rho_m(U) theta``; the sum terminates."""
    if theta.exact:
        raise BackendUnsupported("e^{imt} needs the float backend")
    U = rho_u(m, branch)
    one = GrassmannNumber.one(theta.n, exact=False, tol=theta.tol)
    zero = GrassmannNumber.zero(theta.n, exact=False, tol=theta.tol)
    N = [[theta * U[i][j] for j in range(2)] for i in range(2)]
    total = [[one, zero], [zero, one]]
    power = total
    j = 0
    while True:
        j += 1
        power = [[x * (1 / j) for x in row] for row in gmat_mul(power, N)]
        if not any(x for row in power for x in row):
            break
        total = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, power)]
    e = cmath.exp(1j * m * t)
    return [[x * e for x in row] for row in total]


def matrix_exponential(m: int, t: float, theta: GrassmannNumber, branch: str = "default",
                       tol: float = DEFAULT_TOL) -> GMatrix:
    closed = exp_closed_form(m, t, theta, branch)
    series = exp_series(m, t, theta, branch)
    if not gmat_close(closed, series, tol):
        raise ArithmeticError("closed form and series exponential disagree")
    return closed


# --- SU(1|1), its subgroup G and the berezinian --------------------------------------

G_LAW_K = -I  # the product in G realises the (C^{1|1})^x law at this parameter


@dataclass(frozen=True)
class SU11Element:
    """``[[a, beta], [-i beta, a]]`` in G, or the general SU(1|1) matrix with ``general=True``.

    The general matrix is ``[[a, beta], [-i conj(beta) a^2, conj(a)^-1]]``.
    """

    a: GrassmannNumber
    beta: GrassmannNumber
    general: bool = False

    def matrix(self) -> GMatrix:
        a, b = self.a, self.beta
        i = _i(a.exact)
        if self.general:
            return [[a, b], [b.conj() * a * a * (-i), a.conj().inv()]]
        return [[a, b], [b * (-i), a]]


def in_g(x: SU11Element) -> bool:
    """``a conj(a) = 1`` and ``conj(beta) = -beta conj(a)^2``."""
    a, b = x.a, x.beta
    ab = a.conj()
    return a * ab == 1 and b.conj() == -(b * ab * ab)


def su11_relation(x: SU11Element) -> bool:
    """``a conj(a) (1 + i beta conj(beta)) = 1``."""
    a, b = x.a, x.beta
    i = _i(a.exact)
    return a * a.conj() * (1 + b * b.conj() * i) == 1


def su11_mul(x: SU11Element, y: SU11Element) -> SU11Element:
    for e in (x, y):
        if e.general or not in_g(e):
            raise NotInG("factor is not in G")
    M = gmat_mul(x.matrix(), y.matrix())
    out = SU11Element(M[0][0], M[0][1])
    if not (M[1][1] == out.a and M[1][0] == out.beta * (-_i(out.a.exact))):
        raise NotInG("product left the matrix shape of G")  # pragma: no cover
    if not in_g(out):
        raise NotInG("product violates the membership relations")  # pragma: no cover
    return out


def g_structure() -> RealStructure:
    """The real structure of (C^{1|1})^x at ``k = -i`` whose fixed points are G."""
    return RealStructure.make(G_LAW_K, u=I, sign=1)


def random_g_element(rng: random.Random, n: int = 4, exact: bool = True) -> SU11Element:
    p = random_fixed_point(rng, g_structure(), n, exact)
    return SU11Element(p.w, p.eta)


def as_point(x: SU11Element) -> SuperPoint:
    return SuperPoint(x.a, x.beta)


def random_su11_element(rng: random.Random, n: int = 4, exact: bool = True) -> SU11Element:
    """General SU(1|1) element: ``a = phase (1 - i beta conj(beta) / 2)``."""
    from .real_forms import unit_phase
    from .sampling import random_odd

    beta = random_odd(rng, n, exact)
    y = beta * beta.conj() * _i(exact)
    a = unit_phase(rng, n, exact) * (1 - y * (ExactScalar(1, 0) / 2 if exact else 0.5))
    return SU11Element(a, beta, general=True)


def berezinian_1x1(M: GMatrix) -> GrassmannNumber:
    """``(a - beta d^-1 gamma) d^-1`` for ``M = [[a, beta], [gamma, d]]``."""
    (a, beta), (gamma, d) = M
    if not (a.is_even() and d.is_even() and beta.is_odd() and gamma.is_odd()):
        raise ValueError("expected even diagonal and odd off-diagonal entries")
    for x in (a, d):
        body = x.body
        if (not body) if x.exact else abs(body) <= x.tol:
            raise NotInvertible("diagonal entry has zero body")
    dinv = d.inv()
    return (a - beta * dinv * gamma) * dinv


def random_block_matrix(rng: random.Random, n: int = 4, exact: bool = True) -> GMatrix:
    from .sampling import random_even, random_odd

    return [[random_even(rng, n, exact), random_odd(rng, n, exact)],
            [random_odd(rng, n, exact), random_even(rng, n, exact)]]


# --- documents -------------------------------------------------------------------


def _entry_to_doc(x) -> str:
    return format_scalar(x)


def _entry_from_doc(x, exact: bool | None):
    if isinstance(x, bool):
        raise ParseError("boolean matrix entry")
    if isinstance(x, int):
        return ExactScalar(x) if exact in (None, True) else complex(x)
    if isinstance(x, float):
        if exact:
            raise ParseError("float entry in an exact document")
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
        return complex(x[0], x[1])
    if isinstance(x, str):
        return parse_scalar(x, exact=exact)
    raise ParseError(f"cannot read matrix entry {x!r}")


def rep_to_doc(r: GradedRep) -> dict:
    return {"blocks": [{"m": b.m, "p": b.p, "q": b.q,
                        "Z": [[_entry_to_doc(x) for x in row] for row in b.Z]}
                       for b in r.blocks]}


def rep_from_doc(doc, exact: bool | None = None) -> GradedRep:
    blocks = doc.get("blocks") if isinstance(doc, dict) else doc
    if not isinstance(blocks, list):
        raise ParseError("a representation document is a list of blocks")
    out = []
    for i, b in enumerate(blocks):
        if not isinstance(b, dict) or not {"m", "p", "q", "Z"} <= set(b):
            raise ParseError(f"block {i} needs fields m, p, q, Z")
        m, p, q, Z = b["m"], b["p"], b["q"], b["Z"]
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (m, p, q)) or p < 0 or q < 0:
            raise ParseError(f"block {i}: m, p, q must be integers with p, q >= 0")
        n = p + q
        if not isinstance(Z, list) or len(Z) != n or any(not isinstance(row, list) or len(row) != n for row in Z):
            raise ParseError(f"block {i}: Z must be a {n}x{n} list of rows")
        entries = [[_entry_from_doc(x, exact) for x in row] for row in Z]
        if any(not is_exact(x) for row in entries for x in row):
            entries = [[complex(x) for x in row] for row in entries]
        out.append(RepBlock(m, p, q, entries))
    return GradedRep(out)


def decomposition_to_doc(dec: Decomposition) -> dict:
    return {
        "summary": dict(sorted(dec.summary.items())),
        "blocks": [{"index": bd.index, "m": bd.m,
                    "parts": dict(sorted(bd.parts.items())),
                    "certificate": [[_entry_to_doc(x) for x in row] for row in bd.certificate],
                    "normal_form": [[_entry_to_doc(x) for x in row] for row in bd.normal_form]}
                   for bd in dec.blocks],
    }


def load_rep(path: str) -> GradedRep:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return rep_from_doc(doc)


def point_law_matches(x: SU11Element, y: SU11Element, k=G_LAW_K) -> bool:
    """The G product agrees with the group law at ``k`` on ``(a, beta)``."""
    return as_point(su11_mul(x, y)) == g_mul(as_point(x), as_point(y), k)


def g_element_is_fixed(x: SU11Element) -> bool:
    return is_fixed_point(g_structure(), as_point(x))
