"""Randomised identity suites behind ``supercircle verify``.

Each check yields one :class:`CheckRecord`.  Every check draws from its own
``random.Random`` seeded by ``"<seed>:<check name>"``, so reports do not
depend on which suites ran before.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator

from . import linalg as la
from .errors import NoSolution, SuperError
from .grassmann import format_grassmann
from .dk_group import (AdditivePoint, SuperPoint, add_mul, cover_p, g_inv, g_mul,
                    superpoint_to_dict)
from .real_forms import (Conjugation, RealStructure, antilinear_square, apply_rho,
                        closure_check, conjugation_roots, differential_at_identity, expected_zz,
                        is_fixed_point, lie_involution_solve, random_fixed_point,
                        real_form_basis, real_form_bracket, s_is_morphism_on)
from .shcp_reps import (GradedRep, PiMinus, RepBlock, assemble, berezinian_1x1,
                   branch_intertwiner, check_rep, decompose, exp_closed_form, exp_series,
                   gmat_close, gmat_mul, graded_complements, in_g, invariant_complements,
                   make_weight_rep, point_law_matches, random_block_matrix, random_g_element,
                   random_parts, random_su11_element, su11_mul, su11_relation)
from .sampling import random_even, random_odd, random_real_even, random_real_odd, random_scalar
from .scalars import DEFAULT_TOL, ExactScalar, format_scalar, is_exact
from .sections_susy import (Laurent, LaurentEndo, Section, conformal_factor, der_bracket, euler_field,
                       left_invariant_odd, solve_susy_gauge, susy_field, susy_form,
                       susy_frame_check)

SUITES = ("group-axioms", "susy", "real-structures", "lie-brackets", "reps", "berezinian")


@dataclass
class Settings:
    k: object
    exact: bool = True
    n: int = 4
    seed: int = 0
    trials: int = 200
    tol: float = DEFAULT_TOL
    max_weight: int = 5
    branch: str = "default"

    def rng(self, name: str) -> random.Random:
        return random.Random(f"{self.seed}:{name}")

    def params(self) -> dict:
        return {"k": format_scalar(self.k), "backend": "exact" if self.exact else "float",
                "odd_generators": self.n, "seed": self.seed, "trials": self.trials}


@dataclass
class CheckRecord:
    suite: str
    check: str
    status: str  # "pass", "fail" or "skip"
    trials: int = 0
    params: dict = field(default_factory=dict)
    witness: dict | None = None
    reason: str | None = None
    info: dict | None = None

    def to_dict(self) -> dict:
        return {key: val for key, val in asdict(self).items() if val is not None}


def _is_zero(k) -> bool:
    return not k if is_exact(k) else abs(k) <= DEFAULT_TOL


def _same(a, b, cfg: Settings) -> bool:
    return a == b if cfg.exact else a.close(b, cfg.tol)


def _point(rng, cfg: Settings) -> SuperPoint:
    return SuperPoint(random_even(rng, cfg.n, cfg.exact), random_odd(rng, cfg.n, cfg.exact))


def _pdoc(*points) -> dict:
    return {f"p{i}": superpoint_to_dict(p) for i, p in enumerate(points)}


def _trial_check(suite: str, name: str, cfg: Settings, trial: Callable, trials: int | None = None,
                 params: dict | None = None) -> CheckRecord:
    """Run ``trial(rng)`` repeatedly; it returns None on success or a witness dict."""
    rng = cfg.rng(f"{suite}/{name}")
    count = cfg.trials if trials is None else trials
    base = dict(cfg.params(), **(params or {}))
    for i in range(count):
        witness = trial(rng)
        if witness is not None:
            return CheckRecord(suite, name, "fail", i + 1, base, dict(witness, trial=i))
    return CheckRecord(suite, name, "pass", count, base)


def _single(suite: str, name: str, cfg: Settings, ok: bool, info: dict | None = None,
            params: dict | None = None) -> CheckRecord:
    return CheckRecord(suite, name, "pass" if ok else "fail", 1,
                       dict(cfg.params(), **(params or {})), None if ok else info, None,
                       info if ok else None)


# --- group axioms -------------------------------------------------------------------


def group_axioms(cfg: Settings) -> Iterator[CheckRecord]:
    s, k = "group-axioms", cfg.k

    def assoc(rng):
        p, q, r = _point(rng, cfg), _point(rng, cfg), _point(rng, cfg)
        if not _same(g_mul(g_mul(p, q, k), r, k), g_mul(p, g_mul(q, r, k), k), cfg):
            return _pdoc(p, q, r)

    def unit(rng):
        p = _point(rng, cfg)
        e = SuperPoint.identity(cfg.n, cfg.exact)
        if not (_same(g_mul(e, p, k), p, cfg) and _same(g_mul(p, e, k), p, cfg)):
            return _pdoc(p)

    def inverse(rng):
        p = _point(rng, cfg)
        e = SuperPoint.identity(cfg.n, cfg.exact)
        pi = g_inv(p, k)
        if not (_same(g_mul(p, pi, k), e, cfg) and _same(g_mul(pi, p, k), e, cfg)):
            return _pdoc(p)

    yield _trial_check(s, "associativity", cfg, assoc)
    yield _trial_check(s, "unit", cfg, unit)
    if _is_zero(k):
        yield CheckRecord(s, "inverse", "skip", 0, cfg.params(),
                          reason="k=0: the degenerate law is only checked for associativity and unit")
    else:
        yield _trial_check(s, "inverse", cfg, inverse)


# --- SUSY structure ----------------------------------------------------------------


def susy(cfg: Settings) -> Iterator[CheckRecord]:
    s, k = "susy", cfg.k
    if _is_zero(k):
        yield CheckRecord(s, "gauge", "skip", 0, cfg.params(), reason="k=0: omega_0 is degenerate")
        return
    one = ExactScalar(1) if cfg.exact else 1 + 0j
    i = ExactScalar(0, 1) if cfg.exact else 1j
    try:
        found = solve_susy_gauge(k)
    except NoSolution as exc:  # pragma: no cover - w^-1 always has a solution
        yield CheckRecord(s, "gauge", "fail", 1, cfg.params(), witness={"error": str(exc)})
        return
    expected = [Laurent({-2: i}), Laurent({-2: -i})]
    gs = [F.g for F in found]
    ok = len(found) == 2 and all(g in gs for g in expected) and all(F.f == Laurent({-1: one}) for F in found)
    info = {"gauges": [f"(w^-1, ({format_scalar(F.g.coeffs[-2])})*w^-2*eta)" for F in found]}
    yield _single(s, "gauge", cfg, ok, info)
    hs = [conformal_factor(F, k) for F in found]
    yield _single(s, "conformal-factor", cfg, all(h == Laurent({-4: -one}) for h in hs),
                  {"h": ["-w^-4" if h == Laurent({-4: -one}) else repr(h) for h in hs]})

    def perturbed(rng):
        c = i + random_scalar(rng, cfg.exact)
        if c == -i:
            return None  # landed on the other valid gauge
        g = Laurent({-2: c})
        if conformal_factor(LaurentEndo(Laurent({-1: one}), g), k) is not None:
            return {"g": repr(g)}

    yield _trial_check(s, "perturbed-gauge-fails", cfg, perturbed, trials=min(cfg.trials, 50))
    Zk = susy_field(k)
    yield _single(s, "frame", cfg, susy_frame_check(k) and susy_form(k).pair(Zk) == Section())


# --- real structures -----------------------------------------------------------------


def real_structures(cfg: Settings) -> Iterator[CheckRecord]:
    s, k = "real-structures", cfg.k
    if _is_zero(k):
        yield CheckRecord(s, "conjugations", "skip", 0, cfg.params(), reason="k=0 has no conjugation")
    else:
        for ui, u in enumerate(conjugation_roots(k)):
            c = Conjugation(u, k)
            tag = {"u": format_scalar(u)}

            def morph(rng, c=c):
                p, q = _point(rng, cfg), _point(rng, cfg)
                if not s_is_morphism_on(c, p, q):
                    return _pdoc(p, q)

            yield _trial_check(s, f"s-morphism[u{ui}]", cfg, morph, params=tag)
            for sign in (1, -1):
                r = RealStructure(c, sign)
                tag2 = dict(tag, sign=sign)

                def invol(rng, r=r):
                    p = _point(rng, cfg)
                    if not _same(apply_rho(r, apply_rho(r, p)), p, cfg):
                        return _pdoc(p)

                def rho_morph(rng, r=r):
                    p, q = _point(rng, cfg), _point(rng, cfg)
                    if not _same(apply_rho(r, g_mul(p, q, k)),
                                 g_mul(apply_rho(r, p), apply_rho(r, q), k), cfg):
                        return _pdoc(p, q)

                def closure(rng, r=r):
                    p = random_fixed_point(rng, r, cfg.n, cfg.exact)
                    q = random_fixed_point(rng, r, cfg.n, cfg.exact)
                    if not (is_fixed_point(r, p, cfg.tol) and closure_check(r, p, q)):
                        return _pdoc(p, q)

                yield _trial_check(s, f"rho-involutive[u{ui},{sign:+d}]", cfg, invol, params=tag2)
                yield _trial_check(s, f"rho-morphism[u{ui},{sign:+d}]", cfg, rho_morph, params=tag2)
                yield _trial_check(s, f"fixed-points-subgroup[u{ui},{sign:+d}]", cfg, closure,
                                   params=tag2)

    def cover(rng):
        a = AdditivePoint(random_real_even(rng, cfg.n), random_real_odd(rng, cfg.n))
        b = AdditivePoint(random_real_even(rng, cfg.n), random_real_odd(rng, cfg.n))
        lhs = cover_p(add_mul(a, b))
        rhs = g_mul(cover_p(a), cover_p(b), 1)
        r = RealStructure.make(1 + 0j, 1 + 0j)
        if not (lhs.close(rhs, cfg.tol) and is_fixed_point(r, lhs, cfg.tol)):
            return {"t": format_grassmann(a.t), "tau": format_grassmann(a.tau)}

    yield _trial_check(s, "cover-homomorphism", cfg, cover, params={"cover_k": "1", "cover_u": "1"})


# --- Lie superalgebra -------------------------------------------------------------------


def lie_brackets(cfg: Settings) -> Iterator[CheckRecord]:
    s, k = "lie-brackets", cfg.k
    C, Z, Zk = euler_field(), left_invariant_odd(k), susy_field(k)
    zero = C * 0
    yield _single(s, "[C,Z]=0", cfg, der_bracket(C, Z) == zero)
    yield _single(s, "[Z,Z]=-2kC", cfg, der_bracket(Z, Z) == C * (-2 * k))
    yield _single(s, "[Zk,Zk]=2kC", cfg, der_bracket(Zk, Zk) == C * (2 * k))
    if _is_zero(k):
        yield CheckRecord(s, "involutions", "skip", 0, cfg.params(), reason="k=0 has no real form")
        return
    sols = lie_involution_solve(k)
    roots = [inv.a for inv in sols]
    yield _single(s, "involution-constraints", cfg, all(inv.satisfies_constraints(cfg.tol) for inv in sols),
                  {"a": [format_scalar(a) for a in roots]})
    matches = []
    for u in conjugation_roots(k):
        for sign in (1, -1):
            D = differential_at_identity(RealStructure(Conjugation(u, k), sign))
            zz = D[1][1]
            hit = any(zz == a for a in roots) if cfg.exact else any(abs(zz - a) <= cfg.tol for a in roots)
            invol = antilinear_square(D)
            ident = la.identity(2, cfg.exact)
            invol_ok = la.mat_eq(invol, ident) if cfg.exact else la.mat_close(invol, ident, cfg.tol)
            matches.append(hit and invol_ok and D[0][0] == -1)
    yield _single(s, "differential-matches-involution", cfg, all(matches))
    basis = real_form_basis(k)
    table = real_form_bracket(basis)
    zz = table[("Z'", "Z'")]
    ok = (not table[("C'", "C'")] if cfg.exact else abs(table[("C'", "C'")]) <= cfg.tol) and \
        (not table[("C'", "Z'")] if cfg.exact else abs(table[("C'", "Z'")]) <= cfg.tol) and \
        (zz == expected_zz(basis) if cfg.exact else abs(zz - expected_zz(basis)) <= cfg.tol)
    yield _single(s, "real-form-brackets", cfg, ok, {"[Z',Z']": format_scalar(zz), "b": format_scalar(basis.b)})


# --- representations --------------------------------------------------------------------


def reps(cfg: Settings) -> Iterator[CheckRecord]:
    s = "reps"

    def roundtrip(rng):
        parts = random_parts(rng, max_weight=max(1, cfg.max_weight))
        r = assemble(parts, exact=cfg.exact, rng=rng)
        dec = decompose(r, cfg.tol)
        if dec.summary != parts or not dec.verify(r, cfg.tol):
            return {"expected": dict(parts), "got": dict(dec.summary)}

    yield _trial_check(s, "decompose-roundtrip", cfg, roundtrip, trials=min(cfg.trials, 100))
    pm = PiMinus().block()
    line = [ExactScalar(0), ExactScalar(1)]
    yield _single(s, "pi-minus-indecomposable", cfg,
                  invariant_complements(pm.Z, line) == [] and graded_complements(pm.Z, 1, line) == [])
    bad = GradedRep([RepBlock(2, 1, 1, [[ExactScalar(0), ExactScalar(1)], [ExactScalar(1), ExactScalar(0)]])])
    v = check_rep(bad)
    yield _single(s, "rejects-bad-block", cfg, not v.ok and v.block == 0 and v.identity == "Z^2 = -m I")
    ok = True
    for m in range(-cfg.max_weight, cfg.max_weight + 1):
        if not m:
            continue
        plus, minus = make_weight_rep(m, 1), make_weight_rep(m, -1)
        D = branch_intertwiner()
        ok &= la.mat_eq(la.matmul(la.matmul(D, plus.Z), la.inverse(D)), minus.Z)
        ok &= check_rep(GradedRep([plus.block()])).ok
    yield _single(s, "branch-intertwiner", cfg, ok)

    def expo(rng):
        m = rng.randint(-cfg.max_weight, cfg.max_weight)
        t = rng.uniform(-10, 10)
        theta = random_real_odd(rng, cfg.n)
        if not gmat_close(exp_closed_form(m, t, theta, cfg.branch), exp_series(m, t, theta, cfg.branch), cfg.tol):
            return {"m": m, "t": t, "theta": format_grassmann(theta)}

    yield _trial_check(s, "exponential-two-routes", cfg, expo, params={"branch": cfg.branch})


# --- berezinian and SU(1|1) ------------------------------------------------------------


def berezinian(cfg: Settings) -> Iterator[CheckRecord]:
    s = "berezinian"

    def mult(rng):
        M, N = random_block_matrix(rng, cfg.n, cfg.exact), random_block_matrix(rng, cfg.n, cfg.exact)
        lhs = berezinian_1x1(gmat_mul(M, N))
        rhs = berezinian_1x1(M) * berezinian_1x1(N)
        if not _same(lhs, rhs, cfg):
            return {"M": [[format_grassmann(x) for x in row] for row in M]}

    def su11(rng):
        x = random_su11_element(rng, cfg.n, cfg.exact)
        ber = berezinian_1x1(x.matrix())
        if not (su11_relation(x) and _same(ber, ber * 0 + 1, cfg)):
            return {"a": format_grassmann(x.a), "beta": format_grassmann(x.beta)}

    def g_closed(rng):
        x, y = random_g_element(rng, cfg.n, cfg.exact), random_g_element(rng, cfg.n, cfg.exact)
        if not (in_g(x) and in_g(su11_mul(x, y)) and point_law_matches(x, y)):
            return {"a": format_grassmann(x.a), "beta": format_grassmann(x.beta)}

    yield _trial_check(s, "multiplicative", cfg, mult)
    yield _trial_check(s, "su11-relation-iff-ber-1", cfg, su11, trials=min(cfg.trials, 100))
    if cfg.exact:
        yield _trial_check(s, "G-closed-law-k=-i", cfg, g_closed, trials=min(cfg.trials, 100))
    else:
        yield CheckRecord(s, "G-closed-law-k=-i", "skip", 0, cfg.params(),
                          reason="membership in G is tested bit-exactly; use the exact backend")


RUNNERS: dict[str, Callable[[Settings], Iterator[CheckRecord]]] = {
    "group-axioms": group_axioms,
    "susy": susy,
    "real-structures": real_structures,
    "lie-brackets": lie_brackets,
    "reps": reps,
    "berezinian": berezinian,
}


def run_suite(name: str, cfg: Settings) -> list[CheckRecord]:
    names = SUITES if name == "all" else (name,)
    out = []
    for n in names:
        if n not in RUNNERS:
            raise KeyError(n)
        try:
            out.extend(RUNNERS[n](cfg))
        except SuperError as exc:
            out.append(CheckRecord(n, "suite", "fail", 0, cfg.params(),
                                   witness={"error": f"{type(exc).__name__}: {exc}"}))
    return out


def summarize(records: list[CheckRecord]) -> Counter:
    return Counter(r.status for r in records)
