import json
import random
from collections import Counter

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from supercircle import linalg as la
from supercircle.errors import (BackendUnsupported, NotARepresentation, NotInG, NotInvertible,
                                ParseError, UseTrivialOrPiMinus)
from supercircle.grassmann import GrassmannNumber
from supercircle.sampling import random_real_odd
from supercircle.scalars import ExactScalar, sqrt_neg
from supercircle.shcp_reps import (G_LAW_K, GradedRep, PiMinus, RepBlock, SU11Element, assemble,
                                   berezinian_1x1, branch_intertwiner, check_rep, decompose,
                                   decomposition_to_doc, exp_closed_form, exp_series,
                                   g_element_is_fixed, gmat_close, gmat_mul, graded_complements,
                                   in_g, invariant_complements, make_weight_rep,
                                   matrix_exponential, point_law_matches, random_block_matrix,
                                   random_g_element, random_parts, random_su11_element,
                                   rep_from_doc, rep_to_doc, su11_mul, su11_relation)

from oracles import sympy_matrix
from strategies import N, seeds

I = ExactScalar(0, 1)
ONE, ZERO = ExactScalar(1), ExactScalar(0)


def test_weight_rep_examples():
    assert make_weight_rep(1).Z == [[ZERO, I], [I, ZERO]]
    assert make_weight_rep(-4).Z == [[ZERO, ExactScalar(2)], [ExactScalar(2), ZERO]]
    with pytest.raises(UseTrivialOrPiMinus):
        make_weight_rep(0)


@pytest.mark.parametrize("m", [m for m in range(-6, 7) if m])
def test_both_branches_are_reps_and_intertwined(m):
    plus, minus = make_weight_rep(m, 1), make_weight_rep(m, -1)
    D = branch_intertwiner()
    assert check_rep(GradedRep([plus.block(), minus.block()])).ok
    assert la.matmul(la.matmul(D, plus.Z), la.inverse(D)) == minus.Z
    # D is diagonal, so it commutes with the scalar circle action t^m I
    t = ExactScalar(3, 4) / 5
    act = plus.block().circle_action(t)
    assert la.matmul(D, act) == la.matmul(act, D)


def test_check_rep_examples():
    assert check_rep(GradedRep([PiMinus().block()])).ok
    bad = GradedRep([make_weight_rep(3).block(), RepBlock(2, 1, 1, [[ZERO, ONE], [ONE, ZERO]])])
    v = check_rep(bad)
    assert not v.ok and v.block == 1 and v.identity == "Z^2 = -m I"
    odd_fail = GradedRep([RepBlock(0, 1, 1, [[ONE, ZERO], [ZERO, ZERO]])])
    assert check_rep(odd_fail).identity == "Z is odd"
    with pytest.raises(NotARepresentation):
        decompose(bad)


def test_decompose_single_weight_block():
    r = GradedRep([make_weight_rep(3).block()])
    dec = decompose(r)
    assert dec.summary == Counter({"weight:3": 1})
    assert dec.blocks[0].certificate == la.identity(2)
    assert dec.verify(r)


def test_decompose_pi_minus():
    r = GradedRep([PiMinus().block()])
    assert decompose(r).summary == Counter({"pi_minus": 1})
    rr = GradedRep([PiMinus(reversed=True).block()])
    assert decompose(rr).summary == Counter({"pi_minus_reversed": 1})


def test_decompose_two_copies_scrambled():
    rng = random.Random(3)
    r = assemble(Counter({"weight:2": 2}), rng=rng)
    assert r.blocks[0].Z != la.block_diag([make_weight_rep(2).Z] * 2)
    dec = decompose(r)
    assert dec.summary == Counter({"weight:2": 2}) and dec.verify(r)


def test_unbalanced_weight_block_rejected():
    Z = la.zeros(3, 3)
    with pytest.raises(NotARepresentation):
        decompose(GradedRep([RepBlock(1, 2, 1, Z)]))


def _oracle_summary(r: GradedRep) -> Counter:
    """Multiplicities from sympy ranks of the odd blocks."""
    out = Counter()
    for b in r.blocks:
        A = sympy_matrix(b.A) if b.p and b.q else sp.zeros(b.q, b.p)
        B = sympy_matrix(b.B) if b.p and b.q else sp.zeros(b.p, b.q)
        if b.m:
            out[f"weight:{b.m}"] += b.p
            continue
        ra, rb = A.rank(), B.rank()
        out["pi_minus"] += ra
        out["pi_minus_reversed"] += rb
        out["trivial_even"] += b.p - ra - rb
        out["trivial_odd"] += b.q - ra - rb
    return +out


@settings(max_examples=20)
@given(seeds)
def test_round_trip_against_rank_oracle(seed):
    rng = random.Random(seed)
    parts = random_parts(rng, max_weight=6)
    r = assemble(parts, rng=rng)
    dec = decompose(r)
    assert dec.summary == parts == _oracle_summary(r)
    for bd, blk in zip(dec.blocks, r.blocks):
        T, Nf = sympy_matrix(bd.certificate), sympy_matrix(bd.normal_form)
        # T N T^-1 = Z, checked as T N = Z T with T invertible
        assert (T * Nf - sympy_matrix(blk.Z) * T).applyfunc(lambda x: sp.expand(x)) == sp.zeros(*T.shape)
        assert T.rank() == T.shape[0]


@given(seeds)
def test_round_trip_float_backend(seed):
    rng = random.Random(seed)
    parts = random_parts(rng, max_weight=4)
    r = assemble(parts, exact=False, rng=rng)
    dec = decompose(r, 1e-8)
    assert dec.summary == parts and dec.verify(r, 1e-8)


def test_pi_minus_has_no_invariant_complement():
    Z = PiMinus().block().Z
    line = [ZERO, ONE]  # span of w
    assert invariant_complements(Z, line) == []
    assert graded_complements(Z, 1, line) == []
    # a weight space's invariant line does have a complement
    Zw = [[ZERO, ZERO], [ZERO, ZERO]]
    assert invariant_complements(Zw, line) is None


def test_complement_search_sanity():
    # diag-like Z with two invariant lines: exactly one complementary invariant line
    Z = [[ONE, ZERO], [ZERO, ZERO]]
    assert invariant_complements(Z, [ZERO, ONE]) == [ZERO]


def test_document_round_trip(tmp_path):
    r = assemble(Counter({"weight:-3": 1, "pi_minus": 1, "trivial_odd": 2}), rng=random.Random(1))
    doc = rep_to_doc(r)
    back = rep_from_doc(json.loads(json.dumps(doc)))
    assert [b.Z for b in back.blocks] == [b.Z for b in r.blocks]
    assert rep_from_doc(doc["blocks"]).blocks[0].m == r.blocks[0].m
    out = decomposition_to_doc(decompose(r))
    assert out["summary"] == {"pi_minus": 1, "trivial_odd": 2, "weight:-3": 1}


@pytest.mark.parametrize("doc", [{"blocks": [{"m": 1}]}, [{"m": 0, "p": 1, "q": 1, "Z": [[0]]}],
                                 {"blocks": [{"m": 0, "p": -1, "q": 1, "Z": []}]}, "x"])
def test_bad_documents(doc):
    with pytest.raises(ParseError):
        rep_from_doc(doc)


# --- exponential ------------------------------------------------------------------


def test_exponential_examples():
    theta = GrassmannNumber.generator(1, 2, exact=False)
    zero = GrassmannNumber.zero(2, exact=False)
    E = exp_closed_form(3, 0.7, zero)
    e = complex(sp.exp(sp.I * 3 * sp.Rational(7, 10)).evalf(20))
    assert abs(E[0][0].body - e) < 1e-14 and not E[0][1] and not E[1][0]
    E1 = exp_closed_form(1, 0.0, theta)
    one = GrassmannNumber.one(2, exact=False)
    assert gmat_close(E1, [[one, theta * 1j], [theta, one]])


@pytest.mark.parametrize("m", range(-5, 6))
@given(t=st.floats(-10, 10), seed=seeds)
def test_exponential_two_routes(m, t, seed):
    theta = random_real_odd(random.Random(seed), N)
    for branch in ("default", "compat_sqrt_m"):
        assert gmat_close(exp_closed_form(m, t, theta, branch), exp_series(m, t, theta, branch))
    matrix_exponential(m, t, theta)


def test_exponential_needs_floats():
    with pytest.raises(BackendUnsupported):
        exp_closed_form(1, 0.0, GrassmannNumber.generator(1, 2))


# --- SU(1|1), G and the berezinian -------------------------------------------------


def test_berezinian_examples():
    one, zero = GrassmannNumber.one(2), GrassmannNumber.zero(2)
    assert berezinian_1x1([[one, zero], [zero, one]]) == one
    a, d = one * 6, one * 3
    assert berezinian_1x1([[a, zero], [zero, d]]) == one * 2
    with pytest.raises(NotInvertible):
        berezinian_1x1([[one, zero], [zero, zero]])


@given(seeds)
def test_berezinian_multiplicative(seed):
    rng = random.Random(seed)
    M, Nm = random_block_matrix(rng, N), random_block_matrix(rng, N)
    assert berezinian_1x1(gmat_mul(M, Nm)) == berezinian_1x1(M) * berezinian_1x1(Nm)


@given(seeds)
def test_su11_relation_means_unit_berezinian(seed):
    x = random_su11_element(random.Random(seed), N)
    assert su11_relation(x)
    assert berezinian_1x1(x.matrix()) == GrassmannNumber.one(N)


@given(seeds)
def test_breaking_the_relation_breaks_the_berezinian(seed):
    x = random_su11_element(random.Random(seed), N)
    y = SU11Element(x.a * 2, x.beta, general=True)
    assert not su11_relation(y)
    assert berezinian_1x1(y.matrix()) != GrassmannNumber.one(N)


@given(seeds)
def test_g_is_closed_and_realises_law(seed):
    rng = random.Random(seed)
    x, y = random_g_element(rng, N), random_g_element(rng, N)
    assert in_g(x) and in_g(y) and g_element_is_fixed(x)
    z = su11_mul(x, y)
    assert in_g(z)
    assert z.a * z.a.conj() == GrassmannNumber.one(N)
    assert point_law_matches(x, y)
    assert G_LAW_K == -I


def test_g_law_is_not_the_k_one_law():
    rng = random.Random(11)
    hits = 0
    for _ in range(10):
        x, y = random_g_element(rng, N), random_g_element(rng, N)
        hits += not point_law_matches(x, y, ONE)
    assert hits


def test_identity_is_the_unit_of_g():
    e = SU11Element(GrassmannNumber.one(N), GrassmannNumber.zero(N))
    x = random_g_element(random.Random(5), N)
    assert su11_mul(e, x).a == x.a and su11_mul(x, e).beta == x.beta


def test_modulus_one_alone_is_not_membership():
    beta = GrassmannNumber.generator(1, N)
    x = SU11Element(GrassmannNumber.one(N), beta)
    assert not in_g(x)
    with pytest.raises(NotInG):
        su11_mul(x, x)


def test_weight_factor_squares():
    for m in range(-5, 6):
        s = sqrt_neg(m)
        assert s * s == ExactScalar(-m)
