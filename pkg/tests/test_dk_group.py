import cmath
import random

import pytest
from hypothesis import given, strategies as st

from supercircle.dk_group import (AdditivePoint, SuperPoint, add_inv, add_mul, cover_p, g_inv,
                                  g_mul, rescale, super_exp, superpoint_from_json,
                                  superpoint_to_json)
from supercircle.errors import NotInvertible
from supercircle.grassmann import GrassmannNumber
from supercircle.real_forms import RealStructure, is_fixed_point
from supercircle.sampling import random_real_even, random_real_odd
from supercircle.scalars import ExactScalar

from oracles import og_mul, oequal, oracle_from
from strategies import N, nonzero_k, odds, points

I = ExactScalar(0, 1)
KS = [ExactScalar(1), ExactScalar(-1), I, ExactScalar(2, 1)]


def g(n=2):
    return [GrassmannNumber.generator(j, n) for j in (1, 2)]


def scalar(c, n=2, exact=True):
    return GrassmannNumber.scalar(c, n, exact)


def test_product_example():
    t1, t2 = g()
    p, q = SuperPoint(scalar(2), t1), SuperPoint(scalar(3), t2)
    assert g_mul(p, q, 1) == SuperPoint(scalar(6) + t1 * t2, t2 * 2 + t1 * 3)


def test_inverse_example():
    t1, _ = g()
    assert g_inv(SuperPoint(scalar(2), t1)) == SuperPoint(scalar(ExactScalar(1) / 2), t1 * (-ExactScalar(1) / 4))
    e = SuperPoint.identity(2)
    assert g_inv(e) == e


def test_non_invertible_body_rejected():
    t1, t2 = g()
    with pytest.raises(NotInvertible):
        SuperPoint(t1 * t2, t1)


@pytest.mark.parametrize("k", KS, ids=str)
@given(p=points(), q=points())
def test_law_matches_oracle(k, p, q):
    expect = og_mul((oracle_from(p.w), oracle_from(p.eta)), (oracle_from(q.w), oracle_from(q.eta)),
                    oracle_from(GrassmannNumber.scalar(k, N)).get((), 0))
    got = g_mul(p, q, k)
    assert oequal(oracle_from(got.w), expect[0]) and oequal(oracle_from(got.eta), expect[1])


@pytest.mark.parametrize("k", KS + [ExactScalar(0)], ids=str)
@given(p=points(), q=points(), r=points())
def test_associative_with_unit(k, p, q, r):
    assert g_mul(g_mul(p, q, k), r, k) == g_mul(p, g_mul(q, r, k), k)
    e = SuperPoint.identity(N)
    assert g_mul(p, e, k) == p == g_mul(e, p, k)


@given(p=points(), k=nonzero_k)
def test_two_sided_inverse(p, k):
    e = SuperPoint.identity(N)
    assert g_mul(p, g_inv(p, k), k) == e == g_mul(g_inv(p, k), p, k)


@given(p=points(), q=points(), k=nonzero_k, c=nonzero_k)
def test_rescaling_changes_parameter(p, q, k, c):
    # (w, c eta) turns the law at k into the law at k / c^2
    lhs = rescale(g_mul(p, q, k), c)
    rhs = g_mul(rescale(p, c), rescale(q, c), k / (c * c))
    assert lhs == rhs


@given(st.integers(0, 2**32 - 1))
def test_additive_law(seed):
    rng = random.Random(seed)
    a = AdditivePoint(random_real_even(rng, N, exact=True), random_real_odd(rng, N, exact=True))
    b = AdditivePoint(random_real_even(rng, N, exact=True), random_real_odd(rng, N, exact=True))
    zero = AdditivePoint.zero(N)
    assert add_mul(a, zero) == a
    assert add_mul(a, add_inv(a)) == zero
    assert add_mul(AdditivePoint(zero.t, a.tau), AdditivePoint(zero.t, b.tau)) == \
        AdditivePoint(a.tau * b.tau, a.tau + b.tau)


@given(odds())
def test_super_exp_examples(zeta):
    zero = GrassmannNumber.zero(N)
    assert super_exp(zero, zero) == SuperPoint.identity(N)
    assert super_exp(zero, zeta) == SuperPoint(GrassmannNumber.one(N), zeta)


def test_super_exp_of_i_pi():
    z = GrassmannNumber.scalar(1j * cmath.pi, 2, exact=False)
    p = super_exp(z, GrassmannNumber.zero(2, exact=False))
    assert p.close(SuperPoint(GrassmannNumber.scalar(-1, 2, exact=False), GrassmannNumber.zero(2, exact=False)))


@given(st.integers(0, 2**32 - 1))
def test_super_exp_homomorphism_at_k_one(seed):
    rng = random.Random(seed)
    a = AdditivePoint(random_real_even(rng, N, exact=False) * 1j, random_real_odd(rng, N))
    b = AdditivePoint(random_real_even(rng, N, exact=False) * 1j, random_real_odd(rng, N))
    ab = add_mul(a, b)
    lhs = super_exp(ab.t, ab.tau)
    rhs = g_mul(super_exp(a.t, a.tau), super_exp(b.t, b.tau), 1)
    assert lhs.close(rhs)


@given(st.integers(0, 2**32 - 1))
def test_cover_is_homomorphism_into_fixed_points(seed):
    rng = random.Random(seed)
    a = AdditivePoint(random_real_even(rng, N), random_real_odd(rng, N))
    b = AdditivePoint(random_real_even(rng, N), random_real_odd(rng, N))
    lhs, rhs = cover_p(add_mul(a, b)), g_mul(cover_p(a), cover_p(b), 1)
    assert lhs.close(rhs, 1e-10)
    assert is_fixed_point(RealStructure.make(1 + 0j, 1 + 0j), lhs, 1e-10)


def test_cover_of_zero():
    assert cover_p(AdditivePoint.zero(2)).close(SuperPoint.identity(2, exact=False))


def test_cover_rejects_non_real():
    t1, _ = g()
    with pytest.raises(ValueError):
        cover_p(AdditivePoint(GrassmannNumber.zero(2), t1))


@given(points())
def test_json_round_trip(p):
    assert superpoint_from_json(superpoint_to_json(p), N) == p
