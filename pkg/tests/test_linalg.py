import random

import pytest
import sympy as sp
from hypothesis import given

from supercircle import linalg as la
from supercircle.errors import NotInvertible
from supercircle.scalars import ExactScalar

from oracles import sympy_matrix
from strategies import seeds


def rand_matrix(rng, rows, cols, rank_cap=None):
    m = [[ExactScalar(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(cols)] for _ in range(rows)]
    if rank_cap is not None and rows > 1:
        m[-1] = list(m[0])
    return m


@given(seeds)
def test_rank_and_nullspace_match_sympy(seed):
    rng = random.Random(seed)
    a = rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 5), rank_cap=rng.random() < 0.5)
    assert la.rank(a) == sympy_matrix(a).rank()
    null = la.nullspace(a)
    assert len(null) == la.shape(a)[1] - la.rank(a)
    for v in null:
        assert la.is_zero_matrix(la.matmul(a, [[x] for x in v]))


@given(seeds)
def test_inverse_matches_sympy(seed):
    a = la.random_invertible(random.Random(seed), 3)
    inv = la.inverse(a)
    assert la.matmul(a, inv) == la.identity(3)
    assert (sympy_matrix(inv) - sympy_matrix(a).inv()).applyfunc(sp.expand) == sp.zeros(3, 3)


def test_singular_inverse():
    one = ExactScalar(1)
    with pytest.raises(NotInvertible):
        la.inverse([[one, one], [one, one]])


def test_extend_to_basis():
    one, zero = ExactScalar(1), ExactScalar(0)
    added = la.extend_to_basis([[one, one]], [[one, one], [one, zero], [zero, one]])
    assert added == [[one, zero]]


def test_float_rank_with_tolerance():
    a = [[1 + 0j, 2 + 0j], [2 + 0j, 4 + 1e-14j]]
    assert la.rank(a) == 1
    assert la.rank(a, tol=1e-16) == 2
