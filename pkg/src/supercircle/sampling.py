"""Seeded random generators for Grassmann-valued test data."""

from __future__ import annotations

import random
from fractions import Fraction

from .grassmann import GrassmannNumber, realify
from .scalars import DEFAULT_TOL, ExactScalar


def random_scalar(rng: random.Random, exact: bool = True, bound: int = 3, nonzero: bool = True):
    while True:
        if exact:
            c = ExactScalar(rng.randint(-bound, bound), rng.randint(-bound, bound))
        else:
            c = complex(rng.uniform(-bound, bound), rng.uniform(-bound, bound))
        if c or not nonzero:
            return c


def random_gaussian_rational(rng: random.Random, bound: int = 4) -> ExactScalar:
    """A nonzero element of Q(i) with small numerators and denominators."""
    while True:
        c = ExactScalar(Fraction(rng.randint(-bound, bound), rng.randint(1, 3)),
                        Fraction(rng.randint(-bound, bound), rng.randint(1, 3)))
        if c:
            return c


def _random_mask(rng: random.Random, n: int, parity: int | None, max_degree: int) -> int:
    while True:
        deg = rng.randint(0, min(max_degree, 2 * n))
        if parity is not None and deg % 2 != parity:
            continue
        mask = 0
        for j in rng.sample(range(2 * n), deg):
            mask |= 1 << j
        return mask


def random_grassmann(rng: random.Random, n: int = 4, parity: int | None = None,
                     exact: bool = True, n_terms: int = 3, max_degree: int = 3,
                     body: bool = True, tol: float = DEFAULT_TOL) -> GrassmannNumber:
    """A sparse random element; ``parity`` restricts to even (0) or odd (1) terms.

    With ``body=True`` an even element always gets a nonzero body.
    """
    terms = {}
    for _ in range(n_terms):
        m = _random_mask(rng, n, parity, max_degree)
        if m == 0 and not body:
            continue
        terms[m] = random_scalar(rng, exact)
    if body and parity in (0, None):
        terms[0] = random_scalar(rng, exact)
    return GrassmannNumber(n, terms, exact, tol)


def random_even(rng, n=4, exact=True, **kw) -> GrassmannNumber:
    return random_grassmann(rng, n, 0, exact, **kw)


def random_odd(rng, n=4, exact=True, **kw) -> GrassmannNumber:
    return random_grassmann(rng, n, 1, exact, body=False, **kw)


def random_real_even(rng, n=4, exact=False, scale: float = 3.0, **kw) -> GrassmannNumber:
    """Conjugation-fixed even element with a real body."""
    x = realify(random_even(rng, n, exact, **kw))
    if not exact:
        x = x * (scale / max(1.0, abs(x.body)))
    return x


def random_real_odd(rng, n=4, exact=False, **kw) -> GrassmannNumber:
    return realify(random_odd(rng, n, exact, **kw))
