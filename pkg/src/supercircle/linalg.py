"""Dense linear algebra over exact scalars (or complex floats with a tolerance).

Matrices are lists of rows.  Elimination is plain Gauss-Jordan: the matrices
met here are small and their entries live in Q(i)(sqrt d), which no numeric
library handles exactly.
"""

from __future__ import annotations

import random

from .errors import NotInvertible
from .scalars import ExactScalar, is_exact

Matrix = list[list]


def _zero(exact: bool):
    return ExactScalar(0) if exact else 0j


def _one(exact: bool):
    return ExactScalar(1) if exact else 1 + 0j


def _nonzero(x, tol: float) -> bool:
    return bool(x) if is_exact(x) else abs(x) > tol


def zeros(rows: int, cols: int, exact: bool = True) -> Matrix:
    return [[_zero(exact) for _ in range(cols)] for _ in range(rows)]


def identity(n: int, exact: bool = True) -> Matrix:
    m = zeros(n, n, exact)
    for i in range(n):
        m[i][i] = _one(exact)
    return m


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise ValueError(f"shape mismatch {n}x{k} @ {k2}x{m}")
    z = _zero(bool(n and k and m) and is_exact(a[0][0]) and is_exact(b[0][0]))
    out = []
    for row in a:
        nz = [(j, x) for j, x in enumerate(row) if x]
        new = []
        for c in range(m):
            s = z
            for j, x in nz:
                y = b[j][c]
                if y:
                    s = s + x * y
            new.append(s)
        out.append(new)
    return out


def scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in a]


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def column(a: Matrix, j: int) -> list:
    return [row[j] for row in a]


def from_columns(cols: list[list], rows: int | None = None, exact: bool = True) -> Matrix:
    if not cols:
        return [[] for _ in range(rows or 0)]
    return [list(r) for r in zip(*cols)]


def block(a: Matrix, r0: int, r1: int, c0: int, c1: int) -> Matrix:
    return [row[c0:c1] for row in a[r0:r1]]


def block_diag(blocks: list[Matrix], exact: bool = True) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n, exact)
    o = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[o + i][o + j] = x
        o += len(b)
    return out


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return shape(a) == shape(b) and all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_close(a: Matrix, b: Matrix, tol: float = 1e-10) -> bool:
    return shape(a) == shape(b) and all(
        abs(complex(x) - complex(y)) <= tol for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(a: Matrix, tol: float = 1e-10) -> bool:
    return not any(_nonzero(x, tol) for row in a for x in row)


def rref(a: Matrix, tol: float = 1e-10) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(row) for row in a]
    rows, cols = shape(m)
    exact = bool(rows and cols) and is_exact(m[0][0])
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        if exact:
            piv = next((i for i in range(r, rows) if m[i][c]), None)
        else:
            cand = max(range(r, rows), key=lambda i: abs(m[i][c]))
            piv = cand if abs(m[cand][c]) > tol else None
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and _nonzero(m[i][c], tol):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix, tol: float = 1e-10) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a, tol)[1])


def pivot_columns(a: Matrix, tol: float = 1e-10) -> list[int]:
    if not a or not a[0]:
        return []
    return rref(a, tol)[1]


def nullspace(a: Matrix, exact: bool = True, tol: float = 1e-10) -> list[list]:
    """Basis of ``{x : a x = 0}`` as a list of column vectors."""
    rows, cols = shape(a)
    if cols == 0:
        return []
    if rows == 0:
        return [column(identity(cols, exact), j) for j in range(cols)]
    r, pivots = rref(a, tol)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [_zero(exact) for _ in range(cols)]
        v[f] = _one(exact)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def extend_to_basis(vectors: list[list], candidates: list[list], tol: float = 1e-10) -> list[list]:
    """Add candidates that raise the rank of ``vectors``; returns the additions only."""
    chosen = list(vectors)
    added = []
    base = rank(from_columns(chosen), tol) if chosen else 0
    for v in candidates:
        trial = from_columns(chosen + [v])
        rk = rank(trial, tol)
        if rk > base:
            chosen.append(v)
            added.append(v)
            base = rk
    return added


def inverse(a: Matrix, tol: float = 1e-10) -> Matrix:
    n, m = shape(a)
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return []
    exact = is_exact(a[0][0])
    aug = [list(row) + ident for row, ident in zip(a, identity(n, exact))]
    r, pivots = rref(aug, tol)
    if pivots[:n] != list(range(n)):
        raise NotInvertible("matrix is singular")
    return [row[n:] for row in r]


def random_invertible(rng: random.Random, n: int, exact: bool = True, bound: int = 2) -> Matrix:
    """Random invertible matrix with small Gaussian-integer (or complex) entries."""
    while True:
        if exact:
            m = [[ExactScalar(rng.randint(-bound, bound), rng.randint(-bound, bound))
                  for _ in range(n)] for _ in range(n)]
        else:
            m = [[complex(rng.uniform(-bound, bound), rng.uniform(-bound, bound))
                  for _ in range(n)] for _ in range(n)]
        if n == 0 or rank(m) == n:
            return m
