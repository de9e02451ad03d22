import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import iv

from supercircle.errors import ParseError, Undersampled, Unsupported
from supercircle.peter_weyl import (CATALOG, SuperFunction, catalog_function, default_grid,
                                    error_sweep, errors_to_csv, expand, grid, is_power_of_two,
                                    load_superfunction, matrix_coefficient, parseval_tail,
                                    reconstruct, spectral_derivative, superfunction_from_doc,
                                    superfunction_to_doc, truncation_error)
from supercircle.shcp_reps import weight_factor

TOL = 1e-10


def s_m(m, branch="default"):
    return complex(weight_factor(m, exact=False, branch=branch))


def test_default_grid():
    assert default_grid(16) == 64
    assert default_grid(1) == 8
    assert all(is_power_of_two(default_grid(M)) and default_grid(M) >= 2 * M + 2 for M in range(40))


def test_matrix_coefficients():
    f = matrix_coefficient(3, "odd", 16)
    t = grid(16)
    assert np.allclose(f.phi1, s_m(3) * np.exp(3j * t)) and not f.phi0.any()
    assert np.allclose(matrix_coefficient("-", "odd", 8).phi1, 1)
    assert np.allclose(matrix_coefficient(0, "even", 8).phi0, 1)
    with pytest.raises(Unsupported):
        matrix_coefficient(0, "odd", 8)
    with pytest.raises(Unsupported):
        matrix_coefficient(2, "sideways", 8)


@pytest.mark.parametrize("m", [-3, -1, 1, 2])
@pytest.mark.parametrize("which", ["even", "odd"])
def test_matrix_coefficient_expands_to_itself(m, which):
    table = expand(matrix_coefficient(m, which, 32), 5)
    a = {k: v for k, v in table.a.items() if abs(v) > TOL}
    b = {k: v for k, v in table.b.items() if abs(v) > TOL}
    if which == "even":
        assert a.keys() == {m} and abs(a[m] - 1) < TOL and not b
    else:
        assert b.keys() == {m} and abs(b[m] - 1) < TOL and not a


def test_two_cos():
    table = expand(catalog_function("2cos", 16), 4)
    for m in range(-4, 5):
        assert abs(table.a[m] - (1 if abs(m) == 1 else 0)) < TOL
        assert abs(table.b[m]) < TOL


def test_odd_constant_lands_in_pi_minus():
    table = expand(catalog_function("one-odd", 64), 16)
    assert abs(table.b[0] - 1) < TOL
    assert all(abs(v) < TOL for m, v in table.b.items() if m)
    assert all(abs(v) < TOL for v in table.a.values())


def test_bessel_coefficients():
    table = expand(catalog_function("expcos-expsin", 64), 16)
    for m in range(-16, 17):
        Im = iv(abs(m), 1.0)
        assert abs(table.a[m] - Im) < 1e-13
        if m:
            assert abs(table.b[m] * s_m(m) - Im * (-1j) ** m) < 1e-13
        else:
            assert abs(table.b[0] - Im) < 1e-13


def test_compat_branch_rescales_odd_coefficients():
    f = catalog_function("expcos-expsin", 64)
    d, c = expand(f, 8), expand(f, 8, "compat_sqrt_m")
    for m in range(-8, 9):
        if m:
            assert abs(d.b[m] * s_m(m) - c.b[m] * s_m(m, "compat_sqrt_m")) < 1e-13
        assert d.a[m] == c.a[m]


def test_convergence_for_exponentials():
    f = catalog_function("expcos-expsin", 64)
    rows = error_sweep(f, [2, 4, 8, 16])
    for sector in ("even", "odd"):
        for n in range(3):
            errs = [r.sup_error for r in rows if r.sector == sector and r.n == n]
            assert all(a > b for a, b in zip(errs, errs[1:]))
            assert errs[-1] < 1e-8


def test_bessel_tail_bounds_error():
    # the sup error of the even residual is at most the tail sum of |I_m(1)|
    f = catalog_function("expcos", 64)
    for M in (2, 4, 8):
        err = truncation_error(f, expand(f, M), 0)[0].sup_error
        tail = 2 * sum(iv(m, 1.0) for m in range(M + 1, 40))
        assert err <= tail * (1 + 1e-6) + 1e-15


def test_trig_polynomial_recovered_exactly():
    f = catalog_function("trig", 16)
    table = expand(f, 4)
    assert abs(table.a[2] - 3) < TOL and abs(table.a[-3] + 0.5j) < TOL and abs(table.a[0] - 1) < TOL
    assert abs(table.b[0] - 2) < TOL
    assert abs(table.b[1] * s_m(1) + 1) < TOL
    t = np.linspace(0, 2 * np.pi, 101)
    p0, p1 = reconstruct(table, t)
    assert np.max(np.abs(p0 - CATALOG["trig"][0](t))) < TOL
    assert np.max(np.abs(p1 - CATALOG["trig"][1](t))) < TOL


@given(st.lists(st.tuples(st.integers(-5, 5), st.complex_numbers(max_magnitude=5, allow_nan=False,
                                                                  allow_infinity=False)),
                min_size=1, max_size=5))
def test_random_trig_polynomials(terms):
    def phi(t):
        return sum((c * np.exp(1j * m * t) for m, c in terms), np.zeros_like(t, dtype=complex))

    f = SuperFunction.from_callables(phi, phi, 16)
    table = expand(f, 5)
    for row in truncation_error(f, table):
        assert row.sup_error < 1e-9 * (1 + sum(abs(c) for _, c in terms)) * 25 ** row.n


def test_abs_sin_cubed_converges():
    f = catalog_function("abs-sin-cubed", 256)
    errs = [r.sup_error for r in error_sweep(f, [2, 4, 8, 16, 32], 0) if r.sector == "odd"]
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_parseval_tail_shrinks():
    f = catalog_function("expcos", 64)
    tails = [parseval_tail(f, expand(f, M)) for M in (1, 2, 4, 8)]
    assert all(a >= b >= -1e-14 for a, b in zip(tails, tails[1:]))


def test_spectral_derivative_of_sine():
    t = grid(32)
    d = spectral_derivative(np.sin(3 * t), 2)
    assert np.allclose(d, -9 * np.sin(3 * t))


def test_undersampled():
    f = catalog_function("expcos", 8)
    with pytest.raises(Undersampled):
        expand(f, 4)


def test_document_round_trip(tmp_path):
    f = catalog_function("trig", 8)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(superfunction_to_doc(f)))
    g = load_superfunction(str(path))
    assert np.allclose(g.phi0, f.phi0) and np.allclose(g.phi1, f.phi1)
    assert load_superfunction("catalog:2cos", max_order=4).grid_size == 16


@pytest.mark.parametrize("doc", [{"grid_size": 4, "phi0": [0] * 4, "phi1": [0] * 3},
                                 {"grid_size": 0, "phi0": [], "phi1": []},
                                 {"grid_size": 2, "phi0": ["a", 1], "phi1": [0, 0]},
                                 {"phi0": []}])
def test_bad_documents(doc):
    with pytest.raises(ParseError):
        superfunction_from_doc(doc)


def test_unknown_catalog_entry():
    with pytest.raises(ParseError):
        load_superfunction("catalog:nope")


def test_csv_layout():
    f = catalog_function("2cos", 16)
    text = errors_to_csv(error_sweep(f, [1, 2], 1))
    lines = text.strip().split("\n")
    assert lines[0] == "M,n,sector,sup_error"
    assert len(lines) == 1 + 2 * 2 * 2
    assert math.isfinite(float(lines[1].split(",")[3]))
