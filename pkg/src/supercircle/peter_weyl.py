"""Superfunctions on S^{1|1} and their expansion in matrix coefficients.

A superfunction is a pair ``(phi0, phi1)`` of periodic functions on the circle,
read as ``phi0 + phi1 Z*``.  The matrix coefficients of the weight-``m`` space
are ``chi_m`` in the even sector and ``s_m chi_m`` in the odd sector, with
``chi_m(t) = e^{imt}`` and ``s_m = sqrt(-m)`` (or ``sqrt(m)`` in the alternate
normalisation).  The trivial representation supplies the even constant and
``pi_minus`` the odd one.

Fourier coefficients come from uniform-grid sums (the trapezoid rule), and
derivatives of residuals from their trigonometric interpolant.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ParseError, Undersampled, Unsupported
from .shcp_reps import weight_factor

SECTORS = ("even", "odd")


def default_grid(max_order: int) -> int:
    """Smallest power of two that is at least ``4 * max_order`` and ``2 * max_order + 2``."""
    need = max(4 * max_order, 2 * max_order + 2, 8)
    return 1 << (need - 1).bit_length()


def grid(size: int) -> np.ndarray:
    return 2 * np.pi * np.arange(size) / size


@dataclass
class SuperFunction:
    """Samples of ``phi0`` and ``phi1`` on ``grid_size`` equispaced points, plus optional closed forms."""

    phi0: np.ndarray
    phi1: np.ndarray
    grid_size: int
    closed0: Callable | None = field(default=None, repr=False)
    closed1: Callable | None = field(default=None, repr=False)
    name: str = ""

    def __post_init__(self):
        self.phi0 = np.asarray(self.phi0, dtype=complex)
        self.phi1 = np.asarray(self.phi1, dtype=complex)
        if self.phi0.shape != (self.grid_size,) or self.phi1.shape != (self.grid_size,):
            raise ParseError(f"phi0 and phi1 must both have {self.grid_size} samples")

    @classmethod
    def from_callables(cls, phi0: Callable | None, phi1: Callable | None, grid_size: int,
                       name: str = "") -> "SuperFunction":
        t = grid(grid_size)
        zero = lambda s: np.zeros_like(s, dtype=complex)  # noqa: E731
        f0, f1 = phi0 or zero, phi1 or zero
        return cls(np.broadcast_to(f0(t), t.shape).astype(complex),
                   np.broadcast_to(f1(t), t.shape).astype(complex),
                   grid_size, f0, f1, name)

    def sector(self, which: str) -> np.ndarray:
        return self.phi0 if which == "even" else self.phi1


def _branch_factor(m: int, branch: str) -> complex:
    return complex(weight_factor(m, exact=False, branch=branch))


def matrix_coefficient(m, which: str, grid_size: int = 64, branch: str = "default") -> SuperFunction:
    """Matrix coefficient of the weight-``m`` space, of ``pi_minus`` (``m="-"``) or the trivial rep (``m=0``).

    ``which="even"`` is the coefficient against 1, ``which="odd"`` against ``Z``.
    """
    if which not in SECTORS:
        raise Unsupported(f"selector must be 'even' or 'odd', got {which!r}")
    if m == "-":
        one = lambda t: np.ones_like(t, dtype=complex)  # noqa: E731
        if which == "even":
            return SuperFunction.from_callables(one, None, grid_size, "pi_minus:even")
        return SuperFunction.from_callables(None, one, grid_size, "pi_minus:odd")
    if not isinstance(m, int) or isinstance(m, bool):
        raise Unsupported(f"weight must be an integer or '-', got {m!r}")
    if m == 0:
        if which == "odd":
            raise Unsupported("the trivial representation has no odd matrix coefficient")
        return SuperFunction.from_callables(lambda t: np.ones_like(t, dtype=complex), None,
                                            grid_size, "trivial")
    chi = lambda t: np.exp(1j * m * t)  # noqa: E731
    if which == "even":
        return SuperFunction.from_callables(chi, None, grid_size, f"weight:{m}:even")
    s = _branch_factor(m, branch)
    return SuperFunction.from_callables(None, lambda t: s * chi(t), grid_size, f"weight:{m}:odd")


# --- expansion ----------------------------------------------------------------


@dataclass
class CoefficientTable:
    """``a[m]`` against ``chi_m`` (even), ``b[m]`` against ``s_m chi_m`` (odd); ``b[0]`` is pi_minus."""

    M: int
    a: dict[int, complex]
    b: dict[int, complex]
    branch: str = "default"

    def to_doc(self) -> dict:
        rows = []
        for m in range(-self.M, self.M + 1):
            a, b = self.a[m], self.b[m]
            rows.append({"m": m, "a": [a.real, a.imag], "b": [b.real, b.imag],
                         "odd_source": "pi_minus" if m == 0 else f"weight:{m}",
                         "even_source": "trivial" if m == 0 else f"weight:{m}"})
        return {"M": self.M, "branch": self.branch, "coefficients": rows}


def _fourier(samples: np.ndarray) -> np.ndarray:
    return np.fft.fft(samples) / len(samples)


def _check_grid(G: int, M: int):
    if G < 2 * M + 2:
        raise Undersampled(f"grid of {G} points cannot resolve order {M}; need at least {2 * M + 2}")


def expand(f: SuperFunction, M: int, branch: str = "default") -> CoefficientTable:
    _check_grid(f.grid_size, M)
    c0, c1 = _fourier(f.phi0), _fourier(f.phi1)
    a, b = {}, {}
    for m in range(-M, M + 1):
        a[m] = complex(c0[m])
        b[m] = complex(c1[m]) if m == 0 else complex(c1[m]) / _branch_factor(m, branch)
    return CoefficientTable(M, a, b, branch)


def reconstruct(table: CoefficientTable, t) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate the truncated expansion at angles ``t``."""
    t = np.asarray(t, dtype=float)
    phi0 = np.zeros_like(t, dtype=complex)
    phi1 = np.zeros_like(t, dtype=complex)
    for m in range(-table.M, table.M + 1):
        chi = np.exp(1j * m * t)
        phi0 += table.a[m] * chi
        factor = 1 if m == 0 else _branch_factor(m, table.branch)
        phi1 += table.b[m] * factor * chi
    return phi0, phi1


def spectral_derivative(samples: np.ndarray, n: int) -> np.ndarray:
    """``n``-th derivative of the trigonometric interpolant, on the same grid."""
    if n == 0:
        return np.asarray(samples, dtype=complex)
    G = len(samples)
    k = np.fft.fftfreq(G, d=1.0 / G)
    coeffs = np.fft.fft(samples) * (1j * k) ** n
    if G % 2 == 0:
        coeffs[G // 2] = 0  # the Nyquist mode has no unambiguous derivative
    return np.fft.ifft(coeffs)


@dataclass(frozen=True)
class ErrorRow:
    M: int
    n: int
    sector: str
    sup_error: float


def truncation_error(f: SuperFunction, table: CoefficientTable, n_max: int = 2) -> list[ErrorRow]:
    """Sup over the grid of ``|d^n/dt^n (phi - expansion)|`` per sector and ``n <= n_max``."""
    _check_grid(f.grid_size, table.M)
    rec0, rec1 = reconstruct(table, grid(f.grid_size))
    rows = []
    for sector, res in (("even", f.phi0 - rec0), ("odd", f.phi1 - rec1)):
        for n in range(n_max + 1):
            rows.append(ErrorRow(table.M, n, sector, float(np.max(np.abs(spectral_derivative(res, n))))))
    return rows


def error_sweep(f: SuperFunction, orders, n_max: int = 2, branch: str = "default") -> list[ErrorRow]:
    rows = []
    for M in orders:
        rows.extend(truncation_error(f, expand(f, M, branch), n_max))
    return rows


def parseval_tail(f: SuperFunction, table: CoefficientTable) -> float:
    """Grid energy of ``phi0`` minus ``sum |a_m|^2``; non-negative and shrinking in M."""
    energy = float(np.mean(np.abs(f.phi0) ** 2))
    return energy - sum(abs(c) ** 2 for c in table.a.values())


def errors_to_csv(rows: list[ErrorRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["M", "n", "sector", "sup_error"])
    for r in rows:
        w.writerow([r.M, r.n, r.sector, repr(r.sup_error)])
    return buf.getvalue()


# --- catalog and documents -------------------------------------------------------------


def _abs_sin_cubed(t):
    return np.abs(np.sin(t)) ** 3 + 0j


CATALOG: dict[str, tuple[Callable | None, Callable | None]] = {
    "2cos": (lambda t: 2 * np.cos(t) + 0j, None),
    "expcos": (lambda t: np.exp(np.cos(t)) + 0j, None),
    "expcos-expsin": (lambda t: np.exp(np.cos(t)) + 0j, lambda t: np.exp(np.sin(t)) + 0j),
    "abs-sin-cubed": (None, _abs_sin_cubed),
    "one-odd": (None, lambda t: np.ones_like(t, dtype=complex)),
    "trig": (lambda t: 1 + 3 * np.exp(2j * t) - 0.5j * np.exp(-3j * t),
             lambda t: 2 - np.exp(1j * t) + (1 + 1j) * np.exp(-2j * t)),
}


def catalog_function(name: str, grid_size: int) -> SuperFunction:
    if name not in CATALOG:
        raise ParseError(f"unknown catalog function {name!r}; known: {', '.join(sorted(CATALOG))}")
    f0, f1 = CATALOG[name]
    return SuperFunction.from_callables(f0, f1, grid_size, name)


def _complex_entry(x) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in x):
        return complex(x[0], x[1])
    raise ParseError(f"sample {x!r} is neither a number nor a [re, im] pair")


def superfunction_from_doc(doc: dict) -> SuperFunction:
    if not isinstance(doc, dict) or not {"grid_size", "phi0", "phi1"} <= set(doc):
        raise ParseError("a sampled superfunction needs grid_size, phi0 and phi1")
    G = doc["grid_size"]
    if not isinstance(G, int) or isinstance(G, bool) or G <= 0:
        raise ParseError("grid_size must be a positive integer")
    arrays = []
    for key in ("phi0", "phi1"):
        vals = doc[key]
        if not isinstance(vals, list) or len(vals) != G:
            raise ParseError(f"{key} must list exactly grid_size={G} samples")
        arrays.append(np.array([_complex_entry(v) for v in vals], dtype=complex))
    return SuperFunction(arrays[0], arrays[1], G, name=doc.get("name", "sampled"))


def superfunction_to_doc(f: SuperFunction) -> dict:
    return {"grid_size": f.grid_size, "name": f.name,
            "phi0": [[z.real, z.imag] for z in f.phi0.tolist()],
            "phi1": [[z.real, z.imag] for z in f.phi1.tolist()]}


def load_superfunction(source: str, grid_size: int | None = None, max_order: int = 16) -> SuperFunction:
    """``catalog:<name>`` or a path to a sampled-values JSON document."""
    if source.startswith("catalog:"):
        return catalog_function(source.split(":", 1)[1], grid_size or default_grid(max_order))
    try:
        with open(source) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc}") from None
    f = superfunction_from_doc(doc)
    if grid_size is not None and grid_size != f.grid_size:
        raise ParseError(f"--grid-size {grid_size} disagrees with the document's {f.grid_size}")
    return f


def is_power_of_two(n: int) -> bool:
    return n > 0 and not n & (n - 1)
