"""Sampling, periodic trapezoid quadrature and Fourier analysis on the circle.

Normalization is fixed to the PLAIN convention throughout:

    phi_hat(n) = (1/2pi) int_0^{2pi} phi(e^{it}) e^{-int} dt,
    phi(z)     = sum_n phi_hat(n) z^n,

so the coefficients of a finite Laurent symbol equal its table entries.  The
inner product is the arc-length one, <u, v> = int_T u conj(v) ds, and the
uniform grid makes it exact (to roundoff) on trigonometric polynomials whose
degree span is below the sample count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .symbols import SymbolSpec, evaluate

TWO_PI = 2.0 * np.pi

PLAIN = "PLAIN"

# |z| tolerance for evaluation points handed to synthesize().
CIRCLE_TOL = 1e-12


@dataclass(frozen=True)
class CircleSamples:
    """Values of a function at the m-th roots of unity z_j = e^{2pi i j / m}."""

    values: np.ndarray
    m: int

    def __post_init__(self):
        if self.m < 4:
            raise ValueError("grid too coarse")
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.m,):
            raise ValueError(f"expected {self.m} samples, got shape {values.shape}")
        object.__setattr__(self, "values", values)


def circle_grid(m: int) -> np.ndarray:
    """The uniform grid z_j = e^{2 pi i j / m}, j = 0..m-1."""
    if m < 4:
        raise ValueError("grid too coarse")
    return np.exp(2j * np.pi * np.arange(m) / m)


def sample_circle(symbol: SymbolSpec, m: int) -> CircleSamples:
    """Evaluate a symbol on the uniform m-point circle grid."""
    return CircleSamples(evaluate(symbol, circle_grid(m)), m)


@dataclass(frozen=True)
class FourierTable:
    """Two-sided Fourier coefficients phi_hat(n) for |n| <= k, PLAIN convention.

    Every index in the window carries an entry (zero-filled where the source
    symbol has none); indices outside the window are an error, not zero.
    """

    coeffs: Mapping[int, complex]
    k: int
    convention: str = PLAIN

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("window must be nonnegative")
        if self.convention != PLAIN:
            raise ValueError(f"unknown convention {self.convention!r}")
        filled = {n: complex(dict(self.coeffs).get(n, 0.0)) for n in range(-self.k, self.k + 1)}
        object.__setattr__(self, "coeffs", filled)

    def __getitem__(self, n: int) -> complex:
        if abs(n) > self.k:
            raise ValueError("coefficient window")
        return self.coeffs[n]

    def magnitude(self) -> float:
        """max |phi_hat(n)| over the window."""
        return max(abs(c) for c in self.coeffs.values())

    def scaled(self, factor: complex) -> "FourierTable":
        return FourierTable({n: factor * c for n, c in self.coeffs.items()}, self.k)

    def conj_reflect(self) -> "FourierTable":
        """Coefficients of conj(phi): n -> conj(phi_hat(-n))."""
        return FourierTable({n: np.conj(self.coeffs[-n]) for n in self.coeffs}, self.k)


def table_from_finite(coeffs: Mapping[int, complex], k: int | None = None) -> FourierTable:
    """Exact table of a finite Laurent symbol (window defaults to its support)."""
    coeffs = {int(n): complex(c) for n, c in dict(coeffs).items()}
    if k is None:
        k = max((abs(n) for n in coeffs), default=0)
    return FourierTable(coeffs, k)


def fourier_coefficients(samples: CircleSamples, k: int) -> FourierTable:
    """DFT coefficients phi_hat(n) = (1/m) sum_j values[j] e^{-2pi i j n / m}.

    Exact to roundoff when the sampled symbol is a Laurent polynomial of
    degree span below m; otherwise the usual aliasing applies, which the
    window guard 2k + 1 <= m keeps controlled.
    """
    if 2 * k + 1 > samples.m:
        raise ValueError("aliasing window")
    spectrum = np.fft.fft(samples.values) / samples.m
    return FourierTable({n: spectrum[n % samples.m] for n in range(-k, k + 1)}, k)


def synthesize(table: FourierTable, z):
    """Evaluate sum_{|n|<=k} phi_hat(n) z^n at a point (or array) on the circle."""
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(np.abs(zz) - 1.0) > CIRCLE_TOL):
        raise ValueError("not on the unit circle")
    out = np.zeros_like(zz)
    for n in range(-table.k, table.k + 1):
        out += table.coeffs[n] * zz**n
    if np.ndim(z) == 0:
        return complex(out)
    return out


def inner_product(u: CircleSamples, v: CircleSamples) -> complex:
    """Trapezoid rule for <u, v> = int_T u conj(v) ds = (2pi/m) sum_j u_j conj(v_j)."""
    if u.m != v.m:
        raise ValueError("grid mismatch")
    return complex(TWO_PI / u.m * np.vdot(v.values, u.values))
