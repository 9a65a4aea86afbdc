"""Symbol specifications: bounded functions on the unit circle.

A symbol is one of

    finite             phi(z) = sum_n c_n z^n          (finite Laurent window)
    ex1                phi(z) = (1 + p conj(z)) / |1 + p conj(z)|,  real p
    ex2                phi(z) = (1 - p z) / |1 - p z|,              real p
    analytic_fraction  phi(z) = 1 / (1 + conj(p) z)
    generated          phi(z) = h(z) / (1 + conj(p) z) with even h, plus an
                       optional additive finite part (perturbation harness)

All poles p live strictly inside the unit disk, with a safety margin so
quadrature accuracy on the circle stays bounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

KIND_FINITE = "finite"
KIND_EX1 = "ex1"
KIND_EX2 = "ex2"
KIND_ANALYTIC_FRACTION = "analytic_fraction"
KIND_GENERATED = "generated"

KINDS = (KIND_FINITE, KIND_EX1, KIND_EX2, KIND_ANALYTIC_FRACTION, KIND_GENERATED)

# Margin keeping poles away from the boundary of the disk.
POLE_MARGIN = 1e-6


def validate_pole(p) -> complex:
    """Return p as complex, rejecting anything too close to the unit circle."""
    p = complex(p)
    if abs(p) > 1.0 - POLE_MARGIN:
        raise ValueError("p must lie strictly inside the unit disk")
    return p


def _validate_real_pole(p) -> complex:
    p = validate_pole(p)
    if p.imag != 0.0:
        raise ValueError("real p required")
    return p


def _as_coeff_dict(coeffs) -> dict[int, complex]:
    out = {}
    for n, c in dict(coeffs).items():
        out[int(n)] = complex(c)
    return out


@dataclass(frozen=True)
class SymbolSpec:
    """A bounded symbol on the unit circle; see the module docstring for kinds."""

    kind: str
    coeffs: Mapping[int, complex] | None = None
    p: complex | None = None
    h_coeffs: Mapping[int, complex] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unsupported symbol: kind {self.kind!r}")
        if self.kind == KIND_FINITE:
            if self.coeffs is None:
                raise ValueError("unsupported symbol: finite kind needs coeffs")
            object.__setattr__(self, "coeffs", _as_coeff_dict(self.coeffs))
        elif self.kind in (KIND_EX1, KIND_EX2):
            object.__setattr__(self, "p", _validate_real_pole(self.p))
        elif self.kind == KIND_ANALYTIC_FRACTION:
            object.__setattr__(self, "p", validate_pole(self.p))
        else:  # generated
            if self.h_coeffs is None:
                raise ValueError("unsupported symbol: generated kind needs h_coeffs")
            h = _as_coeff_dict(self.h_coeffs)
            for n, c in h.items():
                if h.get(-n, None) != c:
                    raise ValueError("h must be even")
            object.__setattr__(self, "h_coeffs", h)
            object.__setattr__(self, "p", validate_pole(self.p))
            if self.coeffs is not None:
                object.__setattr__(self, "coeffs", _as_coeff_dict(self.coeffs))


def finite_symbol(coeffs) -> SymbolSpec:
    return SymbolSpec(KIND_FINITE, coeffs=coeffs)


def ex1_symbol(p) -> SymbolSpec:
    return SymbolSpec(KIND_EX1, p=p)


def ex2_symbol(p) -> SymbolSpec:
    return SymbolSpec(KIND_EX2, p=p)


def analytic_fraction_symbol(p) -> SymbolSpec:
    return SymbolSpec(KIND_ANALYTIC_FRACTION, p=p)


def generated_symbol(h_coeffs, p, perturbation=None) -> SymbolSpec:
    return SymbolSpec(KIND_GENERATED, coeffs=perturbation, p=p, h_coeffs=h_coeffs)


def _laurent_eval(coeffs, z):
    out = np.zeros_like(z)
    for n, c in coeffs.items():
        out += c * z**n
    return out


def evaluate(symbol: SymbolSpec, z):
    """Evaluate the symbol pointwise at z (scalar or array on the circle)."""
    zz = np.asarray(z, dtype=complex)
    if symbol.kind == KIND_FINITE:
        out = _laurent_eval(symbol.coeffs, zz)
    elif symbol.kind == KIND_EX1:
        w = 1.0 + symbol.p * np.conj(zz)
        out = w / np.abs(w)
    elif symbol.kind == KIND_EX2:
        w = 1.0 - symbol.p * zz
        out = w / np.abs(w)
    elif symbol.kind == KIND_ANALYTIC_FRACTION:
        out = 1.0 / (1.0 + np.conj(symbol.p) * zz)
    elif symbol.kind == KIND_GENERATED:
        out = _laurent_eval(symbol.h_coeffs, zz) / (1.0 + np.conj(symbol.p) * zz)
        if symbol.coeffs:
            out = out + _laurent_eval(symbol.coeffs, zz)
    else:  # pragma: no cover - blocked by the constructor
        raise ValueError(f"unsupported symbol: kind {symbol.kind!r}")
    if np.ndim(z) == 0:
        return complex(out)
    return out
