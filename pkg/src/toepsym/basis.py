"""The rational orthonormal system R_n(p) on the Hardy space H^2(T).

    R_n(z) = sqrt((1 - |p|^2) / (2 pi)) * (z - p)^n / (1 - conj(p) z)^(n+1)

for a pole p in the open unit disk.  R_0 is the normalized reproducing
(Szego) kernel at p; higher elements are R_0 times powers of the Blaschke
factor (z - p)/(1 - conj(p) z), which is unimodular on the circle, so
|R_n| <= norm_constant / (1 - |p|) uniformly in n.

Two variants are supported: ZP carries the numerator (z - p)^n, PZ carries
(p - z)^n = (-1)^n (z - p)^n.

Taylor expansions are computed by iterated Blaschke multiplication, a
lower-triangular recurrence whose intermediates stay bounded by the sup norm
of the expanded functions.  The textbook binomial x negative-binomial
convolution computes the same coefficients but loses all precision to
cancellation once n |p| is large, so it is kept out of the library and only
used as a small-n oracle in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circle import TWO_PI, circle_grid, inner_product, CircleSamples
from .matrices import OperatorMatrix, rational_tag
from .symbols import validate_pole

VARIANT_ZP = "zp"
VARIANT_PZ = "pz"


@dataclass(frozen=True)
class BasisFamily:
    """The first `size` elements R_0 .. R_{size-1} for one pole p."""

    p: complex
    size: int
    variant: str = VARIANT_ZP
    norm_constant: float = 0.0  # computed; sqrt((1 - |p|^2) / (2 pi))

    def __post_init__(self):
        p = validate_pole(self.p)
        object.__setattr__(self, "p", p)
        if self.size < 1:
            raise ValueError("size must be positive")
        if self.variant not in (VARIANT_ZP, VARIANT_PZ):
            raise ValueError(f"unknown variant {self.variant!r}")
        object.__setattr__(self, "norm_constant", np.sqrt((1.0 - abs(p) ** 2) / TWO_PI))

    def _check_index(self, n: int):
        if not 0 <= n < self.size:
            raise ValueError("bad index")


def basis_eval(family: BasisFamily, n: int, z):
    """R_n at a point or array with |z| <= 1 (poles sit outside the closed disk)."""
    family._check_index(n)
    zz = np.asarray(z, dtype=complex)
    if family.variant == VARIANT_ZP:
        num = zz - family.p
    else:
        num = family.p - zz
    out = family.norm_constant * num**n / (1.0 - np.conj(family.p) * zz) ** (n + 1)
    if np.ndim(z) == 0:
        return complex(out)
    return out


def basis_samples(family: BasisFamily, m: int) -> np.ndarray:
    """All elements on the uniform m-point grid, as a (size, m) array.

    Built by repeated multiplication with the sampled Blaschke factor, so the
    PZ variant is bitwise (-1)^n times the ZP variant.
    """
    z = circle_grid(m)
    denom = 1.0 - np.conj(family.p) * z
    if family.variant == VARIANT_ZP:
        blaschke = (z - family.p) / denom
    else:
        blaschke = (family.p - z) / denom
    rows = np.empty((family.size, m), dtype=complex)
    rows[0] = family.norm_constant / denom
    for n in range(1, family.size):
        rows[n] = rows[n - 1] * blaschke
    return rows


def pz_taylor_columns(p: complex, n_cols: int, n_rows: int) -> np.ndarray:
    """Taylor coefficients at 0 of (p - z)^n / (1 - conj(p) z)^(n+1), unnormalized.

    Column n holds the first n_rows coefficients.  Column 0 is the geometric
    series conj(p)^k; column n+1 multiplies column n by (p - z)/(1 - conj(p) z):
    division by (1 - conj(p) z) is the running sum h[k] = a[k] + conj(p) h[k-1],
    multiplication by (p - z) is p h[k] - h[k-1].  Both steps are lower
    triangular, so the leading block is exact regardless of n_rows.
    """
    p = complex(p)
    pb = np.conj(p)
    cols = np.empty((n_rows, n_cols), dtype=complex)
    col = pb ** np.arange(n_rows)
    cols[:, 0] = col
    for n in range(1, n_cols):
        h = np.empty(n_rows, dtype=complex)
        acc = 0j
        for k in range(n_rows):
            acc = col[k] + pb * acc
            h[k] = acc
        col = p * h
        col[1:] -= h[:-1]
        cols[:, n] = col
    return cols


def basis_taylor(family: BasisFamily, n: int, terms: int) -> np.ndarray:
    """First `terms` Taylor coefficients of R_n at the origin."""
    family._check_index(n)
    if terms < 1:
        raise ValueError("need at least one Taylor term")
    col = family.norm_constant * pz_taylor_columns(family.p, n + 1, terms)[:, n]
    if family.variant == VARIANT_ZP:
        return (-1) ** n * col
    return col


def gram_matrix(family: BasisFamily, m: int) -> OperatorMatrix:
    """Quadrature Gram matrix G[m, l] = <R_l, R_m>; orthonormality says G = I."""
    if m < 8 * family.size:
        raise ValueError("grid too coarse")
    rows = basis_samples(family, m)
    gram = (TWO_PI / m) * np.conj(rows) @ rows.T
    return OperatorMatrix(gram, rational_tag(family.p))


def szego_factor(p: complex) -> float:
    """The reproducing constant: <g, R_0> = sqrt(2 pi (1 - |p|^2)) g(p) for analytic g."""
    return float(np.sqrt(TWO_PI * (1.0 - abs(complex(p)) ** 2)))
