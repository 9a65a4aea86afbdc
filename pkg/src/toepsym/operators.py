"""Truncated Toeplitz matrices and conjugations as antilinear matrix actions.

A conjugation C is realized on coefficient vectors as x -> U conj(x) for a
unitary U in a tagged frame.  C-symmetry of an operator matrix A, C A = A* C,
then reads U conj(A) = adjoint(A) U, and the symmetry residual measures the
max-entry defect of that identity on a leading window (row/column truncation
of an infinite matrix corrupts trailing entries, so the window defaults to
half the truncation order).

Two independent constructions of the truncated Toeplitz matrix in the
rational frame are provided on purpose: the closed-form entry transcription

    t_{ml} = [phi_hat(m-l) + conj(p) phi_hat(m-l-1)] / sqrt(2 pi (1 - |p|^2))

and the quadrature oracle <phi b_l, b_m>.  The oracle is ground truth; the
closed form is a transcription under test, and the two are *not* assumed to
agree (for phi = z the oracle's diagonal is p while the closed form's is 0).
Their gap is measured and reported, never reconciled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import BasisFamily, basis_samples, pz_taylor_columns
from .circle import TWO_PI, FourierTable, circle_grid
from .matrices import (
    BasisTag,
    CoefficientVector,
    OperatorMatrix,
    monomial_tag,
    rational_closed_form_tag,
    rational_tag,
)
from .symbols import SymbolSpec, evaluate, validate_pole

KIND_J = "J"
KIND_CLAMBDA = "Clambda"
KIND_CP = "Cp"

EXACT = "exact"
TRUNCATED = "truncated"

UNIMODULAR_TOL = 1e-12


@dataclass(frozen=True)
class ConjugationSpec:
    """One of J(p) (coefficient conjugation in the R_n(p) frame), C_lambda
    (f(z) -> conj(f(lambda conj(z)))), or C_p (the weighted-composition-type
    conjugation onto the (p-z)^n frame)."""

    kind: str
    p: complex | None = None
    lam: complex | None = None

    def __post_init__(self):
        if self.kind in (KIND_J, KIND_CP):
            if self.p is None:
                raise ValueError("bad conjugation spec: missing p")
            object.__setattr__(self, "p", validate_pole(self.p))
        elif self.kind == KIND_CLAMBDA:
            if self.lam is None:
                raise ValueError("bad conjugation spec: missing lambda")
            lam = complex(self.lam)
            if abs(abs(lam) - 1.0) > UNIMODULAR_TOL:
                raise ValueError("bad conjugation spec: lambda must be unimodular")
            object.__setattr__(self, "lam", lam)
        else:
            raise ValueError(f"bad conjugation spec: kind {self.kind!r}")


def conjugation_j(p) -> ConjugationSpec:
    return ConjugationSpec(KIND_J, p=p)


def conjugation_c_lambda(lam) -> ConjugationSpec:
    return ConjugationSpec(KIND_CLAMBDA, lam=lam)


def conjugation_c_p(p) -> ConjugationSpec:
    return ConjugationSpec(KIND_CP, p=p)


@dataclass(frozen=True)
class ConjugationRealization:
    """The linear part U of x -> U conj(x) on a coefficient frame."""

    u: np.ndarray
    basis: BasisTag
    exactness: str
    involution_residual: float
    spec: ConjugationSpec

    @property
    def order(self) -> int:
        return self.u.shape[0]


def cp_taylor_block(p, n_cols: int, n_rows: int) -> np.ndarray:
    """Column n = first n_rows Taylor coefficients of
    sqrt(1 - |p|^2) (p - z)^n / (1 - conj(p) z)^(n+1)."""
    p = complex(p)
    return np.sqrt(1.0 - abs(p) ** 2) * pz_taylor_columns(p, n_cols, n_rows)


def default_taylor_terms(order: int) -> int:
    return max(4 * order, 64)


def realize_conjugation(
    spec: ConjugationSpec, order: int, taylor_terms: int | None = None
) -> ConjugationRealization:
    """Matrix realization at truncation `order`.

    J and C_lambda act diagonally on their frames and are exact at every
    order.  C_p mixes all monomial coefficients; its N x N block is exact
    entrywise but the involution only closes through coefficients beyond the
    truncation, so the realization is tagged TRUNCATED and reports the
    residual of expanding to `taylor_terms` coefficients and truncating back:

        || U_{N x T} conj(U_{T x N}) - I ||_max,   T = taylor_terms.
    """
    if order < 1:
        raise ValueError("order must be positive")
    if spec.kind == KIND_J:
        u = np.eye(order, dtype=complex)
        return ConjugationRealization(u, rational_tag(spec.p), EXACT, 0.0, spec)
    if spec.kind == KIND_CLAMBDA:
        u = np.diag(np.conj(spec.lam) ** np.arange(order))
        residual = float(np.max(np.abs(u @ np.conj(u) - np.eye(order))))
        return ConjugationRealization(u, monomial_tag(), EXACT, residual, spec)
    # Cp
    terms = default_taylor_terms(order) if taylor_terms is None else int(taylor_terms)
    if terms < order:
        raise ValueError("bad conjugation spec: taylor_terms must be >= order")
    tall = cp_taylor_block(spec.p, order, terms)  # terms x order
    wide = cp_taylor_block(spec.p, terms, order)  # order x terms
    residual = float(np.max(np.abs(wide @ np.conj(tall) - np.eye(order))))
    return ConjugationRealization(tall[:order, :], monomial_tag(), TRUNCATED, residual, spec)


def apply_conjugation(realization: ConjugationRealization, x: CoefficientVector) -> CoefficientVector:
    """C x = U conj(x)."""
    if not realization.basis.same_frame(x.basis):
        raise ValueError("basis mismatch")
    if x.values.shape[0] != realization.order:
        raise ValueError("basis mismatch: length differs")
    return CoefficientVector(realization.u @ np.conj(x.values), x.basis)


def symmetry_residual(
    matrix: OperatorMatrix, realization: ConjugationRealization, window: int | None = None
) -> float:
    """Relative max-entry residual of U conj(A) = adjoint(A) U on the window.

    With U = I this is the plain symmetry defect |A - A^T| (up to conjugation,
    which does not change the max-norm).  The result is normalized by
    max(1, max|A| on the window) so verdicts are scale-free.
    """
    if not realization.basis.same_frame(matrix.basis):
        raise ValueError("basis mismatch")
    n = matrix.order
    if realization.order != n:
        raise ValueError("basis mismatch: order differs")
    if window is None:
        window = max(1, n // 2)
    if not 1 <= window <= n:
        raise ValueError("window must lie in [1, order]")
    a = matrix.entries
    u = realization.u
    defect = u @ np.conj(a) - np.conj(a).T @ u
    scale = max(1.0, float(np.max(np.abs(a[:window, :window]))))
    return float(np.max(np.abs(defect[:window, :window]))) / scale


def toeplitz_monomial(table: FourierTable, order: int) -> OperatorMatrix:
    """[T_phi] in the monomial frame: entry (m, l) = phi_hat(m - l).

    Entries on a diagonal are the same stored coefficient, so the Toeplitz
    structure holds exactly.
    """
    if table.k < order - 1:
        raise ValueError("coefficient window")
    entries = np.empty((order, order), dtype=complex)
    for d in range(-(order - 1), order):
        diag = table[d]
        for m in range(max(0, d), min(order, order + d)):
            entries[m, m - d] = diag
    return OperatorMatrix(entries, monomial_tag())


def toeplitz_rational_closed_form(table: FourierTable, p, order: int) -> OperatorMatrix:
    """The transcribed closed-form entries in the rational frame,

        t_{ml} = [phi_hat(m-l) + conj(p) phi_hat(m-l-1)] / sqrt(2 pi (1-|p|^2)).

    This transcription is *not* asserted to match the quadrature oracle; see
    the module docstring.
    """
    p = validate_pole(p)
    if table.k < order:
        raise ValueError("coefficient window")
    root = np.sqrt(TWO_PI * (1.0 - abs(p) ** 2))
    entries = np.empty((order, order), dtype=complex)
    for d in range(-(order - 1), order):
        t = (table[d] + np.conj(p) * table[d - 1]) / root
        for m in range(max(0, d), min(order, order + d)):
            entries[m, m - d] = t
    return OperatorMatrix(entries, rational_closed_form_tag(p))


def toeplitz_quadrature(
    symbol: SymbolSpec, basis_kind: str, p, order: int, samples: int
) -> OperatorMatrix:
    """Ground-truth truncation: entry (m, l) = <phi b_l, b_m> by quadrature.

    basis_kind "monomial" uses b_m = z^m / sqrt(2 pi); "rational" uses R_m(p).
    """
    if samples < 8 * order:
        raise ValueError("grid too coarse")
    z = circle_grid(samples)
    phi = evaluate(symbol, z)
    if basis_kind == "monomial":
        rows = z ** np.arange(order)[:, None] / np.sqrt(TWO_PI)
        tag = monomial_tag()
    elif basis_kind == "rational":
        family = BasisFamily(p, order)
        rows = basis_samples(family, samples)
        tag = rational_tag(family.p)
    else:
        raise ValueError(f"unknown basis kind {basis_kind!r}")
    entries = (TWO_PI / samples) * np.conj(rows) @ (phi * rows).T
    return OperatorMatrix(entries, tag)
