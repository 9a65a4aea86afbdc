"""Tagged matrix and vector containers.

Every operator matrix and coefficient vector records which orthonormal
coefficient frame it lives in; antilinear actions refuse to mix frames.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

KIND_MONOMIAL = "monomial"
KIND_RATIONAL = "rational"
KIND_RATIONAL_CLOSED_FORM = "rational_closed_form"


@dataclass(frozen=True)
class BasisTag:
    kind: str
    p: complex | None = None

    def __post_init__(self):
        if self.kind not in (KIND_MONOMIAL, KIND_RATIONAL, KIND_RATIONAL_CLOSED_FORM):
            raise ValueError(f"unknown basis tag {self.kind!r}")
        if self.kind == KIND_MONOMIAL:
            if self.p is not None:
                raise ValueError("monomial tag carries no pole")
        elif self.p is None:
            raise ValueError(f"{self.kind} tag needs a pole")

    def same_frame(self, other: "BasisTag") -> bool:
        """True when both tags denote the same coefficient frame.

        The rational quadrature matrix and the closed-form transcription both
        live in the R_n(p) frame, so they share a frame when p matches.
        """
        if self.kind == KIND_MONOMIAL or other.kind == KIND_MONOMIAL:
            return self.kind == other.kind
        return self.p == other.p

    def describe(self) -> str:
        if self.kind == KIND_MONOMIAL:
            return self.kind
        return f"{self.kind}(p={self.p})"


def monomial_tag() -> BasisTag:
    return BasisTag(KIND_MONOMIAL)


def rational_tag(p) -> BasisTag:
    return BasisTag(KIND_RATIONAL, complex(p))


def rational_closed_form_tag(p) -> BasisTag:
    return BasisTag(KIND_RATIONAL_CLOSED_FORM, complex(p))


@dataclass(frozen=True)
class OperatorMatrix:
    """An order x order complex matrix of <T b_l, b_m>-type data."""

    entries: np.ndarray
    basis: BasisTag

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise ValueError(f"expected a square matrix, got shape {entries.shape}")
        object.__setattr__(self, "entries", entries)

    @property
    def order(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class CoefficientVector:
    """Coefficients a_n of an H^2 element in the tagged orthonormal frame."""

    values: np.ndarray
    basis: BasisTag

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 1 or values.size < 1:
            raise ValueError(f"expected a coefficient vector, got shape {values.shape}")
        object.__setattr__(self, "values", values)
