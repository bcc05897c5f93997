"""Drazin spectra of tensor products and elementary operators.

Numeric tier: Drazin inverses, indices and pole orders of dense matrices.
Symbolic tier: finite spectral descriptors and the calculus that classifies
the spectrum of ``a (x) b`` from descriptors of ``a`` and ``b``.
"""

from .drazin import DrazinDecomposition, DrazinError, axiom_residuals, drazin_inverse, index_of, pole_order
from .elementary import ElementaryOperator, build, elementary_classify, spectrum_check
from .linalg import DEFAULT_TOL, LinAlgInputError, Tolerance
from .spectral import (
    DescriptorError,
    SpectralClassification,
    SpectralPoint,
    Tag,
    classification,
    classify_matrix,
    validate,
)
from .tensor import (
    TensorReport,
    TwoPathMismatch,
    ZeroPosition,
    classify_zero,
    drazin_spectrum_tensor,
    equality_predicates,
    tensor_classify,
)

__all__ = [
    "DEFAULT_TOL",
    "DescriptorError",
    "DrazinDecomposition",
    "DrazinError",
    "ElementaryOperator",
    "LinAlgInputError",
    "SpectralClassification",
    "SpectralPoint",
    "Tag",
    "TensorReport",
    "Tolerance",
    "TwoPathMismatch",
    "ZeroPosition",
    "axiom_residuals",
    "build",
    "classification",
    "classify_matrix",
    "classify_zero",
    "drazin_inverse",
    "drazin_spectrum_tensor",
    "elementary_classify",
    "equality_predicates",
    "index_of",
    "pole_order",
    "spectrum_check",
    "tensor_classify",
    "validate",
]
