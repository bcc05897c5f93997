"""Elementary operators ``M_{S,T}(A) = S A T`` on coordinate matrix spaces.

With column-stacking ``vec``, ``vec(S A T) = kron(T^T, S) vec(A)``, so the
operator on ``n x m`` matrices is the ``nm x nm`` matrix ``kron(T^T, S)``.
The space of all ``n x m`` matrices with the Frobenius norm plays the role
of the operator ideal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    cluster_spectrum,
    frob,
    kron,
    vec,
)
from .spectral import SpectralClassification
from .tensor import TensorReport, report_to_json, tensor_classify


class ProbeMismatch(AssertionError):
    """``matrix_form`` failed the vec identity on a random probe."""


@dataclass(frozen=True)
class ElementaryOperator:
    S: np.ndarray
    T: np.ndarray
    matrix_form: np.ndarray
    probe_residual: float

    def apply(self, a) -> np.ndarray:
        return self.S @ as_matrix(a) @ self.T


def vec_identity_residual(s, t, a) -> float:
    """``||vec(S A T) - kron(T^T, S) vec(A)|| / (||S|| ||A|| ||T||)`` in Frobenius norms."""
    s, t, a = as_matrix(s), as_matrix(t), as_matrix(a)
    lhs = vec(s @ a @ t)
    rhs = kron(t.T, s) @ vec(a)
    scale = frob(s) * frob(a) * frob(t)
    return frob(lhs - rhs) / scale if scale > 0 else frob(lhs - rhs)


def build(s, t, tol: Tolerance = DEFAULT_TOL, seed: int = 0) -> ElementaryOperator:
    """Matrix form of ``A -> S A T``, checked against a random probe ``A``."""
    s = as_matrix(s, square=True)
    t = as_matrix(t, square=True)
    rng = np.random.default_rng(seed)
    shape = (s.shape[0], t.shape[0])
    probe = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    resid = vec_identity_residual(s, t, probe)
    if resid > tol.residual_rel:
        raise ProbeMismatch(f"vec identity residual {resid:.3e} > {tol.residual_rel:.1e}")
    return ElementaryOperator(s, t, kron(t.T, s), resid)


def match_multisets(x, y) -> float:
    """Largest distance in the optimal one-to-one pairing of two equal-size multisets."""
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    y = np.asarray(y, dtype=np.complex128).reshape(-1)
    if x.size != y.size:
        return float("inf")
    cost = np.abs(x[:, None] - y[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) if x.size else 0.0


@dataclass(frozen=True)
class SpectrumCheck:
    matches: bool
    operator_eigenvalues: np.ndarray
    product_eigenvalues: np.ndarray
    max_deviation: float
    tolerance: float


def clustered_eigenvalues(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalue multiset with each defective cluster replaced by its centroid."""
    clusters = cluster_spectrum(as_matrix(a, square=True), tol)
    return np.array([c.value for c in clusters for _ in range(c.multiplicity)], dtype=np.complex128)


def spectrum_check(e: ElementaryOperator, tol: Tolerance = DEFAULT_TOL) -> SpectrumCheck:
    """Compare ``sigma(M_{S,T})`` with ``sigma(S) sigma(T)`` as multisets.

    Both sides use clustered eigenvalues, since a Jordan block of size ``k``
    scatters computed eigenvalues by roughly ``eps**(1/k)``. Each eigenvalue
    of the matrix form is paired with one product ``lam * mu`` by optimal
    assignment; the check passes when no pair is further apart than
    ``eig_cluster`` of the matrix form.
    """
    w = clustered_eigenvalues(e.matrix_form, tol)
    prods = np.outer(clustered_eigenvalues(e.S, tol), clustered_eigenvalues(e.T, tol)).reshape(-1)
    dev = match_multisets(w, prods)
    radius = tol.cluster_radius(e.matrix_form)
    return SpectrumCheck(dev <= radius, w, prods, dev, radius)


def elementary_classify(s: SpectralClassification, t: SpectralClassification) -> TensorReport:
    """Classification of ``M_{S,T}`` from descriptors of ``S`` and ``T``.

    Adjoints share poles and Drazin spectrum, so ``T`` enters through its own
    descriptor and the tensor calculus applies unchanged.
    """
    return tensor_classify(s, t)


def elementary_report_json(report: TensorReport) -> dict:
    return report_to_json(report, labels=("S", "T"))
