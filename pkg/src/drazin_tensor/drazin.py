"""Drazin index, Drazin inverse and pole orders of square matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    cluster_spectrum,
    frob,
    generalized_null_chain,
    generalized_null_space,
)

# Largest admissible 2-norm condition number of the range/nullspace basis.
BASIS_COND_CAP = 1e12


class DrazinError(RuntimeError):
    """The core-nilpotent splitting is too ill-conditioned to trust."""


class NotInSpectrumError(ValueError):
    pass


@dataclass(frozen=True)
class DrazinDecomposition:
    """Core-nilpotent splitting ``P^-1 A P = diag(core_block, nil_block)``.

    The first ``core_block.shape[0]`` columns of ``basis`` span ``R(A^k)``,
    the rest span ``N(A^k)``.
    """

    index: int
    drazin_inverse: np.ndarray
    basis: np.ndarray
    core_block: np.ndarray
    nil_block: np.ndarray
    basis_cond: float

    @property
    def core_rank(self) -> int:
        return self.core_block.shape[0]


def _zero_cutoff(a: np.ndarray, tol: Tolerance) -> float:
    return tol.rank_cutoff(a) * max(float(np.linalg.norm(a, 2)), np.finfo(float).tiny)


def index_of(a, tol: Tolerance = DEFAULT_TOL) -> int:
    """Smallest ``k >= 0`` with ``rank(A^k) == rank(A^(k+1))``.

    ``rank(A^k) = n - dim N(A^k)``, and the nullities come from the
    projected chain of :func:`generalized_null_space`. Singular values of
    explicit powers spread over ``cond(P)**2 * ||J||**k`` and lose the
    small ones to the relative cutoff once ``k`` exceeds 3 or 4.
    """
    a = as_matrix(a, square=True)
    return len(generalized_null_chain(a, _zero_cutoff(a, tol)))


def drazin_inverse(a, tol: Tolerance = DEFAULT_TOL) -> DrazinDecomposition:
    """Drazin inverse through the core-nilpotent decomposition.

    ``N(A^k)`` is the generalized nullspace of ``A``; ``R(A^k)`` is the
    orthogonal complement of the generalized nullspace of ``A^H``. Raises
    :class:`DrazinError` when the two disagree in dimension or the combined
    basis has condition number above ``BASIS_COND_CAP``.
    """
    a = as_matrix(a, square=True)
    n = a.shape[0]
    cutoff = _zero_cutoff(a, tol)
    chain, null_basis = generalized_null_space(a, cutoff)
    chain_h, null_basis_h = generalized_null_space(a.conj().T, cutoff)
    k = len(chain)
    nullity = chain[-1] if chain else 0
    if (chain_h[-1] if chain_h else 0) != nullity:
        raise DrazinError(
            f"generalized nullspaces of A and A^H have dimensions {nullity} and {chain_h[-1] if chain_h else 0}"
        )
    r = n - nullity
    range_basis = scipy.linalg.null_space(null_basis_h.conj().T) if nullity else np.eye(n)
    basis = np.hstack([range_basis[:, :r], null_basis]).astype(np.complex128)
    cond = float(np.linalg.cond(basis))
    if not np.isfinite(cond) or cond > BASIS_COND_CAP:
        raise DrazinError(
            f"range/nullspace basis of A^{k} has condition {cond:.3e} > {BASIS_COND_CAP:.0e}"
        )
    basis_inv = np.linalg.inv(basis)
    split = basis_inv @ a @ basis
    core, nil = split[:r, :r], split[r:, r:]
    inner = np.zeros((n, n), dtype=np.complex128)
    if r:
        inner[:r, :r] = np.linalg.inv(core)
    ad = basis @ inner @ basis_inv
    return DrazinDecomposition(k, ad, basis, core, nil, cond)


def axiom_residuals(a, ad, index: int, tol: Tolerance = DEFAULT_TOL) -> dict[str, float]:
    """Relative residuals of ``A^k X A = A^k``, ``X A X = X`` and ``A X = X A``.

    The first is scaled by ``||A^k||``, or by ``||A||^k`` when ``A`` is
    nilpotent: then ``A^k`` is zero and its computed value is pure rounding.
    """
    a = as_matrix(a, square=True)
    ad = as_matrix(ad, square=True)
    ak = np.linalg.matrix_power(a, index)
    nilpotent = index > 0 and sum(generalized_null_chain(a, _zero_cutoff(a, tol))[-1:]) == a.shape[0]
    scale = frob(a) ** index if nilpotent else frob(ak)
    r1 = frob(ak @ ad @ a - ak)
    r1 = r1 / scale if scale > 0 else r1
    nad, na = frob(ad), frob(a)
    r2 = frob(ad @ a @ ad - ad) / nad if nad > 0 else 0.0
    r3 = frob(a @ ad - ad @ a) / (na * nad) if nad > 0 and na > 0 else 0.0
    return {"power": r1, "reflexive": r2, "commute": r3}


def split_residual(dec: DrazinDecomposition, a) -> float:
    """Size of the off-diagonal blocks of ``P^-1 A P`` relative to ``||A||``."""
    a = as_matrix(a, square=True)
    split = np.linalg.solve(dec.basis, a @ dec.basis)
    r = dec.core_rank
    off = np.sqrt(frob(split[:r, r:]) ** 2 + frob(split[r:, :r]) ** 2)
    return off / max(frob(a), np.finfo(float).tiny)


def pole_order(a, lam: complex, tol: Tolerance = DEFAULT_TOL) -> int:
    """Order of ``lam`` as a pole of the resolvent, i.e. the index of ``A - lam I``.

    ``lam`` must lie within ``eig_cluster`` of an eigenvalue cluster of ``A``
    (or inside the scatter of a defective cluster).
    """
    a = as_matrix(a, square=True)
    radius = tol.cluster_radius(a)
    clusters = cluster_spectrum(a, tol)
    nearest = min(clusters, key=lambda c: abs(c.value - lam))
    if abs(nearest.value - lam) > max(radius, nearest.spread):
        raise NotInSpectrumError(
            f"{lam} is not an eigenvalue (nearest {nearest.value:.6g} "
            f"at distance {abs(nearest.value - lam):.3e})"
        )
    return nearest.ascent
