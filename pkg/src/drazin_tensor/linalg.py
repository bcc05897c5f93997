"""Dense complex linear algebra kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; every public
function validates its input with :func:`as_matrix` and never mutates it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
import scipy.linalg


class LinAlgInputError(ValueError):
    """Raised for malformed matrices (wrong shape, non-finite entries)."""


class EigenSolverError(RuntimeError):
    """Raised when the QR iteration fails to converge."""


class SingularMatrixError(RuntimeError):
    """Raised by :func:`solve` when the coefficient matrix is numerically singular."""


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds.

    ``None`` selects the matrix-relative default:
    ``eig_cluster = 1e-7 * (1 + ||A||_F)`` and
    ``rank_rel = 1e-10 * max(rows, cols)``.
    """

    eig_cluster: float | None = None
    rank_rel: float | None = None
    residual_rel: float = 1e-8

    def __post_init__(self) -> None:
        for name in ("eig_cluster", "rank_rel", "residual_rel"):
            value = getattr(self, name)
            if value is not None and not (np.isfinite(value) and value > 0):
                raise ValueError(f"tolerance {name} must be positive, got {value!r}")

    def cluster_radius(self, a: np.ndarray) -> float:
        if self.eig_cluster is not None:
            return float(self.eig_cluster)
        return 1e-7 * (1.0 + float(np.linalg.norm(a, "fro")))

    def rank_cutoff(self, a: np.ndarray) -> float:
        if self.rank_rel is not None:
            return float(self.rank_rel)
        return 1e-10 * max(a.shape)


DEFAULT_TOL = Tolerance()


def as_matrix(a: Any, *, square: bool = False) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex array, optionally requiring it square."""
    try:
        m = np.array(a, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise LinAlgInputError(f"not a numeric matrix: {exc}") from None
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise LinAlgInputError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise LinAlgInputError("matrix has NaN or infinite entries")
    if square and m.shape[0] != m.shape[1]:
        raise LinAlgInputError(f"expected a square matrix, got shape {m.shape}")
    return m


def eigenvalues(a: Any) -> np.ndarray:
    """All ``n`` eigenvalues of a square matrix, repeated by algebraic multiplicity.

    Uses LAPACK ``geev`` (Hessenberg reduction followed by shifted QR).
    """
    a = as_matrix(a, square=True)
    try:
        w = scipy.linalg.eigvals(a, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"QR iteration did not converge: {exc}") from None
    return np.asarray(w, dtype=np.complex128)


def singular_values(a: Any) -> np.ndarray:
    return np.linalg.svd(as_matrix(a), compute_uv=False)


def numerical_rank(a: Any, tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of singular values above ``rank_rel`` times the largest one."""
    a = as_matrix(a)
    s = singular_values(a)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_cutoff(a) * s[0]))


def kron(a: Any, b: Any) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def vec(a: Any) -> np.ndarray:
    """Column-stacking vectorization, returned as an ``(rows*cols, 1)`` column."""
    a = as_matrix(a)
    return a.reshape(-1, 1, order="F").copy()


def unvec(v: Any, rows: int, cols: int) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    if v.size != rows * cols:
        raise LinAlgInputError(f"cannot reshape {v.size} entries into {rows}x{cols}")
    return v.reshape(rows, cols, order="F").copy()


def solve(a: Any, b: Any, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Solve ``A X = B`` for square, numerically nonsingular ``A``."""
    a = as_matrix(a, square=True)
    b = as_matrix(b)
    if b.shape[0] != a.shape[0]:
        raise LinAlgInputError(f"incompatible shapes {a.shape} and {b.shape}")
    if numerical_rank(a, tol) < a.shape[0]:
        raise SingularMatrixError("matrix is singular to working tolerance")
    x = scipy.linalg.solve(a, b, check_finite=False)
    resid = np.linalg.norm(a @ x - b, "fro")
    if resid > tol.residual_rel * max(np.linalg.norm(b, "fro"), np.finfo(float).tiny):
        raise SingularMatrixError(f"solve residual {resid:.3e} exceeds tolerance")
    return x


def frob(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, "fro"))


def generalized_null_space(b: np.ndarray, cutoff: float) -> tuple[list[int], np.ndarray]:
    """Nullities ``[dim N(B), dim N(B^2), ...]`` up to stabilization, and a basis.

    Each step finds ``{x : B x in N(B^(j-1))}`` from an SVD of the projected
    operator, so the threshold ``cutoff`` (absolute) never sees explicit
    powers of ``B``. The list stops before its first repeated value, so its
    length is the ascent of ``B``; the basis is orthonormal and spans the
    last (largest) nullspace.
    """
    n = b.shape[0]
    basis = np.zeros((n, 0), dtype=np.complex128)
    nullities: list[int] = []
    while True:
        proj = b - basis @ (basis.conj().T @ b)
        _, s, vh = np.linalg.svd(proj)
        null_dim = int(np.count_nonzero(s <= cutoff))
        if (nullities and null_dim <= nullities[-1]) or (not nullities and null_dim == 0):
            return nullities, basis
        nullities.append(null_dim)
        basis = vh[n - null_dim:].conj().T
        if null_dim == n:
            return nullities, basis


def generalized_null_chain(b: np.ndarray, cutoff: float) -> list[int]:
    return generalized_null_space(b, cutoff)[0]


@dataclass(frozen=True)
class EigenCluster:
    value: complex
    multiplicity: int
    ascent: int
    spread: float


def cluster_spectrum(a: Any, tol: Tolerance = DEFAULT_TOL) -> list[EigenCluster]:
    """Group the eigenvalues of ``a`` into distinct spectral points.

    A perturbed Jordan block of size ``k`` scatters its eigenvalue over a
    circle of radius ``~eps**(1/k)``, far wider than ``eig_cluster``. So a
    candidate group of the ``m`` eigenvalues nearest a seed is accepted only
    if the generalized null space of ``A - c I`` at its centroid ``c`` has
    dimension exactly ``m`` and the spread fits the scatter of a block of
    the certified ascent; the largest such ``m`` wins. Centroids within
    ``eig_cluster`` of zero are snapped to zero.
    """
    a = as_matrix(a, square=True)
    n = a.shape[0]
    w = eigenvalues(a)
    radius = tol.cluster_radius(a)
    scale = 1.0 + frob(a)
    rel = radius / scale
    norm2 = np.linalg.norm(a, 2)
    unassigned = sorted(range(n), key=lambda i: (w[i].real, w[i].imag))
    clusters: list[EigenCluster] = []
    while unassigned:
        seed = unassigned[0]
        pool = np.array(unassigned)
        dist = np.abs(w[pool] - w[seed])
        order = pool[np.argsort(dist, kind="stable")]
        accepted = None
        for m in range(len(order), 0, -1):
            members = order[:m]
            c = complex(np.mean(w[members]))
            spread = float(np.max(np.abs(w[members] - c)))
            if m > 1 and spread > scale * rel ** (1.0 / m):
                continue
            if abs(c) <= radius:
                c = 0j
            b = a - c * np.eye(n)
            cutoff = tol.rank_cutoff(a) * max(np.linalg.norm(b, 2), norm2, 1e-300)
            if any(abs(c - prev.value) <= max(radius, prev.spread) for prev in clusters):
                continue
            chain = generalized_null_chain(b, cutoff)
            # the chain can certify m by coincidence when c sits on a cluster
            # whose eigenvalues were already claimed; scatter must fit the ascent
            if chain and chain[-1] == m and (m == 1 or spread <= scale * rel ** (1.0 / len(chain))):
                accepted = EigenCluster(c, m, len(chain), spread)
                break
        if accepted is None:
            raise EigenSolverError(
                f"could not resolve the eigenvalue cluster around {w[seed]:.6g}"
            )
        clusters.append(accepted)
        taken = set(order[: accepted.multiplicity].tolist())
        unassigned = [i for i in unassigned if i not in taken]
    clusters.sort(key=lambda c: (c.value.real, c.value.imag))
    return clusters


# -- JSON ---------------------------------------------------------------------


def _clean(x: float) -> float:
    return 0.0 if x == 0.0 else float(x)


def complex_to_json(z: complex) -> list[float]:
    return [_clean(z.real), _clean(z.imag)]


def complex_from_json(item: Any) -> complex:
    if isinstance(item, (int, float)) and not isinstance(item, bool):
        return complex(item)
    if not (isinstance(item, (list, tuple)) and len(item) == 2):
        raise LinAlgInputError(f"complex scalar must be [re, im], got {item!r}")
    re, im = item
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
        raise LinAlgInputError(f"complex scalar must be [re, im], got {item!r}")
    return complex(float(re), float(im))


def matrix_to_json(a: Any) -> dict:
    a = as_matrix(a)
    return {
        "rows": a.shape[0],
        "cols": a.shape[1],
        "data": [complex_to_json(z) for z in a.reshape(-1)],
    }


def matrix_from_json(obj: Any) -> np.ndarray:
    if not isinstance(obj, dict) or not {"rows", "cols", "data"} <= obj.keys():
        raise LinAlgInputError("matrix JSON needs 'rows', 'cols' and 'data'")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise LinAlgInputError("'rows' and 'cols' must be positive integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise LinAlgInputError(f"'data' must hold rows*cols = {rows * cols} entries")
    values = [complex_from_json(item) for item in data]
    return as_matrix(np.array(values, dtype=np.complex128).reshape(rows, cols))


def dumps(obj: Any) -> str:
    """Deterministic JSON rendering (``repr`` floats round-trip bit-exactly)."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False)


def sort_points(values: Sequence[complex]) -> list[complex]:
    return sorted(values, key=lambda z: (z.real, z.imag))
