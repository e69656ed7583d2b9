"""Vectors, decreasing rearrangements, and orthonormal subspace bases.

Conventions used throughout the package:

* the scalar field of an array is its dtype (float64 for real data,
  complex128 for complex data); every routine accepts both,
* the decreasing rearrangement of ``v`` is the vector of moduli ``|v_i|``
  sorted in non-increasing order,
* ``w`` is dominated by ``v`` when its rearrangement is bounded by the
  rearrangement of ``v`` in every coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RankDeficientError

__all__ = [
    "SubspaceBasis",
    "decreasing_rearrangement",
    "decreasing_argsort",
    "dom_membership",
    "orthonormalize",
    "orthonormal_complement",
    "project",
    "projection_norm",
]

ORTHO_TOL = 1e-9
SUM_ZERO_TOL = 1e-9
RANK_TOL = 1e-10


def _as_matrix(columns) -> np.ndarray:
    a = np.asarray(columns)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError("expected a nonempty 2-d array of basis columns")
    if np.iscomplexobj(a):
        return np.ascontiguousarray(a, dtype=np.complex128)
    return np.ascontiguousarray(a, dtype=np.float64)


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of a k-dimensional subspace, stored column-wise.

    Orthonormality is validated on construction (max deviation of the Gram
    matrix from the identity at most 1e-9).  When ``sum_zero`` is set the
    columns must additionally have coordinate sums at most 1e-9 in modulus,
    i.e. the subspace sits inside the hyperplane orthogonal to the all-ones
    vector.  The stored array is made read-only.
    """

    columns: np.ndarray
    sum_zero: bool = False

    def __post_init__(self):
        cols = _as_matrix(self.columns)
        d, k = cols.shape
        if k > d:
            raise ValueError(f"basis has {k} columns in dimension {d}")
        gram = cols.conj().T @ cols
        err = float(np.max(np.abs(gram - np.eye(k))))
        if err > ORTHO_TOL:
            raise ValueError(f"columns not orthonormal (deviation {err:.3e})")
        if self.sum_zero:
            worst = float(np.max(np.abs(cols.sum(axis=0))))
            if worst > SUM_ZERO_TOL:
                raise ValueError(
                    f"columns not sum-free (coordinate sum {worst:.3e})"
                )
        cols.setflags(write=False)
        object.__setattr__(self, "columns", cols)

    @property
    def d(self) -> int:
        return self.columns.shape[0]

    @property
    def k(self) -> int:
        return self.columns.shape[1]

    @property
    def field(self) -> str:
        return "complex" if np.iscomplexobj(self.columns) else "real"

    def complexify(self) -> "SubspaceBasis":
        """Same columns reinterpreted over the complex field."""
        if self.field == "complex":
            return self
        return SubspaceBasis(
            self.columns.astype(np.complex128), sum_zero=self.sum_zero
        )

    def projector(self) -> np.ndarray:
        """Orthogonal projector onto the subspace as a dense matrix."""
        return self.columns @ self.columns.conj().T


def decreasing_rearrangement(v) -> np.ndarray:
    """Moduli of ``v`` sorted in non-increasing order."""
    v = np.asarray(v)
    return np.sort(np.abs(v), kind="stable")[::-1].copy()


def decreasing_argsort(v) -> np.ndarray:
    """Indices ordering ``v`` by decreasing modulus, ties by original index."""
    v = np.asarray(v)
    return np.argsort(-np.abs(v), kind="stable")


def dom_membership(w, v, tol: float = 1e-12) -> bool:
    """Whether the rearrangement of ``w`` is dominated by that of ``v``.

    Uses a componentwise slack of ``tol``.  Both arguments must share the
    same length; the scalar fields may differ.
    """
    w = np.asarray(w)
    v = np.asarray(v)
    if w.shape != v.shape or w.ndim != 1:
        raise ValueError("dominance requires two vectors of equal length")
    return bool(
        np.all(decreasing_rearrangement(w) <= decreasing_rearrangement(v) + tol)
    )


def orthonormalize(columns, sum_zero: bool = False) -> SubspaceBasis:
    """Orthonormal basis with the same column span as ``columns``.

    Raises :class:`RankDeficientError` when the smallest singular value is
    at most ``1e-10`` times the largest, i.e. the columns do not determine a
    subspace of their full count.  The QR factor is normalized to make the
    diagonal of R real positive, so the output is deterministic.
    """
    a = _as_matrix(columns)
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= RANK_TOL * s[0]:
        raise RankDeficientError(
            f"columns are numerically rank deficient (spectrum {s[-1]:.3e}"
            f" vs {s[0]:.3e})"
        )
    q, r = np.linalg.qr(a)
    diag = np.diagonal(r).copy()
    mod = np.abs(diag)
    phase = np.where(mod > 0, diag / np.where(mod > 0, mod, 1.0), 1.0)
    q = q * phase.conj()[None, :]
    return SubspaceBasis(q, sum_zero=sum_zero)


def orthonormal_complement(basis: SubspaceBasis) -> SubspaceBasis:
    """Orthonormal basis of the orthogonal complement."""
    if basis.k == basis.d:
        raise ValueError("complement of the full space is empty")
    u, _, _ = np.linalg.svd(basis.columns, full_matrices=True)
    return SubspaceBasis(np.ascontiguousarray(u[:, basis.k :]))


def project(basis: SubspaceBasis, x) -> np.ndarray:
    """Orthogonal projection of ``x`` onto the subspace."""
    x = np.asarray(x)
    return basis.columns @ (basis.columns.conj().T @ x)


def projection_norm(basis: SubspaceBasis, x) -> float:
    """Euclidean norm of the projection of ``x`` onto the subspace."""
    x = np.asarray(x)
    return float(np.linalg.norm(basis.columns.conj().T @ x))
