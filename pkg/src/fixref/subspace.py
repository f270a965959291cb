"""Linear subspaces of R^n stored as orthonormal bases, with lattice arithmetic.

A :class:`Subspace` is immutable and holds an n x k matrix with orthonormal
columns; k = 0 encodes {0} and k = n encodes all of R^n.  Bases are never
canonicalized, so equality is always decided through projector distance,
never entrywise.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .linalg import DEFAULT_TOL, Tolerance


class AmbientMismatchError(ValueError):
    """Operands live in spaces of different dimension."""


def require_same_ambient(u: "Subspace", v: "Subspace") -> None:
    if u.ambient != v.ambient:
        raise AmbientMismatchError(
            f"ambient dimensions differ: {u.ambient} != {v.ambient}")


class Subspace:
    """A linear subspace of R^n, the universal currency of the toolkit."""

    __slots__ = ("_basis",)

    def __init__(self, basis, *, tol: Tolerance | None = None,
                 check: bool = True):
        tol = tol or DEFAULT_TOL
        q = np.array(basis, dtype=np.float64)
        if q.ndim != 2:
            raise ValueError(f"basis must be 2-D, got shape {q.shape}")
        n, k = q.shape
        if n < 1:
            raise ValueError("ambient dimension must be >= 1")
        if k > n:
            raise ValueError(f"{k} basis vectors cannot span a subspace of R^{n}")
        if check:
            linalg.check_finite(q, "basis")
            if k:
                gram_err = float(np.max(np.abs(q.T @ q - np.eye(k))))
                if gram_err > 10.0 * tol.eq_abs:
                    raise ValueError(
                        f"basis columns are not orthonormal "
                        f"(deviation {gram_err:.3e}); use Subspace.from_vectors")
        q.flags.writeable = False
        self._basis = q

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_vectors(cls, vectors, ambient: int | None = None,
                     tol: Tolerance | None = None) -> "Subspace":
        """Span of the given vectors; dependent vectors collapse."""
        return cls(linalg.orthonormal_basis(vectors, ambient=ambient, tol=tol),
                   check=False)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        """The trivial subspace {0} of R^ambient."""
        if ambient < 1:
            raise ValueError("ambient dimension must be >= 1")
        return cls(np.zeros((ambient, 0)), check=False)

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        """All of R^ambient."""
        if ambient < 1:
            raise ValueError("ambient dimension must be >= 1")
        return cls(np.eye(ambient), check=False)

    @classmethod
    def line(cls, direction) -> "Subspace":
        """The line spanned by a single nonzero vector."""
        v = np.asarray(direction, dtype=np.float64)
        if v.ndim != 1 or not np.any(v):
            raise ValueError("direction must be a nonzero 1-D vector")
        return cls.from_vectors([v])

    # -- structure ---------------------------------------------------------

    @property
    def ambient(self) -> int:
        return self._basis.shape[0]

    @property
    def dim(self) -> int:
        return self._basis.shape[1]

    @property
    def basis(self) -> np.ndarray:
        """Read-only n x dim matrix with orthonormal columns."""
        return self._basis

    def __repr__(self) -> str:
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"

    # -- lattice operations -------------------------------------------------

    def complement(self) -> "Subspace":
        """Orthogonal complement; dim flips to n - dim."""
        n, k = self._basis.shape
        if k == 0:
            return Subspace.full(n)
        if k == n:
            return Subspace.zero(n)
        return Subspace(linalg.null_space(self._basis.T), check=False)

    def intersect(self, other: "Subspace",
                  tol: Tolerance | None = None) -> "Subspace":
        """Largest subspace contained in both operands."""
        require_same_ambient(self, other)
        n = self.ambient
        # x lies in both spans iff (I - P_u) x = 0 and (I - P_v) x = 0;
        # the stacked kernel handles {0} and R^n uniformly.  The cutoff
        # references the stack's natural size 2 so that intersecting the
        # full space with itself survives rounding.
        eye = np.eye(n)
        stacked = np.vstack([eye - _proj(self), eye - _proj(other)])
        return Subspace(linalg.null_space(stacked, tol=tol, scale=2.0),
                        check=False)

    def sum(self, other: "Subspace", tol: Tolerance | None = None) -> "Subspace":
        """Span of the union of the two bases."""
        require_same_ambient(self, other)
        return Subspace(
            linalg.column_span(np.hstack([self._basis, other._basis]), tol=tol),
            check=False)

    def direct_sum(self, other: "Subspace",
                   tol: Tolerance | None = None) -> "Subspace":
        """Sum of two subspaces that are required to be orthogonal."""
        require_same_ambient(self, other)
        tol = tol or DEFAULT_TOL
        overlap = orthogonality_residual(self, other)
        if overlap > tol.eq_abs:
            raise ValueError(
                f"subspaces are not orthogonal (overlap {overlap:.3e}); "
                f"use sum() for oblique sums")
        return self.sum(other, tol=tol)

    # -- comparisons ---------------------------------------------------------

    def equals(self, other: "Subspace", tol: float | None = None) -> bool:
        """Basis-independent equality via projector distance."""
        require_same_ambient(self, other)
        threshold = DEFAULT_TOL.eq_abs if tol is None else tol
        return projector_distance(self, other) <= threshold

    def contains(self, other: "Subspace", tol: float | None = None) -> bool:
        """True when every basis vector of ``other`` projects onto itself."""
        require_same_ambient(self, other)
        threshold = DEFAULT_TOL.eq_abs if tol is None else tol
        return containment_residual(self, other) <= threshold


def _proj(u: Subspace) -> np.ndarray:
    return u.basis @ u.basis.T


def projector_distance(u: Subspace, v: Subspace) -> float:
    """Frobenius distance between the orthogonal projectors of two subspaces."""
    require_same_ambient(u, v)
    return float(np.linalg.norm(_proj(u) - _proj(v)))


def containment_residual(u: Subspace, v: Subspace) -> float:
    """Worst column norm of P_u q - q over basis vectors q of ``v``.

    Zero (up to rounding) exactly when v is contained in u.
    """
    require_same_ambient(u, v)
    if v.dim == 0:
        return 0.0
    defect = _proj(u) @ v.basis - v.basis
    return float(np.max(np.linalg.norm(defect, axis=0)))


def orthogonality_residual(u: Subspace, v: Subspace) -> float:
    """Largest absolute inner product between basis vectors of the operands."""
    require_same_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        return 0.0
    return float(np.max(np.abs(u.basis.T @ v.basis)))


def principal_angles(u: Subspace, v: Subspace) -> np.ndarray:
    """Principal angles between two nonzero subspaces, sorted nondecreasing."""
    require_same_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        raise ValueError("principal angles are undefined for the zero subspace")
    return linalg.principal_angles(u.basis, v.basis)
