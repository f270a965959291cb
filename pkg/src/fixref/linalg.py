"""Dense real matrix kernels: orthonormalization, rank decisions, null spaces.

Everything in this module operates on plain float64 ndarrays and is pure:
no function mutates its arguments or keeps hidden state, so all operations
are safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds shared across the toolkit.

    rank_rel: relative cutoff for rank decisions.  A singular value below
        ``rank_rel * sigma_max * max(rows, cols)`` counts as zero.  The
        default is machine-epsilon scale with headroom (64 eps): forming a
        product of several reflectors already perturbs T - I by a few eps
        per factor, and rank decisions must stay stable under that noise.
    eq_abs: absolute threshold for subspace / operator equality tests.
    """

    rank_rel: float = 64.0 * _EPS
    eq_abs: float = 1e-8

    def __post_init__(self) -> None:
        if not self.rank_rel > 0.0:
            raise ValueError(f"rank_rel must be positive, got {self.rank_rel}")
        if not self.eq_abs > 0.0:
            raise ValueError(f"eq_abs must be positive, got {self.eq_abs}")


DEFAULT_TOL = Tolerance()


def check_finite(a: np.ndarray, what: str = "matrix") -> np.ndarray:
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{what} contains non-finite entries")
    return a


def as_matrix(a, what: str = "matrix") -> np.ndarray:
    """Coerce to a finite float64 2-D array."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"{what} must be 2-D, got shape {m.shape}")
    return check_finite(m, what)


def _rank(s: np.ndarray, shape: tuple[int, int], tol: Tolerance,
          scale: float | None = None) -> int:
    # standard numerical-rank convention: cutoff relative to the largest
    # singular value, scaled by the larger matrix dimension.  ``scale``
    # raises the reference level so that an all-noise matrix (e.g. the
    # image of a subspace that a projector annihilates) counts as rank 0.
    if s.size == 0:
        return 0
    reference = float(s[0]) if scale is None else max(float(s[0]), scale)
    cutoff = tol.rank_rel * reference * max(shape)
    return int(np.count_nonzero(s > cutoff))


def matrix_rank(a, tol: Tolerance | None = None) -> int:
    """Numerical rank of ``a`` under the shared cutoff convention."""
    tol = tol or DEFAULT_TOL
    m = as_matrix(a)
    if 0 in m.shape:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return _rank(s, m.shape, tol)


def column_span(a, tol: Tolerance | None = None,
                scale: float | None = None) -> np.ndarray:
    """Orthonormal basis (n x r) of the span of the columns of ``a`` (n x m).

    r is the numerical rank of ``a``; r = 0 yields an n x 0 matrix.  When
    the columns arose from applying a map of known size, pass that size as
    ``scale`` so a vanishing image rounds down to the zero span instead of
    promoting rounding noise to rank.
    """
    tol = tol or DEFAULT_TOL
    m = as_matrix(a)
    n, k = m.shape
    if n == 0 or k == 0:
        return np.zeros((n, 0))
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    r = _rank(s, m.shape, tol, scale)
    return np.ascontiguousarray(u[:, :r])


def orthonormal_basis(vectors, ambient: int | None = None,
                      tol: Tolerance | None = None) -> np.ndarray:
    """Orthonormal basis of the span of ``vectors`` as an n x k column matrix.

    ``vectors`` is a sequence of equal-length 1-D arrays; k is their numerical
    rank.  An empty sequence is allowed and yields an ``ambient`` x 0 matrix,
    in which case ``ambient`` must be given.
    """
    vecs = [np.asarray(v, dtype=np.float64) for v in vectors]
    if not vecs:
        if ambient is None:
            raise ValueError("ambient dimension required for an empty span")
        if ambient < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {ambient}")
        return np.zeros((ambient, 0))
    n = vecs[0].shape[0] if vecs[0].ndim == 1 else -1
    for v in vecs:
        if v.ndim != 1 or v.shape[0] != n:
            raise ValueError("all vectors must be 1-D and of equal length")
        check_finite(v, "vector")
    if ambient is not None and ambient != n:
        raise ValueError(f"vectors have length {n}, expected ambient {ambient}")
    if n < 1:
        raise ValueError("vectors must have length >= 1")
    return column_span(np.column_stack(vecs), tol)


def null_space(a, tol: Tolerance | None = None,
               scale: float | None = None) -> np.ndarray:
    """Orthonormal basis of the kernel of ``a`` (cols x (cols - rank)).

    Uses a full singular value decomposition; a column q of the result
    satisfies ``‖a @ q‖ <= rank cutoff``.  Pass the natural size of ``a``
    as ``scale`` when ``a`` may consist of rounding noise only (such as
    T - I for T numerically equal to the identity), so that the kernel
    correctly comes out as everything.
    """
    tol = tol or DEFAULT_TOL
    m = as_matrix(a)
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0))
    if rows == 0:
        return np.eye(cols)
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    r = _rank(s, m.shape, tol, scale)
    return np.ascontiguousarray(vh[r:].T)


def principal_angles(qu, qv) -> np.ndarray:
    """Principal angles in [0, pi/2] between the column spans of two
    orthonormal basis matrices, sorted nondecreasing.

    The cosines are the singular values of ``qu.T @ qv`` clamped to [0, 1];
    the result has length min(k_u, k_v).  Both spans must be nonzero.
    """
    qu = as_matrix(qu, "first basis")
    qv = as_matrix(qv, "second basis")
    if qu.shape[0] != qv.shape[0]:
        raise ValueError(
            f"ambient dimensions differ: {qu.shape[0]} != {qv.shape[0]}")
    if qu.shape[1] == 0 or qv.shape[1] == 0:
        raise ValueError("principal angles are undefined for the zero subspace")
    cosines = np.linalg.svd(qu.T @ qv, compute_uv=False)
    return np.arccos(np.clip(cosines, 0.0, 1.0))
