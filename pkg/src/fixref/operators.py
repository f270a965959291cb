"""Projectors, reflectors, their compositions, and fixed-point subspaces.

Composition convention used everywhere (library, CLI, service): a chain is a
list in application order, so ``compose([a, b, c])`` is the matrix ``c @ b @ a``
("a acts first").  The convention matters: the fixed-point set of a reflector
composition depends on the order of the factors.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import Tolerance
from .subspace import Subspace, require_same_ambient

# cosines closer to 1 than this are treated as a zero principal angle
_COS_ONE = 1.0 - 1e-12


def projector(u: Subspace) -> np.ndarray:
    """Orthogonal projector onto ``u``: Q Qᵀ for an orthonormal basis Q."""
    q = u.basis
    return q @ q.T


def reflector(u: Subspace) -> np.ndarray:
    """Reflector through ``u``: 2P - I, a symmetric orthogonal involution.

    Equals P_u - P_{u⊥}, and its fixed-point set is exactly ``u``.  For the
    zero subspace this is -I.
    """
    return 2.0 * projector(u) - np.eye(u.ambient)


def hyperplane_reflector(normal) -> np.ndarray:
    """Reflector across the hyperplane orthogonal to ``normal``.

    I - 2 n nᵀ / ‖n‖²; identical to ``reflector`` of the complement of the
    line spanned by ``normal``.
    """
    v = np.asarray(normal, dtype=np.float64).reshape(-1)
    linalg.check_finite(v, "normal")
    nrm2 = float(v @ v)
    if nrm2 == 0.0:
        raise ValueError("normal vector must be nonzero")
    return np.eye(v.size) - (2.0 / nrm2) * np.outer(v, v)


def compose(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Matrix of a nonempty operator chain, first list element applied first."""
    if len(factors) == 0:
        raise ValueError("cannot compose an empty operator chain")
    mats = [linalg.as_matrix(f, "chain factor") for f in factors]
    n = mats[0].shape[0]
    for m in mats:
        if m.shape != (n, n):
            raise ValueError(
                f"chain factors must all be {n} x {n}, got {m.shape}")
    out = mats[0]
    for m in mats[1:]:
        out = m @ out
    return out


def reflector_chain(subspaces: Sequence[Subspace]) -> list[np.ndarray]:
    """Reflectors of the given subspaces, in the same (application) order."""
    spaces = list(subspaces)
    if not spaces:
        return []
    for v in spaces[1:]:
        require_same_ambient(spaces[0], v)
    return [reflector(u) for u in spaces]


@dataclass(frozen=True)
class FixedSetReport:
    """Fixed-point subspace of a linear map plus numerical diagnostics."""

    subspace: Subspace
    residuals: np.ndarray        # ‖T q - q‖ per basis vector q
    operator_norm: float         # largest singular value of T

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def worst_residual(self) -> float:
        return float(self.residuals.max()) if self.residuals.size else 0.0

    @property
    def nonexpansive(self) -> bool:
        return self.operator_norm <= 1.0 + 1e-12


def fixed_subspace(t, tol: Tolerance | None = None) -> FixedSetReport:
    """Fixed-point subspace {x : Tx = x} of a square matrix.

    Computed as the kernel of T - I under the rank cutoff.  Nonexpansiveness
    is reported through ``operator_norm``, not enforced: mildly expansive maps
    (e.g. projector polynomials) still have a meaningful fixed subspace.
    """
    m = linalg.as_matrix(t, "operator")
    n, cols = m.shape
    if n != cols:
        raise ValueError(f"operator must be square, got {m.shape}")
    opnorm = float(np.linalg.svd(m, compute_uv=False)[0]) if n else 0.0
    # the kernel cutoff references ‖T‖ + 1 >= ‖T - I‖ so that T == identity
    # (where T - I is pure rounding noise) yields the full space
    q = linalg.null_space(m - np.eye(n), tol=tol, scale=opnorm + 1.0)
    residuals = np.linalg.norm(m @ q - q, axis=0)
    return FixedSetReport(Subspace(q, check=False), residuals, opnorm)


def map_subspace(m, u: Subspace, tol: Tolerance | None = None) -> Subspace:
    """Image of a subspace under a linear map, re-orthonormalized.

    For orthogonal ``m`` the re-orthonormalization is only a rounding
    safeguard; for general maps it also absorbs any rank collapse.
    """
    mat = linalg.as_matrix(m, "map")
    if mat.shape[1] != u.ambient:
        raise ValueError(
            f"map has {mat.shape[1]} columns, subspace lives in R^{u.ambient}")
    # rank cutoff relative to the map's size: an annihilated subspace must
    # come back as {0}, not as the span of rounding noise
    scale = float(np.linalg.norm(mat))
    return Subspace(linalg.column_span(mat @ u.basis, tol=tol, scale=scale),
                    check=False)


def expanded_three_reflector(u: Subspace, v: Subspace, w: Subspace) -> np.ndarray:
    """Projector polynomial M with ``reflector(w) @ reflector(v) @ reflector(u)
    == 2M - I``.

    M = 4 P_w P_v P_u - 2 (P_w P_v + P_w P_u + P_v P_u) + P_w + P_v + P_u.
    Its fixed subspace equals that of the three-reflector product, and its
    range bounds that fixed set by u + v + w.  M itself is generally not
    nonexpansive.
    """
    require_same_ambient(u, v)
    require_same_ambient(u, w)
    pu, pv, pw = projector(u), projector(v), projector(w)
    return (4.0 * pw @ pv @ pu
            - 2.0 * (pw @ pv + pw @ pu + pv @ pu)
            + pw + pv + pu)


def douglas_rachford_operator(u1: Subspace, u2: Subspace) -> np.ndarray:
    """The averaged operator T = (I + R_{u2} R_{u1}) / 2.

    Fix T coincides with the fixed set of the two-reflector product
    R_{u2} R_{u1}.
    """
    require_same_ambient(u1, u2)
    n = u1.ambient
    return 0.5 * (np.eye(n) + reflector(u2) @ reflector(u1))


@dataclass(frozen=True)
class DRTrace:
    """Trace of a Douglas-Rachford run on two subspaces.

    ``iterates`` holds the governing sequence x_k, ``shadows`` the projected
    sequence P_{u1} x_k, and ``errors`` the distance of each shadow to the
    limit P_{u1 ∩ u2} x_0.  ``predicted_rate`` is the cosine of the smallest
    nonzero principal angle between the subspaces (None when every angle is
    zero or one subspace is trivial).
    """

    iterates: np.ndarray         # (steps + 1, n)
    shadows: np.ndarray          # (steps + 1, n)
    errors: np.ndarray           # (steps + 1,)
    target: np.ndarray           # P_{u1 ∩ u2} x0
    predicted_rate: float | None
    converged: bool

    @property
    def iterations(self) -> int:
        return len(self.errors) - 1

    @property
    def final_error(self) -> float:
        return float(self.errors[-1])


def _friedrichs_rate(u1: Subspace, u2: Subspace) -> float | None:
    if u1.dim == 0 or u2.dim == 0:
        return None
    cosines = np.clip(np.linalg.svd(u1.basis.T @ u2.basis, compute_uv=False),
                      0.0, 1.0)
    nonzero_angle = cosines[cosines < _COS_ONE]
    if nonzero_angle.size == 0:
        return None
    return float(nonzero_angle.max())


def dr_iterate(u1: Subspace, u2: Subspace, x0, max_iter: int = 10000,
               eps: float = 1e-6, tol: Tolerance | None = None) -> DRTrace:
    """Iterate the Douglas-Rachford operator and track the shadow sequence.

    Stops as soon as the shadow error drops to ``eps`` or after ``max_iter``
    applications of T.  The convergence statement is about the shadow
    P_{u1} x_k, not the governing iterate, which is why both are traced.
    """
    require_same_ambient(u1, u2)
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    if not eps > 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    x = np.asarray(x0, dtype=np.float64).reshape(-1)
    if x.size != u1.ambient:
        raise ValueError(
            f"x0 has length {x.size}, expected {u1.ambient}")
    linalg.check_finite(x, "x0")

    t = douglas_rachford_operator(u1, u2)
    p1 = projector(u1)
    target = projector(u1.intersect(u2, tol=tol)) @ x

    iterates, shadows, errors = [], [], []
    converged = False
    for k in range(max_iter + 1):
        shadow = p1 @ x
        err = float(np.linalg.norm(shadow - target))
        iterates.append(x.copy())
        shadows.append(shadow)
        errors.append(err)
        if err <= eps:
            converged = True
            break
        if k == max_iter:
            break
        x = t @ x

    return DRTrace(
        iterates=np.array(iterates),
        shadows=np.array(shadows),
        errors=np.array(errors),
        target=target,
        predicted_rate=_friedrichs_rate(u1, u2),
        converged=converged,
    )
