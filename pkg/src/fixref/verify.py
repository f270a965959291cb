"""Randomized, seeded checks of the composition laws.

Each check turns one named result into residual assertions over a concrete
instance and returns a :class:`CheckReport`.  A check passes exactly when its
worst residual is at or below its tolerance; there are no hidden pass
conditions.  Checks are pure and deterministic per instance, so they can run
in any order or concurrently.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import linalg
from .subspace import (
    Subspace,
    containment_residual,
    orthogonality_residual,
    projector_distance,
    require_same_ambient,
)
from .operators import (
    compose,
    expanded_three_reflector,
    fixed_subspace,
    hyperplane_reflector,
    map_subspace,
    projector,
    reflector,
    reflector_chain,
)

CHECK_TOL = 1e-8


def default_check_tol(ambient: int) -> float:
    """1e-8, scaled by sqrt(n) once repeated products in R^n grow long enough
    for rounding to accumulate."""
    return CHECK_TOL * math.sqrt(ambient) if ambient > 16 else CHECK_TOL


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one check on one instance.

    ``details`` lists every assertion's residual; ``passed`` is equivalent to
    ``worst_residual <= tolerance``.
    """

    check_name: str
    instance: str
    passed: bool
    worst_residual: float
    tolerance: float
    details: tuple[tuple[str, float], ...]


def _report(name: str, instance: str, tol: float,
            details: list[tuple[str, float]]) -> CheckReport:
    worst = max((r for _, r in details), default=0.0)
    return CheckReport(name, instance, worst <= tol, float(worst),
                       float(tol), tuple(details))


def _mat_residual(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


def _resolve_tol(tol: float | None, ambient: int) -> float:
    return default_check_tol(ambient) if tol is None else float(tol)


def _describe(subspaces: Sequence[Subspace]) -> str:
    dims = ",".join(str(u.dim) for u in subspaces)
    return f"n={subspaces[0].ambient} dims=({dims})"


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------

def random_subspace(n: int, k: int, seed) -> Subspace:
    """Rotation-invariant random k-dimensional subspace of R^n.

    Orthonormalizes standard-normal columns; deterministic per seed (any
    value acceptable to ``numpy.random.default_rng``).
    """
    if not 0 <= k <= n:
        raise ValueError(f"dimension {k} out of range for R^{n}")
    if k == 0:
        return Subspace.zero(n)
    rng = np.random.default_rng(seed)
    q = linalg.column_span(rng.standard_normal((n, k)))
    while q.shape[1] != k:  # a Gaussian draw is rank-deficient with probability 0
        q = linalg.column_span(rng.standard_normal((n, k)))
    return Subspace(q, check=False)


def random_orthogonal_chain(n: int, dims: Sequence[int], seed) -> list[Subspace]:
    """Pairwise-orthogonal subspaces sliced out of one random orthonormal
    basis of R^n; requires sum(dims) <= n."""
    total = sum(dims)
    if total > n:
        raise ValueError(f"dimensions {tuple(dims)} do not fit in R^{n}")
    basis = random_subspace(n, n, seed).basis
    out, offset = [], 0
    for k in dims:
        if k < 0:
            raise ValueError("dimensions must be nonnegative")
        out.append(Subspace(basis[:, offset:offset + k], check=False))
        offset += k
    return out


@dataclass(frozen=True)
class RandomSpec:
    """Instance generator settings for :func:`run_suite`."""

    ambient: int
    dims: tuple[int, ...]
    seed: int = 0
    trials: int = 1

    def __post_init__(self) -> None:
        if self.ambient < 1:
            raise ValueError("ambient must be >= 1")
        if not self.dims:
            raise ValueError("dims must be nonempty")
        for k in self.dims:
            if not 0 <= k <= self.ambient:
                raise ValueError(
                    f"dimension {k} out of range for R^{self.ambient}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


# ---------------------------------------------------------------------------
# the checks
# ---------------------------------------------------------------------------

def check_fact_two_reflectors(u1: Subspace, u2: Subspace,
                              tol: float | None = None) -> CheckReport:
    """Fixed set of a two-reflector product: (u1 ∩ u2) ⊕ (u1⊥ ∩ u2⊥), and the
    projection of that fixed set onto u1 recovers u1 ∩ u2."""
    require_same_ambient(u1, u2)
    tol = _resolve_tol(tol, u1.ambient)
    t = compose([reflector(u1), reflector(u2)])
    fix = fixed_subspace(t).subspace
    both = u1.intersect(u2)
    expected = both.direct_sum(u1.complement().intersect(u2.complement()))
    shadow = map_subspace(projector(u1), fix)
    details = [
        ("fixed_set_is_direct_sum", projector_distance(fix, expected)),
        ("shadow_of_fixed_set_is_intersection", projector_distance(shadow, both)),
    ]
    return _report("fact_two_reflectors", _describe([u1, u2]), tol, details)


def check_lemma_easy(u: Subspace, tol: float | None = None) -> CheckReport:
    """Reflector vs complement: both products with the complement reflector
    give -I, negation swaps to the complement, and the fixed sets match."""
    tol = _resolve_tol(tol, u.ambient)
    uc = u.complement()
    r, rc = reflector(u), reflector(uc)
    minus_eye = -np.eye(u.ambient)
    details = [
        ("complement_then_reflect_is_minus_id", _mat_residual(rc @ r, minus_eye)),
        ("reflect_then_complement_is_minus_id", _mat_residual(r @ rc, minus_eye)),
        ("negated_reflector_is_complement_reflector", _mat_residual(-r, rc)),
        ("reflector_after_negation_is_complement_reflector",
         _mat_residual(r @ minus_eye, rc)),
        ("fixed_set_of_negated_reflector",
         projector_distance(fixed_subspace(-r).subspace, uc)),
        ("fixed_set_of_complement_reflector",
         projector_distance(fixed_subspace(rc).subspace, uc)),
    ]
    return _report("lemma_easy", _describe([u]), tol, details)


def check_prop_triple_perp(u: Subspace, v: Subspace,
                           tol: float | None = None) -> CheckReport:
    """A reflector pair u, u⊥ inside a triple collapses it: all four orders
    equal the reflector of v⊥ and fix exactly v⊥."""
    require_same_ambient(u, v)
    tol = _resolve_tol(tol, u.ambient)
    uc, vc = u.complement(), v.complement()
    r, rc, rv = reflector(u), reflector(uc), reflector(v)
    target = reflector(vc)
    products = {
        "v_after_uperp_u": rv @ rc @ r,
        "v_after_u_uperp": rv @ r @ rc,
        "uperp_u_after_v": rc @ r @ rv,
        "u_uperp_after_v": r @ rc @ rv,
    }
    details: list[tuple[str, float]] = []
    for label, mat in products.items():
        details.append((f"{label}_equals_vperp_reflector",
                        _mat_residual(mat, target)))
        details.append((f"{label}_fixes_vperp",
                        projector_distance(fixed_subspace(mat).subspace, vc)))
    return _report("prop_triple_perp", _describe([u, v]), tol, details)


def check_prop_conjugate(u: Subspace, v: Subspace,
                         tol: float | None = None) -> CheckReport:
    """Sandwiching the reflector of v between u and u⊥ reflectors fixes the
    image of v⊥ under the reflector of u, in either sandwich order."""
    require_same_ambient(u, v)
    tol = _resolve_tol(tol, u.ambient)
    r, rc, rv = reflector(u), reflector(u.complement()), reflector(v)
    fix_a = fixed_subspace(rc @ rv @ r).subspace
    fix_b = fixed_subspace(r @ rv @ rc).subspace
    image = map_subspace(r, v.complement())
    details = [
        ("both_sandwich_orders_agree", projector_distance(fix_a, fix_b)),
        ("uperp_v_u_fixes_image", projector_distance(fix_a, image)),
        ("u_v_uperp_fixes_image", projector_distance(fix_b, image)),
    ]
    return _report("prop_conjugate", _describe([u, v]), tol, details)


def check_cyclic_shift(subspaces: Sequence[Subspace],
                       tol: float | None = None) -> CheckReport:
    """Cyclically shifting a reflector chain moves its fixed set by the
    skipped prefix: Fix(R_m..R_1) is the image under R_m..R_{k+1} of the fixed
    set of the chain rotated left by k."""
    spaces = list(subspaces)
    if not spaces:
        raise ValueError("need at least one subspace")
    tol = _resolve_tol(tol, spaces[0].ambient)
    refls = reflector_chain(spaces)
    fix = fixed_subspace(compose(refls)).subspace
    details: list[tuple[str, float]] = []
    if len(refls) == 1:
        details.append(("single_reflector_fixes_its_subspace",
                        projector_distance(fix, spaces[0])))
    for k in range(1, len(refls)):
        shifted = refls[k:] + refls[:k]
        inner_fix = fixed_subspace(compose(shifted)).subspace
        image = map_subspace(compose(refls[k:]), inner_fix)
        details.append((f"shift_{k}_image_matches",
                        projector_distance(fix, image)))
    return _report("cyclic_shift", _describe(spaces), tol, details)


def check_reversal(subspaces: Sequence[Subspace],
                   tol: float | None = None) -> CheckReport:
    """Reversing a reflector chain preserves the fixed set; equivalently the
    product and its transpose have the same fixed set."""
    spaces = list(subspaces)
    if not spaces:
        raise ValueError("need at least one subspace")
    tol = _resolve_tol(tol, spaces[0].ambient)
    refls = reflector_chain(spaces)
    forward = compose(refls)
    backward = compose(list(reversed(refls)))
    fix_fwd = fixed_subspace(forward).subspace
    details = [
        ("reversed_chain_same_fixed_set",
         projector_distance(fix_fwd, fixed_subspace(backward).subspace)),
        ("transpose_same_fixed_set",
         projector_distance(fix_fwd, fixed_subspace(forward.T).subspace)),
    ]
    return _report("reversal", _describe(spaces), tol, details)


def check_odd_sum_bound(subspaces: Sequence[Subspace],
                        tol: float | None = None) -> CheckReport:
    """For an odd chain the fixed set is contained in the sum of the
    subspaces; for a length-3 chain the product additionally matches its
    projector-polynomial expansion 2M - I exactly."""
    spaces = list(subspaces)
    if not spaces:
        raise ValueError("need at least one subspace")
    if len(spaces) % 2 == 0:
        raise ValueError(
            f"the sum bound requires an odd number of subspaces, got "
            f"{len(spaces)}; it fails for even-length chains (two equal "
            f"proper subspaces already fix all of R^n)")
    tol = _resolve_tol(tol, spaces[0].ambient)
    refls = reflector_chain(spaces)
    t = compose(refls)
    fix = fixed_subspace(t).subspace
    total = spaces[0]
    for u in spaces[1:]:
        total = total.sum(u)
    details = [("fixed_set_within_sum", containment_residual(total, fix))]
    if len(spaces) == 3:
        m = expanded_three_reflector(spaces[0], spaces[1], spaces[2])
        eye = np.eye(spaces[0].ambient)
        details.append(("expansion_identity", _mat_residual(t, 2.0 * m - eye)))
        details.append(("expansion_same_fixed_set",
                        projector_distance(fix, fixed_subspace(m).subspace)))
    return _report("odd_sum_bound", _describe(spaces), tol, details)


def check_orthogonal_sharpness(subspaces: Sequence[Subspace],
                               tol: float | None = None) -> CheckReport:
    """For pairwise orthogonal subspaces the sum bound is attained: the chain
    product (odd length) or its negation (even length) fixes exactly the sum."""
    spaces = list(subspaces)
    if not spaces:
        raise ValueError("need at least one subspace")
    tol = _resolve_tol(tol, spaces[0].ambient)
    for i in range(len(spaces)):
        for j in range(i + 1, len(spaces)):
            overlap = orthogonality_residual(spaces[i], spaces[j])
            if overlap > tol:
                raise ValueError(
                    f"subspaces {i} and {j} are not orthogonal "
                    f"(overlap {overlap:.3e})")
    t = compose(reflector_chain(spaces))
    if len(spaces) % 2 == 0:
        t = -t
        label = "negated_even_product_fixes_sum"
    else:
        label = "odd_product_fixes_sum"
    total = spaces[0]
    for u in spaces[1:]:
        total = total.sum(u)
    fix = fixed_subspace(t).subspace
    return _report("orthogonal_sharpness", _describe(spaces), tol,
                   [(label, projector_distance(fix, total))])


def check_parity(normals: Sequence, tol: float | None = None) -> CheckReport:
    """m hyperplane reflectors on R^n: m + n and the fixed-set dimension have
    the same parity (isometry eigenvalues are ±1 or conjugate pairs)."""
    vecs = [np.asarray(v, dtype=np.float64).reshape(-1) for v in normals]
    if not vecs:
        raise ValueError("need at least one normal vector")
    n = vecs[0].size
    refls = [hyperplane_reflector(v) for v in vecs]
    for r in refls:
        if r.shape != (n, n):
            raise ValueError("normal vectors must all have the same length")
    tol = _resolve_tol(tol, n)
    m = len(vecs)
    dim_fix = fixed_subspace(compose(refls)).dim
    residual = float((m + n - dim_fix) % 2)
    return _report("parity", f"n={n} m={m} dim_fix={dim_fix}", tol,
                   [("dimension_parity", residual)])


# ---------------------------------------------------------------------------
# suite runner
# ---------------------------------------------------------------------------

# argument shapes: how many subspaces a check consumes and how they are drawn
_KIND_SINGLE = "single"
_KIND_PAIR = "pair"
_KIND_CHAIN = "chain"
_KIND_ODD_CHAIN = "odd_chain"
_KIND_ORTHO_CHAIN = "orthogonal_chain"
_KIND_NORMALS = "normals"

CHECKS: dict[str, tuple] = {
    "fact_two_reflectors": (check_fact_two_reflectors, _KIND_PAIR),
    "lemma_easy": (check_lemma_easy, _KIND_SINGLE),
    "prop_triple_perp": (check_prop_triple_perp, _KIND_PAIR),
    "prop_conjugate": (check_prop_conjugate, _KIND_PAIR),
    "cyclic_shift": (check_cyclic_shift, _KIND_CHAIN),
    "reversal": (check_reversal, _KIND_CHAIN),
    "odd_sum_bound": (check_odd_sum_bound, _KIND_ODD_CHAIN),
    "orthogonal_sharpness": (check_orthogonal_sharpness, _KIND_ORTHO_CHAIN),
    "parity": (check_parity, _KIND_NORMALS),
}

_CHECK_INDEX = {name: i for i, name in enumerate(CHECKS)}


def _lookup(name: str) -> tuple:
    try:
        return CHECKS[name]
    except KeyError:
        known = ", ".join(sorted(CHECKS))
        raise ValueError(f"unknown check name {name!r}; known checks: {known}") \
            from None


def _random_instance(name: str, spec: RandomSpec, trial: int,
                     tol: float | None) -> CheckReport:
    func, kind = _lookup(name)
    root = np.random.SeedSequence((spec.seed, _CHECK_INDEX[name], trial))
    n, dims = spec.ambient, spec.dims
    suffix = f" seed={spec.seed} trial={trial}"

    if kind == _KIND_SINGLE:
        u = random_subspace(n, dims[0], root.spawn(1)[0])
        report = func(u, tol=tol)
    elif kind == _KIND_PAIR:
        seeds = root.spawn(2)
        u1 = random_subspace(n, dims[0], seeds[0])
        u2 = random_subspace(n, dims[1 % len(dims)], seeds[1])
        report = func(u1, u2, tol=tol)
    elif kind in (_KIND_CHAIN, _KIND_ODD_CHAIN):
        seeds = root.spawn(len(dims))
        chain = [random_subspace(n, k, s) for k, s in zip(dims, seeds)]
        report = func(chain, tol=tol)
    elif kind == _KIND_ORTHO_CHAIN:
        chain = random_orthogonal_chain(n, dims, root.spawn(1)[0])
        report = func(chain, tol=tol)
    else:  # _KIND_NORMALS: one normal per requested subspace
        rng = np.random.default_rng(root.spawn(1)[0])
        normals = [rng.standard_normal(n) for _ in dims]
        report = func(normals, tol=tol)

    return CheckReport(report.check_name, report.instance + suffix,
                       report.passed, report.worst_residual,
                       report.tolerance, report.details)


def run_suite(spec: RandomSpec, checks: Sequence[str],
              tol: float | None = None) -> list[CheckReport]:
    """Run the named checks on seeded random instances.

    Runs ``spec.trials`` instances per check, deterministically derived from
    ``spec.seed``; report order follows the request order.  Pair checks use
    the first two entries of ``spec.dims``, chain checks use all of them (the
    chain length is ``len(dims)``), and the parity check draws one random
    normal vector per entry.
    """
    for name in checks:
        _lookup(name)
    reports = []
    for name in checks:
        for trial in range(spec.trials):
            reports.append(_random_instance(name, spec, trial, tol))
    return reports


def run_named_checks(named_subspaces: Sequence[tuple[str, Subspace]],
                     checks: Sequence[str],
                     tol: float | None = None) -> list[CheckReport]:
    """Run the named checks against explicitly given subspaces.

    Single-subspace checks use the first entry, pair checks the first two,
    chain checks all of them in the given order.  The parity check requires
    every subspace to be a hyperplane and reflects across each of them.
    """
    for name in checks:
        _lookup(name)
    entries = list(named_subspaces)
    if not entries:
        raise ValueError("need at least one subspace")
    names = [nm for nm, _ in entries]
    spaces = [u for _, u in entries]

    reports = []
    for check in checks:
        func, kind = _lookup(check)
        if kind == _KIND_SINGLE:
            report, used = func(spaces[0], tol=tol), names[:1]
        elif kind == _KIND_PAIR:
            if len(spaces) < 2:
                raise ValueError(f"check {check!r} needs two subspaces")
            report, used = func(spaces[0], spaces[1], tol=tol), names[:2]
        elif kind == _KIND_NORMALS:
            normals = []
            for nm, u in entries:
                if u.dim != u.ambient - 1:
                    raise ValueError(
                        f"parity needs hyperplanes; {nm!r} has dimension "
                        f"{u.dim} in R^{u.ambient}")
                normals.append(u.complement().basis[:, 0])
            report, used = func(normals, tol=tol), names
        else:
            report, used = func(spaces, tol=tol), names
        reports.append(CheckReport(
            report.check_name, f"[{','.join(used)}] " + report.instance,
            report.passed, report.worst_residual, report.tolerance,
            report.details))
    return reports
