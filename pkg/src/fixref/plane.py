"""Exact calculus for the planar isometry group O(2).

Reflections are identified by their axis angle in [0, pi) and rotations by
their angle in [0, 2*pi); composing them never leaves these two families, and
the composite's angle follows four closed-form rules.  Compositions of m line
reflections collapse to a single alternating angle sum, which classifies the
result as one reflection (m odd) or one rotation (m even).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .subspace import Subspace

ROTATION = "rotation"
REFLECTION = "reflection"

# values this close to the end of the fundamental domain wrap to 0 when
# canonicalizing; keeps alternating sums that land on the period stable
ANGLE_SNAP = 1e-9

_TWO_PI = 2.0 * math.pi


def canonical_angle(angle: float, period: float, snap: float = ANGLE_SNAP) -> float:
    """Reduce an angle into [0, period), snapping near-period values to 0."""
    if not math.isfinite(angle):
        raise ValueError("angle must be finite")
    a = math.fmod(angle, period)
    if a < 0.0:
        a += period
    if a >= period - snap:
        a = 0.0
    return abs(a)  # normalizes -0.0


@dataclass(frozen=True)
class PlaneIsometry:
    """A canonical element of O(2).

    ``Rotation`` angles live in [0, 2*pi), ``Reflection`` axis angles in
    [0, pi).  Build instances through :func:`rotation` / :func:`reflection`,
    which canonicalize arbitrary angles.
    """

    kind: Literal["rotation", "reflection"]
    angle: float

    def __post_init__(self) -> None:
        if self.kind not in (ROTATION, REFLECTION):
            raise ValueError(f"unknown isometry kind {self.kind!r}")
        period = _TWO_PI if self.kind == ROTATION else math.pi
        if not (math.isfinite(self.angle) and 0.0 <= self.angle < period):
            raise ValueError(
                f"{self.kind} angle {self.angle!r} is not canonical; "
                f"construct via rotation()/reflection()")

    @property
    def is_rotation(self) -> bool:
        return self.kind == ROTATION


def rotation(theta: float) -> PlaneIsometry:
    """Counterclockwise rotation by ``theta``, canonicalized into [0, 2*pi)."""
    return PlaneIsometry(ROTATION, canonical_angle(theta, _TWO_PI))


def reflection(alpha: float) -> PlaneIsometry:
    """Reflection across the line at axis angle ``alpha``, canonical in [0, pi)."""
    return PlaneIsometry(REFLECTION, canonical_angle(alpha, math.pi))


def rot_matrix(alpha: float) -> np.ndarray:
    """2x2 counterclockwise rotation matrix (orthogonal, det +1)."""
    if not math.isfinite(alpha):
        raise ValueError("angle must be finite")
    c, s = math.cos(alpha), math.sin(alpha)
    return np.array([[c, -s], [s, c]])


def refl_matrix(alpha: float) -> np.ndarray:
    """2x2 reflection matrix across the line at axis angle ``alpha``.

    [[cos 2a, sin 2a], [sin 2a, -cos 2a]]: symmetric, orthogonal, det -1.
    These are exactly the hyperplane reflectors of the plane.
    """
    if not math.isfinite(alpha):
        raise ValueError("angle must be finite")
    c, s = math.cos(2.0 * alpha), math.sin(2.0 * alpha)
    return np.array([[c, s], [s, -c]])


def iso_matrix(iso: PlaneIsometry) -> np.ndarray:
    """The 2x2 matrix of a canonical planar isometry."""
    if iso.kind == ROTATION:
        return rot_matrix(iso.angle)
    return refl_matrix(iso.angle)


def line_subspace(alpha: float) -> Subspace:
    """The line R (cos a, sin a) as a Subspace; periodic in pi."""
    if not math.isfinite(alpha):
        raise ValueError("angle must be finite")
    return Subspace(np.array([[math.cos(alpha)], [math.sin(alpha)]]),
                    check=False)


def compose_symbolic(second: PlaneIsometry, first: PlaneIsometry) -> PlaneIsometry:
    """Compose two planar isometries exactly (``first`` is applied first).

    One closed-form rule per kind pairing; the result agrees with 2x2 matrix
    multiplication and is returned canonicalized.
    """
    a, b = first.angle, second.angle
    if first.kind == ROTATION and second.kind == ROTATION:
        return rotation(a + b)
    if first.kind == REFLECTION and second.kind == REFLECTION:
        return rotation(2.0 * (b - a))
    if first.kind == REFLECTION and second.kind == ROTATION:
        return reflection(a + 0.5 * b)
    return reflection(b - 0.5 * a)  # rotation first, then reflection


def compose_reflection_angles(angles) -> tuple[PlaneIsometry, float]:
    """Classify the composition of line reflections at the given axis angles.

    ``angles`` is nonempty and in application order (first angle acts first).
    Returns the canonical composite together with the raw alternating sum
    beta = a_m - a_{m-1} + a_{m-2} - ... (the first angle enters with sign +
    exactly when m is odd): the composite is the reflection across the line
    at beta for odd m and the rotation by 2*beta for even m.
    """
    angle_list = [float(a) for a in angles]
    if not angle_list:
        raise ValueError("need at least one reflection angle")
    m = len(angle_list)
    beta = 0.0
    for i, a in enumerate(angle_list, start=1):
        if not math.isfinite(a):
            raise ValueError("angles must be finite")
        beta += a if (m - i) % 2 == 0 else -a
    iso = reflection(beta) if m % 2 else rotation(2.0 * beta)
    return iso, beta


def fixed_set(iso: PlaneIsometry, angle_tol: float = 1e-9) -> Subspace:
    """Fixed-point subspace of a canonical planar isometry.

    A reflection fixes its axis line.  A rotation fixes the whole plane when
    its angle is a multiple of 2*pi (within ``angle_tol``) and only the origin
    otherwise.
    """
    if iso.kind == REFLECTION:
        return line_subspace(iso.angle)
    theta = iso.angle
    if theta <= angle_tol or _TWO_PI - theta <= angle_tol:
        return Subspace.full(2)
    return Subspace.zero(2)


class PerturbedTriple(NamedTuple):
    angles: tuple[float, float, float]
    fixed_angle: float


def perturbed_triple(gamma: float, eps1: float, eps2: float,
                     eps3: float) -> PerturbedTriple:
    """Three nearly symmetric axis angles around ``gamma`` and the axis angle
    fixed by their composed reflections.

    The angles are gamma + pi/6 + eps1, gamma + eps2, gamma - pi/6 + eps3;
    composing the three reflections (in that order) gives the reflection
    across the line at gamma + (eps1 - eps2 + eps3).  With all perturbations
    zero the fixed line is the middle one, even though the three lines only
    meet at the origin.
    """
    for value in (gamma, eps1, eps2, eps3):
        if not math.isfinite(value):
            raise ValueError("inputs must be finite")
    third = math.pi / 6.0
    a1 = gamma + third + eps1
    a2 = gamma + eps2
    a3 = gamma - third + eps3
    return PerturbedTriple((a1, a2, a3), gamma + (eps1 - eps2 + eps3))
