import math

import numpy as np
import pytest

from fixref.operators import compose, fixed_subspace
from fixref.plane import (
    PlaneIsometry,
    canonical_angle,
    compose_reflection_angles,
    compose_symbolic,
    fixed_set,
    iso_matrix,
    line_subspace,
    perturbed_triple,
    refl_matrix,
    reflection,
    rot_matrix,
    rotation,
)
from fixref.subspace import Subspace, projector_distance

PI = math.pi
SQRT3 = math.sqrt(3.0)


def test_refl_matrix_axes():
    np.testing.assert_allclose(refl_matrix(0.0), np.diag([1.0, -1.0]),
                               atol=1e-15)
    np.testing.assert_allclose(refl_matrix(PI / 2), np.diag([-1.0, 1.0]),
                               atol=1e-15)


def test_refl_matrix_is_the_line_reflector():
    from fixref.operators import reflector
    rng = np.random.default_rng(2)
    for alpha in rng.uniform(-10, 10, size=20):
        np.testing.assert_allclose(refl_matrix(alpha),
                                   reflector(line_subspace(alpha)),
                                   atol=1e-12)


def test_rot_matrix_examples():
    np.testing.assert_allclose(rot_matrix(0.0), np.eye(2))
    np.testing.assert_allclose(rot_matrix(PI), -np.eye(2), atol=1e-15)
    rng = np.random.default_rng(3)
    for a, b in rng.uniform(-7, 7, size=(20, 2)):
        np.testing.assert_allclose(rot_matrix(a) @ rot_matrix(b),
                                   rot_matrix(a + b), atol=1e-12)


def test_line_subspace_examples():
    assert line_subspace(0.0).equals(Subspace.line([1.0, 0.0]), 1e-12)
    assert line_subspace(PI / 4).equals(Subspace.line([1.0, 1.0]), 1e-12)
    for alpha in (0.3, 1.1, 2.9):
        assert line_subspace(alpha).equals(line_subspace(alpha + PI), 1e-12)


def test_canonicalization_and_periods():
    assert rotation(2 * PI).angle == 0.0
    assert rotation(-0.5).angle == pytest.approx(2 * PI - 0.5)
    assert reflection(PI).angle == 0.0
    assert reflection(PI - 1e-12).angle == 0.0  # snap at the boundary
    assert reflection(-0.25).angle == pytest.approx(PI - 0.25)
    # period laws on the matrices
    np.testing.assert_allclose(refl_matrix(0.7), refl_matrix(0.7 + PI),
                               atol=1e-12)
    np.testing.assert_allclose(rot_matrix(0.7), rot_matrix(0.7 + 2 * PI),
                               atol=1e-12)
    with pytest.raises(ValueError):
        canonical_angle(math.inf, PI)
    with pytest.raises(ValueError):
        PlaneIsometry("rotation", -0.1)  # not canonical
    with pytest.raises(ValueError):
        PlaneIsometry("glide", 0.0)


def test_compose_symbolic_reflections_give_rotation():
    out = compose_symbolic(reflection(PI / 2), reflection(0.0))
    assert out == rotation(PI)
    np.testing.assert_allclose(iso_matrix(out), -np.eye(2), atol=1e-15)


def test_compose_symbolic_inverse_rotations_cancel():
    theta = 1.234
    assert compose_symbolic(rotation(theta), rotation(2 * PI - theta)) \
        == rotation(0.0)


@pytest.mark.parametrize("make_first,make_second", [
    (rotation, rotation), (reflection, reflection),
    (reflection, rotation), (rotation, reflection),
])
def test_compose_symbolic_matches_matrix_product(make_first, make_second):
    rng = np.random.default_rng(11)
    for a, b in rng.uniform(-8, 8, size=(100, 2)):
        first, second = make_first(a), make_second(b)
        out = compose_symbolic(second, first)
        np.testing.assert_allclose(iso_matrix(out),
                                   iso_matrix(second) @ iso_matrix(first),
                                   atol=1e-12)


def test_compose_reflection_angles_examples():
    iso, beta = compose_reflection_angles([0.0, PI / 4, PI / 2])
    assert iso == reflection(PI / 4)
    assert beta == pytest.approx(PI / 4)
    assert fixed_set(iso).equals(Subspace.line([1.0, 1.0]), 1e-12)

    iso, beta = compose_reflection_angles([PI / 2, PI / 6, 5 * PI / 6])
    assert beta == pytest.approx(7 * PI / 6)
    assert iso.kind == "reflection"
    assert iso.angle == pytest.approx(PI / 6)
    line = fixed_set(iso)
    assert line.equals(Subspace.line([-SQRT3, -1.0]), 1e-12)

    iso, beta = compose_reflection_angles([0.81])
    assert iso == reflection(0.81) and beta == 0.81
    with pytest.raises(ValueError):
        compose_reflection_angles([])


def test_fixed_set_examples():
    assert fixed_set(reflection(PI / 4)).equals(Subspace.line([1.0, 1.0]), 1e-12)
    assert fixed_set(rotation(0.0)).dim == 2
    assert fixed_set(rotation(PI)).dim == 0


def test_classification_matches_numeric_fixed_set():
    rng = np.random.default_rng(29)
    for _ in range(300):
        m = int(rng.integers(1, 7))
        angles = rng.uniform(-6, 6, size=m)
        iso, _ = compose_reflection_angles(angles)
        product = compose([refl_matrix(a) for a in angles])
        np.testing.assert_allclose(iso_matrix(iso), product, atol=1e-12)
        symbolic = fixed_set(iso)
        numeric = fixed_subspace(product).subspace
        assert projector_distance(symbolic, numeric) <= 1e-9


def test_reversal_keeps_fixed_set_in_the_plane():
    rng = np.random.default_rng(37)
    for _ in range(100):
        m = int(rng.integers(2, 7))
        angles = list(rng.uniform(-4, 4, size=m))
        fwd = compose([refl_matrix(a) for a in angles])
        rev = compose([refl_matrix(a) for a in reversed(angles)])
        assert projector_distance(fixed_subspace(fwd).subspace,
                                  fixed_subspace(rev).subspace) <= 1e-9


def test_six_permutations_of_axis_diagonal_perp():
    # axis angles: U at 0, V at pi/4, Uperp at pi/2; the two orders that
    # sandwich V between the complementary pair fix V, the other four fix
    # V's perpendicular
    v = Subspace.line([1.0, 1.0])
    vperp = Subspace.line([1.0, -1.0])
    cases = {
        (0.0, PI / 4, PI / 2): v,
        (PI / 2, PI / 4, 0.0): v,
        (0.0, PI / 2, PI / 4): vperp,
        (PI / 2, 0.0, PI / 4): vperp,
        (PI / 4, 0.0, PI / 2): vperp,
        (PI / 4, PI / 2, 0.0): vperp,
    }
    for angles, expected in cases.items():
        iso, _ = compose_reflection_angles(list(angles))
        assert fixed_set(iso).equals(expected, 1e-12), angles
        numeric = fixed_subspace(compose([refl_matrix(a) for a in angles]))
        assert numeric.subspace.equals(expected, 1e-10)


def test_perturbed_triple_zero_perturbation_fixes_middle_line():
    triple = perturbed_triple(0.9, 0.0, 0.0, 0.0)
    assert triple.fixed_angle == pytest.approx(0.9)
    iso, _ = compose_reflection_angles(triple.angles)
    assert fixed_set(iso).equals(line_subspace(0.9), 1e-12)


def test_perturbed_triple_at_pi_sixth_matches_concurrent_line_example():
    # the unperturbed fan at gamma = pi/6 fixes the same line as the
    # three-concurrent-lines example (its middle line R(sqrt3, 1))
    triple = perturbed_triple(PI / 6, 0.0, 0.0, 0.0)
    iso, _ = compose_reflection_angles(triple.angles)
    fan_line = fixed_set(iso)
    assert fan_line.equals(Subspace.line([SQRT3, 1.0]), 1e-12)
    concurrent = [PI / 2, PI / 6, 5 * PI / 6]
    iso2, _ = compose_reflection_angles(concurrent)
    assert fan_line.equals(fixed_set(iso2), 1e-12)


def test_perturbed_triple_small_epsilon_numeric_oracle():
    # oracle: fixed subspace of the literal 2x2 product
    triple = perturbed_triple(0.0, 0.01, 0.0, 0.0)
    assert triple.fixed_angle == pytest.approx(0.01)
    product = compose([refl_matrix(a) for a in triple.angles])
    numeric = fixed_subspace(product).subspace
    assert numeric.dim == 1
    assert numeric.equals(line_subspace(0.01), 1e-9)
    with pytest.raises(ValueError):
        perturbed_triple(math.nan, 0.0, 0.0, 0.0)
