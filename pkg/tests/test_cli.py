import json
import math
import xml.etree.ElementTree as ET

import pytest

from fixref.cli import main
from fixref.operators import fixed_subspace
from fixref.plane import compose_reflection_angles, fixed_set
from fixref.scene import load_builtin_scene


@pytest.fixture()
def tiny_scene(tmp_path):
    doc = {"ambient": 2,
           "subspaces": [{"name": "X", "angle": "0 deg"},
                         {"name": "D", "angle": "45 deg"},
                         {"name": "Y", "angle": "90 deg"},
                         {"name": "Z", "vectors": []}],
           "compositions": [{"name": "Z-only", "apply": ["Z"]},
                            {"name": "X-D-Y", "apply": ["X", "D", "Y"]}]}
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(doc))
    return str(path)


def _basis_rows(out: str) -> list[list[float]]:
    lines = out.splitlines()
    start = next(i for i, line in enumerate(lines)
                 if line.startswith("basis vectors")) + 1
    return [[float(x) for x in line.split()] for line in lines[start:]
            if line.strip()]


def test_fix_triple_composition(capsys):
    assert main(["fix", "example_1_5", "U1-U2-U3"]) == 0
    out = capsys.readouterr().out
    assert "dim Fix:        1" in out
    assert "operator R_U3 R_U2 R_U1" in out
    assert "nonexpansive: yes" in out
    (vec,) = _basis_rows(out)
    # the fixed line is spanned by (sqrt3, 1), up to sign
    assert vec[0] / vec[1] == pytest.approx(math.sqrt(3.0), abs=1e-9)
    # components carry 12 significant digits in fixed decimal
    assert any("0.866025403784" in line for line in out.splitlines())


def test_fix_zero_dimensional_fixed_set(capsys, tiny_scene):
    assert main(["fix", tiny_scene, "Z-only"]) == 0
    out = capsys.readouterr().out
    assert "dim Fix:        0" in out
    assert "basis vectors" not in out


def test_fix_perp_sandwich_order(capsys):
    assert main(["fix", "example_3_3", "Uperp-U-V"]) == 0
    (vec,) = _basis_rows(capsys.readouterr().out)
    assert vec[0] + vec[1] == pytest.approx(0.0, abs=1e-9)  # the anti-diagonal


def test_fix_csv_output_to_file(capsys, tmp_path):
    target = tmp_path / "basis.csv"
    assert main(["fix", "example_1_5", "U1-U2-U3", "--output", str(target)]) == 0
    rows = target.read_text().splitlines()
    assert rows[0] == "vector,x0,x1"
    assert len(rows) == 2
    values = [float(x) for x in rows[1].split(",")[1:]]
    assert abs(values[0] / values[1]) == pytest.approx(math.sqrt(3.0), abs=1e-9)


def test_fix_csv_to_stdout_keeps_streams_apart(capsys):
    assert main(["fix", "example_1_5", "U1-U2-U3", "--output", "-"]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("vector,x0,x1")
    assert "dim Fix" not in captured.out
    assert "dim Fix" in captured.err


def test_fix_unknown_composition_is_usage_error(capsys):
    assert main(["fix", "example_1_5", "U9-U9-U9"]) == 2
    assert "unknown composition" in capsys.readouterr().err


def test_fix_parse_error_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert main(["fix", str(bad), "c"]) == 2
    assert "line 1" in capsys.readouterr().err


def test_verify_random_rows_and_exit_status(capsys):
    assert main(["verify", "--random", "n=6", "dims=2,3", "--trials", "5",
                 "--seed", "42", "fact_two_reflectors"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 5
    assert "all 5 checks passed" in out


def test_verify_scene_checks(capsys):
    assert main(["verify", "example_3_3", "prop_conjugate"]) == 0
    out = capsys.readouterr().out
    assert "prop_conjugate" in out and "PASS" in out


def test_verify_reports_failures_with_exit_one(capsys):
    code = main(["verify", "--random", "n=6", "dims=2,3", "--trials", "3",
                 "--seed", "42", "--tol", "1e-300", "fact_two_reflectors"])
    assert code == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "FAILURES:" in out


def test_verify_even_chain_for_odd_bound_is_an_error(capsys):
    assert main(["verify", "--random", "n=6", "dims=2,3",
                 "odd_sum_bound"]) == 2
    assert "odd number" in capsys.readouterr().err


def test_verify_unknown_check_is_usage_error(capsys):
    assert main(["verify", "--random", "n=6", "dims=2", "nope"]) == 2
    assert "unknown check" in capsys.readouterr().err


def test_verify_csv_output(tmp_path, capsys):
    target = tmp_path / "report.csv"
    assert main(["verify", "--random", "n=5", "dims=2,2", "--trials", "2",
                 "fact_two_reflectors", "reversal",
                 "--output", str(target)]) == 0
    rows = target.read_text().splitlines()
    assert rows[0] == "check,instance,residual,tolerance,status"
    assert len(rows) == 5


def test_dr_trace_and_summary(capsys, tiny_scene):
    assert main(["dr", tiny_scene, "X", "D", "--x0", "0,1",
                 "--eps", "1e-30", "--max-iter", "12"]) == 0
    captured = capsys.readouterr()
    rows = captured.out.splitlines()
    assert rows[0] == "k,iterate_norm,shadow_error"
    norms = [float(r.split(",")[1]) for r in rows[1:]]
    # the governing iterate spirals inward by cos(pi/4) per step
    for a, b in zip(norms, norms[1:]):
        assert b / a == pytest.approx(math.cos(math.pi / 4), abs=1e-12)
    assert "predicted rate: 0.707106781187" in captured.err


def test_dr_stops_at_zero_iterations_when_aligned(capsys, tiny_scene):
    assert main(["dr", tiny_scene, "X", "X", "--x0", "2,5"]) == 0
    captured = capsys.readouterr()
    assert len(captured.out.splitlines()) == 2  # header plus k = 0
    assert "iterations:     0" in captured.err
    assert "converged:      yes" in captured.err


def test_dr_bad_start_point(capsys, tiny_scene):
    assert main(["dr", tiny_scene, "X", "D", "--x0", "1,2,3"]) == 2
    assert main(["dr", tiny_scene, "X", "D", "--x0", "one,two"]) == 2


def test_plot_stdout_and_file(capsys, tmp_path):
    assert main(["plot", "example_1_5"]) == 0
    svg = capsys.readouterr().out
    root = ET.fromstring(svg)
    assert root.attrib["version"] == "1.1"

    target = tmp_path / "fig.svg"
    assert main(["plot", "example_1_5", "--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert target.read_text() == svg


def test_plot_subset_and_errors(capsys, tmp_path, tiny_scene):
    assert main(["plot", "example_3_3", "--compositions",
                 "U-V-Uperp,Uperp-V-U", "--size", "600x400"]) == 0
    svg = capsys.readouterr().out
    assert svg.count('class="panel"') == 2

    doc = {"ambient": 3, "subspaces": [{"name": "U", "vectors": [[1, 0, 0]]}],
           "compositions": [{"name": "c", "apply": ["U"]}]}
    path = tmp_path / "three_d.json"
    path.write_text(json.dumps(doc))
    assert main(["plot", str(path)]) == 2
    assert "ambient dimension 2" in capsys.readouterr().err


def test_usage_errors_exit_two(capsys):
    assert main([]) == 2
    assert main(["fix"]) == 2
    assert main(["verify"]) == 2  # no scene and no --random
    capsys.readouterr()


def test_angle_form_scene_agrees_with_symbolic_classification():
    # every composition of the planar scene: numeric fixed set from the CLI's
    # computation path vs the closed-form classification
    scene = load_builtin_scene("example_3_3")
    angle_of = {"U": 0.0, "V": math.pi / 4, "Uperp": math.pi / 2}
    for comp, apply_order in scene.compositions.items():
        numeric = fixed_subspace(scene.composition_matrix(comp)).subspace
        iso, _ = compose_reflection_angles([angle_of[nm] for nm in apply_order])
        symbolic = fixed_set(iso)
        assert numeric.equals(symbolic, 1e-9), comp
