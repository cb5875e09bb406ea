import io
import json
from pathlib import Path

import pytest

from bnpick.cli import main

ROOT = Path(__file__).resolve().parent.parent
DEMOS = ROOT / "demos"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestPick:
    def test_two_regular_nodes(self, capsys):
        doc = run_json(capsys, "pick", "--problem", str(DEMOS / "ex101.json"))
        assert doc["kappa"] == 1
        assert doc["P"] == [[-1, 1], [1, 1]]
        assert doc["singular"] is False
        assert doc["derived"]["eta"] == ["inf", "1/2"]
        assert doc["lyapunov_residual"]["is_zero"] is True

    def test_degenerate_flag(self, capsys):
        doc = run_json(capsys, "pick", "--problem", str(DEMOS / "ex103.json"))
        assert doc["singular"] is True
        assert doc["derived"] is None
        assert doc["inertia"] == {"negatives": 1, "zeros": 1, "positives": 1 - 1}

    def test_malformed_file_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run(capsys, "pick", "--problem", str(bad))
        assert code == 2 and "error" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, _ = run(capsys, "pick", "--problem", "/no/such/file.json")
        assert code == 2

    def test_schema_violation_exits_2(self, capsys, tmp_path):
        doc = tmp_path / "dup.json"
        doc.write_text(json.dumps({
            "regular": [{"x": 0, "w": 0, "gamma": 1}, {"x": 0, "w": 1, "gamma": 1}],
            "singular": [],
        }))
        code, _, _ = run(capsys, "pick", "--problem", str(doc))
        assert code == 2


class TestSolve:
    def test_golden_resolvent(self, capsys):
        doc = run_json(capsys, "solve", "--problem", str(DEMOS / "ex101.json"))
        assert doc["kind"] == "parameterized"
        entries = doc["theta"]["entries"]
        assert entries[0][0] == {"num": [0, 1], "den": [-1, 1]}
        assert entries[0][1] == {"num": [-1], "den": [-2, 2]}
        assert entries[1][0] == {"num": [1], "den": [-1, 1]}
        assert entries[1][1] == {"num": [1, -4, 2], "den": [0, -2, 2]}

    def test_second_golden_resolvent(self, capsys):
        doc = run_json(capsys, "solve", "--problem", str(DEMOS / "ex102.json"))
        entries = doc["theta"]["entries"]
        assert entries[0][0] == {"num": [-1, 2], "den": [0, 2]}
        assert entries[0][1] == {"num": [-1], "den": [0, 2]}
        assert entries[1][0] == {"num": [-1], "den": [-2, 2]}
        assert entries[1][1] == {"num": [-1, 2], "den": [-2, 2]}

    def test_degenerate_solution(self, capsys):
        doc = run_json(capsys, "solve", "--problem", str(DEMOS / "ex103.json"))
        assert doc["kind"] == "unique"
        assert doc["w"] == {"num": [1, 2], "den": [-1, 2]}
        assert doc["verification"]["fmi_count"] == 1

    def test_out_file(self, capsys, tmp_path):
        out = tmp_path / "bundle.json"
        code, stdout, _ = run(capsys, "solve", "--problem", str(DEMOS / "ex103.json"),
                              "--out", str(out))
        assert code == 0 and stdout == ""
        assert json.loads(out.read_text())["w"] == {"num": [1, 2], "den": [-1, 2]}

    def test_stdin_problem(self, capsys, monkeypatch):
        payload = (DEMOS / "ex103.json").read_text()
        monkeypatch.setattr("sys.stdin", io.StringIO(payload))
        doc = run_json(capsys, "solve")
        assert doc["w"] == {"num": [1, 2], "den": [-1, 2]}


class TestApply:
    def test_infinity_parameter(self, capsys):
        doc = run_json(capsys, "apply", "--problem", str(DEMOS / "ex101.json"),
                       "--param", '{"type":"inf"}')
        assert doc["w"] == {"num": [0, 1], "den": [1]}
        assert doc["k"] == 1 and doc["class_index"] == 0
        assert doc["kernel_negative_squares"] == 0

    def test_identity_parameter(self, capsys):
        doc = run_json(capsys, "apply", "--problem", str(DEMOS / "ex101.json"),
                       "--param", '{"type":"rational","num":[0,1],"den":[1]}')
        assert doc["w"] == {"num": [0, -1, 0, 2], "den": [1, -4, 4]}
        assert doc["k"] == 0 and doc["class_index"] == 1
        assert all(node["verified"] for node in doc["classification"])

    def test_non_nevanlinna_exits_3(self, capsys):
        code, _, err = run(capsys, "apply", "--problem", str(DEMOS / "ex101.json"),
                           "--param", '{"type":"rational","num":[0,0,1],"den":[1]}')
        assert code == 3
        assert "witness" in err

    def test_degenerate_problem_exits_3(self, capsys):
        code, _, _ = run(capsys, "apply", "--problem", str(DEMOS / "ex103.json"),
                         "--param", '{"type":"inf"}')
        assert code == 3

    def test_param_file(self, capsys, tmp_path):
        param = tmp_path / "phi.json"
        param.write_text('{"type":"const","value":"1/2"}')
        doc = run_json(capsys, "apply", "--problem", str(DEMOS / "ex101.json"),
                       "--param", str(param))
        assert doc["k"] == 0


class TestVerify:
    def test_degenerate_round_trip(self, capsys, tmp_path):
        bundle = run_json(capsys, "solve", "--problem", str(DEMOS / "ex103.json"))
        doc = run_json(capsys, "verify", "--problem", str(DEMOS / "ex103.json"),
                       "--param", json.dumps(bundle["w"]))
        assert doc["fmi_count"] == 1 and doc["kappa"] == 1
        assert doc["is_problem3_solution"] is True
        assert all(node["problem1"] for node in doc["nodes"])
        assert all(node["problem2"] for node in doc["nodes"])

    def test_identity_candidate_violates_problem2_at_first_node(self, capsys):
        doc = run_json(capsys, "verify", "--problem", str(DEMOS / "ex101.json"),
                       "--param", '{"num":[0,1],"den":[1]}')
        nodes = {n["node"]: n for n in doc["nodes"]}
        assert nodes[1]["problem2"] is False  # derivative 1 exceeds bound -1
        assert nodes[2]["problem2"] is True
        assert doc["fmi_count"] == 1

    def test_negated_identity_is_not_a_solution(self, capsys):
        doc = run_json(capsys, "verify", "--problem", str(DEMOS / "ex101.json"),
                       "--param", '{"num":[0,-1],"den":[1]}')
        assert doc["fmi_count"] >= 2
        assert doc["is_problem3_solution"] is False

    def test_infinite_candidate_rejected(self, capsys):
        code, _, _ = run(capsys, "verify", "--problem", str(DEMOS / "ex101.json"),
                         "--param", '{"type":"inf"}')
        assert code == 2


class TestConfig:
    def test_float_backend(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text('{"backend": "float"}')
        doc = run_json(capsys, "pick", "--problem", str(DEMOS / "ex101.json"),
                       "--config", str(config))
        assert doc["backend"] == "float"
        assert doc["kappa"] == 1
        assert doc["P"][0][0] == -1.0

    def test_unknown_backend_exits_2(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text('{"backend": "ternary"}')
        code, _, _ = run(capsys, "pick", "--problem", str(DEMOS / "ex101.json"),
                         "--config", str(config))
        assert code == 2

    def test_float_solve_close_to_exact(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text('{"backend": "float"}')
        doc = run_json(capsys, "solve", "--problem", str(DEMOS / "ex101.json"),
                       "--config", str(config))
        # float lane canonicalizes to a monic denominator: z/(z-1)
        num, den = doc["theta"]["entries"][0][0].values()
        assert num == pytest.approx([0.0, 1.0]) and den == pytest.approx([-1.0, 1.0])

    def test_grid_override_accepted(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text('{"grid": {"points_per_level": 4, "im_levels": [0.5]}}')
        doc = run_json(capsys, "verify", "--problem", str(DEMOS / "ex103.json"),
                       "--param", '{"num":[1,2],"den":[-1,2]}', "--config", str(config))
        assert doc["fmi_count"] == 1
