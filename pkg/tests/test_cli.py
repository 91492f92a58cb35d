import io
import json
from contextlib import redirect_stdout
from fractions import Fraction

import pytest

from lineaut.cli import (
    EXIT_INPUT_ERROR,
    EXIT_NO_SOLUTION,
    EXIT_OK,
    main,
)


@pytest.fixture
def files(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    return {
        "identity": write("id.json", {"knots": [], "left_slope": "1", "right_slope": "1"}),
        "t1": write("t1.json", {"knots": [{"x": "0", "y": "1"}],
                                "left_slope": "1", "right_slope": "1"}),
        "t2": write("t2.json", {"knots": [{"x": "0", "y": "2"}],
                                "left_slope": "1", "right_slope": "1"}),
        "tminus": write("tm.json", {"knots": [{"x": "0", "y": "-1"}],
                                    "left_slope": "1", "right_slope": "1"}),
        "bump": write("bump.json", {"knots": [{"x": "0", "y": "0"},
                                              {"x": "1/2", "y": "3/4"},
                                              {"x": "1", "y": "1"}],
                                    "left_slope": "1", "right_slope": "1"}),
        "square": write("w2.json", {"letters": [{"var": 2, "exp": 1}, {"var": 2, "exp": 1}]}),
        "bad": write("bad.json", {"knots": [{"x": "0", "y": "1"}, {"x": "1", "y": "0"}],
                                  "left_slope": "1", "right_slope": "1"}),
        "trash": write("trash.json", "]["),
    }


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    out = buf.getvalue()
    return code, (json.loads(out) if out.strip() else None)


class TestTerrain:
    def test_identity(self, files):
        code, data = run(["terrain", files["identity"]])
        assert code == EXIT_OK
        assert data["color_sequence"] == "0"

    def test_translation(self, files):
        code, data = run(["terrain", files["t1"]])
        assert code == EXIT_OK
        assert data["color_sequence"] == "+"

    def test_bump(self, files):
        code, data = run(["terrain", files["bump"]])
        assert code == EXIT_OK
        assert data["color_sequence"] == "0+0"
        assert data["terrain"]["elements"][1] == {"color": "+", "lo": "0", "hi": "1"}

    def test_invalid_map_rejected(self, files):
        code, _ = run(["terrain", files["bad"]])
        assert code == EXIT_INPUT_ERROR

    def test_invalid_json_rejected(self, files):
        code, _ = run(["terrain", files["trash"]])
        assert code == EXIT_INPUT_ERROR

    def test_missing_file(self):
        code, _ = run(["terrain", "/nonexistent/g.json"])
        assert code == EXIT_INPUT_ERROR


class TestEval:
    def test_forward(self, files):
        code, data = run(["eval", files["t1"], "5/3"])
        assert code == EXIT_OK
        assert data == {"x": "5/3", "y": "8/3"}

    def test_inverse(self, files):
        code, data = run(["eval", files["t1"], "5/3", "--inverse"])
        assert code == EXIT_OK
        assert data == {"x": "5/3", "y": "2/3"}


class TestConjugate:
    def test_translations(self, files):
        code, data = run(["conjugate", files["t2"], files["t1"], "--samples", "40"])
        assert code == EXIT_OK
        assert data["conjugate"] is True
        assert data["verification"]["verified"] is True
        assert len(data["solution_graph"]) == 40

    def test_self(self, files):
        code, data = run(["conjugate", files["t1"], files["t1"], "--samples", "20"])
        assert code == EXIT_OK
        assert data["verification"]["verified"] is True

    def test_not_conjugate(self, files):
        code, data = run(["conjugate", files["t1"], files["tminus"], "--samples", "20"])
        assert code == EXIT_NO_SOLUTION
        assert data == {"conjugate": False,
                        "color_sequences": {"g": "+", "f": "-"}}

    def test_fast_forward_mode(self, files):
        code, data = run(["conjugate", files["t2"], files["t1"],
                          "--samples", "20", "--mode", "fast-forward"])
        assert code == EXIT_OK
        assert data["verification"]["verified"] is True


class TestSolvers:
    def test_xgx(self, files):
        code, data = run(["solve-xgx", files["identity"], files["t2"], "--samples", "20"])
        assert code == EXIT_OK
        assert data["verification"]["verified"] is True
        # known solution t -> t + 1
        for point in data["solution_graph"]:
            assert Fraction(point["y"]) == Fraction(point["x"]) + 1

    def test_solve_word(self, files):
        code, data = run(["solve-word", files["square"], files["t2"], "--samples", "20"])
        assert code == EXIT_OK
        assert data["verification"]["verified"] is True
        assert "2" in data["variables"]

    def test_solve_word_rejects_unreduced(self, files, tmp_path):
        bad = tmp_path / "wbad.json"
        bad.write_text(json.dumps({"letters": [{"var": 2, "exp": 1},
                                               {"var": 2, "exp": -1}]}))
        code, _ = run(["solve-word", str(bad), files["t2"]])
        assert code == EXIT_INPUT_ERROR

    def test_root(self, files):
        code, data = run(["root", files["t2"], "2", "--samples", "20"])
        assert code == EXIT_OK
        assert data["n"] == 2
        assert data["verification"]["verified"] is True

    def test_root_of_one_returns_input(self, files):
        code, data = run(["root", files["t2"], "1", "--samples", "10"])
        assert code == EXIT_OK
        assert data["construction"] == "piecewise-linear"

    def test_commutator(self, files):
        code, data = run(["commutator", files["t1"], "--samples", "20"])
        assert code == EXIT_OK
        assert data["verification"]["verified"] is True
        assert "x" in data and "y" in data


class TestTerrainCatalog:
    def test_enumerate(self):
        code, data = run(["enumerate-terrains", "3"])
        assert code == EXIT_OK
        assert data["count"] == 22
        assert len(data["sequences"]) == 22

    def test_realize_roundtrip_all_n3(self):
        code, data = run(["enumerate-terrains", "3"])
        for seq in data["sequences"]:
            code, realized = run(["realize", seq])
            assert code == EXIT_OK
            assert realized["roundtrip"] == seq

    def test_realize_identity(self):
        code, data = run(["realize", "0"])
        assert code == EXIT_OK
        assert data["automorphism"] == {"knots": [], "left_slope": "1",
                                        "right_slope": "1"}

    def test_realize_rejects_invalid(self):
        code, _ = run(["realize", "00"])
        assert code == EXIT_INPUT_ERROR


class TestMeasure:
    def test_linear(self, files):
        code, data = run(["measure", files["t1"], "--alpha", "0", "--gamma", "10"])
        assert code == EXIT_OK
        assert data == {"mode": "linear", "index": 10, "oracle_calls": 11,
                        "ff_steps": 0}

    def test_fast_forward(self, files):
        code, data = run(["measure", files["t1"], "--alpha", "0", "--gamma", "10",
                          "--mode", "fast-forward"])
        assert code == EXIT_OK
        assert data["index"] == 10
        assert data["ff_steps"] <= 4 * 3.4 + 8

    def test_fixed_anchor_is_input_error(self, files):
        code, _ = run(["measure", files["identity"], "--alpha", "0", "--gamma", "1"])
        assert code == EXIT_INPUT_ERROR


class TestDeterminism:
    def test_byte_identical_output(self, files):
        runs = []
        for _ in range(2):
            buf = io.StringIO()
            with redirect_stdout(buf):
                main(["conjugate", files["t2"], files["t1"], "--samples", "30",
                      "--seed", "7"])
            runs.append(buf.getvalue())
        assert runs[0] == runs[1]
