import io
import json

import pytest

from unicover.cli import EXIT_INVALID, EXIT_OK, EXIT_PRECONDITION, main
from unicover.families import petersen
from unicover.serialize import graph_from_text, graph_to_text


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_named_family(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["gen", "--family", "petersen"])
        assert code == EXIT_OK
        assert graph_from_text(out) == petersen()

    def test_random_family_deterministic(self, capsys, monkeypatch):
        a = run(capsys, monkeypatch,
                ["gen", "--family", "random-cubic-3ec", "--n", "10", "--seed", "3"])
        b = run(capsys, monkeypatch,
                ["gen", "--family", "random-cubic-3ec", "--n", "10", "--seed", "3"])
        assert a == b and a[0] == EXIT_OK


class TestPipeline:
    def test_solve_subtour_json(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["solve-subtour"],
                           stdin=graph_to_text(petersen()))
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["type"] == "lp-result" and doc["value"] == "10/1"

    def test_cover_then_verify(self, capsys, monkeypatch, tmp_path):
        _, graph_text, _ = run(capsys, monkeypatch, ["gen", "--family", "k4"])
        code, cert_json, _ = run(capsys, monkeypatch,
                                 ["uniform-cover", "--variant", "18/19"],
                                 stdin=graph_text)
        assert code == EXIT_OK
        code, out, _ = run(capsys, monkeypatch, ["verify"], stdin=cert_json)
        assert code == EXIT_OK and out.startswith("valid")

    def test_verify_rejects_tampered(self, capsys, monkeypatch):
        _, graph_text, _ = run(capsys, monkeypatch, ["gen", "--family", "k4"])
        _, cert_json, _ = run(capsys, monkeypatch,
                              ["uniform-cover", "--variant", "18/19"],
                              stdin=graph_text)
        doc = json.loads(cert_json)
        doc["alpha"] = "1/1"
        code, out, _ = run(capsys, monkeypatch, ["verify"], stdin=json.dumps(doc))
        assert code == EXIT_INVALID and out.startswith("INVALID")

    def test_cycle_cover_summary(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch,
                           ["cycle-cover", "--format", "summary"],
                           stdin=graph_to_text(petersen()))
        assert code == EXIT_OK and "cycles" in out

    def test_decompose_everywhere_vector(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch,
                           ["decompose", "trees", "--vector", "2/3"],
                           stdin=graph_to_text(petersen()))
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["type"] == "decomposition" and doc["kind"] == "trees"

    def test_approx_with_uniform_weights(self, capsys, monkeypatch):
        _, graph_text, _ = run(capsys, monkeypatch, ["gen", "--family", "petersen"])
        code, out, _ = run(capsys, monkeypatch,
                           ["approx", "--alg", "tsp75",
                            "--node-weights", "uniform1"],
                           stdin=graph_text)
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["algorithm"] == "tsp75" and doc["lower_bound"] == "20/1"
        code, _, _ = run(capsys, monkeypatch, ["verify"], stdin=out)
        assert code == EXIT_OK

    def test_approx_weight_file(self, capsys, monkeypatch, tmp_path):
        wfile = tmp_path / "weights.txt"
        wfile.write_text("1/2\n" * 10)
        code, out, _ = run(capsys, monkeypatch,
                           ["approx", "--alg", "twoec1310",
                            "--node-weights", str(wfile)],
                           stdin=graph_to_text(petersen()))
        assert code == EXIT_OK
        assert json.loads(out)["lower_bound"] == "10/1"


class TestExitCodes:
    def test_parse_error(self, capsys, monkeypatch):
        code, _, err = run(capsys, monkeypatch, ["solve-subtour"], stdin="garbage\n")
        assert code == EXIT_PRECONDITION and "parse error" in err

    def test_parse_error_reports_line(self, capsys, monkeypatch):
        code, _, err = run(capsys, monkeypatch, ["solve-subtour"],
                           stdin="3 2\n0 1 1/1\n1 2 bad\n")
        assert code == EXIT_PRECONDITION and "line 3" in err

    def test_profile_precondition(self, capsys, monkeypatch):
        code, _, err = run(capsys, monkeypatch,
                           ["uniform-cover", "--variant", "12/13"],
                           stdin=graph_to_text(petersen()))
        assert code == EXIT_PRECONDITION and "odd cycle" in err

    def test_missing_weights_precondition(self, capsys, monkeypatch):
        code, _, err = run(capsys, monkeypatch, ["approx", "--alg", "tsp75"],
                           stdin=graph_to_text(petersen()))
        assert code == EXIT_PRECONDITION and "node-weights" in err

    def test_file_input(self, capsys, monkeypatch, tmp_path):
        gfile = tmp_path / "g.txt"
        gfile.write_text(graph_to_text(petersen()))
        code, out, _ = run(capsys, monkeypatch,
                           ["solve-subtour", str(gfile), "--format", "summary"])
        assert code == EXIT_OK and "10/1" in out

    def test_unknown_subcommand(self, capsys, monkeypatch):
        with pytest.raises(SystemExit):
            main(["frobnicate"])
