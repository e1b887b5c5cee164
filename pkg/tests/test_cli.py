from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from treespec.cli import main
from treespec.eigen import SpectrumReport
from treespec.poly import IntPolynomial
from treespec.tree import SubdividedEdge, parse_records, path_tree, star_tree
from treespec.verify import SignTrace, VerificationReport


def run_cli(monkeypatch, capsys, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


P2 = path_tree(2).to_text()
P7 = path_tree(7).to_text()


def test_is_integral_p2(monkeypatch, capsys):
    code, out, _ = run_cli(monkeypatch, capsys, ["is-integral"], P2)
    data = json.loads(out)
    assert code == 0
    assert data["schema"] == "treespec/1"
    assert data["is_integral"] is True
    assert [k for k, m in data["integer_spectrum"] for _ in range(m)] == [-1, 1]
    report = SpectrumReport.from_json(data)
    assert report.to_json() == data


def test_count_p7(monkeypatch, capsys):
    code, out, _ = run_cli(monkeypatch, capsys, ["count", "--from", "-2", "--to", "2", "--distinct"], P7)
    assert (code, out.strip()) == (0, "7")
    code, out, _ = run_cli(monkeypatch, capsys, ["count", "--from=-1/2", "--to", "1/2"], star_tree(4).to_text())
    assert (code, out.strip()) == (0, "3")


def test_charpoly_file_input(tmp_path, monkeypatch, capsys):
    f = tmp_path / "star.txt"
    f.write_text("# K_{1,4}\n" + star_tree(4).to_text())
    code, out, _ = run_cli(monkeypatch, capsys, ["charpoly", str(f)])
    data = json.loads(out)
    assert code == 0
    assert IntPolynomial.from_json(data["char_poly"]) == IntPolynomial((0, 0, 0, -4, 0, 1))


def test_subdivided(monkeypatch, capsys):
    code, out, _ = run_cli(monkeypatch, capsys, ["subdivided"], P7)
    edges = [SubdividedEdge.from_json(e) for e in json.loads(out)["subdivided_edges"]]
    assert code == 0 and [e.length for e in edges] == [7]


def test_trace_json_and_csv(monkeypatch, capsys):
    code, out, _ = run_cli(monkeypatch, capsys, ["trace"], path_tree(3).to_text())
    trace = SignTrace.from_json(json.loads(out))
    assert code == 0 and trace.root_zero_count == 3
    code, out, _ = run_cli(monkeypatch, capsys, ["trace", "--format", "csv", "--reverse"], path_tree(3).to_text())
    assert code == 0 and out.splitlines()[0].endswith("d3,d2,d1")
    code, _, err = run_cli(monkeypatch, capsys, ["trace", "--edge", "3"], path_tree(3).to_text())
    assert code == 2 and "--edge" in err


def test_verify_theorem_ok(monkeypatch, capsys):
    code, out, _ = run_cli(monkeypatch, capsys, ["verify-theorem", "--max-n", "12", "--k", "7"])
    rep = VerificationReport.from_json(json.loads(out))
    assert code == 0 and rep.violations == [] and rep.trees_checked > 0


def test_verify_theorem_violation_exit_code(monkeypatch, capsys):
    import treespec.verify as v

    monkeypatch.setattr(v, "MIN_DISTINCT", 100)
    code, out, _ = run_cli(monkeypatch, capsys, ["verify-theorem", "--max-n", "8"])
    assert code == 1 and len(json.loads(out)["violations"]) == 2


def test_search_integral(monkeypatch, capsys):
    code, out, _ = run_cli(monkeypatch, capsys, ["search-integral", "--max-n", "5"])
    trees = [item["tree"] for item in json.loads(out)["integral_trees"]]
    assert code == 0 and trees == ["1", "2 1 2", "5 1 2 1 3 1 4 1 5"]


def test_enumerate(monkeypatch, capsys):
    code, out, _ = run_cli(monkeypatch, capsys, ["enumerate", "--n", "6"])
    assert code == 0 and len(parse_records(out)) == 6
    code, out, _ = run_cli(monkeypatch, capsys, ["enumerate", "--n", "9", "--min-subdivided", "7"])
    assert code == 0 and len(parse_records(out)) == 2


@pytest.mark.parametrize(
    "argv, stdin",
    [
        (["spectrum"], "3\n1 2\n1 3\n2 3\n"),
        (["spectrum"], "3\n1 2\n"),
        (["count", "--from", "2", "--to", "-2"], P2),
        (["count", "--from", "0.5", "--to", "2"], P2),
        (["enumerate", "--n", "21"], ""),
        (["verify-theorem", "--max-n", "12", "--k", "1"], ""),
        (["spectrum", "/nonexistent/file"], ""),
        (["bogus"], ""),
        (["spectrum", "--nope"], P2),
    ],
)
def test_usage_errors_exit_2(monkeypatch, capsys, argv, stdin):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse reports usage errors this way
        code = exc.code
    _, err = capsys.readouterr()
    assert code == 2 and err


def test_outputs_are_deterministic(monkeypatch, capsys):
    outs = []
    for jobs in ("1", "2"):
        code, out, _ = run_cli(monkeypatch, capsys, ["verify-theorem", "--max-n", "11", "--jobs", jobs])
        data = json.loads(out)
        data.pop("elapsed")
        outs.append(data)
    assert outs[0] == outs[1]
    a = run_cli(monkeypatch, capsys, ["spectrum"], P7)[1]
    b = run_cli(monkeypatch, capsys, ["spectrum"], P7)[1]
    assert a == b


def test_json_fixpoints(monkeypatch, capsys):
    _, out, _ = run_cli(monkeypatch, capsys, ["spectrum"], P7)
    data = json.loads(out)
    assert SpectrumReport.from_json(data).to_json() == data
    _, out, _ = run_cli(monkeypatch, capsys, ["trace"], P7)
    data = json.loads(out)
    assert SignTrace.from_json(data).to_json() == data
    _, out, _ = run_cli(monkeypatch, capsys, ["verify-theorem", "--max-n", "9"])
    data = json.loads(out)
    assert VerificationReport.from_json(data).to_json() == data


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "treespec", "count", "--from", "-2", "--to", "2", "--distinct"],
        input=P7,
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "7"
