import json
import subprocess
import sys

import pytest

from tautilt.io.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--preset", "A3")
    data = json.loads(out)
    assert code == 0 and data["count"] == 14 and data["exhaustive"]


def test_enumerate_tilting_only_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--preset", "A3", "--tilting-only", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "id,summand_dims,support,is_tau_tilting"
    assert len(lines) == 6


def test_output_is_byte_identical(capsys):
    first = run(capsys, "graph", "--preset", "D4")[1]
    second = run(capsys, "graph", "--preset", "D4")[1]
    assert first == second
    data = json.loads(first)
    assert len(data["vertices"]) == 50 and len(data["edges"]) == 100


def test_graph_formats(capsys, tmp_path):
    out = tmp_path / "a2.dot"
    code, stdout, _ = run(capsys, "graph", "--preset", "A2", "--format", "dot", "--out", str(out))
    assert code == 0 and stdout == ""
    text = out.read_text()
    assert text.startswith('digraph "A2"') and text.count("->") == 5
    code, stdout, _ = run(capsys, "graph", "--preset", "A2", "--format", "csv")
    assert stdout.splitlines()[0] == "from,to,from_label,to_label" and len(stdout.splitlines()) == 6


def test_kronecker_graph_frontier(capsys):
    code, out, _ = run(capsys, "graph", "--preset", "K2", "--depth", "5")
    data = json.loads(out)
    assert code == 0 and not data["exhaustive"] and len(data["frontier"]) == 2
    assert sum(v["saturated"] is False for v in data["vertices"]) == 2


def test_mutate(capsys):
    code, out, _ = run(capsys, "mutate", "--preset", "K2", "--depth", "3",
                       "--module", "1,0", "--module", "2,1", "--at", "2,1")
    data = json.loads(out)
    assert code == 0
    assert data["to"] == {"is_tau_tilting": False, "summand_dims": [[1, 0]], "support": ["2"]}


def test_mutate_at_vertex(capsys):
    code, out, _ = run(capsys, "mutate", "--preset", "A2", "--module", "1,0", "--support", "2", "--at-vertex", "2")
    assert code == 0 and json.loads(out)["exchange"]["direction"] == "right"


def test_complements_and_bongartz(capsys):
    code, out, _ = run(capsys, "complements", "--preset", "A2", "--module", "1,1")
    data = json.loads(out)
    assert code == 0 and all(data["exchange_sequence"]["checks"].values())
    code, out, _ = run(capsys, "bongartz", "--preset", "D4", "--module", "1,1,1,1")
    assert code == 0 and json.loads(out)["agree"]


def test_coxeter_csv(capsys):
    code, out, _ = run(capsys, "coxeter", "--preset", "W4", "--format", "csv")
    assert out.splitlines() == ["-1,2,0,0", "-2,3,1,0", "-2,3,1,-1", "0,0,1,-1"]


def test_verify_selected_checks(capsys):
    code, out, _ = run(capsys, "verify", "--preset", "A3", "--check", "counts", "--check", "hasse")
    data = json.loads(out)
    assert code == 0 and data["status"] == "complete" and set(data["checks"]) == {"counts", "hasse"}


def test_input_file(capsys, tmp_path):
    f = tmp_path / "q.txt"
    f.write_text("quiver Q\nvertex x y\narrow a x y\n")
    code, out, _ = run(capsys, "enumerate", "--input", str(f))
    assert code == 0 and json.loads(out)["count"] == 5


@pytest.mark.parametrize("argv, code", [
    (["enumerate"], 2),
    (["enumerate", "--preset", "F4"], 2),
    (["enumerate", "--preset", "K2"], 2),
    (["enumerate", "--preset", "K2", "--depth", "0"], 2),
    (["mutate", "--preset", "A2", "--module", "1,0", "--module", "0,1", "--at", "1,0"], 2),
    (["mutate", "--preset", "A2", "--module", "1,0,0", "--at", "1,0"], 2),
    (["enumerate", "--preset", "E7"], 4),
    (["mutate", "--preset", "K2", "--depth", "2", "--module", "5,4", "--module", "6,5", "--at", "5,4"], 5),
    (["verify", "--preset", "A3", "--budget", "0"], 6),
])
def test_exit_codes(capsys, argv, code):
    try:
        got = main(argv)
    except SystemExit as exc:  # argparse usage errors
        got = exc.code
    assert got == code


def test_cycle_exit_code(capsys, tmp_path):
    f = tmp_path / "cyc.txt"
    f.write_text("quiver C\nvertex 1 2\narrow a 1 2\narrow b 2 1\n")
    code, _, err = run(capsys, "enumerate", "--input", str(f))
    assert code == 3 and "cycle" in err


def test_parse_error_exit_code(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("quiver C\nvertex 1\narrow a 1\n")
    code, _, err = run(capsys, "enumerate", "--input", str(f))
    assert code == 3 and "line 3" in err


def test_unreadable_input(capsys, tmp_path):
    assert run(capsys, "enumerate", "--input", str(tmp_path / "missing"))[0] == 2


def test_e7_flag_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("TAUTILT_ENABLE_E7E8", "1")
    code, out, _ = run(capsys, "coxeter", "--preset", "E7")
    assert code == 0 and len(json.loads(out)["coxeter"]) == 7


def test_failed_check_exit_code(monkeypatch, capsys):
    from tautilt import catalog
    monkeypatch.setitem(catalog.CHECKS, "counts", lambda ctx: catalog.CheckResult("counts", False))
    assert run(capsys, "verify", "--preset", "A2", "--check", "counts")[0] == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tautilt", "coxeter", "--preset", "A2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    # -C (C^T)^-1 with C = [[1, 0], [1, 1]]
    assert json.loads(res.stdout)["coxeter"] == [[-1, 1], [-1, 0]]


def test_d4_tilting_quiver(capsys):
    code, out, _ = run(capsys, "graph", "--preset", "D4", "--tilting-only")
    data = json.loads(out)
    assert code == 0 and len(data["vertices"]) == 20 and len(data["edges"]) == 32


def test_verify_all_a4(capsys):
    code, out, _ = run(capsys, "verify", "--preset", "A4", "--all")
    assert code == 0 and json.loads(out)["checks"]["counts"]["details"]["arrows"] == 21


def test_kronecker_depth_four(capsys):
    code, out, _ = run(capsys, "graph", "--preset", "K2", "--depth", "4", "--format", "csv")
    rows = out.splitlines()[1:]
    assert code == 0 and "(1,0)+(2,1)" in out and len(rows) == 8
