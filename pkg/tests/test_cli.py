import json
import subprocess
import sys

import pytest

from quditgraph import __version__
from quditgraph.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, dumps, main, parse_subset
from quditgraph.codes import additive_code
from quditgraph.graph import cycle_graph, format_graph


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def c6(tmp_path):
    p = tmp_path / "c6.graph"
    p.write_text(format_graph(cycle_graph(6, 2)))
    return p


@pytest.fixture
def code422(tmp_path):
    p = tmp_path / "c422.json"
    p.write_text(dumps(additive_code(cycle_graph(4, 2), [[1, 1, 0, 0], [0, 0, 1, 1]]).report()))
    return p


def test_code_search_c6(capsys, c6):
    code, out, _ = run(capsys, "code-search", c6, "--delta", 2)
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["K"] == 16 and rep["qs_saturated"] is True and rep["search_complete"] is True


def test_code_search_additive_and_output_file(capsys, c6, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "code-search", c6, "--delta", 2, "--additive", "-o", dest)
    assert code == EXIT_OK and out == ""
    assert json.loads(dest.read_text())["K"] == 16


def test_code_search_budget_exhausted(capsys, c6):
    code, out, _ = run(capsys, "code-search", c6, "--delta", 2, "--budget", 3)
    assert code == EXIT_BUDGET
    assert json.loads(out)["search_complete"] is False


def test_output_is_deterministic(capsys, c6):
    _, a, _ = run(capsys, "code-search", c6, "--delta", 2)
    _, b, _ = run(capsys, "code-search", c6, "--delta", 2)
    assert a == b
    keys = list(json.loads(a).keys())
    assert keys == sorted(keys)


def test_malformed_graph_file(capsys, tmp_path):
    bad = tmp_path / "bad.graph"
    bad.write_text("four 2\n")
    code, _, err = run(capsys, "code-search", bad, "--delta", 2)
    assert code == EXIT_INPUT and "line 1" in err


def test_malformed_code_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 4,\n "D": }')
    code, _, err = run(capsys, "code-verify", bad)
    assert code == EXIT_INPUT and "line 2" in err


def test_code_verify(capsys, code422, tmp_path):
    code, out, _ = run(capsys, "code-verify", code422, "--dense")
    assert code == EXIT_OK and json.loads(out)["ok"] is True
    rep = json.loads(code422.read_text())
    rep["delta"] = 3
    worse = tmp_path / "worse.json"
    worse.write_text(json.dumps(rep))
    code, out, _ = run(capsys, "code-verify", worse)
    assert code == EXIT_FAIL and json.loads(out)["ok"] is False


def test_stab_dual(capsys, code422):
    code, out, _ = run(capsys, "stab-dual", code422)
    rep = json.loads(out)
    assert code == EXIT_OK and rep["double_dual_matches"] is True
    assert len(rep["stabilizer_generators"]) >= 1


def test_encode(capsys, tmp_path):
    from quditgraph.graph import QuditGraph
    import numpy as np

    g = QuditGraph(6, np.array([[0, 1, 1], [1, 0, 2], [1, 2, 0]]))
    p = tmp_path / "ex.json"
    p.write_text(dumps(additive_code(g, [[4, 3, 3], [0, 3, 3]]).report()))
    code, out, _ = run(capsys, "encode", p)
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["K"] == 6 and rep["m"][:2] == [2, 3]
    assert rep["gates"][0] == {"gate": "CNOT", "qudits": [2, 1], "power": 1}
    assert {g["gate"] for g in rep["gates"][1:]} == {"CP"}


def test_infoloc_subset(capsys, code422):
    code, out, _ = run(capsys, "infoloc", code422, "--subset", "1,3", "--subset", "1")
    rep = json.loads(out)
    assert code == EXIT_OK
    first, second = rep["subsets"]
    assert first["B"] == [1, 3] and first["generators"] == ["X01 X02", "X01 Z01 Z02"]
    assert second["classification"] == "all-absent"


def test_infoloc_all_subsets(capsys, code422):
    _, out, _ = run(capsys, "infoloc", code422)
    assert len(json.loads(out)["subsets"]) == 15


def test_infoloc_bad_subset(capsys, code422):
    code, _, err = run(capsys, "infoloc", code422, "--subset", "0,5")
    assert code == EXIT_INPUT and "1..4" in err
    with pytest.raises(ValueError):
        parse_subset("a,b", 4)


def test_transform(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    a.write_text("0.8, 0.2\n")
    b.write_text("# target\n0.5 0.5\n")
    code, out, _ = run(capsys, "transform", a, b)
    rep = json.loads(out)
    assert code == EXIT_OK and rep["p_max"] == 0.4 and rep["deterministic"] is False
    code, out, _ = run(capsys, "transform", b, a)
    assert json.loads(out)["p_max"] == 1.0


def test_transform_bad_number(capsys, tmp_path):
    a = tmp_path / "a.txt"
    a.write_text("0.5\n0.5x\n")
    code, _, err = run(capsys, "transform", a, a)
    assert code == EXIT_INPUT and "line 2" in err


def test_clone_sim(capsys, tmp_path):
    fam = tmp_path / "fam.txt"
    fam.write_text("0 0.8\n1 0.2\n")
    code, out, _ = run(capsys, "clone-sim", "cyclic:2", fam)
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["min_fidelity"] > 1 - 1e-10
    assert rep["gamma_min_bound"] == 0.5
    assert rep["entanglement_gap"]["gap"] > 0


def test_clone_sim_group_file_and_s3(capsys, tmp_path):
    table = tmp_path / "z3.txt"
    table.write_text("3\n0 1 2\n1 2 0\n2 0 1\n")
    fam = tmp_path / "fam.txt"
    fam.write_text("0 0.5\n1 0.3\n2 0.2\n")
    code, out, _ = run(capsys, "clone-sim", table, fam)
    assert code == EXIT_OK and len(json.loads(out)["outcomes"]) == 9
    fam6 = tmp_path / "fam6.txt"
    fam6.write_text("\n".join(f"{g} {1/6}" for g in range(6)))
    code, out, _ = run(capsys, "clone-sim", "s3", fam6, "--no-measure")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["entanglement_gap"] is None and rep["min_fidelity"] > 1 - 1e-10


def test_clone_sim_bad_group(capsys, tmp_path):
    table = tmp_path / "bad.txt"
    table.write_text("2\n0 1\n1 1\n")
    fam = tmp_path / "fam.txt"
    fam.write_text("0 1\n")
    code, _, _ = run(capsys, "clone-sim", table, fam)
    assert code == EXIT_INPUT


def test_bases_sweep(capsys):
    code, out, _ = run(capsys, "bases-sweep", "--family", "gauss", "--D", 5)
    lines = out.strip().split("\n")
    assert code == EXIT_OK and len(lines) == 102
    assert abs(float(lines[1].split(",")[-2])) < 1e-12
    assert abs(float(lines[-1].split(",")[-2]) - 1) < 1e-12


def test_bases_sweep_threads_identical(capsys):
    _, a, _ = run(capsys, "bases-sweep", "--family", "graph", "--D", 4, "--grid", 21)
    _, b, _ = run(capsys, "--threads", 3, "bases-sweep", "--family", "graph", "--D", 4, "--grid", 21)
    assert a == b
    code, _, _ = run(capsys, "--threads", 0, "bases-sweep", "--family", "graph", "--D", 4)
    assert code == EXIT_INPUT


def test_version_and_unknown_flag(capsys):
    with pytest.raises(SystemExit) as e:
        main(["--version"])
    assert e.value.code == 0 and __version__ in capsys.readouterr().out
    with pytest.raises(SystemExit) as e:
        main(["bases-sweep", "--family", "gauss", "--D", "3", "--bogus"])
    assert e.value.code == 2


def test_console_script_runs(tmp_path):
    r = subprocess.run([sys.executable, "-m", "quditgraph.cli", "bases-sweep", "--family", "graph", "--D", "2", "--grid", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("t,lambda_1,lambda_2")
