# ./tests/test_cli.py

import json

import pytest

from burnlab.__main__ import main
from burnlab.core.BurnEngine import validate
from burnlab.utils import generators as gen
from burnlab.utils.io_util import format_edge_list, parse_witness, read_graph


@pytest.fixture
def graph_file(write_text):
    def write(name, G):
        return write_text(f"{name}.txt", format_edge_list(G))
    return write


def test_burn_exact_with_witness(graph_file, tmp_path, capsys):
    witness = tmp_path / "path9.witness"
    code = main(["burn", graph_file("path9", gen.path(9)), "--exact", "--budget", "1000000",
                 "--witness-out", str(witness)])
    assert code == 0
    assert "value: 3" in capsys.readouterr().out
    B = parse_witness(witness.read_text())
    assert B.horizon == 3 and validate(gen.path(9), B)


def test_burn_single_vertex(graph_file, tmp_path):
    report = tmp_path / "k1.json"
    assert main(["burn", graph_file("k1", gen.path(1)), "--budget", "100", "--json-out", str(report)]) == 0
    data = json.loads(report.read_text())
    assert data["command"] == "burn" and data["status"] == "pass"
    assert data["results"]["value"] == 1
    assert len(data["inputs_digest"]) == 64


def test_burn_bounds_make_no_exact_claim(graph_file, tmp_path):
    report = tmp_path / "bounds.json"
    G = gen.random_connected(30, seed=5)
    assert main(["burn", graph_file("r30", G), "--bounds", "--json-out", str(report)]) == 0
    results = json.loads(report.read_text())["results"]
    assert "value" not in results
    assert results["bounds"]["lower"] <= results["bounds"]["upper"]


def test_burn_oracle(graph_file, capsys):
    assert main(["burn", graph_file("c5", gen.cycle(5)), "--oracle"]) == 0
    assert "value: 3" in capsys.readouterr().out


def test_burn_budget_exhaustion_exits_4(graph_file, tmp_path):
    report = tmp_path / "p36.json"
    assert main(["burn", graph_file("p36", gen.path(36)), "--exact", "--budget", "3",
                 "--json-out", str(report)]) == 4
    results = json.loads(report.read_text())["results"]
    assert results["status"] == "unknown"
    assert (results["lower"], results["upper"]) == (6, 11)


def test_parse_error_exits_2_with_line(write_text, capsys):
    path = write_text("bad.txt", "3 2\n0 1\n1 x\n")
    assert main(["burn", path, "--budget", "100"]) == 2
    assert "line 3" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["burn", "{path}"],
    ["burn", "{path}", "--exact"],
    ["variant", "{path}", "--edge"],
    ["variant", "{path}", "--relations"],
])
def test_expensive_commands_need_a_budget(graph_file, argv):
    path = graph_file("p5", gen.path(5))
    with pytest.raises(SystemExit):
        main([a.format(path=path) for a in argv])


@pytest.mark.parametrize("name, G, value", [
    ("p10", gen.path(10), 3),
    ("k5", gen.complete(5), 3),
])
def test_variant_edge(graph_file, tmp_path, name, G, value):
    report = tmp_path / f"{name}.json"
    assert main(["variant", graph_file(name, G), "--edge", "--budget", "1000000", "--json-out", str(report)]) == 0
    assert json.loads(report.read_text())["results"]["value"] == value


def test_variant_relations_on_c4(graph_file, tmp_path):
    report = tmp_path / "c4.json"
    assert main(["variant", graph_file("c4", gen.cycle(4)), "--relations", "--budget", "1000000",
                 "--json-out", str(report)]) == 0
    rows = json.loads(report.read_text())["results"]["relations"]
    assert {row["relation"] for row in rows} >= {"edge_lower", "edge_upper", "total_lower", "spike_total"}
    assert all(row["status"] == "pass" for row in rows)


def test_gadget_verify_and_certificate(write_text, tmp_path):
    instance = write_text("inst_456.txt", "4\n5\n6\n")
    emit = tmp_path / "gadget"
    report = tmp_path / "gadget.json"
    code = main(["gadget", instance, "--verify", "--certificate", "--emit-dir", str(emit),
                 "--json-out", str(report)])
    assert code == 0
    results = json.loads(report.read_text())["results"]
    assert results["vertices"] == 295
    assert all(check["passed"] for check in results["checks"])
    B = parse_witness(results["certificate"])
    assert B.horizon == 13 and len(B) == 13
    G = read_graph(str(emit / "gadget.txt"))
    assert validate(G, B)
    assert (emit / "gadget.intervals").exists() and (emit / "gadget.json").exists()


def test_gadget_malformed_instance_exits_3(write_text, capsys):
    assert main(["gadget", write_text("bad.txt", "4\n5\n7\n")]) == 3
    assert "[range]" in capsys.readouterr().err


@pytest.mark.parametrize("argv, n, m", [
    (["spider", "r=4"], 13, 12),
    (["gtilde"], 16, 24),
    (["path", "n=25"], 25, 24),
    (["caterpillar", "spine=3", "legs=1,0,2"], 6, 5),
])
def test_generate(tmp_path, argv, n, m):
    out = tmp_path / "g.txt"
    dot = tmp_path / "g.dot"
    assert main(["generate"] + argv + ["--out", str(out), "--dot", str(dot)]) == 0
    G = read_graph(str(out))
    assert (G.n, G.m) == (n, m)
    assert dot.read_text().startswith("graph ")


def test_generate_random_family_needs_seed(tmp_path):
    assert main(["generate", "random_tree", "n=8"]) == 3
    out = tmp_path / "tree.txt"
    assert main(["generate", "random_tree", "n=8", "--seed", "3", "--out", str(out)]) == 0
    assert read_graph(str(out)).is_tree()


def test_generate_bad_parameter():
    assert main(["generate", "path", "n"]) == 3


@pytest.mark.parametrize("name, G, k, bound", [
    ("gtilde", gen.gtilde(), 6, 4),
    ("k5", gen.complete(5), 3, 2),
])
def test_pkfree(graph_file, tmp_path, name, G, k, bound):
    report = tmp_path / f"{name}.json"
    assert main(["pkfree", graph_file(name, G), str(k), "--json-out", str(report)]) == 0
    results = json.loads(report.read_text())["results"]
    assert results["horizon"] <= bound
    assert validate(G, parse_witness(results["witness"]))


def test_pkfree_rejects_long_induced_path(graph_file, capsys):
    assert main(["pkfree", graph_file("path10", gen.path(10)), "5"]) == 3
    assert "induced path" in capsys.readouterr().err


def test_verify_all_needs_seed_and_budget():
    with pytest.raises(SystemExit):
        main(["verify-all", "--seed", "1"])


def test_verify_all_subset(tmp_path):
    report = tmp_path / "verify.json"
    code = main(["verify-all", "--seed", "7", "--budget", "1000000", "--only", "path_cycle_law",
                 "--sizes", "path_law_max_n=12", "path_law_exact_max_n=6", "--quiet", "--json-out", str(report)])
    assert code == 0
    table = json.loads(report.read_text())["results"]["criteria"]
    assert [row["name"] for row in table] == ["path_cycle_law"]
    assert table[0]["status"] == "pass"


def test_verify_all_unknown_criterion():
    assert main(["verify-all", "--seed", "7", "--budget", "10", "--only", "no_such_criterion", "--quiet"]) == 3
