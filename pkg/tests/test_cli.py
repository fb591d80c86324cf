import json

import pytest

from ucount import corpus
from ucount.cli import main
from ucount.graph import graph_to_json


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in [("k4", corpus.k4()), ("cube", corpus.cube()), ("wheel", corpus.wheel(4))]:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(graph_to_json(g)))
        paths[name] = str(p)
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n")
    paths["cnf"] = str(cnf)
    paths["dir"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_count_fkt_k4(files, capsys):
    code, out = run(capsys, "count", "--quantity", "uperm", "--method", "fkt", files["k4"])
    assert code == 0 and out.out.strip() == "3"


def test_count_semipfaffian_cross_check(files, capsys):
    code, out = run(capsys, "count", "--quantity", "udet", "--method", "semipfaffian", files["cube"], "--cross-check")
    assert code == 0
    assert out.out.splitlines()[0] == "-3"
    assert "pass" in out.out


def test_count_fkt_udet_is_a_usage_error(files, capsys):
    code, out = run(capsys, "count", "--quantity", "udet", "--method", "fkt", files["k4"])
    assert code == 2


def test_json_report(files, capsys):
    code, out = run(capsys, "count", "--quantity", "udet", files["cube"], "--json")
    rep = json.loads(out.out)
    assert code == 0
    assert rep["result"] == "-3" and rep["method"] == "oracle"
    assert rep["command"].startswith("count")
    assert files["cube"] in rep["inputs"]


def test_signature_golden_pass_and_mismatch(files, capsys):
    golden = files["dir"] / "g.json"
    golden.write_text(json.dumps({"entries": [{"stubs": [], "value": "1"}, {"stubs": ["Lt", "Lb", "Rb", "Rt"], "value": "1"}]}))
    code, _ = run(capsys, "signature", "--builtin", "iff", "--golden", str(golden))
    assert code == 0
    golden.write_text(json.dumps({"entries": [{"stubs": [], "value": "1"}]}))
    code, out = run(capsys, "signature", "--builtin", "iff", "--golden", str(golden))
    assert code == 1 and "MISMATCH" in out.out


def test_signature_of_corrupted_gadget_file(files, capsys):
    from ucount.gadget import gadget_to_json
    from ucount.gadgets import make_skew_crossover

    data = gadget_to_json(make_skew_crossover("perm"))
    for e in data["edges"]:
        if e["w"] == "-1":
            e["w"] = "1"
    gfile = files["dir"] / "bad.json"
    gfile.write_text(json.dumps(data))
    golden = files["dir"] / "table.json"
    golden.write_text(json.dumps([
        {"stubs": [], "value": "1"},
        {"stubs": ["LB", "RT"], "value": "-1"},
        {"stubs": ["LT", "RB"], "value": "-1"},
        {"stubs": ["LT", "LB", "RB", "RT"], "value": "-1"},
    ]))
    assert run(capsys, "signature", str(gfile), "--golden", str(golden))[0] == 1


def test_compile_then_count_equals_satcount(files, capsys):
    out_graph = str(files["dir"] / "b.json")
    code, _ = run(capsys, "compile", "--mode", "perm", files["cnf"], "-o", out_graph)
    assert code == 0
    assert json.loads((files["dir"] / "b.provenance.json").read_text())["mode"] == "perm"
    _, a = run(capsys, "count", "--quantity", "uperm", out_graph)
    _, b = run(capsys, "satcount", files["cnf"])
    assert a.out.strip() == b.out.strip() == "6"


def test_compile_cubicize(files, capsys):
    cnf = files["dir"] / "one.cnf"
    cnf.write_text("p cnf 1 1\n1 1 1 0\n")
    out_graph = str(files["dir"] / "c.json")
    code, out = run(capsys, "compile", "--mode", "det", "--cubicize", str(cnf), "-o", out_graph)
    assert code == 0
    g = json.loads(open(out_graph).read())
    deg = {}
    for e in g["edges"]:
        deg[e["u"]] = deg.get(e["u"], 0) + 1
        deg[e["v"]] = deg.get(e["v"], 0) + 1
    assert set(deg.values()) == {3}


def test_orient_verify_loop(files, capsys):
    o = str(files["dir"] / "k4o.json")
    assert run(capsys, "orient", "--pfaffian", files["k4"], "-o", o)[0] == 0
    code, out = run(capsys, "verify", "--pfaffian", o)
    assert code == 0 and out.out.strip() == "pass"
    s = str(files["dir"] / "cubes.json")
    assert run(capsys, "orient", "--semi-pfaffian", files["cube"], "-o", s)[0] == 0
    assert run(capsys, "verify", "--semi-pfaffian", s)[0] == 0
    assert run(capsys, "verify", "--pfaffian", s)[0] == 1


def test_orient_needs_one_kind(files, capsys):
    assert run(capsys, "orient", files["k4"], "-o", str(files["dir"] / "x.json"))[0] == 2


def test_semi_pfaffian_of_k4_fails(files, capsys):
    assert run(capsys, "orient", "--semi-pfaffian", files["k4"], "-o", str(files["dir"] / "x.json"))[0] == 1


def test_tension(files, capsys):
    code, out = run(capsys, "tension", files["cube"], "--all-central", "--json")
    rep = json.loads(out.out)
    assert code == 0 and rep["without_tension"]
    assert all(c["tension"] == 0 for c in rep["cycles"])
    code, out = run(capsys, "tension", files["k4"], "--cycle", "0,1,2,3")
    assert "tension 2" in out.out


def test_pfaffian_command(files, capsys):
    m = files["dir"] / "m.json"
    m.write_text(json.dumps([[0, "1/2", 0, 0], ["-1/2", 0, 2, 0], [0, -2, 0, 3], [0, 0, -3, 0]]))
    code, out = run(capsys, "pfaffian", str(m))
    assert code == 0 and out.out.strip() == "3/2"
    m.write_text(json.dumps([[0, 1], [1, 0]]))
    assert run(capsys, "pfaffian", str(m))[0] == 2


def test_input_errors(files, capsys):
    assert run(capsys, "count", "--quantity", "udet", str(files["dir"] / "missing.json"))[0] == 2
    bad = files["dir"] / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "count", "--quantity", "udet", str(bad))[0] == 2
    assert run(capsys, "count", "--quantity", "nothing", files["k4"])[0] == 2
    assert run(capsys, "count", "--quantity", "uperm", "--method", "fkt", files["wheel"])[0] == 2


def test_resource_bounds(files, capsys):
    assert run(capsys, "count", "--quantity", "udet", files["cube"], "--max-vertices", "4")[0] == 3
    big = corpus.prism(40)
    p = files["dir"] / "big.json"
    p.write_text(json.dumps(graph_to_json(big)))
    assert run(capsys, "count", "--quantity", "udet", "--method", "semipfaffian", str(p), "--max-seconds", "0.5")[0] == 3


def test_threads_env(monkeypatch):
    from ucount.cli import threads

    monkeypatch.setenv("UCOUNT_THREADS", "4")
    assert threads() == 4
    monkeypatch.setenv("UCOUNT_THREADS", "junk")
    assert threads() == 1
