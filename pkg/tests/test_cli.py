import json
import subprocess
import sys

import pytest

from qgraph import cli
from qgraph.instances import c4_reflection, cycle, generate_corpus, star_swap, theta, write_corpus
from qgraph.serialize import dumps, graph_from_dict, graph_to_dict, instance_to_dict, report_to_dict
from qgraph.riemann_hurwitz import check_all


@pytest.fixture
def files(tmp_path):
    def put(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else dumps(obj))
        return str(p)

    return put


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info_graph(capsys, files):
    code, out, _ = run(capsys, "info", files("c4.json", graph_to_dict(cycle(4))))
    assert code == 0
    assert out.splitlines()[0] == "V=4 E=4 T=0 genus=1 connected=yes"


def test_info_action(capsys, files):
    code, out, _ = run(capsys, "info", files("r.json", instance_to_dict(*c4_reflection())))
    assert code == 0 and "|G|=2 invertible=2 fixed=0 harmonic=yes" in out
    code, out, _ = run(capsys, "info", "--format", "json", files("s.json", instance_to_dict(*star_swap())))
    d = json.loads(out)
    assert d["group_order"] == 2 and d["harmonic"] is False and len(d["fixed"]) == 1


def test_info_separate_action_file(capsys, files):
    X, G = c4_reflection()
    inst = instance_to_dict(X, G)
    code, out, _ = run(capsys, "info", files("g.json", inst["graph"]), "--action", files("a.json", inst["generators"]))
    assert code == 0 and "|G|=2" in out


def test_malformed_reversal(capsys, files):
    g = graph_to_dict(cycle(3))
    g["reversal"]["e1.0"] = "ghost"
    code, _, err = run(capsys, "info", files("bad.json", g))
    assert code == 2 and "ParseError" in err and "e1.0" in err


def test_non_involutory_reversal(capsys, files):
    g = graph_to_dict(cycle(3))
    g["reversal"]["e0.0"] = "e1.0"
    code, _, err = run(capsys, "info", files("bad.json", g))
    assert code == 2 and "NonInvolutoryReversal" in err


def test_invalid_json(capsys, files):
    code, _, err = run(capsys, "info", files("bad.json", '{"darts": [}'))
    assert code == 2 and "line 1" in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "info", str(tmp_path / "none.json"))
    assert code == 2


def test_quotient_variants(capsys, files):
    p = files("r.json", instance_to_dict(*c4_reflection()))
    code, out, _ = run(capsys, "quotient", p, "--variant", "tail")
    assert code == 0 and "V=2 E=1 T=2 genus=0" in out
    code, out, _ = run(capsys, "quotient", p, "--variant", "loop", "--format", "json")
    assert code == 0 and json.loads(out)["genus"] == 2
    code, _, err = run(capsys, "quotient", p, "--variant", "plain")
    assert code == 2 and "HasInvertibleEdges" in err


def test_quotient_needs_generators(capsys, files):
    code, _, err = run(capsys, "quotient", files("g.json", graph_to_dict(cycle(3))))
    assert code == 2 and "generators" in err


@pytest.mark.parametrize("variant", ["loop", "tail", "free"])
def test_quotient_json_round_trip(capsys, files, tmp_path, variant):
    out = tmp_path / f"{variant}.json"
    code, _, _ = run(capsys, "quotient", files("r.json", instance_to_dict(*c4_reflection())), "--variant", variant, "--format", "json", "-o", str(out))
    assert code == 0
    d = json.loads(out.read_text())
    Q = graph_from_dict(d["quotient"])
    assert len(Q.semi_edges) == len(d["quotient"]["semi_edges"])
    # the dump is also accepted as an input file
    code, text, _ = run(capsys, "info", str(out))
    assert code == 0 and text.startswith(f"V={len(Q.vertices)} ")


def test_verify_ok(capsys, files):
    code, out, _ = run(capsys, "verify", files("r.json", instance_to_dict(*c4_reflection())))
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert [ln.split()[0] for ln in lines[1:]] == ["T2_tail", "T3_free", "C4_harmonic", "T5_loop"]
    assert all(ln.split()[3] == "yes" for ln in lines[1:])


def test_verify_json(capsys, files):
    code, out, _ = run(capsys, "verify", "--format", "json", files("s.json", instance_to_dict(*star_swap())))
    reps = json.loads(out)
    assert code == 0 and [r["theorem"] for r in reps] == ["T1_plain", "T2_tail", "T3_free", "T5_loop"]


def test_verify_replay(capsys, files):
    X, G = c4_reflection()
    inst = files("r.json", instance_to_dict(X, G))
    good = [report_to_dict(r) for r in check_all(X, G)]
    code, _, _ = run(capsys, "verify", inst, "--replay", files("good.json", good))
    assert code == 0
    bad = json.loads(json.dumps(good))
    bad[0]["terms"]["inversion_term"] = 3
    code, out, _ = run(capsys, "verify", inst, "--replay", files("bad.json", bad))
    assert code == 1
    assert "inversion_term stored=3 computed=2" in out


def test_verify_corpus_env(capsys, tmp_path, monkeypatch):
    write_corpus(tmp_path / "c", generate_corpus(max_n=3, budget=4, random_count=1))
    monkeypatch.setenv("QG_CORPUS", str(tmp_path / "c"))
    code, out, _ = run(capsys, "verify")
    assert code == 0 and out.splitlines()[-1].endswith("0 failures")


def test_verify_without_input(capsys, monkeypatch):
    monkeypatch.delenv("QG_CORPUS", raising=False)
    code, _, err = run(capsys, "verify")
    assert code == 2 and "QG_CORPUS" in err


def test_subdivide(capsys, files):
    code, out, _ = run(capsys, "subdivide", "--format", "json", files("t.json", graph_to_dict(theta())))
    d = json.loads(out)
    assert code == 0 and len(d["vertices"]) == 5 and set(d["colors"].values()) == {"black", "white"}


def test_sample(capsys, files, tmp_path):
    p = files("c3.json", graph_to_dict(cycle(3)))
    code, out, _ = run(capsys, "sample", p, "--seed", "1", "--random", "0", "--out", str(tmp_path / "acts"))
    orders = [int(ln.split()[1]) for ln in out.splitlines()[1:]]
    assert code == 0 and orders == [1, 2, 2, 2, 3, 6]
    assert len(list((tmp_path / "acts").glob("*.json"))) == 6
    with pytest.raises(SystemExit):
        cli.main(["sample", p])


def test_cover(capsys, files):
    va = {"base": graph_to_dict(theta()), "group": {"cyclic": 2}, "voltage": {"a.0": 1, "b.0": 1, "c.0": 0}}
    code, out, _ = run(capsys, "cover", files("v.json", va))
    assert code == 0 and out.strip() == "V=4 E=6 genus=3 |G|=2"
    va["voltage"] = {"a.0": 0, "b.0": 0, "c.0": 0}
    code, _, err = run(capsys, "cover", files("v0.json", va))
    assert code == 2 and "DisconnectedCover" in err


def test_entry_point(tmp_path):
    p = tmp_path / "c4.json"
    p.write_text(dumps(graph_to_dict(cycle(4))))
    r = subprocess.run([sys.executable, "-m", "qgraph", "info", str(p)], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("V=4 E=4 T=0 genus=1 connected=yes")
