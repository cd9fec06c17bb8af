import io
import json
import subprocess
import sys

import numpy as np
import pytest

from hamsym.cli import run_command
from hamsym.constructions import frucht_graph
from hamsym.graph import decode_graph6, encode_graph6
from hamsym.groups import Q8


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status, report = run_command(list(argv), stdout=out, stderr=err)
    return status, report, out.getvalue(), err.getvalue()


def test_embed_example():
    status, report, text, _ = run("embed", "--group", "q8", "--sym", "7")
    assert status == 0 and report["embeddable"] is False
    assert json.loads(text)["embeddable"] is False


def test_mu_example():
    status, report, _, _ = run("mu", "--group", "prod(q8,e2^1)", "--max", "12")
    assert status == 0 and report["mu"] == 10


def test_fix_example():
    g6 = encode_graph6(frucht_graph(Q8()))
    status, report, _, _ = run("fix", g6)
    assert status == 0 and report["fixing_number"] == 1 and report["status"] == "certified"


def test_aut_and_canon():
    status, report, _, _ = run("aut", "C~")
    assert status == 0 and report["order"] == 24
    _, a, _, _ = run("canon", "CF")
    _, b, _, _ = run("canon", encode_graph6(decode_graph6("CF").relabel([3, 2, 1, 0])))
    assert a["canonical_graph6"] == b["canonical_graph6"]


def test_cayley_and_frucht():
    status, report, _, _ = run("cayley", "--group", "q8")
    assert status == 0 and report["n"] == 8 and report["colors"] == 2 and len(report["arcs"]) == 16
    status, report, _, _ = run("frucht", "--group", "c3")
    assert status == 0 and report["status"] == "constructed-and-verified"
    assert decode_graph6(report["graph6"]).n == report["n"]


def test_orbits_and_witness():
    status, report, _, _ = run("orbits", "--group", "q8", "--degree", "8")
    assert status == 0 and sorted(report["actions"][0]["edge_orbit_sizes"]) == [4, 8, 8, 8]
    status, report, _, _ = run("witness", "--group", "q8", "--degree", "8")
    assert report["actions"][0]["gamma"] == "(1,3)(2,4)"


def test_realizable_and_verify(tmp_path):
    cert = tmp_path / "cert.json"
    status, report, _, _ = run("realizable", "--group", "q8", "--n", "8", "--cert", str(cert))
    assert status == 0 and report["outcome"] == "not_realizable" and report["status"] == "certified"
    status, report, _, _ = run("verify", str(cert))
    assert status == 0 and report["valid"] is True


def test_verify_rejects_flipped_union_table(tmp_path):
    cert = tmp_path / "c3.json"
    run("realizable", "--group", "c3", "--n", "6", "--cert", str(cert))
    doc = json.loads(cert.read_text())
    rng = np.random.default_rng(0)
    tables = [(i, a["evidence"]["table"]) for i, a in enumerate(doc["actions"])
              if a["evidence"]["kind"] == "table"]
    assert tables
    for _ in range(40):
        i, table = tables[int(rng.integers(len(tables)))]
        r = int(rng.integers(len(table)))
        col = int(rng.integers(2))
        bit = int(rng.integers(0, 6))
        bad = json.loads(json.dumps(doc))
        bad["actions"][i]["evidence"]["table"][r][col] ^= 1 << bit
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        status, report, _, _ = run("verify", str(path))
        assert status == 1 and report["valid"] is False


def test_alpha_example():
    status, report, _, _ = run("alpha", "--group", "c3", "--max", "9")
    assert status == 0 and report["alpha"] == 9 and report["alpha_certified"]


def test_findgraph_uses_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("HAMSYM_CACHE", str(tmp_path))
    _, first, _, _ = run("findgraph", "--group", "e2^2", "--n", "4")
    _, second, _, _ = run("findgraph", "--group", "e2^2", "--n", "4")
    assert first["found"] and first == second
    assert any(p.suffix == ".g6" for p in tmp_path.iterdir())
    _, miss, _, _ = run("findgraph", "--group", "c2", "--n", "1", "--no-cache")
    assert miss["found"] is False and miss["status"] == "not-found"


def test_fixfamily():
    status, report, _, _ = run("fixfamily", "--group", "prod(q8,e2^1)")
    assert status == 0 and report["fixing_numbers"] == [1, 2]


@pytest.mark.parametrize("argv,code", [
    (["embed", "--group", "q9", "--sym", "3"], 2),
    (["aut", "notgraph6!"], 2),
    (["realizable", "--group", "q8", "--n", "13"], 3),
    (["fixfamily", "--group", "e2^2"], 2),
    (["verify", "/nonexistent/cert.json"], 2),
    (["frobnicate"], 2),
])
def test_exit_codes(argv, code):
    status, _, _, err = run(*argv)
    assert status == code


def test_reports_are_byte_identical_across_threads():
    a = run("realizable", "--group", "prod(q8,e2^1)", "--n", "10", "--threads", "1")[2]
    b = run("realizable", "--group", "prod(q8,e2^1)", "--n", "10", "--threads", "4")[2]
    assert a == b
    c = run("findgraph", "--group", "c3", "--n", "9", "--no-cache", "--threads", "1")[2]
    d = run("findgraph", "--group", "c3", "--n", "9", "--no-cache", "--threads", "3")[2]
    assert c == d


def test_pretty_output():
    _, _, text, _ = run("orbits", "--group", "c2", "--degree", "2", "--pretty")
    assert "actions:" in text and not text.startswith("{")


def test_module_entry_point_reads_stdin():
    proc = subprocess.run([sys.executable, "-m", "hamsym", "aut", "-"], input="A_\n",
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == 2
