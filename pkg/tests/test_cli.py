import json
import subprocess
import sys

import networkx as nx

from qmblocks.cli import main, parse_seeds

from conftest import GOLDEN


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decompose_golden(capsys):
    code, out, _ = run(capsys, "decompose", "--input", str(GOLDEN))
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"ground", "partitions", "blocks", "extra_vertices", "report"}
    assert len(doc["blocks"]) == 8
    big = next(b for b in doc["blocks"] if b["partitions"] == [1, 2, 3, 8])
    assert big["X"] == ["s7", "s8"] and len(big["S"]) == 3
    assert sorted(big["directions"]) == big["S"]


def test_decompose_is_byte_stable(tmp_path):
    outs = []
    for k in range(2):
        target = tmp_path / f"out{k}.json"
        assert main(["decompose", "-i", str(GOLDEN), "-o", str(target)]) == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]


def test_decompose_constant_columns(tmp_path, capsys):
    path = tmp_path / "flat.fa"
    path.write_text(">a\nAAA\n>b\nAAA\n")
    code, out, _ = run(capsys, "decompose", "-i", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["blocks"] == [] and doc["report"]["warnings"]


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.fa"
    path.write_text(">a\nACGT\n>b\nAC\n")
    code, _, err = run(capsys, "stats", "-i", str(path))
    assert code == 2 and "line 3" in err
    assert run(capsys, "decompose", "-i", str(tmp_path / "missing.fa"))[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "decompose")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "oracle", "--budget", "0", "-i", str(GOLDEN))[0] == 1
    assert run(capsys, "oracle", "--seeds", "5..2")[0] == 1


def test_parse_seeds():
    assert parse_seeds("0..99") == range(100)
    assert parse_seeds("7") == range(7, 8)


def test_oracle_golden_and_single_partition(tmp_path, capsys):
    assert run(capsys, "oracle", "-i", str(GOLDEN))[:2] == (0, "MATCH\n")
    path = tmp_path / "one.fa"
    path.write_text(">a\nA\n>b\nC\n>c\nC\n")
    assert run(capsys, "oracle", "-i", str(path))[:2] == (0, "MATCH\n")


def test_oracle_budget_exit_code(capsys):
    assert run(capsys, "oracle", "-i", str(GOLDEN), "--budget", "5")[0] == 3


def test_oracle_fuzz_mode(capsys):
    code, out, _ = run(capsys, "oracle", "--seeds", "0..19")
    assert code == 0 and out.strip().endswith("20/20 MATCH")


def test_export_nsc(capsys):
    code, out, _ = run(capsys, "export-dot", "--what", "nsc", "-i", str(GOLDEN))
    assert code == 0
    edges = {tuple(sorted(int(t.strip(' ";')) for t in line.split("--"))) for line in out.splitlines() if "--" in line}
    assert (3, 8) in edges
    g = nx.Graph(list(edges))
    g.add_nodes_from(range(1, 13))
    assert {frozenset(c) for c in nx.connected_components(g)} == {
        frozenset({1, 2, 3, 8}),
        frozenset({5, 6}),
        *(frozenset({i}) for i in (4, 7, 9, 10, 11, 12)),
    }


def test_export_nsc_empty(tmp_path, capsys):
    path = tmp_path / "flat.fa"
    path.write_text(">a\nAA\n>b\nAA\n")
    code, out, _ = run(capsys, "export-dot", "-i", str(path))
    assert code == 0 and out == "graph nsc {\n}\n"


def test_export_qmgraph_product(tmp_path, capsys):
    path = tmp_path / "prod.fa"
    # columns AABB and ABCA: 2 and 3 parts, not strongly compatible
    path.write_text(">s1\nAA\n>s2\nAB\n>s3\nBC\n>s4\nBA\n")
    code, out, _ = run(capsys, "export-dot", "--what", "qmgraph", "-i", str(path))
    lines = out.splitlines()[1:-1]
    assert code == 0
    assert sum("--" not in line for line in lines) == 6
    assert sum("--" in line for line in lines) == 9
    assert run(capsys, "export-dot", "--what", "qmgraph", "--budget", "3", "-i", str(path))[0] == 3


def test_stats(tmp_path, capsys):
    code, out, _ = run(capsys, "stats", "-i", str(GOLDEN))
    fields = dict(line.split("=", 1) for line in out.splitlines() if not line.startswith("block "))
    assert code == 0
    assert (fields["n"], fields["m"], fields["blocks"], fields["bound"]) == ("10", "12", "8", "25")
    path = tmp_path / "two.fa"
    path.write_text(">a\nA\n>b\nC\n")
    out = run(capsys, "stats", "-i", str(path))[1]
    assert "blocks=1" in out.splitlines() and "bound=1" in out.splitlines()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qmblocks.cli", "stats", "-i", str(GOLDEN)], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "blocks=8" in proc.stdout
