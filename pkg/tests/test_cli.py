from pathlib import Path

from mwist.cli import main
from mwist.graphs import format_graph, parse_graph, save_graph, VertexWeightedGraph


def run(*argv):
    return main(list(argv))


def test_gen_check_solve_verify_round_trip(tmp_path, capsys):
    inst = tmp_path / "a.graph"
    tree = tmp_path / "a.tree"
    assert run("gen", "--family", "line_graph", "--n", "8", "--m", "12",
               "--seed", "7", "--out", str(inst)) == 0
    assert run("check", str(inst)) == 0
    out = capsys.readouterr().out
    assert "claw_free: yes" in out
    assert run("solve", str(inst), "--algo", "auto", "--out", str(tree)) == 0
    assert run("verify", str(inst), str(tree)) == 0
    assert "OK:" in capsys.readouterr().out


def test_solve_all_algorithms(tmp_path):
    inst = tmp_path / "p.graph"
    save_graph(VertexWeightedGraph(3, [0, 5, 0], [(0, 1), (1, 2)]), inst)
    for algo in ("half", "exact", "auto"):
        out = tmp_path / f"{algo}.tree"
        assert run("solve", str(inst), "--algo", algo, "--out", str(out)) == 0
        assert run("verify", str(inst), str(out)) == 0


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("not a graph\n")
    assert run("solve", str(bad)) == 2
    disc = tmp_path / "disc.graph"
    disc.write_text("4 2\n1\n1\n1\n1\n0 1\n2 3\n")
    assert run("solve", str(disc)) == 3
    assert run("solve", str(tmp_path / "missing.graph")) == 2
    claw = tmp_path / "claw.graph"
    save_graph(VertexWeightedGraph(4, [1, 1, 1, 1], [(0, 1), (0, 2), (0, 3)]), claw)
    assert run("solve", str(claw), "--algo", "clawfree712") == 2
    err = capsys.readouterr().err
    assert "claw" in err and "half" in err


def test_verify_detects_tampering(tmp_path, capsys):
    inst = tmp_path / "i.graph"
    tree = tmp_path / "t.tree"
    save_graph(VertexWeightedGraph(4, [1, 5, 5, 1],
                                   [(0, 1), (1, 2), (2, 3), (0, 3)]), inst)
    assert run("solve", str(inst), "--algo", "half", "--out", str(tree)) == 0
    good = tree.read_text()
    # claim a higher weight
    tree.write_text(good.replace("# w_tree", "# w_tree 999\n# was", 1))
    assert run("verify", str(inst), str(tree)) == 4
    # break the tree itself
    lines = [l for l in good.splitlines() if not l.startswith("#")]
    tree.write_text("\n".join(lines[:-1]) + "\n")
    assert run("verify", str(inst), str(tree)) == 4
    assert "invalid-tree" in capsys.readouterr().err


def test_auto_prefers_clawfree(tmp_path):
    inst = tmp_path / "l.graph"
    assert run("gen", "--family", "line_graph", "--n", "7", "--m", "10",
               "--seed", "3", "--out", str(inst)) == 0
    tree = tmp_path / "l.tree"
    assert run("solve", str(inst), "--algo", "auto", "--out", str(tree)) == 0
    text = tree.read_text()
    assert "algorithm clawfree712" in text or "algorithm exact-fallback" in text


def test_bench_over_directory(tmp_path):
    d = tmp_path / "instances"
    d.mkdir()
    for s in range(3):
        assert run("gen", "--family", "random_gnm", "--n", "7", "--m", "10",
                   "--seed", str(s), "--out", str(d / f"i{s}.graph")) == 0
    csv_path = tmp_path / "out.csv"
    assert run("bench", str(d), "--oracle", "--out", str(csv_path)) == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("id,n,m,claw_free")
    assert len(lines) == 4


def test_gen_to_stdout(capsys):
    assert run("gen", "--family", "path", "--n", "4", "--seed", "0") == 0
    g = parse_graph(capsys.readouterr().out)
    assert g.n == 4 and g.m == 3
