import json
import subprocess
import sys

from conftest import FIXTURE_DIR


def run_cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "netid", *args],
        capture_output=True,
        text=True,
    )


def fixture(name: str) -> str:
    return str(FIXTURE_DIR / f"{name}.json")


def test_analyze_exit_codes():
    assert run_cli("analyze", fixture("fig1")).returncode == 1
    assert run_cli("analyze", fixture("fig6")).returncode == 0


def test_analyze_missing_file():
    result = run_cli("analyze", "does-not-exist.json")
    assert result.returncode == 2
    assert "error:" in result.stderr


def test_analyze_invalid_topology(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices":2,"edges":[[1,1]],"excited":[1],"measured":[2]}')
    result = run_cli("analyze", str(bad))
    assert result.returncode == 2
    assert "self-loop" in result.stderr


def test_analyze_rejects_bad_options():
    assert run_cli("analyze", fixture("fig1"), "--trials", "0").returncode == 2
    assert run_cli("analyze", fixture("fig1"), "--max-subset", "1").returncode == 2


def test_analyze_json_report_shape():
    result = run_cli("analyze", fixture("fig3"), "--json")
    report = json.loads(result.stdout)
    assert report["schema_version"] == 1
    assert report["verdict"] == "NotIdentifiable"
    assert [c["id"] for c in report["conditions"]] == [
        "SignalCover",
        "NeighbourhoodRank",
        "NaiveCount",
        "ReducedFunctionCount",
        "BipartiteEdgeCount",
    ]
    assert [r["entry"] for r in report["elimination_log"]] == [
        [4, 1],
        [4, 2],
        [5, 1],
        [5, 2],
    ]
    assert len(report["edge_removal_log"]) == 4
    assert report["circular"]["identifiable"] is False


def test_analyze_json_byte_identical():
    a = run_cli("analyze", fixture("fig2"), "--json", "--seed", "42")
    b = run_cli("analyze", fixture("fig2"), "--json", "--seed", "42")
    assert a.stdout == b.stdout


def test_circular_exit_codes():
    assert run_cli("circular", fixture("fig3")).returncode == 1
    assert run_cli("circular", fixture("fig6")).returncode == 0
    result = run_cli("circular", fixture("fig1"))
    assert result.returncode == 2
    assert "degree one" in result.stderr


def test_circular_recover_reports_error_bound():
    result = run_cli("circular", fixture("fig6"), "--recover")
    assert result.returncode == 0
    line = next(
        l for l in result.stdout.splitlines() if "recovery error" in l.lower()
    )
    value = float(line.split(":")[1])
    assert value <= 1e-6


def test_circular_json_payload():
    result = run_cli("circular", fixture("fig6"), "--json", "--recover")
    payload = json.loads(result.stdout)
    assert payload["identifiable"] is True
    assert payload["condition"] == "TwoDisjointPaths"
    assert payload["max_relative_recovery_error"] <= 1e-6


def test_bipartite_dot_output(tmp_path):
    out = tmp_path / "graph.dot"
    result = run_cli("bipartite", fixture("fig3"), "--dot", str(out))
    assert result.returncode == 0
    dot = out.read_text()
    assert dot.count("->") == 9
    assert "style=dashed" not in dot


def test_bipartite_dot_with_removals(tmp_path):
    out = tmp_path / "graph.dot"
    result = run_cli(
        "bipartite", fixture("fig3"), "--dot", str(out), "--with-removals"
    )
    assert result.returncode == 0
    assert out.read_text().count("style=dashed") == 4


def test_bipartite_unwritable_path():
    result = run_cli("bipartite", fixture("fig3"), "--dot", "/missing-dir/out.dot")
    assert result.returncode == 2


def test_bipartite_empty_graph(tmp_path):
    topology = tmp_path / "empty.json"
    topology.write_text(
        '{"vertices":4,"edges":[],"excited":[1,2],"measured":[3,4]}'
    )
    out = tmp_path / "empty.dot"
    assert run_cli("bipartite", str(topology), "--dot", str(out)).returncode == 0
    assert "->" not in out.read_text()


def test_bipartite_figure(tmp_path):
    out = tmp_path / "graph.png"
    result = run_cli(
        "bipartite", fixture("fig3"), "--fig", str(out), "--with-removals"
    )
    assert result.returncode == 0
    assert out.stat().st_size > 0


def test_analyze_figures_directory(tmp_path):
    figdir = tmp_path / "figs"
    result = run_cli("analyze", fixture("fig6"), "--figures", str(figdir))
    assert result.returncode == 0
    assert (figdir / "fig6_network.png").stat().st_size > 0
    assert (figdir / "fig6_bipartite.png").stat().st_size > 0
