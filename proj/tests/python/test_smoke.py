import os
import subprocess
from pathlib import Path

import numpy as np
import pytest

import ricci

ROOT = Path(__file__).resolve().parents[2]
MUTAG = ROOT / "tests" / "data" / "MUTAG"
CLI = os.environ.get("RICCI_CLI")


def run_cli(*args):
    return subprocess.run([CLI, *args], check=True, capture_output=True, text=True).stdout


def generated_edges(name):
    lines = [l for l in run_cli("generate", "--generate", name).splitlines() if l and not l.startswith("#")]
    edges = np.array([[int(x) for x in l.split()] for l in lines], dtype=np.int64)
    return edges, int(edges.max()) + 1


def mutag_graph0():
    indicator = np.loadtxt(MUTAG / "MUTAG_graph_indicator.txt", dtype=np.int64)
    pairs = np.loadtxt(MUTAG / "MUTAG_A.txt", delimiter=",", dtype=np.int64)
    nodes = np.flatnonzero(indicator == 1)
    keep = np.isin(pairs[:, 0] - 1, nodes)
    return pairs[keep] - 1 - nodes[0], len(nodes)


def cli_curvature(edges, num_nodes, tmp_path, method="orc-exact"):
    path = tmp_path / "g.edges"
    path.write_text(f"# num_nodes: {num_nodes}\n" + "".join(f"{u} {v}\n" for u, v in edges))
    rows = run_cli("curvature", "--graph", str(path), "--method", method).splitlines()[1:]
    return np.array([[float(x) for x in r.split(",")[:3]] for r in rows])


def test_version_matches_core():
    assert isinstance(ricci.__version__, str) and ricci.__version__
    if CLI:
        assert run_cli("--version").strip().endswith(ricci.__version__)


def test_rook_curvature_is_one_third():
    edges = [[a, b] for a in range(16) for b in range(a + 1, 16) if a // 4 == b // 4 or a % 4 == b % 4]
    kappa, order = ricci.curvature(edges, 16)
    assert kappa.shape == (48,) and order.shape == (48, 2)
    assert np.allclose(kappa, 1 / 3, atol=1e-12)


def test_triangle_frc_is_zero():
    kappa, _ = ricci.curvature([[0, 1], [1, 2], [0, 2]], 3, method="frc")
    assert np.array_equal(kappa, np.zeros(3))


def test_encode_widths_and_row_order():
    cycle = [[i, (i + 1) % 6] for i in range(6)]
    x, manifest = ricci.encode(cycle, 6, {"lcp": "summary"})
    assert x.shape == (6, 5) and manifest["cols"] == 5
    x, manifest = ricci.encode(cycle, 6, {"lcp": "summary", "rwpe": 16})
    assert x.shape == (6, 21)
    assert [g["name"] for g in manifest["groups"]] == ["lcp", "rwpe"]
    star = [[0, i] for i in range(1, 5)]
    x, _ = ricci.encode(star, 5, {"ldp": True})
    assert x[0, 0] == 4 and np.all(x[1:, 0] == 1)


def test_rewire_zero_iterations_is_identity():
    edges = np.array([[0, 1], [1, 2], [2, 3]])
    out, plan = ricci.rewire(edges, 4, iters=0)
    assert np.array_equal(out, edges) and plan == []


def test_rewire_barbell_adds_cross_edge():
    clique = lambda off: [[off + a, off + b] for a in range(5) for b in range(a + 1, 5)]
    edges = clique(0) + clique(5) + [[4, 5]]
    out, plan = ricci.rewire(edges, 10, iters=1, k_add=1, k_remove=0)
    assert len(out) == len(edges) + 1
    assert plan[0]["op"] == "add" and plan[0]["trigger"] == (4, 5)


def test_invalid_input_raises_value_error():
    with pytest.raises(ValueError):
        ricci.curvature([[0, 5]], 3)
    with pytest.raises(ValueError):
        ricci.curvature([[0, 1]], 2, method="magic")
    with pytest.raises(ValueError):
        ricci.encode([[0, 1]], 2, {})
    with pytest.raises(ValueError):
        ricci.encode([[0, 1]], 2, {"bogus": 1})


def test_graph_handles_do_not_leak():
    psutil = pytest.importorskip("psutil")
    g = ricci.Graph(np.array([[0, 1]]), 2)
    assert g.num_nodes == 2 and g.num_edges == 1
    edges = np.array([[i, i + 1] for i in range(200)])

    def churn():
        for _ in range(10_000):
            ricci.Graph(edges, 201)

    churn()
    before = psutil.Process().memory_info().rss
    churn()
    assert psutil.Process().memory_info().rss - before < 4 * 2**20


@pytest.mark.skipif(CLI is None, reason="CLI not available")
@pytest.mark.parametrize("name", ["rook4x4", "shrikhande", "complete(5)", "mutag0"])
def test_parity_with_cli(name, tmp_path):
    edges, n = mutag_graph0() if name == "mutag0" else generated_edges(name)
    for method in ("orc-exact", "orc-idleness", "afrc4"):
        kappa, order = ricci.curvature(edges, n, method=method)
        ref = cli_curvature(edges, n, tmp_path, method)
        assert np.array_equal(order, ref[:, :2].astype(np.int64))
        assert np.max(np.abs(kappa - ref[:, 2])) <= 1e-12


def test_sinkhorn_returns_convergence_flags():
    triangle = [[0, 1], [1, 2], [0, 2]]
    _, _, converged = ricci.curvature(triangle, 3, method="orc-sinkhorn", eps=1.0)
    assert converged.dtype == np.bool_ and converged.shape == (3,) and converged.all()
    kappa, _, _ = ricci.curvature(triangle, 3, method="orc-sinkhorn")
    exact, _ = ricci.curvature(triangle, 3)
    assert np.max(np.abs(kappa - exact)) <= 0.05
