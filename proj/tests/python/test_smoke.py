import math

import pytest

import tuzasim as ts


def complete(n):
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def test_ode_limits():
    y = ts.integrate("y", 5.0)
    assert y(0.0) == 0.0
    assert ts.zeta() - 1e-4 <= y(5.0) <= ts.zeta()
    assert abs(ts.integrate("a", 1.0)(1.0) - 0.58259) < 1e-4
    with pytest.raises(ValueError):
        ts.integrate("w", 1.0)
    q, r, s = ts.master_equation_residual(ts.integrate("y", 3.0), 1.0, 2, 1)
    assert max(q, r, s) < 1e-6


def test_closed_forms():
    f = ts.closed_forms(0.5)
    assert math.isclose(f["r"][0], math.exp(-0.25))
    assert math.isclose(f["q00"], math.exp(-0.5))
    assert math.isclose(f["s"][0], 0.5 * math.exp(-0.25))


def test_packing_process():
    out = ts.simulate_packing(200, 3000, 7)
    assert out["unmatched_triangles"] == 0
    assert out["unmatched_edges"] + 3 * len(out["triangles"]) == 3000
    assert len(out["revealed"]) == 3000
    assert ts.simulate_packing(200, 3000, 7) == out
    assert ts.simulate_packing(3, 3, 1)["triangles"] == [(0, 1, 2)]


def test_packing_trajectory():
    snaps = ts.packing_trajectory(400, 8000, 3, checkpoints=4, samples=16)
    assert [s["step"] for s in snaps] == [0, 2000, 4000, 6000, 8000]
    families = {st["family"] for st in snaps[-1]["stats"]}
    assert {"dU", "R", "S", "Q"} <= families


def test_triangle_free_process():
    out = ts.simulate_tfp(300, 4000, 2)
    assert out["accepted"] + len(out["cover"]) == 4000
    assert ts.open_pairs_after(50, 0, 1) == 50 * 49 // 2
    assert ts.triangle_free_cover(3, complete(3)) == [(1, 2)]


def test_bounds():
    assert ts.l_nu_star(1.28) >= 0.3205
    value, branch = ts.u_tau(3.0)
    assert branch == "maxcut" and math.isclose(value, 1.5)
    report = ts.appendix_report(1e-3)
    assert report["all_pass"]
    assert report["g_1.28"] <= 1.9969
    assert report["h_1.29"] <= 1.987


def test_exact_oracles():
    assert ts.exact_nu(5, complete(5))[0] == 2
    assert ts.exact_tau(5, complete(5))[0] == 4
    assert ts.verify_tuza(4, complete(4)) == (1, 2, True)
    assert math.isclose(ts.fractional_nu(4, complete(4)), 2.0)
    assert len(ts.max_cut_cover(4, complete(4))) == 2
    assert ts.to_graph6(4, complete(4)) == "C~"
    assert ts.parse_graph6("C~") == (4, complete(4))
    summary = ts.verify_all_graphs(5)
    assert summary["graphs"] == 1024 and summary["violations"] == 0
    with pytest.raises(ValueError):
        ts.exact_nu(3, [(0, 0)])


def test_random_edges_and_seeds():
    assert ts.random_edges(10, 5, 1) == ts.random_edges(10, 5, 1)
    assert ts.derive_seed(1, 0) != ts.derive_seed(1, 1)
    packing = ts.greedy_packing(4, complete(4))
    assert len(packing) == 1
