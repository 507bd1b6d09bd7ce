import json
import math

import pytest

import mmbackhaul as mb


def two_parallel_links(demand=1e9):
    nodes = [mb.Node(1, 0, 0), mb.Node(2, 10, 0), mb.Node(3, 0, 50), mb.Node(4, 10, 50)]
    flows = [mb.Flow(1, 1, 2, demand), mb.Flow(2, 3, 4, demand)]
    return mb.Scenario(nodes, flows)


def test_antenna_and_theta_condition():
    pat = mb.AntennaPattern.from_beamwidth(30.0)
    assert pat.peak_gain_db == pytest.approx(15.90997743720997, abs=1e-9)
    assert mb.antenna_gain_db(15.0, pat) == pytest.approx(pat.peak_gain_db - 3.01, abs=1e-9)
    assert mb.theta_condition(2e9, mb.SystemParams()) == 6418


def test_schemes_and_metrics():
    p = mb.SystemParams()
    p.cta_count = 200
    sc = two_parallel_links()
    graph = mb.build_graph(sc, p)
    assert graph.vertices == [1, 2]
    assert graph.edges() == []
    assert "2 vertices" in graph.edge_list()

    s = mb.run_schemes(sc, p, reference="demand")
    assert [pr.flows for pr in s.proposed.pairings] == [[1, 2]]
    assert s.proposed.total_ctas() == 200
    tdma = mb.evaluate(s.tdma, s.served, p)
    prop = mb.evaluate(s.proposed, s.served, p)
    ctfp = mb.evaluate(s.ctfp, s.served, p)
    assert prop.total_energy_j < tdma.total_energy_j <= ctfp.total_energy_j
    ok, summary = mb.check_feasible(s.proposed, s.served, p)
    assert ok, summary
    doc = json.loads(s.proposed.to_json())
    assert doc["scheme"] == "proposed"


def test_power_control_pieces():
    assert mb.apportion_ctas([1.0, 1.0, 1.0], 20) == [6, 6, 8]
    with pytest.raises(mb.DegeneratePairingError):
        mb.apportion_ctas([1.0, 1000.0], 10)
    with pytest.raises(mb.Error):
        mb.Scenario([mb.Node(1, 0, 0)], [mb.Flow(1, 1, 1, 1e9)])


def test_oracle_small():
    p = mb.SystemParams()
    p.cta_count = 8
    s = mb.run_schemes(two_parallel_links(), p)
    res = mb.solve_exact(s.served, p)
    assert res.feasible
    assert res.energy_j <= mb.evaluate(s.proposed, s.served, p).total_energy_j * (1 + 1e-12)


def test_config_and_experiment():
    text = mb.parse_config("trials = 2\nflow_count = 4\n")
    assert "trials = 2" in text
    with pytest.raises(mb.ConfigError):
        mb.parse_config("nonsense = 1\n")
    sc = mb.generate_scenario("flow_count = 4\n", 0)
    assert len(sc.flows) == 4
    csv_a = mb.run_experiment("trials = 2\nflow_count = 4\n", threads=2)
    csv_b = mb.run_experiment("trials = 2\nflow_count = 4\n")
    assert csv_a == csv_b
    lines = csv_a.strip().splitlines()
    assert lines[0].startswith("sweep_var,")
    assert len(lines) == 1 + 2 * 3 + 3
    assert all(math.isfinite(float(row.split(",")[4])) for row in lines[1:])
