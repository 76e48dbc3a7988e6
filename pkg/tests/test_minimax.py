from fractions import Fraction as F

import numpy as np
import pytest

from oracles import all_spanning_trees, broadcast_highs, m2m_highs
from wsnlife.channel import ChannelParams, InterferenceSet
from wsnlife.errors import InfeasibleError
from wsnlife.minimax import (MinimaxLP, broadcast_lp, evaluate_concurrent_schedule, gupta_kumar_reduction,
                             m2m_lp, random_broadcast_flow, random_m2m_flow, random_slots, solve_minimax_lp)
from wsnlife.network import GainSpec, Network, build_line_network, lemma2_trees

G2 = GainSpec.power_law(2)
P = ChannelParams(1.0, 1.0)


def test_forced_assignment():
    lp = MinimaxLP(["x"], [[1]], ["n"], [[1]], [1])
    assert solve_minimax_lp(lp, exact=True).z == 1


def test_no_constraints():
    lp = MinimaxLP(["x"], np.zeros((0, 1)), [])
    assert solve_minimax_lp(lp).z == 0


def test_m2m_lp_n2():
    s, rep = m2m_lp(build_line_network(2), G2, [1, 1], 1, 1, exact=True)
    assert rep.max_energy == F(7, 4)
    assert rep.per_node_energy[0] == 0


def test_m2m_lp_n3_matches_highs():
    _, rep = m2m_lp(build_line_network(3), G2, [1, 1, 1], 1, 1, exact=True)
    assert rep.max_energy == F(23, 9)
    assert float(rep.max_energy) == pytest.approx(m2m_highs(3, [1, 1, 1]), rel=1e-9)


def test_m2m_lp_zero_data():
    s, rep = m2m_lp(build_line_network(3), G2, [0, 0, 0], 1, 1)
    assert rep.max_energy == 0 and s.times == {}


def test_m2m_lp_without_collector():
    with pytest.raises(InfeasibleError):
        m2m_lp(build_line_network(3, with_collector=False), G2, [1, 1, 1], 1, 1)


def test_m2m_lp_flow_conservation():
    net = build_line_network(4)
    Q = [0.3, 2.0, 0.7, 1.1]
    s, _ = m2m_lp(net, GainSpec.power_law(3), Q, 2.0, 1.5)
    for i in net.sensors:
        out = sum(s.data(i, j) for j in net.nodes if j != i)
        inflow = sum(s.data(j, i) for j in net.sensors if j != i)
        assert out - inflow == pytest.approx(Q[i - 1], abs=1e-9)


@pytest.mark.parametrize("Q", [[1, 0, 9], [2, 1, 1, 3], [5, 0, 0]])
def test_m2m_lp_nonuniform_matches_highs(Q):
    _, rep = m2m_lp(build_line_network(len(Q)), G2, Q, 1, 1)
    assert rep.max_energy == pytest.approx(m2m_highs(len(Q), Q), rel=1e-9)


def test_m2m_lp_planar_network():
    net = Network({0: (0.0, 0.0), 1: (1.0, 0.0), 2: (1.0, 1.0), 3: (0.0, 2.0)}, frozenset({0}))
    s, rep = m2m_lp(net, G2, [1, 1, 1], 1, 1)
    assert rep.max_energy > 0
    assert sum(s.data(i, 0) for i in net.sensors) == pytest.approx(3)


def test_broadcast_lp_values():
    _, rep = broadcast_lp(build_line_network(3, False), G2, 2, 1, 1, 1, exact=True)
    assert rep.max_energy == F(4, 3)
    plan, rep = broadcast_lp(build_line_network(4, False), G2, 2, 1, 1, 1, exact=True)
    assert rep.max_energy == F(81, 58)
    assert float(rep.max_energy) == pytest.approx(broadcast_highs(4, 2, all_spanning_trees([1, 2, 3, 4], 2)))


def test_broadcast_lp_zero_data_and_no_trees():
    _, rep = broadcast_lp(build_line_network(3, False), G2, 2, 0, 1, 1)
    assert rep.max_energy == 0
    with pytest.raises(InfeasibleError):
        broadcast_lp(build_line_network(3, False), G2, 2, 1, 1, 1, trees=[])


def test_broadcast_lp_restricted_trees():
    net = build_line_network(5, False)
    trees = lemma2_trees(5, 3)
    plan, rep = broadcast_lp(net, G2, 3, 1, 1, 1, trees=trees)
    ref = broadcast_highs(5, 3, [list(t.edges) for t in trees])
    assert rep.max_energy == pytest.approx(ref, rel=1e-9)
    for j in (1, 2, 4, 5):
        assert plan.delivered(j) == pytest.approx(1.0, abs=1e-9)


def test_concurrent_single_link():
    net = build_line_network(2)
    rep, total = evaluate_concurrent_schedule(net, G2, P, [{(2, 0): 1.0}])
    assert total == 1.0
    assert rep.per_node_energy[2] == 4.0


def test_concurrent_vs_sequential():
    net = build_line_network(3)
    links = {(1, 0): 1.0, (3, 2): 1.0}
    seq, _ = evaluate_concurrent_schedule(net, G2, P, [{(1, 0): 1.0}, {(3, 2): 1.0}])
    conc, _ = evaluate_concurrent_schedule(net, G2, P, [links])
    assert conc.max_energy > seq.max_energy


def test_concurrent_empty():
    rep, total = evaluate_concurrent_schedule(build_line_network(2), G2, P, [])
    assert rep.max_energy == 0 and total == 0


def test_concurrent_rejects_invalid_slot():
    from wsnlife.errors import InterferenceSetError
    with pytest.raises(InterferenceSetError):
        evaluate_concurrent_schedule(build_line_network(3), G2, P, [{(1, 0): 1.0, (2, 0): 1.0}])


def test_random_flows_are_valid():
    rng = np.random.default_rng(0)
    net = build_line_network(4)
    flow = random_m2m_flow(net, [1, 1, 1, 1], rng)
    for i in net.sensors:
        out = sum(q for (a, _), q in flow.items() if a == i)
        inflow = sum(q for (_, b), q in flow.items() if b == i)
        assert out - inflow == pytest.approx(1.0)
    bflow = random_broadcast_flow(build_line_network(4, False), 2, 1.0, rng)
    for j in (1, 3, 4):
        assert sum(q for (_, b), q in bflow.items() if b == j) == pytest.approx(1.0)
    slots = random_slots(flow, rng)
    assert sorted(link for s in slots for link in s) == sorted(flow)
    for s in slots:
        InterferenceSet(frozenset(s))


def test_gupta_kumar_reduction_small_snr():
    net = Network({n: (10.0 * n,) for n in range(4)}, frozenset({0}))
    out = gupta_kumar_reduction(net, G2, P, [1, 1, 1])
    assert out["x_max"] == pytest.approx(0.01)
    assert out["gap"] < 0.01


def test_closed_form_is_not_optimal_for_mostly_linear_mixture():
    """A skip link (3, 1) beats the direct/neighbour schedule when the gain is nearly linear."""
    from oracles import balanced_m2m
    from wsnlife.closed_form import node_energies_m2m, solve_m2m_line

    g = GainSpec((F(9, 10), F(1, 10)), (1, 3))
    net = build_line_network(3)
    cf = node_energies_m2m(solve_m2m_line(3, g, [1, 1, 1], 1, exact=True), net, g, 1).max_energy
    assert cf == balanced_m2m(3, [1, 1, 1], (0.9, 0.1), (1, 3))[1] == F(271, 117)
    s, rep = m2m_lp(net, g, [1, 1, 1], 1, 1, exact=True)
    assert rep.max_energy == F(99, 43)
    assert s.times[(3, 1)] > 0
    assert float(rep.max_energy) == pytest.approx(m2m_highs(3, [1, 1, 1], (0.9, 0.1), (1, 3)), rel=1e-9)


def test_solver_both_flags_the_suboptimal_closed_form(tmp_path):
    from wsnlife.cli import main

    path = tmp_path / "mix.toml"
    path.write_text('[network]\nN = 3\n[gain]\nlambdas = [0.9, 0.1]\nexponents = [1, 3]\n'
                    '[service]\ntype = "m2m"\nQ = 1\n[solver]\nexact = true\n')
    assert main(["run", str(path)]) == 3
