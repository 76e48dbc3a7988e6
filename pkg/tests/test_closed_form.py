from fractions import Fraction as F

import pytest

from oracles import balanced_broadcast, balanced_m2m, broadcast_highs, m2m_highs
from wsnlife.closed_form import (UNBOUNDED, BroadcastPlan, EnergyReport, LinkSchedule, lifetime_cycles,
                                 node_energies_broadcast, node_energies_m2m, rescale_distances,
                                 solve_broadcast_line, solve_m2m_line)
from wsnlife.errors import (ClosedFormInapplicableError, ConsistencyError, DomainError, InvalidSizeError,
                            NotScaleInvariantError)
from wsnlife.network import GainSpec, build_line_network, chain_tree, lemma2_trees

G2 = GainSpec.power_law(2)


def test_m2m_n2_values():
    s = solve_m2m_line(2, G2, [1, 1], 1)
    assert s.times == pytest.approx({(1, 0): 1.75, (2, 0): 0.25, (2, 1): 0.75}, rel=1e-15)
    assert s.times == pytest.approx(balanced_m2m(2, [1, 1])[0], rel=1e-15)


def test_m2m_n3_exact():
    s = solve_m2m_line(3, G2, [1, 1, 1], 1, exact=True)
    assert s.times == {(1, 0): F(23, 9), (2, 0): F(1, 4), (3, 0): F(7, 36), (2, 1): F(14, 9), (3, 2): F(29, 36)}
    assert s.times == balanced_m2m(3, [1, 1, 1])[0]


@pytest.mark.parametrize("N", [2, 3, 4, 5])
@pytest.mark.parametrize("lambdas, exponents", [((1,), (1,)), ((1,), (3,)), ((F(1, 2), F(1, 2)), (2, 4))])
def test_m2m_matches_balanced_oracle(N, lambdas, exponents):
    g = GainSpec(lambdas, exponents)
    s = solve_m2m_line(N, g, [1] * N, 1, exact=True)
    times, z = balanced_m2m(N, [1] * N, lambdas, exponents)
    assert s.times == {k: v for k, v in times.items()}
    rep = node_energies_m2m(s, build_line_network(N), g.exact(), 1)
    assert rep.max_energy == z


def test_m2m_zero_data():
    s = solve_m2m_line(2, G2, [0, 0], 1)
    assert all(t == 0 for t in s.times.values())


def test_m2m_single_sensor():
    s = solve_m2m_line(1, G2, [3.0], 2.0)
    assert s.times == {(1, 0): 1.5}


def test_m2m_inapplicable_profile():
    with pytest.raises(ClosedFormInapplicableError):
        solve_m2m_line(3, G2, [5, 0, 0], 1)


def test_m2m_rejects_bad_input():
    with pytest.raises(InvalidSizeError):
        solve_m2m_line(0, G2, [], 1)
    with pytest.raises(ValueError):
        solve_m2m_line(2, G2, [1], 1)
    with pytest.raises(DomainError):
        solve_m2m_line(2, G2, [1, -1], 1)


def test_broadcast_n3_exact():
    plan = solve_broadcast_line(3, 2, G2, 1, 1, exact=True)
    assert plan.weights == (F(1, 3),) * 3
    rep = node_energies_broadcast(plan, build_line_network(3, False), G2.exact(), 1)
    assert rep.per_node_energy == {1: F(4, 3), 2: F(4, 3), 3: F(4, 3)}


def test_broadcast_n4_exact():
    plan = solve_broadcast_line(4, 2, G2, 1, 1, exact=True)
    assert plan.weights == (F(81, 232), F(23, 58), F(23, 232), F(9, 58))
    assert sum(plan.weights) == 1
    rep = node_energies_broadcast(plan, build_line_network(4, False), G2.exact(), 1)
    assert set(rep.per_node_energy.values()) == {F(81, 58)}


@pytest.mark.parametrize("N", [3, 4, 5, 6])
@pytest.mark.parametrize("a", [1, 2, 3])
def test_broadcast_matches_balanced_oracle(N, a):
    g = GainSpec.power_law(a)
    for k in range(2, N):
        plan = solve_broadcast_line(N, k, g, 1, 1, exact=True)
        trees = [list(t.edges) for t in lemma2_trees(N, k)]
        weights, z = balanced_broadcast(N, k, trees, exponents=(a,))
        assert list(plan.weights) == weights
        rep = node_energies_broadcast(plan, build_line_network(N, False), g.exact(), 1)
        assert rep.max_energy == z


def test_broadcast_boundary_chain():
    plan = solve_broadcast_line(5, 1, G2, 1, 1)
    assert plan.trees == (chain_tree(5, 1),)
    assert plan.weights == (1,)
    from oracles import all_spanning_trees
    best = broadcast_highs(5, 1, all_spanning_trees([1, 2, 3, 4, 5], 1))
    rep = node_energies_broadcast(plan, build_line_network(5, False), G2, 1)
    assert rep.max_energy == pytest.approx(best, rel=1e-9)


def test_broadcast_delivers_everything():
    plan = solve_broadcast_line(6, 3, GainSpec.power_law(3), 2.0, 0.5)
    for j in range(1, 7):
        if j != 3:
            assert plan.delivered(j) == pytest.approx(2.0, rel=1e-12)


def test_m2m_energies_n2():
    s = solve_m2m_line(2, G2, [1, 1], 1)
    rep = node_energies_m2m(s, build_line_network(2), G2, 1)
    assert rep.per_node_energy == pytest.approx({0: 0, 1: 1.75, 2: 1.75}, rel=1e-15)
    assert rep.argmax_node == 1
    assert rep.max_energy == pytest.approx(m2m_highs(2, [1, 1]), rel=1e-9)


def test_empty_schedule_energies():
    rep = node_energies_m2m(LinkSchedule({}, 1.0), build_line_network(3), G2, 1.0)
    assert rep.max_energy == 0 and set(rep.per_node_energy.values()) == {0}


def test_zero_weight_plan_energies():
    plan = BroadcastPlan(2, (lemma2_trees(3, 2)[0],), (0.0,), 1.0)
    rep = node_energies_broadcast(plan, build_line_network(3, False), G2, 1.0)
    assert set(rep.per_node_energy.values()) == {0}


def test_schedule_consistency_errors():
    with pytest.raises(ConsistencyError):
        node_energies_m2m(LinkSchedule({(7, 0): 1.0}, 1.0), build_line_network(2), G2, 1.0)
    with pytest.raises(ConsistencyError):
        node_energies_m2m(LinkSchedule({(0, 1): 1.0}, 1.0), build_line_network(2), G2, 1.0)
    with pytest.raises(ValueError):
        LinkSchedule({(1, 0): -1.0}, 1.0)


@pytest.mark.parametrize("E, E0, cycles", [(1.75, 10, 5), (1.75, 1.75, 1), (0, 5, UNBOUNDED)])
def test_lifetime_cycles(E, E0, cycles):
    rep = EnergyReport.from_energies({1: E})
    assert lifetime_cycles(rep, E0) == cycles


def test_lifetime_cycles_negative_battery():
    with pytest.raises(DomainError):
        lifetime_cycles(EnergyReport.from_energies({1: 1.0}), -1)


def test_energy_report_tie_break():
    rep = EnergyReport.from_energies({3: 2.0, 1: 2.0, 2: 1.0}, E0=4.0)
    assert rep.argmax_node == 1 and rep.cycles == 2


def test_rescale_distances():
    net = build_line_network(3)
    scaled, factor = rescale_distances(net, 2, G2)
    assert scaled.positions == {0: (0,), 1: (2,), 2: (4,), 3: (6,)}
    assert factor == 4
    assert rescale_distances(net, 1, G2) == (net, 1)
    assert rescale_distances(net, 3, GainSpec.power_law(1))[1] == 3
    with pytest.raises(NotScaleInvariantError):
        rescale_distances(net, 2, GainSpec((0.5, 0.5), (2, 3)))
