"""Min-max energy problems as linear programs.

``min_t max_i E_i(t)`` is rewritten in epigraph form: minimise an auxiliary
bound z subject to ``E_i(t) <= z`` for every node, plus the linear flow or
delivery equalities. The LPs are solved by :mod:`wsnlife.simplex`, which is
independent of the closed forms and serves as their oracle.

Also here: evaluation of schedules in which links transmit concurrently and
interfere, and random generators of such schedules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ._numeric import to_fraction
from .channel import ChannelParams, InterferenceSet, capacity_gk_no_interference, capacity_proposed
from .closed_form import BroadcastPlan, EnergyReport, LinkSchedule
from .errors import ConsistencyError, InfeasibleError, UndeliverableError
from .network import GainSpec, Network, OrientedTree, enumerate_spanning_trees, pair_inverse_gain
from .simplex import linprog_bland


@dataclass
class MinimaxLP:
    """min z  s.t.  energy @ x <= z (one row per node),  eq_matrix @ x = eq_rhs,  x >= 0."""

    variables: list
    energy: np.ndarray
    energy_nodes: list
    eq_matrix: np.ndarray = None
    eq_rhs: np.ndarray = None

    def __post_init__(self):
        n = len(self.variables)
        self.energy = np.asarray(self.energy, dtype=object).reshape(-1, n)
        if self.eq_matrix is None:
            self.eq_matrix = np.zeros((0, n), dtype=object)
            self.eq_rhs = np.zeros(0, dtype=object)
        self.eq_matrix = np.asarray(self.eq_matrix, dtype=object).reshape(-1, n)
        self.eq_rhs = np.asarray(self.eq_rhs, dtype=object).reshape(-1)
        if len(self.energy_nodes) != self.energy.shape[0]:
            raise ValueError("one node label per energy row is required")
        if self.eq_matrix.shape[0] != self.eq_rhs.shape[0]:
            raise ValueError("equality rows and right-hand side differ in length")
        for arr in (self.energy, self.eq_matrix, self.eq_rhs):
            if not all(math.isfinite(v) for v in arr.ravel()):
                raise ValueError("LP coefficients must be finite")


@dataclass
class MinimaxSolution:
    values: dict
    z: object
    energies: dict
    residuals: dict = field(default_factory=dict)


def solve_minimax_lp(lp: MinimaxLP, exact: bool = False) -> MinimaxSolution:
    n = len(lp.variables)
    n_rows = lp.energy.shape[0]
    # variables (x, z); rows E x - z <= 0
    A_ub = np.concatenate([lp.energy, -np.ones((n_rows, 1), dtype=object)], axis=1) if n_rows else None
    A_eq = np.concatenate([lp.eq_matrix, np.zeros((lp.eq_matrix.shape[0], 1), dtype=object)], axis=1)
    c = [0] * n + [1]
    res = linprog_bland(c, A_ub, [0] * n_rows, A_eq if A_eq.shape[0] else None,
                        lp.eq_rhs if A_eq.shape[0] else None, exact=exact)
    x = res.x[:n]
    energy = lp.energy if not exact else np.array([[to_fraction(v) for v in row] for row in lp.energy],
                                                   dtype=object).reshape(lp.energy.shape)
    node_e = energy @ x if n_rows else []
    return MinimaxSolution(values=dict(zip(lp.variables, x)), z=res.x[n],
                           energies=dict(zip(lp.energy_nodes, node_e)), residuals=res.residuals)


def _sensor_data(net: Network, Q) -> dict:
    sensors = net.sensors
    if isinstance(Q, Mapping):
        q = {int(k): v for k, v in Q.items()}
        if set(q) != set(sensors):
            raise ConsistencyError("data amounts must be given for exactly the sensors")
        return q
    if len(Q) != len(sensors):
        raise ValueError(f"expected {len(sensors)} data amounts, got {len(Q)}")
    return dict(zip(sensors, Q))


def _m2m_problem(net: Network, Q, rate, cost) -> tuple[MinimaxLP, list]:
    """LP over t_{ij} (sensor i to any other node j) with
    sum_j rate(i,j) t_ij - sum_j rate(j,i) t_ji = Q_i and energy_i = sum_j cost(i,j) t_ij."""
    if not net.collectors:
        raise InfeasibleError("multipoint-to-multipoint service needs at least one collector")
    q = _sensor_data(net, Q)
    if any(v < 0 for v in q.values()):
        raise ValueError("data amounts must be nonnegative")
    sensors = net.sensors
    links = [(i, j) for i in sensors for j in net.nodes if j != i]
    col = {link: c for c, link in enumerate(links)}
    energy = np.zeros((len(sensors), len(links)), dtype=object)
    flow = np.zeros((len(sensors), len(links)), dtype=object)
    for r, i in enumerate(sensors):
        for j in net.nodes:
            if j == i:
                continue
            energy[r, col[(i, j)]] = cost(i, j)
            flow[r, col[(i, j)]] += rate(i, j)
            if j not in net.collectors:
                flow[r, col[(j, i)]] -= rate(j, i)
    rhs = np.array([q[i] for i in sensors], dtype=object)
    return MinimaxLP(list(range(len(links))), energy, sensors, flow, rhs), links


def m2m_lp(net: Network, g: GainSpec, Q, c0, P0, exact: bool = False, E0=None) -> tuple[LinkSchedule, EnergyReport]:
    """Optimal multipoint-to-multipoint schedule at common rate c0, no interference."""
    if exact:
        g, c0, P0 = g.exact(), to_fraction(c0), to_fraction(P0)
    lp, links = _m2m_problem(net, Q, rate=lambda i, j: c0,
                             cost=lambda i, j: P0 * pair_inverse_gain(net, g, i, j))
    sol = solve_minimax_lp(lp, exact)
    zero = 0 * P0
    times = {link: sol.values[c] for c, link in enumerate(links) if sol.values[c] > 0}
    energies = {n: sol.energies.get(n, zero) for n in net.nodes}
    return LinkSchedule(times, c0), EnergyReport.from_energies(energies, E0)


def gupta_kumar_m2m_lp(net: Network, g: GainSpec, p: ChannelParams, Q, C0=None) -> EnergyReport:
    """Optimum of the fixed-power (Gupta-Kumar) problem without interference.

    Links run at their own capacity C_ij; after the change of variables
    t_ij -> (C0 / C_ij) t_ij every link runs at the common rate C0 and costs
    P0 * C0 / C_ij per unit time. The optimal value is unaffected.
    """
    C0 = p.C0 if C0 is None else C0
    lp, _ = _m2m_problem(net, Q, rate=lambda i, j: C0,
                         cost=lambda i, j: p.P0 * C0 / capacity_gk_no_interference(net, g, p, i, j))
    sol = solve_minimax_lp(lp)
    return EnergyReport.from_energies({n: sol.energies.get(n, 0.0) for n in net.nodes})


def gupta_kumar_reduction(net: Network, g: GainSpec, p: ChannelParams, Q, C0=None) -> dict:
    """Compare the Gupta-Kumar optimum with the distance-adaptive problem it reduces to.

    Under log(1+x) ~ x the rescaled Gupta-Kumar costs become N0 C0 gamma^{-1}_ij
    (times ln(base) when capacities are not in nats), i.e. the adaptive-power
    problem with P0 replaced by that constant.
    """
    C0 = p.C0 if C0 is None else C0
    gk = gupta_kumar_m2m_lp(net, g, p, Q, C0)
    _, ref = m2m_lp(net, g, Q, C0, p.N0 * C0 * math.log(p.log_base))
    x_max = max(p.P0 / p.N0 / pair_inverse_gain(net, g, i, j)
                for i in net.sensors for j in net.nodes if j != i)
    return {"gupta_kumar": gk.max_energy, "linearized": ref.max_energy,
            "gap": abs(gk.max_energy - ref.max_energy) / ref.max_energy, "x_max": x_max}


def broadcast_lp(net: Network, g: GainSpec, k: int, Qk, c0, P0, trees: Sequence[OrientedTree] = None,
                 exact: bool = False, E0=None) -> tuple[BroadcastPlan, EnergyReport]:
    """Optimal split of a broadcast from node k over candidate spanning trees.

    ``trees`` defaults to every spanning tree rooted at k. The returned plan
    keeps only trees with positive weight.
    """
    if trees is None:
        trees = enumerate_spanning_trees(net, k)
    trees = list(trees)
    if not trees:
        raise InfeasibleError("no candidate trees: broadcast data cannot be delivered")
    for t in trees:
        if t.root != k or not t.spans(net.nodes):
            raise ConsistencyError(f"candidate tree {t.edges} is not a spanning tree rooted at {k}")
    if exact:
        g, Qk, c0, P0 = g.exact(), to_fraction(Qk), to_fraction(c0), to_fraction(P0)
    nodes = net.nodes
    idx = {n: r for r, n in enumerate(nodes)}
    energy = np.zeros((len(nodes), len(trees)), dtype=object)
    receivers = [n for n in nodes if n != k]
    delivery = np.zeros((len(receivers), len(trees)), dtype=object)
    ridx = {n: r for r, n in enumerate(receivers)}
    for c, tree in enumerate(trees):
        for i, j in tree.edges:
            energy[idx[i], c] += P0 * pair_inverse_gain(net, g, i, j)
            delivery[ridx[j], c] += c0
    lp = MinimaxLP(list(range(len(trees))), energy, nodes, delivery,
                   np.array([Qk] * len(receivers), dtype=object))
    sol = solve_minimax_lp(lp, exact)
    support = [(t, sol.values[c]) for c, t in enumerate(trees) if sol.values[c] > 0]
    plan = BroadcastPlan(k, tuple(t for t, _ in support), tuple(w for _, w in support), c0)
    return plan, EnergyReport.from_energies(sol.energies, E0)


def evaluate_concurrent_schedule(net: Network, g: GainSpec, p: ChannelParams,
                                 slots: Sequence[Mapping[tuple, float]], E0=None) -> tuple[EnergyReport, float]:
    """Energy and duration of a schedule whose slots run their links concurrently.

    Each slot maps links (i, j) to the bits they carry. Every link of a slot
    runs at its capacity under interference from the other links of the
    same slot and lasts q / c; a slot lasts as long as its longest link.
    """
    energies = {n: 0.0 for n in net.nodes}
    total = 0.0
    for slot in slots:
        links = {(int(i), int(j)): q for (i, j), q in slot.items()}
        InterferenceSet(frozenset(links))
        longest = 0.0
        for (i, j), q in links.items():
            if i in net.collectors:
                raise ConsistencyError(f"collector {i} cannot transmit")
            u = InterferenceSet(frozenset(links) - {(i, j)})
            c = capacity_proposed(net, g, p, i, j, u)
            if q == 0:
                continue
            if not c > 0:
                raise UndeliverableError(f"link ({i}, {j}) has zero capacity but must carry {q} bits")
            t = q / c
            energies[i] += p.P0 * pair_inverse_gain(net, g, i, j) * t
            longest = max(longest, t)
        total += longest
    return EnergyReport.from_energies(energies, E0), total


def random_m2m_flow(net: Network, Q, rng: np.random.Generator) -> dict:
    """A random flow satisfying conservation: sensors, in random order, split
    everything they hold between the collectors and sensors later in the order."""
    q = _sensor_data(net, Q)
    order = list(rng.permutation(net.sensors))
    inflow = {s: 0.0 for s in net.sensors}
    flow = {}
    for pos, i in enumerate(order):
        i = int(i)
        targets = sorted(net.collectors) + [int(s) for s in order[pos + 1:]]
        shares = rng.dirichlet(np.ones(len(targets)))
        total = float(q[i]) + inflow[i]
        for j, share in zip(targets, shares):
            if share * total > 0:
                flow[(i, j)] = share * total
                if j in inflow:
                    inflow[j] += share * total
    return flow


def random_broadcast_flow(net: Network, k: int, Qk, rng: np.random.Generator,
                          trees: Sequence[OrientedTree] = None, max_trees: int = 4) -> dict:
    """Per-link data of a random mixture of spanning trees that delivers Qk to every node."""
    if trees is None:
        trees = enumerate_spanning_trees(net, k)
    chosen = rng.choice(len(trees), size=min(max_trees, len(trees)), replace=False)
    shares = rng.dirichlet(np.ones(len(chosen)))
    flow: dict = {}
    for c, share in zip(chosen, shares):
        for link in trees[int(c)].edges:
            flow[link] = flow.get(link, 0.0) + share * float(Qk)
    return flow


def random_slots(link_data: Mapping[tuple, float], rng: np.random.Generator, max_slots: int = 4) -> list[dict]:
    """Partition links uniformly into 1..max_slots concurrent slots.

    A link that would share a node with a link already in its slot goes to
    the first compatible slot instead (opening a new one if needed), so every
    slot is a valid interference set.
    """
    n_slots = int(rng.integers(1, max_slots + 1))
    slots: list[dict] = [{} for _ in range(n_slots)]
    for link in sorted(link_data):
        target = int(rng.integers(n_slots))
        order = [target] + [s for s in range(len(slots)) if s != target]
        for s in order:
            if all(not set(link) & {a, b} for a, b in slots[s]):
                slots[s][link] = link_data[link]
                break
        else:
            slots.append({link: link_data[link]})
    return [s for s in slots if s]
