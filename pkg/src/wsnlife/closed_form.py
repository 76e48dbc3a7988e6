"""Analytical maximum-lifetime schedules on the line network L_N.

With distance-adaptive power and no interference every link runs at the same
rate c0, so energies reduce to ``P0 * sum_j gamma^{-1}_{ij} t_{ij}`` and the
optimal schedules have closed forms that depend on the gain only through the
ratios ``gamma^{-1}_1 / gamma^{-1}_r``.

Every solver accepts ``exact=True`` to redo the arithmetic in Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from ._numeric import to_fraction
from .errors import (ClosedFormInapplicableError, ConsistencyError,
                     DomainError, InvalidSizeError, NotScaleInvariantError)
from .network import (GainSpec, Network, chain_tree, inverse_gain,
                      lemma2_trees, pair_inverse_gain)

# durations this far below zero are treated as rounding noise and clamped
CLAMP_SLACK = 1e-12
# closed-form durations below -APPLICABILITY_TOL mean the formula does not apply
APPLICABILITY_TOL = 1e-9

UNBOUNDED = math.inf


def _clamp(x, slack):
    if x < -slack:
        return None
    return x if x > 0 else 0 * x + 0  # +0 turns -0.0 into 0.0


@dataclass(frozen=True)
class LinkSchedule:
    """Per-link transmission durations t_{i,j} (seconds) at a common rate (bits/s)."""

    times: Mapping[tuple, object]
    rate: object

    def __post_init__(self):
        times = {}
        for (i, j), t in sorted(dict(self.times).items()):
            if i == j:
                raise ValueError(f"self-link ({i}, {j}) in schedule")
            clamped = _clamp(t, CLAMP_SLACK)
            if clamped is None:
                raise ValueError(f"negative duration {t!r} on link ({i}, {j})")
            times[(int(i), int(j))] = clamped
        if not self.rate > 0:
            raise ValueError("transmission rate must be positive")
        object.__setattr__(self, "times", times)

    def check(self, net: Network) -> None:
        for i, j in self.times:
            if i not in net.positions or j not in net.positions:
                raise ConsistencyError(f"link ({i}, {j}) refers to a node outside the network")
            if i in net.collectors:
                raise ConsistencyError(f"collector {i} cannot transmit")

    def data(self, i: int, j: int):
        return self.rate * self.times.get((i, j), 0)


@dataclass(frozen=True)
class BroadcastPlan:
    """Trees rooted at ``source`` with the time t^k_r spent on each (seconds)."""

    source: int
    trees: tuple
    weights: tuple
    rate: object

    def __post_init__(self):
        trees = tuple(self.trees)
        if len(trees) != len(self.weights):
            raise ValueError("one weight per tree is required")
        if len(set(trees)) != len(trees):
            raise ValueError("trees of a plan must be pairwise distinct")
        if any(t.root != self.source for t in trees):
            raise ValueError(f"every tree must be rooted at the source {self.source}")
        weights = []
        for w in self.weights:
            c = _clamp(w, CLAMP_SLACK)
            if c is None:
                raise ValueError(f"negative tree weight {w!r}")
            weights.append(c)
        if not self.rate > 0:
            raise ValueError("transmission rate must be positive")
        object.__setattr__(self, "trees", trees)
        object.__setattr__(self, "weights", tuple(weights))

    def check(self, net: Network) -> None:
        for tree in self.trees:
            if not tree.spans(net.nodes):
                raise ConsistencyError(f"tree {tree.edges} does not span the network nodes")

    def delivered(self, j: int):
        """Bits received by node j summed over all trees."""
        return self.rate * sum(w for t, w in zip(self.trees, self.weights) if t.receives(j))


@dataclass(frozen=True)
class EnergyReport:
    per_node_energy: Mapping[int, object]
    max_energy: object
    argmax_node: int
    cycles: object = None

    @classmethod
    def from_energies(cls, energies: Mapping[int, object], E0=None) -> "EnergyReport":
        energies = dict(sorted(energies.items()))
        if not energies:
            raise ValueError("no nodes to report")
        # ties go to the smallest node index
        argmax = max(energies, key=lambda n: (energies[n], -n))
        report = cls(energies, energies[argmax], argmax)
        if E0 is not None:
            report = cls(energies, energies[argmax], argmax, lifetime_cycles(report, E0))
        return report


def lifetime_cycles(report: EnergyReport, E0) -> object:
    """floor(E0 / max energy); ``UNBOUNDED`` when no node spends anything."""
    if E0 < 0:
        raise DomainError(f"battery energy must be nonnegative, got {E0!r}")
    if report.max_energy == 0:
        return UNBOUNDED
    return math.floor(E0 / report.max_energy)


def _ratios(g: GainSpec, N: int) -> dict[int, object]:
    # h[r] = gamma^{-1}_1 / gamma^{-1}_r for r = 1..N
    g1 = inverse_gain(g, 1)
    return {r: g1 / inverse_gain(g, r) for r in range(1, N + 1)}


def _prepare(g, values, c0, exact):
    if exact:
        return g.exact(), [to_fraction(v) for v in values], to_fraction(c0)
    return g, list(values), c0


def solve_m2m_line(N: int, g: GainSpec, Q: Sequence, c0, exact: bool = False) -> LinkSchedule:
    """Balanced-energy schedule for sensors 1..N of L_N reporting to the collector at 0.

    Sensor 1 sends only to the collector; every other sensor i splits its
    traffic between the collector (link (i, 0)) and its inner neighbour
    (link (i, i-1)). ``Q[i-1]`` is the data generated by sensor i.

    Matches the LP optimum for pure power laws. For mixtures dominated by
    the linear term (e.g. 0.9 r + 0.1 r**3) links that skip a neighbour do
    better, so the result is balanced but not optimal; cross-check with
    :func:`~wsnlife.minimax.m2m_lp` when in doubt.
    """
    if int(N) != N or N < 1:
        raise InvalidSizeError(f"need N >= 1 sensors, got {N!r}")
    if len(Q) != N:
        raise ValueError(f"expected {N} data amounts, got {len(Q)}")
    if any(q < 0 for q in Q) or not c0 > 0:
        raise DomainError("data amounts must be nonnegative and the rate positive")
    g, Qs, c0 = _prepare(g, Q, c0, exact)
    q = {i: Qs[i - 1] for i in range(1, N + 1)}
    h = _ratios(g, N)

    def prod(rs):
        out = 1
        for r in rs:
            out *= 1 - h[r]
        return out

    def direct(i):
        # c0 * t_{i,0} for i >= 2
        acc = q[i - 1] + sum(q[i - j - 1] * prod(i - r for r in range(1, j + 1)) for j in range(1, i - 1))
        return h[i] * acc

    times = {(1, 0): (q[N] + sum(q[j - 1] * prod(range(j, N + 1)) for j in range(2, N + 1))) / c0}
    direct_share = {i: direct(i) for i in range(2, N + 1)}
    for i in range(2, N + 1):
        times[(i, 0)] = direct_share[i] / c0
        times[(i, i - 1)] = sum(q[k] - direct_share[k] for k in range(i, N + 1)) / c0

    clamped = {}
    for link, t in times.items():
        c = _clamp(t, APPLICABILITY_TOL)
        if c is None:
            raise ClosedFormInapplicableError(
                f"closed form gives t{link} = {float(t):.3g} < 0 for this data profile; solve the LP instead")
        clamped[link] = c
    return LinkSchedule(clamped, c0)


def solve_broadcast_line(N: int, k: int, g: GainSpec, Qk, c0, exact: bool = False) -> BroadcastPlan:
    """Optimal broadcast of Qk bits from node k of L_N (no collector).

    Internal sources spread the data over the N trees of
    :func:`~wsnlife.network.lemma2_trees`; a boundary source just uses the chain.
    """
    if int(N) != N or N < 2:
        raise InvalidSizeError(f"broadcast needs N >= 2, got {N!r}")
    if not 1 <= k <= N:
        raise DomainError(f"source {k} is not a node of L_{N}")
    if Qk < 0 or not c0 > 0:
        raise DomainError("data amount must be nonnegative and the rate positive")
    g, (Qk,), c0 = _prepare(g, [Qk], c0, exact)
    base = Qk / c0
    if k in (1, N):
        return BroadcastPlan(k, (chain_tree(N, k),), (base,), c0)

    h = _ratios(g, N)
    far = N - k + 1
    t_kk = (1 - h[k] - h[far]) / (-1 + sum(h[i] for i in range(1, k + 1))
                                  + sum(h[i] for i in range(1, far + 1))) * base
    weights = []
    for r in range(1, N + 1):
        if r == 1:
            w = h[k] * (t_kk + base)
        elif r < k:
            w = h[k + 1 - r] * t_kk
        elif r == k:
            w = t_kk
        elif r < N:
            w = h[r - k + 1] * t_kk
        else:
            w = h[far] * (t_kk + base)
        c = _clamp(w, APPLICABILITY_TOL)
        if c is None:
            raise ClosedFormInapplicableError(f"tree weight t^{k}_{r} = {float(w):.3g} < 0; solve the LP instead")
        weights.append(c)
    return BroadcastPlan(k, tuple(lemma2_trees(N, k)), tuple(weights), c0)


def node_energies_m2m(s: LinkSchedule, net: Network, g: GainSpec, P0, E0=None) -> EnergyReport:
    """E_i = P0 sum_j gamma^{-1}_{ij} t_{ij}; collectors report zero."""
    s.check(net)
    energies = {n: 0 * P0 for n in net.nodes}
    for (i, j), t in s.times.items():
        energies[i] += P0 * pair_inverse_gain(net, g, i, j) * t
    return EnergyReport.from_energies(energies, E0)


def node_energies_broadcast(plan: BroadcastPlan, net: Network, g: GainSpec, P0, E0=None) -> EnergyReport:
    plan.check(net)
    energies = {n: 0 * P0 for n in net.nodes}
    for tree, w in zip(plan.trees, plan.weights):
        for i, j in tree.edges:
            energies[i] += P0 * pair_inverse_gain(net, g, i, j) * w
    return EnergyReport.from_energies(energies, E0)


def rescale_distances(net: Network, lam, g: GainSpec) -> tuple[Network, object]:
    """Stretch every coordinate by ``lam``; return the new network and the energy factor lam**a.

    Only pure power-law gains scale this way.
    """
    if not lam > 0:
        raise DomainError(f"scale factor must be positive, got {lam!r}")
    a = g.single_exponent
    if a is None:
        raise NotScaleInvariantError("a mixture of power laws has no single energy scaling factor")
    scaled = Network({n: tuple(lam * x for x in p) for n, p in net.positions.items()}, net.collectors)
    return scaled, lam ** a
