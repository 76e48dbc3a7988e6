"""Solve a :class:`~wsnlife.config.RunConfig` with the requested solver(s)."""

from __future__ import annotations

from dataclasses import dataclass, field

from ._numeric import to_fraction
from .closed_form import (BroadcastPlan, EnergyReport, LinkSchedule, node_energies_broadcast,
                          node_energies_m2m, rescale_distances, solve_broadcast_line, solve_m2m_line)
from .config import RunConfig, validate
from .errors import ConfigError
from .minimax import broadcast_lp, m2m_lp
from .network import GainSpec, Network, OrientedTree, lemma2_trees

GAP_TOL = 1e-7


@dataclass
class Solution:
    solution: LinkSchedule | BroadcastPlan
    report: EnergyReport


@dataclass
class RunResult:
    config: RunConfig
    network: Network
    rate: object
    solutions: dict = field(default_factory=dict)  # "closed_form" / "lp" -> Solution

    @property
    def gap(self):
        if "closed_form" in self.solutions and "lp" in self.solutions:
            cf = self.solutions["closed_form"].report.max_energy
            lp = self.solutions["lp"].report.max_energy
            if lp == 0:
                return abs(cf) * 0
            return abs(cf - lp) / lp
        return None

    @property
    def primary(self) -> Solution:
        return self.solutions.get("closed_form") or self.solutions["lp"]


def _candidate_trees(cfg: RunConfig, net: Network):
    spec = cfg.service.trees
    k = cfg.service.source
    if spec == "all":
        return None
    if spec == "lemma2":
        if cfg.network.kind != "line":
            raise ConfigError("service.trees: \"lemma2\" needs a line network")
        try:
            return lemma2_trees(net.N, k)
        except ValueError as exc:
            raise ConfigError(f"service.trees: {exc}") from None
    try:
        return [OrientedTree(k, tuple(tuple(e) for e in edges)) for edges in spec]
    except ValueError as exc:
        raise ConfigError(f"service.trees: {exc}") from None


def execute(cfg: RunConfig) -> RunResult:
    net = validate(cfg)
    exact = cfg.exact
    g = cfg.gain.exact() if exact else cfg.gain
    c0 = to_fraction(cfg.rate) if exact else cfg.rate
    P0 = to_fraction(cfg.channel.P0) if exact else cfg.channel.P0
    E0 = cfg.battery_E0
    if exact and E0 is not None:
        E0 = to_fraction(E0)
    result = RunResult(cfg, net, c0)
    want_cf = cfg.solver in ("closed_form", "both")
    want_lp = cfg.solver in ("lp", "both")

    if cfg.service.type == "m2m":
        Q = cfg.data_amounts(net)
        if exact:
            Q = [to_fraction(q) for q in Q]
        if want_cf:
            s = solve_m2m_line(net.N, g, Q, c0, exact=exact)
            result.solutions["closed_form"] = Solution(s, node_energies_m2m(s, net, g, P0, E0))
        if want_lp:
            s, rep = m2m_lp(net, g, Q, c0, P0, exact=exact, E0=E0)
            result.solutions["lp"] = Solution(s, rep)
    else:
        k = cfg.service.source
        Qk = to_fraction(cfg.service.Qk) if exact else cfg.service.Qk
        if want_cf:
            plan = solve_broadcast_line(net.N, k, g, Qk, c0, exact=exact)
            result.solutions["closed_form"] = Solution(plan, node_energies_broadcast(plan, net, g, P0, E0))
        if want_lp:
            plan, rep = broadcast_lp(net, g, k, Qk, c0, P0, trees=_candidate_trees(cfg, net),
                                     exact=exact, E0=E0)
            result.solutions["lp"] = Solution(plan, rep)
    return result


def _apply(cfg: RunConfig, param: str, value) -> RunConfig:
    if param == "N":
        if cfg.network.kind != "line":
            raise ConfigError("sweep.param: N can only be swept on line networks")
        if int(value) != value:
            raise ConfigError(f"sweep.values: N must be an integer, got {value!r}")
        new = cfg.with_changes()
        new.network.N = int(value)
        if isinstance(new.service.Q, list):
            if len(set(new.service.Q)) > 1:
                raise ConfigError("service.Q: sweeping N needs a scalar or uniform Q")
            new.service.Q = new.service.Q[0] if new.service.Q else 1.0
        return new
    if param == "a":
        return cfg.with_changes(gain=GainSpec.power_law(value))
    if param == "P0/N0":
        ch = cfg.channel
        return cfg.with_changes(channel=type(ch)(value * ch.N0, ch.N0, ch.B, ch.log_base, ch.beta))
    if param == "k":
        if int(value) != value:
            raise ConfigError(f"sweep.values: k must be an integer, got {value!r}")
        if cfg.service.type != "broadcast":
            raise ConfigError("sweep.param: k only applies to broadcast")
        new = cfg.with_changes()
        new.service.source = int(value)
        return new
    raise ConfigError(f"sweep.param: unknown parameter {param!r}")


def sweep(cfg: RunConfig, param: str, values) -> list[dict]:
    """One row per value; ``lambda_scale`` re-evaluates the base schedule on a stretched network."""
    rows = []
    base = None
    for value in values:
        if param == "lambda_scale":
            if base is None:
                base = execute(cfg)
            try:
                scaled, _ = rescale_distances(base.network, value, cfg.gain)
            except ValueError as exc:
                raise ConfigError(f"sweep: {exc}") from None
            g = cfg.gain.exact() if cfg.exact else cfg.gain
            P0 = to_fraction(cfg.channel.P0) if cfg.exact else cfg.channel.P0
            E0 = cfg.battery_E0
            sol = base.primary.solution
            if cfg.service.type == "m2m":
                rep = node_energies_m2m(sol, scaled, g, P0, E0)
            else:
                rep = node_energies_broadcast(sol, scaled, g, P0, E0)
            rows.append({"param": param, "value": value, "report": rep, "gap": base.gap})
        else:
            res = execute(_apply(cfg, param, value))
            rows.append({"param": param, "value": value, "report": res.primary.report, "gap": res.gap})
    return rows
