"""Maximum-lifetime transmission schedules for wireless sensor networks.

The package computes schedules that minimise the largest per-node energy of
one data-gathering (multipoint-to-multipoint) or broadcast cycle when link
capacity is limited by noise and interference, using closed forms on the
line network L_N and an exact/float simplex LP as an independent oracle.
"""

from .channel import (ChannelParams, InterferenceSet, capacity_gk_no_interference, capacity_gupta_kumar,
                      capacity_proposed, gk_linearized_capacity, link_feasible, required_power,
                      shannon_capacity, sinr_gupta_kumar)
from .closed_form import (UNBOUNDED, BroadcastPlan, EnergyReport, LinkSchedule, lifetime_cycles,
                          node_energies_broadcast, node_energies_m2m, rescale_distances,
                          solve_broadcast_line, solve_m2m_line)
from .minimax import (MinimaxLP, broadcast_lp, evaluate_concurrent_schedule, gupta_kumar_reduction,
                      m2m_lp, solve_minimax_lp)
from .network import (GainSpec, Network, OrientedTree, build_line_network, enumerate_spanning_trees,
                      inverse_gain, lemma2_trees, pair_inverse_gain)

__all__ = [
    "BroadcastPlan",
    "ChannelParams",
    "EnergyReport",
    "GainSpec",
    "InterferenceSet",
    "LinkSchedule",
    "MinimaxLP",
    "Network",
    "OrientedTree",
    "UNBOUNDED",
    "broadcast_lp",
    "build_line_network",
    "capacity_gk_no_interference",
    "capacity_gupta_kumar",
    "capacity_proposed",
    "enumerate_spanning_trees",
    "evaluate_concurrent_schedule",
    "gk_linearized_capacity",
    "gupta_kumar_reduction",
    "inverse_gain",
    "lemma2_trees",
    "lifetime_cycles",
    "link_feasible",
    "m2m_lp",
    "node_energies_broadcast",
    "node_energies_m2m",
    "pair_inverse_gain",
    "required_power",
    "rescale_distances",
    "shannon_capacity",
    "sinr_gupta_kumar",
    "solve_broadcast_line",
    "solve_m2m_line",
    "solve_minimax_lp",
]

__version__ = "0.1.0"
