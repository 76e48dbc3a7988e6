"""
Stretching the network
======================

Scaling every distance by lambda leaves the distance-adaptive capacities
unchanged (all powers scale together) and multiplies every energy by
lambda**a. The sweep API returns the same numbers the CLI writes to CSV.
"""

from wsnlife import ChannelParams, GainSpec, InterferenceSet, build_line_network, capacity_proposed
from wsnlife import node_energies_m2m, rescale_distances, solve_m2m_line
from wsnlife.config import parse_config
from wsnlife.runner import sweep

g = GainSpec.power_law(2)
p = ChannelParams(1.0, 1.0)
net = build_line_network(4)
u = InterferenceSet(frozenset({(4, 2)}))
schedule = solve_m2m_line(4, g, [1.0] * 4, 1.0)
base = node_energies_m2m(schedule, net, g, 1.0).max_energy

for lam in (1, 2, 5, 10):
    scaled, factor = rescale_distances(net, lam, g)
    c = capacity_proposed(scaled, g, p, 1, 0, u)
    e = node_energies_m2m(schedule, scaled, g, 1.0).max_energy
    print(f"lambda={lam:<3} capacity(1->0 | 4->2)={c:.12f}  max energy / base={e / base:g}  (lambda^2={factor})")

# the same experiment through the config-driven runner
cfg = parse_config({"network": {"N": 2}, "service": {"type": "m2m", "Q": 1, "rate": 1}})
for row in sweep(cfg, "lambda_scale", [1, 2, 3]):
    print(row["param"], row["value"], row["report"].max_energy)
for row in sweep(cfg, "a", [1, 2, 3, 4]):
    print(row["param"], row["value"], round(row["report"].max_energy, 6), "gap", row["gap"])
