"""
Concurrent transmissions never help
===================================

Under distance-adaptive power, any link that runs alongside others loses
capacity, so it must transmit longer and spend more energy. Random
schedules that overlap links are compared with the interference-free
optimum.
"""

import numpy as np

from wsnlife import ChannelParams, GainSpec, InterferenceSet, build_line_network, capacity_proposed, m2m_lp
from wsnlife.minimax import evaluate_concurrent_schedule, random_m2m_flow, random_slots

p = ChannelParams(P0=1.0, N0=1.0)
g = GainSpec.power_law(2)
net = build_line_network(4)

# capacity of link 1 -> 0 as interferers are added
u = InterferenceSet()
print("no interference:", capacity_proposed(net, g, p, 1, 0, u))
for pair in [(4, 3), (3, 2)]:
    u = u.with_pair(*pair)
    print(f"with {sorted(u.pairs)}:", capacity_proposed(net, g, p, 1, 0, u))

opt = m2m_lp(net, g, [1.0] * 4, p.C0, p.P0)[1].max_energy
print("interference-free optimum:", opt)

rng = np.random.default_rng(7)
best_ratio = np.inf
for _ in range(50):
    slots = random_slots(random_m2m_flow(net, [1.0] * 4, rng), rng)
    report, duration = evaluate_concurrent_schedule(net, g, p, slots)
    best_ratio = min(best_ratio, report.max_energy / opt)
print("best random concurrent schedule / optimum:", best_ratio)
