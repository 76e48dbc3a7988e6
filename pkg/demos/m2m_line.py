"""
Data gathering on a line of sensors
===================================

Sensors 1..N sit at x = 1..N and report to a collector at x = 0. Every
transmitter adapts its power so the receiver hears exactly P0, so every link
runs at the same rate and the only question is how long each link is used.
"""

from fractions import Fraction

from wsnlife import GainSpec, build_line_network, m2m_lp, node_energies_m2m, solve_m2m_line

# inverse gain r**2: sending over two hops costs 4x the power of one hop
g = GainSpec.power_law(2)
net = build_line_network(3)

# closed form, in exact arithmetic
schedule = solve_m2m_line(3, g, [1, 1, 1], c0=1, exact=True)
for (i, j), t in schedule.times.items():
    print(f"t[{i} -> {j}] = {t}")

# every sensor ends up spending the same energy, 23/9 J per cycle
report = node_energies_m2m(schedule, net, g.exact(), P0=1)
print("energies:", {n: str(e) for n, e in report.per_node_energy.items()})

# the LP over all links agrees
_, lp = m2m_lp(net, g, [1, 1, 1], 1, 1, exact=True)
print("LP optimum:", lp.max_energy, "closed form:", report.max_energy)
assert lp.max_energy == Fraction(23, 9)

# with a battery of 100 J the network survives floor(100 / (23/9)) cycles
print("cycles on 100 J:", node_energies_m2m(schedule, net, g.exact(), 1, E0=100).cycles)

# Uneven data can push a closed-form duration below zero. The solver
# refuses instead of returning a bogus schedule; the LP still works.
from wsnlife.errors import ClosedFormInapplicableError

try:
    solve_m2m_line(3, g, [5, 0, 0], 1)
except ClosedFormInapplicableError as exc:
    print("closed form:", exc)
print("LP on [5, 0, 0]:", m2m_lp(net, g, [5, 0, 0], 1, 1)[1].max_energy)

# The closed form only uses links to the collector and to the inner
# neighbour. With a nearly linear gain, skipping a neighbour is cheap enough
# that the LP finds a better schedule, so compare both when unsure.
mix = GainSpec((Fraction(9, 10), Fraction(1, 10)), (1, 3))
cf = node_energies_m2m(solve_m2m_line(3, mix, [1, 1, 1], 1, exact=True), net, mix, 1).max_energy
lp_sched, lp = m2m_lp(net, mix, [1, 1, 1], 1, 1, exact=True)
print(f"0.9 r + 0.1 r^3: closed form {cf}, LP {lp.max_energy} using link 3 -> 1 for {lp_sched.times[(3, 1)]} s")
