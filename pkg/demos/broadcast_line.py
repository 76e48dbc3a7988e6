"""
Broadcast over a mixture of spanning trees
==========================================

Node k sends the same Qk bits to every other node of the line (no
collector). A single tree overloads some relays; spreading the time over
N well-chosen trees balances the energy of all nodes.
"""

from wsnlife import (GainSpec, broadcast_lp, build_line_network, enumerate_spanning_trees,
                     node_energies_broadcast, solve_broadcast_line)

g = GainSpec.power_law(2).exact()
net = build_line_network(4, with_collector=False)

plan = solve_broadcast_line(4, 2, g, Qk=1, c0=1, exact=True)
for tree, w in zip(plan.trees, plan.weights):
    print(f"{w!s:>8} s on tree {tree.edges}")
print("weights sum to", sum(plan.weights))

report = node_energies_broadcast(plan, net, g, P0=1)
print("energies:", {n: str(e) for n, e in report.per_node_energy.items()})

# all 4**2 = 16 spanning trees rooted at node 2 as LP candidates
trees = enumerate_spanning_trees(net, 2)
lp_plan, lp = broadcast_lp(net, g, 2, 1, 1, 1, trees=trees, exact=True)
print(f"LP over {len(trees)} trees: {lp.max_energy}, uses {len(lp_plan.trees)} of them")

# from an end of the line the plain chain is already optimal
chain = solve_broadcast_line(5, 1, g, 1, 1)
print("source 1 of L_5:", chain.trees[0].edges)
