"""
Sharing a bottleneck edge
=========================

Two source-sink pairs must route through the same unit-capacity edge a -> b.
The bargaining solution splits that edge in proportion to clout.
"""

from nashbargain import solve
from nashbargain.games import Dg2Instance, Dg2Pair, build_dg2, extract_flows

edges = [("s1", "a", 1), ("s2", "a", 1), ("a", "b", 1), ("b", "t1", 1), ("b", "t2", 1)]
vertices = ["s1", "s2", "a", "b", "t1", "t2"]

for w1 in (1, 2, 3):
    inst = Dg2Instance(vertices, edges, [Dg2Pair("s1", "t1", 0, w1), Dg2Pair("s2", "t2", 0, 1)])
    sol = solve(build_dg2(inst))
    flows = extract_flows(inst, sol)
    f1, f2 = flows.edge_flows[2]
    print(f"w=({w1}, 1): totals {sol.v1}, {sol.v2}; edge a->b carries {f1} + {f2}")
