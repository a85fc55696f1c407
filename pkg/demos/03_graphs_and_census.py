"""Graphs, planarity, cycles and the cubic census behind the cographic entries."""

from math import factorial

from cosys import graphs

k33 = graphs.complete_bipartite(3, 3)
print("K3,3 planar?", graphs.is_planar(k33), graphs.find_kuratowski(k33))
print("K3,3 cycle sizes", graphs.cycle_spectrum(k33))
print("K5 planar?", graphs.is_planar(graphs.complete_graph(5)))

for n in (4, 6, 8, 10):
    print(n, "vertices:", len(graphs.generate_cubic_connected(n)), "connected cubic graphs")

# labelled counts from an independent recursion match the sum of n!/|Aut(G)|
gs = graphs.generate_cubic_connected(8)
print(sum(factorial(8) // graphs.count_automorphisms(g) for g in gs), graphs.count_labeled_cubic(8))

census = graphs.census_msr_cographic(10)  # 3-edge-connected, non-planar, 10 vertices
print(len(census), "census graphs, girths", [graphs.girth(g) for g in census])
print(graphs.dumps(census[0]))
