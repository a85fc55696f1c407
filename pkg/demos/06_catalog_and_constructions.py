"""The catalog of maximal simple regular matroids and the two gluing constructions."""

from cosys import catalog, graphs
from cosys.cosystole import sys3_star
from cosys.matroid import isomorphic

for name in catalog.RANK6_MSR:
    e = catalog.get(name)
    print(f"{name:10} |E|={e.matroid.size:2}  sys3*={sys3_star(e.matroid).value}")

k3 = graphs.graphic_matroid(graphs.complete_graph(3))
p = catalog.parallel_connection(k3, catalog.get("R10").matroid, "0-1", "f2")
print("P(M(K3), R10) ~ P_K3_R10:", isomorphic(p, catalog.get("P_K3_R10").matroid) is not None)

k5 = graphs.graphic_matroid(graphs.complete_graph(5)).relabel(lambda s: "a" + s)
k33 = graphs.cographic_matroid(graphs.complete_bipartite(3, 3)).relabel(lambda s: "b" + s)
t = catalog.gpc_triangle(k5, k33, ["a0-1", "a0-2", "a1-2"], ["b0-3", "b0-4", "b0-5"])
print("P_T(M(K5), M*(K3,3)) ~ R16:", isomorphic(t, catalog.get("R16").matroid) is not None)
