"""Deletion, contraction, duality, simplification and isomorphism search."""

from cosys import catalog, graphs
from cosys.matroid import cogirth, contract, delete, dual, isomorphic, simplify

k4 = graphs.graphic_matroid(graphs.complete_graph(4))
print(k4, "cogirth", cogirth(k4))
print("K4 / 0-1:", contract(k4, "0-1"))  # rank drops by one
print("K4 \\ 0-1:", delete(k4, "0-1"))
print("dual of K4 is K4 again?", isomorphic(dual(k4), k4) is not None)  # K4 is self-dual

n, kept = simplify(k4)
print("already simple:", n.size == k4.size)

r16 = catalog.get("R16").matroid
g7 = catalog.get("Mstar_G7").matroid
phi = isomorphic(delete(r16, "7"), g7)  # backtracking with cocircuit-size signatures
print("R16 \\ 7 ~ M*(G7):", phi is not None)
print("first few pairs", list(phi.items())[:4])

g53, g54 = catalog.get("Mstar_G53").matroid, catalog.get("Mstar_G54").matroid
print("M*(G53) ~ M*(G54):", isomorphic(g53, g54))  # cogirths 3 and 4 differ
