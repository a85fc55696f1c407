"""Bit-packed GF(2) matrices, row spaces and cocircuits."""

from cosys import catalog
from cosys.gf2 import Gf2Matrix, dual_representation, rank, row_space_vectors, standard_form
from cosys.matroid import BinaryMatroid

a = Gf2Matrix.from_strings(["1101", "0111"])  # rows are 0/1 strings, column 0 first
print(a)
print("rank", rank(a))
print("row space", [format(v, "04b")[::-1] for v in row_space_vectors(a)])  # 2^rank - 1 vectors

b, perm = standard_form(a)  # [I | D] after a column permutation
print("standard form", b.to_strings(), "perm", perm)
print("dual rows", dual_representation(a).to_strings())  # orthogonal complement, same columns

m = BinaryMatroid(a, ("w", "x", "y", "z"))
print("cocircuits", [m.format_set(c) for c in m.cocircuits()])  # minimal row-space supports
print("circuits", [m.format_set(c) for c in m.circuits()])

r16 = catalog.get("R16").matroid  # the 16-column matrix, labels 1..16
print(len(r16.cocircuits()), "cocircuits of R16, smallest:", r16.format_set(r16.cocircuits()[0]))
