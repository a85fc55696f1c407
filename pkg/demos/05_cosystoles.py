"""Weighted cosystoles, the max-min LP and its two certificates."""

from fractions import Fraction

from cosys import catalog
from cosys.cosystole import (
    WeightVector,
    check_lower_certificate,
    check_upper_certificate,
    dumps_certificate,
    sys3_star,
    sys3_weighted,
    sys_star,
)

k7 = catalog.get("M_K7")
print("uniform weight on M(K7):", sys3_weighted(k7.matroid, k7.weight("mu1")))

res = sys3_star(k7.matroid)  # constraint generation over admissible triples
print("sys3* =", res.value, "after", res.iterations, "LP rounds")
print("lower bound holds:", check_lower_certificate(k7.matroid, res.optimal_weights, res.value))
print("upper bound from duals:", check_upper_certificate(k7.matroid, res.dual_multipliers))

g53 = catalog.get("Mstar_G53")
print("4,3,1 weight on M*(G53):", sys3_weighted(g53.matroid, g53.weight("mu_4_3_1")))
print(dumps_certificate(g53.matroid, sys3_star(g53.matroid)))

print("sys* of the Petersen cographic matroid:", sys_star(catalog.get("Mstar_G1").matroid).value)

# weights need not be normalised; only ratios matter
mu = WeightVector({lab: 3 for lab in k7.matroid.labels})
print(sys3_weighted(k7.matroid, mu) == Fraction(6, 7))
