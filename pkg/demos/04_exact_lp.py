"""The exact simplex solver and its certificates."""

from fractions import Fraction

from cosys import lp

# max x + y  s.t.  x + 2y <= 4,  3x + y <= 6
p = lp.LinearProgram([1, 1])
p.add_constraint([1, 2], lp.LE, 4)
p.add_constraint([3, 1], lp.LE, 6)
out = lp.solve(p)
print(out.value, out.primal, out.dual)  # exact 14/5 with a matching dual
print("certificates check:", lp.verify_certificates(p, out))

# an infeasible program returns a Farkas vector
q = lp.LinearProgram([1])
q.add_constraint([1], lp.GE, 2)
q.add_constraint([1], lp.LE, 1)
bad = lp.solve(q)
print(bad)

# an unbounded one returns a ray and a feasible point
r = lp.LinearProgram([1, 0])
r.add_constraint([0, 1], lp.LE, Fraction(1, 2))
print(lp.solve(r))
print(p.dump())
