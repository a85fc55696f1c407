"""Exact two-phase simplex over rationals with Bland's pivoting rule.

Programs are maximisation problems ``max c.x`` subject to rows
``a.x (<=|=|>=) b`` with each variable either nonnegative or free.

Every outcome carries a certificate in the original row/column space:

* ``Optimal``: primal ``x`` and dual ``y`` with ``y_i >= 0`` on ``<=`` rows,
  ``y_i <= 0`` on ``>=`` rows, ``(A^T y)_j >= c_j`` for nonnegative and
  ``= c_j`` for free variables, and ``b.y = c.x``.
* ``Infeasible``: ``y`` obeying the same sign rules with ``A^T y >= 0``
  (``= 0`` on free variables) and ``b.y < 0``.
* ``Unbounded``: a feasible ``point`` and a ``ray`` ``d`` with ``A d`` of the
  row's sign (``<= 0``, ``= 0``, ``>= 0``), ``d >= 0`` on nonnegative
  variables and ``c.d > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .exactnum import format_rational

LE, EQ, GE = "<=", "=", ">="
NONNEG, FREE = "nonnegative", "free"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction


@dataclass
class LinearProgram:
    objective: list[Fraction]
    bounds: list[str] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)

    def __post_init__(self):
        self.objective = [Fraction(c) for c in self.objective]
        if not self.bounds:
            self.bounds = [NONNEG] * len(self.objective)
        if len(self.bounds) != len(self.objective):
            raise ValueError("one bound kind per variable")
        if any(b not in (NONNEG, FREE) for b in self.bounds):
            raise ValueError("bound kind must be 'nonnegative' or 'free'")
        for con in self.constraints:
            self._check(con)

    @property
    def nvars(self) -> int:
        return len(self.objective)

    def _check(self, con: Constraint):
        if len(con.coeffs) != self.nvars:
            raise ValueError("coefficient vector length differs from variable count")
        if con.relation not in (LE, EQ, GE):
            raise ValueError(f"unknown relation {con.relation!r}")

    def add_constraint(self, coeffs: Sequence, relation: str, rhs) -> None:
        con = Constraint(tuple(Fraction(c) for c in coeffs), relation, Fraction(rhs))
        self._check(con)
        self.constraints.append(con)

    def dump(self) -> str:
        """Debugging text; not a stable format."""
        lines = ["max " + " ".join(format_rational(c) for c in self.objective)]
        lines.append("bounds " + " ".join("+" if b == NONNEG else "free" for b in self.bounds))
        for con in self.constraints:
            lhs = " ".join(format_rational(c) for c in con.coeffs)
            lines.append(f"{lhs} {con.relation} {format_rational(con.rhs)}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    primal: tuple[Fraction, ...]
    dual: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    farkas: tuple[Fraction, ...]


@dataclass(frozen=True)
class Unbounded:
    ray: tuple[Fraction, ...]
    point: tuple[Fraction, ...]


LpOutcome = Optimal | Infeasible | Unbounded


class _Tableau:
    """Fraction-free tableau.

    ``rows`` hold integers equal to ``det`` times the entries of the usual
    tableau ``B^-1 [A | b]``, with ``det > 0``.  Pivoting is integer
    preserving: every division in :meth:`pivot` is exact.  Objective rows
    ride along as extra rows so reduced costs are never recomputed.
    """

    def __init__(self, rows: list[list[int]], objectives: list[list[int]]):
        self.rows = rows
        self.obj = objectives
        self.det = 1
        self.basis = [-1] * len(rows)

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        if prow[c] < 0:
            prow[:] = [-x for x in prow]
        p = prow[c]
        d = self.det
        nz = [(j, x) for j, x in enumerate(prow) if x]
        for other in self.rows + self.obj:
            if other is prow:
                continue
            f = other[c]
            if f:
                for j in range(len(other)):
                    other[j] *= p
                for j, x in nz:
                    other[j] -= f * x
                if d != 1:
                    for j in range(len(other)):
                        if other[j]:
                            other[j] //= d
            elif p != d:
                for j in range(len(other)):
                    if other[j]:
                        other[j] = other[j] * p // d
        self.det = p
        self.basis[r] = c

    def run(self, k: int, allowed: list[bool]) -> int | None:
        """Bland's rule on objective row ``k``; returns an unbounded column or None."""
        obj = self.obj[k]
        ncols = len(allowed)
        while True:
            enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
            if enter is None:
                return None
            leave = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    if leave is None:
                        leave = i
                        continue
                    lrow = self.rows[leave]
                    # compare row[-1]/a with lrow[-1]/lrow[enter]
                    lhs, rhs = row[-1] * lrow[enter], lrow[-1] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[leave]):
                        leave = i
            if leave is None:
                return enter
            self.pivot(leave, enter)

    def value(self, i: int) -> Fraction:
        return Fraction(self.rows[i][-1], self.det)


def _lcm_den(values) -> int:
    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out


def solve(p: LinearProgram) -> LpOutcome:
    """Solve ``p`` exactly.  Deterministic; certificates are checked before returning."""
    out = _solve(p)
    if not verify_certificates(p, out):
        raise AssertionError("simplex produced an invalid certificate")
    return out


def _solve(p: LinearProgram) -> LpOutcome:
    nv = p.nvars
    # structural columns: x_j, plus a negative copy for free variables
    struct = []  # (original variable, sign)
    for j, kind in enumerate(p.bounds):
        struct.append((j, 1))
        if kind == FREE:
            struct.append((j, -1))
    ns = len(struct)
    m = len(p.constraints)

    # orient rows so rhs >= 0, preferring <= (slack-feasible) when rhs == 0
    flips, rels = [], []
    for con in p.constraints:
        flip = con.rhs < 0 or (con.rhs == 0 and con.relation == GE)
        flips.append(-1 if flip else 1)
        rel = con.relation
        if flip and rel != EQ:
            rel = GE if rel == LE else LE
        rels.append(rel)

    # one slack/surplus per inequality, then an artificial for each row not of type <=
    slack_col, ident_col, art_cols = {}, {}, []
    k = ns
    for i, r in enumerate(rels):
        if r != EQ:
            slack_col[i] = k
            k += 1
    for i, r in enumerate(rels):
        if r == LE:
            ident_col[i] = slack_col[i]
        else:
            ident_col[i] = k
            art_cols.append(k)
            k += 1
    ncols = k
    is_art = [False] * ncols
    for c in art_cols:
        is_art[c] = True

    rows = []
    for i, con in enumerate(p.constraints):
        s = flips[i]
        scale = _lcm_den(list(con.coeffs) + [con.rhs])
        row = [0] * (ncols + 1)
        for c, (j, sign) in enumerate(struct):
            v = s * sign * con.coeffs[j] * scale
            row[c] = v.numerator
        if rels[i] == LE:
            row[slack_col[i]] = scale
        elif rels[i] == GE:
            row[slack_col[i]] = -scale
        if rels[i] != LE:
            row[ident_col[i]] = scale
        row[-1] = (s * con.rhs * scale).numerator
        rows.append(row)

    # objective rows hold reduced costs d_j = c_B B^-1 A_j - c_j (times det and a scale)
    cost = [Fraction(0)] * ncols
    for c, (j, sign) in enumerate(struct):
        cost[c] = sign * p.objective[j]
    cscale = _lcm_den(cost)
    obj2 = [int(-x * cscale) for x in cost] + [0]
    cost1 = [-1 if is_art[c] else 0 for c in range(ncols)]
    obj1 = [-x for x in cost1] + [0]
    tab = _Tableau(rows, [obj1, obj2])
    for i in range(m):
        tab.pivot(i, ident_col[i])

    def duals(k: int, costs, factor: int) -> list[Fraction]:
        obj = tab.obj[k]
        return [(Fraction(obj[ident_col[i]], tab.det * factor) + costs[ident_col[i]]) * flips[i] for i in range(m)]

    if art_cols:
        tab.run(0, [True] * ncols)
        if tab.obj[0][-1] < 0:
            return Infeasible(tuple(duals(0, cost1, 1)))
        # drive zero-valued artificials out of the basis where possible
        for i, b in enumerate(tab.basis):
            if is_art[b]:
                c = next((c for c in range(ncols) if not is_art[c] and tab.rows[i][c]), None)
                if c is not None:
                    tab.pivot(i, c)

    allowed = [not is_art[c] for c in range(ncols)]
    enter = tab.run(1, allowed)

    values = [Fraction(0)] * ncols
    for i, b in enumerate(tab.basis):
        values[b] = tab.value(i)
    x = [Fraction(0)] * nv
    for c, (j, sign) in enumerate(struct):
        x[j] += sign * values[c]

    if enter is not None:
        dirn = [Fraction(0)] * ncols
        dirn[enter] = Fraction(1)
        for i, b in enumerate(tab.basis):
            dirn[b] = -Fraction(tab.rows[i][enter], tab.det)
        ray = [Fraction(0)] * nv
        for c, (j, sign) in enumerate(struct):
            ray[j] += sign * dirn[c]
        return Unbounded(tuple(ray), tuple(x))

    y = duals(1, cost, cscale)
    value = sum((c * v for c, v in zip(p.objective, x)), Fraction(0))
    return Optimal(value, tuple(x), tuple(y))


def _row_value(con: Constraint, x: Sequence[Fraction]) -> Fraction:
    return sum((a * v for a, v in zip(con.coeffs, x) if a), Fraction(0))


def _rel_holds(lhs: Fraction, rel: str, rhs: Fraction) -> bool:
    if rel == LE:
        return lhs <= rhs
    if rel == GE:
        return lhs >= rhs
    return lhs == rhs


def _dual_signs_ok(p: LinearProgram, y: Sequence[Fraction]) -> bool:
    for con, yi in zip(p.constraints, y):
        if con.relation == LE and yi < 0:
            return False
        if con.relation == GE and yi > 0:
            return False
    return True


def _aty(p: LinearProgram, y: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * p.nvars
    for con, yi in zip(p.constraints, y):
        if yi:
            for j, a in enumerate(con.coeffs):
                if a:
                    out[j] += a * yi
    return out


def verify_certificates(p: LinearProgram, o: LpOutcome) -> bool:
    """Re-check an outcome against ``p`` from scratch, in exact arithmetic."""
    m = len(p.constraints)
    if isinstance(o, Optimal):
        x, y = o.primal, o.dual
        if len(x) != p.nvars or len(y) != m:
            return False
        if any(v < 0 for v, b in zip(x, p.bounds) if b == NONNEG):
            return False
        if not all(_rel_holds(_row_value(c, x), c.relation, c.rhs) for c in p.constraints):
            return False
        if not _dual_signs_ok(p, y):
            return False
        aty = _aty(p, y)
        for j, kind in enumerate(p.bounds):
            if kind == NONNEG and aty[j] < p.objective[j]:
                return False
            if kind == FREE and aty[j] != p.objective[j]:
                return False
        primal_value = sum((c * v for c, v in zip(p.objective, x)), Fraction(0))
        dual_value = sum((c.rhs * yi for c, yi in zip(p.constraints, y)), Fraction(0))
        return primal_value == o.value == dual_value
    if isinstance(o, Infeasible):
        y = o.farkas
        if len(y) != m or not _dual_signs_ok(p, y):
            return False
        aty = _aty(p, y)
        for j, kind in enumerate(p.bounds):
            if kind == NONNEG and aty[j] < 0:
                return False
            if kind == FREE and aty[j] != 0:
                return False
        return sum((c.rhs * yi for c, yi in zip(p.constraints, y)), Fraction(0)) < 0
    if isinstance(o, Unbounded):
        d, x = o.ray, o.point
        if len(d) != p.nvars or len(x) != p.nvars:
            return False
        if any(v < 0 for v, b in zip(x, p.bounds) if b == NONNEG):
            return False
        if not all(_rel_holds(_row_value(c, x), c.relation, c.rhs) for c in p.constraints):
            return False
        if any(v < 0 for v, b in zip(d, p.bounds) if b == NONNEG):
            return False
        if not all(_rel_holds(_row_value(c, d), c.relation, Fraction(0)) for c in p.constraints):
            return False
        return sum((c * v for c, v in zip(p.objective, d)), Fraction(0)) > 0
    return False
