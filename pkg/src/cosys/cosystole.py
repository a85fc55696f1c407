"""Weighted cosystole and 3-cosystole of binary matroids.

For a weight function ``mu`` on the ground set, the cosystole is the least
relative weight ``mu(C)/mu(E)`` of a cocircuit, and the 3-cosystole is the
least relative weight of an admissible triple: three cocircuits none of
which lies inside the union of the other two.  Maximising either quantity
over weight functions is a linear program; :func:`sys3_star` solves it by
constraint generation and returns both a primal weight certificate and the
dual multipliers on triples that prove optimality.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Mapping

from . import lp
from .exactnum import format_rational, parse_rational
from .gf2 import popcount
from .matroid import BinaryMatroid, ElementSet, NoCocircuits


class NoAdmissibleTriple(ValueError):
    pass


class ZeroTotalWeight(ValueError):
    pass


class GroundSetMismatch(ValueError):
    pass


class NotAdmissible(ValueError):
    pass


class NotNormalized(ValueError):
    pass


class WeightVector(dict):
    """Map from element label to a nonnegative rational weight."""

    def __init__(self, weights: Mapping | Iterable = ()):
        super().__init__()
        for lab, w in dict(weights).items():
            w = Fraction(w)
            if w < 0:
                raise ValueError(f"negative weight on {lab!r}")
            self[str(lab)] = w

    @classmethod
    def uniform(cls, m: BinaryMatroid) -> "WeightVector":
        return cls({lab: Fraction(1, m.size) for lab in m.labels})

    @property
    def total(self) -> Fraction:
        return sum(self.values(), Fraction(0))

    def scaled(self, c) -> "WeightVector":
        return WeightVector({k: v * Fraction(c) for k, v in self.items()})

    def normalized(self) -> "WeightVector":
        t = self.total
        if t == 0:
            raise ZeroTotalWeight("weight function is identically zero")
        return WeightVector({k: v / t for k, v in self.items()})

    def on(self, m: BinaryMatroid) -> list[Fraction]:
        """Weights in column order of ``m``; missing labels weigh zero."""
        extra = set(self) - set(m.labels)
        if extra:
            raise GroundSetMismatch(f"labels not in ground set: {sorted(extra)}")
        return [self.get(lab, Fraction(0)) for lab in m.labels]


@dataclass(frozen=True, order=True)
class AdmissibleTriple:
    """Sorted indices into ``cocircuits(M)``."""

    indices: tuple[int, int, int]

    def __post_init__(self):
        if len(set(self.indices)) != 3:
            raise ValueError("a triple needs three distinct cocircuits")
        object.__setattr__(self, "indices", tuple(sorted(self.indices)))


@dataclass
class InvariantResult:
    value: Fraction
    optimal_weights: WeightVector
    dual_multipliers: dict  # AdmissibleTriple (or cocircuit index, for sys*) -> Fraction
    active_constraints: int
    iterations: int = 1
    lp_outcomes: list = field(default_factory=list, repr=False)
    lp_programs: list = field(default_factory=list, repr=False)


def _mask(x: ElementSet | int) -> int:
    return x.mask if isinstance(x, ElementSet) else x


def weight_of(mu: WeightVector, x: ElementSet, m: BinaryMatroid | None = None) -> Fraction:
    """Total weight of the elements of ``x``.

    ``x`` may be an :class:`ElementSet` of ``m`` or an iterable of labels.
    """
    if isinstance(x, ElementSet):
        if m is None:
            raise GroundSetMismatch("an ElementSet needs its matroid to resolve labels")
        if x.size != m.size:
            raise GroundSetMismatch("element set belongs to a different ground set")
        w = mu.on(m)
        return sum((w[i] for i in x.indices()), Fraction(0))
    return sum((mu.get(str(lab), Fraction(0)) for lab in x), Fraction(0))


def is_admissible(c1, c2, c3) -> bool:
    """Pairwise distinct, and none inside the union of the other two."""
    sets = [_mask(c) for c in (c1, c2, c3)]
    if isinstance(c1, ElementSet):
        if not (c1.size == getattr(c2, "size", c1.size) == getattr(c3, "size", c1.size)):
            raise GroundSetMismatch("cocircuits come from different ground sets")
    a, b, c = sets
    if a == b or b == c or a == c:
        return False
    return bool(a & ~(b | c)) and bool(b & ~(a | c)) and bool(c & ~(a | b))


def admissible_triple_indices(m: BinaryMatroid) -> list[tuple[int, int, int]]:
    cached = m._cache.get("triples")
    if cached is not None:
        return cached
    cocs = m.cocircuit_masks()
    out = []
    for i, j, k in combinations(range(len(cocs)), 3):
        a, b, c = cocs[i], cocs[j], cocs[k]
        if a & ~(b | c) and b & ~(a | c) and c & ~(a | b):
            out.append((i, j, k))
    m._cache.setdefault("triples", out)
    return m._cache["triples"]


def admissible_triples(m: BinaryMatroid) -> list[AdmissibleTriple]:
    return [AdmissibleTriple(t) for t in admissible_triple_indices(m)]


def triple_sets(m: BinaryMatroid, t: AdmissibleTriple) -> list[list[str]]:
    cocs = m.cocircuit_masks()
    return [sorted(m.labels_of(cocs[i])) for i in t.indices]


def _cocircuit_weights(m: BinaryMatroid, w: list[Fraction]) -> list[Fraction]:
    return [sum((w[i] for i in range(m.size) if (c >> i) & 1), Fraction(0)) for c in m.cocircuit_masks()]


def _weights_and_total(m: BinaryMatroid, mu: WeightVector) -> tuple[list[Fraction], Fraction]:
    w = mu.on(m)
    total = sum(w, Fraction(0))
    if total == 0:
        raise ZeroTotalWeight("weight function is identically zero on the ground set")
    return w, total


def sys_weighted(m: BinaryMatroid, mu: WeightVector) -> Fraction:
    if not m.cocircuit_masks():
        raise NoCocircuits("matroid has no cocircuits")
    w, total = _weights_and_total(m, mu)
    return min(_cocircuit_weights(m, w)) / total


def _min_triple(m: BinaryMatroid, w: list[Fraction]) -> tuple[Fraction, int]:
    """Least total weight over admissible triples, and the first triple attaining it."""
    triples = admissible_triple_indices(m)
    if not triples:
        raise NoAdmissibleTriple("no triple of cocircuits has the non-inclusion property")
    cw = _cocircuit_weights(m, w)
    scale = lcm(*(x.denominator for x in cw)) if cw else 1
    iw = [x.numerator * (scale // x.denominator) for x in cw]
    best, arg = None, -1
    for k, (a, b, c) in enumerate(triples):
        s = iw[a] + iw[b] + iw[c]
        if best is None or s < best:
            best, arg = s, k
    return Fraction(best, scale), arg


def sys3_weighted(m: BinaryMatroid, mu: WeightVector) -> Fraction:
    if not admissible_triple_indices(m):
        raise NoAdmissibleTriple("no triple of cocircuits has the non-inclusion property")
    w, total = _weights_and_total(m, mu)
    return _min_triple(m, w)[0] / total


def _max_min_program(m: BinaryMatroid, rows: list[list[int]]) -> lp.LinearProgram:
    """max t  s.t.  sum(mu) = 1,  mu >= 0,  a.mu - t >= 0 for each row a."""
    n = m.size
    p = lp.LinearProgram([0] * n + [1], [lp.NONNEG] * n + [lp.FREE])
    p.add_constraint([1] * n + [0], lp.EQ, 1)
    for a in rows:
        p.add_constraint(list(a) + [-1], lp.GE, 0)
    return p


def _triple_row(m: BinaryMatroid, t: tuple[int, int, int]) -> list[int]:
    cocs = m.cocircuit_masks()
    return [sum((cocs[k] >> e) & 1 for k in t) for e in range(m.size)]


def _cocircuit_row(m: BinaryMatroid, c: int) -> list[int]:
    return [(c >> e) & 1 for e in range(m.size)]


def sys_star(m: BinaryMatroid) -> InvariantResult:
    """Maximum cosystole over probability weights, with certificates.

    Dual multipliers are keyed by cocircuit index.
    """
    cocs = m.cocircuit_masks()
    if not cocs:
        raise NoCocircuits("matroid has no cocircuits")
    p = _max_min_program(m, [_cocircuit_row(m, c) for c in cocs])
    out = lp.solve(p)
    mu = WeightVector(dict(zip(m.labels, out.primal[:-1])))
    dual = {k: -y for k, y in enumerate(out.dual[1:]) if y}
    return InvariantResult(out.value, mu, dual, len(cocs), 1, [out], [p])


def sys3_star(m: BinaryMatroid, *, whole: bool = False, max_iterations: int = 10_000) -> InvariantResult:
    """Maximum 3-cosystole over probability weights.

    With ``whole=True`` every admissible triple is a constraint from the
    start; otherwise constraints are generated: solve over the active
    triples, find the lightest admissible triple under the LP weights, and
    add it while it undercuts the LP value.
    """
    triples = admissible_triple_indices(m)
    if not triples:
        raise NoAdmissibleTriple("no triple of cocircuits has the non-inclusion property")
    cocs = m.cocircuit_masks()
    if whole:
        active = list(range(len(triples)))
    else:
        sizes = [sum(popcount(cocs[i]) for i in t) for t in triples]
        active = [min(range(len(triples)), key=lambda k: (sizes[k], k))]
    outcomes, programs = [], []
    for iteration in range(1, max_iterations + 1):
        p = _max_min_program(m, [_triple_row(m, triples[k]) for k in active])
        out = lp.solve(p)
        outcomes.append(out)
        programs.append(p)
        w = list(out.primal[:-1])
        true_min, arg = _min_triple(m, w)
        if true_min >= out.value:
            break
        active.append(arg)
    else:
        raise RuntimeError("constraint generation did not converge")
    mu = WeightVector(dict(zip(m.labels, w)))
    dual = {AdmissibleTriple(triples[k]): -y for k, y in zip(active, out.dual[1:]) if y}
    return InvariantResult(out.value, mu, dual, len(active), iteration, outcomes, programs)


def check_lower_certificate(m: BinaryMatroid, mu: WeightVector, bound) -> bool:
    return sys3_weighted(m, mu) >= Fraction(bound)


def check_upper_certificate(m: BinaryMatroid, multipliers: Mapping) -> Fraction:
    """Weak-duality bound from nonnegative multipliers on admissible triples.

    Returns the largest, over elements, of the multiplier mass of triples
    covering the element (counted with multiplicity); the 3-cosystole of
    ``m`` never exceeds it.
    """
    cocs = m.cocircuit_masks()
    total = Fraction(0)
    load = [Fraction(0)] * m.size
    for t, lam in multipliers.items():
        idx = t.indices if isinstance(t, AdmissibleTriple) else tuple(t)
        lam = Fraction(lam)
        if lam < 0:
            raise NotNormalized("multipliers must be nonnegative")
        if any(not 0 <= i < len(cocs) for i in idx) or not is_admissible(*(cocs[i] for i in idx)):
            raise NotAdmissible(f"triple {idx} is not admissible")
        total += lam
        for e in range(m.size):
            k = sum((cocs[i] >> e) & 1 for i in idx)
            if k:
                load[e] += k * lam
    if total != 1:
        raise NotNormalized(f"multipliers sum to {total}, not 1")
    return max(load)


def check_sys_upper_certificate(m: BinaryMatroid, multipliers: Mapping[int, Fraction]) -> Fraction:
    """The cosystole analogue of :func:`check_upper_certificate`, keyed by cocircuit index."""
    cocs = m.cocircuit_masks()
    total = sum((Fraction(v) for v in multipliers.values()), Fraction(0))
    if total != 1 or any(Fraction(v) < 0 for v in multipliers.values()):
        raise NotNormalized("multipliers must be nonnegative and sum to 1")
    load = [Fraction(0)] * m.size
    for k, lam in multipliers.items():
        for e in range(m.size):
            if (cocs[k] >> e) & 1:
                load[e] += Fraction(lam)
    return max(load)


def timed_sys3_star(m: BinaryMatroid) -> tuple[InvariantResult, int]:
    t0 = time.perf_counter()
    res = sys3_star(m)
    return res, int((time.perf_counter() - t0) * 1000)


# -- text formats -------------------------------------------------------------------


def dumps_weights(mu: Mapping) -> str:
    return "".join(f"{lab} {format_rational(Fraction(w))}\n" for lab, w in mu.items())


def loads_weights(text: str) -> WeightVector:
    """Parse ``<label> <p/q>`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {n}: expected '<label> <p/q>'")
        if parts[0] in out:
            raise ValueError(f"line {n}: duplicate label {parts[0]!r}")
        out[parts[0]] = parse_rational(parts[1])
    return WeightVector(out)


def dumps_certificate(m: BinaryMatroid, res: InvariantResult) -> str:
    lines = [f"value {format_rational(res.value)}", "weights"]
    lines += [f"  {lab} {format_rational(w)}" for lab, w in res.optimal_weights.items()]
    lines.append("dual")
    cocs = m.cocircuits()
    for t in sorted(res.dual_multipliers):
        sets = " ".join(m.format_set(cocs[i]) for i in t.indices)
        lines.append(f"  triple {sets} {format_rational(res.dual_multipliers[t])}")
    return "\n".join(lines) + "\n"


def loads_certificate(m: BinaryMatroid, text: str) -> tuple[Fraction, WeightVector, dict]:
    """Parse a certificate file against ``m``; returns (value, weights, multipliers)."""
    index = {c.mask: k for k, c in enumerate(m.cocircuits())}
    value, weights, dual, block = None, {}, {}, None
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("value "):
            value = parse_rational(line.split()[1])
        elif line in ("weights", "dual"):
            block = line
        elif block == "weights":
            lab, w = line.split()
            weights[lab] = parse_rational(w)
        elif block == "dual" and line.startswith("triple "):
            body, lam = line[len("triple "):].rsplit(" ", 1)
            sets = [s.strip("{}") for s in body.split()]
            masks = [m.element_set(s.split(",") if s else []).mask for s in sets]
            if len(masks) != 3 or any(x not in index for x in masks):
                raise NotAdmissible(f"line {n}: not a triple of cocircuits")
            dual[AdmissibleTriple(tuple(index[x] for x in masks))] = parse_rational(lam)
        else:
            raise ValueError(f"line {n}: unexpected {line!r}")
    if value is None:
        raise ValueError("certificate lacks a value line")
    return value, WeightVector(weights), dual
