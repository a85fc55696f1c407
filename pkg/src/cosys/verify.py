"""End-to-end checks reproducing the catalogue values and structural facts.

Each check is a zero-argument function returning ``(ok, expected, actual)``;
:func:`run_suite` times them and assembles a :class:`VerificationReport`.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

from . import catalog, graphs, lp
from .cosystole import (
    NoAdmissibleTriple,
    WeightVector,
    admissible_triple_indices,
    check_lower_certificate,
    check_upper_certificate,
    sys3_star,
    sys3_weighted,
    sys_star,
)
from .exactnum import format_rational
from .gf2 import Gf2Matrix, popcount
from .matroid import BinaryMatroid, cogirth, contract, delete, isomorphic, restrict, simplify

EXACT_VALUES = {
    "M_K4": Fraction(3, 2),
    "M_K5": Fraction(6, 5),
    "M_K6": Fraction(1),
    "M_K7": Fraction(6, 7),
    "Mstar_K33": Fraction(4, 3),
    "Mstar_G53": Fraction(12, 11),
    "Mstar_G54": Fraction(9, 8),
    "R10": Fraction(6, 5),
    "P_K3_R10": Fraction(12, 13),
    "R16": Fraction(12, 13),
}

RANK6 = [f"Mstar_G{i}" for i in range(1, 10)] + ["M_K7", "R12", "P_K3_R10", "R16"]
RANK4_5 = ["M_K5", "M_K6", "Mstar_K33", "Mstar_G53", "Mstar_G54", "R10"]
SIMPLIFY_MEMBERS = ["M_K5", "Mstar_K33", "R10", "Mstar_G53", "P_K3_R10"]
SEED = 20240611


@dataclass
class CheckResult:
    name: str
    passed: bool
    expected: str
    actual: str
    elapsed_ms: int


@dataclass
class VerificationReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(r.passed for r in self.results)

    def render(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{status}  {r.name}  expected={r.expected}  actual={r.actual}  ({r.elapsed_ms} ms)")
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'} ({sum(r.passed for r in self.results)}/{len(self.results)})")
        return "\n".join(lines)


def _fmt(x) -> str:
    return format_rational(x) if isinstance(x, Fraction) else str(x)


# -- individual checks --------------------------------------------------------------


def exact_value(name: str):
    res = sys3_star(catalog.get(name).matroid)
    want = EXACT_VALUES[name]
    return res.value == want, _fmt(want), _fmt(res.value)


def cographic_rank6_bound():
    vals = {f"G{i}": sys3_star(catalog.get(f"Mstar_G{i}").matroid).value for i in range(1, 10)}
    ok = all(v <= 1 for v in vals.values()) and vals["G1"] == 1
    actual = " ".join(f"{k}={_fmt(v)}" for k, v in vals.items())
    return ok, "all <= 1, G1 = 1", actual


def cosystole_values():
    g1 = sys_star(catalog.get("Mstar_G1").matroid).value
    rank6 = {n: sys_star(catalog.get(n).matroid).value for n in RANK6}
    g53 = sys_star(catalog.get("Mstar_G53").matroid).value
    ok = g1 == Fraction(1, 3) and all(v <= Fraction(1, 3) for v in rank6.values()) and g53 > Fraction(1, 4)
    actual = f"G1={_fmt(g1)} max_rank6={_fmt(max(rank6.values()))} G53={_fmt(g53)}"
    return ok, "G1 = 1/3, rank-6 <= 1/3, G53 > 1/4", actual


def inequality_suite():
    bad = []
    for name in catalog.NAMES:
        m = catalog.get(name).matroid
        s1 = sys_star(m).value
        if s1 < Fraction(cogirth(m), m.size):
            bad.append(f"{name}:cogirth")
        if admissible_triple_indices(m):
            if sys3_star(m).value < 3 * s1:
                bad.append(f"{name}:3x")
    return not bad, "sys3* >= 3 sys*, sys* >= g*/|E| on every entry", ",".join(bad) or "all hold"


def census_counts():
    gen = {n: graphs.generate_cubic_connected(n) for n in (8, 10)}
    # second method: labelled counts from an independent recursion must equal sum n!/|Aut|
    mass_ok = all(
        sum(factorial(n) // graphs.count_automorphisms(g) for g in gen[n]) == graphs.count_labeled_cubic(n)
        for n in gen
    )
    m8, m10 = graphs.census_msr_cographic(8), graphs.census_msr_cographic(10)
    girths = sorted(graphs.girth(g) for g in m8)
    ok = (len(gen[8]), len(gen[10]), len(m8), len(m10)) == (5, 19, 2, 9) and girths == [3, 4] and mass_ok
    actual = f"cubic {len(gen[8])}/{len(gen[10])} (mass formula {'agrees' if mass_ok else 'disagrees'}), census {len(m8)} (girths {girths})/{len(m10)}"
    return ok, "cubic 5/19, census 2 (girths 3,4)/9", actual


def census_frozen():
    regen = catalog.regenerate_census()
    frozen = catalog.census_graphs()
    same = all(graphs.dumps(regen[k]) == graphs.dumps(frozen[k]) for k in frozen)
    return same, "frozen census data regenerates", "identical" if same else "differs"


def lemma_g7_spectrum():
    r16 = catalog.get("R16").matroid
    bad = []
    for f in range(1, 13):
        sizes = [popcount(c) for c in delete(r16, str(f)).cocircuit_masks()]
        if not (3 in sizes and sum(1 for s in sizes if s <= 4) >= 5):
            bad.append(str(f))
    return not bad, "size-3 and >= 5 of size <= 4 for f in 1..12", "failures: " + (",".join(bad) or "none")


def lemma_g7_unique_graph():
    hits = []
    for g in graphs.census_msr_cographic(10):
        sizes = [len(c) for c in graphs.cycles(g)]
        if 3 in sizes and sum(1 for s in sizes if s <= 4) >= 5:
            hits.append(g)
    named = catalog.census_graphs()["G7"]
    ok = len(hits) == 1 and graphs.graph_canonical_form(hits[0]) == graphs.graph_canonical_form(named)
    return ok, "exactly one graph (G7)", f"{len(hits)} graph(s)"


def lemma_g7_isomorphism():
    iso = isomorphic(delete(catalog.get("R16").matroid, "7"), catalog.get("Mstar_G7").matroid)
    return iso is not None, "R16\\7 ~ M*(G7)", "bijection found" if iso else "none"


def construction_parallel():
    k3 = graphs.graphic_matroid(graphs.complete_graph(3))
    r10 = catalog.get("R10").matroid
    target = catalog.get("P_K3_R10").matroid
    ok = True
    for p_m, p_n in (("0-1", "f2"), ("1-2", "f7")):
        ok &= isomorphic(catalog.parallel_connection(k3, r10, p_m, p_n), target) is not None
    return ok, "P(M(K3), R10) ~ A12 for two basepoint choices", str(ok)


def construction_gpc():
    k5 = graphs.graphic_matroid(graphs.complete_graph(5)).relabel(lambda s: "a" + s)
    k33 = graphs.cographic_matroid(graphs.complete_bipartite(3, 3)).relabel(lambda s: "b" + s)
    target = catalog.get("R16").matroid
    ok = True
    for t_m, t_n in ((["a0-1", "a0-2", "a1-2"], ["b0-3", "b0-4", "b0-5"]),
                     (["a2-3", "a2-4", "a3-4"], ["b0-4", "b1-4", "b2-4"])):
        ok &= isomorphic(catalog.gpc_triangle(k5, k33, t_m, t_n), target) is not None
    return ok, "P_T(M(K5), M*(K3,3)) ~ A16 for two triangle choices", str(ok)


def _sys3_or_none(m: BinaryMatroid):
    try:
        return sys3_star(m).value
    except NoAdmissibleTriple:
        return None


def monotonicity_pairs(name: str) -> list[tuple[str, Fraction, Fraction, Fraction]]:
    """``(element, sys3*(M\\e), sys3*(M), sys3*(M/e))`` for every applicable element."""
    m = catalog.get(name).matroid
    mid = sys3_star(m).value
    out = []
    for e in m.labels:
        if m.is_coloop(e):
            continue
        con = contract(m, e)
        if con.rank < 3:
            continue
        lo, hi = _sys3_or_none(delete(m, e)), _sys3_or_none(con)
        if lo is None or hi is None:
            continue
        out.append((e, lo, mid, hi))
    return out


def monotonicity(name: str):
    rows = monotonicity_pairs(name)
    bad = [e for e, lo, mid, hi in rows if not lo <= mid <= hi]
    return not bad, "sys3*(M\\e) <= sys3*(M) <= sys3*(M/e)", f"{len(rows)} elements, violations: {','.join(bad) or 'none'}"


def inject_parallel_and_loops(m: BinaryMatroid, rng: random.Random, parallels: int = 3, loops: int = 2) -> BinaryMatroid:
    cols = m.columns()
    picks = [rng.randrange(m.size) for _ in range(parallels)]
    new_cols = cols + [cols[i] for i in picks] + [0] * loops
    labels = list(m.labels) + [f"par{k}" for k in range(parallels)] + [f"loop{k}" for k in range(loops)]
    order = list(range(len(new_cols)))
    rng.shuffle(order)
    rows = []
    for i in range(m.rank):
        v = 0
        for pos, j in enumerate(order):
            if (new_cols[j] >> i) & 1:
                v |= 1 << pos
        rows.append(v)
    return BinaryMatroid(Gf2Matrix(tuple(rows), len(order)), tuple(labels[j] for j in order))


def simplification_equality():
    rng = random.Random(SEED)
    bad = []
    for name in SIMPLIFY_MEMBERS:
        m = catalog.get(name).matroid
        big = inject_parallel_and_loops(m, rng)
        if sys3_star(big).value != sys3_star(simplify(big)[0]).value:
            bad.append(name)
    return not bad, "sys3*(M) = sys3*(si(M)) after injecting 3 parallels + 2 loops", ",".join(bad) or "all equal"


def random_probability(m: BinaryMatroid, rng: random.Random) -> WeightVector:
    while True:
        raw = [rng.randint(0, 50) for _ in range(m.size)]
        if any(raw):
            t = sum(raw)
            return WeightVector({lab: Fraction(x, t) for lab, x in zip(m.labels, raw)})


def rank6_weight_spot(name: str, samples: int = 100):
    rng = random.Random(f"{SEED}:{name}")
    m = catalog.get(name).matroid
    worst = max(sys3_weighted(m, random_probability(m, rng)) for _ in range(samples))
    return worst <= 1, f"{samples} random weights: sys3*(M, mu) <= 1", f"max {_fmt(worst)}"


def lp_integrity():
    problems = []
    for name in catalog.NAMES:
        m = catalog.get(name).matroid
        if not admissible_triple_indices(m):
            continue
        res = sys3_star(m)
        if not all(isinstance(o, lp.Optimal) and lp.verify_certificates(p, o)
                   for p, o in zip(res.lp_programs, res.lp_outcomes)):
            problems.append(f"{name}:certificates")
        if not check_lower_certificate(m, res.optimal_weights, res.value):
            problems.append(f"{name}:lower")
        if check_upper_certificate(m, res.dual_multipliers) != res.value:
            problems.append(f"{name}:upper")
        if len(m.cocircuit_masks()) <= 31 and sys3_star(m, whole=True).value != res.value:
            problems.append(f"{name}:whole")
        again = sys3_star(m)
        if again.value != res.value or again.optimal_weights != res.optimal_weights or again.dual_multipliers != res.dual_multipliers:
            problems.append(f"{name}:determinism")
    return not problems, "certificates sandwich the value; cutting planes = whole LP; deterministic", ",".join(problems) or "ok"


def rank4_classes() -> int:
    k5 = catalog.get("M_K5").matroid
    buckets: dict[tuple, list[BinaryMatroid]] = {}

    def add(m: BinaryMatroid):
        key = (m.size, tuple(sorted(popcount(c) for c in m.cocircuit_masks())))
        bucket = buckets.setdefault(key, [])
        if not any(isomorphic(m, other) is not None for other in bucket):
            bucket.append(m)

    for mask in range(1, 1 << k5.size):
        keep = [k5.labels[i] for i in range(k5.size) if (mask >> i) & 1]
        if k5.subset_rank(keep) == 4:
            add(restrict(k5, keep))
    add(catalog.get("Mstar_K33").matroid)
    return sum(len(b) for b in buckets.values())


def rank4_census():
    n = rank4_classes()
    return n == 17, "17", str(n)


# -- suites -----------------------------------------------------------------------


def _registry() -> dict[str, Callable[[], tuple]]:
    reg: dict[str, Callable[[], tuple]] = {}
    for name in EXACT_VALUES:
        reg[f"values:{name}"] = lambda n=name: exact_value(n)
    reg["values:cographic_rank6_bound"] = cographic_rank6_bound
    reg["values:cosystole"] = cosystole_values
    reg["values:inequalities"] = inequality_suite
    reg["census:counts"] = census_counts
    reg["census:frozen"] = census_frozen
    reg["census:rank4"] = rank4_census
    reg["lemmaG7:spectrum"] = lemma_g7_spectrum
    reg["lemmaG7:unique_graph"] = lemma_g7_unique_graph
    reg["lemmaG7:isomorphism"] = lemma_g7_isomorphism
    reg["constructions:parallel"] = construction_parallel
    reg["constructions:gpc"] = construction_gpc
    for name in RANK6:
        reg[f"rank6bound:{name}"] = lambda n=name: rank6_weight_spot(n)
    reg["lp:integrity"] = lp_integrity
    for name in RANK4_5 + RANK6:
        reg[f"monotonicity:{name}"] = lambda n=name: monotonicity(n)
    reg["monotonicity:simplify"] = simplification_equality
    return reg


SUITES = ("values", "census", "lemmaG7", "constructions", "rank6bound", "lp", "monotonicity", "all")


def check_names(suite: str) -> list[str]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    names = list(_registry())
    return names if suite == "all" else [n for n in names if n.split(":")[0] == suite]


def run_check(name: str) -> CheckResult:
    fn = _registry()[name]
    t0 = time.perf_counter()
    try:
        ok, expected, actual = fn()
    except Exception as exc:  # a crash is a failed check, not a crashed report
        ok, expected, actual = False, "no exception", f"{type(exc).__name__}: {exc}"
    return CheckResult(name, bool(ok), str(expected), str(actual), int((time.perf_counter() - t0) * 1000))


def run_suite(suite: str, workers: int | None = None) -> VerificationReport:
    names = check_names(suite)
    if workers is None:
        workers = int(os.environ.get("COSYS_THREADS", "1") or 1)
    if workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_check, names))
    else:
        results = [run_check(n) for n in names]
    return VerificationReport(results)
