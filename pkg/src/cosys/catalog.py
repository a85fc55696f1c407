"""Named matroids and weight functions: the maximal simple regular matroids
of rank at most six, a few small relatives, and the gluing constructions
(parallel connection, generalized parallel connection across a triangle)
that produce the two non-graphic, non-cographic members of rank six.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from . import graphs
from .cosystole import WeightVector
from .gf2 import Gf2Matrix
from .graphs import Graph
from .matroid import BinaryMatroid, restrict


class UnknownName(KeyError):
    pass


class LoopBasepoint(ValueError):
    pass


class NotATriangle(ValueError):
    pass


A12_LABELS = tuple(f"f{i}" for i in range(12))
A12_ROWS = (
    "110000000000",  # v0
    "101000011001",  # v1
    "000100011100",  # v2
    "000010001110",  # v3
    "000001000111",  # v4
    "000000110011",  # v5
)

A16_LABELS = tuple(str(i) for i in range(1, 17))
A16_ROWS = (
    "1000001110001100",  # v1
    "0100001101001100",  # v2
    "0010001000100001",  # v3
    "0001000100010001",  # v4
    "0000100010110110",  # v5
    "0000010001110110",  # v6
)


@dataclass
class CatalogEntry:
    name: str
    matroid: BinaryMatroid
    expected_sys3: Fraction | None = None
    expected_cogirth: int | None = None
    named_weights: list[tuple[str, WeightVector]] = field(default_factory=list)
    sys3_upper: Fraction | None = None
    graph: Graph | None = None
    description: str = ""

    def weight(self, name: str) -> WeightVector:
        for key, w in self.named_weights:
            if key == name:
                return w
        raise KeyError(name)


def a12() -> Gf2Matrix:
    return Gf2Matrix.from_strings(A12_ROWS)


def a16() -> Gf2Matrix:
    return Gf2Matrix.from_strings(A16_ROWS)


# -- frozen census ------------------------------------------------------------


def _read_graphs(fname: str) -> list[Graph]:
    text = resources.files("cosys.data").joinpath(fname).read_text()
    return graphs.loads_many(text)


CUBIC10_NAMES = tuple(f"G{i}" for i in range(1, 10))
CUBIC8_NAMES = ("G53", "G54")


def _small_cycle_counts(g: Graph) -> Counter:
    return Counter(len(c) for c in graphs.cycles(g))


def assign_census_labels(ten: list[Graph], eight: list[Graph]) -> dict[str, Graph]:
    """Name census graphs.

    G1 is the girth-5 graph (Petersen), G7 the only one with a triangle and
    at least five cycles of length at most four, G9 the only one with six
    4-cycles.  The rest take G2..G6, G8 in order of (sorted cycle lengths,
    canonical form).  On eight vertices G53/G54 are the girth 3/4 graphs.
    """
    if len(ten) != 9 or len(eight) != 2:
        raise ValueError("expected 9 ten-vertex and 2 eight-vertex census graphs")
    counts = [_small_cycle_counts(g) for g in ten]
    g1 = [k for k, g in enumerate(ten) if graphs.girth(g) == 5]
    g7 = [k for k, c in enumerate(counts) if c[3] >= 1 and c[3] + c[4] >= 5]
    g9 = [k for k, c in enumerate(counts) if c[4] == 6]
    if len(g1) != 1 or len(g7) != 1 or len(g9) != 1:
        raise ValueError("census graphs do not pin G1, G7, G9 uniquely")
    pinned = {g1[0], g7[0], g9[0]}
    rest = sorted(
        (k for k in range(9) if k not in pinned),
        key=lambda k: (graphs.cycle_spectrum(ten[k]), graphs.graph_canonical_form(ten[k])),
    )
    names = dict(zip(("G2", "G3", "G4", "G5", "G6", "G8"), rest))
    names.update(G1=g1[0], G7=g7[0], G9=g9[0])
    out = {name: ten[names[name]] for name in CUBIC10_NAMES}
    by_girth = {graphs.girth(g): g for g in eight}
    out["G53"], out["G54"] = by_girth[3], by_girth[4]
    return out


@lru_cache(maxsize=None)
def census_graphs() -> dict[str, Graph]:
    """The frozen census graphs keyed by name (G1..G9, G53, G54)."""
    ten = _read_graphs("cubic10.txt")
    eight = _read_graphs("cubic8.txt")
    return dict(zip(CUBIC10_NAMES, ten)) | dict(zip(CUBIC8_NAMES, eight))


def regenerate_census() -> dict[str, Graph]:
    return assign_census_labels(graphs.census_msr_cographic(10), graphs.census_msr_cographic(8))


def census_text(named: dict[str, Graph], names) -> str:
    return "".join(f"# {n}\n" + graphs.dumps(named[n]) for n in names)


# -- constructions ----------------------------------------------------------------


def _reduce_to_unit_columns(a: Gf2Matrix, cols: list[int]) -> Gf2Matrix:
    """Row-reduce so that ``cols[k]`` becomes the k-th standard basis vector."""
    rows = list(a.rows)
    for k, c in enumerate(cols):
        bit = 1 << c
        piv = next((i for i in range(k, len(rows)) if rows[i] & bit), None)
        if piv is None:
            raise ValueError("columns are dependent")
        rows[k], rows[piv] = rows[piv], rows[k]
        for i in range(len(rows)):
            if i != k and rows[i] & bit:
                rows[i] ^= rows[k]
    return Gf2Matrix(tuple(rows), a.ncols)


def _glue(m: BinaryMatroid, n: BinaryMatroid, pivots_m: list[int], pivots_n: list[int],
          shared_n: list[int]) -> BinaryMatroid:
    """Stack ``m`` and ``n`` sharing their first ``s`` rows.

    The pivot columns are reduced to unit vectors on both sides; the
    columns ``shared_n`` of ``n`` are identified with ``m``'s and dropped.
    """
    s = len(pivots_m)
    am = _reduce_to_unit_columns(m.representation, pivots_m)
    an = _reduce_to_unit_columns(n.representation, pivots_n)
    rm, rn = m.rank, n.rank
    only_n = [j for j in range(n.size) if j not in shared_n]
    labels = list(m.labels) + [n.labels[j] for j in only_n]
    clash = set(m.labels) & {n.labels[j] for j in only_n}
    if clash:
        raise ValueError(f"label clash between the two matroids: {sorted(clash)}")
    ncols = m.size + len(only_n)
    rows = []
    for i in range(s):
        v = am.rows[i]
        for k, j in enumerate(only_n):
            if (an.rows[i] >> j) & 1:
                v |= 1 << (m.size + k)
        rows.append(v)
    rows += list(am.rows[s:rm])
    for i in range(s, rn):
        v = 0
        for k, j in enumerate(only_n):
            if (an.rows[i] >> j) & 1:
                v |= 1 << (m.size + k)
        rows.append(v)
    return BinaryMatroid(Gf2Matrix(tuple(rows), ncols), tuple(labels))


def parallel_connection(m: BinaryMatroid, n: BinaryMatroid, p_m, p_n) -> BinaryMatroid:
    """Glue at a basepoint; the result keeps ``m``'s label for the shared element."""
    if m.is_loop(p_m) or n.is_loop(p_n):
        raise LoopBasepoint("basepoint must not be a loop")
    j = n.index(p_n)
    return _glue(m, n, [m.index(p_m)], [j], [j])


def _triangle_columns(m: BinaryMatroid, tri) -> list[int]:
    if len(tri) != 3 or len(set(map(str, tri))) != 3:
        raise NotATriangle("a triangle needs three distinct elements")
    idx = [m.index(e) for e in tri]
    cols = [m.columns()[i] for i in idx]
    if 0 in cols or len(set(cols)) < 3 or cols[0] ^ cols[1] ^ cols[2]:
        raise NotATriangle(f"{list(tri)} is not a 3-element circuit")
    return idx


def generalized_parallel_connection_triangle(m: BinaryMatroid, n: BinaryMatroid, t_m, t_n) -> BinaryMatroid:
    """Glue across triangles ``t_m`` and ``t_n`` (matched in the order given)."""
    im, jn = _triangle_columns(m, t_m), _triangle_columns(n, t_n)
    # with the first two triangle columns reduced to e1, e2 the third reads e1+e2 in both
    # n's third triangle column is dropped in favour of m's copy
    return _glue(m, n, im[:2], jn[:2], jn)


def gpc_triangle(m, n, t_m, t_n):
    return generalized_parallel_connection_triangle(m, n, t_m, t_n)


# -- entries ----------------------------------------------------------------------


def _graph_entry(name, g, cographic, sys3=None, cogirth=None, upper=None, desc=""):
    mat = graphs.cographic_matroid(g) if cographic else graphs.graphic_matroid(g)
    mat.name = name
    entry = CatalogEntry(name, mat, sys3, cogirth, [("mu1", WeightVector.uniform(mat))], upper, g, desc)
    return entry


def weight_4_3_1(g: Graph) -> WeightVector:
    """4/33 on the triangle, 3/33 on other 4-cycle edges, 1/33 elsewhere."""
    cyc = graphs.cycles(g)
    tri = set().union(*(c for c in cyc if len(c) == 3))
    quad = set().union(*(c for c in cyc if len(c) == 4)) - tri
    w = {lab: Fraction(4 if lab in tri else 3 if lab in quad else 1, 33) for lab in g.labels}
    return WeightVector(w)


def weight_1_2(g: Graph) -> WeightVector:
    """1/16 on the rim 8-cycle and 2/16 on the four chords of the Moebius ladder."""
    ladder = graphs.moebius_ladder(4)
    cert_g, order_g = graphs.canonical_labeling(g)
    cert_l, order_l = graphs.canonical_labeling(ladder)
    if cert_g != cert_l:
        raise ValueError("graph is not the Moebius ladder on four rungs")
    to_g = dict(zip(order_l, order_g))
    w = {}
    for k, (u, v) in enumerate(ladder.edges):
        chord = k >= 8
        w[g.label_of(to_g[u], to_g[v])] = Fraction(2 if chord else 1, 16)
    return WeightVector(w)


def _build(name: str) -> CatalogEntry:
    cg = census_graphs()
    if name.startswith("M_K") and name[3:].isdigit():
        n = int(name[3:])
        if not 3 <= n <= 7:
            raise UnknownName(name)
        sys3 = Fraction(6, n) if n >= 4 else None
        return _graph_entry(name, graphs.complete_graph(n), False, sys3, n - 1, desc=f"graphic matroid of K{n}")
    if name == "Mstar_K3":
        return _graph_entry(name, graphs.complete_graph(3), True, cogirth=3, desc="cographic matroid of K3")
    if name == "Mstar_K33":
        return _graph_entry(name, graphs.complete_bipartite(3, 3), True, Fraction(4, 3), 4,
                            desc="cographic matroid of K3,3")
    if name == "Mstar_G53":
        e = _graph_entry(name, cg["G53"], True, Fraction(12, 11), 3, desc="cographic, cubic 8-vertex girth 3")
        e.named_weights.append(("mu_4_3_1", weight_4_3_1(cg["G53"])))
        return e
    if name == "Mstar_G54":
        e = _graph_entry(name, cg["G54"], True, Fraction(9, 8), 4, desc="cographic, Moebius ladder on 8 vertices")
        e.named_weights.append(("mu_1_2", weight_1_2(cg["G54"])))
        return e
    if name.startswith("Mstar_G") and name[7:] in {str(i) for i in range(1, 10)}:
        g = cg[name[6:]]
        sys3 = Fraction(1) if name == "Mstar_G1" else None
        return _graph_entry(name, g, True, sys3, graphs.girth(g), Fraction(1),
                            desc=f"cographic, 10-vertex census graph {name[6:]}")
    if name == "R10":
        rep = a12().select_rows(range(1, 6)).select_columns(range(2, 12))
        mat = BinaryMatroid(rep, A12_LABELS[2:], name)
        return CatalogEntry(name, mat, Fraction(6, 5), 4, [("mu1", WeightVector.uniform(mat))],
                            description="sporadic R10 (rows v1..v5, columns f2..f11 of A12)")
    if name == "R12":
        mat = BinaryMatroid.from_matrix(a16().select_columns(range(12)), A16_LABELS[:12], name)
        return CatalogEntry(name, mat, None, None, [("mu1", WeightVector.uniform(mat))],
                            description="R12 (first twelve columns of A16)")
    if name == "P_K3_R10":
        mat = BinaryMatroid(a12(), A12_LABELS, name)
        mu = {f"f{i}": Fraction(2, 13) for i in (0, 1)} | {"f2": Fraction(0)}
        mu |= {f"f{i}": Fraction(1, 13) for i in range(3, 12)}
        return CatalogEntry(name, mat, Fraction(12, 13), 2,
                            [("mu1", WeightVector.uniform(mat)), ("mu_2_0_1", WeightVector(mu))],
                            description="parallel connection P(M(K3), R10), matrix A12")
    if name == "R16":
        mat = BinaryMatroid(a16(), A16_LABELS, name)
        def zero_on(*labs):
            return WeightVector({lab: Fraction(0) if lab in labs else Fraction(1, 13) for lab in A16_LABELS})

        # the weight as described for this matrix (zero on 8, 9, 10) leaves {1,2,9,10} at 2/13;
        # zero on 13, 14, 15 is the only three-column choice reaching 12/13, so both are kept
        return CatalogEntry(name, mat, Fraction(12, 13), None,
                            [("mu1", WeightVector.uniform(mat)), ("mu_zero_8_9_10", zero_on("8", "9", "10")),
                             ("mu_zero_13_14_15", zero_on("13", "14", "15"))],
                            description="generalized parallel connection P_T(M(K5), M*(K3,3)), matrix A16")
    raise UnknownName(name)


NAMES = (
    ["M_K3", "Mstar_K3", "M_K4", "M_K5", "M_K6", "M_K7", "Mstar_K33", "Mstar_G53", "Mstar_G54",
     "R10", "R12", "P_K3_R10", "R16"]
    + [f"Mstar_G{i}" for i in range(1, 10)]
)

RANK6_MSR = ["M_K7"] + [f"Mstar_G{i}" for i in range(1, 10) if i != 7] + ["P_K3_R10", "R16"]


@lru_cache(maxsize=None)
def get(name: str) -> CatalogEntry:
    if name not in NAMES:
        raise UnknownName(name)
    return _build(name)


def names() -> list[str]:
    return list(NAMES)
