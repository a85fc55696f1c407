"""Small simple graphs: predicates, cycle matroids and the cubic census."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .gf2 import Gf2Matrix
from .matroid import BinaryMatroid, dual

MAX_CENSUS_VERTICES = 12


class Acyclic(ValueError):
    pass


class Disconnected(ValueError):
    pass


class OutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1`` with labeled edges."""

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.edges):
            raise ValueError("one label per edge required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("edge labels must be distinct")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise ValueError("self-loops are not allowed")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"repeated edge {key}")
            seen.add(key)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None) -> "Graph":
        edges = tuple((min(u, v), max(u, v)) for u, v in edges)
        if labels is None:
            labels = [f"{u}-{v}" for u, v in edges]
        return cls(n, edges, tuple(labels))

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency()]

    def label_of(self, u: int, v: int) -> str:
        key = (min(u, v), max(u, v))
        return self.labels[self.edges.index(key)]


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def moebius_ladder(rungs: int) -> Graph:
    """Rim cycle on ``2*rungs`` vertices plus chords joining opposite vertices."""
    n = 2 * rungs
    rim = [(i, (i + 1) % n) for i in range(n)]
    chords = [(i, i + rungs) for i in range(rungs)]
    return Graph.from_edges(n, rim + chords)


def is_connected(g: Graph, skip: frozenset[int] = frozenset()) -> bool:
    """Connectivity of ``g`` after removing the edges with indices in ``skip``."""
    if g.n == 0:
        return True
    adj = [[] for _ in range(g.n)]
    for k, (u, v) in enumerate(g.edges):
        if k not in skip:
            adj[u].append(v)
            adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def is_three_edge_connected(g: Graph) -> bool:
    if not is_connected(g):
        return False
    for k in range(1, 3):
        for cut in combinations(range(g.m), k):
            if not is_connected(g, frozenset(cut)):
                return False
    return True


# -- cycle matroids ------------------------------------------------------------


def graphic_matroid(g: Graph) -> BinaryMatroid:
    """Cycle matroid from the vertex-edge incidence matrix."""
    if not is_connected(g):
        raise Disconnected("graphic_matroid expects a connected graph")
    rows = [[0] * g.m for _ in range(g.n)]
    for k, (u, v) in enumerate(g.edges):
        rows[u][k] = 1
        rows[v][k] = 1
    return BinaryMatroid.from_matrix(Gf2Matrix.from_lists(rows, g.m), g.labels)


def cographic_matroid(g: Graph) -> BinaryMatroid:
    return dual(graphic_matroid(g))


def cycles(g: Graph) -> list[frozenset[str]]:
    """Edge-label sets of all simple cycles, ordered by (size, edge positions)."""
    m = graphic_matroid(g)
    return [frozenset(m.labels_of(c)) for c in m.circuit_masks()]


def cycle_spectrum(g: Graph) -> tuple[int, ...]:
    return tuple(sorted(len(c) for c in cycles(g)))


def girth(g: Graph) -> int:
    if not is_connected(g):
        raise Disconnected("girth is computed on connected graphs")
    cyc = cycles(g)
    if not cyc:
        raise Acyclic("graph has no cycles")
    return len(cyc[0])


# -- planarity -------------------------------------------------------------------


def _pack_paths(adj, pairs, branch, used) -> bool:
    """Route vertex-disjoint paths joining each pair; interiors avoid ``used``."""
    if not pairs:
        return True
    (s, t), rest = pairs[0], pairs[1:]
    path = []

    def extend(u) -> bool:
        for w in adj[u]:
            if w == t:
                if _pack_paths(adj, rest, branch, used):
                    return True
            elif w not in used and w not in branch:
                used.add(w)
                path.append(w)
                if extend(w):
                    return True
                path.pop()
                used.discard(w)
        return False

    return extend(s)


def _has_subdivision(adj, branch_sets) -> bool:
    for branch, pairs in branch_sets:
        if _pack_paths(adj, pairs, frozenset(branch), set()):
            return True
    return False


def find_kuratowski(g: Graph) -> tuple[str, tuple[int, ...]] | None:
    """Locate a K5 or K3,3 subdivision.

    Returns ``("K5", branch)`` or ``("K33", side_a + side_b)``, or ``None``
    when no subdivision exists (the graph is planar).  Exhaustive
    backtracking; intended for graphs of at most a dozen vertices.
    """
    adj = [sorted(a) for a in g.adjacency()]
    # strip vertices of degree <= 1; they lie on no subdivision
    alive = set(range(g.n))
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            if sum(1 for w in adj[v] if w in alive) <= 1:
                alive.discard(v)
                changed = True
    adj = [[w for w in adj[v] if w in alive] if v in alive else [] for v in range(g.n)]
    deg = [len(a) for a in adj]

    big = [v for v in alive if deg[v] >= 4]
    for five in combinations(big, 5):
        if _has_subdivision(adj, [(five, list(combinations(five, 2)))]):
            return "K5", five
    three_plus = [v for v in alive if deg[v] >= 3]
    for six in combinations(three_plus, 6):
        first = six[0]
        for others in combinations(six[1:], 2):
            side_a = (first,) + others
            side_b = tuple(v for v in six if v not in side_a)
            pairs = [(a, b) for a in side_a for b in side_b]
            if _pack_paths(adj, pairs, frozenset(six), set()):
                return "K33", side_a + side_b
    return None


def is_planar(g: Graph) -> bool:
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return False
    return find_kuratowski(g) is None


# -- canonical form --------------------------------------------------------------


def _refine(adj, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement: split cells by neighbour counts into each cell."""
    while True:
        where = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                where[v] = ci
        new_cells = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                counts = [0] * len(cells)
                for w in adj[v]:
                    counts[where[w]] += 1
                groups.setdefault(tuple(counts), []).append(v)
            if len(groups) > 1:
                split = True
            for key in sorted(groups):
                new_cells.append(groups[key])
        cells = new_cells
        if not split:
            return cells


def canonical_labeling(g: Graph) -> tuple[tuple, list[int]]:
    """Return ``(certificate, order)`` where ``order[k]`` is the vertex put at position k.

    Individualisation-refinement with exhaustive branching on the first
    non-singleton cell; the certificate is the lexicographically smallest
    sorted relabelled edge list over all leaves.
    """
    adj = g.adjacency()
    by_degree: dict[int, list[int]] = {}
    for v in range(g.n):
        by_degree.setdefault(len(adj[v]), []).append(v)
    start = _refine(adj, [by_degree[d] for d in sorted(by_degree)])
    best: list = [None, None]

    def leaf(cells):
        order = [c[0] for c in cells]
        pos = {v: k for k, v in enumerate(order)}
        cert = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges))
        if best[0] is None or cert < best[0]:
            best[0], best[1] = cert, order

    def search(cells):
        target = next((k for k, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            leaf(cells)
            return
        for v in cells[target]:
            rest = [w for w in cells[target] if w != v]
            branched = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(adj, branched))

    search(start)
    return (g.n, best[0]), best[1]


def graph_canonical_form(g: Graph) -> tuple:
    return canonical_labeling(g)[0]


def canonical_graph(g: Graph) -> Graph:
    """Relabel vertices canonically; edges sorted, labels ``u-v``."""
    cert, _ = canonical_labeling(g)
    return Graph.from_edges(g.n, cert[1])


# -- cubic census ------------------------------------------------------------------


def _cubic_labelings(n: int):
    """Yield edge lists of connected cubic graphs on ``n`` vertices in BFS labelling.

    Vertices are processed in order; each one takes its missing neighbours
    from already-introduced vertices with spare degree, or from fresh
    vertices, which must be introduced in increasing order.  Every connected
    cubic graph has such a labelling (a breadth-first order).
    """
    adj = [set() for _ in range(n)]

    def rec(v: int, nxt: int):
        if v == n:
            yield [(u, w) for u in range(n) for w in adj[u] if u < w]
            return
        if v >= nxt:
            return  # v was never reached: disconnected
        need = 3 - len(adj[v])
        if need == 0:
            yield from rec(v + 1, nxt)
            return
        old = [w for w in range(v + 1, nxt) if len(adj[w]) < 3 and w not in adj[v]]
        for fresh in range(0, min(need, n - nxt) + 1):
            for chosen in combinations(old, need - fresh):
                targets = list(chosen) + list(range(nxt, nxt + fresh))
                for w in targets:
                    adj[v].add(w)
                    adj[w].add(v)
                yield from rec(v + 1, nxt + fresh)
                for w in targets:
                    adj[v].discard(w)
                    adj[w].discard(v)

    yield from rec(0, 1)


def generate_cubic_connected(n: int) -> list[Graph]:
    """One canonical representative per class of connected cubic graphs on n vertices."""
    if n % 2 or not 4 <= n <= MAX_CENSUS_VERTICES:
        raise OutOfRange(f"n must be even with 4 <= n <= {MAX_CENSUS_VERTICES}")
    seen = {}
    for edges in _cubic_labelings(n):
        g = Graph.from_edges(n, edges)
        cert = graph_canonical_form(g)
        if cert not in seen:
            seen[cert] = Graph.from_edges(n, cert[1])
    return [seen[c] for c in sorted(seen)]


def count_automorphisms(g: Graph) -> int:
    """Size of the automorphism group, by backtracking along a BFS order."""
    adj = g.adjacency()
    order, seen = [], set()
    for root in range(g.n):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    deg = [len(a) for a in adj]
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> int:
        if k == g.n:
            return 1
        v = order[k]
        total = 0
        for w in range(g.n):
            if w in used or deg[w] != deg[v]:
                continue
            if all((image[u] in adj[w]) == (u in adj[v]) for u in order[:k]):
                image[v] = w
                used.add(w)
                total += extend(k + 1)
                used.discard(w)
                del image[v]
        return total

    return extend(0)


def count_labeled_cubic(n: int, connected: bool = True) -> int:
    """Number of labelled simple cubic graphs on n vertices, counted independently of any generator.

    Vertices are processed in order; the state records how many later vertices still
    need one, two or three more edges.
    """
    from functools import lru_cache
    from math import comb

    @lru_cache(maxsize=None)
    def fill(c1: int, c2: int, c3: int) -> int:
        # the next vertex takes its residual from the highest non-empty class; by symmetry
        # any fixed choice works, so pick one with residual 3, then 2, then 1
        if c1 == c2 == c3 == 0:
            return 1
        if c3:
            d, c3 = 3, c3 - 1
        elif c2:
            d, c2 = 2, c2 - 1
        else:
            d, c1 = 1, c1 - 1
        total = 0
        for k3 in range(min(d, c3) + 1):
            for k2 in range(min(d - k3, c2) + 1):
                k1 = d - k3 - k2
                if k1 > c1:
                    continue
                ways = comb(c3, k3) * comb(c2, k2) * comb(c1, k1)
                total += ways * fill(c1 - k1 + k2, c2 - k2 + k3, c3 - k3)
        return total

    def all_graphs(m: int) -> int:
        return fill(0, 0, m) if m % 2 == 0 else 0

    if not connected:
        return all_graphs(n)
    conn = {0: 0}
    for m in range(1, n + 1):
        conn[m] = all_graphs(m) - sum(comb(m - 1, k - 1) * conn[k] * all_graphs(m - k) for k in range(1, m))
    return conn[n]


def census_msr_cographic(n: int) -> list[Graph]:
    """3-edge-connected, non-planar connected cubic graphs on n vertices."""
    if n not in (8, 10):
        raise OutOfRange("census is defined for 8 or 10 vertices")
    return [g for g in generate_cubic_connected(n) if is_three_edge_connected(g) and not is_planar(g)]


# -- text format -------------------------------------------------------------------


def dumps(g: Graph) -> str:
    lines = [f"vertices {g.n}"]
    lines += [f"edge {lab} {u} {v}" for lab, (u, v) in zip(g.labels, g.edges)]
    return "\n".join(lines) + "\n"


def loads_many(text: str) -> list[Graph]:
    """Parse one or more ``vertices`` / ``edge`` blocks."""
    graphs = []
    n = None
    edges, labels = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertices" and len(parts) == 2:
            if n is not None:
                graphs.append(Graph.from_edges(n, edges, labels))
            n, edges, labels = int(parts[1]), [], []
        elif parts[0] == "edge" and len(parts) == 4 and n is not None:
            labels.append(parts[1])
            edges.append((int(parts[2]), int(parts[3])))
        else:
            raise ValueError(f"bad graph line: {line!r}")
    if n is not None:
        graphs.append(Graph.from_edges(n, edges, labels))
    return graphs


def loads(text: str) -> Graph:
    graphs = loads_many(text)
    if len(graphs) != 1:
        raise ValueError(f"expected one graph, found {len(graphs)}")
    return graphs[0]
