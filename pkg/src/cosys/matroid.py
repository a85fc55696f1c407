"""Binary matroids given by a GF(2) representation.

Elements are the columns of a full-row-rank :class:`~cosys.gf2.Gf2Matrix`
and carry string labels.  Subsets of the ground set are bit masks over
column positions; :class:`ElementSet` wraps one for the public API.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import gf2
from .gf2 import Gf2Matrix, popcount


class UnknownElement(KeyError):
    pass


class NoCocircuits(ValueError):
    pass


@dataclass(frozen=True)
class ElementSet:
    """A subset of a matroid ground set, stored as a bit mask over positions."""

    mask: int
    size: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.size:
            raise ValueError("element set exceeds its ground set")

    @classmethod
    def from_indices(cls, indices: Iterable[int], size: int) -> "ElementSet":
        mask = 0
        for i in indices:
            mask |= 1 << i
        return cls(mask, size)

    def indices(self) -> list[int]:
        return [i for i in range(self.size) if (self.mask >> i) & 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return popcount(self.mask)

    def __contains__(self, i: int) -> bool:
        return bool((self.mask >> i) & 1)

    def issubset(self, other: "ElementSet") -> bool:
        return self.mask & ~other.mask == 0


def _order_key(mask: int) -> tuple[int, list[int]]:
    return popcount(mask), [i for i in range(mask.bit_length()) if (mask >> i) & 1]


@dataclass(eq=False)
class BinaryMatroid:
    representation: Gf2Matrix
    labels: tuple[str, ...]
    name: str | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        self.labels = tuple(str(x) for x in self.labels)
        if len(self.labels) != self.representation.ncols:
            raise ValueError("one label per column required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")
        if gf2.rank(self.representation) != self.representation.nrows:
            raise ValueError("representation must have full row rank")
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def from_matrix(cls, a: Gf2Matrix, labels: Sequence | None = None, name: str | None = None) -> "BinaryMatroid":
        """Build from any matrix; zero rows are removed by row reduction."""
        if labels is None:
            labels = [str(i) for i in range(a.ncols)]
        red, _, _ = gf2.rref(a)
        return cls(red, tuple(labels), name)

    # -- basic accessors ---------------------------------------------------

    @property
    def size(self) -> int:
        return self.representation.ncols

    @property
    def rank(self) -> int:
        return self.representation.nrows

    def index(self, e) -> int:
        try:
            return self._index[str(e)]
        except KeyError:
            raise UnknownElement(e) from None

    def element_set(self, labels: Iterable) -> ElementSet:
        return ElementSet.from_indices((self.index(e) for e in labels), self.size)

    def labels_of(self, s: ElementSet | int) -> list[str]:
        mask = s.mask if isinstance(s, ElementSet) else s
        return [self.labels[i] for i in range(self.size) if (mask >> i) & 1]

    def format_set(self, s: ElementSet | int) -> str:
        return "{" + ",".join(sorted(self.labels_of(s))) + "}"

    def columns(self) -> list[int]:
        if "columns" not in self._cache:
            self._cache["columns"] = self.representation.columns()
        return self._cache["columns"]

    # -- cocircuits --------------------------------------------------------

    def cocircuit_masks(self) -> list[int]:
        """Cocircuits as bit masks, ordered by (size, sorted positions)."""
        cached = self._cache.get("cocircuits")
        if cached is not None:
            return cached
        cols = self.columns()
        r = self.rank
        found = []
        for v in gf2.row_space_vectors(self.representation):
            # supp(v) is a cocircuit iff the columns off the support span a hyperplane
            outside = [cols[j] for j in range(self.size) if not (v >> j) & 1]
            if gf2.rank_of_vectors(outside) == r - 1:
                found.append(v)
        found.sort(key=_order_key)
        with self._lock:
            self._cache.setdefault("cocircuits", found)
        return self._cache["cocircuits"]

    def cocircuits(self) -> list[ElementSet]:
        return [ElementSet(m, self.size) for m in self.cocircuit_masks()]

    def circuit_masks(self) -> list[int]:
        if "circuits" not in self._cache:
            self._cache["circuits"] = dual(self).cocircuit_masks()
        return self._cache["circuits"]

    def circuits(self) -> list[ElementSet]:
        return [ElementSet(m, self.size) for m in self.circuit_masks()]

    # -- rank and element predicates --------------------------------------

    def subset_rank(self, s: ElementSet | Iterable) -> int:
        if not isinstance(s, ElementSet):
            s = self.element_set(s)
        cols = self.columns()
        return gf2.rank_of_vectors(cols[i] for i in s.indices())

    def is_loop(self, e) -> bool:
        return self.columns()[self.index(e)] == 0

    def is_coloop(self, e) -> bool:
        i = self.index(e)
        cols = self.columns()
        return gf2.rank_of_vectors(c for j, c in enumerate(cols) if j != i) == self.rank - 1

    def parallel_classes(self) -> list[list[str]]:
        """Classes of equal nonzero columns, in label order of first members."""
        classes: dict[int, list[str]] = {}
        for lab, col in zip(self.labels, self.columns()):
            if col:
                classes.setdefault(col, []).append(lab)
        return list(classes.values())

    def is_simple(self) -> bool:
        cols = self.columns()
        return all(cols) and len(set(cols)) == len(cols)

    def relabel(self, mapping) -> "BinaryMatroid":
        """Return a copy with labels replaced; ``mapping`` is a dict or a callable."""
        fn = mapping if callable(mapping) else (lambda lab: mapping.get(lab, lab))
        return BinaryMatroid(self.representation, tuple(fn(lab) for lab in self.labels), self.name)

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<BinaryMatroid{tag} rank={self.rank} |E|={self.size}>"


# -- minors, duality, simplification ----------------------------------------


def restrict(m: BinaryMatroid, keep: Iterable) -> BinaryMatroid:
    idx = sorted(m.index(e) for e in keep)
    sub = m.representation.select_columns(idx)
    return BinaryMatroid.from_matrix(sub, [m.labels[i] for i in idx])


def delete(m: BinaryMatroid, *elements) -> BinaryMatroid:
    drop = {m.index(e) for e in elements}
    return restrict(m, [lab for i, lab in enumerate(m.labels) if i not in drop])


def contract(m: BinaryMatroid, *elements) -> BinaryMatroid:
    for e in elements:
        m = _contract_one(m, e)
    return m


def _contract_one(m: BinaryMatroid, e) -> BinaryMatroid:
    j = m.index(e)
    rows = list(m.representation.rows)
    bit = 1 << j
    pivot = next((i for i, r in enumerate(rows) if r & bit), None)
    if pivot is None:
        return delete(m, e)
    for i in range(len(rows)):
        if i != pivot and rows[i] & bit:
            rows[i] ^= rows[pivot]
    del rows[pivot]
    keep = [c for c in range(m.size) if c != j]
    rep = Gf2Matrix(tuple(rows), m.size).select_columns(keep)
    return BinaryMatroid(rep, tuple(m.labels[c] for c in keep))


def dual(m: BinaryMatroid) -> BinaryMatroid:
    name = f"dual({m.name})" if m.name else None
    return BinaryMatroid(gf2.dual_representation(m.representation), m.labels, name)


def simplify(m: BinaryMatroid) -> tuple[BinaryMatroid, dict[str, str]]:
    """Drop loops and all but the first member of each parallel class."""
    seen = set()
    keep = []
    for lab, col in zip(m.labels, m.columns()):
        if col and col not in seen:
            seen.add(col)
            keep.append(lab)
    if len(keep) == m.size:
        return m, {lab: lab for lab in m.labels}
    return restrict(m, keep), {lab: lab for lab in keep}


def cogirth(m: BinaryMatroid) -> int:
    cocs = m.cocircuit_masks()
    if not cocs:
        raise NoCocircuits("matroid of rank 0 has no cocircuits")
    return popcount(cocs[0])


def same_labeled_matroid(a: BinaryMatroid, b: BinaryMatroid) -> bool:
    """Equal labels (as sets) and equal cocircuit families under those labels."""
    if set(a.labels) != set(b.labels):
        return False
    fam_a = {frozenset(a.labels_of(c)) for c in a.cocircuit_masks()}
    fam_b = {frozenset(b.labels_of(c)) for c in b.cocircuit_masks()}
    return fam_a == fam_b


# -- isomorphism -------------------------------------------------------------


def _element_signatures(m: BinaryMatroid) -> list[tuple[int, ...]]:
    cocs = m.cocircuit_masks()
    return [tuple(sorted(popcount(c) for c in cocs if (c >> i) & 1)) for i in range(m.size)]


def isomorphic(m: BinaryMatroid, n: BinaryMatroid) -> dict[str, str] | None:
    """Find a label bijection carrying the cocircuits of ``m`` onto those of ``n``.

    Backtracking over element assignments.  Candidates must share the
    multiset of cocircuit sizes through the element, and after each
    assignment the cocircuits of both sides, keyed by size and by their
    trace on the assigned elements, must agree as multisets.
    """
    if m.size != n.size or m.rank != n.rank:
        return None
    cm, cn = m.cocircuit_masks(), n.cocircuit_masks()
    if sorted(map(popcount, cm)) != sorted(map(popcount, cn)):
        return None
    sig_m, sig_n = _element_signatures(m), _element_signatures(n)
    if sorted(sig_m) != sorted(sig_n):
        return None
    if m.size == 0:
        return {}

    class_size = Counter(sig_m)
    by_sig: dict[tuple, list[int]] = {}
    for j, s in enumerate(sig_n):
        by_sig.setdefault(s, []).append(j)

    # rarest signature first, then stay close to what is already placed
    order: list[int] = []
    placed = 0
    remaining = set(range(m.size))
    while remaining:
        def key(i):
            shared = sum(1 for c in cm if (c >> i) & 1 and c & placed)
            return (class_size[sig_m[i]], -shared, i)
        i = min(remaining, key=key)
        order.append(i)
        placed |= 1 << i
        remaining.remove(i)

    size_m = [popcount(c) for c in cm]
    size_n = [popcount(c) for c in cn]
    image = [-1] * m.size
    used = [False] * n.size

    def search(depth: int, trace_m: list[int], trace_n: list[int]) -> bool:
        if depth == m.size:
            return True
        i = order[depth]
        bit = 1 << depth
        tm = [t | bit if (c >> i) & 1 else t for t, c in zip(trace_m, cm)]
        keys_m = sorted(zip(size_m, tm))
        for j in by_sig[sig_m[i]]:
            if used[j]:
                continue
            tn = [t | bit if (c >> j) & 1 else t for t, c in zip(trace_n, cn)]
            if sorted(zip(size_n, tn)) != keys_m:
                continue
            image[i] = j
            used[j] = True
            if search(depth + 1, tm, tn):
                return True
            used[j] = False
            image[i] = -1
        return False

    if not search(0, [0] * len(cm), [0] * len(cn)):
        return None
    return {m.labels[i]: n.labels[image[i]] for i in range(m.size)}


# -- text format --------------------------------------------------------------


def dumps(m: BinaryMatroid) -> str:
    lines = [f"rank {m.rank}", "elements " + " ".join(m.labels)]
    lines += ["row " + s for s in m.representation.to_strings()]
    return "\n".join(lines) + "\n"


def loads(text: str, name: str | None = None) -> BinaryMatroid:
    """Parse the ``rank`` / ``elements`` / ``row`` text format."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 2:
        raise ValueError("matroid file needs 'rank' and 'elements' lines")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "rank":
        raise ValueError("first line must be 'rank <r>'")
    r = int(head[1])
    elems = lines[1].split()
    if not elems or elems[0] != "elements":
        raise ValueError("second line must start with 'elements'")
    labels = elems[1:]
    rows = []
    for ln in lines[2:]:
        parts = ln.split()
        if len(parts) != 2 or parts[0] != "row":
            raise ValueError(f"bad row line: {ln!r}")
        if len(parts[1]) != len(labels):
            raise ValueError("row length does not match element count")
        rows.append(parts[1])
    if len(rows) != r:
        raise ValueError(f"expected {r} rows, found {len(rows)}")
    a = Gf2Matrix.from_strings(rows) if rows else Gf2Matrix((), len(labels))
    return BinaryMatroid(a, tuple(labels), name)
