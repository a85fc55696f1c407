import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosys import catalog, graphs
from cosys.gf2 import Gf2Matrix, popcount, row_space_vectors
from cosys.matroid import (
    BinaryMatroid,
    ElementSet,
    NoCocircuits,
    UnknownElement,
    cogirth,
    contract,
    delete,
    dual,
    dumps,
    isomorphic,
    loads,
    restrict,
    same_labeled_matroid,
    simplify,
)
from oracles import bonds, dfs_cycles, minimal_supports

K4 = graphs.complete_graph(4)


def label_sets(m, masks):
    return {frozenset(m.labels_of(c)) for c in masks}


@pytest.mark.parametrize("name", catalog.NAMES)
def test_cocircuits_match_quadratic_filter(name):
    m = catalog.get(name).matroid
    masks = m.cocircuit_masks()
    assert set(masks) == minimal_supports(list(m.representation.rows))
    assert masks == sorted(masks, key=lambda c: (popcount(c), [i for i in range(m.size) if c >> i & 1]))
    assert len(masks) <= 2 ** m.rank - 1


@pytest.mark.parametrize("name", catalog.NAMES)
def test_cocircuits_form_an_antichain(name):
    masks = catalog.get(name).matroid.cocircuit_masks()
    assert not any(a != b and a & b == a for a in masks for b in masks)


def test_r16_named_cocircuits():
    m = catalog.get("R16").matroid
    listed = {m.format_set(c) for c in m.cocircuits()}
    for s in ["{11,16,3,7}", "{12,16,4,8}", "{1,10,2,9}", "{10,5,6,9}", "{1,2,5,6}"]:
        assert s in listed


def test_single_coloop_and_loop():
    m = BinaryMatroid(Gf2Matrix((1,), 1), ("e0",))
    assert [c.indices() for c in m.cocircuits()] == [[0]]
    assert m.is_coloop("e0")
    d = dual(m)
    assert d.rank == 0 and d.cocircuits() == [] and d.is_loop("e0")
    with pytest.raises(NoCocircuits):
        cogirth(d)


def test_k4_cocircuits_and_circuits():
    m = graphs.graphic_matroid(K4)
    assert sorted(len(c) for c in m.cocircuits()) == [3, 3, 3, 3, 4, 4, 4]
    assert sorted(len(c) for c in m.circuits()) == [3, 3, 3, 3, 4, 4, 4]
    edge_sets = lambda found: {frozenset(K4.labels[i] for i in s) for s in found}
    assert label_sets(m, m.cocircuit_masks()) == edge_sets(bonds(4, list(K4.edges)))
    assert label_sets(m, m.circuit_masks()) == edge_sets(dfs_cycles(4, list(K4.edges)))


def test_k3_single_circuit():
    m = graphs.graphic_matroid(graphs.complete_graph(3))
    assert [len(c) for c in m.circuits()] == [3]


def test_k33_cographic_circuits_are_cuts():
    g = graphs.complete_bipartite(3, 3)
    m = graphs.cographic_matroid(g)
    want = {frozenset(g.labels[i] for i in s) for s in bonds(6, list(g.edges))}
    assert label_sets(m, m.circuit_masks()) == want
    assert m.rank == 4


def test_ranks():
    assert catalog.get("R16").matroid.rank == 6
    assert catalog.get("R10").matroid.rank == 5
    assert catalog.get("R10").matroid.subset_rank([]) == 0


def test_minors_of_k4():
    m = graphs.graphic_matroid(K4)
    for e in m.labels:
        c = contract(m, e)
        assert (c.rank, c.size) == (2, 5)


def test_delete_r16_gives_g7():
    d = delete(catalog.get("R16").matroid, "7")
    assert d.size == 15
    assert isomorphic(d, catalog.get("Mstar_G7").matroid) is not None


@pytest.mark.parametrize("name", ["M_K5", "R10", "Mstar_G53", "R16"])
def test_delete_contract_commute(name):
    m = catalog.get(name).matroid
    rng = random.Random(name)
    for _ in range(5):
        e, f = rng.sample(list(m.labels), 2)
        assert same_labeled_matroid(contract(delete(m, e), f), delete(contract(m, f), e))


def test_contract_loop_is_delete():
    m = BinaryMatroid(Gf2Matrix((0b0011, 0b0110), 4), ("a", "b", "c", "z"))
    assert m.is_loop("z")
    assert same_labeled_matroid(contract(m, "z"), delete(m, "z"))


def test_delete_coloop_drops_rank():
    m = BinaryMatroid(Gf2Matrix.identity(3), ("a", "b", "c"))
    d = delete(m, "b")
    assert d.rank == 2 and d.labels == ("a", "c")


def test_unknown_element():
    m = catalog.get("R10").matroid
    with pytest.raises(UnknownElement):
        delete(m, "nope")
    with pytest.raises(UnknownElement):
        contract(m, "nope")
    with pytest.raises(UnknownElement):
        m.is_loop("nope")


@pytest.mark.parametrize("name", catalog.NAMES)
def test_dual_involution_and_duality(name):
    m = catalog.get(name).matroid
    assert dual(dual(m)).cocircuit_masks() == m.cocircuit_masks()
    assert dual(m).cocircuit_masks() == m.circuit_masks()


def test_dual_of_k33_is_catalog_entry():
    d = dual(graphs.graphic_matroid(graphs.complete_bipartite(3, 3)))
    assert d.rank == 4
    assert set(d.cocircuit_masks()) == set(catalog.get("Mstar_K33").matroid.cocircuit_masks())


def test_simplify():
    k4 = graphs.graphic_matroid(K4)
    n, kept = simplify(k4)
    assert same_labeled_matroid(n, k4)
    k3 = graphs.graphic_matroid(graphs.complete_graph(3))
    cols = k3.columns() + [k3.columns()[1], 0]
    rows = tuple(sum(((c >> i) & 1) << j for j, c in enumerate(cols)) for i in range(k3.rank))
    big = BinaryMatroid(Gf2Matrix(rows, 5), k3.labels + ("dup", "loop"))
    assert [c for c in big.parallel_classes() if len(c) > 1] == [[k3.labels[1], "dup"]]
    n, kept = simplify(big)
    assert n.labels == k3.labels and kept == {lab: lab for lab in k3.labels}
    assert catalog.get("P_K3_R10").matroid.is_simple()


def test_cogirth_values():
    assert cogirth(catalog.get("Mstar_G1").matroid) == 5
    assert cogirth(catalog.get("R10").matroid) == 4
    k7 = catalog.get("M_K7").matroid
    assert cogirth(k7) == 6
    g = graphs.complete_graph(7)
    assert min(len(b) for b in bonds(7, list(g.edges))) == 6
    assert len(k7.cocircuits()) == len(bonds(7, list(g.edges))) == 63


def test_r10_cocircuit_sizes():
    sizes = {len(c) for c in catalog.get("R10").matroid.cocircuits()}
    assert sizes == {4, 6}


def test_loop_coloop_parallel():
    m = BinaryMatroid(Gf2Matrix((0b0110, 0b0001), 4), ("a", "b", "c", "z"))
    assert [m.is_loop(x) for x in "abcz"] == [False, False, False, True]
    assert [m.is_coloop(x) for x in "abcz"] == [True, False, False, False]
    assert sorted(m.parallel_classes()) == [["a"], ["b", "c"]]
    ident = BinaryMatroid(Gf2Matrix.identity(4), tuple("wxyz"))
    assert all(ident.is_coloop(x) for x in "wxyz")


@pytest.mark.parametrize("name", ["M_K5", "R10", "Mstar_G53", "P_K3_R10", "R16"])
def test_minor_cocircuit_laws(name):
    m = catalog.get(name).matroid
    full = label_sets(m, m.cocircuit_masks())
    for e in m.labels:
        con = contract(m, e)
        for c in label_sets(con, con.cocircuit_masks()):
            assert c in full and e not in c
        dele = delete(m, e)
        for d in label_sets(dele, dele.cocircuit_masks()):
            assert any(d <= c - {e} for c in full)


def test_isomorphic_basics():
    m = catalog.get("R16").matroid
    assert isomorphic(m, m) is not None
    g53, g54 = catalog.get("Mstar_G53").matroid, catalog.get("Mstar_G54").matroid
    assert isomorphic(g53, g54) is None


@pytest.mark.parametrize("name", ["R10", "Mstar_G1", "Mstar_G7", "R16", "M_K7"])
def test_isomorphic_survives_shuffling(name):
    m = catalog.get(name).matroid
    rng = random.Random(7)
    order = list(range(m.size))
    rng.shuffle(order)
    # change the basis too, so the representation is not just a column permutation
    rows = list(m.representation.select_columns(order).rows)
    for i in range(1, len(rows)):
        if rng.random() < 0.5:
            rows[i] ^= rows[0]
    shuffled = BinaryMatroid(Gf2Matrix(tuple(rows), m.size), tuple(f"x{i}" for i in range(m.size)))
    phi = isomorphic(m, shuffled)
    assert phi is not None
    image = {frozenset(phi[x] for x in c) for c in label_sets(m, m.cocircuit_masks())}
    assert image == label_sets(shuffled, shuffled.cocircuit_masks())


def test_rank6_entries_pairwise_distinct():
    ms = [catalog.get(n).matroid for n in catalog.RANK6_MSR]
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            assert isomorphic(ms[i], ms[j]) is None


def test_restrict():
    m = graphs.graphic_matroid(K4)
    r = restrict(m, m.labels[:3])
    assert r.labels == m.labels[:3]


def test_text_format_round_trip():
    m = catalog.get("R10").matroid
    text = dumps(m)
    assert text.splitlines()[0] == "rank 5"
    back = loads(text)
    assert same_labeled_matroid(back, m) and dumps(back) == text


@pytest.mark.parametrize("bad", [
    "", "rank 2\nelements a b\nrow 10\n", "rank 1\nelements a b\nrow 101\n",
    "rnk 1\nelements a\nrow 1\n", "rank 1\nelements a a\nrow 11\n",
])
def test_text_format_rejects(bad):
    with pytest.raises(ValueError):
        loads(bad)


def test_element_set():
    s = ElementSet.from_indices([0, 2], 4)
    assert list(s) == [0, 2] and len(s) == 2 and 2 in s and 1 not in s
    assert s.issubset(ElementSet.from_indices([0, 1, 2], 4))
    with pytest.raises(ValueError):
        ElementSet(1 << 5, 4)


def test_constructor_checks():
    with pytest.raises(ValueError):
        BinaryMatroid(Gf2Matrix((1, 1), 2), ("a", "b"))
    with pytest.raises(ValueError):
        BinaryMatroid(Gf2Matrix((1,), 2), ("a", "a"))
    with pytest.raises(ValueError):
        BinaryMatroid(Gf2Matrix((1,), 2), ("a",))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(2, 9), st.randoms(use_true_random=False))
def test_random_matroids_against_oracle(r, extra, rnd):
    n = r + extra
    rows = tuple((1 << i) | (rnd.getrandbits(n) & ~((1 << r) - 1)) for i in range(r))
    m = BinaryMatroid(Gf2Matrix(rows, n), tuple(f"e{i}" for i in range(n)))
    assert set(m.cocircuit_masks()) == minimal_supports(list(rows))
    assert set(m.circuit_masks()) == set(dual(m).cocircuit_masks())
    assert len(row_space_vectors(m.representation)) == 2 ** r - 1
