from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from constructions import MODULES, four_module_graph
from ordpack.edgestate import bits
from ordpack.graph import Graph, components, is_transitive_orientation
from ordpack.moddecomp import NodeKind, NotExtendible, decompose, extend_orientation, is_module
from ordpack.oracle import oracle_is_transitive, oracle_orientations
from ordpack.orient import OrientationConflict, implication_classes, store_from_graph, top_feasible


def mask_of(vs) -> int:
    return sum(1 << v for v in vs)


def induced(g: Graph, mask: int) -> Graph:
    return Graph(g.n, [g.adj[v] & mask if mask >> v & 1 else 0 for v in range(g.n)])


def check_node(g: Graph, node) -> None:
    """Definitional re-check of one decomposition node."""
    if node.kind == NodeKind.LEAF:
        assert bin(node.mask).count("1") == 1
        return
    kids = [c.mask for c in node.children]
    assert sum(kids) == node.mask and all(a & b == 0 for a, b in combinations(kids, 2))
    sub = induced(g, node.mask)
    for k in kids:
        assert is_module(sub, k)
    n_comp = len(components(sub.adj, node.mask))
    co = [node.mask & ~g.adj[v] & ~(1 << v) for v in range(g.n)]
    n_cocomp = len(components(co, node.mask))
    if node.kind == NodeKind.PARALLEL:
        assert n_comp > 1
    elif node.kind == NodeKind.SERIES:
        assert n_comp == 1 and n_cocomp > 1
    else:
        assert n_comp == 1 and n_cocomp == 1
        # children are maximal: no union of two or more children (short of all) is a module
        for r in range(2, len(kids)):
            for combo in combinations(kids, r):
                assert not is_module(sub, sum(combo))


def test_trivial_modules():
    g = four_module_graph()
    assert all(is_module(g, [v]) for v in range(g.n))
    assert is_module(g, range(g.n))
    assert not is_module(g, [0, 10])


def test_four_module_graph_root():
    g = four_module_graph()
    for m in MODULES.values():
        assert is_module(g, m)
    root = decompose(g)
    assert root.kind == NodeKind.PRIME
    kids = {frozenset(c.vertices) for c in root.children}
    assert kids == set(MODULES.values())
    names = {frozenset(c.vertices): k for k, c in enumerate(root.children)}
    index = {name: names[m] for name, m in MODULES.items()}
    path = {frozenset((index[a], index[b])) for a, b in (("M1", "M2"), ("M2", "M3"), ("M3", "M4"))}
    assert {frozenset(e) for e in root.quotient.edges()} == path
    for node in root.walk():
        check_node(g, node)


def test_edgeless_and_complete():
    root = decompose(Graph.from_edges(3, []))
    assert root.kind == NodeKind.PARALLEL and len(root.children) == 3
    root = decompose(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))
    assert root.kind == NodeKind.SERIES and len(root.children) == 3


def test_dump_lists_every_node():
    text = decompose(Graph.from_edges(3, [(0, 1)])).dump()
    assert text.splitlines()[0] == "parallel 0 1 2"
    assert len(text.splitlines()) == 5


def test_k3_completion_respects_the_seed():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    arcs = extend_orientation(g, [(0, 1)])
    assert (0, 1) in arcs and is_transitive_orientation(3, g.adj, arcs)
    assert sorted(arcs) == [(0, 1), (0, 2), (1, 2)]


def test_non_comparability_graph_is_not_extendible():
    c5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    with pytest.raises(NotExtendible):
        extend_orientation(c5, [])


def random_comparability_graph(rng: random.Random, n: int) -> Graph:
    """Comparability graph of a random 2-dimensional order."""
    p, q = list(range(n)), list(range(n))
    rng.shuffle(p)
    rng.shuffle(q)
    edges = [(a, b) for a, b in combinations(range(n), 2) if (p[a] < p[b]) == (q[a] < q[b])]
    return Graph.from_edges(n, edges)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8), st.randoms(use_true_random=False))
def test_decomposition_nodes_are_definitional(n, rnd):
    edges = [(a, b) for a, b in combinations(range(n), 2) if rnd.random() < 0.5]
    g = Graph.from_edges(n, edges)
    root = decompose(g)
    assert root.mask == g.vertices_mask()
    leaves = [node for node in root.walk() if node.kind == NodeKind.LEAF]
    assert sorted(v for leaf in leaves for v in leaf.vertices) == list(range(n))
    for node in root.walk():
        check_node(g, node)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8), st.randoms(use_true_random=False))
def test_independent_quotient_orientation_is_transitive(n, rnd):
    g = random_comparability_graph(rnd, n)
    arcs = extend_orientation(g, [])
    assert is_transitive_orientation(n, g.adj, arcs)
    assert oracle_is_transitive(n, arcs)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 8), st.randoms(use_true_random=False), st.integers(0, 4))
def test_completion_contains_feasible_partial_orientation(n, rnd, k):
    g = random_comparability_graph(rnd, n)
    edges = g.edges()
    if not edges:
        return
    seeds = [e if rnd.random() < 0.5 else e[::-1] for e in rnd.sample(edges, min(k, len(edges)))]
    try:
        closed = top_feasible(g, seeds)
    except OrientationConflict:
        assert oracle_orientations(g, seeds) == []
        return
    arcs = extend_orientation(g, closed)
    assert set(closed) <= set(arcs)
    assert oracle_is_transitive(n, arcs)
    # every class the closure touched keeps exactly its closure orientation
    store = store_from_graph(g)
    for cls in implication_classes(store, 0):
        fixed = [(a, b) for a, b in cls.representative if (a, b) in closed or (b, a) in closed]
        if fixed:
            for a, b in cls.edges:
                assert ((a, b) in closed) == ((a, b) in arcs)
