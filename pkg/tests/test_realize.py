from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from constructions import guillotine_placement, overlap_graphs
from ordpack.axioms import Contradiction, verify_packing_class
from ordpack.edgestate import COMPONENT, EdgeStore, store_from_graphs
from ordpack.model import make_instance
from ordpack.moddecomp import orient_store_dimension
from ordpack.oracle import oracle_opp
from ordpack.realize import Placement, RealizationError, project_placement, realize, verify_placement


def test_chain_placement():
    inst = make_instance([(3,), (4,)], (7,), [(0, 0, 1)])
    store = EdgeStore(2, 1)
    store.orient(0, 0, 1)
    assert realize(store, inst).coords == ((0,), (3,))


def test_realize_rejects_overflow_and_cycles():
    inst = make_instance([(3,), (5,)], (7,))
    store = EdgeStore(2, 1)
    store.orient(0, 0, 1)
    with pytest.raises(RealizationError):
        realize(store, inst)
    inst = make_instance([(1,)] * 3, (3,))
    store = EdgeStore(3, 1)
    store.orient(0, 0, 1)
    store.orient(0, 1, 2)
    store.orient(0, 2, 0)
    with pytest.raises(RealizationError):
        realize(store, inst)


def test_single_item_projects_to_an_empty_store():
    inst = make_instance([(2, 2)], (2, 2))
    store = project_placement(inst, Placement.of([(0, 0)]))
    assert store.n == 1 and store.trail == [] and store.is_decided()


def test_projection_orients_disjoint_pairs():
    inst = make_instance([(1, 2), (1, 1)], (2, 2))
    store = project_placement(inst, Placement.of([(1, 0), (0, 0)]))
    assert store.arcs(0) == [(1, 0)]
    assert store.edges(1, COMPONENT) == [(0, 1)]


def test_verify_placement_reports():
    inst = make_instance([(1, 1), (1, 1)], (2, 2), [(1, 0, 1)])
    assert verify_placement(inst, Placement.of([(0, 0), (0, 0)])) == [
        "items 0 and 1 overlap", "precedence 0->1 in dimension 1 violated"]
    assert verify_placement(inst, Placement.of([(0, 0), (1, 0)])) == ["precedence 0->1 in dimension 1 violated"]
    assert verify_placement(inst, Placement.of([(0, 0), (0, 1)])) == []
    assert "leaves the container" in verify_placement(inst, Placement.of([(0, 0), (2, 1)]))[0]
    assert verify_placement(inst, Placement.of([(0, 0)])) == ["placement has 1 items, instance has 2"]


def test_extent():
    inst = make_instance([(1, 2), (3, 1)], (4, 4))
    pl = Placement.of([(0, 0), (1, 2)])
    assert pl.extent(inst, 0) == 4 and pl.extent(inst, 1) == 3
    assert pl.records() == ["0 0 0", "1 1 2"]


def realize_store(store: EdgeStore, inst) -> Placement:
    for i in range(store.d):
        orient_store_dimension(store, i)
    return realize(store, inst)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.randoms(use_true_random=False), st.integers(0, 2))
def test_accepted_stores_realize(n, rnd, flips):
    wid, caps, coords = guillotine_placement(rnd, n)
    comp = overlap_graphs(wid, coords)
    pairs = list(combinations(range(n), 2))
    for _ in range(flips if pairs else 0):
        comp[rnd.randrange(2)] ^= {rnd.choice(pairs)}
    store = store_from_graphs(n, comp)
    try:
        verify_packing_class(store, wid, caps)
    except Contradiction:
        return
    inst = make_instance([(wid[0][v], wid[1][v]) for v in range(n)], caps)
    placement = realize_store(store, inst)
    assert verify_placement(inst, placement) == []
    back = project_placement(inst, placement)
    verify_packing_class(back, wid, caps)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5), st.randoms(use_true_random=False))
def test_oracle_placements_project_to_packing_classes(n, rnd):
    caps = [rnd.randint(2, 5), rnd.randint(2, 5)]
    widths = [(rnd.randint(1, caps[0]), rnd.randint(1, caps[1])) for _ in range(n)]
    cons = [(1, a, b) for a, b in combinations(range(n), 2) if rnd.random() < 0.2]
    inst = make_instance(widths, caps, cons)
    placement = oracle_opp(inst)
    if placement is None:
        return
    store = project_placement(inst, placement)
    verify_packing_class(store, [[w[i] for w in widths] for i in range(2)], caps)
    # precedence arcs are contained in the projected orientation, so realizing it keeps them
    assert all(store.has_arc(c.dim, c.before, c.after) for c in inst.constraints)
    again = realize(store, inst)
    assert verify_placement(inst, again) == []
    # longest paths give the earliest start compatible with the same orders
    assert all(again.coords[v][i] <= placement.coords[v][i] for v in range(n) for i in range(2))
