from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordpack.benchmarks import OKP17_PRECEDENCE, okp17
from ordpack.model import CycleError, closure_arcs, find_cycle, make_instance, transitive_closure, validate


def test_exact_fit_single_item_is_valid():
    assert validate(make_instance([(5, 5, 5)], (5, 5, 5))).ok


def test_okp17_with_two_arcs_is_valid():
    inst = okp17(1)
    assert inst.n == 17 and inst.container.sizes[0] == 100
    assert validate(inst).ok
    assert [(inst.names[a], inst.names[b]) for a, b in inst.arcs(1)] == [("11", "8"), ("11", "16")]


def test_two_cycle_is_rejected():
    report = validate(make_instance([(1,), (1,)], (2,), [(0, 0, 1), (0, 1, 0)]))
    assert not report.ok and "cycle" in str(report)


@pytest.mark.parametrize("widths, sizes, cons, fragment", [
    ([(3,)], (2,), [], "exceeds"),
    ([(0,)], (2,), [], ">= 1"),
    ([(1,)], (0,), [], ">= 1"),
    ([(1, 1)], (2,), [], "widths"),
    ([(1,), (1,)], (2,), [(0, 0, 0)], "self-loop"),
    ([(1,), (1,)], (2,), [(0, 0, 5)], "unknown item"),
    ([(1,), (1,)], (2,), [(3, 0, 1)], "invalid dimension"),
])
def test_validation_errors(widths, sizes, cons, fragment):
    report = validate(make_instance(widths, sizes, cons))
    assert not report.ok
    assert fragment in str(report)


def test_three_chain_closure():
    inst = transitive_closure(make_instance([(1,)] * 3, (3,), [(0, 0, 1), (0, 1, 2)]))
    assert set(inst.arcs(0)) == {(0, 1), (1, 2), (0, 2)}


def test_closed_arcs_unchanged():
    inst = make_instance([(1,)] * 3, (3,), [(0, 0, 1), (0, 1, 2), (0, 0, 2)])
    assert transitive_closure(inst) == inst


def test_okp17_3_closure_adds_exactly_one_arc():
    inst = okp17(3)
    label = {(inst.names[a], inst.names[b]) for a, b in inst.arcs(1)}
    assert label == {(str(a), str(b)) for a, b in OKP17_PRECEDENCE[3]}
    closed = transitive_closure(inst)
    new = {(closed.names[a], closed.names[b]) for a, b in closed.arcs(1)} - label
    assert ("11", "17") in new
    assert closed.arcs(1)[:len(inst.arcs(1))] == inst.arcs(1)


def test_closure_raises_on_cycle():
    with pytest.raises(CycleError) as err:
        transitive_closure(make_instance([(1,)] * 3, (3,), [(0, 0, 1), (0, 1, 2), (0, 2, 0)]))
    assert set(err.value.cycle) >= {0, 1, 2}


def test_find_cycle_returns_a_real_cycle():
    cyc = find_cycle(4, [(0, 1), (1, 2), (2, 3), (3, 1)])
    assert cyc is not None
    ring = list(cyc) if cyc[0] != cyc[-1] else list(cyc[:-1])
    arcs = {(0, 1), (1, 2), (2, 3), (3, 1)}
    assert all((ring[k], ring[(k + 1) % len(ring)]) in arcs for k in range(len(ring)))
    assert find_cycle(3, [(0, 1), (1, 2)]) is None


def test_with_size_and_lookup():
    inst = make_instance([(1, 2)], (3, 4), names=["a"], dim_names=["w", "h"])
    assert inst.with_size(1, 9).container.sizes == (3, 9)
    assert inst.index_of("a") == 0 and inst.dim_index("h") == 1
    with pytest.raises(KeyError):
        inst.index_of("b")


dags = st.integers(2, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] < p[1]),
                         max_size=12)))


@settings(max_examples=200, deadline=None)
@given(dags, st.randoms(use_true_random=False))
def test_closure_idempotent_and_validity_preserved(dag, rnd):
    n, arcs = dag
    perm = list(range(n))
    rnd.shuffle(perm)
    cons = [(0, perm[a], perm[b]) for a, b in arcs]
    inst = make_instance([(1,)] * n, (n,), cons)
    once = transitive_closure(inst)
    assert transitive_closure(once) == once
    assert validate(once).ok == validate(inst).ok
    assert set(once.arcs(0)) == closure_arcs(n, inst.arcs(0))
