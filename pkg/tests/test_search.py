from __future__ import annotations

import math
import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordpack import kernel_available
from ordpack.benchmarks import OKP17_BASE, OKP17_BOXES, SQUARE21_BASE, SQUARE21_SIDES, okp17, square21
from ordpack.model import make_instance
from ordpack.oracle import oracle_min_size, oracle_opp
from ordpack.realize import verify_placement
from ordpack.search import (BRANCHING, STRATEGIES, CoppSearch, SearchConfig, Verdict, base_lower_bound, chain_bound,
                            greedy_upper_bound, lower_bound, solve_bmp, solve_copp, solve_cspp, volume_bound)

needs_kernel = pytest.mark.skipif(not kernel_available(), reason="numba not available")
PY = SearchConfig(engine="python")


@st.composite
def small_instances(draw, max_n=4, max_side=5, arcs=True):
    rnd = draw(st.randoms(use_true_random=False))
    n = draw(st.integers(0, max_n))
    caps = (rnd.randint(1, max_side), rnd.randint(1, max_side))
    widths = [(rnd.randint(1, caps[0]), rnd.randint(1, caps[1])) for _ in range(n)]
    cons = []
    if arcs:
        perm = list(range(n))
        rnd.shuffle(perm)
        for a, b in combinations(range(n), 2):
            if rnd.random() < 0.25:
                cons.append((rnd.randrange(2), perm[a], perm[b]))
    return make_instance(widths, caps, cons)


def test_single_item_is_feasible_immediately():
    res = solve_copp(make_instance([(2, 3)], (2, 3)))
    assert res.verdict == Verdict.FEASIBLE and res.placement.coords == ((0, 0),)


@pytest.mark.parametrize("engine", ["python", "auto"])
def test_two_squares_refuted_by_propagation(engine):
    res = solve_copp(make_instance([(2, 2), (2, 2)], (2, 2)), SearchConfig(engine=engine))
    assert res.verdict == Verdict.INFEASIBLE
    assert res.stats.nodes == 0
    assert res.stats.conflicts["EmptyIntersection"] + res.stats.conflicts["OverweightStableSet"] == 1


def test_okp17_4_threshold():
    inst = okp17(4)
    feasible = solve_copp(inst.with_size(1, 245))
    assert feasible.verdict == Verdict.FEASIBLE
    assert verify_placement(feasible.instance, feasible.placement) == []
    assert solve_copp(inst.with_size(1, 244)).verdict == Verdict.INFEASIBLE


def test_chain_bound():
    inst = make_instance([(1, 2), (1, 3), (1, 4)], (1, 20), [(1, 0, 1), (1, 1, 2)])
    assert chain_bound(inst, 1) == 9
    assert lower_bound(inst, 1) == 9


def test_volume_bounds_of_the_benchmarks():
    area = sum(w * h for w, h in OKP17_BOXES)
    assert volume_bound(okp17(0), 1) == -(-area // OKP17_BASE)
    assert sum(s * s for s in SQUARE21_SIDES) == SQUARE21_BASE ** 2
    assert lower_bound(square21("no")) == 112


def test_base_lower_bound():
    two = make_instance([(2, 2, 1), (2, 2, 1)], (9, 9, 1))
    assert base_lower_bound(two, [0, 1]) == 3  # area 8 needs a 3x3 base
    assert base_lower_bound(make_instance([(16, 16, 3)], (1, 1, 5)), [0, 1]) == 16


def test_greedy_upper_bound_is_valid():
    for inst in (okp17(0), okp17(3), square21("tri")):
        ub, pl = greedy_upper_bound(inst, 1)
        assert ub >= lower_bound(inst, 1)
        assert verify_placement(inst.with_size(1, ub), pl) == []


def test_limits_give_unknown():
    inst = okp17(0).with_size(1, 165)
    res = solve_copp(inst, SearchConfig(node_limit=50))
    assert res.verdict == Verdict.UNKNOWN
    res = solve_copp(inst, SearchConfig(node_limit=50, engine="python"))
    assert res.verdict == Verdict.UNKNOWN and res.stats.nodes == 51


def test_config_validation():
    for bad in ({"branching": "nope"}, {"strategy": "sideways"}, {"engine": "gpu"}, {"node_limit": -1},
                {"value_order": "x"}):
        with pytest.raises(ValueError):
            SearchConfig(**bad)


def test_invalid_instance_rejected():
    with pytest.raises(ValueError):
        solve_copp(make_instance([(3, 1)], (2, 2)))


def test_misfit_makes_optimisation_infeasible():
    res = solve_cspp(make_instance([(3, 1)], (2, 5)), 1)
    assert res.infeasible and res.bounds_text() == "infeasible"
    assert solve_bmp(make_instance([(1, 1, 3)], (1, 1, 2)), [0, 1]).infeasible


def test_precedence_conflict_in_a_fixed_dimension_terminates():
    # b must end before c starts along x, but 3 + 2 exceeds the width 3
    inst = make_instance([(3, 4), (3, 1), (2, 2)], (3, 4), [(1, 0, 2), (0, 1, 2)])
    for strategy in STRATEGIES:
        res = solve_cspp(inst, 1, SearchConfig(strategy=strategy))
        assert res.infeasible and res.placement is None
    assert oracle_min_size(inst, 1, 1, 7) is None
    res = solve_bmp(make_instance([(1, 1, 2), (1, 1, 2)], (1, 1, 3), [(2, 0, 1)]), [0, 1])
    assert res.infeasible


def test_empty_instance():
    res = solve_copp(make_instance([], (3, 3)))
    assert res.verdict == Verdict.FEASIBLE and res.placement.coords == ()
    assert solve_cspp(make_instance([], (3, 3)), 1).value == 0


def test_bmp_examples():
    res = solve_bmp(make_instance([(16, 16, 3)], (1, 1, 7)), [0, 1])
    assert res.value == 16
    res = solve_bmp(make_instance([(2, 2, 1), (2, 2, 1)], (1, 1, 1)), [0, 1])
    assert res.value == 4
    assert verify_placement(res.instance, res.placement) == []


def test_bmp_of_squares_matches_the_oracle():
    rng = random.Random(11)
    for _ in range(15):
        sides = [rng.randint(1, 3) for _ in range(rng.randint(1, 4))]
        inst = make_instance([(s, s) for s in sides], (1, 1))
        res = solve_bmp(inst, [0, 1])
        want = next(s for s in range(1, 13) if oracle_opp(inst.with_sizes((s, s))) is not None)
        assert res.value == want


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_strategies_agree(strategy):
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(2, 6)
        inst = make_instance([(rng.randint(1, 4), rng.randint(1, 4)) for _ in range(n)], (5, 1))
        res = solve_cspp(inst, 1, SearchConfig(strategy=strategy))
        assert res.solved
        oracle = oracle_min_size(inst, 1, 1, 4 * n)
        assert res.value == oracle[0]
        assert verify_placement(res.instance, res.placement) == []


def test_cspp_records_probe_times():
    res = solve_cspp(okp17(4))
    assert res.value == 245
    assert res.time_upper >= 0 and res.time_lower >= 0
    assert all(p.size <= 245 for p in res.probes if p.verdict == Verdict.INFEASIBLE)


# -- equivalence with the oracle --------------------------------------------------


@settings(max_examples=250, deadline=None)
@given(small_instances())
def test_solver_agrees_with_oracle(inst):
    res = solve_copp(inst)
    pl = oracle_opp(inst)
    assert (res.verdict == Verdict.FEASIBLE) == (pl is not None)
    assert res.verdict != Verdict.UNKNOWN
    if pl is not None:
        assert verify_placement(inst, res.placement) == []
        assert verify_placement(inst, pl) == []


@settings(max_examples=100, deadline=None)
@given(small_instances(max_n=5, max_side=4))
def test_python_engine_agrees_with_oracle(inst):
    res = solve_copp(inst, PY)
    assert (res.verdict == Verdict.FEASIBLE) == (oracle_opp(inst) is not None)


@settings(max_examples=120, deadline=None)
@given(small_instances(max_n=4, max_side=4))
def test_cspp_value_matches_oracle_and_is_monotone(inst):
    if inst.n == 0:
        return
    res = solve_cspp(inst, 1)
    opt = oracle_min_size(inst, 1, 1, sum(it.widths[1] for it in inst.items))
    if opt is None:
        assert res.infeasible
        return
    assert res.value == opt[0]
    tallest = max(it.widths[1] for it in inst.items)
    verdicts = [solve_copp(inst.with_size(1, h)).verdict for h in range(max(tallest, res.value - 2), res.value + 3)]
    first = verdicts.index(Verdict.FEASIBLE)
    assert all(v == Verdict.FEASIBLE for v in verdicts[first:])


def test_probe_sequence_is_monotone_on_a_benchmark_subset():
    rng = random.Random(3)
    inst = make_instance(rng.sample(OKP17_BOXES, 8), (OKP17_BASE, 1), objective_dim=1)
    res = solve_cspp(inst, 1, SearchConfig(strategy="ascending"))
    ordered = sorted(res.probes, key=lambda p: p.size)
    seen_feasible = False
    for p in ordered:
        if p.verdict == Verdict.FEASIBLE:
            seen_feasible = True
        else:
            assert not seen_feasible
    if res.value > lower_bound(inst.with_size(1, res.value), 1):
        assert solve_copp(inst.with_size(1, res.value - 1)).verdict == Verdict.INFEASIBLE


# -- engines ---------------------------------------------------------------------------


def _signature(res):
    return (res.verdict, res.stats.nodes, res.stats.leaves, res.stats.propagations, res.stats.max_depth,
            dict(res.stats.conflicts))


@needs_kernel
@settings(max_examples=200, deadline=None)
@given(small_instances(max_n=7, max_side=8), st.sampled_from([b for b in BRANCHING if b != "tight"]),
       st.sampled_from([0, 1, 3]))
def test_compiled_engine_mirrors_python(inst, branching, every):
    py = solve_copp(inst, SearchConfig(engine="python", branching=branching, class_check_every=every))
    jit = solve_copp(inst, SearchConfig(engine="compiled", branching=branching, class_check_every=every))
    assert _signature(py) == _signature(jit)
    if py.verdict == Verdict.FEASIBLE:
        assert py.placement == jit.placement


@needs_kernel
@settings(max_examples=60, deadline=None)
@given(small_instances(max_n=6, max_side=6), st.sampled_from([1, 2]))
def test_kernel_only_options_keep_verdicts(inst, probe):
    base = solve_copp(inst, PY).verdict
    assert solve_copp(inst, SearchConfig(engine="compiled", probe=probe)).verdict == base
    assert solve_copp(inst, SearchConfig(engine="compiled", branching="tight")).verdict == base


def test_determinism():
    inst = okp17(2).with_size(1, 200)
    a = solve_copp(inst, SearchConfig(node_limit=3000))
    b = solve_copp(inst, SearchConfig(node_limit=3000))
    assert _signature(a) == _signature(b) and a.placement == b.placement


def test_fifo_is_required_by_the_compiled_engine():
    search = CoppSearch(make_instance([(1, 1)], (1, 1)), SearchConfig(queue_order="lifo"))
    assert not search._use_kernel()


@settings(max_examples=100, deadline=None)
@given(small_instances(max_n=6, max_side=6), st.integers(0, 10**6))
def test_queue_order_does_not_change_the_verdict(inst, seed):
    fifo = solve_copp(inst, PY)
    for order in ("lifo", "random"):
        other = CoppSearch(inst, SearchConfig(engine="python", queue_order=order))
        other.prop.rng = random.Random(seed)
        assert other.solve().verdict == fifo.verdict


@settings(max_examples=100, deadline=None)
@given(small_instances(max_n=6, max_side=6), st.randoms(use_true_random=False))
def test_hint_changes_the_path_not_the_verdict(inst, rnd):
    big = inst.with_sizes([2 * s for s in inst.container.sizes])
    layout = oracle_opp(big) if inst.n <= 5 else None
    if layout is None:
        return
    plain = solve_copp(inst, PY)
    hinted = solve_copp(inst, PY, hint=layout)
    assert hinted.verdict == plain.verdict
    if kernel_available():
        compiled = solve_copp(inst, SearchConfig(engine="compiled"), hint=layout)
        assert _signature(compiled) == _signature(hinted)


def test_hint_from_a_taller_layout_guides_the_search():
    inst = okp17(0)
    ub, layout = greedy_upper_bound(inst, 1)
    res = solve_copp(inst.with_size(1, ub - 1), SearchConfig(node_limit=100_000), hint=layout)
    assert res.verdict == Verdict.FEASIBLE
    assert verify_placement(res.instance, res.placement) == []


def test_alternating_respects_node_limits_and_keeps_valid_bounds():
    inst = okp17(1)
    res = solve_cspp(inst, 1, SearchConfig(strategy="alternating", node_limit=20_000))
    assert not res.solved
    assert res.lb <= 172 <= res.ub
    assert verify_placement(res.instance, res.placement) == []
    again = solve_cspp(inst, 1, SearchConfig(strategy="alternating", node_limit=20_000))
    assert (again.lb, again.ub) == (res.lb, res.ub)
    assert [p.size for p in again.probes] == [p.size for p in res.probes]
