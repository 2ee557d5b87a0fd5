"""Branch-and-bound over edge states, and the strip / base minimisation drivers."""

from __future__ import annotations

import logging
import math
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .axioms import Contradiction
from .edgestate import COMPARABILITY, COMPONENT, EdgeStore
from .model import Instance, closure_arcs, transitive_closure, validate
from .moddecomp import NotExtendible, orient_store_dimension
from .orient import OrientationConflict, check_orientable, ConflictKind
from .propagate import Propagator, seed_store
from .realize import Placement, RealizationError, realize, verify_placement

log = logging.getLogger(__name__)

BRANCHING = ("width", "relwidth", "index", "pairs", "items", "tight", "relmin", "relmax", "relprod")
DYNAMIC_BRANCHING = {"tight": 1}


class Verdict(str, Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    UNKNOWN = "Unknown"


@dataclass
class SearchConfig:
    branching: str = "relwidth"
    node_limit: int = 0  # 0: unlimited
    time_limit: float | None = None
    verbosity: int = 0
    queue_order: str = "fifo"
    # run the implication-class test on partial states every this many nodes (0: leaves only)
    class_check_every: int = 1
    strategy: str = "ascending"
    value_order: str = "component"
    # "auto": compiled kernel when numba is available, else the pure-Python engine
    engine: str = "auto"
    # failed-literal probing passes per node (0: off)
    probe: int = 0

    def __post_init__(self):
        if self.node_limit < 0 or (self.time_limit is not None and self.time_limit < 0):
            raise ValueError("limits must be non-negative")
        if self.branching not in BRANCHING:
            raise ValueError(f"unknown branching heuristic {self.branching!r}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown search strategy {self.strategy!r}")
        if self.engine not in ("auto", "python", "compiled"):
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.value_order not in ("component", "comparability"):
            raise ValueError(f"unknown value order {self.value_order!r}")


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    propagations: int = 0
    max_depth: int = 0
    conflicts: Counter = field(default_factory=Counter)
    wall_time: float = 0.0

    def merge(self, other: SearchStats) -> None:
        self.nodes += other.nodes
        self.leaves += other.leaves
        self.propagations += other.propagations
        self.max_depth = max(self.max_depth, other.max_depth)
        self.conflicts.update(other.conflicts)
        self.wall_time += other.wall_time

    def summary(self) -> str:
        kinds = ",".join(f"{k}={v}" for k, v in sorted(self.conflicts.items()))
        return (f"nodes={self.nodes} leaves={self.leaves} propagations={self.propagations} "
                f"conflicts=[{kinds}] time={self.wall_time:.3f}s")


@dataclass
class SolveResult:
    verdict: Verdict
    placement: Placement | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    instance: Instance | None = None

    @property
    def feasible(self) -> bool:
        return self.verdict == Verdict.FEASIBLE


class _LimitReached(Exception):
    pass


def _kind_name(kind) -> str:
    return getattr(kind, "value", str(kind))


class CoppSearch:
    """Depth-first search for a packing class of one fixed container."""

    def __init__(self, instance: Instance, config: SearchConfig | None = None, hint: Placement | None = None):
        report = validate(instance)
        if not report.ok:
            raise ValueError(f"invalid instance: {report}")
        self.config = config or SearchConfig()
        self.instance = transitive_closure(instance)
        inst = self.instance
        self.n, self.d = inst.n, inst.d
        self.widths = [[it.widths[i] for it in inst.items] for i in range(self.d)]
        self.caps = list(inst.container.sizes)
        self.store = EdgeStore(self.n, self.d)
        self.prop = Propagator(self.store, self.widths, self.caps, order=self.config.queue_order)
        self.stats = SearchStats()
        self.slots = self._slot_order()
        first = ((COMPONENT, COMPARABILITY) if self.config.value_order == "component"
                 else (COMPARABILITY, COMPONENT))
        self.values = [first] * len(self.slots)
        if hint is not None:
            self.values = self._hinted_values(hint)

    def _hinted_values(self, hint: Placement) -> list[tuple[int, int]]:
        """Try first whatever the hint layout does with each pair (it may overflow the container)."""
        out = []
        w = self.widths
        for i, u, v in self.slots:
            a, b = hint.coords[u][i], hint.coords[v][i]
            overlap = a < b + w[i][v] and b < a + w[i][u]
            out.append((COMPONENT, COMPARABILITY) if overlap else (COMPARABILITY, COMPONENT))
        return out

    def _slot_order(self) -> list[tuple[int, int, int]]:
        n, d, w, h = self.n, self.d, self.widths, self.caps
        slots = [(i, u, v) for i in range(d) for u in range(n) for v in range(u + 1, n)]
        how = self.config.branching
        if how in ("width", "tight"):
            slots.sort(key=lambda s: (-(w[s[0]][s[1]] + w[s[0]][s[2]]), s))
        elif how == "relwidth":
            slots.sort(key=lambda s: (-(w[s[0]][s[1]] + w[s[0]][s[2]]) / h[s[0]], s))
        elif how == "relmin":
            slots.sort(key=lambda s: (-min(w[s[0]][s[1]], w[s[0]][s[2]]) / h[s[0]], s))
        elif how == "relmax":
            slots.sort(key=lambda s: (-max(w[s[0]][s[1]], w[s[0]][s[2]]) / h[s[0]],
                                      -min(w[s[0]][s[1]], w[s[0]][s[2]]) / h[s[0]], s))
        elif how == "relprod":
            slots.sort(key=lambda s: (-(w[s[0]][s[1]] * w[s[0]][s[2]]) / h[s[0]] ** 2, s))
        elif how in ("pairs", "items"):
            rel = [sum(w[i][v] / h[i] for i in range(d)) for v in range(n)]
            if how == "pairs":
                pairs = sorted(((u, v) for u in range(n) for v in range(u + 1, n)),
                               key=lambda p: (-(rel[p[0]] + rel[p[1]]), p))
            else:
                rank = sorted(range(n), key=lambda v: (-rel[v], v))
                pairs = [(min(a, b), max(a, b)) for k, b in enumerate(rank) for a in rank[:k]]
            slots = [(i, u, v) for u, v in pairs for i in range(d)]
        return slots

    # -- driver --------------------------------------------------------------

    def _use_kernel(self) -> bool:
        engine = self.config.engine
        if engine == "python" or self.config.queue_order != "fifo":
            return False
        from . import kernel_available

        if engine == "compiled":
            if not kernel_available() or self.n > 62:
                raise RuntimeError("compiled engine unavailable for this instance")
            return True
        return kernel_available() and self.n <= 62

    def solve(self) -> SolveResult:
        if self._use_kernel():
            return self._solve_compiled()
        start = time.perf_counter()
        self._deadline = (start + self.config.time_limit) if self.config.time_limit else None
        result = SolveResult(Verdict.INFEASIBLE, instance=self.instance, stats=self.stats)
        try:
            seed_store(self.store, self.prop, self.widths, self.caps,
                       [self.instance.arcs(i) for i in range(self.d)])
            self.prop.run()
            self._class_check()
        except Contradiction as c:
            self._count(c)
            if self.config.verbosity:
                log.info("root refuted: %s", c.log_record())
            self.root_conflict = c
        else:
            self.root_conflict = None
            try:
                placement = self._dfs(0, 0)
            except _LimitReached:
                result.verdict = Verdict.UNKNOWN
            else:
                if placement is not None:
                    result.verdict = Verdict.FEASIBLE
                    result.placement = placement
        self.stats.propagations = self.prop.propagations
        self.stats.wall_time = time.perf_counter() - start
        return result

    def _count(self, c: Contradiction) -> None:
        self.stats.conflicts[_kind_name(c.kind)] += 1

    def _class_check(self) -> None:
        store = self.store
        for i in range(self.d):
            bad = check_orientable(store, i)
            if bad is not None:
                raise OrientationConflict(ConflictKind.P3_CONFLICT, bad, i,
                                          "implication class forces both orientations")

    def _dfs(self, pos: int, depth: int) -> Placement | None:
        stats = self.stats
        stats.nodes += 1
        if depth > stats.max_depth:
            stats.max_depth = depth
        cfg = self.config
        if cfg.node_limit and stats.nodes > cfg.node_limit:
            raise _LimitReached
        if self._deadline is not None and stats.nodes & 255 == 0 and time.perf_counter() > self._deadline:
            raise _LimitReached
        if cfg.verbosity > 1 and stats.nodes % 10000 == 0:
            log.debug("nodes=%d depth=%d", stats.nodes, depth)
        store = self.store
        state = store.state
        slots = self.slots
        n = self.n
        total = len(slots)
        while pos < total:
            i, u, v = slots[pos]
            if state[i][u * n + v] == 0:
                break
            pos += 1
        else:
            return self._leaf()
        prop = self.prop
        mark = len(store.trail)
        every = cfg.class_check_every
        for value in self.values[pos]:
            try:
                prop.fix(i, u, v, value, "branch")
                prop.run()
                if every and stats.nodes % every == 0:
                    self._class_check()
            except Contradiction as c:
                self._count(c)
            else:
                found = self._dfs(pos + 1, depth + 1)
                if found is not None:
                    return found
            store.rollback_to(mark)
        return None

    def _leaf(self) -> Placement | None:
        self.stats.leaves += 1
        store = self.store
        mark = len(store.trail)
        try:
            self._class_check()
            for i in range(self.d):
                orient_store_dimension(store, i)
            placement = realize(store, self.instance)
        except Contradiction as c:
            self._count(c)
        except (NotExtendible, RealizationError) as err:
            self.stats.conflicts["Internal"] += 1
            log.warning("leaf rejected unexpectedly: %s", err)
        else:
            problems = verify_placement(self.instance, placement)
            if not problems:
                return placement
            self.stats.conflicts["Internal"] += 1
            log.warning("realized placement failed verification: %s", problems)
        store.rollback_to(mark)
        return None


    def _solve_compiled(self) -> SolveResult:
        from .kernel import CONFLICT_NAMES, S_DONE, S_LEAF, S_LIMIT, KernelState

        start = time.perf_counter()
        deadline = (start + self.config.time_limit) if self.config.time_limit else None
        arcs = [(i, a, b) for i in range(self.d) for a, b in self.instance.arcs(i)]
        ks = KernelState(self.n, self.d, self.widths, self.caps, self.slots, self.values, arcs,
                         self.config.class_check_every, self.config.node_limit, self.config.probe,
                         DYNAMIC_BRANCHING.get(self.config.branching, 0))
        result = SolveResult(Verdict.INFEASIBLE, instance=self.instance, stats=self.stats)
        code = ks.seed()
        if code >= 0:
            self.stats.conflicts[CONFLICT_NAMES[code]] += 1
            if self.config.verbosity:
                log.info("root refuted: conflict kind=%s", CONFLICT_NAMES[code])
        else:
            chunk = 2000
            while True:
                status = ks.step(chunk)
                if status == S_LEAF:
                    placement = self._complete(ks.to_store())
                    if placement is not None:
                        result.verdict = Verdict.FEASIBLE
                        result.placement = placement
                        break
                elif status == S_DONE:
                    break
                elif status == S_LIMIT:
                    result.verdict = Verdict.UNKNOWN
                    break
                elif deadline is not None and time.perf_counter() > deadline:
                    result.verdict = Verdict.UNKNOWN
                    break
                else:
                    chunk = min(chunk * 2, 200000)
                if self.config.verbosity > 1:
                    log.debug("nodes=%d", ks.nodes)
        counters = ks.counters()
        st = self.stats
        st.nodes, st.leaves, st.max_depth = counters["nodes"], counters["leaves"], counters["max_depth"]
        st.propagations = counters["propagations"]
        st.conflicts.update(ks.conflicts())
        st.wall_time = time.perf_counter() - start
        return result

    def _complete(self, store: EdgeStore) -> Placement | None:
        """Orient and realize a complete, class-checked assignment."""
        try:
            for i in range(self.d):
                orient_store_dimension(store, i)
            placement = realize(store, self.instance)
        except (Contradiction, NotExtendible, RealizationError) as err:
            self.stats.conflicts["Internal"] += 1
            log.warning("leaf rejected unexpectedly: %s", err)
            return None
        problems = verify_placement(self.instance, placement)
        if problems:
            self.stats.conflicts["Internal"] += 1
            log.warning("realized placement failed verification: %s", problems)
            return None
        return placement


def solve_copp(instance: Instance, config: SearchConfig | None = None,
               hint: Placement | None = None) -> SolveResult:
    """Decide whether the boxes fit the container under the precedence constraints.

    ``hint`` (a layout, possibly for a larger container) only changes which
    branch is tried first; the verdict does not depend on it.
    """
    return CoppSearch(instance, config, hint).solve()


# -- bounds ---------------------------------------------------------------------------


def chain_bound(instance: Instance, dim: int) -> int:
    """Heaviest constraint chain in ``dim`` (sum of widths along the path)."""
    n = instance.n
    w = [it.widths[dim] for it in instance.items]
    arcs = closure_arcs(n, instance.arcs(dim))
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in arcs:
        succ[a].append(b)
        indeg[b] += 1
    best = list(w)
    ready = [v for v in range(n) if indeg[v] == 0]
    while ready:
        v = ready.pop()
        for s in succ[v]:
            best[s] = max(best[s], best[v] + w[s])
            indeg[s] -= 1
            if indeg[s] == 0:
                ready.append(s)
    return max(best, default=0)


def volume_bound(instance: Instance, dim: int) -> int:
    vol = sum(math.prod(it.widths) for it in instance.items)
    rest = math.prod(h for i, h in enumerate(instance.container.sizes) if i != dim)
    return -(-vol // rest)


def lower_bound(instance: Instance, dim: int | None = None) -> int:
    """Elementary lower bound on the container size in ``dim`` (the objective)."""
    if dim is None:
        dim = instance.objective_dim if instance.objective_dim is not None else instance.d - 1
    if instance.n == 0:
        return 0
    return max(volume_bound(instance, dim), chain_bound(instance, dim),
               max(it.widths[dim] for it in instance.items))


def base_lower_bound(instance: Instance, base_dims: Sequence[int]) -> int:
    """Smallest common size of ``base_dims`` permitted by width, chain and volume arguments."""
    if instance.n == 0:
        return 0
    lb = max(max(it.widths[i] for it in instance.items) for i in base_dims)
    lb = max([lb] + [chain_bound(instance, i) for i in base_dims])
    vol = sum(math.prod(it.widths) for it in instance.items)
    fixed = math.prod(h for i, h in enumerate(instance.container.sizes) if i not in base_dims)
    k = len(base_dims)
    s = max(lb, 1)
    while s ** k * fixed < vol:
        s += 1
    return s


# -- greedy upper bound -----------------------------------------------------------------


def _priority_orders(instance: Instance, dim: int) -> list[list[int]]:
    n = instance.n
    keys = [
        lambda v: (-instance.width(v, dim), -math.prod(instance.items[v].widths), v),
        lambda v: (-math.prod(instance.items[v].widths), v),
        lambda v: (-max(instance.items[v].widths[i] for i in range(instance.d) if i != dim), v),
        lambda v: (v,),
    ]
    orders = []
    for key in keys:
        order = sorted(range(n), key=key)
        if order not in orders:
            orders.append(order)
    return orders


def greedy_placement(instance: Instance, dim: int, order: Sequence[int]) -> Placement | None:
    """Place items one by one at the lowest feasible point (``dim`` unbounded).

    Candidate corners are 0 and the far faces of already placed items.  Returns
    None if some item cannot be placed (e.g. precedence in a bounded dimension).
    """
    inst = instance
    d, n = inst.d, inst.n
    sizes = inst.container.sizes
    wid = [it.widths for it in inst.items]
    preds: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    succs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for c in inst.constraints:
        preds[c.after].append((c.dim, c.before))
        succs[c.before].append((c.dim, c.after))
    coords: list[tuple[int, ...] | None] = [None] * n
    placed: list[int] = []
    other = [i for i in range(d) if i != dim]
    for v in order:
        wv = wid[v]
        lo = [0] * d
        for i, p in preds[v]:
            if coords[p] is not None:
                lo[i] = max(lo[i], coords[p][i] + wid[p][i])
        cand = []
        for i in range(d):
            vals = {lo[i]}
            vals.update(coords[p][i] + wid[p][i] for p in placed if coords[p][i] + wid[p][i] >= lo[i])
            cand.append(sorted(vals))
        best = None
        for t in cand[dim]:
            if best is not None:
                break
            for point in _product([cand[i] for i in other]):
                pos = [0] * d
                pos[dim] = t
                for i, c in zip(other, point):
                    pos[i] = c
                if any(pos[i] + wv[i] > sizes[i] for i in other):
                    continue
                if any(coords[s] is not None and pos[i] + wv[i] > coords[s][i] for i, s in succs[v]):
                    continue
                if any(all(pos[i] < coords[p][i] + wid[p][i] and coords[p][i] < pos[i] + wv[i]
                           for i in range(d)) for p in placed):
                    continue
                best = tuple(pos)
                break
        if best is None:
            return None
        coords[v] = best
        placed.append(v)
    return Placement.of(coords)


def _product(lists):
    if not lists:
        yield ()
        return
    head, *rest = lists
    for x in head:
        for tail in _product(rest):
            yield (x,) + tail


def _topological(order: Sequence[int], instance: Instance) -> list[int]:
    """Stable topological sort of ``order`` w.r.t. all precedence arcs (falls back to ``order``)."""
    n = instance.n
    rank = {v: r for r, v in enumerate(order)}
    succ: list[set[int]] = [set() for _ in range(n)]
    indeg = [0] * n
    for c in instance.constraints:
        if c.after not in succ[c.before]:
            succ[c.before].add(c.after)
            indeg[c.after] += 1
    import heapq

    heap = [(rank[v], v) for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, v = heapq.heappop(heap)
        out.append(v)
        for s in succ[v]:
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(heap, (rank[s], s))
    return out if len(out) == n else list(order)


def greedy_upper_bound(instance: Instance, dim: int) -> tuple[int, Placement] | None:
    """Best height over a few priority orders, each made topological."""
    big = instance.with_size(dim, sum(it.widths[dim] for it in instance.items) or 1)
    best = None
    for order in _priority_orders(big, dim):
        pl = greedy_placement(big, dim, _topological(order, big))
        if pl is None:
            continue
        height = pl.extent(big, dim)
        if best is None or height < best[0]:
            best = (height, pl)
    return best


# -- optimisation drivers ------------------------------------------------------------------


STRATEGIES = ("ascending", "descending", "binary", "alternating")
ALTERNATE_START_NODES = 20_000
RESTART_NODES = 50_000
SHAKE_FRACTIONS = (0.1, 0.15, 0.25)
PROBE_COST = 16


@dataclass
class ProbeRecord:
    size: int
    verdict: Verdict
    stats: SearchStats


@dataclass
class OptimizeResult:
    """Outcome of CSPP/BMP: ``lb == ub`` means solved to optimality."""

    lb: int
    ub: int | None
    placement: Placement | None
    instance: Instance | None = None
    probes: list[ProbeRecord] = field(default_factory=list)
    time_upper: float = 0.0  # until the best solution was known
    time_lower: float = 0.0  # spent proving the lower bound
    heuristic_ub: int | None = None
    initial_lb: int = 0
    # some item does not fit the fixed dimensions, so no size works
    infeasible: bool = False

    @property
    def solved(self) -> bool:
        return self.ub is not None and self.lb == self.ub

    @property
    def value(self) -> int | None:
        return self.ub if self.solved else None

    def bounds_text(self) -> str:
        if self.infeasible:
            return "infeasible"
        if self.solved:
            return str(self.ub)
        return f"[{self.lb},{self.ub if self.ub is not None else 'inf'}]"

    @property
    def stats(self) -> SearchStats:
        total = SearchStats()
        for p in self.probes:
            total.merge(p.stats)
        return total


class _Optimizer:
    """Generic one-parameter search: ``make(s)`` builds the instance for size ``s``."""

    def __init__(self, make, lb: int, ub: int | None, ub_placement, config: SearchConfig,
                 cap: int, extent=None):
        self.make = make
        self.lb, self.ub = lb, ub
        # no size above ``cap`` can help: infeasible there means infeasible everywhere
        self.cap = cap
        self.extent = extent
        self.rng = random.Random(0)
        self.placement = ub_placement
        self.config = config
        self.probes: list[ProbeRecord] = []
        self.t_upper = 0.0
        self.t_lower = 0.0
        self.start = time.perf_counter()

    def _remaining(self) -> float | None:
        if self.config.time_limit is None:
            return None
        return self.config.time_limit - (time.perf_counter() - self.start)

    def probe(self, s: int, node_limit: int | None = None, hint: Placement | None = None,
              **overrides) -> Verdict:
        rem = self._remaining()
        if rem is not None and rem <= 0:
            return Verdict.UNKNOWN
        nodes = self.config.node_limit if node_limit is None else node_limit
        cfg = SearchConfig(**{**self.config.__dict__, "time_limit": rem, "node_limit": nodes, **overrides})
        res = solve_copp(self.make(s), cfg, hint)
        self.probes.append(ProbeRecord(s, res.verdict, res.stats))
        if self.config.verbosity:
            log.info("probe size=%d verdict=%s %s", s, res.verdict.value, res.stats.summary())
        if res.verdict == Verdict.FEASIBLE:
            used = self.extent(res.placement) if self.extent is not None else s
            self.ub, self.placement = min(s, max(used, self.lb)), res.placement
            self.t_upper += res.stats.wall_time
        elif res.verdict == Verdict.INFEASIBLE:
            self.lb = max(self.lb, s + 1)
            self.t_lower += res.stats.wall_time
        return res.verdict

    @property
    def infeasible(self) -> bool:
        return self.ub is None and self.lb > self.cap

    def run(self) -> None:
        strategy = self.config.strategy
        if strategy == "alternating":
            return self._alternate()
        while self.ub is None or self.lb < self.ub:
            if self.infeasible:
                return
            hint = None
            if self.ub is None:
                s = self.lb if strategy == "ascending" else self.cap
            elif strategy == "ascending":
                s = self.lb
            elif strategy == "descending":
                s = self.ub - 1
                hint = self.placement
            else:
                s = (self.lb + self.ub - 1) // 2
            verdict = self.probe(s, hint=hint)
            if verdict == Verdict.UNKNOWN:
                return
            if verdict == Verdict.FEASIBLE and self.ub is not None and s < self.lb:
                raise AssertionError("feasible below a proven lower bound")

    def _alternate(self) -> None:
        """Interleave lower-bound proofs and improvements, doubling a shared node budget."""
        limit = self.config.node_limit
        budget = ALTERNATE_START_NODES if not limit else min(limit, ALTERNATE_START_NODES)
        while self.ub is None or self.lb < self.ub:
            if self.infeasible:
                return
            progress = False
            for side in ("lower", "upper"):
                if self.ub is not None and self.lb >= self.ub:
                    return
                if side == "lower":
                    s = self.lb
                else:
                    s = self.cap if self.ub is None else self.ub - 1
                    if s == self.lb and self.probes and self.probes[-1].size == s:
                        continue
                if side == "upper" and self.placement is not None:
                    verdict = self._improve(s, budget)
                else:
                    verdict = self.probe(s, budget)
                if verdict != Verdict.UNKNOWN:
                    progress = True
                elif (rem := self._remaining()) is not None and rem <= 0:
                    return
            if not progress:
                if limit and budget >= limit:
                    return
                budget = budget * 2 if not limit else min(limit, budget * 2)


    def _improve(self, s: int, budget: int) -> Verdict:
        """Look for a layout of size ``s`` near the best one: restarts from shaken copies of it.

        Restarts never use failed-literal probing; a probing node costs about
        ``PROBE_COST`` plain nodes, so the budget is scaled to match.
        """
        if self.config.probe:
            budget *= PROBE_COST
        spent, k = 0, 0
        while spent < budget:
            nodes = min(RESTART_NODES, budget - spent)
            hint = self.placement if k == 0 else self._shake(s, SHAKE_FRACTIONS[k % len(SHAKE_FRACTIONS)])
            verdict = self.probe(s, nodes, hint, probe=0)
            if verdict != Verdict.UNKNOWN:
                return verdict
            if (rem := self._remaining()) is not None and rem <= 0:
                return verdict
            spent += nodes
            k += 1
        return Verdict.UNKNOWN

    def _shake(self, s: int, fraction: float) -> Placement:
        """The best layout with a random subset of items moved to random positions."""
        inst = self.make(s)
        rng = self.rng
        coords = [list(c) for c in self.placement.coords]
        for v in range(inst.n):
            if rng.random() < fraction:
                for i in range(inst.d):
                    coords[v][i] = rng.randint(0, max(0, inst.container.sizes[i] - inst.width(v, i)))
        return Placement.of([tuple(c) for c in coords])


def _misfit(instance: Instance, free_dims: Sequence[int]) -> bool:
    sizes = instance.container.sizes
    return any(it.widths[i] > sizes[i] for it in instance.items for i in range(instance.d) if i not in free_dims)


def solve_cspp(instance: Instance, dim: int | None = None, config: SearchConfig | None = None) -> OptimizeResult:
    """Minimise the container size in ``dim`` (default: the instance's objective dimension)."""
    config = config or SearchConfig()
    if dim is None:
        dim = instance.objective_dim if instance.objective_dim is not None else instance.d - 1
    if _misfit(instance, [dim]):
        return OptimizeResult(lb=0, ub=None, placement=None, instance=instance, infeasible=True)
    t0 = time.perf_counter()
    cap = max(1, sum(it.widths[dim] for it in instance.items))
    closed = transitive_closure(instance.with_size(dim, cap))
    lb = lower_bound(closed, dim)
    heur = greedy_upper_bound(closed, dim) if instance.n else (0, Placement.of([]))
    ub, ub_pl = (heur if heur is not None else (None, None))
    t_heur = time.perf_counter() - t0
    opt = _Optimizer(lambda s: closed.with_size(dim, s), lb, ub, ub_pl, config, cap,
                     extent=lambda pl: pl.extent(closed, dim))
    opt.run()
    if opt.infeasible:
        return OptimizeResult(lb=opt.lb, ub=None, placement=None, instance=instance, probes=opt.probes,
                              time_lower=opt.t_lower, initial_lb=lb, infeasible=True)
    placement = opt.placement
    final = closed.with_size(dim, opt.ub) if opt.ub is not None else closed
    return OptimizeResult(
        lb=opt.lb, ub=opt.ub, placement=placement, instance=final, probes=opt.probes,
        time_upper=t_heur + opt.t_upper, time_lower=opt.t_lower, heuristic_ub=ub, initial_lb=lb)


def solve_bmp(instance: Instance, base_dims: Sequence[int] | None = None,
              config: SearchConfig | None = None) -> OptimizeResult:
    """Minimise a common size ``s`` of ``base_dims`` (all dims but the last by default)."""
    config = config or SearchConfig()
    if base_dims is None:
        base_dims = list(range(instance.d - 1)) if instance.d > 1 else [0]
    base_dims = list(base_dims)
    if _misfit(instance, base_dims):
        return OptimizeResult(lb=0, ub=None, placement=None, instance=instance, infeasible=True)
    big = max(1, max((sum(it.widths[i] for it in instance.items) for i in base_dims), default=1))

    def make(s: int) -> Instance:
        sizes = list(instance.container.sizes)
        for i in base_dims:
            sizes[i] = s
        return instance.with_sizes(sizes)

    t0 = time.perf_counter()
    closed = transitive_closure(make(big))
    lb = base_lower_bound(closed, base_dims)
    ub, ub_pl = None, None
    # greedy: pack with the base at its lower bound and grow until everything fits
    s = lb
    while instance.n and s <= big:
        strip = base_dims[-1]
        sizes = list(closed.container.sizes)
        for i in base_dims:
            sizes[i] = s
        trial = closed.with_sizes(sizes)
        heur = greedy_upper_bound(trial, strip)
        if heur is not None and heur[0] <= s:
            ub, ub_pl = s, heur[1]
            break
        s = max(s + 1, min(heur[0], big) if heur is not None else s + 1)
        if heur is not None and s <= big:
            sizes = list(closed.container.sizes)
            for i in base_dims:
                sizes[i] = s
            pl = greedy_upper_bound(closed.with_sizes(sizes), strip)
            if pl is not None and pl[0] <= s:
                ub, ub_pl = s, pl[1]
                break
    if instance.n == 0:
        ub, ub_pl = 0, Placement.of([])
    t_heur = time.perf_counter() - t0
    opt = _Optimizer(lambda s: closed.with_sizes(
        [s if i in base_dims else h for i, h in enumerate(closed.container.sizes)]), lb, ub, ub_pl, config, big,
        extent=lambda pl: max(pl.extent(closed, i) for i in base_dims))
    opt.run()
    if opt.infeasible:
        return OptimizeResult(lb=opt.lb, ub=None, placement=None, instance=instance, probes=opt.probes,
                              time_lower=opt.t_lower, initial_lb=lb, infeasible=True)
    final = make(opt.ub) if opt.ub is not None else closed
    final = transitive_closure(final)
    return OptimizeResult(
        lb=opt.lb, ub=opt.ub, placement=opt.placement, instance=final, probes=opt.probes,
        time_upper=t_heur + opt.t_upper, time_lower=opt.t_lower, heuristic_ub=ub, initial_lb=lb)
