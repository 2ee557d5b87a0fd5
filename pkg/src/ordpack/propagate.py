"""Fixpoint propagation over an EdgeStore.

Events are queued as ``(kind, dim, u, v)``; each event runs the rules that
can fire on it (C3, C4, C2, then the orientation rules).  Any processing
order reaches the same fixpoint, so the queue discipline is configurable.
"""

from __future__ import annotations

import random
from collections import Counter, deque
from typing import Sequence

from . import axioms, orient
from .axioms import Violation, ViolationKind, WeightTable
from .edgestate import COMPARABILITY, COMPONENT, UNASSIGNED, Conflict, EdgeStore
from .orient import ConflictKind, OrientationConflict

EV_COMPONENT = 1
EV_COMPARABILITY = 2
EV_ARC = 3

RULE_SETS = ("all", "axioms", "orient", "p3", "d2")


class Propagator:
    """Carries out forced assignments on ``store`` until nothing changes.

    ``widths[i][v]`` and ``caps[i]`` are only needed for the C2 rule.
    """

    def __init__(self, store: EdgeStore, widths: Sequence[Sequence[int]] | None = None,
                 caps: Sequence[int] | None = None, rules: str = "all", order: str = "fifo",
                 rng: random.Random | None = None):
        if rules not in RULE_SETS:
            raise ValueError(f"unknown rule set {rules!r}")
        if order not in ("fifo", "lifo", "random"):
            raise ValueError(f"unknown queue order {order!r}")
        self.store = store
        self.caps = list(caps) if caps is not None else []
        self.wt = [WeightTable(ws) for ws in widths] if widths is not None else []
        self.queue: deque = deque()
        self.order = order
        self.rng = rng or random.Random(0)
        self.propagations = 0
        self.forced = Counter()
        use_axioms = rules in ("all", "axioms")
        if use_axioms and widths is None:
            raise ValueError("axiom rules need widths and container sizes")
        p3 = rules in ("all", "orient", "p3")
        d2 = rules in ("all", "orient", "d2")
        self.on_component = []
        self.on_comparability = []
        self.on_arc = []
        if use_axioms:
            self.on_component += [axioms.c3_rule, axioms.c4_component_rule]
            self.on_comparability += [axioms.c4_comparability_rule, axioms.c2_rule]
        self.orient_component = ([orient.d2_component_rule] if d2 else []) + (
            [orient.p3_component_rule] if p3 else [])
        self.orient_comparability = ([orient.d2_comparability_rule] if d2 else []) + (
            [orient.p3_comparability_rule] if p3 else [])
        self.on_arc = ([orient.p3_arc_rule] if p3 else []) + ([orient.d2_arc_rule] if d2 else [])

    # -- sink interface used by the rules -------------------------------

    def fix(self, dim: int, u: int, v: int, state: int, kind) -> None:
        try:
            changed = self.store.assign(dim, u, v, state)
        except Conflict:
            if isinstance(kind, ConflictKind):
                raise OrientationConflict(kind, (min(u, v), max(u, v)), dim) from None
            raise Violation(kind, (min(u, v), max(u, v)), dim) from None
        if changed:
            self.forced[kind] += 1
            self.queue.append((state, dim, u, v))

    def fix_arc(self, dim: int, a: int, b: int, kind) -> None:
        store = self.store
        before = store.state[dim][a * store.n + b]
        try:
            changed = store.orient(dim, a, b)
        except Conflict as err:
            if isinstance(kind, ConflictKind):
                raise OrientationConflict(kind, (a, b), dim, err.found) from None
            raise OrientationConflict(ConflictKind.TRANSITIVITY_CONFLICT, (a, b), dim, err.found) from None
        if changed:
            self.forced[kind] += 1
            if before == UNASSIGNED:
                self.queue.append((EV_COMPARABILITY, dim, a, b))
            self.queue.append((EV_ARC, dim, a, b))

    def push_arc(self, dim: int, a: int, b: int) -> None:
        """Queue an already present arc so its implications get (re)derived."""
        self.queue.append((EV_ARC, dim, a, b))

    def push_state(self, dim: int, u: int, v: int) -> None:
        s = self.store.state[dim][u * self.store.n + v]
        if s:
            self.queue.append((s, dim, u, v))

    # -- main loop -----------------------------------------------------------

    def run(self) -> None:
        """Propagate to fixpoint; raises a Contradiction (queue cleared) on failure."""
        queue = self.queue
        store = self.store
        n_arcs = store.n_arcs
        if self.order == "fifo":
            pop = queue.popleft
        elif self.order == "lifo":
            pop = queue.pop
        else:
            pop = self._pop_random
        on_component, on_comparability, on_arc = self.on_component, self.on_comparability, self.on_arc
        orient_component, orient_comparability = self.orient_component, self.orient_comparability
        try:
            while queue:
                kind, dim, u, v = pop()
                self.propagations += 1
                if kind == EV_COMPONENT:
                    for rule in on_component:
                        rule(self, dim, u, v)
                    if n_arcs[dim]:
                        for rule in orient_component:
                            rule(self, dim, u, v)
                elif kind == EV_COMPARABILITY:
                    for rule in on_comparability:
                        rule(self, dim, u, v)
                    if n_arcs[dim]:
                        for rule in orient_comparability:
                            rule(self, dim, u, v)
                else:
                    for rule in on_arc:
                        rule(self, dim, u, v)
        except BaseException:
            queue.clear()
            raise

    def _pop_random(self):
        q = self.queue
        i = self.rng.randrange(len(q))
        q.rotate(-i)
        item = q.popleft()
        q.rotate(i)
        return item


def seed_store(store: EdgeStore, prop: Propagator, widths, caps, arcs_by_dim) -> None:
    """Initial fixings: precedence arcs as oriented comparability edges, overweight pairs as component edges."""
    n, d = store.n, store.d
    for i in range(d):
        w, h = widths[i], caps[i]
        for u in range(n):
            for v in range(u + 1, n):
                if w[u] + w[v] > h:
                    prop.fix(i, u, v, COMPONENT, ViolationKind.OVERWEIGHT_STABLE_SET)
    for i in range(d):
        for a, b in arcs_by_dim[i]:
            if widths[i][a] + widths[i][b] > caps[i]:
                raise Violation(ViolationKind.OVERWEIGHT_STABLE_SET, (min(a, b), max(a, b)), i)
            prop.fix_arc(i, a, b, ConflictKind.TRANSITIVITY_CONFLICT)
