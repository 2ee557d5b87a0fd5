"""Orientation propagation on comparability edges.

Two implication rules drive everything here:

* P3 implication: comparability edges {a,c} and {b,c} whose outer pair {a,b}
  is a fixed component edge must both point into ``c`` or both out of ``c``.
* transitivity implication: arcs a->b and b->c force the comparability arc
  a->c.  A directed 2-chain closing over a component edge is a conflict.

If all implications of a seed set of arcs can be carried out without
conflict, the seeds extend to a transitive orientation of the (complete)
comparability graph; :mod:`ordpack.moddecomp` builds that orientation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .axioms import Contradiction
from .edgestate import COMPARABILITY, COMPONENT, EdgeStore, bits
from .graph import Graph


class ConflictKind(str, Enum):
    P3_CONFLICT = "P3Conflict"
    TRANSITIVITY_CONFLICT = "TransitivityConflict"


class OrientationConflict(Contradiction):
    def __init__(self, kind: ConflictKind, witness: Sequence[int], dim: int | None = None,
                 detail: str = ""):
        self.kind = kind
        self.witness = tuple(witness)
        self.dim = dim
        self.detail = detail
        msg = f"{kind.value} in dim {dim}: {self.witness}"
        super().__init__(msg + (f" ({detail})" if detail else ""))

    def log_record(self) -> str:
        return f"conflict kind={self.kind.value} dim={self.dim} witness={','.join(map(str, self.witness))}"


P3 = ConflictKind.P3_CONFLICT
TRANS = ConflictKind.TRANSITIVITY_CONFLICT


# -- incremental rules ---------------------------------------------------------
# The sink exposes ``fix_arc(dim, a, b, kind)``; see ordpack.propagate.


def p3_arc_rule(sink, dim: int, a: int, b: int) -> None:
    """Arc a->b was just set."""
    store = sink.store
    K, C = store.cmpb[dim], store.comp[dim]
    fix_arc = sink.fix_arc
    # centre b: every other comparability arm {z,b} with {a,z} component points into b
    for z in bits(K[b] & C[a]):
        fix_arc(dim, z, b, P3)
    # centre a: arms {a,z} with {b,z} component point out of a
    for z in bits(K[a] & C[b]):
        fix_arc(dim, a, z, P3)


def p3_component_rule(sink, dim: int, u: int, v: int) -> None:
    """{u,v} became a component edge: it may be the outer pair of P3s."""
    store = sink.store
    K = store.cmpb[dim]
    common = K[u] & K[v]
    if not common:
        return
    succ, pred = store.succ[dim], store.pred[dim]
    fix_arc = sink.fix_arc
    for c in bits(common & succ[u]):
        fix_arc(dim, v, c, P3)
    for c in bits(common & pred[u]):
        fix_arc(dim, c, v, P3)
    for c in bits(common & succ[v]):
        fix_arc(dim, u, c, P3)
    for c in bits(common & pred[v]):
        fix_arc(dim, c, u, P3)


def p3_comparability_rule(sink, dim: int, u: int, v: int) -> None:
    """{u,v} became a comparability edge: it may be the second arm of a P3."""
    store = sink.store
    K, C = store.cmpb[dim], store.comp[dim]
    succ, pred = store.succ[dim], store.pred[dim]
    zs = K[u] & C[v]
    if zs & succ[u]:
        sink.fix_arc(dim, u, v, P3)
    if zs & pred[u]:
        sink.fix_arc(dim, v, u, P3)
    zs = K[v] & C[u]
    if zs & succ[v]:
        sink.fix_arc(dim, v, u, P3)
    if zs & pred[v]:
        sink.fix_arc(dim, u, v, P3)


def d2_arc_rule(sink, dim: int, a: int, b: int) -> None:
    """Arc a->b was just set: close every directed 2-chain through it."""
    store = sink.store
    succ, pred = store.succ[dim], store.pred[dim]
    fix_arc = sink.fix_arc
    for z in bits(succ[b]):
        fix_arc(dim, a, z, TRANS)
    for z in bits(pred[a]):
        fix_arc(dim, z, b, TRANS)


def d2_component_rule(sink, dim: int, u: int, v: int) -> None:
    store = sink.store
    succ, pred = store.succ[dim], store.pred[dim]
    mid = (succ[u] & pred[v]) | (succ[v] & pred[u])
    if mid:
        c = (mid & -mid).bit_length() - 1
        raise OrientationConflict(TRANS, (u, c, v), dim, "directed 2-chain over a component edge")


def d2_comparability_rule(sink, dim: int, u: int, v: int) -> None:
    store = sink.store
    succ, pred = store.succ[dim], store.pred[dim]
    if succ[u] & pred[v]:
        sink.fix_arc(dim, u, v, TRANS)
    if succ[v] & pred[u]:
        sink.fix_arc(dim, v, u, TRANS)


# -- cascades --------------------------------------------------------------------


def _cascade(store: EdgeStore, dim: int, seeds, rules: str, order: str = "fifo",
             rng: random.Random | None = None) -> list[tuple[int, int]]:
    from .propagate import Propagator

    prop = Propagator(store, rules=rules, order=order, rng=rng)
    mark = len(store.trail)
    for a, b in seeds:
        prop.fix_arc(dim, a, b, TRANS)
    prop.run()
    return [(u, v) if store.has_arc(dim, u, v) else (v, u)
            for (i, u, v, prev) in store.trail[mark:] if i == dim and prev == COMPARABILITY]


def propagate_p3(store: EdgeStore, dim: int, arc: tuple[int, int]) -> list[tuple[int, int]]:
    """Orient ``arc`` and carry out P3 implications only; returns all new arcs in order."""
    return _cascade(store, dim, [arc], rules="p3")


def propagate_transitivity(store: EdgeStore, dim: int, arc: tuple[int, int]) -> list[tuple[int, int]]:
    """Orient ``arc`` and carry out transitivity implications only."""
    return _cascade(store, dim, [arc], rules="d2")


# -- implication classes ----------------------------------------------------------


class ClassStatus(str, Enum):
    UNORIENTED = "Unoriented"
    ORIENTED = "OrientedConsistently"
    SELF_CONFLICTING = "SelfConflicting"


@dataclass
class ImplicationClass:
    id: int
    edges: list[tuple[int, int]] = field(default_factory=list)
    status: ClassStatus = ClassStatus.UNORIENTED
    # one direction of every member, consistent with the P3 links (``u -> v``)
    representative: list[tuple[int, int]] = field(default_factory=list)


class _DSU:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _arc_classes(n: int, cmpb: Sequence[int], comp: Sequence[int]) -> _DSU:
    """Union-find over directed arcs (index a*n+b) linked by P3 implications."""
    dsu = _DSU(n * n)
    for c in range(n):
        nb = list(bits(cmpb[c]))
        for i, a in enumerate(nb):
            linked = comp[a]
            for b in nb[i + 1:]:
                if linked >> b & 1:
                    # both into c, or both out of c
                    dsu.union(a * n + c, b * n + c)
                    dsu.union(c * n + a, c * n + b)
    return dsu


def implication_classes(store: EdgeStore, dim: int) -> list[ImplicationClass]:
    """P3 implication classes of the fixed comparability edges of ``dim``.

    Only fixed component edges link two arms; unassigned outer pairs do not.
    """
    n = store.n
    cmpb, comp = store.cmpb[dim], store.comp[dim]
    dsu = _arc_classes(n, cmpb, comp)
    groups: dict[int, ImplicationClass] = {}
    order: list[int] = []
    for u in range(n):
        for v in bits(cmpb[u] >> (u + 1) << (u + 1)):
            fwd, bwd = dsu.find(u * n + v), dsu.find(v * n + u)
            key = min(fwd, bwd)
            cls = groups.get(key)
            if cls is None:
                cls = groups[key] = ImplicationClass(len(groups))
                order.append(key)
            cls.edges.append((u, v))
            cls.representative.append((u, v) if fwd == key else (v, u))
            if fwd == bwd:
                cls.status = ClassStatus.SELF_CONFLICTING
    for key in order:
        cls = groups[key]
        if cls.status == ClassStatus.SELF_CONFLICTING:
            continue
        signs = set()
        for a, b in cls.representative:
            if store.has_arc(dim, a, b):
                signs.add(1)
            elif store.has_arc(dim, b, a):
                signs.add(-1)
        if len(signs) == 2:
            cls.status = ClassStatus.SELF_CONFLICTING
        elif signs:
            cls.status = ClassStatus.ORIENTED
    return [groups[k] for k in order]


def check_orientable(store: EdgeStore, dim: int) -> tuple[int, ...] | None:
    """Witness edge of a class forced in both directions, or None if none exists.

    For a fully decided dimension this is exactly transitive orientability of
    its comparability graph.
    """
    n = store.n
    cmpb, comp = store.cmpb[dim], store.comp[dim]
    dsu = _arc_classes(n, cmpb, comp)
    for u in range(n):
        for v in bits(cmpb[u] >> (u + 1) << (u + 1)):
            if dsu.find(u * n + v) == dsu.find(v * n + u):
                return (u, v)
    return None


# -- TOP ---------------------------------------------------------------------------


def store_from_graph(g: Graph) -> EdgeStore:
    """One-dimensional decided store: edges of ``g`` are comparability edges."""
    store = EdgeStore(g.n, 1)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            store.assign(0, u, v, COMPARABILITY if g.has_edge(u, v) else COMPONENT)
    store.trail.clear()
    return store


def top_feasible_store(store: EdgeStore, dim: int, seeds: Iterable[tuple[int, int]] = (),
                       order: str = "fifo", rng: random.Random | None = None) -> list[tuple[int, int]]:
    """Close the arcs already in ``store`` plus ``seeds`` under both rules.

    Mutates ``store``; returns the full arc set of ``dim`` afterwards.  Raises
    OrientationConflict if no transitive orientation extends the arcs.
    """
    from .propagate import Propagator

    bad = check_orientable(store, dim)
    if bad is not None:
        raise OrientationConflict(P3, bad, dim, "implication class forces both orientations")
    prop = Propagator(store, rules="orient", order=order, rng=rng)
    for a, b in store.arcs(dim):
        prop.push_arc(dim, a, b)
    for a, b in seeds:
        if not store.cmpb[dim][a] >> b & 1:
            raise ValueError(f"seed arc ({a},{b}) is not a comparability edge")
        prop.fix_arc(dim, a, b, P3)
    prop.run()
    return store.arcs(dim)


def top_feasible(g: Graph, seeds: Iterable[tuple[int, int]], order: str = "fifo",
                 rng: random.Random | None = None) -> set[tuple[int, int]]:
    """Closure of ``seeds`` on comparability graph ``g``; raises OrientationConflict.

    The returned arc set certifies that some transitive orientation of ``g``
    contains ``seeds`` (classes it does not touch stay unoriented).
    """
    store = store_from_graph(g)
    return set(top_feasible_store(store, 0, seeds, order=order, rng=rng))


def is_extendible(g: Graph, seeds: Iterable[tuple[int, int]]) -> bool:
    try:
        top_feasible(g, seeds)
    except OrientationConflict:
        return False
    return True
