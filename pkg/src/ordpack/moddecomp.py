"""Canonical (Gallai) modular decomposition and transitive-orientation completion.

The decomposition is the straightforward polynomial one: split by connected
components (parallel), by co-components (series), and otherwise into the
maximal proper modules, found by growing the smallest module containing each
vertex pair.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .edgestate import bits
from .graph import Graph, components, is_transitive_orientation


class NodeKind(str, Enum):
    LEAF = "leaf"
    PARALLEL = "parallel"
    SERIES = "series"
    PRIME = "prime"


class NotExtendible(Exception):
    """The partial orientation has no transitive completion on this graph."""


@dataclass
class DecompositionNode:
    kind: NodeKind
    mask: int
    children: list[DecompositionNode] = field(default_factory=list)
    # quotient graph over the children (indices into ``children``)
    quotient: Graph | None = None

    @property
    def vertices(self) -> list[int]:
        return list(bits(self.mask))

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def dump(self, indent: int = 0) -> str:
        pad = "  " * indent
        line = f"{pad}{self.kind.value} {' '.join(map(str, self.vertices))}\n"
        return line + "".join(c.dump(indent + 1) for c in self.children)


def is_module(g: Graph, mask: int | Iterable[int]) -> bool:
    """Every vertex outside the set sees all of it or none of it."""
    if not isinstance(mask, int):
        mask = sum(1 << v for v in set(mask))
    if mask & (mask - 1) == 0:
        return True
    for z in bits(g.vertices_mask() & ~mask):
        seen = g.adj[z] & mask
        if seen and seen != mask:
            return False
    return True


def _module_closure(adj: list[int], within: int, mask: int) -> int:
    """Smallest module of G[within] containing ``mask``."""
    changed = True
    while changed:
        changed = False
        for z in bits(within & ~mask):
            seen = adj[z] & mask
            if seen and seen != mask:
                mask |= 1 << z
                changed = True
    return mask


def _maximal_modules(adj: list[int], within: int) -> list[int]:
    """Partition of a prime-type vertex set into its maximal proper modules."""
    parts: list[int] = []
    left = within
    while left:
        u = (left & -left).bit_length() - 1
        group = 1 << u
        for v in bits(left & ~group):
            closure = _module_closure(adj, within, (1 << u) | (1 << v))
            if closure != within:
                group |= closure
        parts.append(group)
        left &= ~group
    return parts


def _quotient(adj: list[int], parts: list[int]) -> Graph:
    reps = [(p & -p).bit_length() - 1 for p in parts]
    edges = []
    for i, a in enumerate(parts):
        for j in range(i + 1, len(parts)):
            link = 0
            for v in bits(a):
                link |= adj[v] & parts[j]
            if link:
                # all-or-none adjacency between distinct modules
                assert all(adj[v] & parts[j] == parts[j] for v in bits(a)), "module property broken"
                edges.append((i, j))
            assert bool(adj[reps[i]] >> reps[j] & 1) == bool(link)
    return Graph.from_edges(len(parts), edges)


def decompose(g: Graph, mask: int | None = None) -> DecompositionNode:
    if mask is None:
        mask = g.vertices_mask()
    if mask == 0:
        raise ValueError("cannot decompose an empty graph")
    return _decompose(g.adj, mask)


def _decompose(adj: list[int], mask: int) -> DecompositionNode:
    if mask & (mask - 1) == 0:
        return DecompositionNode(NodeKind.LEAF, mask)
    parts = components(adj, mask)
    if len(parts) > 1:
        kind = NodeKind.PARALLEL
    else:
        co_adj = [0] * len(adj)
        for v in bits(mask):
            co_adj[v] = mask & ~adj[v] & ~(1 << v)
        parts = components(co_adj, mask)
        if len(parts) > 1:
            kind = NodeKind.SERIES
        else:
            kind = NodeKind.PRIME
            parts = _maximal_modules(adj, mask)
    parts.sort(key=lambda p: p & -p)
    node = DecompositionNode(kind, mask, [_decompose(adj, p) for p in parts])
    node.quotient = _quotient(adj, parts)
    return node


# -- orientation completion ----------------------------------------------------


def _orient_prime_quotient(q: Graph, seed: tuple[int, int]) -> set[tuple[int, int]]:
    """Orient the single implication class of a prime quotient from one arc."""
    arcs = {seed}
    stack = [seed]
    while stack:
        a, b = stack.pop()
        # into b: neighbours c of b not adjacent to a give c -> b;
        # out of a: neighbours c of a not adjacent to b give a -> c
        implied = [(c, b) for c in bits(q.adj[b] & ~q.adj[a] & ~(1 << a))]
        implied += [(a, c) for c in bits(q.adj[a] & ~q.adj[b] & ~(1 << b))]
        for x, y in implied:
            if (y, x) in arcs:
                raise NotExtendible(f"prime quotient forces both orientations of {{{x},{y}}}")
            if (x, y) not in arcs:
                arcs.add((x, y))
                stack.append((x, y))
    if 2 * len(arcs) != sum(bin(m).count("1") for m in q.adj):
        raise NotExtendible("prime quotient edges do not form a single implication class")
    return arcs


def _induced_arcs(node: DecompositionNode, succ: list[int]) -> set[tuple[int, int]]:
    """Quotient arcs (i, j) for which the partial orientation has some arc A_i -> A_j."""
    out = set()
    parts = [c.mask for c in node.children]
    for i, a in enumerate(parts):
        reach = 0
        for v in bits(a):
            reach |= succ[v]
        if not reach:
            continue
        for j, b in enumerate(parts):
            if i != j and reach & b:
                out.add((i, j))
    return out


def _orient_node(node: DecompositionNode, succ: list[int]) -> set[tuple[int, int]]:
    q = node.quotient
    induced = _induced_arcs(node, succ)
    for i, j in induced:
        if (j, i) in induced:
            raise NotExtendible(f"partial orientation points both ways between modules {i} and {j}")
    if node.kind == NodeKind.PARALLEL:
        return set()
    if node.kind == NodeKind.SERIES:
        k = len(node.children)
        indeg = [0] * k
        out: list[list[int]] = [[] for _ in range(k)]
        for i, j in induced:
            out[i].append(j)
            indeg[j] += 1
        key = [c.mask & -c.mask for c in node.children]
        heap = [(key[i], i) for i in range(k) if indeg[i] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            _, i = heapq.heappop(heap)
            order.append(i)
            for j in out[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(heap, (key[j], j))
        if len(order) != k:
            raise NotExtendible("cyclic partial orientation on a series node")
        rank = {c: r for r, c in enumerate(order)}
        return {(i, j) if rank[i] < rank[j] else (j, i) for i, j in q.edges()}
    # prime node
    seed = min(induced) if induced else q.edges()[0]
    arcs = _orient_prime_quotient(q, seed)
    if not induced <= arcs:
        raise NotExtendible("partial orientation disagrees on a prime node")
    return arcs


def extend_orientation(g: Graph, partial: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Complete a conflict-free, implication-closed partial orientation of ``g``.

    Each decomposition graph is oriented on its own (series nodes by a
    topological order of the children, prime nodes by their single
    implication class) and the result is pulled back to the vertices.
    Raises NotExtendible if that fails or the result is not transitive.
    """
    partial = list(partial)
    succ = [0] * g.n
    for a, b in partial:
        if not g.has_edge(a, b):
            raise NotExtendible(f"arc ({a},{b}) is not an edge of the graph")
        succ[a] |= 1 << b
    if g.n == 0:
        return []
    tree = decompose(g)
    arcs: list[tuple[int, int]] = []
    for node in tree.walk():
        if node.kind == NodeKind.LEAF:
            continue
        parts = [c.mask for c in node.children]
        for i, j in _orient_node(node, succ):
            for a in bits(parts[i]):
                for b in bits(g.adj[a] & parts[j]):
                    arcs.append((a, b))
    arcs.sort()
    if not is_transitive_orientation(g.n, g.adj, arcs):
        raise NotExtendible("completed orientation is not transitive")
    have = set(arcs)
    missing = [a for a in partial if a not in have]
    if missing:
        raise NotExtendible(f"completed orientation drops arcs {missing[:3]}")
    return arcs


def orient_store_dimension(store, dim: int) -> list[tuple[int, int]]:
    """Completion for one fully decided dimension of an EdgeStore (arcs added to the store)."""
    g = Graph(store.n, list(store.cmpb[dim]))
    arcs = extend_orientation(g, store.arcs(dim))
    for a, b in arcs:
        store.orient(dim, a, b)
    return arcs
