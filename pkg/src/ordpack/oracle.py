"""Brute-force references for small inputs.

These do not share code with the solver: placements are enumerated on the
integer grid, orientations edge by edge.
"""

from __future__ import annotations

import math
from itertools import product
from typing import Iterable

from .graph import Graph, is_transitive_orientation
from .model import Instance
from .realize import Placement, verify_placement

POSITION_GUARD = 10**6
MAX_ORIENTATION_VERTICES = 8


class OracleGuardError(ValueError):
    """The input is too large for exhaustive enumeration."""


def oracle_opp(instance: Instance, guard: int = POSITION_GUARD) -> Placement | None:
    """A valid placement found by exhaustive grid search, or None if there is none."""
    cells = math.prod(instance.container.sizes)
    if cells > guard:
        raise OracleGuardError(f"container has {cells} grid positions (limit {guard})")
    n, d = instance.n, instance.d
    sizes = instance.container.sizes
    wid = [it.widths for it in instance.items]
    if any(wid[v][i] > sizes[i] for v in range(n) for i in range(d)):
        return None
    cons = list(instance.constraints)
    order = sorted(range(n), key=lambda v: (-math.prod(wid[v]), v))
    coords: list[tuple[int, ...] | None] = [None] * n

    def fits(v: int, pos: tuple[int, ...]) -> bool:
        for u in range(n):
            cu = coords[u]
            if cu is None:
                continue
            if all(pos[i] < cu[i] + wid[u][i] and cu[i] < pos[i] + wid[v][i] for i in range(d)):
                return False
        for c in cons:
            if c.before == v and coords[c.after] is not None:
                if pos[c.dim] + wid[v][c.dim] > coords[c.after][c.dim]:
                    return False
            elif c.after == v and coords[c.before] is not None:
                if coords[c.before][c.dim] + wid[c.before][c.dim] > pos[c.dim]:
                    return False
        return True

    def place(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        ranges = [range(sizes[i] - wid[v][i] + 1) for i in range(d)]
        for pos in product(*ranges):
            if fits(v, pos):
                coords[v] = pos
                if place(k + 1):
                    return True
                coords[v] = None
        return False

    if not place(0):
        return None
    placement = Placement.of(coords)
    assert not verify_placement(instance, placement)
    return placement


def oracle_min_size(instance: Instance, dim: int, lo: int = 1, hi: int | None = None,
                    guard: int = POSITION_GUARD) -> tuple[int, Placement] | None:
    """Smallest container size in ``dim`` admitting a placement (scanning upward)."""
    if hi is None:
        hi = sum(it.widths[dim] for it in instance.items) or 1
    for s in range(max(lo, 1), hi + 1):
        pl = oracle_opp(instance.with_size(dim, s), guard)
        if pl is not None:
            return s, pl
    return None


def oracle_orientations(g: Graph, seeds: Iterable[tuple[int, int]] = ()) -> list[frozenset]:
    """Every transitive orientation of ``g`` that contains all arcs of ``seeds``.

    Edges are oriented one at a time; a branch is cut as soon as two oriented
    arcs form a directed path whose endpoints are non-adjacent or oppositely
    oriented (no completion can then be transitive).
    """
    if g.n > MAX_ORIENTATION_VERTICES:
        raise OracleGuardError(f"{g.n} vertices (limit {MAX_ORIENTATION_VERTICES})")
    seeds = set(seeds)
    edges = g.edges()
    out_arcs: dict[int, set[int]] = {v: set() for v in range(g.n)}
    in_arcs: dict[int, set[int]] = {v: set() for v in range(g.n)}
    chosen: list[tuple[int, int]] = []
    found: list[frozenset] = []

    def broken(a: int, b: int) -> bool:
        for c in out_arcs[b]:
            if c == a or not g.has_edge(a, c) or a in out_arcs[c]:
                return True
        for c in in_arcs[a]:
            if c == b or not g.has_edge(c, b) or c in out_arcs[b]:
                return True
        return False

    def rec(k: int) -> None:
        if k == len(edges):
            arcs = frozenset(chosen)
            if is_transitive_orientation(g.n, g.adj, sorted(arcs)) and seeds <= arcs:
                found.append(arcs)
            return
        u, v = edges[k]
        for a, b in ((u, v), (v, u)):
            if broken(a, b):
                continue
            out_arcs[a].add(b)
            in_arcs[b].add(a)
            chosen.append((a, b))
            rec(k + 1)
            chosen.pop()
            out_arcs[a].discard(b)
            in_arcs[b].discard(a)

    rec(0)
    return found


def oracle_is_transitive(n: int, arcs: Iterable[tuple[int, int]]) -> bool:
    """Definitional check: irreflexive, antisymmetric and transitive relation."""
    rel = set(arcs)
    if any(a == b or (b, a) in rel for a, b in rel):
        return False
    return all((a, c) in rel for a, b in rel for b2, c in rel if b == b2)


def oracle_is_interval_graph(n: int, edges: Iterable[tuple[int, int]], max_n: int = 6) -> bool:
    """Definitional check by trying all endpoint orders (tiny graphs only).

    A graph is an interval graph iff its vertices admit intervals with
    integer endpoints in ``[0, 2n)`` realizing exactly its edges.
    """
    if n > max_n:
        raise OracleGuardError(f"{n} vertices (limit {max_n})")
    want = {(min(a, b), max(a, b)) for a, b in edges}
    spans = [(l, r) for l in range(2 * n) for r in range(l, 2 * n)]
    chosen: list[tuple[int, int]] = []

    def rec(v: int) -> bool:
        if v == n:
            return True
        for l, r in spans:
            ok = True
            for u, (lu, ru) in enumerate(chosen):
                meet = not (ru < l or r < lu)
                if meet != ((u, v) in want):
                    ok = False
                    break
            if ok:
                chosen.append((l, r))
                if rec(v + 1):
                    return True
                chosen.pop()
        return False

    return rec(0)
