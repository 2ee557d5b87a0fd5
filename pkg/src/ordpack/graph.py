"""Tiny undirected graph on vertices 0..n-1 with bitset adjacency."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .edgestate import bits


@dataclass
class Graph:
    n: int
    adj: list[int]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at {a}")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(n, adj)

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        return Graph(self.n, [full & ~m & ~(1 << v) for v, m in enumerate(self.adj)])

    def vertices_mask(self) -> int:
        return (1 << self.n) - 1


def components(adj: list[int], mask: int) -> list[int]:
    """Connected components of the subgraph induced by ``mask`` (as bitsets)."""
    out = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = adj[low.bit_length() - 1] & mask & ~comp
            comp |= new
            frontier |= new
        out.append(comp)
        rest &= ~comp
    return out


def is_transitive_orientation(n: int, adj: list[int], arcs: Iterable[tuple[int, int]]) -> bool:
    """Every edge oriented exactly once, acyclic, and closed under 2-chains."""
    succ = [0] * n
    count = 0
    for a, b in arcs:
        if not adj[a] >> b & 1 or succ[b] >> a & 1 or succ[a] >> b & 1:
            return False
        succ[a] |= 1 << b
        count += 1
    if 2 * count != sum(bin(m).count("1") for m in adj):
        return False
    for a in range(n):
        for b in bits(succ[a]):
            if succ[b] & ~succ[a]:
                return False
    # closed under 2-chains and antisymmetric implies acyclic
    return True
