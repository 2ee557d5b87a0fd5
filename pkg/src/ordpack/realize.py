"""Packing class <-> coordinates.

``realize`` turns a fully oriented packing class into the leftmost placement
(longest paths in every interval order); ``project_placement`` goes back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .edgestate import COMPONENT, EdgeStore, bits
from .model import Instance


class RealizationError(Exception):
    pass


@dataclass(frozen=True)
class Placement:
    coords: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, coords: Sequence[Sequence[int]]) -> Placement:
        return cls(tuple(tuple(int(c) for c in row) for row in coords))

    def extent(self, instance: Instance, dim: int) -> int:
        return max((self.coords[v][dim] + instance.width(v, dim) for v in range(instance.n)), default=0)

    def records(self) -> list[str]:
        return [f"{v} " + " ".join(map(str, row)) for v, row in enumerate(self.coords)]


def realize(store: EdgeStore, instance: Instance) -> Placement:
    """Longest-path placement of a decided store whose comparability edges are all oriented."""
    n, d = instance.n, instance.d
    if store.n != n or store.d != d:
        raise ValueError("store does not match the instance")
    coords = [[0] * d for _ in range(n)]
    for i in range(d):
        succ, pred = store.succ[i], store.pred[i]
        w = [it.widths[i] for it in instance.items]
        indeg = [bin(pred[v]).count("1") for v in range(n)]
        ready = [v for v in range(n) if indeg[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            end = coords[v][i] + w[v]
            for s in bits(succ[v]):
                if coords[s][i] < end:
                    coords[s][i] = end
                indeg[s] -= 1
                if indeg[s] == 0:
                    ready.append(s)
        if seen != n:
            raise RealizationError(f"orientation of dimension {i} is cyclic")
        h = instance.container.sizes[i]
        for v in range(n):
            if coords[v][i] + w[v] > h:
                raise RealizationError(
                    f"ViolatedC2: item {v} ends at {coords[v][i] + w[v]} > {h} in dimension {i}")
    return Placement.of(coords)


def project_placement(instance: Instance, placement: Placement) -> EdgeStore:
    """Component graphs (and interval orders) of a valid placement."""
    problems = verify_placement(instance, placement)
    if problems:
        raise RealizationError("invalid placement: " + "; ".join(problems))
    n, d = instance.n, instance.d
    store = EdgeStore(n, d)
    for i in range(d):
        for u in range(n):
            pu, wu = placement.coords[u][i], instance.width(u, i)
            for v in range(u + 1, n):
                pv, wv = placement.coords[v][i], instance.width(v, i)
                if pu + wu <= pv:
                    store.orient(i, u, v)
                elif pv + wv <= pu:
                    store.orient(i, v, u)
                else:
                    store.assign(i, u, v, COMPONENT)
    store.trail.clear()
    return store


def verify_placement(instance: Instance, placement: Placement) -> list[str]:
    """All violated placement conditions (containment, disjointness, precedence)."""
    out: list[str] = []
    n, d = instance.n, instance.d
    coords = placement.coords
    if len(coords) != n:
        return [f"placement has {len(coords)} items, instance has {n}"]
    sizes = instance.container.sizes
    for v in range(n):
        if len(coords[v]) != d:
            out.append(f"item {v} has {len(coords[v])} coordinates, expected {d}")
            continue
        for i in range(d):
            c, w = coords[v][i], instance.width(v, i)
            if c < 0 or c + w > sizes[i]:
                out.append(f"item {v} leaves the container in dimension {i}: [{c},{c + w}) vs {sizes[i]}")
    if out:
        return out
    for u in range(n):
        for v in range(u + 1, n):
            if all(coords[u][i] < coords[v][i] + instance.width(v, i)
                   and coords[v][i] < coords[u][i] + instance.width(u, i) for i in range(d)):
                out.append(f"items {u} and {v} overlap")
    for c in instance.constraints:
        if coords[c.before][c.dim] + instance.width(c.before, c.dim) > coords[c.after][c.dim]:
            out.append(f"precedence {c.before}->{c.after} in dimension {c.dim} violated")
    return out


def packing_class_matches(store: EdgeStore, other: EdgeStore) -> bool:
    """Same component edge sets in every dimension."""
    return store.d == other.d and all(
        store.comp[i] == other.comp[i] for i in range(store.d))

