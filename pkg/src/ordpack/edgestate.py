"""Per-dimension tri-state edge assignments with orientations and an undo trail.

Every vertex pair of every dimension is either unassigned, a component edge
(the boxes overlap in that dimension) or a comparability edge (the boxes are
disjoint there).  Comparability edges may additionally carry an orientation
``a -> b`` meaning box ``a`` lies entirely before box ``b``.

Adjacency is kept as Python-int bitsets so the propagation rules can work on
whole neighbourhoods at once; ``state`` mirrors the same information per pair.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Iterator


class EdgeState(IntEnum):
    UNASSIGNED = 0
    COMPONENT = 1
    COMPARABILITY = 2


class Orientation(IntEnum):
    UNORIENTED = 0
    FORWARD = 1  # u -> v for the canonical pair u < v
    BACKWARD = 2  # v -> u


UNASSIGNED = EdgeState.UNASSIGNED
COMPONENT = EdgeState.COMPONENT
COMPARABILITY = EdgeState.COMPARABILITY

_STATE_NAMES = {0: "unassigned", 1: "component", 2: "comparability"}


class Conflict(Exception):
    """An assignment contradicts the current state of a slot."""

    def __init__(self, dim: int, u: int, v: int, wanted: str, found: str):
        self.dim, self.u, self.v = dim, u, v
        self.wanted, self.found = wanted, found
        super().__init__(f"dim {dim} pair ({u},{v}): cannot set {wanted}, is {found}")


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class EdgeStore:
    """Mutable search state over ``d`` dimensions and ``n`` vertices.

    Trail entries are ``(dim, u, v, previous)`` with ``u < v``.  ``previous`` is
    UNASSIGNED for a state assignment and COMPARABILITY for an orientation.
    """

    def __init__(self, n: int, d: int):
        self.n = n
        self.d = d
        full = (1 << n) - 1
        self.state = [[0] * (n * n) for _ in range(d)]
        self.comp = [[0] * n for _ in range(d)]
        self.cmpb = [[0] * n for _ in range(d)]
        self.unas = [[full & ~(1 << v) for v in range(n)] for _ in range(d)]
        self.succ = [[0] * n for _ in range(d)]
        self.pred = [[0] * n for _ in range(d)]
        self.trail: list[tuple[int, int, int, int]] = []
        self.marks: list[int] = []
        self.n_unassigned = d * n * (n - 1) // 2
        self.n_arcs = [0] * d

    # -- queries -----------------------------------------------------------

    def get(self, dim: int, u: int, v: int) -> EdgeState:
        return EdgeState(self.state[dim][u * self.n + v])

    def orientation(self, dim: int, u: int, v: int) -> Orientation:
        """Orientation of the canonical pair (min, max)."""
        if u > v:
            u, v = v, u
        if self.succ[dim][u] >> v & 1:
            return Orientation.FORWARD
        if self.succ[dim][v] >> u & 1:
            return Orientation.BACKWARD
        return Orientation.UNORIENTED

    def has_arc(self, dim: int, a: int, b: int) -> bool:
        return bool(self.succ[dim][a] >> b & 1)

    def arcs(self, dim: int) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in bits(self.succ[dim][a])]

    def edges(self, dim: int, state: int) -> list[tuple[int, int]]:
        rows = self.comp[dim] if state == COMPONENT else self.cmpb[dim] if state == COMPARABILITY else self.unas[dim]
        return [(u, v) for u in range(self.n) for v in bits(rows[u] >> (u + 1) << (u + 1))]

    def is_decided(self) -> bool:
        return self.n_unassigned == 0

    def is_fully_oriented(self) -> bool:
        for i in range(self.d):
            if 2 * self.n_arcs[i] != sum(bin(m).count("1") for m in self.cmpb[i]):
                return False
        return True

    # -- mutation ----------------------------------------------------------

    def assign(self, dim: int, u: int, v: int, state: int) -> bool:
        """Fix pair ``{u, v}`` in ``dim`` to ``state``; True if it changed."""
        n = self.n
        row = self.state[dim]
        cur = row[u * n + v]
        if cur == state:
            return False
        if cur:
            if u > v:
                u, v = v, u
            raise Conflict(dim, u, v, _STATE_NAMES[state], _STATE_NAMES[cur])
        row[u * n + v] = row[v * n + u] = state
        bu, bv = 1 << u, 1 << v
        un = self.unas[dim]
        un[u] ^= bv
        un[v] ^= bu
        adj = self.comp[dim] if state == COMPONENT else self.cmpb[dim]
        adj[u] |= bv
        adj[v] |= bu
        self.n_unassigned -= 1
        self.trail.append((dim, u, v, 0) if u < v else (dim, v, u, 0))
        return True

    def orient(self, dim: int, a: int, b: int) -> bool:
        """Orient ``a -> b``, fixing the pair as comparability if needed."""
        succ = self.succ[dim]
        if succ[a] >> b & 1:
            return False
        if succ[b] >> a & 1:
            raise Conflict(dim, min(a, b), max(a, b), f"arc {a}->{b}", f"arc {b}->{a}")
        cur = self.state[dim][a * self.n + b]
        if cur == COMPONENT:
            raise Conflict(dim, min(a, b), max(a, b), f"arc {a}->{b}", "component")
        if cur == UNASSIGNED:
            self.assign(dim, a, b, COMPARABILITY)
        succ[a] |= 1 << b
        self.pred[dim][b] |= 1 << a
        self.n_arcs[dim] += 1
        self.trail.append((dim, a, b, 2) if a < b else (dim, b, a, 2))
        return True

    # -- backtracking ------------------------------------------------------

    def mark(self) -> int:
        m = len(self.trail)
        self.marks.append(m)
        return m

    def rollback_to(self, mark: int) -> None:
        trail = self.trail
        if not 0 <= mark <= len(trail):
            raise ValueError(f"invalid trail mark {mark} (trail length {len(trail)})")
        n = self.n
        while len(trail) > mark:
            dim, u, v, prev = trail.pop()
            bu, bv = 1 << u, 1 << v
            if prev == 0:
                row = self.state[dim]
                adj = self.comp[dim] if row[u * n + v] == COMPONENT else self.cmpb[dim]
                row[u * n + v] = row[v * n + u] = 0
                adj[u] ^= bv
                adj[v] ^= bu
                un = self.unas[dim]
                un[u] |= bv
                un[v] |= bu
                self.n_unassigned += 1
            else:
                succ, pred = self.succ[dim], self.pred[dim]
                if succ[u] & bv:
                    succ[u] ^= bv
                    pred[v] ^= bu
                else:
                    succ[v] ^= bu
                    pred[u] ^= bv
                self.n_arcs[dim] -= 1
        while self.marks and self.marks[-1] > mark:
            self.marks.pop()

    def pop_mark(self) -> None:
        """Undo everything since the most recent mark and discard that mark."""
        self.rollback_to(self.marks.pop())

    # -- snapshots ---------------------------------------------------------

    def snapshot(self) -> tuple:
        """Hashable image of all slots (trail excluded)."""
        return (
            tuple(tuple(r) for r in self.state),
            tuple(tuple(r) for r in self.succ),
        )

    def copy(self) -> EdgeStore:
        other = EdgeStore.__new__(EdgeStore)
        other.n, other.d = self.n, self.d
        other.state = [list(r) for r in self.state]
        other.comp = [list(r) for r in self.comp]
        other.cmpb = [list(r) for r in self.cmpb]
        other.unas = [list(r) for r in self.unas]
        other.succ = [list(r) for r in self.succ]
        other.pred = [list(r) for r in self.pred]
        other.trail = list(self.trail)
        other.marks = list(self.marks)
        other.n_unassigned = self.n_unassigned
        other.n_arcs = list(self.n_arcs)
        return other

    def dump(self) -> str:
        """One line per slot, ``dim u v state``, sorted by (dim, u, v)."""
        lines = []
        for i in range(self.d):
            for u in range(self.n):
                for v in range(u + 1, self.n):
                    s = self.state[i][u * self.n + v]
                    text = _STATE_NAMES[s]
                    if s == COMPARABILITY:
                        o = self.orientation(i, u, v)
                        if o == Orientation.FORWARD:
                            text += " ->"
                        elif o == Orientation.BACKWARD:
                            text += " <-"
                    lines.append(f"{i} {u} {v} {text}")
        return "\n".join(lines) + ("\n" if lines else "")


def store_from_graphs(n: int, component_edges: list[set[tuple[int, int]]]) -> EdgeStore:
    """Fully decided store: listed pairs are component edges, all others comparability."""
    store = EdgeStore(n, len(component_edges))
    for i, edges in enumerate(component_edges):
        canon = {(min(a, b), max(a, b)) for a, b in edges}
        for u in range(n):
            for v in range(u + 1, n):
                store.assign(i, u, v, COMPONENT if (u, v) in canon else COMPARABILITY)
    store.trail.clear()
    return store
