"""Packing-class conditions as propagation rules and as a full verifier.

The rules operate on an :class:`~ordpack.edgestate.EdgeStore` through a *sink*
(normally the propagation engine) exposing ``fix(dim, u, v, state, kind)``.
A rule either forces further slots through the sink or raises
:class:`Violation` naming the forbidden substructure it found.
"""

from __future__ import annotations

from enum import Enum
from itertools import combinations
from typing import Sequence

from .edgestate import COMPARABILITY, COMPONENT, EdgeStore, bits


class ViolationKind(str, Enum):
    C4_CYCLE = "C4Cycle"
    ODD_CYCLE = "OddCycle"
    OVERWEIGHT_STABLE_SET = "OverweightStableSet"
    EMPTY_INTERSECTION = "EmptyIntersection"


class Contradiction(Exception):
    """Base class for everything that closes a search node."""

    kind: object
    witness: tuple
    dim: int | None


class Violation(Contradiction):
    def __init__(self, kind: ViolationKind, witness: Sequence[int], dim: int | None = None):
        self.kind = kind
        self.witness = tuple(witness)
        self.dim = dim
        where = "" if dim is None else f" in dim {dim}"
        super().__init__(f"{kind.value}{where}: {self.witness}")

    def log_record(self) -> str:
        return f"violation kind={self.kind.value} dim={self.dim} witness={','.join(map(str, self.witness))}"


class WeightTable:
    """Fast weight sums over vertex bitsets (byte-wise lookup tables)."""

    __slots__ = ("w", "tables")

    def __init__(self, weights: Sequence[int]):
        self.w = list(weights)
        self.tables = []
        for base in range(0, max(len(self.w), 1), 8):
            chunk = self.w[base:base + 8]
            table = [0] * 256
            for m in range(1, 256):
                low = (m & -m).bit_length() - 1
                table[m] = table[m & (m - 1)] + (chunk[low] if low < len(chunk) else 0)
            self.tables.append(table)

    def sum(self, mask: int) -> int:
        total = 0
        for table in self.tables:
            if not mask:
                break
            total += table[mask & 255]
            mask >>= 8
        return total


def heavy_clique(adj: Sequence[int], wt: WeightTable, cand: int, need: int) -> list[int] | None:
    """A clique inside ``cand`` (w.r.t. ``adj``) of weight > ``need``, or None."""
    if need < 0:
        return []
    if wt.sum(cand) <= need:
        return None
    w = wt.w
    # branch on the heaviest candidate first
    best, bw = -1, -1
    m = cand
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        if w[v] > bw:
            best, bw = v, w[v]
    sub = heavy_clique(adj, wt, cand & adj[best], need - bw)
    if sub is not None:
        sub.append(best)
        return sub
    return heavy_clique(adj, wt, cand & ~(1 << best), need)


def max_weight_clique(adj: Sequence[int], weights: Sequence[int], cand: int) -> tuple[int, list[int]]:
    """Exact maximum-weight clique inside ``cand`` by simple branch and bound."""
    wt = WeightTable(weights)
    best: list = [0, []]

    def rec(c: int, cur: int, chosen: list[int]) -> None:
        if cur > best[0]:
            best[0], best[1] = cur, list(chosen)
        if not c or cur + wt.sum(c) <= best[0]:
            return
        v = (c & -c).bit_length() - 1
        chosen.append(v)
        rec(c & adj[v], cur + weights[v], chosen)
        chosen.pop()
        rec(c & ~(1 << v), cur, chosen)

    rec(cand, 0, [])
    return best[0], sorted(best[1])


# -- incremental rules -------------------------------------------------------
#
# Signature of every rule: rule(sink, dim, u, v).  ``sink.store`` is the edge
# store, ``sink.wt[dim]`` a WeightTable, ``sink.caps[dim]`` the container size.


def c3_rule(sink, dim: int, u: int, v: int) -> None:
    """Pair {u,v} just became a component edge in ``dim``."""
    store: EdgeStore = sink.store
    idx = u * store.n + v
    free = -1
    for i in range(store.d):
        s = store.state[i][idx]
        if s == COMPARABILITY:
            return
        if s != COMPONENT:
            if free >= 0:
                return
            free = i
    if free < 0:
        raise Violation(ViolationKind.EMPTY_INTERSECTION, (min(u, v), max(u, v)))
    sink.fix(free, u, v, COMPARABILITY, ViolationKind.EMPTY_INTERSECTION)


def c4_component_rule(sink, dim: int, u: int, v: int) -> None:
    """{u,v} became a component edge: look at 4-cycles u-v-x-y-u using it."""
    store = sink.store
    C, K, U = store.comp[dim], store.cmpb[dim], store.unas[dim]
    fix = sink.fix
    kind = ViolationKind.C4_CYCLE
    ex = ~((1 << u) | (1 << v))
    cu, ku, uu = C[u], K[u], U[u]
    cv, kv, uv = C[v], K[v], U[v]
    xs = (cv | uv) & (ku | uu) & ex
    while xs:
        low = xs & -xs
        x = low.bit_length() - 1
        xs ^= low
        vx_open = uv & low
        ux_open = uu & low
        if vx_open and ux_open:
            continue
        cx, ux = C[x], U[x]
        exx = ex & ~low
        if vx_open or ux_open:
            if cu & cx & kv & exx:
                # the cycle is complete except for slot {v,x} or {u,x}
                if vx_open:
                    fix(dim, v, x, COMPARABILITY, kind)
                else:
                    fix(dim, u, x, COMPONENT, kind)
            continue
        full = cu & cx & kv & exx
        if full:
            y = (full & -full).bit_length() - 1
            raise Violation(kind, (u, v, x, y), dim)
        ys = ((uu & cx & kv) | (cu & ux & kv) | (cu & cx & uv)) & exx
        while ys:
            lowy = ys & -ys
            y = lowy.bit_length() - 1
            ys ^= lowy
            if uu & lowy:
                fix(dim, u, y, COMPARABILITY, kind)
            elif ux & lowy:
                fix(dim, x, y, COMPARABILITY, kind)
            else:
                fix(dim, v, y, COMPONENT, kind)


def c4_comparability_rule(sink, dim: int, u: int, v: int) -> None:
    """{u,v} became a comparability edge: look at 4-cycles u-x-v-y-u with it as diagonal."""
    store = sink.store
    C, K, U = store.comp[dim], store.cmpb[dim], store.unas[dim]
    fix = sink.fix
    kind = ViolationKind.C4_CYCLE
    ex = ~((1 << u) | (1 << v))
    cu, uu = C[u], U[u]
    cv, uv = C[v], U[v]
    xs = (cu | uu) & (cv | uv) & ex
    while xs:
        low = xs & -xs
        x = low.bit_length() - 1
        xs ^= low
        ux_open = uu & low
        vx_open = uv & low
        if ux_open and vx_open:
            continue
        kx, ux = K[x], U[x]
        exx = ex & ~low
        if ux_open or vx_open:
            if cu & cv & kx & exx:
                if ux_open:
                    fix(dim, u, x, COMPARABILITY, kind)
                else:
                    fix(dim, v, x, COMPARABILITY, kind)
            continue
        full = cu & cv & kx & exx
        if full:
            y = (full & -full).bit_length() - 1
            raise Violation(kind, (u, x, v, y), dim)
        ys = ((uu & cv & kx) | (cu & uv & kx) | (cu & cv & ux)) & exx
        while ys:
            lowy = ys & -ys
            y = lowy.bit_length() - 1
            ys ^= lowy
            if uu & lowy:
                fix(dim, u, y, COMPARABILITY, kind)
            elif uv & lowy:
                fix(dim, v, y, COMPARABILITY, kind)
            else:
                fix(dim, x, y, COMPONENT, kind)


def c2_rule(sink, dim: int, u: int, v: int) -> None:
    """{u,v} became a comparability edge: no overweight comparability clique through it."""
    store = sink.store
    K, U = store.cmpb[dim], store.unas[dim]
    wt = sink.wt[dim]
    w = wt.w
    room = sink.caps[dim] - w[u] - w[v]
    kind = ViolationKind.OVERWEIGHT_STABLE_SET
    if room < 0:
        raise Violation(kind, (u, v), dim)
    common = K[u] & K[v]
    if wt.sum(common) > room:
        clique = heavy_clique(K, wt, common, room)
        if clique is not None:
            raise Violation(kind, tuple(sorted(clique + [u, v])), dim)
    # one missing edge at u or v would complete an overweight clique
    for a, b, xs in ((u, v, U[u] & K[v]), (v, u, U[v] & K[u])):
        while xs:
            low = xs & -xs
            x = low.bit_length() - 1
            xs ^= low
            need = room - w[x]
            if need < 0:
                sink.fix(dim, a, x, COMPONENT, kind)
                continue
            cand = common & K[x]
            if wt.sum(cand) > need and heavy_clique(K, wt, cand, need) is not None:
                sink.fix(dim, a, x, COMPONENT, kind)


# -- standalone checks (public API) ---------------------------------------------


class _Collector:
    """Sink that records forced slots on a scratch copy of a store."""

    def __init__(self, store: EdgeStore, weights=None, caps=None):
        self.store = store.copy()
        self.forced: list[tuple[int, int, int, int]] = []
        self.caps = list(caps) if caps is not None else []
        self.wt = [WeightTable(ws) for ws in weights] if weights is not None else []

    def fix(self, dim, u, v, state, kind):
        from .edgestate import Conflict

        try:
            changed = self.store.assign(dim, u, v, state)
        except Conflict:
            raise Violation(kind, (min(u, v), max(u, v)), dim) from None
        if changed:
            self.forced.append((dim, min(u, v), max(u, v), int(state)))


def check_c3(store: EdgeStore, pair: tuple[int, int]) -> list[tuple[int, int, int, int]]:
    """Forced slots ``(dim, u, v, state)`` implied by C3 for ``pair``; raises Violation."""
    u, v = pair
    sink = _Collector(store)
    if any(store.state[i][u * store.n + v] == COMPONENT for i in range(store.d)):
        c3_rule(sink, 0, u, v)
    return sink.forced


def check_c2(store: EdgeStore, dim: int, pair: tuple[int, int], weights, caps):
    """C2 on a freshly fixed comparability pair; ``weights[i][v]`` per dimension."""
    sink = _Collector(store, weights, caps)
    c2_rule(sink, dim, *pair)
    return sink.forced


def check_c4(store: EdgeStore, dim: int, pair: tuple[int, int]):
    """Forbidden induced 4-cycle test around a freshly fixed ``pair``."""
    u, v = pair
    sink = _Collector(store)
    s = store.state[dim][u * store.n + v]
    if s == COMPONENT:
        c4_component_rule(sink, dim, u, v)
    elif s == COMPARABILITY:
        c4_comparability_rule(sink, dim, u, v)
    return sink.forced


# -- full verification ---------------------------------------------------------


def find_induced_c4(n: int, comp: Sequence[int]) -> tuple[int, int, int, int] | None:
    """Exhaustive search for an induced chordless 4-cycle in the component graph."""
    for quad in combinations(range(n), 4):
        a, b, c, e = quad
        for p, q, r, s in ((a, b, c, e), (a, b, e, c), (a, c, b, e)):
            # cycle p-q-r-s-p with chords p-r and q-s absent
            if (comp[p] >> q & 1 and comp[q] >> r & 1 and comp[r] >> s & 1 and comp[s] >> p & 1
                    and not comp[p] >> r & 1 and not comp[q] >> s & 1):
                return (p, q, r, s)
    return None


def verify_packing_class(store: EdgeStore, weights: Sequence[Sequence[int]], caps: Sequence[int]) -> None:
    """Raise the first violated condition of a fully decided store; return None if it is a packing class.

    ``weights[i][v]`` is the width of box ``v`` in dimension ``i``.
    """
    from .orient import check_orientable, top_feasible_store

    n, d = store.n, store.d
    if not store.is_decided():
        raise ValueError("store is not fully decided")
    for u in range(n):
        for v in range(u + 1, n):
            if all(store.state[i][u * n + v] == COMPONENT for i in range(d)):
                raise Violation(ViolationKind.EMPTY_INTERSECTION, (u, v))
    for i in range(d):
        quad = find_induced_c4(n, store.comp[i])
        if quad is not None:
            raise Violation(ViolationKind.C4_CYCLE, quad, i)
        bad = check_orientable(store, i)
        if bad is not None:
            raise Violation(ViolationKind.ODD_CYCLE, bad, i)
        weight, clique = max_weight_clique(store.cmpb[i], weights[i], (1 << n) - 1)
        if weight > caps[i]:
            raise Violation(ViolationKind.OVERWEIGHT_STABLE_SET, clique, i)
        if store.n_arcs[i]:
            top_feasible_store(store, i)
