"""Compiled search engine.

A port of the propagation rules (:mod:`ordpack.axioms`, :mod:`ordpack.orient`),
the propagation loop (:mod:`ordpack.propagate`) and the depth-first search of
:class:`ordpack.search.CoppSearch` to numba, working on fixed-size integer
arrays with int64 bitsets (so at most 62 items).  Events are processed in the
same order and bitsets are read at the same moments as in the reference
engine, so both visit the same nodes.  Complete assignments are handed back to
Python, which orients and realizes them.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAX_ITEMS = 62

# bitset planes of B[plane, dim, vertex]
PC, PK, PU, PS, PP = 0, 1, 2, 3, 4

EV_COMPONENT, EV_COMPARABILITY, EV_ARC = 1, 2, 3

# conflict codes (index into the conflict counter)
K_C3, K_C4, K_C2, K_P3, K_TR = 0, 1, 2, 3, 4
CONFLICT_NAMES = ("EmptyIntersection", "C4Cycle", "OverweightStableSet", "P3Conflict",
                  "TransitivityConflict")
OK = -1

# registers
R_TP, R_QH, R_QT, R_PROP, R_NODES, R_LEAVES, R_MAXD, R_DEPTH, R_POS, R_MODE, R_PAUSE, R_LIMIT, R_EVERY, R_PROBE, R_PCLASS, R_BRANCH = range(16)
N_REGS = 16

# search modes / statuses
M_ENTER, M_NEXT, M_BACK = 0, 1, 2
S_DONE, S_LEAF, S_PAUSE, S_LIMIT = 0, 1, 2, 3


@njit(cache=True)
def _ctz(low):
    r = 0
    if low >= 4294967296:
        low >>= 32
        r += 32
    if low >= 65536:
        low >>= 16
        r += 16
    if low >= 256:
        low >>= 8
        r += 8
    if low >= 16:
        low >>= 4
        r += 4
    if low >= 4:
        low >>= 2
        r += 2
    if low >= 2:
        r += 1
    return r


@njit(cache=True)
def _bit(v):
    return np.int64(1) << np.int64(v)


@njit(cache=True)
def _wsum(w, m):
    total = 0
    while m:
        low = m & -m
        total += w[_ctz(low)]
        m ^= low
    return total


@njit(cache=True)
def _heavy(K, w, cand, need, stack):
    """Is there a clique (w.r.t. rows K) inside ``cand`` of weight > ``need``?"""
    sp = 0
    stack[0, 0] = cand
    stack[0, 1] = need
    sp = 1
    while sp > 0:
        sp -= 1
        c = stack[sp, 0]
        nd = stack[sp, 1]
        if nd < 0:
            return True
        if _wsum(w, c) <= nd:
            continue
        best = -1
        bw = -1
        m = c
        while m:
            low = m & -m
            v = _ctz(low)
            m ^= low
            if w[v] > bw:
                best = v
                bw = w[v]
        stack[sp, 0] = c & ~_bit(best)
        stack[sp, 1] = nd
        stack[sp + 1, 0] = c & K[best]
        stack[sp + 1, 1] = nd - bw
        sp += 2
    return False


# -- store primitives ------------------------------------------------------------


@njit(cache=True)
def _assign(st, B, trail, reg, i, u, v, s):
    cur = st[i, u, v]
    if cur == s:
        return 0
    if cur != 0:
        return -1
    st[i, u, v] = s
    st[i, v, u] = s
    bu = _bit(u)
    bv = _bit(v)
    B[PU, i, u] ^= bv
    B[PU, i, v] ^= bu
    p = PC if s == 1 else PK
    B[p, i, u] |= bv
    B[p, i, v] |= bu
    t = reg[R_TP]
    trail[t, 0] = i
    trail[t, 1] = u
    trail[t, 2] = v
    trail[t, 3] = 0
    reg[R_TP] = t + 1
    return 1


@njit(cache=True)
def _push(q, reg, kind, i, u, v):
    t = reg[R_QT]
    q[t, 0] = kind
    q[t, 1] = i
    q[t, 2] = u
    q[t, 3] = v
    reg[R_QT] = t + 1


@njit(cache=True)
def _fix(st, B, trail, q, reg, i, u, v, s, kind):
    r = _assign(st, B, trail, reg, i, u, v, s)
    if r < 0:
        return kind
    if r > 0:
        _push(q, reg, s, i, u, v)
    return OK


@njit(cache=True)
def _fix_arc(st, B, NA, trail, q, reg, i, a, b, kind):
    if (B[PS, i, a] >> b) & 1:
        return OK
    if (B[PS, i, b] >> a) & 1:
        return kind
    cur = st[i, a, b]
    if cur == 1:
        return kind
    if cur == 0:
        _assign(st, B, trail, reg, i, a, b, 2)
    B[PS, i, a] |= _bit(b)
    B[PP, i, b] |= _bit(a)
    NA[i] += 1
    t = reg[R_TP]
    trail[t, 0] = i
    trail[t, 1] = a
    trail[t, 2] = b
    trail[t, 3] = 2
    reg[R_TP] = t + 1
    if cur == 0:
        _push(q, reg, EV_COMPARABILITY, i, a, b)
    _push(q, reg, EV_ARC, i, a, b)
    return OK


@njit(cache=True)
def _rollback(st, B, NA, trail, reg, mark):
    t = reg[R_TP]
    while t > mark:
        t -= 1
        i = trail[t, 0]
        u = trail[t, 1]
        v = trail[t, 2]
        bu = _bit(u)
        bv = _bit(v)
        if trail[t, 3] == 0:
            p = PC if st[i, u, v] == 1 else PK
            st[i, u, v] = 0
            st[i, v, u] = 0
            B[p, i, u] ^= bv
            B[p, i, v] ^= bu
            B[PU, i, u] |= bv
            B[PU, i, v] |= bu
        else:
            B[PS, i, u] ^= bv
            B[PP, i, v] ^= bu
            NA[i] -= 1
    reg[R_TP] = t


# -- rules ------------------------------------------------------------------------


@njit(cache=True)
def _c3(st, B, trail, q, reg, u, v):
    d = st.shape[0]
    free = -1
    for j in range(d):
        s = st[j, u, v]
        if s == 2:
            return OK
        if s != 1:
            if free >= 0:
                return OK
            free = j
    if free < 0:
        return K_C3
    return _fix(st, B, trail, q, reg, free, u, v, 2, K_C3)


@njit(cache=True)
def _c4_component(st, B, trail, q, reg, i, u, v):
    C = B[PC, i]
    K = B[PK, i]
    U = B[PU, i]
    ex = ~(_bit(u) | _bit(v))
    cu = C[u]
    ku = K[u]
    uu = U[u]
    cv = C[v]
    kv = K[v]
    uv = U[v]
    xs = (cv | uv) & (ku | uu) & ex
    while xs:
        low = xs & -xs
        x = _ctz(low)
        xs ^= low
        vx_open = uv & low
        ux_open = uu & low
        if vx_open and ux_open:
            continue
        cx = C[x]
        ux = U[x]
        exx = ex & ~low
        if vx_open or ux_open:
            if cu & cx & kv & exx:
                if vx_open:
                    r = _fix(st, B, trail, q, reg, i, v, x, 2, K_C4)
                else:
                    r = _fix(st, B, trail, q, reg, i, u, x, 1, K_C4)
                if r >= 0:
                    return r
            continue
        if cu & cx & kv & exx:
            return K_C4
        ys = ((uu & cx & kv) | (cu & ux & kv) | (cu & cx & uv)) & exx
        while ys:
            lowy = ys & -ys
            y = _ctz(lowy)
            ys ^= lowy
            if uu & lowy:
                r = _fix(st, B, trail, q, reg, i, u, y, 2, K_C4)
            elif ux & lowy:
                r = _fix(st, B, trail, q, reg, i, x, y, 2, K_C4)
            else:
                r = _fix(st, B, trail, q, reg, i, v, y, 1, K_C4)
            if r >= 0:
                return r
    return OK


@njit(cache=True)
def _c4_comparability(st, B, trail, q, reg, i, u, v):
    C = B[PC, i]
    K = B[PK, i]
    U = B[PU, i]
    ex = ~(_bit(u) | _bit(v))
    cu = C[u]
    uu = U[u]
    cv = C[v]
    uv = U[v]
    xs = (cu | uu) & (cv | uv) & ex
    while xs:
        low = xs & -xs
        x = _ctz(low)
        xs ^= low
        ux_open = uu & low
        vx_open = uv & low
        if ux_open and vx_open:
            continue
        kx = K[x]
        ux = U[x]
        exx = ex & ~low
        if ux_open or vx_open:
            if cu & cv & kx & exx:
                if ux_open:
                    r = _fix(st, B, trail, q, reg, i, u, x, 2, K_C4)
                else:
                    r = _fix(st, B, trail, q, reg, i, v, x, 2, K_C4)
                if r >= 0:
                    return r
            continue
        if cu & cv & kx & exx:
            return K_C4
        ys = ((uu & cv & kx) | (cu & uv & kx) | (cu & cv & ux)) & exx
        while ys:
            lowy = ys & -ys
            y = _ctz(lowy)
            ys ^= lowy
            if uu & lowy:
                r = _fix(st, B, trail, q, reg, i, u, y, 2, K_C4)
            elif uv & lowy:
                r = _fix(st, B, trail, q, reg, i, v, y, 2, K_C4)
            else:
                r = _fix(st, B, trail, q, reg, i, x, y, 1, K_C4)
            if r >= 0:
                return r
    return OK


@njit(cache=True)
def _c2(st, B, W, H, trail, q, reg, stack, i, u, v):
    K = B[PK, i]
    U = B[PU, i]
    w = W[i]
    room = H[i] - w[u] - w[v]
    if room < 0:
        return K_C2
    common = K[u] & K[v]
    if _wsum(w, common) > room:
        if _heavy(K, w, common, room, stack):
            return K_C2
    xs_u = U[u] & K[v]
    xs_v = U[v] & K[u]
    for side in range(2):
        if side == 0:
            a = u
            xs = xs_u
        else:
            a = v
            xs = xs_v
        while xs:
            low = xs & -xs
            x = _ctz(low)
            xs ^= low
            need = room - w[x]
            if need < 0:
                r = _fix(st, B, trail, q, reg, i, a, x, 1, K_C2)
                if r >= 0:
                    return r
                continue
            cand = common & K[x]
            if _wsum(w, cand) > need and _heavy(K, w, cand, need, stack):
                r = _fix(st, B, trail, q, reg, i, a, x, 1, K_C2)
                if r >= 0:
                    return r
    return OK


@njit(cache=True)
def _p3_arc(st, B, NA, trail, q, reg, i, a, b):
    K = B[PK, i]
    C = B[PC, i]
    zs = K[b] & C[a]
    while zs:
        low = zs & -zs
        zs ^= low
        r = _fix_arc(st, B, NA, trail, q, reg, i, _ctz(low), b, K_P3)
        if r >= 0:
            return r
    zs = K[a] & C[b]
    while zs:
        low = zs & -zs
        zs ^= low
        r = _fix_arc(st, B, NA, trail, q, reg, i, a, _ctz(low), K_P3)
        if r >= 0:
            return r
    return OK


@njit(cache=True)
def _p3_component(st, B, NA, trail, q, reg, i, u, v):
    K = B[PK, i]
    common = K[u] & K[v]
    if not common:
        return OK
    S = B[PS, i]
    P = B[PP, i]
    for step in range(4):
        if step == 0:
            cs = common & S[u]
        elif step == 1:
            cs = common & P[u]
        elif step == 2:
            cs = common & S[v]
        else:
            cs = common & P[v]
        while cs:
            low = cs & -cs
            cs ^= low
            c = _ctz(low)
            if step == 0:
                r = _fix_arc(st, B, NA, trail, q, reg, i, v, c, K_P3)
            elif step == 1:
                r = _fix_arc(st, B, NA, trail, q, reg, i, c, v, K_P3)
            elif step == 2:
                r = _fix_arc(st, B, NA, trail, q, reg, i, u, c, K_P3)
            else:
                r = _fix_arc(st, B, NA, trail, q, reg, i, c, u, K_P3)
            if r >= 0:
                return r
    return OK


@njit(cache=True)
def _p3_comparability(st, B, NA, trail, q, reg, i, u, v):
    K = B[PK, i]
    C = B[PC, i]
    S = B[PS, i]
    P = B[PP, i]
    zs = K[u] & C[v]
    if zs & S[u]:
        r = _fix_arc(st, B, NA, trail, q, reg, i, u, v, K_P3)
        if r >= 0:
            return r
    if zs & P[u]:
        r = _fix_arc(st, B, NA, trail, q, reg, i, v, u, K_P3)
        if r >= 0:
            return r
    zs = K[v] & C[u]
    if zs & S[v]:
        r = _fix_arc(st, B, NA, trail, q, reg, i, v, u, K_P3)
        if r >= 0:
            return r
    if zs & P[v]:
        r = _fix_arc(st, B, NA, trail, q, reg, i, u, v, K_P3)
        if r >= 0:
            return r
    return OK


@njit(cache=True)
def _d2_arc(st, B, NA, trail, q, reg, i, a, b):
    S = B[PS, i]
    P = B[PP, i]
    zs = S[b]
    while zs:
        low = zs & -zs
        zs ^= low
        r = _fix_arc(st, B, NA, trail, q, reg, i, a, _ctz(low), K_TR)
        if r >= 0:
            return r
    zs = P[a]
    while zs:
        low = zs & -zs
        zs ^= low
        r = _fix_arc(st, B, NA, trail, q, reg, i, _ctz(low), b, K_TR)
        if r >= 0:
            return r
    return OK


@njit(cache=True)
def _d2_component(B, i, u, v):
    S = B[PS, i]
    P = B[PP, i]
    if (S[u] & P[v]) | (S[v] & P[u]):
        return K_TR
    return OK


@njit(cache=True)
def _d2_comparability(st, B, NA, trail, q, reg, i, u, v):
    S = B[PS, i]
    P = B[PP, i]
    if S[u] & P[v]:
        r = _fix_arc(st, B, NA, trail, q, reg, i, u, v, K_TR)
        if r >= 0:
            return r
    if S[v] & P[u]:
        r = _fix_arc(st, B, NA, trail, q, reg, i, v, u, K_TR)
        if r >= 0:
            return r
    return OK


@njit(cache=True)
def _run(st, B, W, H, NA, trail, q, reg, stack):
    """Process the event queue to fixpoint; returns a conflict code or OK."""
    r = OK
    while reg[R_QH] < reg[R_QT]:
        h = reg[R_QH]
        kind = q[h, 0]
        i = q[h, 1]
        u = q[h, 2]
        v = q[h, 3]
        reg[R_QH] = h + 1
        reg[R_PROP] += 1
        if kind == EV_COMPONENT:
            r = _c3(st, B, trail, q, reg, u, v)
            if r < 0:
                r = _c4_component(st, B, trail, q, reg, i, u, v)
            if r < 0 and NA[i]:
                r = _d2_component(B, i, u, v)
                if r < 0:
                    r = _p3_component(st, B, NA, trail, q, reg, i, u, v)
        elif kind == EV_COMPARABILITY:
            r = _c4_comparability(st, B, trail, q, reg, i, u, v)
            if r < 0:
                r = _c2(st, B, W, H, trail, q, reg, stack, i, u, v)
            if r < 0 and NA[i]:
                r = _d2_comparability(st, B, NA, trail, q, reg, i, u, v)
                if r < 0:
                    r = _p3_comparability(st, B, NA, trail, q, reg, i, u, v)
        else:
            r = _p3_arc(st, B, NA, trail, q, reg, i, u, v)
            if r < 0:
                r = _d2_arc(st, B, NA, trail, q, reg, i, u, v)
        if r >= 0:
            break
    reg[R_QH] = 0
    reg[R_QT] = 0
    return r


# -- implication classes -------------------------------------------------------------


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _union(parent, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra != rb:
        if ra < rb:
            parent[rb] = ra
        else:
            parent[ra] = rb


@njit(cache=True)
def _class_conflict(B, i, n, parent, nb):
    """True if some P3 implication class of dimension ``i`` contains both directions of an edge."""
    K = B[PK, i]
    C = B[PC, i]
    for x in range(n * n):
        parent[x] = x
    for c in range(n):
        m = K[c]
        k = 0
        while m:
            low = m & -m
            m ^= low
            nb[k] = _ctz(low)
            k += 1
        for s in range(k):
            a = nb[s]
            linked = C[a]
            for t in range(s + 1, k):
                b = nb[t]
                if (linked >> b) & 1:
                    _union(parent, a * n + c, b * n + c)
                    _union(parent, c * n + a, c * n + b)
    for u in range(n):
        m = (K[u] >> (u + 1)) << (u + 1)
        while m:
            low = m & -m
            m ^= low
            v = _ctz(low)
            if _find(parent, u * n + v) == _find(parent, v * n + u):
                return True
    return False


@njit(cache=True)
def _any_class_conflict(B, d, n, parent, nb):
    for i in range(d):
        if _class_conflict(B, i, n, parent, nb):
            return True
    return False


# -- root and search ---------------------------------------------------------------------


@njit(cache=True)
def seed_root(st, B, W, H, NA, trail, q, reg, stack, arcs, parent, nb):
    """Initial fixings and propagation; returns a conflict code or OK."""
    d = st.shape[0]
    n = st.shape[1]
    for i in range(d):
        for u in range(n):
            for v in range(u + 1, n):
                if W[i, u] + W[i, v] > H[i]:
                    r = _fix(st, B, trail, q, reg, i, u, v, 1, K_C2)
                    if r >= 0:
                        reg[R_QH] = 0
                        reg[R_QT] = 0
                        return r
    for k in range(arcs.shape[0]):
        i = arcs[k, 0]
        a = arcs[k, 1]
        b = arcs[k, 2]
        if W[i, a] + W[i, b] > H[i]:
            reg[R_QH] = 0
            reg[R_QT] = 0
            return K_C2
        r = _fix_arc(st, B, NA, trail, q, reg, i, a, b, K_TR)
        if r >= 0:
            reg[R_QH] = 0
            reg[R_QT] = 0
            return r
    r = _run(st, B, W, H, NA, trail, q, reg, stack)
    if r >= 0:
        return r
    if _any_class_conflict(B, d, n, parent, nb):
        return K_P3
    return OK


@njit(cache=True)
def _probe(st, B, W, H, NA, trail, q, reg, stack, slots, values, pos, passes, parent, nb):
    """Failed-literal detection on the open slots from ``pos`` on."""
    d = st.shape[0]
    n = st.shape[1]
    total = slots.shape[0]
    for _ in range(passes):
        changed = False
        for p in range(pos, total):
            i = slots[p, 0]
            u = slots[p, 1]
            v = slots[p, 2]
            if st[i, u, v] != 0:
                continue
            fail0 = False
            fail1 = False
            r = OK
            for k in range(2):
                mark = reg[R_TP]
                r = _fix(st, B, trail, q, reg, i, u, v, values[p, k], K_C3)
                if r < 0:
                    r = _run(st, B, W, H, NA, trail, q, reg, stack)
                if r < 0 and reg[R_PCLASS] and _any_class_conflict(B, d, n, parent, nb):
                    r = K_P3
                _rollback(st, B, NA, trail, reg, mark)
                if k == 0:
                    fail0 = r >= 0
                else:
                    fail1 = r >= 0
            if fail0 and fail1:
                return r
            if fail0 or fail1:
                val = values[p, 1] if fail0 else values[p, 0]
                r = _fix(st, B, trail, q, reg, i, u, v, val, K_C3)
                if r < 0:
                    r = _run(st, B, W, H, NA, trail, q, reg, stack)
                if r >= 0:
                    return r
                changed = True
        if not changed:
            break
    return OK


@njit(cache=True)
def _select(st, B, W, H, slots, pos, mode):
    """Index of the slot to branch on (first open slot for the static order)."""
    total = slots.shape[0]
    if mode == 0:
        return pos
    best = pos
    best_score = -1.0
    for p in range(pos, total):
        i = slots[p, 0]
        u = slots[p, 1]
        v = slots[p, 2]
        if st[i, u, v] != 0:
            continue
        w = W[i]
        load = w[u] + w[v] + _wsum(w, B[PK, i, u] & B[PK, i, v])
        score = load / H[i]
        if score > best_score:
            best_score = score
            best = p
    return best


@njit(cache=True)
def search(st, B, W, H, NA, trail, q, reg, stack, slots, values, frames, conf, parent, nb):
    """Resumable depth-first search; returns S_DONE, S_LEAF, S_PAUSE or S_LIMIT."""
    d = st.shape[0]
    n = st.shape[1]
    total = slots.shape[0]
    every = reg[R_EVERY]
    mode = reg[R_MODE]
    depth = reg[R_DEPTH]
    pos = reg[R_POS]
    while True:
        if mode == M_ENTER:
            if reg[R_NODES] >= reg[R_PAUSE]:
                reg[R_MODE] = M_ENTER
                reg[R_DEPTH] = depth
                reg[R_POS] = pos
                return S_PAUSE
            reg[R_NODES] += 1
            if depth > reg[R_MAXD]:
                reg[R_MAXD] = depth
            if reg[R_LIMIT] > 0 and reg[R_NODES] > reg[R_LIMIT]:
                return S_LIMIT
            while pos < total and st[slots[pos, 0], slots[pos, 1], slots[pos, 2]] != 0:
                pos += 1
            if reg[R_PROBE] > 0 and pos < total:
                r = _probe(st, B, W, H, NA, trail, q, reg, stack, slots, values, pos, reg[R_PROBE],
                           parent, nb)
                if r >= 0:
                    conf[r] += 1
                    depth -= 1
                    mode = M_BACK
                    continue
                while pos < total and st[slots[pos, 0], slots[pos, 1], slots[pos, 2]] != 0:
                    pos += 1
            if pos == total:
                reg[R_LEAVES] += 1
                if _any_class_conflict(B, d, n, parent, nb):
                    conf[K_P3] += 1
                    depth -= 1
                    mode = M_BACK
                    continue
                reg[R_MODE] = M_BACK
                reg[R_DEPTH] = depth - 1
                reg[R_POS] = pos
                return S_LEAF
            frames[depth, 0] = _select(st, B, W, H, slots, pos, reg[R_BRANCH])
            frames[depth, 3] = pos
            frames[depth, 1] = 0
            frames[depth, 2] = reg[R_TP]
            mode = M_NEXT
        elif mode == M_BACK:
            if depth < 0:
                reg[R_MODE] = M_BACK
                reg[R_DEPTH] = depth
                return S_DONE
            _rollback(st, B, NA, trail, reg, frames[depth, 2])
            mode = M_NEXT
        else:
            vi = frames[depth, 1]
            if vi == 2:
                depth -= 1
                mode = M_BACK
                continue
            frames[depth, 1] = vi + 1
            p = frames[depth, 0]
            i = slots[p, 0]
            u = slots[p, 1]
            v = slots[p, 2]
            r = _fix(st, B, trail, q, reg, i, u, v, values[p, vi], K_C3)
            if r < 0:
                r = _run(st, B, W, H, NA, trail, q, reg, stack)
            if r < 0 and every > 0 and reg[R_NODES] % every == 0:
                if _any_class_conflict(B, d, n, parent, nb):
                    r = K_P3
            if r >= 0:
                conf[r] += 1
                _rollback(st, B, NA, trail, reg, frames[depth, 2])
                continue
            depth += 1
            pos = p + 1 if p == frames[depth - 1, 3] else frames[depth - 1, 3]
            mode = M_ENTER


class KernelState:
    """All arrays of one compiled search."""

    def __init__(self, n: int, d: int, widths, caps, slots, values, arcs, every: int, node_limit: int,
                 probe: int = 0, branch_mode: int = 0):
        if n > MAX_ITEMS:
            raise ValueError(f"the compiled engine handles at most {MAX_ITEMS} items")
        self.n, self.d = n, d
        self.st = np.zeros((d, n, n), dtype=np.int8)
        self.B = np.zeros((5, d, n), dtype=np.int64)
        full = (1 << n) - 1
        for i in range(d):
            for v in range(n):
                self.B[PU, i, v] = full & ~(1 << v)
        self.W = np.array(widths, dtype=np.int64).reshape(d, n)
        self.H = np.array(caps, dtype=np.int64)
        self.NA = np.zeros(d, dtype=np.int64)
        cap = 2 * d * n * n + 16
        self.trail = np.zeros((cap, 4), dtype=np.int64)
        self.q = np.zeros((cap, 4), dtype=np.int64)
        self.reg = np.zeros(N_REGS, dtype=np.int64)
        self.stack = np.zeros((2 * n + 8, 2), dtype=np.int64)
        self.slots = np.array(slots, dtype=np.int64).reshape(-1, 3)
        # one (first, second) value pair per slot; a single pair applies to all
        self.values = np.array(values, dtype=np.int64).reshape(-1, 2)
        if len(self.values) == 1 and len(slots) > 1:
            self.values = np.repeat(self.values, len(slots), axis=0)
        self.frames = np.zeros((len(slots) + 2, 4), dtype=np.int64)
        self.conf = np.zeros(len(CONFLICT_NAMES), dtype=np.int64)
        self.parent = np.zeros(max(n * n, 1), dtype=np.int64)
        self.nb = np.zeros(max(n, 1), dtype=np.int64)
        self.arcs = np.array(arcs, dtype=np.int64).reshape(-1, 3)
        self.reg[R_EVERY] = every
        self.reg[R_PROBE] = probe
        self.reg[R_BRANCH] = branch_mode
        self.reg[R_LIMIT] = node_limit
        self.reg[R_MODE] = M_ENTER

    def seed(self) -> int:
        return int(seed_root(self.st, self.B, self.W, self.H, self.NA, self.trail, self.q, self.reg,
                             self.stack, self.arcs, self.parent, self.nb))

    def step(self, pause_after: int) -> int:
        self.reg[R_PAUSE] = self.reg[R_NODES] + pause_after
        return int(search(self.st, self.B, self.W, self.H, self.NA, self.trail, self.q, self.reg,
                          self.stack, self.slots, self.values, self.frames, self.conf, self.parent,
                          self.nb))

    @property
    def nodes(self) -> int:
        return int(self.reg[R_NODES])

    def counters(self) -> dict:
        return {"nodes": int(self.reg[R_NODES]), "leaves": int(self.reg[R_LEAVES]),
                "propagations": int(self.reg[R_PROP]), "max_depth": int(self.reg[R_MAXD])}

    def conflicts(self) -> dict:
        return {name: int(c) for name, c in zip(CONFLICT_NAMES, self.conf) if c}

    def to_store(self):
        """EdgeStore copy of the current assignment (arcs included, trail empty)."""
        from .edgestate import EdgeStore

        n, d = self.n, self.d
        store = EdgeStore(n, d)
        for i in range(d):
            for u in range(n):
                for v in range(u + 1, n):
                    s = int(self.st[i, u, v])
                    if s:
                        store.assign(i, u, v, s)
            for a in range(n):
                row = int(self.B[PS, i, a])
                for b in range(n):
                    if row >> b & 1:
                        store.orient(i, a, b)
        store.trail.clear()
        return store
