"""Compiled batch kernels: angular ranks, chains, stabbing and dominance counts.

Conventions shared by every kernel:

* ``i`` is the source vertex, points ``i+1 .. jmax`` form the batch.
* Real ranks run ``1 .. R``. A segment crossing the cut ray is split at two
  artificial nodes with ranks ``0`` and ``R+1``.
* Node codes are ``2*k`` for vertex ``k`` and ``2*k+1`` for an artificial
  node on segment ``(k, k+1)``.
"""

import numpy as np
from numba import njit

from polycross._exact import angle_cmp, orient


@njit(cache=True)
def sort_by_angle(xs, ys, cx, cy, idx):
    n = idx.shape[0]
    a = idx.copy()
    b = np.empty_like(a)
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            p = lo
            q = mid
            k = lo
            while p < mid and q < hi:
                if angle_cmp(cx, cy, xs[a[q]], ys[a[q]], xs[a[p]], ys[a[p]]) < 0:
                    b[k] = a[q]
                    q += 1
                else:
                    b[k] = a[p]
                    p += 1
                k += 1
            while p < mid:
                b[k] = a[p]
                p += 1
                k += 1
            while q < hi:
                b[k] = a[q]
                q += 1
                k += 1
        a, b = b, a
        width *= 2
    return a


@njit(cache=True)
def angular_ranks(xs, ys, i, jmax):
    """Dense clockwise ranks of points ``i+1..jmax`` around ``p[i]``.

    The cut sits just before rank 1. It is the upward vertical unless some
    point lies exactly on that ray, in which case it moves just past it.
    """
    m = jmax - i
    order = sort_by_angle(xs, ys, xs[i], ys[i], np.arange(i + 1, jmax + 1))
    rank = np.empty(m, np.int64)
    r = 0
    cx = xs[i]
    cy = ys[i]
    for t in range(m):
        if t == 0 or angle_cmp(cx, cy, xs[order[t - 1]], ys[order[t - 1]], xs[order[t]], ys[order[t]]) != 0:
            r += 1
        rank[order[t] - i - 1] = r
    R = r
    f = order[0]
    if R > 1 and xs[f] == cx and ys[f] > cy:
        for t in range(m):
            rank[t] = rank[t] - 1 if rank[t] > 1 else R
    return rank, R


@njit(cache=True)
def build_nodes(xs, ys, i, jmax, rank, R):
    cap = 3 * (jmax - i) + 3
    nrank = np.empty(cap, np.int64)
    ncode = np.empty(cap, np.int64)
    brk = np.zeros(cap, np.bool_)
    c = 0
    cx = xs[i]
    cy = ys[i]
    for k in range(i + 1, jmax + 1):
        nrank[c] = rank[k - i - 1]
        ncode[c] = 2 * k
        c += 1
        if k < jmax:
            rk = rank[k - i - 1]
            rk1 = rank[k - i]
            o = orient(cx, cy, xs[k], ys[k], xs[k + 1], ys[k + 1])
            if (o < 0 and rk1 < rk) or (o > 0 and rk1 > rk):
                nrank[c] = R + 1 if o < 0 else 0
                ncode[c] = 2 * k + 1
                brk[c] = True
                c += 1
                nrank[c] = 0 if o < 0 else R + 1
                ncode[c] = 2 * k + 1
                c += 1
    return nrank[:c], ncode[:c], brk[:c]


@njit(cache=True)
def build_chains(nrank, ncode, brk):
    """Split the node walk at cut breaks and at rank-direction flips."""
    N = nrank.shape[0]
    cs = np.empty(N + 1, np.int64)
    ce = np.empty(N + 1, np.int64)
    cdir = np.empty(N + 1, np.int64)
    nc = 0
    start = 0
    d = 0
    for t in range(1, N):
        if brk[t - 1]:
            cs[nc] = start
            ce[nc] = t - 1
            cdir[nc] = d
            nc += 1
            start = t
            d = 0
            continue
        diff = nrank[t] - nrank[t - 1]
        step = 1 if diff > 0 else (-1 if diff < 0 else 0)
        if step == 0 or step == d:
            continue
        if d == 0:
            d = step
            continue
        cs[nc] = start
        ce[nc] = t - 1
        cdir[nc] = d
        nc += 1
        start = t - 1
        d = step
    if N > 0:
        cs[nc] = start
        ce[nc] = N - 1
        cdir[nc] = d
        nc += 1
    clo = np.empty(nc, np.int64)
    chi = np.empty(nc, np.int64)
    cmax = np.empty(nc, np.int64)
    for c in range(nc):
        lo = nrank[cs[c]]
        hi = lo
        mx = ncode[cs[c]]
        for t in range(cs[c], ce[c] + 1):
            lo = min(lo, nrank[t])
            hi = max(hi, nrank[t])
            mx = max(mx, ncode[t])
        clo[c] = lo
        chi[c] = hi
        cmax[c] = mx
    return cs[:nc], ce[:nc], cdir[:nc], clo, chi, cmax


@njit(cache=True)
def point_chains(i, jmax, ncode, cs, ce):
    """Up to two chains through each batch point (-1 when absent)."""
    m = jmax - i
    pc = np.full((m, 2), -1, np.int64)
    for c in range(cs.shape[0]):
        for t in range(cs[c], ce[c] + 1):
            code = ncode[t]
            if code % 2 == 0:
                j = code // 2 - i - 1
                if pc[j, 0] < 0:
                    pc[j, 0] = c
                elif pc[j, 0] != c:
                    pc[j, 1] = c
    return pc


@njit(cache=True)
def _fen_add(tree, pos, delta):
    n = tree.shape[0] - 1
    while pos <= n:
        tree[pos] += delta
        pos += pos & (-pos)


@njit(cache=True)
def _fen_sum(tree, pos):
    s = 0
    while pos > 0:
        s += tree[pos]
        pos -= pos & (-pos)
    return s


@njit(cache=True)
def stab_monotone(i, jmax, nrank, ncode, ce, clo, chi):
    """Per-point count of earlier chains whose rank interval strictly holds the point's rank.

    Points are queried in walk order and a chain enters the structure right
    after its last node has been queried.
    """
    m = jmax - i
    out = np.zeros(m, np.int64)
    R2 = 0
    for t in range(nrank.shape[0]):
        R2 = max(R2, nrank[t])
    # ranks 0..R2 stored at Fenwick positions 1..R2+1
    tree = np.zeros(R2 + 3, np.int64)
    nc = ce.shape[0]
    cp = 0
    for t in range(nrank.shape[0]):
        code = ncode[t]
        if code % 2 == 0:
            out[code // 2 - i - 1] = _fen_sum(tree, nrank[t] + 1)
        while cp < nc and ce[cp] == t:
            if chi[cp] > clo[cp]:
                # strict containment lo < r < hi
                _fen_add(tree, clo[cp] + 2, 1)
                _fen_add(tree, chi[cp] + 1, -1)
            cp += 1
    return out


@njit(cache=True)
def _piece_at(c, r, nrank, ncode, cs, ce, cdir):
    # underlying segment of chain c over ranks (r, r + eps)
    if cdir[c] > 0:
        lo = cs[c]
        hi = ce[c] - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if nrank[mid] <= r:
                lo = mid
            else:
                hi = mid - 1
        a = lo
        b = lo + 1
    else:
        lo = cs[c] + 1
        hi = ce[c]
        while lo < hi:
            mid = (lo + hi) // 2
            if nrank[mid] <= r:
                hi = mid
            else:
                lo = mid + 1
        a = lo - 1
        b = lo
    return min(ncode[a], ncode[b]) // 2


@njit(cache=True)
def _nearer(xs, ys, i, k1, k2):
    """True if segment (k1, k1+1) is nearer to p[i] than (k2, k2+1) on a shared ray.

    Both segments must be crossed by a common ray from p[i] and may touch
    only at endpoints.
    """
    if k1 == k2:
        return False
    ax0 = xs[k1]
    ay0 = ys[k1]
    ax1 = xs[k1 + 1]
    ay1 = ys[k1 + 1]
    bx0 = xs[k2]
    by0 = ys[k2]
    bx1 = xs[k2 + 1]
    by1 = ys[k2 + 1]
    px = xs[i]
    py = ys[i]
    s0 = orient(ax0, ay0, ax1, ay1, bx0, by0)
    s1 = orient(ax0, ay0, ax1, ay1, bx1, by1)
    if s0 * s1 >= 0 and (s0 != 0 or s1 != 0):
        sb = s0 if s0 != 0 else s1
        return sb != orient(ax0, ay0, ax1, ay1, px, py)
    t0 = orient(bx0, by0, bx1, by1, ax0, ay0)
    t1 = orient(bx0, by0, bx1, by1, ax1, ay1)
    sa = t0 if t0 != 0 else t1
    return sa == orient(bx0, by0, bx1, by1, px, py)


@njit(cache=True)
def occlusion_order(xs, ys, i, R, nrank, ncode, cs, ce, cdir, clo, chi):
    """Sweep ranks, emit nearness edges between radial neighbours, sort topologically.

    Returns ``(topo, eu, ev, ok)``; edge ``eu[e] -> ev[e]`` means ``eu`` is
    nearer to ``p[i]``. ``ok`` is False if the edges contain a cycle.
    """
    nc = cs.shape[0]
    active = np.empty(nc + 1, np.int64)
    na = 0
    eu = np.empty(3 * nc + 1, np.int64)
    ev = np.empty(3 * nc + 1, np.int64)
    ne = 0
    byhi = np.argsort(chi, kind="mergesort")
    bylo = np.argsort(clo, kind="mergesort")
    ph = 0
    pl = 0
    for r in range(R + 2):
        while ph < nc and chi[byhi[ph]] == r:
            c = byhi[ph]
            ph += 1
            if clo[c] == chi[c]:
                continue
            pos = 0
            while active[pos] != c:
                pos += 1
            if 0 < pos < na - 1:
                eu[ne] = active[pos - 1]
                ev[ne] = active[pos + 1]
                ne += 1
            for t in range(pos, na - 1):
                active[t] = active[t + 1]
            na -= 1
        while pl < nc and clo[bylo[pl]] == r:
            c = bylo[pl]
            pl += 1
            if clo[c] == chi[c]:
                continue
            kc = _piece_at(c, r, nrank, ncode, cs, ce, cdir)
            lo = 0
            hi = na
            while lo < hi:
                mid = (lo + hi) // 2
                kd = _piece_at(active[mid], r, nrank, ncode, cs, ce, cdir)
                if _nearer(xs, ys, i, kc, kd):
                    hi = mid
                else:
                    lo = mid + 1
            for t in range(na, lo, -1):
                active[t] = active[t - 1]
            active[lo] = c
            na += 1
            if lo > 0:
                eu[ne] = active[lo - 1]
                ev[ne] = c
                ne += 1
            if lo < na - 1:
                eu[ne] = c
                ev[ne] = active[lo + 1]
                ne += 1
    eu = eu[:ne]
    ev = ev[:ne]
    # Kahn's algorithm, FIFO in chain id order
    indeg = np.zeros(nc, np.int64)
    head = np.full(nc, -1, np.int64)
    nxt = np.empty(ne, np.int64)
    for e in range(ne):
        indeg[ev[e]] += 1
        nxt[e] = head[eu[e]]
        head[eu[e]] = e
    queue = np.empty(nc, np.int64)
    qh = 0
    qt = 0
    for c in range(nc):
        if indeg[c] == 0:
            queue[qt] = c
            qt += 1
    topo = np.full(nc, -1, np.int64)
    pos = 0
    while qh < qt:
        c = queue[qh]
        qh += 1
        topo[c] = pos
        pos += 1
        e = head[c]
        while e >= 0:
            v = ev[e]
            indeg[v] -= 1
            if indeg[v] == 0:
                queue[qt] = v
                qt += 1
            e = nxt[e]
    return topo, eu, ev, pos == nc


@njit(cache=True)
def _dom_build(topo, key, C):
    cnt = np.zeros(C + 2, np.int64)
    for c in range(topo.shape[0]):
        idx = topo[c] + 1
        while idx <= C:
            cnt[idx + 1] += 1
            idx += idx & (-idx)
    off = np.cumsum(cnt)
    vals = np.empty(off[C + 1], np.int64)
    fill = off.copy()
    for c in range(topo.shape[0]):
        idx = topo[c] + 1
        while idx <= C:
            vals[fill[idx]] = key[c]
            fill[idx] += 1
            idx += idx & (-idx)
    for idx in range(1, C + 1):
        vals[off[idx]:off[idx + 1]] = np.sort(vals[off[idx]:off[idx + 1]])
    return off, vals


@njit(cache=True)
def _dom_update(off, vals, tree, C, t, k, delta):
    idx = t + 1
    while idx <= C:
        a = off[idx]
        L = off[idx + 1] - a
        p = np.searchsorted(vals[a:a + L], k) + 1
        while p <= L:
            tree[a + p - 1] += delta
            p += p & (-p)
        idx += idx & (-idx)


@njit(cache=True)
def _dom_count(off, vals, tree, T, X):
    # entries with topo < T and key < X
    s = 0
    idx = T
    while idx > 0:
        a = off[idx]
        L = off[idx + 1] - a
        p = np.searchsorted(vals[a:a + L], X)
        while p > 0:
            s += tree[a + p - 1]
            p -= p & (-p)
        idx -= idx & (-idx)
    return s


@njit(cache=True)
def stab_simple(i, jmax, rank, R, pc, topo, clo, chi, cmax):
    """Per-point count of active chains nearer than the point and entirely before it.

    At each rank: delete chains whose top rank is reached, query, then
    insert chains starting there.
    """
    m = jmax - i
    nc = clo.shape[0]
    out = np.zeros(m, np.int64)
    C = max(nc, 1)
    off, vals = _dom_build(topo, cmax, C)
    tree = np.zeros(vals.shape[0] + 1, np.int64)
    byhi = np.argsort(chi, kind="mergesort")
    bylo = np.argsort(clo, kind="mergesort")
    bypt = np.argsort(rank, kind="mergesort")
    ph = 0
    pl = 0
    pq = 0
    for r in range(R + 2):
        while ph < nc and chi[byhi[ph]] == r:
            c = byhi[ph]
            ph += 1
            if clo[c] < chi[c]:
                _dom_update(off, vals, tree, C, topo[c], cmax[c], -1)
        while pq < m and rank[bypt[pq]] == r:
            t = bypt[pq]
            pq += 1
            j = t + i + 1
            T = -1
            for s in range(2):
                c = pc[t, s]
                if c >= 0 and (T < 0 or topo[c] < T):
                    T = topo[c]
            if T > 0:
                out[t] = _dom_count(off, vals, tree, T, 2 * j)
        while pl < nc and clo[bylo[pl]] == r:
            c = bylo[pl]
            pl += 1
            if clo[c] < chi[c]:
                _dom_update(off, vals, tree, C, topo[c], cmax[c], 1)
    return out


@njit(cache=True)
def _same_dir(ox, oy, ax, ay, bx, by):
    dax = ax - ox
    day = ay - oy
    dbx = bx - ox
    dby = by - oy
    return ((dax > 0) == (dbx > 0) and (dax < 0) == (dbx < 0)
            and (day > 0) == (dby > 0) and (day < 0) == (dby < 0))


@njit(cache=True)
def junction_label(xs, ys, prev_turn, next_turn, at, q, is_end):
    n = xs.shape[0]
    if at <= 0 or at >= n - 1:
        return 1
    if is_end and q == at - 1:
        return 1
    if not is_end and q == at + 1:
        return 1
    px = xs[at - 1]
    py = ys[at - 1]
    ax = xs[at]
    ay = ys[at]
    nx = xs[at + 1]
    ny = ys[at + 1]
    qx = xs[q]
    qy = ys[q]
    turn = orient(px, py, ax, ay, nx, ny)
    on_in = orient(px, py, ax, ay, qx, qy)
    on_out = orient(ax, ay, nx, ny, qx, qy)
    if on_in == 0 and _same_dir(ax, ay, px, py, qx, qy):
        t = prev_turn[at]
        base = at - 1
        tip = at
    elif on_out == 0 and _same_dir(ax, ay, nx, ny, qx, qy):
        t = next_turn[at]
        base = at
        tip = at + 1
    elif turn > 0:
        return 2 if (on_in > 0 and on_out > 0) else 3
    else:
        return 3 if (on_in < 0 and on_out < 0) else 2
    if t < 0:
        return 1
    s = orient(xs[base], ys[base], xs[tip], ys[tip], xs[t], ys[t])
    return 3 if s > 0 else 2


@njit(cache=True)
def batch_labels(xs, ys, prev_turn, next_turn, i, jmax):
    m = jmax - i
    start = np.empty(m, np.int64)
    end = np.empty(m, np.int64)
    for t in range(m):
        j = i + 1 + t
        start[t] = junction_label(xs, ys, prev_turn, next_turn, i, j, False)
        end[t] = junction_label(xs, ys, prev_turn, next_turn, j, i, True)
    return start, end


@njit(cache=True, nogil=True)
def batch_monotone(xs, ys, prev_turn, next_turn, i, jmax):
    rank, R = angular_ranks(xs, ys, i, jmax)
    nrank, ncode, brk = build_nodes(xs, ys, i, jmax, rank, R)
    cs, ce, cdir, clo, chi, cmax = build_chains(nrank, ncode, brk)
    cross = stab_monotone(i, jmax, nrank, ncode, ce, clo, chi)
    start, end = batch_labels(xs, ys, prev_turn, next_turn, i, jmax)
    return cross, start, end


@njit(cache=True, nogil=True)
def batch_simple(xs, ys, prev_turn, next_turn, i, jmax):
    rank, R = angular_ranks(xs, ys, i, jmax)
    nrank, ncode, brk = build_nodes(xs, ys, i, jmax, rank, R)
    cs, ce, cdir, clo, chi, cmax = build_chains(nrank, ncode, brk)
    topo, eu, ev, ok = occlusion_order(xs, ys, i, R, nrank, ncode, cs, ce, cdir, clo, chi)
    pc = point_chains(i, jmax, ncode, cs, ce)
    cross = stab_simple(i, jmax, rank, R, pc, topo, clo, chi, cmax)
    start, end = batch_labels(xs, ys, prev_turn, next_turn, i, jmax)
    return cross, start, end, ok
