"""Compiled kernels: in-place k-d tree and the rectangle-sweep engine.

Every kernel mutates one int64 row matrix in place and keeps its working
state in scalar locals plus caller-provided fixed-size scratch, so the
constant-workspace contract is real, not simulated.  Points are rows; the
first ``k`` columns are coordinates, the last column is a stable id that
breaks every comparison tie, making the ordering a strict total order.

Key modes:
  mode 0: axis keys, dimension d reads column d.
  mode 1: rotated-frame keys for k=2; dimension 0 is the dot product u along
          the frame direction, dimension 1 the (side-signed) cross product v.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NEG_INF = -(2**63)
POS_INF = 2**63 - 1


@njit(cache=True, inline="always")
def _key(a, row, d, mode, px, py, dx, dy, sgn):
    if mode == 0:
        return a[row, d]
    rx = a[row, 0] - px
    ry = a[row, 1] - py
    if d == 0:
        return dx * rx + dy * ry
    return sgn * (dx * ry - dy * rx)


@njit(cache=True, inline="always")
def _less(a, i, j, d0, k, idcol, mode, px, py, dx, dy, sgn):
    # Lexicographic from the splitting dimension, then stable id.
    for t in range(k):
        d = d0 + t
        if d >= k:
            d -= k
        ki = _key(a, i, d, mode, px, py, dx, dy, sgn)
        kj = _key(a, j, d, mode, px, py, dx, dy, sgn)
        if ki != kj:
            return ki < kj
    return a[i, idcol] < a[j, idcol]


@njit(cache=True, inline="always")
def _swap(a, i, j):
    for c in range(a.shape[1]):
        t = a[i, c]
        a[i, c] = a[j, c]
        a[j, c] = t


@njit(cache=True, inline="always")
def _reverse(a, lo, hi):
    i = lo
    j = hi - 1
    while i < j:
        _swap(a, i, j)
        i += 1
        j -= 1


@njit(cache=True, inline="always")
def _rotate_left(a, lo, hi, s):
    # [X|Y] -> [Y|X] where |X| = s, by three reversals.
    if s <= 0 or s >= hi - lo:
        return
    _reverse(a, lo, lo + s)
    _reverse(a, lo + s, hi)
    _reverse(a, lo, hi)


@njit(cache=True, inline="always")
def _floor_log2(n):
    h = 0
    while (1 << (h + 1)) <= n:
        h += 1
    return h


@njit(cache=True, inline="always")
def _root_rank(s):
    # Rank (1-based, ascending) of the root of a left-aligned complete tree
    # of s nodes: one past its left-subtree size.
    if s <= 1:
        return 1
    t = _floor_log2(s)
    eps = s - (1 << t) + 1
    half = 1 << (t - 1)
    m = eps if eps < half else half
    return half + m


@njit(cache=True, inline="always")
def _block_size(j, ki, K1, K2, K3):
    # j is the 0-based block index at the level.
    if j < ki:
        return K1
    if j == ki:
        return K2
    return K3


@njit(cache=True, inline="always")
def _block_prefix(j, ki, K1, K2, K3):
    # Total size of the first j blocks.
    if j <= ki:
        return j * K1
    return ki * K1 + K2 + (j - ki - 1) * K3


@njit(cache=True)
def _select_head(a, lo, hi, rank, d0, k, idcol, mode, px, py, dx, dy, sgn):
    """Quickselect on rows [lo, hi): afterwards a[lo] is the rank-th element,
    rows lo+1..lo+rank-1 precede it and the rest follow it in the total order.
    """
    target = lo + rank - 1
    l = lo
    r = hi
    while r - l > 1:
        mid = (l + r) >> 1
        x = l
        y = mid
        if _less(a, y, x, d0, k, idcol, mode, px, py, dx, dy, sgn):
            x, y = y, x
        z = r - 1
        if _less(a, z, y, d0, k, idcol, mode, px, py, dx, dy, sgn):
            y = z
            if _less(a, y, x, d0, k, idcol, mode, px, py, dx, dy, sgn):
                y = x
        pv = y
        _swap(a, pv, r - 1)
        store = l
        for idx in range(l, r - 1):
            if _less(a, idx, r - 1, d0, k, idcol, mode, px, py, dx, dy, sgn):
                _swap(a, idx, store)
                store += 1
        _swap(a, store, r - 1)
        if target < store:
            r = store
        elif target > store:
            l = store + 1
        else:
            break
    if target != lo:
        _swap(a, lo, target)


@njit(cache=True)
def heapsort_rows(a, lo, hi, d0, k, idcol, mode, px, py, dx, dy, sgn):
    """In-place heapsort of rows [lo, hi) by the total order starting at d0."""
    n = hi - lo
    if n <= 1:
        return
    start = n // 2 - 1
    for root in range(start, -1, -1):
        # sift down
        pos = root
        while True:
            child = 2 * pos + 1
            if child >= n:
                break
            if child + 1 < n and _less(a, lo + child, lo + child + 1, d0, k, idcol, mode, px, py, dx, dy, sgn):
                child += 1
            if _less(a, lo + pos, lo + child, d0, k, idcol, mode, px, py, dx, dy, sgn):
                _swap(a, lo + pos, lo + child)
                pos = child
            else:
                break
    for end in range(n - 1, 0, -1):
        _swap(a, lo, lo + end)
        pos = 0
        while True:
            child = 2 * pos + 1
            if child >= end:
                break
            if child + 1 < end and _less(a, lo + child, lo + child + 1, d0, k, idcol, mode, px, py, dx, dy, sgn):
                child += 1
            if _less(a, lo + pos, lo + child, d0, k, idcol, mode, px, py, dx, dy, sgn):
                _swap(a, lo + pos, lo + child)
                pos = child
            else:
                break


@njit(cache=True)
def kd_build(a, base, cnt, k, idcol, mode, px, py, dx, dy, sgn):
    """Build the array-implicit k-d tree over rows [base, base+cnt) in place.

    Level by level: the block median of every block is selected to the block
    head with the block partitioned around it, then a doubling sequence of
    in-place rotations compacts all block medians into the level's index
    range, leaving each half-block contiguous for the next level.
    """
    if cnt <= 1:
        return
    h = _floor_log2(cnt)
    kappa = cnt - (1 << h) + 1
    for i in range(h):
        d = i % k
        t = 1 << i
        ki = kappa >> (h - i)
        K1 = (1 << (h + 1 - i)) - 1
        K3 = (1 << (h - i)) - 1
        K2 = K3 + kappa - (ki << (h - i))
        S = base + t - 1
        for j in range(t):
            bstart = S + _block_prefix(j, ki, K1, K2, K3)
            bsize = _block_size(j, ki, K1, K2, K3)
            rank = _root_rank(bsize)
            _select_head(a, bstart, bstart + bsize, rank, d, k, idcol, mode, px, py, dx, dy, sgn)
        r = 1
        while r < t:
            u = 0
            while u + 2 * r <= t:
                lstart = S + _block_prefix(u, ki, K1, K2, K3)
                rstart = S + _block_prefix(u + r, ki, K1, K2, K3)
                # [tail of left unit | r medians of right unit] -> medians first
                _rotate_left(a, lstart + r, rstart + r, rstart - (lstart + r))
                u += 2 * r
            r *= 2


@njit(cache=True, inline="always")
def subtree_size(n, t):
    """Size of the subtree rooted at 1-based node index t of an n-node tree."""
    h = _floor_log2(n)
    kappa = n - (1 << h) + 1
    lev = _floor_log2(t)
    r = t - (1 << lev) + 1
    ki = kappa >> (h - lev)
    if r <= ki:
        return (1 << (h + 1 - lev)) - 1
    K3 = (1 << (h - lev)) - 1
    if r == ki + 1:
        return K3 + kappa - (ki << (h - lev))
    return K3


@njit(cache=True, inline="always")
def _box_lo(d, lo0, lo1, lo2):
    if d == 0:
        return lo0
    if d == 1:
        return lo1
    return lo2


@njit(cache=True, inline="always")
def _box_hi(d, hi0, hi1, hi2):
    if d == 0:
        return hi0
    if d == 1:
        return hi1
    return hi2


@njit(cache=True)
def kd_count(a, base, cnt, k, idcol, mode, px, py, dx, dy, sgn,
             lo0, hi0, lo1, hi1, lo2, hi2, scr):
    """Closed-box range count by iterative parent/child index walking.

    ``scr`` is the 4k-slot query scratch: entries [0, 2k) hold boundary split
    values (low side per dim, then high side per dim), entries [2k, 4k) hold
    the tree level of the node that set each slot, -1 meaning NULL.  A slot is
    non-NULL exactly when that boundary of the current node's cell lies inside
    the query range, so an all-non-NULL tuple certifies cell containment and
    the whole subtree is counted from its on-the-fly size.
    """
    count = 0
    visited = 0
    if cnt <= 0:
        return count, visited
    for d in range(2 * k):
        scr[2 * k + d] = -1
    t = 1
    state = 0
    level = 0
    while True:
        if state == 0:
            visited += 1
            allset = True
            for d in range(k):
                if scr[2 * k + d] < 0 or scr[3 * k + d] < 0:
                    allset = False
                    break
            if allset:
                count += subtree_size(cnt, t)
                if t == 1:
                    break
                parent = t >> 1
                from_left = t == 2 * parent
                t = parent
                level -= 1
                d = level % k
                if from_left:
                    if scr[3 * k + d] == level:
                        scr[3 * k + d] = -1
                    state = 1
                else:
                    if scr[2 * k + d] == level:
                        scr[2 * k + d] = -1
                    state = 2
                continue
            row = base + t - 1
            inq = True
            for d in range(k):
                kd = _key(a, row, d, mode, px, py, dx, dy, sgn)
                if kd < _box_lo(d, lo0, lo1, lo2) or kd > _box_hi(d, hi0, hi1, hi2):
                    inq = False
                    break
            if inq:
                count += 1
            d = level % k
            s = _key(a, row, d, mode, px, py, dx, dy, sgn)
            if 2 * t <= cnt and _box_lo(d, lo0, lo1, lo2) <= s:
                if s <= _box_hi(d, hi0, hi1, hi2) and scr[3 * k + d] < 0:
                    scr[k + d] = s
                    scr[3 * k + d] = level
                t = 2 * t
                level += 1
            else:
                state = 1
        elif state == 1:
            row = base + t - 1
            d = level % k
            s = _key(a, row, d, mode, px, py, dx, dy, sgn)
            if 2 * t + 1 <= cnt and _box_hi(d, hi0, hi1, hi2) >= s:
                if _box_lo(d, lo0, lo1, lo2) <= s and scr[2 * k + d] < 0:
                    scr[d] = s
                    scr[2 * k + d] = level
                t = 2 * t + 1
                level += 1
                state = 0
            else:
                state = 2
        else:
            if t == 1:
                break
            parent = t >> 1
            from_left = t == 2 * parent
            t = parent
            level -= 1
            d = level % k
            if from_left:
                if scr[3 * k + d] == level:
                    scr[3 * k + d] = -1
                state = 1
            else:
                if scr[2 * k + d] == level:
                    scr[2 * k + d] = -1
                state = 2
    return count, visited


@njit(cache=True)
def kd_report(a, base, cnt, k, idcol, mode, px, py, dx, dy, sgn,
              lo0, hi0, lo1, hi1, lo2, hi2, scr, out):
    """Range reporting: like kd_count, but fills ``out`` with the row index of
    every point in the box.  A contained subtree is exhausted by a stackless
    pre-order walk restricted to its index range.  Returns (hits, visited).
    """
    nout = 0
    visited = 0
    if cnt <= 0:
        return nout, visited
    for d in range(2 * k):
        scr[2 * k + d] = -1
    t = 1
    state = 0
    level = 0
    while True:
        if state == 0:
            visited += 1
            allset = True
            for d in range(k):
                if scr[2 * k + d] < 0 or scr[3 * k + d] < 0:
                    allset = False
                    break
            if allset:
                cur = t
                while True:
                    out[nout] = base + cur - 1
                    nout += 1
                    if 2 * cur <= cnt:
                        cur = 2 * cur
                    else:
                        nxt = 0
                        c = cur
                        while c != t:
                            p = c >> 1
                            if c == 2 * p and 2 * p + 1 <= cnt:
                                nxt = 2 * p + 1
                                break
                            c = p
                        if nxt == 0:
                            break
                        cur = nxt
                if t == 1:
                    break
                parent = t >> 1
                from_left = t == 2 * parent
                t = parent
                level -= 1
                d = level % k
                if from_left:
                    if scr[3 * k + d] == level:
                        scr[3 * k + d] = -1
                    state = 1
                else:
                    if scr[2 * k + d] == level:
                        scr[2 * k + d] = -1
                    state = 2
                continue
            row = base + t - 1
            inq = True
            for d in range(k):
                kd = _key(a, row, d, mode, px, py, dx, dy, sgn)
                if kd < _box_lo(d, lo0, lo1, lo2) or kd > _box_hi(d, hi0, hi1, hi2):
                    inq = False
                    break
            if inq:
                out[nout] = row
                nout += 1
            d = level % k
            s = _key(a, row, d, mode, px, py, dx, dy, sgn)
            if 2 * t <= cnt and _box_lo(d, lo0, lo1, lo2) <= s:
                if s <= _box_hi(d, hi0, hi1, hi2) and scr[3 * k + d] < 0:
                    scr[k + d] = s
                    scr[3 * k + d] = level
                t = 2 * t
                level += 1
            else:
                state = 1
        elif state == 1:
            row = base + t - 1
            d = level % k
            s = _key(a, row, d, mode, px, py, dx, dy, sgn)
            if 2 * t + 1 <= cnt and _box_hi(d, hi0, hi1, hi2) >= s:
                if _box_lo(d, lo0, lo1, lo2) <= s and scr[2 * k + d] < 0:
                    scr[d] = s
                    scr[2 * k + d] = level
                t = 2 * t + 1
                level += 1
                state = 0
            else:
                state = 2
        else:
            if t == 1:
                break
            parent = t >> 1
            from_left = t == 2 * parent
            t = parent
            level -= 1
            d = level % k
            if from_left:
                if scr[3 * k + d] == level:
                    scr[3 * k + d] = -1
                state = 1
            else:
                if scr[2 * k + d] == level:
                    scr[2 * k + d] = -1
                state = 2
    return nout, visited


# ---------------------------------------------------------------------------
# Largest-monochromatic-rectangle pair engine (2D colored rows x,y,color,id).
# ---------------------------------------------------------------------------

# res slots for lmr_pair_side
R_BEST = 0
R_ALPHA = 1
R_BETA = 2
R_TOP = 3
R_TOPOPEN = 4
R_ABORT = 5
R_LINE = 6
R_VISITED = 7
RES_LEN = 8


@njit(cache=True)
def lmr_pair_side(a, nrows, px, py, qx, qy, sgn, obs, scr, res):
    """Best candidate rectangle for one anchored pair and one side of its line.

    The pair (p, q) spans the line; obstacles (color ``obs``) block interiors
    and targets (the other color) are counted.  Works fully in place: the side
    points are made contiguous, the side obstacles sorted by height above the
    line, the side targets arranged into a rotated-frame 2-d tree, and a
    single upward sweep shrinks the admissible horizontal interval at each
    obstacle.  Results land in ``res`` (see R_* slots); counts use closed
    bounds, emptiness uses open interiors throughout.
    """
    target = 1 - obs
    dx = qx - px
    dy = qy - py
    uq = dx * dx + dy * dy
    for idx in range(RES_LEN):
        res[idx] = 0
    res[R_BEST] = -1

    # Points on the line: targets form the degenerate full-line candidate;
    # obstacles strictly between p and q abort the pair, obstacles beyond the
    # pair clamp the sweep interval before it starts.
    alpha = NEG_INF
    beta = POS_INF
    line_count = 0
    aborted = 0
    for r in range(nrows):
        rx = a[r, 0] - px
        ry = a[r, 1] - py
        v = dx * ry - dy * rx
        if v != 0:
            continue
        u = dx * rx + dy * ry
        if a[r, 2] == target:
            line_count += 1
        else:
            if u == 0 or u == uq:
                continue  # coincides with p or q
            if 0 < u < uq:
                aborted = 1
            elif u < 0:
                if u > alpha:
                    alpha = u
            else:
                if u < beta:
                    beta = u
    res[R_LINE] = line_count
    if aborted:
        res[R_ABORT] = 1
        return

    # Side points to the front: obstacles strictly on the side, targets on
    # the side or on the line (the line is the rectangle's closed bottom).
    store = 0
    for r in range(nrows):
        v = sgn * (dx * (a[r, 1] - py) - dy * (a[r, 0] - px))
        c = a[r, 2]
        if (c == obs and v > 0) or (c == target and v >= 0):
            if r != store:
                _swap(a, r, store)
            store += 1
    ns = store
    store = 0
    for r in range(ns):
        if a[r, 2] == obs:
            if r != store:
                _swap(a, r, store)
            store += 1
    nb = store

    heapsort_rows(a, 0, nb, 1, 2, 3, 1, px, py, dx, dy, sgn)
    kd_build(a, nb, ns - nb, 2, 3, 1, px, py, dx, dy, sgn)
    ntree = ns - nb

    best = -1
    basfound = alpha
    bbfound = beta
    btop = 0
    btopopen = 0
    visited = 0
    stopped = False
    i = 0
    while i < nb:
        vcur = sgn * (dx * (a[i, 1] - py) - dy * (a[i, 0] - px))
        j = i
        while j < nb:
            vj = sgn * (dx * (a[j, 1] - py) - dy * (a[j, 0] - px))
            if vj != vcur:
                break
            j += 1
        na = alpha
        nbeta = beta
        for idx in range(i, j):
            u = dx * (a[idx, 0] - px) + dy * (a[idx, 1] - py)
            if alpha <= u <= beta:
                cnt, vis = kd_count(a, nb, ntree, 2, 3, 1, px, py, dx, dy, sgn,
                                    alpha, beta, 0, vcur, 0, 0, scr)
                visited += vis
                if cnt > best:
                    best = cnt
                    basfound = alpha
                    bbfound = beta
                    btop = vcur
                    btopopen = 0
                if 0 <= u <= uq:
                    stopped = True
                elif u < 0:
                    if u > na:
                        na = u
                else:
                    if u < nbeta:
                        nbeta = u
        if stopped:
            break
        alpha = na
        beta = nbeta
        i = j
    if not stopped:
        cnt, vis = kd_count(a, nb, ntree, 2, 3, 1, px, py, dx, dy, sgn,
                            alpha, beta, 0, POS_INF, 0, 0, scr)
        visited += vis
        if cnt > best:
            best = cnt
            basfound = alpha
            bbfound = beta
            btop = POS_INF
            btopopen = 1
    res[R_BEST] = best
    res[R_ALPHA] = basfound
    res[R_BETA] = bbfound
    res[R_TOP] = btop
    res[R_TOPOPEN] = btopopen
    res[R_VISITED] = visited


@njit(cache=True)
def best_collinear(a, nrows, target, res):
    """Largest count of target-colored points on a line through two of them.

    Covers the degenerate zero-height rectangles; res gets (count, id1, id2).
    """
    best = 0
    b1 = -1
    b2 = -1
    for i in range(nrows):
        if a[i, 2] != target:
            continue
        for j in range(i + 1, nrows):
            if a[j, 2] != target:
                continue
            dx = a[j, 0] - a[i, 0]
            dy = a[j, 1] - a[i, 1]
            if dx == 0 and dy == 0:
                continue
            c = 0
            for r in range(nrows):
                if a[r, 2] == target and dx * (a[r, 1] - a[i, 1]) == dy * (a[r, 0] - a[i, 0]):
                    c += 1
            if c > best:
                best = c
                b1 = a[i, 3]
                b2 = a[j, 3]
    res[0] = best
    res[1] = b1
    res[2] = b2


@njit(cache=True)
def best_multiplicity(a, nrows, target, res):
    """Largest number of target points sharing one location (zero-extent
    rectangle seed).  res gets (count, id)."""
    best = 0
    bid = -1
    for i in range(nrows):
        if a[i, 2] != target:
            continue
        c = 0
        for j in range(nrows):
            if a[j, 2] == target and a[j, 0] == a[i, 0] and a[j, 1] == a[i, 1]:
                c += 1
        if c > best:
            best = c
            bid = a[i, 3]
    res[0] = best
    res[1] = bid
    res[2] = -1


@njit(cache=True)
def find_row_by_id(a, nrows, idcol, pid):
    for r in range(nrows):
        if a[r, idcol] == pid:
            return r
    return -1


def warmup() -> None:
    """Compile every kernel on tiny inputs (first call pays JIT cost)."""
    a = np.array([[0, 0, 0, 0], [1, 1, 1, 1], [2, 0, 0, 2]], dtype=np.int64)
    scr = np.full(8, -1, dtype=np.int64)
    out = np.zeros(3, dtype=np.int64)
    res = np.zeros(RES_LEN, dtype=np.int64)
    kd_build(a, 0, 3, 2, 3, 0, 0, 0, 0, 0, 1)
    kd_count(a, 0, 3, 2, 3, 0, 0, 0, 0, 0, 1, NEG_INF, POS_INF, NEG_INF, POS_INF, 0, 0, scr)
    kd_report(a, 0, 3, 2, 3, 0, 0, 0, 0, 0, 1, NEG_INF, POS_INF, NEG_INF, POS_INF, 0, 0, scr, out)
    heapsort_rows(a, 0, 3, 0, 2, 3, 0, 0, 0, 0, 0, 1)
    lmr_pair_side(a, 3, 0, 0, 1, 1, 1, 1, scr, res)
    best_collinear(a, 3, 0, res)
    best_multiplicity(a, 3, 0, res)
    find_row_by_id(a, 3, 3, 1)
    b = np.array([[0, 0, 0, 0, 0], [1, 1, 1, 0, 1]], dtype=np.int64)
    scr3 = np.full(12, -1, dtype=np.int64)
    kd_build(b, 0, 2, 3, 4, 0, 0, 0, 0, 0, 1)
    kd_count(b, 0, 2, 3, 4, 0, 0, 0, 0, 0, 1,
             NEG_INF, POS_INF, NEG_INF, POS_INF, NEG_INF, POS_INF, scr3)
