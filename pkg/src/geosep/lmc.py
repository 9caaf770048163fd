"""Largest axis-parallel monochromatic cuboid in 3D.

Three candidate families by where the top and bottom faces sit: both on the
bounding region (type 1), top on the region and bottom through an obstacle
point (type 2), top through an obstacle point (type 3).  Types 1 and 2 reduce
to maximal-empty-rectangle sweeps over projected obstacles with range counts
in an in-place 2-d tree over projected targets.  Type 3 sweeps a plane
downward per top anchor while maintaining, inside the obstacle subarray, four
quadrant blocks whose prefixes hold the maximal closest staircases around the
anchor's projection; each sweep event enumerates the maximal empty rectangles
of the stair polygon that keep the anchor strictly interior.

All bookkeeping is index arithmetic over the single input array: colors are
split into two segments, each phase partitions/sorts subranges in place, and
the array is a permutation of the input after every solve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geom import BLUE, NEG_INF, POS_INF, RED, PointSet
from .kdtree import ImplicitKdTree, QueryScratch

# columns: x, y, z, color, id
_X, _Y, _Z, _C, _ID = 0, 1, 2, 3, 4

# per-quadrant reflection into nonnegative canonical coordinates
_RX = (1, -1, -1, 1)
_RY = (1, 1, -1, -1)


def _swap_rows(data, i: int, j: int) -> None:
    if i == j:
        return
    for c in range(data.shape[1]):
        data[i, c], data[j, c] = data[j, c], data[i, c]


def _sort_rows(data, lo: int, hi: int, key) -> None:
    """In-place heapsort of rows [lo, hi) by key(row_index)."""
    n = hi - lo

    def sift(root, end):
        while True:
            child = 2 * root + 1
            if child >= end:
                return
            if child + 1 < end and key(lo + child) < key(lo + child + 1):
                child += 1
            if key(lo + root) < key(lo + child):
                _swap_rows(data, lo + root, lo + child)
                root = child
            else:
                return

    for root in range(n // 2 - 1, -1, -1):
        sift(root, n)
    for end in range(n - 1, 0, -1):
        _swap_rows(data, lo, lo + end)
        sift(0, end)


def _partition_rows(data, lo: int, hi: int, pred) -> int:
    store = lo
    for r in range(lo, hi):
        if pred(r):
            _swap_rows(data, r, store)
            store += 1
    return store


def _quadrant(X: int, Y: int) -> int:
    if X >= 0:
        return 0 if Y >= 0 else 3
    return 1 if Y >= 0 else 2


def _iadd(a: int, b: int) -> int:
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    if a == POS_INF or b == POS_INF:
        return POS_INF
    return a + b


def _ineg(a: int) -> int:
    if a == NEG_INF:
        return POS_INF
    if a == POS_INF:
        return NEG_INF
    return -a


@dataclass
class CuboidWitness:
    color: int
    kind: str                     # "type1" | "type2" | "type3"
    bounds: tuple[int, int, int, int, int, int]   # xlo, xhi, ylo, yhi, zlo, zhi


@dataclass
class CuboidResult:
    size: int
    witness: CuboidWitness
    events: int = 0
    nodes_visited: int = 0


# ---------------------------------------------------------------------------
# Planar maximal-empty-rectangle sweep (types 1 and 2)
# ---------------------------------------------------------------------------

def _enumerate_planar_mers(data, blo: int, bhi: int, visit) -> None:
    """Feed every maximal empty rectangle among the projected obstacle rows
    [blo, bhi) to ``visit(xlo, xhi, ylo, yhi)``.  Bounds use inf sentinels for
    sides resting on the bounding region.  Sorts the segment in place."""
    m = bhi - blo
    if m == 0:
        visit(NEG_INF, POS_INF, NEG_INF, POS_INF)
        return
    # full-height slabs between x-adjacent obstacles
    _sort_rows(data, blo, bhi, lambda r: (int(data[r, _X]), int(data[r, _Y]), int(data[r, _ID])))
    xs = sorted({int(data[r, _X]) for r in range(blo, bhi)})
    edges = [NEG_INF] + xs + [POS_INF]
    for i in range(len(edges) - 1):
        visit(edges[i], edges[i + 1], NEG_INF, POS_INF)

    _sort_rows(data, blo, bhi, lambda r: (int(data[r, _Y]), int(data[r, _X]), int(data[r, _ID])))
    # rectangles grounded on the bottom edge with top through an obstacle
    for t in range(blo, bhi):
        xt, yt = int(data[t, _X]), int(data[t, _Y])
        alpha, beta = NEG_INF, POS_INF
        blocked = False
        for r in range(blo, bhi):
            if int(data[r, _Y]) >= yt:
                break  # y-sorted
            xr = int(data[r, _X])
            if xr == xt:
                blocked = True
                break
            if xr < xt:
                alpha = max(alpha, xr)
            else:
                beta = min(beta, xr)
        if not blocked:
            visit(alpha, beta, NEG_INF, yt)
    # bottom side through an obstacle: upward interval-shrinking sweep
    for a in range(blo, bhi):
        xa, ya = int(data[a, _X]), int(data[a, _Y])
        alpha, beta = NEG_INF, POS_INF
        i = a + 1
        while i < bhi and int(data[i, _Y]) == ya:
            i += 1  # same level: on the closed bottom edge, not an obstacle
        stopped = False
        while i < bhi and not stopped:
            ycur = int(data[i, _Y])
            j = i
            while j < bhi and int(data[j, _Y]) == ycur:
                j += 1
            na, nb = alpha, beta
            for idx in range(i, j):
                xq = int(data[idx, _X])
                if alpha <= xq <= beta:
                    visit(alpha, beta, ya, ycur)
                    if xq == xa:
                        stopped = True
                    elif xq < xa:
                        na = max(na, xq)
                    else:
                        nb = min(nb, xq)
            alpha, beta = na, nb
            i = j
        if not stopped:
            visit(alpha, beta, ya, POS_INF)


# ---------------------------------------------------------------------------
# Type-3 stair machinery
# ---------------------------------------------------------------------------

class _Phase3:
    """State for one top-anchor phase: quadrant blocks with stair prefixes."""

    def __init__(self, data, xi: int, yi: int, lo: int, hi: int):
        self.data = data
        self.xi = xi
        self.yi = yi
        # partition [lo, hi) into the four quadrant blocks
        d = data
        up = _partition_rows(d, lo, hi, lambda r: int(d[r, _Y]) - yi >= 0)
        q1e = _partition_rows(d, lo, up, lambda r: int(d[r, _X]) - xi >= 0)
        q4e = _partition_rows(d, up, hi, lambda r: int(d[r, _X]) - xi < 0)
        # blocks in quadrant order q1, q2, q3(part of lower), q4
        self.qlo = [lo, q1e, up, q4e]
        self.qhi = [q1e, up, q4e, hi]
        self.nu = [0, 0, 0, 0]
        self.chi = [self.qlo[t] for t in range(4)]
        zkey = lambda r: (-int(d[r, _Z]), int(d[r, _X]), int(d[r, _Y]), int(d[r, _ID]))
        for t in range(4):
            _sort_rows(d, self.qlo[t], self.qhi[t], zkey)

    def canon(self, row: int, theta: int) -> tuple[int, int]:
        return (_RX[theta] * (int(self.data[row, _X]) - self.xi),
                _RY[theta] * (int(self.data[row, _Y]) - self.yi))

    def next_event(self):
        """Quadrant holding the unswept point of maximum z (ties by the
        deterministic lexicographic order), or None when exhausted."""
        best = None
        btheta = -1
        d = self.data
        for t in range(4):
            c = self.chi[t]
            if c >= self.qhi[t]:
                continue
            key = (-int(d[c, _Z]), int(d[c, _X]), int(d[c, _Y]), int(d[c, _ID]))
            if best is None or key < best:
                best = key
                btheta = t
        return btheta if best is not None else None

    def stair_points(self, theta: int) -> list[tuple[int, int]]:
        return [self.canon(r, theta) for r in range(self.qlo[theta], self.qlo[theta] + self.nu[theta])]

    def all_stair_canon(self, theta_event: int) -> list[tuple[int, int]]:
        """Every current stair point, reflected into the event's canonical
        frame (nonnegative quadrant for the event's own block)."""
        d = self.data
        rx, ry = _RX[theta_event], _RY[theta_event]
        out = []
        for t in range(4):
            for r in range(self.qlo[t], self.qlo[t] + self.nu[t]):
                out.append((rx * (int(d[r, _X]) - self.xi), ry * (int(d[r, _Y]) - self.yi)))
        return out

    def dominance(self, theta: int, Xj: int, Yj: int) -> str:
        """'strict' if a stair point strictly dominates (Xj, Yj) toward the
        anchor, 'tie' if only with equality in a coordinate, else 'free'."""
        tie = False
        for X, Y in self.stair_points(theta):
            if X < Xj and Y < Yj:
                return "strict"
            if X <= Xj and Y <= Yj:
                tie = True
        return "tie" if tie else "free"

    def update_stair(self, theta: int, pos_bj: int) -> None:
        """Insert the projection at array position pos_bj into its stair,
        evicting the run it dominates; pure swap sequences, O(1) scratch."""
        d = self.data
        qs = self.qlo[theta]
        nu = self.nu[theta]
        Xj, Yj = self.canon(pos_bj, theta)
        # stair is canonical-Y descending == canonical-X ascending
        q1 = 0
        while q1 < nu and self.canon(qs + q1, theta)[0] < Xj:
            q1 += 1
        q2 = nu - 1
        while q2 >= 0 and self.canon(qs + q2, theta)[1] < Yj:
            q2 -= 1
        if q1 <= q2:
            g = q2 - q1 + 1
            _swap_rows(d, pos_bj, qs + q1)
            for r in range(q2 + 1, nu):
                _swap_rows(d, qs + q1 + 1 + (r - q2 - 1), qs + r)
            self.nu[theta] = nu - g + 1
        else:
            p = q1
            _swap_rows(d, pos_bj, qs + nu)
            for r in range(nu - 1, p - 1, -1):
                _swap_rows(d, qs + r, qs + r + 1)
            self.nu[theta] = nu + 1

    def check_stairs(self, swept: list[list[tuple[int, int]]]) -> None:
        """Test hook: every stair equals the from-scratch staircase of all
        points swept into its quadrant, and is strictly monotone."""
        from .oracles import staircase_from_scratch
        for t in range(4):
            got = sorted(self.stair_points(t))
            exp = staircase_from_scratch(swept[t])
            assert got == exp, f"stair {t}: {got} != {exp}"
            ordered = self.stair_points(t)
            for a, b in zip(ordered, ordered[1:]):
                assert a[0] < b[0] and a[1] > b[1], f"stair {t} not strictly monotone"
            assert self.qlo[t] + self.nu[t] <= self.chi[t] + 1


def enumerate_stair_mers(obstacles: list[tuple[int, int]],
                         bj: tuple[int, int] | None) -> list[tuple[int, int, int, int]]:
    """Maximal empty rectangles among canonical stair obstacles that keep the
    anchor (the origin) strictly interior and, when given, contain bj
    (closed).  Returns (W, S, E, N) tuples with inf sentinels."""
    out = []
    nvals = sorted({y for _, y in obstacles if y > 0}) + [POS_INF]
    svals_all = sorted({y for _, y in obstacles if y < 0}, reverse=True) + [NEG_INF]
    upper = [(x, y) for x, y in obstacles if y >= 0]
    lower = [(x, y) for x, y in obstacles if y < 0]
    for nv in nvals:
        if bj is not None and nv < bj[1]:
            continue
        e0, w0 = POS_INF, NEG_INF
        dead = False
        for x, y in upper:
            if y < nv:
                if x == 0:
                    dead = True
                    break
                if x > 0:
                    e0 = min(e0, x)
                else:
                    w0 = max(w0, x)
        if dead:
            continue
        for sv in svals_all:
            e, w = e0, w0
            dead2 = False
            for x, y in lower:
                if sv < y:
                    if x == 0:
                        dead2 = True
                        break
                    if x > 0:
                        e = min(e, x)
                    else:
                        w = max(w, x)
            if dead2:
                break  # deeper souths only widen the band
            if bj is not None and e < bj[0]:
                break  # e shrinks as sv drops
            # maximality: every finite side needs a strictly-overlapping support
            if nv != POS_INF and not any(y == nv and w < x < e for x, y in obstacles):
                continue
            if sv != NEG_INF and not any(y == sv and w < x < e for x, y in obstacles):
                continue
            if e != POS_INF and not any(x == e and sv < y < nv for x, y in obstacles):
                continue
            if w != NEG_INF and not any(x == w and sv < y < nv for x, y in obstacles):
                continue
            out.append((w, sv, e, nv))
    return out


# ---------------------------------------------------------------------------
# The three candidate families
# ---------------------------------------------------------------------------

def _zkey(data):
    return lambda r: (-int(data[r, _Z]), int(data[r, _X]), int(data[r, _Y]), int(data[r, _ID]))


def _count_tracker():
    return {"events": 0, "visited": 0}


def _type1(data, n: int, N: int, color: int, track) -> CuboidResult:
    tree = ImplicitKdTree.build(data, 0, n, 2, _ID)
    scratch = QueryScratch(2)
    best = -1
    bw = None

    def visit(xlo, xhi, ylo, yhi):
        nonlocal best, bw
        track["events"] += 1
        cnt = tree.count_in_range(((xlo, xhi), (ylo, yhi)), scratch) if n else 0
        track["visited"] += tree.last_visited
        if cnt > best:
            best = cnt
            bw = (xlo, xhi, ylo, yhi, NEG_INF, POS_INF)

    _enumerate_planar_mers(data, n, N, visit)
    return CuboidResult(best, CuboidWitness(color, "type1", bw))


def _type2(data, n: int, N: int, color: int, track) -> CuboidResult:
    best = -1
    bw = None
    scratch = QueryScratch(2)
    zk = _zkey(data)
    _sort_rows(data, 0, n, zk)
    for bi in range(n, N):
        _sort_rows(data, n, N, zk)
        xi, yi, zi = int(data[bi, _X]), int(data[bi, _Y]), int(data[bi, _Z])
        # targets on or above the bottom face count (closed bounds)
        rsplit = 0
        while rsplit < n and int(data[rsplit, _Z]) >= zi:
            rsplit += 1
        # obstacles strictly above the bottom face
        bs = n
        while bs < bi and int(data[bs, _Z]) > zi:
            bs += 1
        tree = ImplicitKdTree.build(data, 0, rsplit, 2, _ID)

        def visit(xlo, xhi, ylo, yhi):
            nonlocal best, bw
            if not (xlo < xi < xhi and ylo < yi < yhi):
                return
            track["events"] += 1
            cnt = tree.count_in_range(((xlo, xhi), (ylo, yhi)), scratch) if rsplit else 0
            track["visited"] += tree.last_visited
            if cnt > best:
                best = cnt
                bw = (xlo, xhi, ylo, yhi, zi, POS_INF)

        _enumerate_planar_mers(data, n, bs, visit)
    _sort_rows(data, n, N, zk)
    return CuboidResult(best, CuboidWitness(color, "type2", bw))


def _type3(data, n: int, N: int, color: int, track, check: bool = False) -> CuboidResult:
    best = -1
    bw = None
    scratch = QueryScratch(2)
    zk = _zkey(data)
    for bi in range(n, N):
        _sort_rows(data, n, N, zk)
        _sort_rows(data, 0, n, zk)
        if check:
            for r in range(n, N - 1):
                assert zk(r) <= zk(r + 1), "blue region lost its z order"
        xi, yi, zi = int(data[bi, _X]), int(data[bi, _Y]), int(data[bi, _Z])
        rs = 0
        while rs < n and int(data[rs, _Z]) > zi:
            rs += 1
        phase = _Phase3(data, xi, yi, bi + 1, N)
        swept: list[list[tuple[int, int]]] = [[], [], [], []]
        re = rs
        tree = None
        prev_re = -1
        for _ in range(N - bi - 1):
            theta = phase.next_event()
            if theta is None:
                break
            pj = phase.chi[theta]
            zj = int(data[pj, _Z])
            while re < n and int(data[re, _Z]) >= zj:
                re += 1
            if re != prev_re or tree is None:
                tree = ImplicitKdTree.build(data, rs, re - rs, 2, _ID)
                prev_re = re
            Xj, Yj = phase.canon(pj, theta)
            dom = phase.dominance(theta, Xj, Yj)
            if dom != "strict":
                obstacles = phase.all_stair_canon(theta)
                for w, s, e, nv in enumerate_stair_mers(obstacles, (Xj, Yj)):
                    track["events"] += 1
                    cnt = _count_canonical(tree, scratch, xi, yi, theta, w, s, e, nv,
                                           re - rs, track)
                    if cnt > best:
                        best = cnt
                        bb = _bounds_canonical(xi, yi, theta, w, s, e, nv)
                        bw = (bb[0], bb[1], bb[2], bb[3], zj, zi)
            if dom == "free":
                phase.update_stair(theta, pj)
            if check:
                swept[theta].append((Xj, Yj))
                phase.check_stairs(swept)
            phase.chi[theta] += 1
        # virtual bottom face of the region
        tree = ImplicitKdTree.build(data, rs, n - rs, 2, _ID)
        obstacles = phase.all_stair_canon(0)
        for w, s, e, nv in enumerate_stair_mers(obstacles, None):
            track["events"] += 1
            cnt = _count_canonical(tree, scratch, xi, yi, 0, w, s, e, nv, n - rs, track)
            if cnt > best:
                best = cnt
                bb = _bounds_canonical(xi, yi, 0, w, s, e, nv)
                bw = (bb[0], bb[1], bb[2], bb[3], NEG_INF, zi)
    _sort_rows(data, n, N, zk)
    return CuboidResult(best, CuboidWitness(color, "type3", bw))


def _bounds_canonical(xi, yi, theta, w, s, e, nv):
    rx, ry = _RX[theta], _RY[theta]
    if rx == 1:
        xlo, xhi = _iadd(xi, w), _iadd(xi, e)
    else:
        xlo, xhi = _iadd(xi, _ineg(e)), _iadd(xi, _ineg(w))
    if ry == 1:
        ylo, yhi = _iadd(yi, s), _iadd(yi, nv)
    else:
        ylo, yhi = _iadd(yi, _ineg(nv)), _iadd(yi, _ineg(s))
    return xlo, xhi, ylo, yhi


def _count_canonical(tree, scratch, xi, yi, theta, w, s, e, nv, cnt_rows, track):
    if cnt_rows == 0:
        return 0
    xlo, xhi, ylo, yhi = _bounds_canonical(xi, yi, theta, w, s, e, nv)
    c = tree.count_in_range(((xlo, xhi), (ylo, yhi)), scratch)
    track["visited"] += tree.last_visited
    return c


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------

def solve_lrc(ps: PointSet, target: int = RED, check: bool = False) -> CuboidResult:
    """Largest axis-parallel cuboid with only `target` points in its open
    interior; closed-bound counting.  In place: the array is a permutation of
    the input afterwards."""
    data = ps.data
    N = data.shape[0]
    track = _count_tracker()
    if N == 0:
        return CuboidResult(0, CuboidWitness(target, "type1",
                                             (NEG_INF, POS_INF, NEG_INF, POS_INF, NEG_INF, POS_INF)))
    n = _partition_rows(data, 0, N, lambda r: int(data[r, _C]) == target)
    results = [_type1(data, n, N, target, track)]
    if n < N:  # obstacles exist: bottom/top anchored families apply
        results.append(_type2(data, n, N, target, track))
        results.append(_type3(data, n, N, target, track, check=check))
    best = results[0]
    for r in results[1:]:
        if r.size > best.size:
            best = r
    return CuboidResult(best.size, best.witness, track["events"], track["visited"])


def solve_lmc(ps: PointSet, check: bool = False) -> CuboidResult:
    red = solve_lrc(ps, RED, check=check)
    blue = solve_lrc(ps, BLUE, check=check)
    win = red if red.size >= blue.size else blue
    return CuboidResult(win.size, win.witness,
                        red.events + blue.events, red.nodes_visited + blue.nodes_visited)


def rescan_witness(ps: PointSet, w: CuboidWitness) -> int:
    data = ps.data
    xlo, xhi, ylo, yhi, zlo, zhi = w.bounds
    m = (data[:, _C] == w.color)
    m &= (data[:, _X] >= xlo) & (data[:, _X] <= xhi)
    m &= (data[:, _Y] >= ylo) & (data[:, _Y] <= yhi)
    m &= (data[:, _Z] >= zlo) & (data[:, _Z] <= zhi)
    return int(np.count_nonzero(m))


def witness_interior_empty(ps: PointSet, w: CuboidWitness) -> bool:
    data = ps.data
    xlo, xhi, ylo, yhi, zlo, zhi = w.bounds
    obs = 1 - w.color
    m = (data[:, _C] == obs)
    m &= (data[:, _X] > xlo) & (data[:, _X] < xhi)
    m &= (data[:, _Y] > ylo) & (data[:, _Y] < yhi)
    m &= (data[:, _Z] > zlo) & (data[:, _Z] < zhi)
    return not bool(np.any(m))
