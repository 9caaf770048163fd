"""Independent brute-force references used by the tests and `verify`.

These are deliberately simple: straight enumeration over candidate boundary
values with linear scans (numpy masks), structurally unrelated to the
optimized solvers.  They share only the exact-arithmetic conventions: counts
and weights use closed bounds, emptiness means no obstacle with strictly
interior coordinates, and degenerate (zero-extent) rectangles are admitted.
"""

from __future__ import annotations

import numpy as np

from .geom import BLUE, NEG_INF, POS_INF, RED, PointSet
from .kdtree import root_rank

LMR_CAP = 40
LWR_CAP = 30
LMC_CAP = 24


class CapExceeded(ValueError):
    """Instance too large for a brute-force oracle (CLI exit code 3)."""


# ---------------------------------------------------------------------------
# k-d tree references
# ---------------------------------------------------------------------------

def brute_count(data: np.ndarray, k: int, box) -> int:
    """Closed-box membership by linear scan over the first k columns."""
    mask = np.ones(data.shape[0], dtype=bool)
    for d, (lo, hi) in enumerate(box):
        col = data[:, d]
        mask &= (col >= lo) & (col <= hi)
    return int(np.count_nonzero(mask))


def brute_report_ids(data: np.ndarray, k: int, box, idcol: int) -> list[int]:
    mask = np.ones(data.shape[0], dtype=bool)
    for d, (lo, hi) in enumerate(box):
        col = data[:, d]
        mask &= (col >= lo) & (col <= hi)
    return sorted(int(v) for v in data[mask, idcol])


def complete_tree_size(n: int, t: int) -> int:
    """Subtree size straight from the recurrence on a left-aligned complete
    tree: node t exists iff t <= n, children are 2t and 2t+1."""
    if t > n:
        return 0
    total = 0
    stack = [t]
    while stack:
        node = stack.pop()
        if node > n:
            continue
        total += 1
        stack.append(2 * node)
        stack.append(2 * node + 1)
    return total


def reference_kd_order(rows: list, k: int, key, ident) -> list:
    """Recursive pointer-style k-d tree build with the same total order as
    the in-place construction; returns items in implicit-array order."""
    n = len(rows)
    out: list = [None] * n
    work = [(1, list(rows), 0)]
    while work:
        node, pool, level = work.pop()
        if not pool:
            continue
        d = level % k
        pool.sort(key=lambda it: tuple(key(it, (d + t) % k) for t in range(k)) + (ident(it),))
        r = root_rank(len(pool))
        out[node - 1] = pool[r - 1]
        work.append((2 * node, pool[: r - 1], level + 1))
        work.append((2 * node + 1, pool[r:], level + 1))
    return out


# ---------------------------------------------------------------------------
# Largest monochromatic rectangle (arbitrary orientation)
# ---------------------------------------------------------------------------

def _lrr_frame_best(xs, ys, colors, target: int, obs: int, pi: int, qi: int) -> int:
    """Best rectangle size for one anchored pair over both sides of its line."""
    px, py = int(xs[pi]), int(ys[pi])
    dx = int(xs[qi]) - px
    dy = int(ys[qi]) - py
    uq = dx * dx + dy * dy
    rx = xs - px
    ry = ys - py
    u = dx * rx + dy * ry
    v0 = dx * ry - dy * rx

    online = v0 == 0
    line_best = int(np.count_nonzero(online & (colors == target)))

    onobs = online & (colors == obs) & (u != 0) & (u != uq)
    if np.any(onobs & (u > 0) & (u < uq)):
        return line_best
    left = u[onobs & (u < 0)]
    right = u[onobs & (u > uq)]
    alpha0 = int(left.max()) if left.size else NEG_INF
    beta0 = int(right.min()) if right.size else POS_INF

    best = line_best
    for sgn in (1, -1):
        v = sgn * v0
        sideobs = (colors == obs) & (v > 0)
        sidetgt = (colors == target) & (v >= 0)
        stoppers = v[sideobs & (u >= 0) & (u <= uq)]
        vstop = int(stoppers.min()) if stoppers.size else None
        tops = sorted({int(t) for t in v[sideobs]})
        if vstop is not None:
            tops = [t for t in tops if t <= vstop]
            open_top = False
        else:
            open_top = True
        for T in tops + ([POS_INF] if open_top else []):
            threats = sideobs & (v > 0) & (v < T)
            tl = u[threats & (u <= 0)]
            tr = u[threats & (u >= uq)]
            lo = max(alpha0, int(tl.max()) if tl.size else NEG_INF)
            hi = min(beta0, int(tr.min()) if tr.size else POS_INF)
            cnt = int(np.count_nonzero(sidetgt & (u >= lo) & (u <= hi) & (v <= T)))
            if cnt > best:
                best = cnt
    return best


def _brute_lrr_one_color(data: np.ndarray, target: int) -> int:
    obs = 1 - target
    xs = data[:, 0].astype(object)
    ys = data[:, 1].astype(object)
    colors = data[:, 2]
    n = data.shape[0]
    if not np.any(colors == obs):
        return int(np.count_nonzero(colors == target))
    best = 0
    # zero-extent rectangles at a single location
    tmask = colors == target
    if np.any(tmask):
        locs, counts = np.unique(data[tmask][:, :2], axis=0, return_counts=True)
        best = int(counts.max())
    # degenerate strips: the full line through two target points
    tidx = np.flatnonzero(tmask)
    for ii in range(len(tidx)):
        for jj in range(ii + 1, len(tidx)):
            i, j = tidx[ii], tidx[jj]
            ddx = xs[j] - xs[i]
            ddy = ys[j] - ys[i]
            if ddx == 0 and ddy == 0:
                continue
            coll = ddx * (ys - ys[i]) - ddy * (xs - xs[i]) == 0
            best = max(best, int(np.count_nonzero(coll & tmask)))
    # anchored pairs: obstacle anchor, any distinct second point
    for pi in range(n):
        if colors[pi] != obs:
            continue
        for qi in range(n):
            if qi == pi or (xs[qi] == xs[pi] and ys[qi] == ys[pi]):
                continue
            if colors[qi] == obs and qi < pi:
                continue  # unordered for obstacle pairs
            best = max(best, _lrr_frame_best(xs, ys, colors, target, obs, pi, qi))
    return best


def brute_lmr(ps: PointSet, cap: int = LMR_CAP) -> tuple[int, int]:
    """(size, color) of the largest monochromatic rectangle; color tie -> red."""
    if len(ps) > cap:
        raise CapExceeded(f"brute_lmr cap is {cap} points")
    red = _brute_lrr_one_color(ps.data, RED)
    blue = _brute_lrr_one_color(ps.data, BLUE)
    return (red, RED) if red >= blue else (blue, BLUE)


def brute_lrr_for_pair(ps: PointSet, pid: int, qid: int) -> int:
    """Restricted oracle: best size anchored by one specific pair (tests)."""
    data = ps.data
    pi = int(np.flatnonzero(data[:, 3] == pid)[0])
    qi = int(np.flatnonzero(data[:, 3] == qid)[0])
    xs = data[:, 0].astype(object)
    ys = data[:, 1].astype(object)
    return _lrr_frame_best(xs, ys, data[:, 2], RED, BLUE, pi, qi)


# ---------------------------------------------------------------------------
# Maximum-weight rectangle
# ---------------------------------------------------------------------------

def _lwr_frame_best(xs, ys, ws, pi: int, qi: int, axis_dir=None):
    """Best weight over rectangles whose bottom side lies on the pair line
    and spans the pair; both sides of the line."""
    px, py = int(xs[pi]), int(ys[pi])
    if axis_dir is None:
        dx = int(xs[qi]) - px
        dy = int(ys[qi]) - py
        uq = dx * dx + dy * dy
    else:
        dx, dy = axis_dir
        uq = 0
    rx = xs - px
    ry = ys - py
    u = dx * rx + dy * ry
    v0 = dx * ry - dy * rx
    best = None
    for sgn in (1, -1):
        v = sgn * v0
        side = v >= 0
        tops = sorted({int(t) for t in v[side]}) + [POS_INF]
        for T in tops:
            sel = side & (v <= T)
            pts = sorted((int(a), int(b)) for a, b in zip(u[sel], ws[sel]))
            m = len(pts)
            prefix = [0] * (m + 1)
            for i in range(m):
                prefix[i + 1] = prefix[i] + pts[i][1]

            def is_cut(p: int) -> bool:
                # a boundary cannot split a group of equal projections
                return p == 0 or p == m or pts[p - 1][0] != pts[p][0]

            lo_cut = sum(1 for uu, _ in pts if uu < 0)
            hi_cut = sum(1 for uu, _ in pts if uu <= uq)
            lmin = min(prefix[p] for p in range(lo_cut + 1) if is_cut(p))
            rmax = max(prefix[q] for q in range(hi_cut, m + 1) if is_cut(q))
            cand = rmax - lmin
            if best is None or cand > best:
                best = cand
    return best


def _brute_lwr_axis(data: np.ndarray) -> int | None:
    """Exhaustive axis-parallel check: every y-range from coordinate values,
    best x-run by subarray scan (non-empty)."""
    ys = sorted({int(y) for y in data[:, 1]})
    ybounds = [NEG_INF] + ys + [POS_INF]
    best = None
    for i, ylo in enumerate(ybounds):
        for yhi in ybounds[i:]:
            sel = (data[:, 1] >= ylo) & (data[:, 1] <= yhi)
            if not np.any(sel):
                continue
            xs = data[sel][:, 0]
            ws = data[sel][:, 2]
            order = np.argsort(xs, kind="stable")
            xs = xs[order]
            ws = ws[order]
            # group equal x, then best contiguous group run (Kadane, non-empty)
            groups = []
            j = 0
            while j < len(xs):
                e = j
                s = 0
                while e < len(xs) and xs[e] == xs[j]:
                    s += int(ws[e])
                    e += 1
                groups.append(s)
                j = e
            run = None
            cur = 0
            for g in groups:
                cur = max(g, cur + g)
                run = cur if run is None else max(run, cur)
            if best is None or run > best:
                best = run
    return best


def brute_lwr(ps: PointSet, cap: int = LWR_CAP) -> int:
    """Maximum rectangle weight (scaled integer)."""
    if len(ps) > cap:
        raise CapExceeded(f"brute_lwr cap is {cap} points")
    data = ps.data
    if data.shape[0] == 0:
        return 0
    xs = data[:, 0].astype(object)
    ys = data[:, 1].astype(object)
    ws = data[:, 2].astype(object)
    best = _brute_lwr_axis(data)
    reds = np.flatnonzero(data[:, 2] > 0)
    for a in range(len(reds)):
        for b in range(a + 1, len(reds)):
            i, j = int(reds[a]), int(reds[b])
            if xs[i] == xs[j] and ys[i] == ys[j]:
                continue
            cand = _lwr_frame_best(xs, ys, ws, i, j)
            if cand is not None and (best is None or cand > best):
                best = cand
    for i in (int(r) for r in reds):
        for axis_dir in ((1, 0), (0, 1)):
            cand = _lwr_frame_best(xs, ys, ws, i, i, axis_dir=axis_dir)
            if cand is not None and (best is None or cand > best):
                best = cand
    return int(best)


# ---------------------------------------------------------------------------
# Largest monochromatic cuboid (3D, axis-parallel)
# ---------------------------------------------------------------------------

def _brute_lrc_one_color(data: np.ndarray, target: int, zmode: str = "any") -> int:
    """Best cuboid size; ``zmode`` restricts the top/bottom face family:
    "type1" both faces on the region, "type2" bottom through an obstacle
    strictly inside the open xy-rectangle, "type3" top through such an
    obstacle (bottom anywhere, closed containment).  Returns -1 when the
    family is empty."""
    obs = 1 - target
    tmask = data[:, 3] == target
    omask = data[:, 3] == obs
    if not np.any(omask):
        return int(np.count_nonzero(tmask)) if zmode in ("any", "type1") else -1
    tx, ty, tz = data[tmask][:, 0], data[tmask][:, 1], data[tmask][:, 2]
    ox, oy, oz = data[omask][:, 0], data[omask][:, 1], data[omask][:, 2]
    zvals = sorted({int(z) for z in oz})
    zlos = [NEG_INF] + zvals
    zhis = zvals + [POS_INF]
    xvals = sorted({int(x) for x in ox})
    xbounds = [NEG_INF] + xvals + [POS_INF]
    best = -1
    for zlo in zlos:
        for zhi in zhis:
            if zhi < zlo:
                continue
            if zmode == "type1" and (zlo != NEG_INF or zhi != POS_INF):
                continue
            if zmode == "type2" and (zlo == NEG_INF or zhi != POS_INF):
                continue
            if zmode == "type3" and zhi == POS_INF:
                continue
            slab = (oz > zlo) & (oz < zhi)
            sx, sy = ox[slab], oy[slab]
            tin = (tz >= zlo) & (tz <= zhi)
            for i, xlo in enumerate(xbounds):
                for xhi in xbounds[i:]:
                    inx = (sx > xlo) & (sx < xhi)
                    ybreaks = sorted({int(y) for y in sy[inx]})
                    ygaps = zip([NEG_INF] + ybreaks, ybreaks + [POS_INF])
                    txin = tin & (tx >= xlo) & (tx <= xhi)
                    for ylo, yhi in ygaps:
                        if zmode == "type2":
                            anchored = (oz == zlo) & (ox > xlo) & (ox < xhi) & (oy > ylo) & (oy < yhi)
                            if not np.any(anchored):
                                continue
                        if zmode == "type3":
                            top = (oz == zhi) & (ox > xlo) & (ox < xhi) & (oy > ylo) & (oy < yhi)
                            if not np.any(top):
                                continue
                            if zlo != NEG_INF:
                                bot = (oz == zlo) & (ox >= xlo) & (ox <= xhi) & (oy >= ylo) & (oy <= yhi)
                                if not np.any(bot):
                                    continue
                        cnt = int(np.count_nonzero(txin & (ty >= ylo) & (ty <= yhi)))
                        if cnt > best:
                            best = cnt
    return best


def brute_lmc(ps: PointSet, cap: int = LMC_CAP) -> tuple[int, int]:
    """(size, color) of the largest axis-parallel monochromatic cuboid."""
    if len(ps) > cap:
        raise CapExceeded(f"brute_lmc cap is {cap} points")
    red = _brute_lrc_one_color(ps.data, RED)
    blue = _brute_lrc_one_color(ps.data, BLUE)
    return (red, RED) if red >= blue else (blue, BLUE)


def brute_lrc_restricted(ps: PointSet, target: int, zmode: str,
                         cap: int = LMC_CAP) -> int:
    """Family-restricted cuboid oracle (see _brute_lrc_one_color); -1 when
    the family has no candidate."""
    if len(ps) > cap:
        raise CapExceeded(f"brute_lmc cap is {cap} points")
    return _brute_lrc_one_color(ps.data, target, zmode)


# ---------------------------------------------------------------------------
# Stairs and maximal-empty-rectangle references
# ---------------------------------------------------------------------------

def staircase_from_scratch(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Minimal dominance frontier of (X, Y) >= 0 points, insertion order
    breaking exact-coordinate ties (first arrival survives); sorted by
    ascending X (descending Y)."""
    kept: list[tuple[int, int]] = []
    for idx, (x, y) in enumerate(points):
        dominated = False
        for jdx, (qx, qy) in enumerate(points):
            if jdx == idx:
                continue
            if qx <= x and qy <= y and (qx < x or qy < y or jdx < idx):
                dominated = True
                break
        if not dominated:
            kept.append((x, y))
    kept.sort()
    return kept


def naive_mers(obstacles: list[tuple[int, int]],
               must_interior: tuple[int, int] | None = None,
               must_closed: tuple[int, int] | None = None) -> set[tuple[int, int, int, int]]:
    """All maximal empty rectangles among obstacle points in the open plane.

    A rectangle (W, S, E, N) is maximal when every side either lies at the
    (infinite) region boundary or passes through an obstacle whose other
    coordinate is strictly inside.  Optional containment filters: a point the
    rectangle must hold strictly inside, and one it must hold closed.
    """
    xs = sorted({x for x, _ in obstacles})
    ys = sorted({y for _, y in obstacles})
    wvals = [NEG_INF] + xs
    evals = xs + [POS_INF]
    svals = [NEG_INF] + ys
    nvals = ys + [POS_INF]
    out = set()
    for W in wvals:
        for E in evals:
            if E <= W:
                continue  # degenerate widths are never maximal
            for S in svals:
                for N in nvals:
                    if N <= S:
                        continue
                    if any(W < x < E and S < y < N for x, y in obstacles):
                        continue
                    ok = True
                    if W != NEG_INF and not any(x == W and S < y < N for x, y in obstacles):
                        ok = False
                    if ok and E != POS_INF and not any(x == E and S < y < N for x, y in obstacles):
                        ok = False
                    if ok and S != NEG_INF and not any(y == S and W < x < E for x, y in obstacles):
                        ok = False
                    if ok and N != POS_INF and not any(y == N and W < x < E for x, y in obstacles):
                        ok = False
                    if not ok:
                        continue
                    if must_interior is not None:
                        mx, my = must_interior
                        if not (W < mx < E and S < my < N):
                            continue
                    if must_closed is not None:
                        mx, my = must_closed
                        if not (W <= mx <= E and S <= my <= N):
                            continue
                    out.add((W, S, E, N))
    return out
