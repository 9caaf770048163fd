"""Largest monochromatic rectangle of arbitrary orientation (2D).

Candidate anchors follow the two-points-on-a-side rule: every non-degenerate
optimum has a side through an obstacle-colored point p and a second point q.
Each anchored pair is processed in place by the compiled sweep engine: the
side's points are partitioned to the front of the array, its obstacles sorted
by height above the line, its targets arranged into a rotated-frame 2-d tree,
and the sweep shrinks the admissible interval obstacle by obstacle.
Degenerate optima (zero-extent points, zero-height strips on a line) are
covered by dedicated scans so the solver stays total on tied or collinear
inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as _k
from .geom import BLUE, NEG_INF, POS_INF, RED, PointSet, check_frame_safe, frame_coords, Frame
from .kdtree import QueryScratch


@dataclass
class RectWitness:
    """Solution geometry in frame coordinates (bottom edge is always v=0)."""

    kind: str                      # "empty" | "all" | "point" | "line" | "pair"
    color: int = RED
    p: tuple[int, int, int] | None = None    # (x, y, id)
    q: tuple[int, int, int] | None = None
    side: int = 1
    left: int = NEG_INF
    right: int = POS_INF
    top: int = POS_INF             # v-bound; 0 for degenerate strips


@dataclass
class RectResult:
    size: int
    witness: RectWitness
    pairs_processed: int = 0
    nodes_visited: int = 0

    def merged(self, other: "RectResult") -> "RectResult":
        best = self if self.size >= other.size else other
        return RectResult(best.size, best.witness,
                          self.pairs_processed + other.pairs_processed,
                          self.nodes_visited + other.nodes_visited)


def _row_tuple(data: np.ndarray, row: int) -> tuple[int, int, int]:
    return int(data[row, 0]), int(data[row, 1]), int(data[row, 3])


def solve_lrr(ps: PointSet, target: int = RED) -> RectResult:
    """Largest rectangle holding only `target` points in its open interior,
    sized by closed counting.  Mutates the array in place; afterwards it is a
    permutation of the input."""
    check_frame_safe(ps)
    data = ps.data
    n = data.shape[0]
    obs = 1 - target
    n_target = int(np.count_nonzero(data[:, 2] == target))
    n_obs = n - n_target
    if n == 0:
        return RectResult(0, RectWitness("empty", color=target))
    if n_obs == 0:
        return RectResult(n_target, RectWitness("all", color=target))

    res = np.zeros(_k.RES_LEN, dtype=np.int64)
    best = 0
    witness = RectWitness("empty", color=target)

    _k.best_multiplicity(data, n, target, res)
    if int(res[0]) > best:
        row = _k.find_row_by_id(data, n, 3, int(res[1]))
        pt = _row_tuple(data, int(row))
        best = int(res[0])
        witness = RectWitness("point", color=target, p=pt, q=pt, left=0, right=0, top=0)

    _k.best_collinear(data, n, target, res)
    if int(res[0]) > best:
        r1 = _k.find_row_by_id(data, n, 3, int(res[1]))
        p = _row_tuple(data, int(r1))
        r2 = _k.find_row_by_id(data, n, 3, int(res[2]))
        q = _row_tuple(data, int(r2))
        best = int(res[0])
        witness = RectWitness("line", color=target, p=p, q=q, top=0)

    scratch = QueryScratch(2)
    pairs = 0
    visited = 0
    for aid in range(n):
        ra = int(_k.find_row_by_id(data, n, 3, aid))
        ax, ay, ac = int(data[ra, 0]), int(data[ra, 1]), int(data[ra, 2])
        for bid in range(aid + 1, n):
            rb = int(_k.find_row_by_id(data, n, 3, bid))
            bx, by, bc = int(data[rb, 0]), int(data[rb, 1]), int(data[rb, 2])
            if ac == obs:
                p, q = (ax, ay, aid), (bx, by, bid)
            elif bc == obs:
                p, q = (bx, by, bid), (ax, ay, aid)
            else:
                continue
            if p[0] == q[0] and p[1] == q[1]:
                continue
            pairs += 1
            for side in (1, -1):
                _k.lmr_pair_side(data, n, p[0], p[1], q[0], q[1], side, obs,
                                 scratch.buf, res)
                visited += int(res[_k.R_VISITED])
                if side == 1 and int(res[_k.R_LINE]) > best:
                    best = int(res[_k.R_LINE])
                    witness = RectWitness("line", color=target, p=p, q=q, top=0)
                if int(res[_k.R_ABORT]):
                    break
                if int(res[_k.R_BEST]) > best:
                    best = int(res[_k.R_BEST])
                    witness = RectWitness(
                        "pair", color=target, p=p, q=q, side=side,
                        left=int(res[_k.R_ALPHA]), right=int(res[_k.R_BETA]),
                        top=POS_INF if int(res[_k.R_TOPOPEN]) else int(res[_k.R_TOP]),
                    )
    return RectResult(best, witness, pairs, visited)


def solve_lmr(ps: PointSet) -> RectResult:
    """Largest monochromatic rectangle: best of the red- and blue-target
    solves, ties resolved toward red."""
    red = solve_lrr(ps, RED)
    blue = solve_lrr(ps, BLUE)
    winner = red if red.size >= blue.size else blue
    return RectResult(winner.size, winner.witness,
                      red.pairs_processed + blue.pairs_processed,
                      red.nodes_visited + blue.nodes_visited)


# ---------------------------------------------------------------------------
# Witness verification (self-certification and tests)
# ---------------------------------------------------------------------------

def rescan_witness(ps: PointSet, w: RectWitness) -> int:
    """Recount the witness rectangle by a direct exact scan."""
    data = ps.data
    target = w.color
    if w.kind == "empty":
        return 0
    if w.kind == "all":
        return int(np.count_nonzero(data[:, 2] == target))
    if w.kind == "point":
        px, py, _ = w.p
        m = (data[:, 0] == px) & (data[:, 1] == py) & (data[:, 2] == target)
        return int(np.count_nonzero(m))
    f = Frame.from_pair(w.p[0], w.p[1], w.q[0], w.q[1])
    count = 0
    for r in range(data.shape[0]):
        if int(data[r, 2]) != target:
            continue
        u, v = frame_coords(int(data[r, 0]), int(data[r, 1]), f)
        v *= w.side
        if w.kind == "line":
            if v == 0:
                count += 1
        else:
            top = None if w.top == POS_INF else w.top
            if 0 <= v and (top is None or v <= top):
                lo_ok = w.left == NEG_INF or u >= w.left
                hi_ok = w.right == POS_INF or u <= w.right
                if lo_ok and hi_ok:
                    count += 1
    return count


def witness_interior_empty(ps: PointSet, w: RectWitness) -> bool:
    """No obstacle-colored point strictly inside the witness rectangle."""
    if w.kind in ("empty", "all", "point", "line"):
        return True  # no open interior
    data = ps.data
    obs = 1 - w.color
    f = Frame.from_pair(w.p[0], w.p[1], w.q[0], w.q[1])
    for r in range(data.shape[0]):
        if int(data[r, 2]) != obs:
            continue
        u, v = frame_coords(int(data[r, 0]), int(data[r, 1]), f)
        v *= w.side
        if v <= 0:
            continue
        if w.top != POS_INF and v >= w.top:
            continue
        lo_in = w.left == NEG_INF or u > w.left
        hi_in = w.right == POS_INF or u < w.right
        if lo_in and hi_in:
            return False
    return True
