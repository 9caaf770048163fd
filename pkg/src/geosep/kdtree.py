"""Array-implicit k-d tree with O(1)-scratch construction and queries.

The tree is a permutation of the point rows: row ``base`` is node 1, the
children of node i are nodes 2i and 2i+1, its parent is node i//2.  Levels
0..h-1 are full and the bottom level is packed to the left, so subtree sizes
follow from index arithmetic alone and no per-node bookkeeping is stored.
Smaller keys go to the left subtree; ties are broken lexicographically from
the splitting dimension and finally by the stable id column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as _k
from .geom import NEG_INF, POS_INF

AXIS = 0
FRAME = 1


def floor_log2(n: int) -> int:
    return n.bit_length() - 1


def root_rank(size: int) -> int:
    """Rank of the block median: left-subtree size of a left-aligned complete
    tree with ``size`` nodes, plus one."""
    if size <= 1:
        return 1
    t = floor_log2(size)
    eps = size - (1 << t) + 1
    half = 1 << (t - 1)
    return half + min(eps, half)


@dataclass(frozen=True)
class LevelBlocks:
    """Block structure of one tree level (single source of truth for build
    and subtree_size)."""

    level: int
    k_i: int            # number of full subtrees at this level
    K1: int
    K2: int
    K3: int
    kappa: int
    blocks: tuple[tuple[int, int], ...]  # (start node index, size), 1-based


def block_params(n: int, level: int) -> LevelBlocks:
    """Blocks partitioning node indices [2^level .. n] of an n-node tree."""
    if n < 1:
        raise ValueError("empty tree has no levels")
    h = floor_log2(n)
    if not 0 <= level <= h:
        raise ValueError(f"level {level} out of range for n={n}")
    kappa = n - (1 << h) + 1
    k_i = kappa >> (h - level)
    K1 = (1 << (h + 1 - level)) - 1
    K3 = (1 << (h - level)) - 1
    K2 = K3 + kappa - (k_i << (h - level))
    nodes = kappa if level == h else (1 << level)
    blocks = []
    start = 1 << level
    for j in range(nodes):
        size = K1 if j < k_i else (K2 if j == k_i else K3)
        if size > 0:
            blocks.append((start, size))
        start += size
    return LevelBlocks(level, k_i, K1, K2, K3, kappa, tuple(blocks))


def subtree_size(n: int, t: int) -> int:
    """On-the-fly subtree size of node t (1-based) in an n-node tree."""
    if not 1 <= t <= n:
        raise ValueError(f"node {t} out of range for n={n}")
    h = floor_log2(n)
    kappa = n - (1 << h) + 1
    lev = floor_log2(t)
    r = t - (1 << lev) + 1
    k_l = kappa >> (h - lev)
    if r <= k_l:
        return (1 << (h + 1 - lev)) - 1
    K3 = (1 << (h - lev)) - 1
    if r == k_l + 1:
        return K3 + kappa - (k_l << (h - lev))
    return K3


class QueryScratch:
    """Constant-size query workspace: 2k boundary slots plus their setter
    levels.  One per concurrent query stream; size is independent of n."""

    def __init__(self, k: int):
        if k not in (2, 3):
            raise ValueError("k must be 2 or 3")
        self.k = k
        self.buf = np.full(4 * k, -1, dtype=np.int64)

    def reset(self) -> None:
        self.buf[2 * self.k:] = -1


def _clip_bound(v) -> int:
    if v == math.inf:
        return POS_INF
    if v == -math.inf:
        return NEG_INF
    return int(v)


class ImplicitKdTree:
    """Handle over a built tree region inside a row matrix.

    ``mode=AXIS`` keys dimension d from column d; ``mode=FRAME`` (k=2 only)
    derives exact rotated-frame keys u, v from columns 0,1 and the frame
    parameters, computing them on demand so no transformed copies are stored.
    """

    def __init__(self, data: np.ndarray, base: int, count: int, k: int,
                 idcol: int, mode: int = AXIS, frame_params=(0, 0, 0, 0), sgn: int = 1):
        self.data = data
        self.base = base
        self.count = count
        self.k = k
        self.idcol = idcol
        self.mode = mode
        self.px, self.py, self.dx, self.dy = (int(v) for v in frame_params)
        self.sgn = sgn
        self.last_visited = 0

    @classmethod
    def build(cls, data: np.ndarray, base: int, count: int, k: int, idcol: int,
              mode: int = AXIS, frame_params=(0, 0, 0, 0), sgn: int = 1) -> "ImplicitKdTree":
        tree = cls(data, base, count, k, idcol, mode, frame_params, sgn)
        _k.kd_build(data, base, count, k, idcol, mode,
                    tree.px, tree.py, tree.dx, tree.dy, sgn)
        return tree

    def _bounds(self, box) -> list[int]:
        if len(box) != self.k:
            raise ValueError(f"box must have {self.k} dimensions")
        vals = []
        for lo, hi in box:
            lo, hi = _clip_bound(lo), _clip_bound(hi)
            if lo > hi:
                raise ValueError("box interval with lo > hi")
            vals += [lo, hi]
        while len(vals) < 6:
            vals += [0, 0]
        return vals

    def count_in_range(self, box, scratch: QueryScratch | None = None) -> int:
        if scratch is None:
            scratch = QueryScratch(self.k)
        b = self._bounds(box)
        cnt, visited = _k.kd_count(self.data, self.base, self.count, self.k,
                                   self.idcol, self.mode, self.px, self.py,
                                   self.dx, self.dy, self.sgn,
                                   b[0], b[1], b[2], b[3], b[4], b[5], scratch.buf)
        self.last_visited = visited
        return int(cnt)

    def report_in_range(self, box, visitor=None, scratch: QueryScratch | None = None,
                        out: np.ndarray | None = None) -> int:
        """Invoke ``visitor(row_index)`` once per point inside the closed box;
        returns the hit count.  ``out`` (int64, length >= count) may be
        supplied to avoid allocation."""
        if scratch is None:
            scratch = QueryScratch(self.k)
        if out is None:
            out = np.empty(max(self.count, 1), dtype=np.int64)
        b = self._bounds(box)
        hits, visited = _k.kd_report(self.data, self.base, self.count, self.k,
                                     self.idcol, self.mode, self.px, self.py,
                                     self.dx, self.dy, self.sgn,
                                     b[0], b[1], b[2], b[3], b[4], b[5],
                                     scratch.buf, out)
        self.last_visited = visited
        if visitor is not None:
            for i in range(hits):
                visitor(int(out[i]))
        return int(hits)

    # -- introspection used by the structural tests ------------------------

    def key(self, node: int, d: int) -> int:
        row = self.base + node - 1
        if self.mode == AXIS:
            return int(self.data[row, d])
        rx = int(self.data[row, 0]) - self.px
        ry = int(self.data[row, 1]) - self.py
        if d == 0:
            return self.dx * rx + self.dy * ry
        return self.sgn * (self.dx * ry - self.dy * rx)

    def sort_key(self, node: int, d0: int) -> tuple:
        keys = tuple(self.key(node, (d0 + t) % self.k) for t in range(self.k))
        return keys + (int(self.data[self.base + node - 1, self.idcol]),)

    def check_partition_invariant(self) -> None:
        """Walk every node and verify both subtrees respect the split order."""
        n = self.count
        for t in range(1, n + 1):
            lev = floor_log2(t)
            d = lev % self.k
            me = self.sort_key(t, d)
            stack = [(2 * t, True), (2 * t + 1, False)]
            while stack:
                node, left = stack.pop()
                if node > n:
                    continue
                other = self.sort_key(node, d)
                if left and not other < me:
                    raise AssertionError(f"left-subtree violation at node {t}")
                if not left and not me < other:
                    raise AssertionError(f"right-subtree violation at node {t}")
                stack.append((2 * node, left))
                stack.append((2 * node + 1, left))


def select_and_partition(data: np.ndarray, lo: int, hi: int, rank: int,
                         d0: int, k: int, idcol: int, mode: int = AXIS,
                         frame_params=(0, 0, 0, 0), sgn: int = 1) -> None:
    """Place the rank-th row (by the total order from dimension d0) at ``lo``
    with earlier rows before it and later rows after it; O(1) scratch."""
    if not 1 <= rank <= hi - lo:
        raise ValueError("rank out of range")
    px, py, dx, dy = (int(v) for v in frame_params)
    _k._select_head(data, lo, hi, rank, d0, k, idcol, mode, px, py, dx, dy, sgn)
