"""Maximum-weight rectangle of arbitrary orientation (signed weights).

Anchored by pairs of positive-weight points (plus per-point axis-parallel
frames for the corner-degenerate case).  Each anchored side sweeps the half
plane upward, maintaining cumulative projected weights in a weight-balanced
leaf-search tree with deferred suffix updates: inserting a projection adds
its weight to the EXCESS of every subtree hanging right of the search path.
Unlike the monochromatic solvers this one deliberately uses linear extra
storage; the tree lives outside the input array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geom import NEG_INF, POS_INF, PointSet, check_frame_safe

_ALPHA_NUM = 1   # weight-balance bounds: alpha = 1/4
_ALPHA_DEN = 4


class _Leaf:
    __slots__ = ("key", "w", "own")

    def __init__(self, key: int, w: int, own: int):
        self.key = key   # distinct projection value
        self.w = w       # cumulative weight, relative to ancestor EXCESS
        self.own = own   # total weight inserted at exactly this key


class _Node:
    __slots__ = ("key", "left", "right", "excess", "mn", "mx", "size")

    def __init__(self, key, left, right):
        self.key = key       # max key in the left subtree
        self.left = left
        self.right = right
        self.excess = 0
        self.mn = 0
        self.mx = 0
        self.size = 0


def _is_leaf(node) -> bool:
    return isinstance(node, _Leaf)


def _mn(node) -> int:
    return node.w if _is_leaf(node) else node.mn


def _mx(node) -> int:
    return node.w if _is_leaf(node) else node.mx


def _size(node) -> int:
    return 1 if _is_leaf(node) else node.size


def _add_excess(node, w: int) -> None:
    if _is_leaf(node):
        node.w += w
    else:
        node.excess += w
        node.mn += w
        node.mx += w


def _refresh(node: _Node) -> None:
    node.mn = node.excess + min(_mn(node.left), _mn(node.right))
    node.mx = node.excess + max(_mx(node.left), _mx(node.right))
    node.size = _size(node.left) + _size(node.right)


class WeightTree:
    """Weight-balanced leaf-search tree over projection keys.

    Each leaf holds one distinct key and its cumulative weight W (sum of all
    inserted weights with key at most its own); internal nodes carry a
    deferred additive EXCESS plus subtree MIN/MAX of effective W.  The
    effective W of a leaf is its stored value plus the EXCESS of all
    ancestors.
    """

    def __init__(self):
        self.root = None
        self.total = 0
        self.rebuilds = 0

    def __len__(self) -> int:
        return 0 if self.root is None else _size(self.root)

    def insert(self, key: int, w: int) -> None:
        self.total += w
        if self.root is None:
            self.root = _Leaf(key, w, w)
            return
        node = self.root
        path: list[_Node] = []
        while not _is_leaf(node):
            # lazily propagate the pending delta before stepping through
            if node.excess:
                _add_excess(node.left, node.excess)
                _add_excess(node.right, node.excess)
                node.excess = 0
            path.append(node)
            if key <= node.key:
                _add_excess(node.right, w)  # every key beyond the split gains w
                node = node.left
            else:
                node = node.right
        if node.key == key:
            node.w += w
            node.own += w
        else:
            if key > node.key:
                new = _Leaf(key, node.w + w, w)
                inner = _Node(node.key, node, new)
            else:
                new = _Leaf(key, node.w - node.own + w, w)
                node.w += w  # the split leaf sits right of the new key
                inner = _Node(key, new, node)
            _refresh(inner)
            if path:
                parent = path[-1]
                if parent.left is node:
                    parent.left = inner
                else:
                    parent.right = inner
            else:
                self.root = inner
        highest_bad = None
        for nd in reversed(path):
            _refresh(nd)
        for nd in path:
            s = nd.size
            if _size(nd.left) * _ALPHA_DEN < s * _ALPHA_NUM or \
               _size(nd.right) * _ALPHA_DEN < s * _ALPHA_NUM:
                highest_bad = nd
                break
        if highest_bad is not None:
            self._rebuild(highest_bad)

    def _rebuild(self, node: _Node) -> None:
        """Rebuild a subtree perfectly balanced, materializing EXCESS."""
        self.rebuilds += 1
        leaves: list[tuple[int, int, int]] = []
        stack = [(node, 0)]
        while stack:
            nd, acc = stack.pop()
            if _is_leaf(nd):
                leaves.append((nd.key, nd.w + acc, nd.own))
            else:
                acc += nd.excess
                stack.append((nd.right, acc))
                stack.append((nd.left, acc))
        leaves.sort()

        def build(lo: int, hi: int):
            if hi - lo == 1:
                k, w, own = leaves[lo]
                return _Leaf(k, w, own)
            mid = (lo + hi) // 2
            left = build(lo, mid)
            right = build(mid, hi)
            inner = _Node(leaves[mid - 1][0], left, right)
            _refresh(inner)
            return inner

        fresh = build(0, len(leaves))
        # graft in place of the old node (object identity swap)
        if _is_leaf(fresh):
            return  # single leaf cannot be unbalanced
        node.key = fresh.key
        node.left = fresh.left
        node.right = fresh.right
        node.excess = fresh.excess
        node.mn = fresh.mn
        node.mx = fresh.mx
        node.size = fresh.size

    def prefix_min(self, bound: int):
        """(W, key) of the minimum effective W among leaves with key < bound,
        or None when no leaf qualifies."""
        return self._extreme(bound, lower=True)

    def suffix_max(self, bound: int):
        """(W, key) of the maximum effective W among leaves with key > bound."""
        return self._extreme(bound, lower=False)

    def at_or_below(self, bound: int):
        """(W, key) of the leaf with the largest key <= bound (the rectangle
        whose right edge passes exactly through the boundary projection)."""
        if self.root is None:
            return None
        node = self.root
        acc = 0
        fallback = None   # (subtree, acc) whose keys are all <= bound
        while not _is_leaf(node):
            acc += node.excess
            if bound > node.key:
                fallback = (node.left, acc)
                node = node.right
            else:
                node = node.left
        if node.key <= bound:
            return acc + node.w, node.key
        if fallback is None:
            return None
        node, acc = fallback
        while not _is_leaf(node):
            acc += node.excess
            node = node.right
        return acc + node.w, node.key

    def _extreme(self, bound: int, lower: bool):
        if self.root is None:
            return None
        best = None      # (value, subtree-or-leaf, acc)
        node = self.root
        acc = 0
        while not _is_leaf(node):
            acc_child = acc + node.excess
            if lower:
                if node.key < bound:
                    val = acc_child + _mn(node.left)
                    if best is None or val < best[0]:
                        best = (val, node.left, acc_child)
                    node = node.right
                else:
                    node = node.left
            else:
                if node.key >= bound:
                    val = acc_child + _mx(node.right)
                    if best is None or val > best[0]:
                        best = (val, node.right, acc_child)
                    node = node.left
                else:
                    node = node.right
            acc = acc_child
        if (lower and node.key < bound) or (not lower and node.key > bound):
            val = acc + node.w
            if best is None or (val < best[0] if lower else val > best[0]):
                best = (val, node, acc)
        if best is None:
            return None
        val, sub, acc = best
        while not _is_leaf(sub):
            acc += sub.excess
            lv = acc + _mn(sub.left) if lower else acc + _mx(sub.left)
            if lv == val:
                sub = sub.left
            else:
                sub = sub.right
        return val, sub.key

    # -- test support ------------------------------------------------------

    def leaves_effective(self) -> list[tuple[int, int]]:
        out = []
        if self.root is None:
            return out
        stack = [(self.root, 0)]
        while stack:
            nd, acc = stack.pop()
            if _is_leaf(nd):
                out.append((nd.key, nd.w + acc))
            else:
                acc += nd.excess
                stack.append((nd.right, acc))
                stack.append((nd.left, acc))
        out.sort()
        return out

    def check_invariants(self) -> None:
        if self.root is None or _is_leaf(self.root):
            return
        stack = [self.root]
        while stack:
            nd = stack.pop()
            if _is_leaf(nd):
                continue
            assert nd.mn == nd.excess + min(_mn(nd.left), _mn(nd.right))
            assert nd.mx == nd.excess + max(_mx(nd.left), _mx(nd.right))
            assert nd.size == _size(nd.left) + _size(nd.right)
            if nd.size > 2:
                assert _size(nd.left) * _ALPHA_DEN >= nd.size * _ALPHA_NUM
                assert _size(nd.right) * _ALPHA_DEN >= nd.size * _ALPHA_NUM
            stack.append(nd.left)
            stack.append(nd.right)


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------

@dataclass
class WeightedRectWitness:
    kind: str                      # "empty" | "point" | "pair"
    p: tuple[int, int, int] | None = None    # (x, y, id)
    q: tuple[int, int, int] | None = None
    axis: tuple[int, int] | None = None      # direction for degenerate pairs
    side: int = 1
    left_after: int | None = None  # left edge lies just beyond this projection
    right: int | None = None       # closed right projection bound
    top: int | None = None         # closed v bound


@dataclass
class WeightedRectResult:
    weight: int
    witness: WeightedRectWitness
    pairs_processed: int = 0


def _sweep_pair(data: np.ndarray, px: int, py: int, dx: int, dy: int, uq: int, side: int):
    """Best rectangle with the anchored pair on its bottom edge, one side."""
    pts = []
    for r in range(data.shape[0]):
        rx = int(data[r, 0]) - px
        ry = int(data[r, 1]) - py
        v = side * (dx * ry - dy * rx)
        if v < 0:
            continue
        u = dx * rx + dy * ry
        pts.append((v, u, int(data[r, 2])))
    pts.sort(key=lambda t: (t[0], t[1]))
    tree = WeightTree()
    best = None
    best_parts = None

    def evaluate(u_i, top):
        nonlocal best, best_parts
        lbound = 0 if u_i is None else min(0, u_i)
        rbound = uq if u_i is None else max(uq, u_i)
        pm = tree.prefix_min(lbound)
        left_w, left_key = (0, None)
        if pm is not None and pm[0] < 0:
            left_w, left_key = pm
        # right edge: either exactly at the boundary projection or beyond it
        right_w, right_key = tree.at_or_below(rbound)
        sm = tree.suffix_max(rbound)
        if sm is not None and sm[0] > right_w:
            right_w, right_key = sm
        cand = right_w - left_w
        if best is None or cand > best:
            best = cand
            best_parts = (left_key, right_key, top)

    i = 0
    while i < len(pts):
        vcur = pts[i][0]
        j = i
        while j < len(pts) and pts[j][0] == vcur:
            tree.insert(pts[j][1], pts[j][2])
            j += 1
        for idx in range(i, j):
            if pts[idx][2] > 0:
                evaluate(pts[idx][1], vcur)
        i = j
    evaluate(None, None)
    return best, best_parts


def solve_lwr(ps: PointSet) -> WeightedRectResult:
    """Maximum-weight rectangle; weights are scaled integers, sums exact."""
    check_frame_safe(ps)
    data = ps.data
    n = data.shape[0]
    if n == 0:
        return WeightedRectResult(0, WeightedRectWitness("empty"))

    best = None
    witness = None
    sums: dict[tuple[int, int], int] = {}
    for r in range(n):
        key = (int(data[r, 0]), int(data[r, 1]))
        sums[key] = sums.get(key, 0) + int(data[r, 2])
    for r in range(n):
        key = (int(data[r, 0]), int(data[r, 1]))
        if best is None or sums[key] > best:
            best = sums[key]
            pt = (key[0], key[1], int(data[r, 3]))
            witness = WeightedRectWitness("point", p=pt, q=pt)

    reds = [r for r in range(n) if int(data[r, 2]) > 0]
    pairs = 0

    def consider(pi, qi, axis, px, py, dx, dy, uq):
        nonlocal best, witness, pairs
        pairs += 1
        for side in (1, -1):
            cand, parts = _sweep_pair(data, px, py, dx, dy, uq, side)
            if cand is not None and cand > best:
                best = cand
                left_key, right_key, top = parts
                witness = WeightedRectWitness(
                    "pair",
                    p=(px, py, int(data[pi, 3])),
                    q=(int(data[qi, 0]), int(data[qi, 1]), int(data[qi, 3])),
                    axis=axis, side=side,
                    left_after=left_key, right=right_key, top=top,
                )

    for a in range(len(reds)):
        pi = reds[a]
        px, py = int(data[pi, 0]), int(data[pi, 1])
        for b in range(a + 1, len(reds)):
            qi = reds[b]
            dx = int(data[qi, 0]) - px
            dy = int(data[qi, 1]) - py
            if dx == 0 and dy == 0:
                continue
            consider(pi, qi, None, px, py, dx, dy, dx * dx + dy * dy)
        for axis in ((1, 0), (0, 1)):
            consider(pi, pi, axis, px, py, axis[0], axis[1], 0)

    return WeightedRectResult(int(best), witness, pairs)


def rescan_witness(ps: PointSet, w: WeightedRectWitness) -> int:
    """Re-derive the witness weight by direct scan (self-certification)."""
    data = ps.data
    if w.kind == "empty":
        return 0
    if w.kind == "point":
        px, py, _ = w.p
        m = (data[:, 0] == px) & (data[:, 1] == py)
        return int(data[m][:, 2].sum())
    px, py, _ = w.p
    if w.axis is not None:
        dx, dy = w.axis
    else:
        dx = w.q[0] - px
        dy = w.q[1] - py
    total = 0
    for r in range(data.shape[0]):
        rx = int(data[r, 0]) - px
        ry = int(data[r, 1]) - py
        v = w.side * (dx * ry - dy * rx)
        u = dx * rx + dy * ry
        if v < 0:
            continue
        if w.top is not None and v > w.top:
            continue
        if w.left_after is not None and u <= w.left_after:
            continue
        if w.right is not None and u > w.right:
            continue
        total += int(data[r, 2])
    return total
