import random

import numpy as np
import pytest

from geosep import _kernels as K
from geosep.geom import NEG_INF, POS_INF
from geosep.kdtree import (FRAME, ImplicitKdTree, QueryScratch, block_params,
                           root_rank, select_and_partition, subtree_size)
from geosep.oracles import (brute_count, brute_report_ids, complete_tree_size,
                            reference_kd_order)


def random_instance(rng, n, k, span=50):
    ncols = k + 2
    rows = []
    for i in range(n):
        rows.append([rng.randint(-span, span) for _ in range(k)] + [0, i])
    return np.array(rows, dtype=np.int64).reshape(n, ncols)


def test_block_params_full_tree():
    bp = block_params(15, 1)
    assert bp.k_i == 2 and bp.K1 == 7
    assert [s for _, s in bp.blocks] == [7, 7]


def test_block_params_left_aligned_n10():
    bp = block_params(10, 1)
    assert bp.k_i == 0
    assert [s for _, s in bp.blocks] == [6, 3]
    bp = block_params(10, 2)
    assert bp.k_i == 1
    assert [s for _, s in bp.blocks] == [3, 2, 1, 1]


def test_block_sizes_match_explicit_tree():
    # block j at level i holds the subtree rooted at node 2^i + j
    for n in list(range(1, 130)) + [255, 256, 257, 1000, 4096]:
        h = n.bit_length() - 1
        for level in range(h + 1):
            bp = block_params(n, level)
            for j, (start, size) in enumerate(bp.blocks):
                assert start == (1 << level) + sum(s for _, s in bp.blocks[:j])
                assert size == complete_tree_size(n, (1 << level) + j)


def test_subtree_size_examples_and_recurrence():
    assert subtree_size(10, 1) == 10
    assert subtree_size(10, 2) == 6
    assert subtree_size(10, 3) == 3
    for n in [1, 2, 3, 7, 10, 64, 100, 511, 512, 513]:
        for t in range(1, n + 1):
            left = subtree_size(n, 2 * t) if 2 * t <= n else 0
            right = subtree_size(n, 2 * t + 1) if 2 * t + 1 <= n else 0
            assert subtree_size(n, t) == 1 + left + right


def test_root_rank_matches_structure():
    for s in range(1, 600):
        assert root_rank(s) == complete_tree_size(s, 2) + 1


def test_build_single_point():
    data = np.array([[5, 7, 0, 0]], dtype=np.int64)
    tree = ImplicitKdTree.build(data, 0, 1, 2, 3)
    assert tree.count_in_range(((0, 10), (0, 10))) == 1
    assert (data == np.array([[5, 7, 0, 0]])).all()


def test_build_seven_points_matches_reference():
    rows = [(i, 8 - i, 0, i - 1) for i in range(1, 8)]
    data = np.array(rows, dtype=np.int64)
    tree = ImplicitKdTree.build(data, 0, 7, 2, 3)
    assert int(data[0, 0]) == 4  # root carries the median x
    ref = reference_kd_order(rows, 2, key=lambda it, d: it[d], ident=lambda it: it[3])
    assert [int(v) for v in data[:, 3]] == [it[3] for it in ref]
    tree.check_partition_invariant()


def test_build_matches_reference_on_randoms():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randint(1, 100)
        k = rng.choice([2, 3])
        data = random_instance(rng, n, k, span=6)  # duplicates on purpose
        rows = [tuple(r) for r in data]
        before = sorted(map(tuple, data.tolist()))
        ImplicitKdTree.build(data, 0, n, k, k + 1).check_partition_invariant()
        assert sorted(map(tuple, data.tolist())) == before  # permutation
        ref = reference_kd_order(rows, k, key=lambda it, d: it[d], ident=lambda it: it[-1])
        assert [int(v) for v in data[:, k + 1]] == [it[-1] for it in ref]


def test_count_and_report_match_linear_scan():
    rng = random.Random(99)
    for _ in range(40):
        n = rng.randint(1, 200)
        k = rng.choice([2, 3])
        data = random_instance(rng, n, k)
        tree = ImplicitKdTree.build(data, 0, n, k, k + 1)
        scratch = QueryScratch(k)
        out = np.empty(n, dtype=np.int64)
        for _ in range(25):
            box = []
            for _ in range(k):
                a, b = rng.randint(-60, 60), rng.randint(-60, 60)
                box.append((min(a, b), max(a, b)))
            assert tree.count_in_range(box, scratch) == brute_count(data, k, box)
            seen = []
            tree.report_in_range(box, lambda r: seen.append(int(data[r, k + 1])),
                                 scratch, out)
            assert sorted(seen) == brute_report_ids(data, k, box, k + 1)
            assert len(seen) == len(set(seen))  # visited once each


def test_whole_space_and_disjoint_boxes():
    rng = random.Random(5)
    data = random_instance(rng, 64, 2)
    tree = ImplicitKdTree.build(data, 0, 64, 2, 3)
    assert tree.count_in_range(((NEG_INF, POS_INF), (NEG_INF, POS_INF))) == 64
    assert tree.count_in_range(((1000, 2000), (1000, 2000))) == 0
    hits = tree.report_in_range(((NEG_INF, POS_INF), (NEG_INF, POS_INF)))
    assert hits == 64


def test_point_box_reports_duplicates():
    data = np.array([[3, 3, 0, 0], [3, 3, 0, 1], [4, 4, 0, 2]], dtype=np.int64)
    tree = ImplicitKdTree.build(data, 0, 3, 2, 3)
    ids = []
    tree.report_in_range(((3, 3), (3, 3)), lambda r: ids.append(int(data[r, 3])))
    assert sorted(ids) == [0, 1]


def test_select_and_partition():
    data = np.array([[1, 0, 0, 0]], dtype=np.int64)
    select_and_partition(data, 0, 1, 1, 0, 2, 3)
    assert int(data[0, 0]) == 1

    vals = [5, 1, 4, 2, 3]
    data = np.array([[v, 0, 0, i] for i, v in enumerate(vals)], dtype=np.int64)
    select_and_partition(data, 0, 5, 3, 0, 2, 3)
    assert int(data[0, 0]) == 3
    assert {int(v) for v in data[1:3, 0]} == {1, 2}
    assert {int(v) for v in data[3:, 0]} == {4, 5}

    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 60)
        vals = [rng.randint(-20, 20) for _ in range(n)]
        rank = rng.randint(1, n)
        data = np.array([[v, 0, 0, i] for i, v in enumerate(vals)], dtype=np.int64)
        select_and_partition(data, 0, n, rank, 0, 2, 3)
        expect = sorted(zip(vals, range(n)))[rank - 1]
        assert (int(data[0, 0]), int(data[0, 3])) == expect


def test_frame_mode_build_and_count():
    rng = random.Random(17)
    px, py, dx, dy = 2, 1, 3, 2
    for _ in range(30):
        n = rng.randint(1, 80)
        data = random_instance(rng, n, 2, span=30)
        frame = (px, py, dx, dy)
        tree = ImplicitKdTree.build(data, 0, n, 2, 3, mode=FRAME,
                                    frame_params=frame, sgn=1)
        tree.check_partition_invariant()
        us = [dx * (int(r[0]) - px) + dy * (int(r[1]) - py) for r in data]
        vs = [dx * (int(r[1]) - py) - dy * (int(r[0]) - px) for r in data]
        for _ in range(10):
            a, b = sorted((rng.randint(-300, 300), rng.randint(-300, 300)))
            c, d = sorted((rng.randint(-300, 300), rng.randint(-300, 300)))
            got = tree.count_in_range(((a, b), (c, d)))
            exp = sum(1 for u, v in zip(us, vs) if a <= u <= b and c <= v <= d)
            assert got == exp


def test_query_scratch_reuse_and_reset():
    rng = random.Random(1)
    data = random_instance(rng, 100, 2)
    tree = ImplicitKdTree.build(data, 0, 100, 2, 3)
    scratch = QueryScratch(2)
    for _ in range(50):
        a, b = sorted((rng.randint(-60, 60), rng.randint(-60, 60)))
        c, d = sorted((rng.randint(-60, 60), rng.randint(-60, 60)))
        box = ((a, b), (c, d))
        assert tree.count_in_range(box, scratch) == brute_count(data, 2, box)


def test_bad_box_rejected():
    data = np.array([[0, 0, 0, 0]], dtype=np.int64)
    tree = ImplicitKdTree.build(data, 0, 1, 2, 3)
    with pytest.raises(ValueError):
        tree.count_in_range(((5, 1), (0, 0)))
    with pytest.raises(ValueError):
        tree.count_in_range(((0, 1),))
