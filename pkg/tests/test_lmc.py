import random

import numpy as np

from geosep.geom import BLUE, NEG_INF, POS_INF, RED, make_points_3d
from geosep.lmc import (_Phase3, _partition_rows, _type1, _type2, _type3,
                        _count_tracker, enumerate_stair_mers, rescan_witness,
                        solve_lmc, solve_lrc, witness_interior_empty)
from geosep.oracles import (brute_lmc, brute_lrc_restricted, naive_mers,
                            staircase_from_scratch)


def random_points3(rng, n, m, span=10):
    pts = [(rng.randint(0, span), rng.randint(0, span), rng.randint(0, span), RED)
           for _ in range(n)]
    pts += [(rng.randint(0, span), rng.randint(0, span), rng.randint(0, span), BLUE)
            for _ in range(m)]
    rng.shuffle(pts)
    return pts


def test_no_obstacles_takes_whole_region():
    ps = make_points_3d([(i, i, i, RED) for i in range(7)])
    r = solve_lmc(ps)
    assert r.size == 7


def test_single_blue_inside_gives_best_slab():
    # reds at the corners of a cube, blue at the center: best half-box keeps 4
    pts = [(x, y, z, RED) for x in (0, 2) for y in (0, 2) for z in (0, 2)]
    pts.append((1, 1, 1, BLUE))
    ps = make_points_3d(pts)
    exp, _ = brute_lmc(ps)
    got = solve_lmc(ps)
    assert got.size == exp == 4


def test_stacked_blues_reds_between():
    pts = [(5, 5, 10, BLUE), (5, 5, 0, BLUE)]
    pts += [(4 + i, 5, 3 + i, RED) for i in range(3)]
    ps = make_points_3d(pts)
    got = solve_lmc(ps)
    exp, _ = brute_lmc(ps)
    assert got.size == exp == 3


def test_matches_oracle_tiny_tied():
    rng = random.Random(404)
    for trial in range(80):
        total = rng.randint(1, 10)
        m = rng.randint(0, total)
        ps = make_points_3d(random_points3(rng, total - m, m, span=4))
        before = ps.signature()
        exp, _ = brute_lmc(ps)
        got = solve_lmc(ps, check=True)
        assert got.size == exp, f"trial {trial}"
        assert ps.signature() == before
        assert rescan_witness(ps, got.witness) == got.size
        assert witness_interior_empty(ps, got.witness)


def test_matches_oracle_medium():
    rng = random.Random(321)
    for trial in range(40):
        total = rng.randint(8, 24)
        m = rng.randint(1, total - 1)
        ps = make_points_3d(random_points3(rng, total - m, m, span=15))
        exp, _ = brute_lmc(ps)
        got = solve_lmc(ps)
        assert got.size == exp, f"trial {trial}"


def test_each_family_matches_restricted_oracle():
    rng = random.Random(2718)
    for trial in range(30):
        total = rng.randint(4, 16)
        m = rng.randint(1, total - 1)
        ps = make_points_3d(random_points3(rng, total - m, m, span=6))
        data = ps.data
        N = data.shape[0]
        n = _partition_rows(data, 0, N, lambda r: int(data[r, 3]) == RED)
        track = _count_tracker()
        got1 = _type1(data, n, N, RED, track).size
        got2 = _type2(data, n, N, RED, track).size
        got3 = _type3(data, n, N, RED, track).size
        assert got1 == brute_lrc_restricted(ps, RED, "type1"), f"type1 trial {trial}"
        assert got2 == brute_lrc_restricted(ps, RED, "type2"), f"type2 trial {trial}"
        assert got3 == brute_lrc_restricted(ps, RED, "type3"), f"type3 trial {trial}"


def _make_phase(pivot, quad_pts):
    """Phase over blues below one anchor: anchor at z=100, points in z order."""
    rows = []
    z = 90
    for (x, y) in quad_pts:
        rows.append((x, y, z, BLUE, len(rows)))
        z -= 1
    data = np.array(rows, dtype=np.int64).reshape(len(rows), 5)
    return data, _Phase3(data, pivot[0], pivot[1], 0, len(rows))


def _sweep_all(data, phase, inserts):
    swept = [[], [], [], []]
    for _ in range(len(inserts)):
        theta = phase.next_event()
        pj = phase.chi[theta]
        Xj, Yj = phase.canon(pj, theta)
        dom = phase.dominance(theta, Xj, Yj)
        if dom == "free":
            phase.update_stair(theta, pj)
        swept[theta].append((Xj, Yj))
        phase.chi[theta] += 1
    return swept


def test_update_stair_dominance_removal():
    # stair {(1,3),(2,2),(3,1)} doubled to integers; insert (1.5,1.5) -> (3,3)
    data, phase = _make_phase((0, 0), [(2, 6), (4, 4), (6, 2), (3, 3)])
    _sweep_all(data, phase, range(4))
    assert sorted(phase.stair_points(0)) == [(2, 6), (3, 3), (6, 2)]


def test_update_stair_append_keeps_order():
    data, phase = _make_phase((0, 0), [(2, 6), (4, 4), (6, 2)])
    _sweep_all(data, phase, range(3))
    assert phase.stair_points(0) == [(2, 6), (4, 4), (6, 2)]  # y-descending


def test_update_stair_random_equals_from_scratch():
    rng = random.Random(6)
    for trial in range(60):
        pts = [(rng.randint(0, 8), rng.randint(0, 8)) for _ in range(rng.randint(1, 14))]
        data, phase = _make_phase((0, 0), pts)
        swept = _sweep_all(data, phase, pts)
        for t in range(4):
            got = sorted(phase.stair_points(t))
            assert got == staircase_from_scratch(swept[t]), f"trial {trial} quad {t}"
        # block contents survived as a permutation
        assert sorted(int(v) for v in data[:, 4]) == list(range(len(pts)))


def test_stair_mers_empty_stairs_whole_region():
    assert enumerate_stair_mers([], (2, 3)) == [(NEG_INF, NEG_INF, POS_INF, POS_INF)]
    assert enumerate_stair_mers([], None) == [(NEG_INF, NEG_INF, POS_INF, POS_INF)]


def test_stair_mers_match_naive_sets():
    rng = random.Random(37)
    for trial in range(120):
        m = rng.randint(0, 12)
        raw = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(m)]
        quads = [[], [], [], []]
        rx = (1, -1, -1, 1)
        ry = (1, 1, -1, -1)
        for (x, y) in raw:
            q = (0 if y >= 0 else 3) if x >= 0 else (1 if y >= 0 else 2)
            quads[q].append((rx[q] * x, ry[q] * y))
        obstacles = []
        for q in range(4):
            for (X, Y) in staircase_from_scratch(quads[q]):
                obstacles.append((rx[q] * X, ry[q] * Y))
        bj = (rng.randint(0, 5), rng.randint(0, 5)) if rng.random() < 0.7 else None
        # caller guarantees bj is not strictly dominated by its own stair
        if bj is not None and any(X < bj[0] and Y < bj[1]
                                  for X, Y in staircase_from_scratch(quads[0])):
            bj = None
        got = set(enumerate_stair_mers(obstacles, bj))
        exp = naive_mers(obstacles, must_interior=(0, 0), must_closed=bj)
        assert got == exp, f"trial {trial}"


def test_blue_majority_color_swap():
    # only blue points: the blue cuboid takes them all
    ps = make_points_3d([(i, 0, 0, BLUE) for i in range(5)])
    r = solve_lmc(ps)
    assert r.size == 5 and r.witness.color == BLUE


def test_tie_prefers_red():
    ps = make_points_3d([(0, 0, 0, RED), (9, 9, 9, BLUE)])
    r = solve_lmc(ps)
    assert r.size == 1 and r.witness.color == RED
