import random

from geosep.geom import make_points_w2d
from geosep.lwr import WeightTree, rescan_witness, solve_lwr
from geosep.oracles import brute_lwr


class FlatOracle:
    """Recompute cumulative weights from scratch on every query."""

    def __init__(self):
        self.sums = {}

    def insert(self, key, w):
        self.sums[key] = self.sums.get(key, 0) + w

    def prefix(self):
        run = 0
        out = []
        for k in sorted(self.sums):
            run += self.sums[k]
            out.append((k, run))
        return out

    def prefix_min(self, bound):
        vals = [(w, k) for k, w in self.prefix() if k < bound]
        return min(vals)[0] if vals else None

    def suffix_max(self, bound):
        vals = [(w, k) for k, w in self.prefix() if k > bound]
        return max(vals)[0] if vals else None

    def at_or_below(self, bound):
        vals = [(k, w) for k, w in self.prefix() if k <= bound]
        return vals[-1][1] if vals else None


def test_cumulative_sums_simple():
    t = WeightTree()
    for k in range(1, 6):
        t.insert(k, 1)
    assert t.leaves_effective() == [(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)]
    assert t.prefix_min(4) == (1, 1)


def test_suffix_update_semantics():
    t = WeightTree()
    for k in range(1, 6):
        t.insert(k, 1)
    t.insert(0, 10)
    assert [w for _, w in t.leaves_effective()] == [10, 11, 12, 13, 14, 15]


def test_duplicate_keys_accumulate():
    t = WeightTree()
    t.insert(5, 3)
    t.insert(5, -1)
    t.insert(2, 4)
    assert t.leaves_effective() == [(2, 4), (5, 6)]
    assert len(t) == 2


def test_tree_matches_flat_oracle_randomized():
    rng = random.Random(1234)
    checked = 0
    for trial in range(250):
        tree = WeightTree()
        flat = FlatOracle()
        for _ in range(rng.randint(1, 50)):
            if not flat.sums or rng.random() < 0.6:
                k = rng.randint(-12, 12)
                w = rng.choice([x for x in range(-9, 10) if x])
                tree.insert(k, w)
                flat.insert(k, w)
                tree.check_invariants()
            else:
                b = rng.randint(-14, 14)
                got = tree.prefix_min(b)
                assert (got[0] if got else None) == flat.prefix_min(b)
                got = tree.suffix_max(b)
                assert (got[0] if got else None) == flat.suffix_max(b)
                got = tree.at_or_below(b)
                assert (got[0] if got else None) == flat.at_or_below(b)
                checked += 1
        assert tree.leaves_effective() == flat.prefix()
    assert checked > 500


def test_rebuild_preserves_effective_weights():
    rng = random.Random(9)
    tree = WeightTree()
    flat = FlatOracle()
    for k in range(64):  # ascending keys force rebalances
        w = rng.choice([-2, -1, 1, 2])
        tree.insert(k, w)
        flat.insert(k, w)
    assert tree.rebuilds > 0
    assert tree.leaves_effective() == flat.prefix()


def test_all_positive_takes_everything():
    pts = [(0, 0, 2), (5, 1, 3), (2, 7, 1), (9, 9, 4)]
    ps = make_points_w2d(pts)
    assert solve_lwr(ps).weight == 10


def test_single_positive_point():
    ps = make_points_w2d([(3, 3, 5), (0, 0, -7), (6, 6, -2)])
    r = solve_lwr(ps)
    assert r.weight == 5


def test_all_negative_returns_least_negative_location():
    ps = make_points_w2d([(0, 0, -5), (4, 4, -1), (9, 9, -3)])
    r = solve_lwr(ps)
    assert r.weight == -1
    assert r.witness.kind == "point"


def test_matches_oracle():
    rng = random.Random(5411)
    for trial in range(120):
        total = rng.randint(1, 24)
        pts = [(rng.randint(0, 14), rng.randint(0, 14),
                rng.choice([x for x in range(-9, 10) if x])) for _ in range(total)]
        ps = make_points_w2d(pts)
        exp = brute_lwr(ps)
        got = solve_lwr(ps)
        assert got.weight == exp, f"trial {trial}: {got.weight} != {exp}"
        assert rescan_witness(ps, got.witness) == got.weight


def test_corner_case_right_edge_through_anchor():
    # the optimum must cut exactly at the anchor pair's right end: a heavy
    # negative sits just beyond q
    pts = [(0, 0, 1), (4, 0, 1), (5, 0, -9), (2, 3, 6)]
    ps = make_points_w2d(pts)
    exp = brute_lwr(ps)
    got = solve_lwr(ps)
    assert got.weight == exp == 8


def test_one_red_above_pair_closes_over_it():
    # pair on the line plus a single positive point above: rectangle closes
    # over all three
    pts = [(0, 0, 2), (4, 0, 3), (2, 5, 7)]
    ps = make_points_w2d(pts)
    assert solve_lwr(ps).weight == 12


def test_empty_side_keeps_segment_weight():
    # nothing off the line: the best pair rectangle is the segment itself,
    # and any span covering both ends must also take the -1 between them
    pts = [(0, 0, 2), (4, 0, 3), (2, 0, -1)]
    ps = make_points_w2d(pts)
    exp = brute_lwr(ps)
    got = solve_lwr(ps)
    assert got.weight == exp == 4


def test_empty_input():
    ps = make_points_w2d([])
    assert solve_lwr(ps).weight == 0
