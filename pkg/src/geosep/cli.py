"""Command-line front end: gen / solve / verify / bench.

Point files are plain text, one point per line, `#` starting a comment:
  2D colored  (lmr):  x y c        with c in {R, B}
  2D weighted (lwr):  x y w        with w a nonzero signed decimal
  3D colored  (lmc):  x y z c
Coordinates are decimals with at most as many fractional digits as the scale
factor keeps (default 10^6, override with GEOSEP_SCALE); parsing is exact and
printing round-trips bit-for-bit.

Exit codes: 0 ok, 1 verification mismatch, 2 input error, 3 oracle cap
exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

import numpy as np

from . import alloc
from .geom import (BLUE, NEG_INF, POS_INF, RED, InputError, PointSet,
                   bounding_box, format_scaled, make_points_2d, make_points_3d,
                   make_points_w2d, parse_scaled, scale_factor)
from .kdtree import ImplicitKdTree, QueryScratch
from . import lmr as lmr_mod
from . import lwr as lwr_mod
from . import lmc as lmc_mod
from . import oracles

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_CAP = 3

_FORMATS = {"lmr": "2d", "lwr": "w2d", "lmc": "3d"}


# ---------------------------------------------------------------------------
# Point files
# ---------------------------------------------------------------------------

def parse_point_file(path: str, problem: str) -> PointSet:
    scale = scale_factor()
    kind = _FORMATS[problem]
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                if kind == "2d":
                    if len(parts) != 3:
                        raise InputError("expected `x y c`")
                    x, y = parse_scaled(parts[0], scale), parse_scaled(parts[1], scale)
                    c = {"R": RED, "B": BLUE}.get(parts[2].upper())
                    if c is None:
                        raise InputError(f"color must be R or B, got {parts[2]!r}")
                    rows.append((x, y, c))
                elif kind == "w2d":
                    if len(parts) != 3:
                        raise InputError("expected `x y w`")
                    x, y = parse_scaled(parts[0], scale), parse_scaled(parts[1], scale)
                    w = parse_scaled(parts[2], scale)
                    rows.append((x, y, w))
                else:
                    if len(parts) != 4:
                        raise InputError("expected `x y z c`")
                    x, y = parse_scaled(parts[0], scale), parse_scaled(parts[1], scale)
                    z = parse_scaled(parts[2], scale)
                    c = {"R": RED, "B": BLUE}.get(parts[3].upper())
                    if c is None:
                        raise InputError(f"color must be R or B, got {parts[3]!r}")
                    rows.append((x, y, z, c))
            except InputError as exc:
                raise InputError(f"{path}:{lineno}: {exc}") from None
    if kind == "2d":
        return make_points_2d(rows, scale)
    if kind == "w2d":
        return make_points_w2d(rows, scale)
    return make_points_3d(rows, scale)


def write_point_file(ps: PointSet, path: str, header: str = "") -> None:
    scale = ps.scale
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(f"# {header}\n")
        data = ps.data
        for r in range(data.shape[0]):
            if ps.kind == "2d":
                c = "R" if int(data[r, 2]) == RED else "B"
                fh.write(f"{format_scaled(int(data[r, 0]), scale)} "
                         f"{format_scaled(int(data[r, 1]), scale)} {c}\n")
            elif ps.kind == "w2d":
                fh.write(f"{format_scaled(int(data[r, 0]), scale)} "
                         f"{format_scaled(int(data[r, 1]), scale)} "
                         f"{format_scaled(int(data[r, 2]), scale)}\n")
            else:
                c = "R" if int(data[r, 3]) == RED else "B"
                fh.write(f"{format_scaled(int(data[r, 0]), scale)} "
                         f"{format_scaled(int(data[r, 1]), scale)} "
                         f"{format_scaled(int(data[r, 2]), scale)} {c}\n")


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def generate(seed: int, n: int, m: int, dim: int, distribution: str,
             problem: str, scale: int) -> PointSet:
    rng = random.Random(seed)
    kind = _FORMATS[problem]
    span = 1000  # coordinate range in whole units

    def coord() -> int:
        return rng.randint(0, span) * scale + rng.randint(0, scale - 1)

    def clustered_coord(center: int) -> int:
        v = int(rng.gauss(center, 5 * scale))
        return min(max(v, 0), span * scale)

    centers = []
    if distribution == "clustered":
        k = max(1, (n + m) // 10)
        centers = [tuple(coord() for _ in range(dim)) for _ in range(k)]

    def point(ci: int) -> tuple:
        if distribution == "uniform" or not centers:
            return tuple(coord() for _ in range(dim))
        c = centers[ci % len(centers)]
        return tuple(clustered_coord(c[d]) for d in range(dim))

    rows = []
    for i in range(n):
        p = point(i)
        if kind == "2d":
            rows.append((p[0], p[1], RED))
        elif kind == "w2d":
            rows.append((p[0], p[1], rng.randint(1, 9) * scale))
        else:
            rows.append((p[0], p[1], p[2] if dim == 3 else coord(), RED))
    for i in range(m):
        p = point(n + i)
        if kind == "2d":
            rows.append((p[0], p[1], BLUE))
        elif kind == "w2d":
            rows.append((p[0], p[1], -rng.randint(1, 9) * scale))
        else:
            rows.append((p[0], p[1], p[2] if dim == 3 else coord(), BLUE))
    if kind == "2d":
        return make_points_2d(rows, scale)
    if kind == "w2d":
        return make_points_w2d(rows, scale)
    return make_points_3d(rows, scale)


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def _fmt_bound(v: int | None, scale: int, raw: bool, clamp_lo=None, clamp_hi=None) -> str:
    if v is None:
        return "none"
    if v == NEG_INF:
        return "-inf" if clamp_lo is None else _fmt_bound(clamp_lo, scale, raw)
    if v == POS_INF:
        return "inf" if clamp_hi is None else _fmt_bound(clamp_hi, scale, raw)
    return str(v) if raw else format_scaled(v, scale)


def _point_json(p, scale):
    if p is None:
        return None
    return {"x": format_scaled(p[0], scale), "y": format_scaled(p[1], scale), "id": p[2]}


def solve_record(ps: PointSet, problem: str, clamp: bool = False) -> dict:
    n, m = ps.counts()
    t0 = time.perf_counter()
    if problem == "lmr":
        (result, _net, peak) = alloc.measure(lmr_mod.solve_lmr, ps)
        rescan = lmr_mod.rescan_witness(ps, result.witness)
        opt = {"size": result.size}
        value = result.size
        w = result.witness
        witness = {
            "kind": w.kind,
            "color": "R" if w.color == RED else "B",
            "p": _point_json(w.p, ps.scale),
            "q": _point_json(w.q, ps.scale),
            "side": w.side,
            "bounds": {
                "left": _fmt_bound(w.left, ps.scale, raw=True),
                "right": _fmt_bound(w.right, ps.scale, raw=True),
                "bottom": "0",
                "top": _fmt_bound(w.top, ps.scale, raw=True),
            },
        }
        stats_extra = {"candidate_pairs": result.pairs_processed,
                       "kd_nodes_visited": result.nodes_visited}
    elif problem == "lwr":
        (result, _net, peak) = alloc.measure(lwr_mod.solve_lwr, ps)
        rescan = lwr_mod.rescan_witness(ps, result.witness)
        opt = {"weight": format_scaled(result.weight, ps.scale)}
        value = result.weight
        w = result.witness
        witness = {
            "kind": w.kind,
            "p": _point_json(w.p, ps.scale),
            "q": _point_json(w.q, ps.scale),
            "axis": list(w.axis) if w.axis else None,
            "side": w.side,
            "bounds": {
                "left_after": _fmt_bound(w.left_after, ps.scale, raw=True),
                "right": _fmt_bound(w.right, ps.scale, raw=True),
                "bottom": "0",
                "top": _fmt_bound(w.top, ps.scale, raw=True),
            },
        }
        stats_extra = {"candidate_pairs": result.pairs_processed}
    else:
        (result, _net, peak) = alloc.measure(lmc_mod.solve_lmc, ps)
        rescan = lmc_mod.rescan_witness(ps, result.witness)
        opt = {"size": result.size}
        value = result.size
        w = result.witness
        box = bounding_box(ps)
        names = ["x_lo", "x_hi", "y_lo", "y_hi", "z_lo", "z_hi"]
        bounds = {}
        for i, name in enumerate(names):
            v = w.bounds[i]
            d = i // 2
            lo = box[d][0] - ps.scale if clamp else None
            hi = box[d][1] + ps.scale if clamp else None
            bounds[name] = _fmt_bound(v, ps.scale, raw=False, clamp_lo=lo, clamp_hi=hi)
        witness = {"kind": w.kind, "color": "R" if w.color == RED else "B", "bounds": bounds}
        stats_extra = {"candidate_events": result.events,
                       "kd_nodes_visited": result.nodes_visited}
    wall = time.perf_counter() - t0
    if rescan != value:
        raise AssertionError(
            f"witness self-check failed: reported {value}, rescan {rescan}")
    record = {
        "problem": problem,
        "n": n,
        "m": m,
        "optimum": opt,
        "witness": witness,
        "stats": {**stats_extra, "peak_aux_bytes": peak,
                  "wall_time_s": round(wall, 6)},
        "verified": True,
    }
    return record


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def verify(ps: PointSet, problem: str, corrupt: bool = False) -> tuple[bool, dict]:
    """Solver vs oracle plus witness rescan; `corrupt` is a test hook that
    perturbs the reported optimum to prove the diff fires."""
    if problem == "lmr":
        result = lmr_mod.solve_lmr(ps)
        got = result.size
        rescan = lmr_mod.rescan_witness(ps, result.witness)
        expected = oracles.brute_lmr(ps)[0]
    elif problem == "lwr":
        result = lwr_mod.solve_lwr(ps)
        got = result.weight
        rescan = lwr_mod.rescan_witness(ps, result.witness)
        expected = oracles.brute_lwr(ps)
    else:
        result = lmc_mod.solve_lmc(ps)
        got = result.size
        rescan = lmc_mod.rescan_witness(ps, result.witness)
        expected = oracles.brute_lmc(ps)[0]
    if corrupt:
        got += 1
    ok = got == expected and rescan == (got if not corrupt else got - 1)
    diff = {"problem": problem, "solver": got, "oracle": expected,
            "witness_rescan": rescan, "match": ok}
    return ok, diff


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def bench_rows(problem: str, sizes: list[int], seed: int, queries: int = 64) -> list[dict]:
    rows = []
    rng = np.random.default_rng(seed)
    for size in sizes:
        if problem == "kdtree":
            data = np.empty((size, 4), dtype=np.int64)
            data[:, 0] = rng.integers(0, 10**9, size)
            data[:, 1] = rng.integers(0, 10**9, size)
            data[:, 2] = 0
            data[:, 3] = np.arange(size)
            t0 = time.perf_counter()
            tree, _net, build_peak = alloc.measure(
                ImplicitKdTree.build, data, 0, size, 2, 3)
            build_s = time.perf_counter() - t0
            scratch = QueryScratch(2)
            boxes = []
            for _ in range(queries):
                lo0, hi0 = sorted(rng.integers(0, 10**9, 2).tolist())
                lo1, hi1 = sorted(rng.integers(0, 10**9, 2).tolist())
                boxes.append(((lo0, hi0), (lo1, hi1)))

            def run_queries():
                visited = 0
                for box in boxes:
                    tree.count_in_range(box, scratch)
                    visited += tree.last_visited
                return visited

            t0 = time.perf_counter()
            visited, _net, query_peak = alloc.measure(run_queries)
            query_s = time.perf_counter() - t0
            rows.append({
                "problem": "kdtree", "n": size,
                "wall_time_s": round(build_s + query_s, 6),
                "visited_nodes_mean": round(visited / queries, 2),
                "aux_peak_bytes": max(build_peak, query_peak),
            })
        else:
            ps = generate(seed, size, size, 3 if problem == "lmc" else 2,
                          "uniform", problem, scale_factor())
            t0 = time.perf_counter()
            record, _net, peak = alloc.measure(solve_record, ps, problem)
            rows.append({
                "problem": problem, "n": size,
                "wall_time_s": round(time.perf_counter() - t0, 6),
                "visited_nodes_mean": record["stats"].get("kd_nodes_visited", 0),
                "aux_peak_bytes": peak,
            })
    return rows


def bench_csv(rows: list[dict]) -> str:
    header = "problem,n,wall_time_s,visited_nodes_mean,aux_peak_bytes"
    lines = [header]
    for r in rows:
        lines.append(f"{r['problem']},{r['n']},{r['wall_time_s']},"
                     f"{r['visited_nodes_mean']},{r['aux_peak_bytes']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="geosep",
                                 description="bichromatic separability solvers")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a deterministic point file")
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--m", type=int, default=10)
    g.add_argument("--dim", type=int, choices=(2, 3), default=2)
    g.add_argument("--distribution", choices=("uniform", "clustered"), default="uniform")
    g.add_argument("--problem", choices=("lmr", "lwr", "lmc"), default="lmr")
    g.add_argument("--out", required=True)

    s = sub.add_parser("solve", help="solve one instance, print a JSON record")
    s.add_argument("file")
    s.add_argument("--problem", choices=("lmr", "lwr", "lmc"), required=True)
    s.add_argument("--clamp", action="store_true",
                   help="clamp infinite bounds to the bounding box for display")
    s.add_argument("--threads", type=int, default=1,
                   help="accepted for interface compatibility; solvers are single-threaded")
    s.add_argument("--out", default="-")

    v = sub.add_parser("verify", help="diff solver against the brute-force oracle")
    v.add_argument("file")
    v.add_argument("--problem", choices=("lmr", "lwr", "lmc"), required=True)
    v.add_argument("--corrupt-witness", action="store_true", help=argparse.SUPPRESS)

    b = sub.add_parser("bench", help="benchmark, CSV output")
    b.add_argument("--problem", choices=("kdtree", "lmr", "lwr", "lmc"), default="kdtree")
    b.add_argument("--sizes", default="256,1024,4096,16384",
                   help="comma-separated instance sizes (empty for header-only)")
    b.add_argument("--seed", type=int, default=1)
    b.add_argument("--out", default="-")
    return ap


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            if args.n < 0 or args.m < 0:
                raise InputError("--n and --m must be nonnegative")
            ps = generate(args.seed, args.n, args.m, args.dim,
                          args.distribution, args.problem, scale_factor())
            header = (f"geosep gen seed={args.seed} n={args.n} m={args.m} "
                      f"dim={args.dim} distribution={args.distribution} problem={args.problem}")
            write_point_file(ps, args.out, header)
            return EXIT_OK
        if args.command == "solve":
            ps = parse_point_file(args.file, args.problem)
            record = solve_record(ps, args.problem, clamp=args.clamp)
            _emit(json.dumps(record, indent=2) + "\n", args.out)
            return EXIT_OK
        if args.command == "verify":
            ps = parse_point_file(args.file, args.problem)
            if len(ps) == 0:
                print(json.dumps({"problem": args.problem, "match": True,
                                  "note": "empty instance: size 0 by convention"}))
                return EXIT_OK
            ok, diff = verify(ps, args.problem, corrupt=args.corrupt_witness)
            print(json.dumps(diff))
            return EXIT_OK if ok else EXIT_MISMATCH
        if args.command == "bench":
            sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
            rows = bench_rows(args.problem, sizes, args.seed)
            _emit(bench_csv(rows), args.out)
            return EXIT_OK
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except oracles.CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
