import json
import os
import subprocess
import sys

import numpy as np
import pytest

from geosep.cli import (EXIT_CAP, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK,
                        bench_csv, bench_rows, generate, main,
                        parse_point_file, write_point_file)
from geosep.geom import RED, scale_factor


def run_cli(args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    proc = subprocess.run([sys.executable, "-m", "geosep.cli", *args],
                          capture_output=True, text=True, env=e)
    return proc.returncode, proc.stdout, proc.stderr


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["gen", "--seed", "7", "--n", "12", "--m", "9", "--out", str(a)]) == EXIT_OK
    assert main(["gen", "--seed", "7", "--n", "12", "--m", "9", "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_gen_empty_is_header_only(tmp_path):
    f = tmp_path / "e.txt"
    assert main(["gen", "--seed", "1", "--n", "0", "--m", "0", "--out", str(f)]) == EXIT_OK
    lines = f.read_text().splitlines()
    assert len(lines) == 1 and lines[0].startswith("#")


def test_round_trip_exact(tmp_path):
    f = tmp_path / "p.txt"
    main(["gen", "--seed", "3", "--n", "20", "--m", "10", "--out", str(f)])
    ps = parse_point_file(str(f), "lmr")
    g = tmp_path / "q.txt"
    write_point_file(ps, str(g))
    ps2 = parse_point_file(str(g), "lmr")
    assert (ps.data == ps2.data).all()


def test_uniform_generation_is_roughly_flat():
    ps = generate(11, 1000, 0, 2, "uniform", "lmr", scale_factor())
    xs = ps.data[:, 0].astype(float)
    hist, _ = np.histogram(xs, bins=10)
    expected = len(xs) / 10
    chi2 = float(((hist - expected) ** 2 / expected).sum())
    assert chi2 < 33.0  # ~5 sigma bound for 9 dof


def test_solve_record_self_certifies(tmp_path):
    f = tmp_path / "p.txt"
    main(["gen", "--seed", "5", "--n", "10", "--m", "6", "--out", str(f)])
    out = tmp_path / "r.json"
    assert main(["solve", str(f), "--problem", "lmr", "--out", str(out)]) == EXIT_OK
    rec = json.loads(out.read_text())
    assert rec["verified"] is True
    assert rec["n"] == 10 and rec["m"] == 6
    assert set(rec["stats"]) >= {"candidate_pairs", "kd_nodes_visited",
                                 "peak_aux_bytes", "wall_time_s"}


def test_solve_all_red_and_single_weight(tmp_path):
    f = tmp_path / "allred.txt"
    f.write_text("0 0 R\n1 2 R\n5 5 R\n")
    out = tmp_path / "o.json"
    main(["solve", str(f), "--problem", "lmr", "--out", str(out)])
    assert json.loads(out.read_text())["optimum"]["size"] == 3

    w = tmp_path / "w.txt"
    w.write_text("1 1 5\n")
    main(["solve", str(w), "--problem", "lwr", "--out", str(out)])
    assert json.loads(out.read_text())["optimum"]["weight"] == "5"


def test_verify_pass_fail_and_exit_codes(tmp_path):
    f = tmp_path / "p.txt"
    main(["gen", "--seed", "9", "--n", "8", "--m", "5", "--out", str(f)])
    assert main(["verify", str(f), "--problem", "lmr"]) == EXIT_OK
    assert main(["verify", str(f), "--problem", "lmr", "--corrupt-witness"]) == EXIT_MISMATCH

    big = tmp_path / "big.txt"
    main(["gen", "--seed", "2", "--n", "30", "--m", "30", "--out", str(big)])
    assert main(["verify", str(big), "--problem", "lmr"]) == EXIT_CAP

    bad = tmp_path / "bad.txt"
    bad.write_text("1 2 R\nnot a point\n")
    assert main(["solve", str(bad), "--problem", "lmr"]) == EXIT_INPUT

    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    assert main(["verify", str(empty), "--problem", "lmr"]) == EXIT_OK


def test_lmc_and_lwr_verify(tmp_path):
    f3 = tmp_path / "c.txt"
    main(["gen", "--seed", "4", "--n", "9", "--m", "7", "--dim", "3",
          "--problem", "lmc", "--out", str(f3)])
    assert main(["verify", str(f3), "--problem", "lmc"]) == EXIT_OK
    fw = tmp_path / "w.txt"
    main(["gen", "--seed", "4", "--n", "8", "--m", "8",
          "--problem", "lwr", "--out", str(fw)])
    assert main(["verify", str(fw), "--problem", "lwr"]) == EXIT_OK


def test_bench_empty_grid_header_only():
    assert bench_csv(bench_rows("kdtree", [], 1)) == \
        "problem,n,wall_time_s,visited_nodes_mean,aux_peak_bytes\n"


def test_bench_kdtree_rows():
    rows = bench_rows("kdtree", [256, 512], seed=1, queries=16)
    assert [r["n"] for r in rows] == [256, 512]
    for r in rows:
        assert r["aux_peak_bytes"] < 64 * 1024


def test_scale_env_override(tmp_path):
    f = tmp_path / "s.txt"
    rc, _, _ = run_cli(["gen", "--seed", "1", "--n", "3", "--m", "0",
                        "--out", str(f)], env={"GEOSEP_SCALE": "1000"})
    assert rc == EXIT_OK
    rc, out, _ = run_cli(["solve", str(f), "--problem", "lmr"],
                         env={"GEOSEP_SCALE": "1000"})
    assert rc == EXIT_OK
    assert json.loads(out)["optimum"]["size"] == 3


def test_clustered_generation_parses(tmp_path):
    f = tmp_path / "cl.txt"
    assert main(["gen", "--seed", "8", "--n", "30", "--m", "10",
                 "--distribution", "clustered", "--out", str(f)]) == EXIT_OK
    ps = parse_point_file(str(f), "lmr")
    assert len(ps) == 40
