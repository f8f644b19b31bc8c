"""End-to-end checks of the gepoly command line tool."""

import csv
import io
import json
import math
import os
import subprocess

CLI = os.environ["GEPOLY_CLI"]

HEADER_V1 = "N,parity,z2_re,z2_im,sigma2,value,nth_root,ref_limit,abs_err,branch,sign,bits,seed"


def run(*args, expect=0):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    assert proc.returncode == expect, (args, proc.returncode, proc.stderr)
    return proc.stdout


def rows_of(out):
    reader = csv.DictReader(io.StringIO(out))
    return list(reader)


def test_eval_examples():
    assert run("eval", "--n", "2", "--z2", "0", "--sigma2", "2", "--exact").strip() == "11/4"
    assert run("eval", "--n", "5", "--z2", "1", "--sigma2", "1", "--exact").strip() == "32"
    assert run("eval", "--n", "12", "--z2", "-2", "--sigma2", "1").strip() == "1"
    assert run("eval", "--n", "3", "--z2", "1+2i", "--sigma2", "3/2", "--exact").strip() \
        == "-1111/72+41/2i"


def test_usage_errors_exit_2():
    run("eval", "--n", "0", "--z2", "1", "--sigma2", "1", expect=2)
    run("eval", "--n", "2", "--z2", "1", "--sigma2", "0", expect=2)
    run("eval", "--n", "2", "--z2", "oops", "--sigma2", "1", expect=2)
    run("nonsense", expect=2)
    run("converge", "--study", "warp", expect=2)
    run("oracle", "--n-max", "9", expect=2)


def test_converge_header_and_determinism():
    args = ("converge", "--study", "nthroot", "--z2", "-1.5", "--sigma2", "1.5", "--nmax", "12")
    out1 = run(*args)
    out2 = run(*args)
    assert out1 == out2, "identical flags must produce byte-identical CSV"
    lines = out1.strip().splitlines()
    assert lines[0] == HEADER_V1
    assert len(lines) == 13


def test_converge_values_roundtrip():
    out = run("converge", "--study", "nthroot", "--z2", "1", "--sigma2", "1", "--nmax", "8")
    for row in rows_of(out):
        assert float(row["nth_root"]) == 2.0
        assert float(row["abs_err"]) == 0.0
        assert row["parity"] == ("even" if int(row["N"]) % 2 == 0 else "odd")


def test_converge_json_mirrors_csv():
    args = ("converge", "--study", "nthroot", "--z2", "-2", "--sigma2", "1", "--nmax", "6")
    csv_rows = rows_of(run(*args))
    json_rows = json.loads(run(*args, "--format", "json"))
    assert len(csv_rows) == len(json_rows)
    for c, j in zip(csv_rows, json_rows):
        assert int(c["N"]) == j["N"]
        assert float(c["nth_root"]) == j["nth_root"]
        assert c["branch"] == j["branch"]


def test_limits_real_branch_switch():
    out = run("limits", "--mode", "real", "--sigma2", "4", "--min", "0", "--max", "16",
              "--points", "33")
    for row in rows_of(out):
        z2 = float(row["z2"])
        if z2 < 5.0:
            assert row["branch"] == "broken"
        else:
            assert row["branch"] == "symmetric"
            assert float(row["value"]) == 1.0 + z2


def test_limits_curves_family():
    out = run("limits", "--mode", "curves")
    rows = rows_of(out)
    sigmas = {row["sigma2"] for row in rows}
    assert len(sigmas) == 10  # the L1 pair at sigma=1 plus nine L2 members
    l1 = [r for r in rows if r["branch"] == "symmetric" and r["sign"] == "1"]
    y0 = [r for r in l1 if float(r["y"]) == 0.0]
    assert all(float(r["value"]) == 1.0 for r in y0)


def test_limits_scaled():
    out = run("limits", "--mode", "scaled", "--sigma2", "16")
    for row in rows_of(out):
        assert math.isclose(float(row["value"]), math.exp(float(row["z2"]) / 30.0), rel_tol=1e-12)


def test_sign_study():
    out = run("converge", "--study", "sign", "--sigma2", "1", "--nmax", "4")
    for row in rows_of(out):
        if int(row["N"]) % 2 == 0:
            assert int(row["sign"]) >= 0
            if row["z2_re"] == "-1":
                assert int(row["sign"]) == 0


def test_fixedpoint_study():
    out = run("converge", "--study", "fixedpoint", "--y2", "2", "--nmax", "10",
              "--sigma-min", "1", "--sigma-max", "1", "--sigma-points", "1")
    rows = rows_of(out)
    assert len(rows) == 10
    for row in rows:
        expect = -1.0 if int(row["N"]) % 2 else 1.0
        assert float(row["nth_root"]) == expect


def test_appb_study():
    out = run("converge", "--study", "appb", "--k", "2", "--z2", "-1",
              "--sigma2", "2", "--jmax", "40")
    rows = rows_of(out)
    sums = [float(r["value"]) for r in rows]
    assert sums == sorted(sums)
    exact = float(rows[0]["ref_limit"])
    assert abs(sums[-1] - exact) < 1e-10


def test_oracle_defaults_pass():
    proc = subprocess.run([CLI, "oracle", "--n-max", "4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "FAIL" not in proc.stdout
    assert all(line.endswith("PASS") for line in proc.stdout.strip().splitlines()[1:])


def test_oracle_mc():
    proc = subprocess.run(
        [CLI, "oracle", "--n-max", "3", "--mc", "--samples", "200000", "--seed", "42"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    mc_rows = [r for r in rows_of(proc.stdout) if r["check"] == "mc"]
    assert mc_rows and all(abs(float(r["zscore"])) < 4 for r in mc_rows)


def test_env_var_precision():
    env = dict(os.environ, SEL_PRECISION_BITS="192")
    proc = subprocess.run([CLI, "converge", "--study", "nthroot", "--z2", "-2", "--sigma2", "1.5",
                           "--nmax", "300", "--nlist", "300"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    row = rows_of(proc.stdout)[0]
    assert int(row["bits"]) >= 192  # env sets the starting precision
    # flag wins over env
    proc2 = subprocess.run([CLI, "converge", "--study", "nthroot", "--z2", "-2", "--sigma2", "1.5",
                            "--nmax", "300", "--nlist", "300", "--bits", "1500"],
                           capture_output=True, text=True, env=env)
    row2 = rows_of(proc2.stdout)[0]
    assert int(row2["bits"]) == 1500
