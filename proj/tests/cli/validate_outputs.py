#!/usr/bin/env python3
"""Runs lsvresp subcommands at small sizes and checks exit codes, schemas and CSV headers.

usage: validate_outputs.py <lsvresp> <schemas dir>
"""
import json
import math
import os
import subprocess
import sys
import tempfile

import jsonschema

BIN, SCHEMAS = sys.argv[1], sys.argv[2]
failures = []


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def run(out, *args):
    return subprocess.run([BIN, "--out", out, *args], capture_output=True, text=True).returncode


def load(path):
    with open(path) as f:
        return json.load(f)


def valid(path, schema):
    try:
        jsonschema.validate(load(path), load(os.path.join(SCHEMAS, schema + ".schema.json")))
        return True
    except (jsonschema.ValidationError, OSError, json.JSONDecodeError) as e:
        print("     ", str(e).splitlines()[0])
        return False


def csv_header(path):
    with open(path) as f:
        lines = f.read().splitlines()
    comments = [l for l in lines if l.startswith("#")]
    body = [l for l in lines if not l.startswith("#")]
    return comments, body[0] if body else ""


SMALL = ["--grid", "129", "--k-max", "2000"]

with tempfile.TemporaryDirectory() as tmp:
    d = lambda name: os.path.join(tmp, name)

    check(run(d("z2"), "zeta", "--s", "2") == 0, "zeta s=2 exits 0")
    check(valid(d("z2/zeta.json"), "zeta"), "zeta.json validates")
    check(abs(load(d("z2/zeta.json"))["value"] - math.pi ** 2 / 6) <= 1e-12, "zeta(2) = pi^2/6")
    run(d("z3"), "zeta", "--s", "1.001")
    pp = load(d("z3/zeta.json"))["pole_product"]
    check(abs(pp - (1 + 0.5772156649015329e-3)) <= 1e-6, "(s-1) zeta(s) at s=1.001 ~ 1 + gamma 1e-3")
    check(run(d("z4"), "zeta", "--s", "0.5") == 1, "zeta s=0.5 exits 1")
    check(not os.path.exists(d("z4")) or not os.listdir(d("z4")), "zeta s=0.5 leaves no files")

    with open(d("bad.json"), "w") as f:
        f.write('{"alpha": 0.8,')
    check(run(d("c1"), "--config", d("bad.json"), "density") == 1, "malformed config exits 1")
    check(not os.path.exists(d("c1")), "malformed config leaves no files")
    with open(d("unknown.json"), "w") as f:
        json.dump({"alpah": 0.8}, f)
    check(run(d("c2"), "--config", d("unknown.json"), "density") == 1, "unknown config key exits 1")
    check(run(d("c3"), "density", "--alpha", "5") == 1, "alpha outside the configured range exits 1")
    check(run(d("c4"), "density", "--tol", "-1") == 1, "negative tolerance exits 1")
    with open(d("cfg.json"), "w") as f:
        json.dump({"alpha": 0.9, "grid": 129, "k_max": 2000}, f)
    check(run(d("c5"), "--config", d("cfg.json"), "density", "--alpha", "1") == 0, "config plus flag exits 0")
    check(load(d("c5/density.json"))["alpha"] == 1.0, "flag overrides config value")
    check(load(d("c5/density.json"))["config"]["params"]["grid"] == 129, "config value used when no flag")

    check(run(d("d1"), "density", "--alpha", "1", *SMALL) == 0, "density alpha=1 exits 0")
    check(valid(d("d1/density.json"), "density"), "density.json validates")
    check(load(d("d1/density.json"))["h_half"] > 0, "density summary carries h~(1/2)")
    run(d("d2"), "--format", "csv", "density", "--alpha", "0.8", *SMALL, "--ulam", "--ulam-cells", "256")
    check(valid(d("d2/density.json"), "density"), "density.json (csv mode) validates")
    check("l1_gap" in load(d("d2/density.json")).get("ulam", {}), "--ulam reports the L1 gap")
    com, head = csv_header(d("d2/density.csv"))
    check(head == "x,h_tilde,rho", "density.csv header")
    check(any('"seed"' in c or c.startswith("# seed") for c in com) and any("truncation_bound" in c for c in com),
          "density.csv comments carry seed and truncation bound")
    check(run(d("d3"), "density", "--alpha", "0.8", *SMALL, "--max-iter", "1") == 2, "solver failure exits 2")
    check(valid(d("d3/error.json"), "error"), "error.json validates")
    check(not os.path.exists(d("d3/density.json")), "no density output on failure")

    tails = ["tails", "--alpha", "0.8", "--grid", "257", "--k-max", "4000", "--fit-hi", "4000"]
    check(run(d("t1"), "--format", "csv", *tails) == 0, "tails exits 0")
    check(valid(d("t1/tails.json"), "tails"), "tails.json validates")
    check(abs(load(d("t1/tails.json"))["fitted_exponent"] - 1.25) <= 0.025, "alpha=0.8 tail exponent ~ 1.25")
    check(csv_header(d("t1/tails.csv"))[1] == "n,tail_mass,model", "tails.csv header")
    run(d("t2"), "--format", "csv", *tails)
    for name in ("tails.json", "tails.csv"):
        a = open(d("t1/" + name), "rb").read().replace(d("t1").encode(), b"")
        b = open(d("t2/" + name), "rb").read().replace(d("t2").encode(), b"")
        check(a == b, f"{name} identical across reruns")
    check(run(d("t3"), "tails", "--alpha", "0.8", *SMALL, "--fit-lo", "500", "--fit-hi", "400") == 1,
          "empty fit window exits 1")

    resp = ["response", *SMALL, "--fit-hi", "2000"]
    check(run(d("r1"), *resp, "--potential", "const:2", "--j-lo", "4", "--j-hi", "5") == 0, "response const exits 0")
    check(valid(d("r1/response.json"), "response"), "response.json validates")
    r1 = load(d("r1/response.json"))
    check(r1["analytic_target"] == 0 and r1["derivative"] == 0, "constant potential: target and derivative 0")
    run(d("r2"), "--format", "csv", *resp, "--potential", "x", "--alphas", "0.9")
    r2 = load(d("r2/response.json"))
    check(valid(d("r2/response.json"), "response") and r2["extrapolated"] is False, "single alpha: not extrapolated")
    check(csv_header(d("r2/response.csv"))[1] == "alpha,r_srb,kac,r_phy,quotient", "response.csv header")

    sim = ["simulate", "--alpha", "0.8", "--n-steps", "10000", "--orbits", "4"]
    check(run(d("s1"), "--format", "csv", *sim) == 0, "simulate exits 0")
    check(valid(d("s1/ensemble.json"), "ensemble"), "ensemble.json validates")
    check(csv_header(d("s1/ensemble.csv"))[1] == "orbit_id,time_average,occupation", "ensemble.csv header")
    run(d("s2"), "--format", "csv", *sim)
    check(open(d("s1/ensemble.csv")).read().replace(d("s1"), "") == open(d("s2/ensemble.csv")).read().replace(d("s2"), ""),
          "ensemble.csv identical across reruns")
    check(run(d("s3"), "simulate", "--mode", "esslim", "--alphas", "0.9", "--schedule", "1000,5000", "--orbits", "4") == 0, "esslim exits 0")
    check(valid(d("s3/esslim.json"), "esslim"), "esslim.json validates")
    check(run(d("s4"), "simulate", "--law", "bogus") == 1, "bad initial law exits 1")

    check(run(d("p1"), "reproduce", "--criteria", "1") == 0, "reproduce criterion 1 exits 0")
    check(valid(d("p1/reproduce.json"), "reproduce"), "reproduce.json validates")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
