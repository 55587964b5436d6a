#!/usr/bin/env python3
"""End-to-end checks of the heunc CLI: schema conformance of every command's
JSON output, exit-code contract, byte-level determinism, and a handful of
frozen values."""

import argparse
import cmath
import json
import math
import os
import subprocess
import sys

import jsonschema

FAILURES = []


def check(name, ok, detail=""):
    status = "ok" if ok else "FAIL"
    if not ok:
        FAILURES.append(name)
    if not QUIET or not ok:
        print(f"  [{status}] {name}" + (f" ({detail})" if detail and not ok else ""))


def run(cli, args, env_extra=None):
    env = os.environ.copy()
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run([cli] + args, capture_output=True, text=True, env=env)
    return proc


def validated_json(validator, proc, name):
    try:
        record = json.loads(proc.stdout)
    except json.JSONDecodeError as exc:
        check(name + " parses", False, str(exc))
        return None
    errors = sorted(validator.iter_errors(record), key=lambda e: list(e.path))
    check(name + " validates against schema", not errors,
          errors[0].message if errors else "")
    return record


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--schema", required=True)
    parser.add_argument("--quiet", action="store_true")
    args = parser.parse_args()

    global QUIET
    QUIET = args.quiet

    with open(args.schema, encoding="utf-8") as fh:
        schema = json.load(fh)
    jsonschema.Draft7Validator.check_schema(schema)
    validator = jsonschema.Draft7Validator(schema)
    cli = args.cli

    base = ["--alpha", "1", "--beta", "0", "--gamma", "0"]

    # --- eval ----------------------------------------------------------
    proc = run(cli, ["eval"] + base + ["--delta", "0", "--eta", "0", "--z", "0.5"])
    check("eval exits 0", proc.returncode == 0, proc.stderr)
    rec = validated_json(validator, proc, "eval")
    if rec:
        check("eval echoes inputs", rec["inputs"]["z"] == {"re": 0.5, "im": 0.0})
        check("eval ode residual tiny", rec["diagnostics"]["ode_residual"] < 1e-9,
              str(rec["diagnostics"]))

    proc = run(cli, ["eval", "--alpha", "0", "--beta", "0", "--gamma", "0",
                     "--delta", "0", "--eta", "0", "--z", "0.5"])
    rec = validated_json(validator, proc, "eval trivial equation")
    if rec:
        check("trivial equation value is 1", rec["results"]["value"] == {"re": 1.0, "im": 0.0})

    proc = run(cli, ["eval"] + base + ["--delta", "-1.5", "--eta", "0.25", "--z", "0"])
    rec = validated_json(validator, proc, "eval at origin")
    if rec:
        check("normalization at z=0", rec["results"]["value"] == {"re": 1.0, "im": 0.0})

    proc = run(cli, ["eval"] + base + ["--delta", "0", "--eta", "0", "--z", "1.2"])
    check("eval outside the disk exits 2", proc.returncode == 2, str(proc.returncode))
    check("eval names the OutOfDisk guard", "OutOfDisk" in proc.stderr, proc.stderr)

    proc = run(cli, ["eval", "--alpha", "1", "--beta", "-2", "--gamma", "0",
                     "--delta", "0", "--eta", "0", "--z", "0.1"])
    check("negative-integer beta exits 2", proc.returncode == 2)
    check("eval names the InvalidBeta guard", "InvalidBeta" in proc.stderr, proc.stderr)

    proc = run(cli, ["eval", "--alpha", "1.5-2i", "--beta", "0.5+1i", "--gamma", "1i",
                     "--delta", "-0.25", "--eta", "2e-1+0.5i", "--z", "0.3-0.4i",
                     "--deriv", "2"])
    rec = validated_json(validator, proc, "eval with complex flags and derivative")
    if rec:
        check("eval derivative present", rec["results"]["derivative"]["order"] == 2)
        check("complex flag parsing", rec["inputs"]["alpha"] == {"re": 1.5, "im": -2.0}
              and rec["inputs"]["gamma"] == {"re": 0.0, "im": 1.0}
              and rec["inputs"]["eta"] == {"re": 0.2, "im": 0.5})

    proc = run(cli, ["eval"] + base + ["--delta", "1", "--eta", "1", "--z", "0.9"],
               env_extra={"HEUNC_MAX_TERMS": "4"})
    check("HEUNC_MAX_TERMS caps the sum (exit 2)", proc.returncode == 2)
    check("eval names the NoConvergence guard", "NoConvergence" in proc.stderr, proc.stderr)

    # --- coeffs --------------------------------------------------------
    proc = run(cli, ["coeffs"] + base + ["--delta", "0", "--eta", "0", "--order", "0"])
    rec = validated_json(validator, proc, "coeffs order 0")
    if rec:
        rows = rec["results"]["coefficients"]
        check("coeffs order 0 single row", rows == [{"n": 0, "re": 1.0, "im": 0.0}], str(rows))

    # Degree-0 polynomial point: delta_0 = -1, eta = 1/2 makes every v_{n>=1} vanish.
    proc = run(cli, ["coeffs"] + base + ["--delta", "-1", "--eta", "0.5", "--order", "3"])
    rec = validated_json(validator, proc, "coeffs at polynomial point")
    if rec:
        rows = rec["results"]["coefficients"]
        tail = max(abs(r["re"]) + abs(r["im"]) for r in rows[1:])
        check("polynomial point zeroes the tail", tail < 1e-14, str(rows))

    alpha, beta, gamma = 1.1 + 0.3j, 0.4 - 0.2j, -0.7 + 0.5j
    delta, eta = 0.9 - 0.1j, 0.2 + 0.6j
    proc = run(cli, ["coeffs",
                     "--alpha", "1.1+0.3i", "--beta", "0.4-0.2i", "--gamma", "-0.7+0.5i",
                     "--delta", "0.9-0.1i", "--eta", "0.2+0.6i", "--order", "1"])
    rec = validated_json(validator, proc, "coeffs generic")
    if rec:
        mu = 0.5 * (alpha - beta - gamma + alpha * beta - beta * gamma) - eta
        v1 = -mu / (1 + beta)
        got = rec["results"]["coefficients"][1]
        err = abs(complex(got["re"], got["im"]) - v1)
        check("first coefficient matches -mu/(1+beta)", err < 1e-13, str(err))

    proc = run(cli, ["coeffs"] + base + ["--delta", "0", "--eta", "0",
                     "--order", "2", "--format", "csv"])
    lines = proc.stdout.strip().splitlines()
    check("coeffs csv header", lines and lines[0] == "n,re,im", proc.stdout)
    check("coeffs csv rows", len(lines) == 4)

    # --- poly ----------------------------------------------------------
    proc = run(cli, ["poly"] + base + ["--N", "1"])
    rec = validated_json(validator, proc, "poly N=1")
    if rec:
        golden = (1 + math.sqrt(5)) / 2
        roots = rec["results"]["roots"]
        check("poly reports two roots", len(roots) == 2)
        mu1 = complex(roots[0]["mu"]["re"], roots[0]["mu"]["im"])
        mu2 = complex(roots[1]["mu"]["re"], roots[1]["mu"]["im"])
        check("poly golden spectrum", abs(mu1 - (1 - golden)) < 1e-12
              and abs(mu2 - golden) < 1e-12, f"{mu1} {mu2}")
        c1 = roots[0]["coefficients"]
        check("poly coefficients [1, -mu]", abs(complex(c1[1]["re"], c1[1]["im"]) + mu1) < 1e-12)
        lead = rec["results"]["delta_coefficients"][-1]
        check("determinant is monic", lead == {"re": 1.0, "im": 0.0}, str(lead))

    proc = run(cli, ["poly"] + base + ["--N", "0"])
    rec = validated_json(validator, proc, "poly N=0")
    if rec:
        roots = rec["results"]["roots"]
        check("poly N=0 single root at 0",
              len(roots) == 1 and abs(complex(roots[0]["mu"]["re"], roots[0]["mu"]["im"])) < 1e-12)
        check("poly N=0 constant polynomial",
              roots[0]["coefficients"] == [{"re": 1.0, "im": 0.0}])

    proc = run(cli, ["poly", "--alpha", "0", "--beta", "0", "--gamma", "0", "--N", "1"])
    check("poly with alpha=0 exits 2", proc.returncode == 2)
    check("poly names the AlphaZero guard", "AlphaZero" in proc.stderr, proc.stderr)

    proc = run(cli, ["poly"] + base + ["--N", "2", "--k", "2", "--format", "csv"])
    lines = proc.stdout.strip().splitlines()
    check("poly csv header",
          lines and lines[0] == "k,mu_re,mu_im,eta_re,eta_im,multiplicity,tail_residual",
          proc.stdout)
    check("poly csv selected root only", len(lines) == 2)

    proc = run(cli, ["poly"] + base + ["--N", "2", "--k", "2"])
    rec = validated_json(validator, proc, "poly with --k")
    if rec:
        check("poly --k still reports the full spectrum",
              len(rec["results"]["spectrum"]) == 3 and len(rec["results"]["roots"]) == 1,
              str(rec["results"]))

    # --- verify --------------------------------------------------------
    proc1 = run(cli, ["verify", "--identity", "all", "--random", "20", "--seed", "42"])
    check("verify all/random exits 0", proc1.returncode == 0, proc1.stderr)
    rec = validated_json(validator, proc1, "verify all/random")
    if rec:
        check("verify emits 20x7 reports", rec["diagnostics"]["num_reports"] == 140,
              str(rec["diagnostics"]))
        check("verify all passed", rec["diagnostics"]["num_failed"] == 0)

    proc2 = run(cli, ["verify", "--identity", "all", "--random", "20", "--seed", "42"])
    check("verify output is byte-stable", proc1.stdout == proc2.stdout)

    proc3 = run(cli, ["verify", "--identity", "all", "--random", "5", "--seed", "43"])
    check("different seed still passes", proc3.returncode == 0)
    check("different seed changes the draw", proc3.stdout != proc1.stdout)

    proc = run(cli, ["verify", "--identity", "darboux", "--alpha", "1", "--beta", "0",
                     "--gamma", "0", "--eta", "0", "--N", "0"])
    rec = validated_json(validator, proc, "verify darboux example")
    if rec:
        report = rec["results"]["reports"][0]
        check("darboux example passes", report["passed"] is True)
        p_n = complex(report["measured"]["P_N"]["re"], report["measured"]["P_N"]["im"])
        check("measured P_0 = -0.5", abs(p_n + 0.5) < 1e-13, str(p_n))

    proc = run(cli, ["verify", "--identity", "four-term", "--alpha", "1.2", "--beta", "0.3",
                     "--gamma", "-0.4", "--delta", "0.8", "--eta", "0.1", "--zgrid"])
    rec = validated_json(validator, proc, "verify with z-grid probe")
    if rec:
        zres = rec["results"]["reports"][0]["measured"].get("zgrid_residual")
        check("zgrid residual present and tiny", zres is not None and zres["re"] < 1e-8,
              str(zres))

    proc = run(cli, ["verify", "--identity", "all", "--random", "3", "--seed", "7",
                     "--corruption", "1e-3"])
    check("corrupted constants exit 1", proc.returncode == 1, str(proc.returncode))
    rec = validated_json(validator, proc, "verify corrupted")
    if rec:
        check("corrupted run reports failures", rec["diagnostics"]["num_failed"] > 0)

    proc = run(cli, ["verify", "--identity", "nonsense", "--random", "1"])
    check("unknown identity exits 2", proc.returncode == 2)

    proc = run(cli, ["verify"])
    check("verify without params or --random exits 2", proc.returncode == 2)

    if FAILURES:
        print(f"{len(FAILURES)} CLI check(s) failed: {FAILURES}")
        return 1
    if not QUIET:
        print("all CLI checks passed")
    return 0


if __name__ == "__main__":
    QUIET = False
    sys.exit(main())
