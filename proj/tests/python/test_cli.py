"""End-to-end CLI smoke tests. Usage: test_cli.py <path-to-privbhq-binary>."""

import math
import subprocess
import sys
import tempfile
from pathlib import Path

BINARY = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("privbhq")
FAILURES = []


def check(name, condition, detail=""):
    status = "ok" if condition else "FAIL"
    print(f"{name}: {status} {detail}")
    if not condition:
        FAILURES.append(name)


def run(*args, expect_code=0):
    proc = subprocess.run(
        [str(BINARY), *args], capture_output=True, text=True, timeout=300
    )
    check(f"exit code of {' '.join(args[:2])}", proc.returncode == expect_code,
          f"got {proc.returncode}, stderr: {proc.stderr.strip()[:200]}")
    return proc


def parse_csv(text):
    lines = [l for l in text.strip().splitlines() if l]
    header = lines[0].split(",")
    return [dict(zip(header, l.split(","))) for l in lines[1:]]


def main():
    tmp = Path(tempfile.mkdtemp())

    # bhq: three p-values, two rejections.
    pfile = tmp / "p.csv"
    pfile.write_text("p\n0.01\n0.02\n0.5\n")
    proc = run("bhq", "--input", str(pfile), "--q", "0.1")
    lines = proc.stdout.strip().splitlines()
    check("bhq rejection count", lines[0] == "R,2", repr(lines[:1]))
    check("bhq rejected indices", lines[1:] == ["index", "1", "2"], repr(lines[1:]))

    # bhq with truth labels reports V.
    pfile2 = tmp / "p2.csv"
    pfile2.write_text("p,is_null\n0.01,1\n0.02,0\n0.5,1\n")
    proc = run("bhq", "--input", str(pfile2), "--q", "0.1", "--mode", "step-down")
    check("bhq V line", "V,1" in proc.stdout.splitlines(), proc.stdout)

    # budget: calibration row plus a gamma table.
    proc = run("budget", "--epsilon", "0.5", "--delta", "0.1", "--mprime", "10",
               "--eta", "0.01", "--q", "0.1", "--m", "100")
    rows = parse_csv(proc.stdout.split("j,gamma")[0])
    lam = float(rows[0]["lambda"])
    check("budget lambda", abs(lam - 0.30348542587702926) < 1e-9, f"lambda={lam}")
    check("budget regime flag", rows[0]["in_theorem_regime"] == "1")
    gamma_lines = proc.stdout.split("j,gamma\n")[1].strip().splitlines()
    check("budget gamma rows", len(gamma_lines) == 10, f"{len(gamma_lines)} rows")
    g1 = float(gamma_lines[0].split(",")[1])
    check("budget gamma_1", abs(g1 - (-8.849130199700808)) < 1e-6, f"gamma_1={g1}")

    # ck-estimate: small deterministic run, byte-identical under a fixed seed.
    a = run("ck-estimate", "--k", "2,5", "--reps", "500", "--jmax", "2000",
            "--seed", "7")
    b = run("ck-estimate", "--k", "2,5", "--reps", "500", "--jmax", "2000",
            "--seed", "7")
    check("ck-estimate reproducible", a.stdout == b.stdout)
    check("ck-estimate seed echo", "seed,7" in a.stderr, a.stderr)
    rows = parse_csv(a.stdout)
    check("ck-estimate k order", [r["k"] for r in rows] == ["2", "5"])
    check("ck-estimate plausible C_2", 1.5 < float(rows[0]["mean"]) < 3.5)

    # private-bhq on a tiny binary dataset.
    dfile = tmp / "data.csv"
    header = "20,5,binary\n"
    rows_txt = "\n".join(",".join("1" if (r + c) % 2 else "0" for c in range(5))
                         for r in range(20))
    dfile.write_text(header + rows_txt + "\n")
    proc = run("private-bhq", "--input", str(dfile), "--test", "binomial",
               "--epsilon", "0.5", "--delta", "0.1", "--mprime", "3",
               "--q", "0.1", "--seed", "11")
    check("private-bhq eta line", proc.stdout.startswith("eta,"), proc.stdout[:80])
    check("private-bhq R line", any(l.startswith("R,") for l in proc.stdout.splitlines()))

    # simulate: deterministic CSV with the documented header.
    proc = run("simulate", "--example", "normal", "--m", "100", "--m1", "20",
               "--q", "0.1", "--reps", "20", "--fdrk", "1,2", "--seed", "3")
    rows = parse_csv(proc.stdout)
    check("simulate header",
          proc.stdout.splitlines()[0]
          == "example,m,m1_or_rho,alternative,k,fdr_hat,stderr,bound,infeasible")
    check("simulate rows", len(rows) == 2 and rows[0]["example"] == "normal")
    check("simulate k1 bound is q", math.isclose(float(rows[0]["bound"]), 0.1))

    # Errors: missing input file exits 2, bad q exits 2.
    run("bhq", "--input", str(tmp / "missing.csv"), "--q", "0.1", expect_code=2)
    run("bhq", "--input", str(pfile), "--q", "1.5", expect_code=2)

    if FAILURES:
        print(f"{len(FAILURES)} CLI check(s) failed: {FAILURES}")
        sys.exit(1)
    print("all CLI checks passed")


if __name__ == "__main__":
    main()
