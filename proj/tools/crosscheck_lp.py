#!/usr/bin/env python3
"""Solve instances with the CLI, export every LP, and re-solve each export
with scipy/HiGHS; the optima must agree with the in-repo simplex."""
import argparse
import pathlib
import re
import subprocess
import sys
import tempfile

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))
import check_lp  # noqa: E402

LINE = re.compile(r"^  alpha=\S+ status=(\S+) objective=(\S+)")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("cli")
    ap.add_argument("--tol", type=float, default=1e-6)
    args = ap.parse_args()
    cases = [
        ["grid", "--rows", "2", "--cols", "3", "--pairs", "2", "--max-cost", "4", "--seed", "1"],
        ["wheel", "--spokes", "5", "--pairs", "3", "--max-cost", "5", "--seed", "2"],
        ["grid", "--rows", "3", "--cols", "3", "--pairs", "3", "--max-cost", "3", "--seed", "3"],
    ]
    checked = 0
    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        for i, gen in enumerate(cases):
            inst = tmp / f"inst{i}.json"
            subprocess.run([args.cli, "generate", *gen, "-o", str(inst)], check=True)
            prefix = tmp / f"lp{i}"
            out = subprocess.run([args.cli, "solve", str(inst), "--export-lp", str(prefix)], check=True,
                                 capture_output=True, text=True).stdout
            alphas = [LINE.match(l) for l in out.splitlines() if LINE.match(l)]
            for ai, m in enumerate(alphas):
                res = check_lp.solve(str(prefix) + f"_g0_a{ai}.lp")
                if m.group(1) == "infeasible":
                    ok = res.status == 2
                else:
                    ok = res.status == 0 and abs(res.fun - float(m.group(2))) <= args.tol * max(1.0, abs(res.fun))
                highs = "infeasible" if res.status == 2 else f"{res.fun:.9f}" if res.status == 0 else res.message
                print(f"case {i} alpha {ai}: repo {m.group(1)} {m.group(2)}; highs {highs} -> {'ok' if ok else 'MISMATCH'}")
                if not ok:
                    return 1
                checked += 1
    print(f"{checked} LPs agree")
    return 0 if checked else 1


if __name__ == "__main__":
    sys.exit(main())
