#!/usr/bin/env python3
"""Solve an exported LP file with scipy's HiGHS and print the optimum.

Only the subset of CPLEX LP format written by the library is understood:
one objective line, one constraint per line, 0 <= x <= 1 bounds.
"""
import argparse
import re
import sys

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix

TERM = re.compile(r"([+-])\s*(\d+(?:\.\d+)?)?\s*x(\d+)")


def parse_terms(text):
    return [(int(v), (-1 if s == "-" else 1) * float(c or 1)) for s, c, v in TERM.findall(text)]


def read_lp(path):
    section = None
    obj, rows, nvars = [], [], 0
    with open(path) as f:
        for line in f:
            line = line.strip()
            if line in ("Minimize", "Subject To", "Bounds", "End"):
                section = line
                continue
            if not line:
                continue
            if section == "Minimize":
                obj += parse_terms(line.split(":", 1)[1])
            elif section == "Subject To":
                body = line.split(":", 1)[1]
                m = re.match(r"(.*?)(>=|<=|=)\s*(\S+)$", body)
                lhs, sense, rhs = m.group(1), m.group(2), float(m.group(3))
                rows.append((parse_terms(lhs), sense, rhs))
            elif section == "Bounds":
                nvars += 1
    return nvars, obj, rows


def solve(path):
    n, obj, rows = read_lp(path)
    c = np.zeros(n)
    for v, k in obj:
        c[v] += k
    eq, ub = ([], [], [], []), ([], [], [], [])
    for terms, sense, rhs in rows:
        target = eq if sense == "=" else ub
        sign = -1.0 if sense == ">=" else 1.0
        r = len(target[3])
        for v, k in terms:
            target[0].append(r)
            target[1].append(v)
            target[2].append(sign * k)
        target[3].append(sign * rhs)

    def mat(t):
        if not t[3]:
            return None, None
        return coo_matrix((t[2], (t[0], t[1])), shape=(len(t[3]), n)).tocsr(), np.array(t[3])

    a_eq, b_eq = mat(eq)
    a_ub, b_ub = mat(ub)
    return linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=(0, 1), method="highs")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("lp")
    ap.add_argument("--expect", type=float, help="compare against this optimum")
    ap.add_argument("--tol", type=float, default=1e-6)
    args = ap.parse_args()
    res = solve(args.lp)
    if res.status == 2:
        print("infeasible")
        sys.exit(0 if args.expect is None else 1)
    if res.status != 0:
        print("solver status", res.status, res.message)
        sys.exit(1)
    print(f"{res.fun:.9f}")
    if args.expect is not None and abs(res.fun - args.expect) > args.tol * max(1.0, abs(args.expect)):
        print(f"mismatch: expected {args.expect:.9f}")
        sys.exit(1)


if __name__ == "__main__":
    main()
