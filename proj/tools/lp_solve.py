#!/usr/bin/env python3
"""Solve a lotforge LP file with SciPy and write `<name> <value>` lines.

Usage: lp_solve.py MODEL.lp SOLUTION.sol

Reads the subset of the CPLEX LP format that lotforge writes (Minimize,
Subject To, Bounds, Binaries, End). Binaries are solved as integers with
scipy.optimize.milp; without a Binaries section the file is an LP.
Exits nonzero when no optimal solution is found.
"""

import math
import re
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import coo_matrix

SECTIONS = {"minimize": "obj", "subject to": "rows", "bounds": "bounds", "binaries": "bin", "end": "end"}
TERM = re.compile(r"([+-])?\s*([0-9.eE+-]+)\s+([A-Za-z_][A-Za-z0-9_]*)")


def number(tok):
    t = tok.lower()
    if t in ("+inf", "inf", "infinity", "+infinity"):
        return math.inf
    if t in ("-inf", "-infinity"):
        return -math.inf
    return float(tok)


def parse_terms(text):
    out = []
    for sign, coef, name in TERM.findall(text):
        c = float(coef)
        out.append((-c if sign == "-" else c, name))
    return out


def read_lp(path):
    section = None
    objective = []
    rows = []  # (terms, sense, rhs)
    bounds = {}
    binaries = []
    order = []
    current = None

    def declare(name):
        if name not in bounds:
            bounds[name] = [0.0, math.inf]
            order.append(name)

    def finish_row(buf):
        m = re.match(r"\s*([^:]+):(.*?)(<=|>=|=)\s*(\S+)\s*$", buf)
        if not m:
            raise ValueError("bad row: " + buf)
        rows.append((parse_terms(m.group(2)), m.group(3), number(m.group(4))))

    with open(path) as f:
        for raw in f:
            line = raw.rstrip("\n")
            if line.startswith("\\") or not line.strip():
                continue
            key = line.strip().lower()
            if key in SECTIONS:
                if current is not None:
                    finish_row(current)
                    current = None
                section = SECTIONS[key]
                continue
            if section == "obj":
                objective.extend(parse_terms(line.split(":", 1)[1] if ":" in line else line))
            elif section == "rows":
                starts_new = re.match(r"\s*[A-Za-z_][A-Za-z0-9_]*:", line) is not None
                if starts_new and current is not None:
                    finish_row(current)
                    current = None
                current = line if current is None else current + " " + line
            elif section == "bounds":
                parts = line.split()
                if len(parts) == 5 and parts[1] == "<=" and parts[3] == "<=":
                    declare(parts[2])
                    bounds[parts[2]] = [number(parts[0]), number(parts[4])]
                elif len(parts) == 3 and parts[1] == "=":
                    declare(parts[0])
                    bounds[parts[0]] = [number(parts[2])] * 2
                elif len(parts) == 2 and parts[1].lower() == "free":
                    declare(parts[0])
                    bounds[parts[0]] = [-math.inf, math.inf]
                else:
                    raise ValueError("bad bound: " + line)
            elif section == "bin":
                binaries.extend(line.split())
    if current is not None:
        finish_row(current)
    for terms, _, _ in rows:
        for _, name in terms:
            declare(name)
    for _, name in objective:
        declare(name)
    return objective, rows, bounds, binaries, order


def main(argv):
    if len(argv) != 3:
        sys.stderr.write(__doc__)
        return 2
    objective, rows, bounds, binaries, order = read_lp(argv[1])
    index = {name: i for i, name in enumerate(order)}
    n = len(order)
    c = np.zeros(n)
    for coef, name in objective:
        c[index[name]] += coef

    lo = np.array([bounds[v][0] for v in order])
    hi = np.array([bounds[v][1] for v in order])
    integrality = np.zeros(n)
    for name in binaries:
        integrality[index[name]] = 1
        lo[index[name]] = max(lo[index[name]], 0.0)
        hi[index[name]] = min(hi[index[name]], 1.0)

    constraints = []
    if rows:
        r_idx, c_idx, vals = [], [], []
        row_lo = np.empty(len(rows))
        row_hi = np.empty(len(rows))
        for i, (terms, sense, rhs) in enumerate(rows):
            for coef, name in terms:
                r_idx.append(i)
                c_idx.append(index[name])
                vals.append(coef)
            row_lo[i] = rhs if sense in (">=", "=") else -np.inf
            row_hi[i] = rhs if sense in ("<=", "=") else np.inf
        a = coo_matrix((vals, (r_idx, c_idx)), shape=(len(rows), n)).tocsr()
        constraints.append(LinearConstraint(a, row_lo, row_hi))

    res = milp(c, constraints=constraints, integrality=integrality, bounds=Bounds(lo, hi),
               options={"mip_rel_gap": 1e-9})
    if res.status != 0 or res.x is None:
        sys.stderr.write("lp_solve.py: " + str(res.message) + "\n")
        return 1
    with open(argv[2], "w") as out:
        out.write("obj %.17g\n" % res.fun)
        for name, v in zip(order, res.x):
            out.write("%s %.17g\n" % (name, v))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
