#!/usr/bin/env python3
"""Tiny brute-force 0/1 ILP solver for exercising the subprocess adapter.

Reads the LP subset written by the library (Minimize / Subject To / Binary /
End), enumerates every assignment, and writes the documented solution-file
format. Only meant for models with at most ~20 binaries.
"""
import itertools
import re
import sys


def parse_lp(path):
    objective = {}
    rows = []
    binaries = []
    section = None
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line == "Minimize":
                section = "obj"
                continue
            if line == "Subject To":
                section = "rows"
                continue
            if line == "Binary":
                section = "bin"
                continue
            if line == "End":
                break
            if section == "obj":
                body = line.split(":", 1)[1]
                for coeff, var in re.findall(r"([+-]?\s*\d+)\s+(\w+)", body):
                    objective[var] = int(coeff.replace(" ", ""))
            elif section == "rows":
                name, body = line.split(":", 1)
                m = re.search(r"(<=|>=|=)\s*([+-]?\d+)\s*$", body)
                sense, rhs = m.group(1), int(m.group(2))
                expr = body[: m.start()]
                terms = {}
                for sign, coeff, var in re.findall(r"([+-]?)\s*(\d*)\s*(x_\d+_\d+)", expr):
                    value = int(coeff) if coeff else 1
                    if sign == "-":
                        value = -value
                    terms[var] = terms.get(var, 0) + value
                rows.append((name.strip(), terms, sense, rhs))
            elif section == "bin":
                binaries.append(line)
    return objective, rows, binaries


def main():
    lp_path, sol_path = sys.argv[1], sys.argv[2]
    objective, rows, binaries = parse_lp(lp_path)
    if len(binaries) > 20:
        sys.stderr.write("fake_milp: too many binaries (%d)\n" % len(binaries))
        return 2

    best = None
    best_assignment = None
    for bits in itertools.product((0, 1), repeat=len(binaries)):
        value = dict(zip(binaries, bits))
        ok = True
        for _, terms, sense, rhs in rows:
            lhs = sum(c * value.get(v, 0) for v, c in terms.items())
            if sense == "<=" and lhs > rhs:
                ok = False
            elif sense == ">=" and lhs < rhs:
                ok = False
            elif sense == "=" and lhs != rhs:
                ok = False
            if not ok:
                break
        if not ok:
            continue
        cost = sum(c * value.get(v, 0) for v, c in objective.items())
        if best is None or cost < best:
            best = cost
            best_assignment = bits
    if best is None:
        sys.stderr.write("fake_milp: infeasible\n")
        return 3

    with open(sol_path, "w") as out:
        out.write("# fake_milp solution\n")
        out.write("=obj= %d\n" % best)
        for var, bit in zip(binaries, best_assignment):
            out.write("%s %d\n" % (var, bit))
    return 0


if __name__ == "__main__":
    sys.exit(main())
