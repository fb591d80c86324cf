"""Counting models of a 3-CNF formula with cycle covers of a planar graph.

Run: python3 demos/04_sat_reduction.py
"""

from ucount import oracle
from ucount.gadgets import DET, PERM, make_clause_gadget, make_iff, make_skew_crossover
from ucount.oracle import gadget_signature
from ucount.reduce import CnfFormula, compile, cubicize, sat_count

# Gadgets are judged by their signatures: the weighted count of internal covers
# for each set of stubs used by the outside.
for name, gad in [("crossover", make_skew_crossover(PERM)), ("iff", make_iff(PERM)), ("clause", make_clause_gadget(PERM))]:
    rows = ", ".join(f"{{{' '.join(k)}}}:{v}" for k, v in gadget_signature(gad, PERM).rows())
    print(f"{name:9s} {rows}")

# The clause gadget has a cover for every non-empty set of true literals and
# none for the all-false one.  Iffs tie literal edges to variable loops.
phi = CnfFormula.of([(1, -2, 3), (-1, 2, -3)])
print("formula:", phi.to_dimacs().replace("\n", " | "))
print("models by truth table:", sat_count(phi))

perm = compile(phi, PERM)
print(f"permanent graph: {perm.graph.n} vertices, degrees {sorted(set(perm.graph.degrees()))}")
print("uperm =", oracle.uperm(perm.graph))

det = compile(phi, DET)
print("(-1)^m udet =", (-1) ** phi.m * oracle.udet(det.graph))

# Where each vertex came from is kept for inspection.
roles = {}
for role in det.provenance["vertices"].values():
    key = role.split("[")[0]
    roles[key] = roles.get(key, 0) + 1
print("vertex origins:", roles)

# Cubicization replaces degree-4 vertices and pads degree-2 ones; the
# determinant is rescaled by a known factor.
one = CnfFormula.of([(1, 1, 1)])
res = cubicize(compile(one, DET).graph)
print(f"cubic graph for (x1): {res.graph.n} vertices, scale {res.scale}")
print("recovered count:", (-1) ** one.m * oracle.udet(res.graph) / res.scale)
