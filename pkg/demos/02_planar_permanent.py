"""The permanent side in polynomial time for maximum degree 3.

Run: python3 demos/02_planar_permanent.py
"""

import time

from ucount import corpus, oracle
from ucount.fkt import perfmatch_planar, pfaffian_orientation, uperm_degree3, verify_pfaffian

# A Pfaffian orientation gives every bounded face an odd number of clockwise edges.
k4 = corpus.k4()
og = pfaffian_orientation(k4)
print("K4 orientation:", [e.dir for e in og.graph.edges])
print("every even central cycle oddly oriented:", verify_pfaffian(og.graph) is None)

# With it the Pfaffian counts perfect matchings: K4 has three.
print("PerfMatch(K4) =", perfmatch_planar(k4))

# For degree <= 3 the complement of a cycle cover is a matching of the
# degree-3 vertices, so uperm reduces to one Pfaffian.
for name, g in [("cube", corpus.cube()), ("weighted random", corpus.random_subcubic_planar(14, 7))]:
    print(f"{name}: uperm_degree3 = {uperm_degree3(g)}, oracle = {oracle.uperm(g)}")

# The polynomial method keeps going where enumeration gives up.
for k in (10, 40, 80):
    g = corpus.prism(k)
    t0 = time.perf_counter()
    value = uperm_degree3(g)
    print(f"prism({k}): {g.n} vertices, uperm = {value} in {time.perf_counter() - t0:.2f}s")
