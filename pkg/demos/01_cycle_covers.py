"""Cycle covers, the undirected determinant and the undirected permanent.

Run: python3 demos/01_cycle_covers.py
"""

from fractions import Fraction

from ucount import corpus, oracle

# A cycle cover picks edges so that every vertex has degree exactly 2.
# The cube has nine of them: six Hamiltonian 8-cycles and three pairs of squares.
cube = corpus.cube()
covers = list(oracle.enumerate_cycle_covers(cube))
print("cube covers:", len(covers))
print("components per cover:", sorted(c.components for c in covers))

# uperm adds up the cover weights; udet signs each cover by (-1)^components
# and the whole sum by (-1)^n.
print("uperm(cube) =", oracle.uperm(cube))
print("udet(cube)  =", oracle.udet(cube))

# Weights are exact rationals; halving one edge only rescales covers through it.
half = cube.with_weights({0: Fraction(1, 2)})
print("udet with edge 0 halved =", oracle.udet(half))

# Loops and parallel edges are allowed: a digon is a 2-cycle.
from ucount.graph import Multigraph

digon = Multigraph.from_pairs(2, [(0, 1), (0, 1)], ["2", "3"])
print("digon: uperm", oracle.uperm(digon), "udet", oracle.udet(digon))

# Large graphs switch to a frontier transfer count, which agrees with enumeration.
big = corpus.prism(9)
print("prism(9):", big.n, "vertices;",
      "enumerate", oracle.uperm(big, method="enumerate"),
      "frontier", oracle.uperm(big, method="frontier"))
