"""The determinant side for cubic plane graphs without tension.

Run: python3 demos/03_semi_pfaffian.py
"""

from ucount import corpus, oracle
from ucount.semipfaffian import find_semi_pfaffian, is_without_tension, tension, udet_cubic

# Tension compares the out-vertices of the two colour classes of an even cycle.
cube = corpus.cube()
print("cube outer square:", tension(cube, [0, 1, 2, 3]))
print("cube without tension:", is_without_tension(cube)[0])

# K4 has tension 2 on its 4-cycles and no semi-Pfaffian orientation.
ok, rep = is_without_tension(corpus.k4())
print("K4 without tension:", ok, "worst cycle", rep.cycle.vertices, "tension", rep.tension)

# A semi-Pfaffian orientation: central 2k-cycles are oddly oriented iff k is odd.
og = find_semi_pfaffian(cube)
print("semi-Pfaffian orientation of the cube:", "".join("+" if e.dir == "uv" else "-" for e in og.edges))

# Then udet is one Pfaffian of the inverted-weight matrix, up to a sign read
# off a single cover.
for name, g in corpus.cubic_corpus().items():
    if name == "K4":
        continue
    print(f"{name}: udet_cubic = {udet_cubic(g)}, oracle = {oracle.udet(g)}")
