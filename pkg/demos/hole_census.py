"""How the homology grows with the number of holes.

Polygons with b holes all produce 4-manifolds with b_0 = b_4 = 1, and
the holes show up three times: as b_1, as b_3, and as an extra 2*b
inside the middle degree.  This script generates a family of shapes
with randomized characteristic rows and tabulates the pattern.

Run with:  python3 demos/hole_census.py [seed]
"""

import sys

from torushom import polygon_with_holes
from torushom.fields import QQ

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0

shapes = [
    (4,),
    (4, 3),
    (5, 2),
    (3, 3, 3),
    (5, 3, 2),
    (4, 2, 2, 2),
    (6, 3, 3, 2),
]

print("walls per circle    holes  betti numbers      middle split")
print("-" * 62)
for lengths in shapes:
    fix = polygon_with_holes(lengths, seed=seed)
    m = fix.manifold
    holes = len(lengths) - 1
    totals = m.total_betti(QQ)
    diagonal = m.diagonal_page(1, QQ, "limit").dimension
    middle = m.bigraded_component(1, 1, QQ).free_rank
    split = "%d diagonal + %d from the holes" % (diagonal, middle - diagonal)
    print("%-19s %-6d %-18s %s"
          % (",".join(str(x) for x in lengths), holes, totals, split))

# The middle betti number also balances the books with the fixed points:
# the alternating sum of the betti numbers must equal the number of
# corners, whatever the rows were.
print()
fix = polygon_with_holes((5, 4, 3), seed=seed)
m = fix.manifold
corners = m.poset.f_vector()[m.n]
print("one more shape, (5,4,3): euler characteristic %d, corners %d"
      % (m.euler_characteristic(QQ), corners))

# Each hole contributes one independent row to the kernel of the map
# that restricts the manifold's homology to its fixed-point data.
print("restriction kernel dimensions by shape:")
for lengths in shapes:
    fix = polygon_with_holes(lengths, seed=seed)
    dim = len(fix.manifold.kernel_of_g(2))
    print("  %-12s -> %d" % (",".join(str(x) for x in lengths), dim))
