"""
Equivariant complexes from posets
=================================

Order complexes of random G-posets give valid G-CW complexes of any shape.
We check that the Bredon differential squares to zero and print E_2.
"""

import random

from magnetick.ahss import d1, e1_page, turn_page
from magnetick.catalog import cyclic_magnetic
from magnetick.posets import random_gposet

rng = random.Random(3)
G = cyclic_magnetic(8)
X = random_gposet(G, 3, rng, density=0.6).order_complex()
print(f"{len(X.cells)} cells, dimension {X.dimension}")
for c in X.cells:
    print(f"   {c.id:<16} dim {c.dim}  stabilizer {c.stabilizer}")

for t in (0, -1, -2):
    ds = d1(X, G, None, t)
    print(f"t={t}: d1 o d1 = 0 ?", all(b.compose(a).is_zero() for a, b in zip(ds, ds[1:])))

E2 = turn_page(e1_page(X, G))
for n, t in E2.grid():
    print(f"E_2^{{{n},{t}}} = {E2.entry(n, t)}")
