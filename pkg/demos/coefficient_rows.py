"""
K-theory of a point
===================

The coefficient groups of magnetic equivariant K-theory are assembled from
the counts (n_R, n_C, n_H) and the classical KO, KU and KSp rows.  When the
pullback of Z/4 along phi splits, the rows repeat with period 4.
"""

from magnetick.catalog import cyclic_magnetic, magnetic_catalog
from magnetick.coefficients import periodicity, point_coefficients
from magnetick.corep import classify_magnetic_irreps


def rows(G):
    ring = classify_magnetic_irreps(G)
    return [str(point_coefficients(ring, t).group) for t in range(0, -8, -1)]


for n in (2, 4, 6, 8):
    G = cyclic_magnetic(n)
    info = periodicity(G)
    print(f"Z/{n}  splits={info['splits']!s:<5}  " + " | ".join(rows(G)))

# Z/6 has a complex pair and a real character: K^-1 = Z/2 but K^-5 = 0, so the
# rows are not 4-periodic, and indeed the extension is cyclic of order 12.

# Over the whole catalog, splitting forces 4-periodic rows; the converse fails.
catalog = magnetic_catalog(16)
split = periodic = 0
for name, G in catalog:
    r = rows(G)
    p = r[:4] == r[4:]
    s = periodicity(G)["splits"]
    split += s
    periodic += p
    if p and not s:
        print(f"4-periodic without a splitting: {name}  counts {classify_magnetic_irreps(G).counts}")
print(f"{len(catalog)} magnetic groups, {split} split, {periodic} with 4-periodic rows")
