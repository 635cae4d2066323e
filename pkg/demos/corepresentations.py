"""
Corepresentations of cyclic magnetic groups
===========================================

Z/2n with the generator acting antiunitarily.  Each irreducible character of
the core Z/n is sorted into real, complex or quaternionic type by its
Schur-Frobenius indicator, and for one-dimensional characters we can write the
matrix of the antiunitary generator directly.
"""

import numpy as np

from magnetick.catalog import cyclic_magnetic
from magnetick.corep import classify_magnetic_irreps, corep_law_residual, wigner_construct

for n in (2, 4, 6, 8, 12):
    ring = classify_magnetic_irreps(cyclic_magnetic(n))
    print(f"Z/{n}: n_R, n_C, n_H = {ring.counts}")
    for r in ring.irreps:
        print(f"   {r.name}  {r.type.value:<13} dim {r.dimension}  from {', '.join(r.constituent_names)}")

# The quaternionic irrep of Z/4 doubles the sign character of the core.
G = cyclic_magnetic(4)
quat = classify_magnetic_irreps(G).by_name("R2")
built = wigner_construct(quat.plus, G)
print("\nZ/4, R2: M(a) =")
print(np.round(built.matrices[G.a0].real, 12))
print("law residual", corep_law_residual(built.matrices, G))

# a complex pair for Z/8: the two characters are swapped by conjugation, so
# the corepresentation is block off-diagonal in the antiunitary element
G = cyclic_magnetic(8)
cplx = classify_magnetic_irreps(G).by_name("R2")
built = wigner_construct(cplx.plus, G)
print("\nZ/8, R2: M(a) =")
print(np.round(built.matrices[G.a0], 12), "phase", built.phase)
