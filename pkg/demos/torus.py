"""
The torus with a fourfold magnetic rotation
===========================================

T^2 = R^2 / Z^2 with Z/4 acting by the rotation composed with time reversal.
The complex has fixed points Gamma and X, an orbit {A, A'} of points fixed by
the core, two orbits of 1-cells and one free 2-cell.  Without spin the d_2
from (0,-1) has to be supplied, and the extension in degree -2 is asserted;
with the spin twist the sequence collapses at E_2.
"""

from pathlib import Path

import magnetick
from magnetick.ahss import run_ahss
from magnetick.catalog import cyclic_magnetic
from magnetick.coefficients import Twist
from magnetick.groups import CentralExtension
from magnetick.inputs import load_assertions, load_complex, load_group, load_overrides

data = Path(magnetick.__file__).parent / "data"
G = load_group(data / "z4.json")
X = load_complex(data / "torus.json", G)


def show(result):
    for P in result.pages:
        print(f"E_{P.r}:  " + "  ".join(f"({n},{t}) {P.entry(n, t)}" for n, t in P.grid() if t in (0, -1, -2)))
    for r in result.reports:
        print(f"   K^{r.degree} = {r.total if r.total is not None else 'ambiguous'}")


overrides, _ = load_overrides(data / "torus_nosoc_overrides.json")
print("without spin, no assertion")
show(run_ahss(X, G, None, overrides))

print("\nwithout spin, nonsplit assertion")
show(run_ahss(X, G, None, overrides, load_assertions(data / "torus_nosoc_assertions.json")))

print("\nwith spin")
twist = Twist(CentralExtension(cyclic_magnetic(8), G, [x % 4 for x in range(8)]), "sign")
show(run_ahss(X, G, twist))
