"""Small groups built from standard constructions, and their magnetic structures.

The catalog covers every group of even order up to 16 that has a subgroup of
index 2 (A4 is the only group of even order <= 16 without one).
"""

from __future__ import annotations

from collections import deque
from itertools import product
from typing import Callable, Optional, Sequence

from .groups import FiniteGroup, MagneticGroup


def _from_elements(elements: list, mul: Callable, labels: Optional[list] = None) -> FiniteGroup:
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, labels or [str(x) for x in elements])


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)])


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    elems = [(a, b) for a in range(A.order) for b in range(B.order)]
    return _from_elements(elems, lambda x, y: (A.mul(x[0], y[0]), B.mul(x[1], y[1])))


def metacyclic(m: int, n: int, k: int, s: int = 0) -> FiniteGroup:
    """<a, b | a^m, b^n = a^s, b a b^-1 = a^k>, elements a^x b^y."""
    assert pow(k, n, m) == 1 % m and (k * s - s) % m == 0
    elems = [(x, y) for y in range(n) for x in range(m)]

    def mul(u, v):
        x = (u[0] + pow(k, u[1], m) * v[0]) % m
        y = u[1] + v[1]
        if y >= n:
            x, y = (x + s) % m, y - n
        return (x, y)

    return _from_elements(elems, mul)


def semidirect(N: FiniteGroup, aut: Sequence[int], n: int) -> FiniteGroup:
    """N x| Z/n with the generator of Z/n acting by the automorphism ``aut``."""
    powers = [list(range(N.order))]
    for _ in range(1, n):
        powers.append([aut[x] for x in powers[-1]])
    elems = [(x, y) for y in range(n) for x in range(N.order)]
    return _from_elements(elems, lambda u, v: (N.mul(u[0], powers[u[1]][v[0]]), (u[1] + v[1]) % n))


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n."""
    return metacyclic(n, 2, n - 1)


def quaternion(order: int) -> FiniteGroup:
    m = order // 2
    return metacyclic(m, 2, m - 1, m // 2)


def _z4z2_aut(rule) -> tuple:
    """Automorphism of Z/4 x Z/2 (element index 2x + y) from a map on pairs."""
    return tuple(2 * a + b for a, b in (rule(x, y) for x in range(4) for y in range(2)))


def groups_up_to_16() -> list:
    """(name, group) for every group of even order <= 16 with an index-2 subgroup."""
    c = cyclic
    dp = direct_product
    z4z2 = dp(c(4), c(2))
    out = [
        ("C2", c(2)),
        ("C4", c(4)),
        ("C2xC2", dp(c(2), c(2))),
        ("C6", c(6)),
        ("S3", dihedral(3)),
        ("C8", c(8)),
        ("C4xC2", z4z2),
        ("C2^3", dp(dp(c(2), c(2)), c(2))),
        ("D4", dihedral(4)),
        ("Q8", quaternion(8)),
        ("C10", c(10)),
        ("D5", dihedral(5)),
        ("C12", c(12)),
        ("C6xC2", dp(c(6), c(2))),
        ("D6", dihedral(6)),
        ("Dic3", quaternion(12)),
        ("C14", c(14)),
        ("D7", dihedral(7)),
        ("C16", c(16)),
        ("C4xC4", dp(c(4), c(4))),
        ("(C4xC2):C2", semidirect(z4z2, _z4z2_aut(lambda x, y: (x, (y + x) % 2)), 2)),
        ("C4:C4", metacyclic(4, 4, 3)),
        ("C8xC2", dp(c(8), c(2))),
        ("M16", metacyclic(8, 2, 5)),
        ("D8", dihedral(8)),
        ("QD16", metacyclic(8, 2, 3)),
        ("Q16", quaternion(16)),
        ("C4xC2^2", dp(z4z2, c(2))),
        ("C2xD4", dp(c(2), dihedral(4))),
        ("C2xQ8", dp(c(2), quaternion(8))),
        ("C4oD4", semidirect(z4z2, _z4z2_aut(lambda x, y: ((x + 2 * y) % 4, y)), 2)),
        ("C2^4", dp(dp(dp(c(2), c(2)), c(2)), c(2))),
    ]
    return out


def gradings(G: FiniteGroup) -> list:
    """All surjective homomorphisms G -> Z/2, as phi value tuples."""
    gens = G.generating_set()
    found = []
    for bits in product((0, 1), repeat=len(gens)):
        if not any(bits):
            continue
        phi = {0: 0}
        queue = deque([0])
        ok = True
        while queue and ok:
            x = queue.popleft()
            for g, b in zip(gens, bits):
                y = G.mul(x, g)
                v = phi[x] ^ b
                if y in phi:
                    if phi[y] != v:
                        ok = False
                        break
                else:
                    phi[y] = v
                    queue.append(y)
        if ok:
            vals = tuple(phi[g] for g in range(G.order))
            if all(vals[G.mul(a, b)] == vals[a] ^ vals[b] for a in range(G.order) for b in range(G.order)):
                found.append(vals)
    return sorted(set(found))


def magnetic_catalog(max_order: int = 16) -> list:
    """(name, MagneticGroup) over the catalog and every grading."""
    out = []
    for name, G in groups_up_to_16():
        if G.order > max_order:
            continue
        for phi in gradings(G):
            core = "".join(str(v) for v in phi)
            out.append((f"{name}[{core}]", MagneticGroup(G.mult, phi, G.labels)))
    return out


def cyclic_magnetic(n: int) -> MagneticGroup:
    """(Z/n, mod 2) for even n."""
    return MagneticGroup(cyclic(n).mult, [g % 2 for g in range(n)])


def invariants(G: FiniteGroup) -> tuple:
    """Isomorphism invariants strong enough to separate the catalog."""
    orders = tuple(sorted(G.element_orders))
    commutators = G.closure({G.prod(a, b, G.inv(a), G.inv(b)) for a in range(G.order) for b in range(G.order)})
    squares = G.closure({G.mul(a, a) for a in range(G.order)})
    return (G.order, orders, len(G.center), len(commutators), len(squares), len(G.conjugacy_classes()))
