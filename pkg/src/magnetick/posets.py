"""G-CW complexes from G-posets.

The order complex of a poset on which G acts by order-preserving maps is a
simplicial G-complex in which every element fixing a chain fixes it
pointwise, so orbits of chains are equivariant cells.  Incidences come from
the simplicial boundary: removing vertex i of a chain c gives a face
g * b for an orbit representative b, recorded as (c, b, g, (-1)^i).
"""

from __future__ import annotations

import random
from itertools import product
from typing import Optional, Sequence

from .ahss import Cell, GCWComplex, Incidence
from .groups import FiniteGroup


class GPoset:
    """Disjoint union of coset spaces G/K_0, ..., G/K_m, graded by level.

    ``covers[i]`` is a set of pairs (a, b) of coset indices with a in level i,
    b in level i+1, closed under the G-action; the order is its transitive
    closure.
    """

    def __init__(self, G: FiniteGroup, subgroups: Sequence[Sequence[int]], covers: Sequence[set]):
        self.G = G
        self.levels = []
        for K in subgroups:
            K = G.check_subgroup(K)
            cosets = []
            seen = set()
            for g in range(G.order):
                if g in seen:
                    continue
                coset = tuple(sorted(G.mul(g, k) for k in K))
                seen.update(coset)
                cosets.append(coset)
            self.levels.append(cosets)
        self.where = [{x: i for i, c in enumerate(cosets) for x in c} for cosets in self.levels]
        self.covers = [set(c) for c in covers]
        for i, rel in enumerate(self.covers):
            for a, b in list(rel):
                for g in range(G.order):
                    if (self.act(g, i, a), self.act(g, i + 1, b)) not in rel:
                        raise ValueError("cover relation is not G-invariant")

    def act(self, g: int, level: int, a: int) -> int:
        return self.where[level][self.G.mul(g, self.levels[level][a][0])]

    def chains(self) -> list:
        """Chains as tuples of (level, index), increasing in level."""
        up = [{} for _ in self.covers]
        for i, rel in enumerate(self.covers):
            for a, b in rel:
                up[i].setdefault(a, set()).add(b)
        below = {}
        nlev = len(self.levels)
        # x <= y iff y is reachable from x through covers
        reach = {}
        for i in range(nlev - 1, -1, -1):
            for a in range(len(self.levels[i])):
                r = {(i, a)}
                if i < nlev - 1:
                    for b in up[i].get(a, ()):
                        r |= reach[(i + 1, b)]
                reach[(i, a)] = r
        out = []

        def extend(chain):
            out.append(tuple(chain))
            last = chain[-1]
            for nxt in sorted(reach[last]):
                if nxt[0] > last[0]:
                    extend(chain + [nxt])

        for i in range(nlev):
            for a in range(len(self.levels[i])):
                extend([(i, a)])
        return out

    def move(self, g: int, chain: tuple) -> tuple:
        return tuple((lev, self.act(g, lev, a)) for lev, a in chain)

    def stabilizer(self, chain: tuple) -> tuple:
        return tuple(g for g in range(self.G.order) if self.move(g, chain) == chain)

    def order_complex(self, max_dim: Optional[int] = None) -> GCWComplex:
        G = self.G
        chains = [c for c in self.chains() if max_dim is None or len(c) - 1 <= max_dim]
        rep_of, cells = {}, []
        for c in chains:
            if c in rep_of:
                continue
            name = "c" + "_".join(f"{lev}.{a}" for lev, a in c)
            for g in range(G.order):
                rep_of.setdefault(self.move(g, c), (c, g, name))
            cells.append(Cell(name, len(c) - 1, self.stabilizer(c), 1))
        incidences = []
        for cell in cells:
            c = next(x for x, (r, g, n) in rep_of.items() if n == cell.id and x == r)
            if len(c) < 2:
                continue
            for i in range(len(c)):
                face = c[:i] + c[i + 1:]
                rep, g, name = rep_of[face]
                incidences.append(Incidence(cell.id, name, g, (-1) ** i))
        return GCWComplex(cells, incidences)


def random_gposet(G: FiniteGroup, levels: int, rng: random.Random, density: float = 0.5) -> GPoset:
    """Random graded G-poset with cyclic level stabilizers."""
    subgroups = []
    for _ in range(levels):
        x = rng.randrange(G.order)
        subgroups.append(G.closure([x]))
    probe = GPoset(G, subgroups, [set() for _ in range(levels - 1)])
    covers = []
    for i in range(levels - 1):
        rel = set()
        pairs = list(product(range(len(probe.levels[i])), range(len(probe.levels[i + 1]))))
        rng.shuffle(pairs)
        for a, b in pairs:
            if (a, b) in rel or rng.random() > density:
                continue
            for g in range(G.order):
                rel.add((probe.act(g, i, a), probe.act(g, i + 1, b)))
        covers.append(rel)
    return GPoset(G, subgroups, covers)
