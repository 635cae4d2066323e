"""Finite groups given by multiplication tables, magnetic gradings and central extensions.

Elements are dense indices ``0..order-1`` and element ``0`` is the identity.
Everything here is exhaustive, which is fine at the supported orders.
"""

from __future__ import annotations

import os
from collections import deque
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    BadExtension,
    GroupTooLarge,
    NotAGroup,
    NotASubgroup,
    PhiNotHomomorphism,
    PhiNotSurjective,
)

DEFAULT_MAX_ORDER = 64


def max_order() -> int:
    raw = os.environ.get("MAGNETICK_MAX_ORDER")
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_MAX_ORDER


class FiniteGroup:
    """A finite group stored extensionally."""

    def __init__(self, mult, labels: Optional[Sequence[str]] = None, validate: bool = True):
        table = np.asarray(mult, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise NotAGroup("multiplication table must be a nonempty square matrix")
        n = table.shape[0]
        bound = max_order()
        if n > bound:
            raise GroupTooLarge(f"group order {n} exceeds the configured bound {bound}", order=n, bound=bound)
        self.order = n
        self.mult = table
        self.mult.setflags(write=False)
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise NotAGroup("labels must have one entry per element")
        self.labels = tuple(str(s) for s in labels)
        if validate:
            self._validate()

    def _validate(self) -> None:
        m, n = self.mult, self.order
        if m.min() < 0 or m.max() >= n:
            raise NotAGroup("table entries must be element indices")
        idx = np.arange(n)
        if not (np.array_equal(m[0], idx) and np.array_equal(m[:, 0], idx)):
            raise NotAGroup("element 0 must be the identity")
        for row in m:
            if len(set(row.tolist())) != n:
                raise NotAGroup("table is not a Latin square (missing inverses)")
        for col in m.T:
            if len(set(col.tolist())) != n:
                raise NotAGroup("table is not a Latin square (missing inverses)")
        lhs = m[m]  # lhs[a, b, c] = (ab)c
        rhs = m[:, m]  # rhs[a, b, c] = a(bc)
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0].tolist()
            raise NotAGroup("multiplication is not associative", witness=bad)

    # basic arithmetic
    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def prod(self, *elems: int) -> int:
        out = 0
        for e in elems:
            out = int(self.mult[out, e])
        return out

    @cached_property
    def inverses(self) -> tuple:
        inv = [0] * self.order
        rows, cols = np.nonzero(self.mult == 0)
        for a, b in zip(rows.tolist(), cols.tolist()):
            inv[a] = b
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = 0
        for _ in range(k):
            out = int(self.mult[out, a])
        return out

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.prod(g, x, self.inv(g))

    @cached_property
    def element_orders(self) -> tuple:
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = int(self.mult[x, a])
                k += 1
            orders.append(k)
        return tuple(orders)

    @cached_property
    def exponent(self) -> int:
        out = 1
        for k in self.element_orders:
            out = out * k // np.gcd(out, k)
        return int(out)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    @cached_property
    def center(self) -> tuple:
        return tuple(z for z in range(self.order) if np.array_equal(self.mult[z], self.mult[:, z]))

    def closure(self, gens: Iterable[int]) -> tuple:
        """Subgroup generated by ``gens``, as a sorted tuple."""
        gens = list(gens)
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(self.mult[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def generating_set(self, elements: Optional[Sequence[int]] = None) -> tuple:
        """Greedy generating set, preferring elements of large order."""
        if elements is None:
            elements = range(self.order)
        pool = sorted(elements, key=lambda a: (-self.element_orders[a], a))
        gens: list = []
        current = {0}
        for a in pool:
            if a not in current:
                gens.append(a)
                current = set(self.closure(gens))
        return tuple(gens)

    def is_subgroup(self, elements: Iterable[int]) -> bool:
        s = set(elements)
        if 0 not in s or not s or any(not (0 <= x < self.order) for x in s):
            return False
        return all(int(self.mult[a, b]) in s for a in s for b in s)

    def check_subgroup(self, elements: Iterable[int]) -> tuple:
        elems = tuple(sorted(set(int(x) for x in elements)))
        if not self.is_subgroup(elems):
            raise NotASubgroup("elements do not form a subgroup", elements=list(elems))
        return elems

    def subgroup_table(self, elements: Sequence[int]) -> tuple:
        """Reindexed multiplication table of a subgroup plus the embedding."""
        elems = self.check_subgroup(elements)
        local = {g: i for i, g in enumerate(elems)}
        table = [[local[int(self.mult[a, b])] for b in elems] for a in elems]
        return table, elems

    def subgroup(self, elements: Sequence[int]) -> tuple:
        table, elems = self.subgroup_table(elements)
        return FiniteGroup(table, [self.labels[g] for g in elems], validate=False), elems

    def conjugacy_classes(self, elements: Optional[Sequence[int]] = None) -> list:
        """Classes of a subgroup under conjugation by itself, sorted by least element."""
        elems = tuple(range(self.order)) if elements is None else self.check_subgroup(elements)
        todo = set(elems)
        classes = []
        for x in elems:
            if x not in todo:
                continue
            cls = sorted({self.conjugate(g, x) for g in elems})
            todo.difference_update(cls)
            classes.append(tuple(cls))
        return classes

    def is_homomorphism(self, target: "FiniteGroup", f: Sequence[int]) -> bool:
        f = np.asarray(f)
        return bool(np.array_equal(f[self.mult], target.mult[f[:, None], f[None, :]]))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order})"


class MagneticGroup(FiniteGroup):
    """A finite group with a surjective grading ``phi`` onto Z/2."""

    def __init__(self, mult, phi: Sequence[int], labels=None, validate: bool = True, a0: Optional[int] = None):
        super().__init__(mult, labels, validate=validate)
        phi = tuple(int(p) for p in phi)
        if len(phi) != self.order or any(p not in (0, 1) for p in phi):
            raise PhiNotHomomorphism("phi must list one value in {0, 1} per element")
        self.phi = phi
        if validate:
            p = np.asarray(phi)
            if not np.array_equal(p[self.mult], (p[:, None] + p[None, :]) % 2):
                bad = np.argwhere(p[self.mult] != (p[:, None] + p[None, :]) % 2)[0].tolist()
                raise PhiNotHomomorphism("phi(gh) != phi(g) + phi(h)", witness=bad)
        anti = [g for g in range(self.order) if phi[g] == 1]
        if not anti:
            raise PhiNotSurjective("phi has no antiunitary element")
        if a0 is None:
            a0 = anti[0]
        elif phi[a0] != 1:
            raise PhiNotSurjective("a0 must be antiunitary", a0=a0)
        self.a0 = int(a0)
        self.identity = 0

    @cached_property
    def core(self) -> tuple:
        return tuple(g for g in range(self.order) if self.phi[g] == 0)

    @cached_property
    def antiunitary(self) -> tuple:
        return tuple(g for g in range(self.order) if self.phi[g] == 1)

    def with_a0(self, a0: int) -> "MagneticGroup":
        """Same group with a different antiunitary coset representative."""
        return MagneticGroup(self.mult, self.phi, self.labels, validate=False, a0=a0)

    def magnetic_subgroup(self, elements: Sequence[int]) -> tuple:
        """Reindexed subgroup; magnetic when it meets the antiunitary coset."""
        table, elems = self.subgroup_table(elements)
        labels = [self.labels[g] for g in elems]
        if any(self.phi[g] for g in elems):
            return MagneticGroup(table, [self.phi[g] for g in elems], labels, validate=False), elems
        return FiniteGroup(table, labels, validate=False), elems


def build_group(mult_table, phi_values, labels=None) -> MagneticGroup:
    return MagneticGroup(mult_table, phi_values, labels)


def build_plain_group(mult_table, labels=None) -> FiniteGroup:
    return FiniteGroup(mult_table, labels)


def core_subgroup(G: MagneticGroup) -> tuple:
    return G.core


def conjugacy_classes(subset: Sequence[int], G: FiniteGroup) -> list:
    return G.conjugacy_classes(subset)


def is_magnetic(G: FiniteGroup) -> bool:
    return isinstance(G, MagneticGroup)


class CentralExtension:
    """A surjection ``total -> base`` whose kernel is central elementary abelian 2-group."""

    def __init__(self, total: FiniteGroup, base: FiniteGroup, projection: Sequence[int]):
        proj = tuple(int(x) for x in projection)
        if len(proj) != total.order:
            raise BadExtension("projection must list one base element per total element")
        if any(not (0 <= x < base.order) for x in proj):
            raise BadExtension("projection values must be base elements")
        if not total.is_homomorphism(base, proj):
            raise BadExtension("projection is not a homomorphism")
        if set(proj) != set(range(base.order)):
            raise BadExtension("projection is not surjective")
        if is_magnetic(total) != is_magnetic(base):
            raise BadExtension("total and base must both be magnetic or both plain")
        if is_magnetic(base) and any(total.phi[x] != base.phi[proj[x]] for x in range(total.order)):
            raise BadExtension("projection does not preserve phi")
        kernel = tuple(x for x in range(total.order) if proj[x] == 0)
        center = set(total.center)
        if any(k not in center for k in kernel):
            raise BadExtension("kernel is not central")
        if any(total.element_orders[k] > 2 for k in kernel):
            raise BadExtension("kernel is not elementary abelian")
        self.total = total
        self.base = base
        self.projection = proj
        self.kernel = kernel

    def preimage(self, elements: Iterable[int]) -> tuple:
        s = set(elements)
        return tuple(x for x in range(self.total.order) if self.projection[x] in s)

    def lift(self, g: int) -> int:
        return next(x for x in range(self.total.order) if self.projection[x] == g)

    def __repr__(self) -> str:
        return f"CentralExtension(total={self.total.order}, base={self.base.order}, kernel={len(self.kernel)})"


def pullback_extension(G: MagneticGroup) -> CentralExtension:
    """Pull back Z/4 -> Z/2 along phi: pairs (g, m) with phi(g) = m mod 2."""
    pairs = [(g, m) for g in range(G.order) for m in range(4) if m % 2 == G.phi[g]]
    index = {p: i for i, p in enumerate(pairs)}
    table = [[index[(G.mul(g, h), (m + k) % 4)] for (h, k) in pairs] for (g, m) in pairs]
    labels = [f"({G.labels[g]},{m})" for g, m in pairs]
    total = MagneticGroup(table, [m % 2 for _, m in pairs], labels, validate=False)
    return CentralExtension(total, G, [g for g, _ in pairs])


def extension_splits(E: CentralExtension) -> Optional[tuple]:
    """A homomorphic section of the projection, or None.

    Generators of the base get every lift in turn; each partial choice is
    propagated over the subgroup it generates and abandoned at the first
    conflict.
    """
    base, total = E.base, E.total
    gens = base.generating_set()
    fibres = [[x for x in range(total.order) if E.projection[x] == g] for g in gens]

    def search(chosen: tuple) -> Optional[dict]:
        images = _propagate(base, total, gens[: len(chosen)], chosen)
        if images is None:
            return None
        if len(chosen) == len(gens):
            return images
        for cand in fibres[len(chosen)]:
            found = search(chosen + (cand,))
            if found is not None:
                return found
        return None

    images = search(())
    if images is None:
        return None
    section = tuple(images[g] for g in range(base.order))
    if not base.is_homomorphism(total, section):
        return None
    return section


def _propagate(base, total, gens, chosen) -> Optional[dict]:
    images = {0: 0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, s in zip(gens, chosen):
            y, sy = base.mul(x, g), total.mul(images[x], s)
            if y in images:
                if images[y] != sy:
                    return None
            else:
                images[y] = sy
                queue.append(y)
    return images
