"""Complex character tables of finite groups with exact cyclotomic values.

Abelian groups use dual-group enumeration.  Everything else goes through
Dixon's modular version of the Burnside class-algebra method: the class
multiplication matrices are diagonalised simultaneously over GF(p), and the
modular character values are lifted back to Q(zeta_e) through the
eigenvalue multiplicities of each element.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Optional, Sequence

from .cyclotomic import Cyclotomic
from .groups import FiniteGroup


class Character:
    """A class function on a finite group with values in Q(zeta_e)."""

    def __init__(self, group: FiniteGroup, values: Sequence[Cyclotomic], index: Optional[int] = None):
        self.group = group
        self.classes = class_data(group)[0]
        if len(values) != len(self.classes):
            raise ValueError("one value per conjugacy class expected")
        self.values = tuple(values)
        self.index = index

    @property
    def name(self) -> str:
        return f"chi{self.index}" if self.index is not None else "chi?"

    @cached_property
    def degree(self) -> int:
        return int(self.values[0].rational_value())

    def __call__(self, g: int) -> Cyclotomic:
        return self.values[class_data(self.group)[1][g]]

    def inner(self, other: "Character") -> Fraction:
        """<self, other> = |G|^-1 sum_g self(g) conj(other(g))."""
        total = Cyclotomic.rational(0)
        for cls, a, b in zip(self.classes, self.values, other.values):
            total = total + (a * b.conjugate()) * len(cls)
        return total.rational_value() / self.group.order

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and other.group is self.group and other.values == self.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"Character({self.name}, degree={self.values[0]})"


def class_data(group: FiniteGroup) -> tuple:
    """(classes, class index per element), cached on the group."""
    cached = group.__dict__.get("_class_data")
    if cached is None:
        classes = group.conjugacy_classes()
        where = [0] * group.order
        for i, cls in enumerate(classes):
            for g in cls:
                where[g] = i
        cached = (classes, tuple(where))
        group.__dict__["_class_data"] = cached
    return cached


def class_function(group: FiniteGroup, element_values: Sequence[Cyclotomic]) -> Character:
    """Wrap per-element values (assumed class-constant) as a Character."""
    classes = class_data(group)[0]
    return Character(group, [element_values[cls[0]] for cls in classes])


def character_table(group: FiniteGroup) -> list:
    """Irreducible characters, trivial first; cached on the group."""
    cached = group.__dict__.get("_character_table")
    if cached is None:
        rows = abelian_character_table(group) if group.is_abelian else dixon_character_table(group)
        cached = [Character(group, r.values, index=i) for i, r in enumerate(rows)]
        group.__dict__["_character_table"] = cached
    return list(cached)


def abelian_character_table(group: FiniteGroup) -> list:
    """Homomorphisms to the e-th roots of unity, enumerated on a generating set."""
    if not group.is_abelian:
        raise ValueError("group is not abelian")
    e = group.exponent
    gens = group.generating_set()
    choices = [range(0, e, e // group.element_orders[g]) for g in gens]
    rows = []
    for ks in product(*choices):
        expo = {0: 0}
        queue = deque([0])
        ok = True
        while queue and ok:
            x = queue.popleft()
            for g, k in zip(gens, ks):
                y = group.mul(x, g)
                v = (expo[x] + k) % e
                if y in expo:
                    if expo[y] != v:
                        ok = False
                        break
                else:
                    expo[y] = v
                    queue.append(y)
        if ok:
            vals = [Cyclotomic.root_of_unity(e, expo[cls[0]]) for cls in class_data(group)[0]]
            rows.append(Character(group, vals))
    return rows


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _dixon_prime(order: int, exponent: int) -> int:
    p = exponent + 1
    while not (p > order and _is_prime(p)):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1


def _nullspace_mod(rows: list, ncols: int, p: int) -> list:
    """Basis of {x : A x = 0} over GF(p); A given as a list of rows."""
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] % p:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-a[i][f]) % p
        basis.append(v)
    return basis


def _coordinates(basis: list, vec: list, p: int) -> list:
    """Solve sum_j c_j basis[j] = vec over GF(p) (vec assumed in the span)."""
    n = len(vec)
    k = len(basis)
    aug = [[basis[j][i] for j in range(k)] + [vec[i]] for i in range(n)]
    sol = _nullspace_mod(aug, k + 1, p)
    for s in sol:
        if s[k] % p:
            inv = pow(s[k], p - 2, p)
            return [(-x * inv) % p for x in s[:k]]
    raise ArithmeticError("vector not in span")


def dixon_character_table(group: FiniteGroup) -> list:
    classes, where = class_data(group)
    r = len(classes)
    n = group.order
    e = group.exponent
    p = _dixon_prime(n, e)
    sizes = [len(c) for c in classes]
    reps = [c[0] for c in classes]

    # a[i][j][k] = #{x in C_i : x^-1 z_k in C_j}
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    for x in range(n):
        i = where[x]
        xi = group.inv(x)
        for k, z in enumerate(reps):
            a[i][where[group.mul(xi, z)]][k] += 1

    spaces = [[[1 if i == j else 0 for i in range(r)] for j in range(r)]]
    for ci in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        mat = a[ci]
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            images = [[sum(mat[row][col] * v[col] for col in range(r)) % p for row in range(r)] for v in basis]
            coords = [_coordinates(basis, img, p) for img in images]
            d = len(basis)
            restricted = [[coords[col][row] for col in range(d)] for row in range(d)]
            found = 0
            for lam in range(p):
                shifted = [[(restricted[i][j] - (lam if i == j else 0)) % p for j in range(d)] for i in range(d)]
                null = _nullspace_mod(shifted, d, p)
                if null:
                    sub = [[sum(c[j] * basis[j][i] for j in range(d)) % p for i in range(r)] for c in null]
                    new_spaces.append(sub)
                    found += len(null)
                    if found == d:
                        break
            if found != d:
                raise ArithmeticError("class matrix not diagonalisable mod p")
        spaces = new_spaces
    if any(len(s) != 1 for s in spaces):
        raise ArithmeticError("class algebra did not split")

    inverse_class = [where[group.inv(z)] for z in reps]
    z = pow(_primitive_root(p), (p - 1) // e, p)
    rows = []
    for (w,) in spaces:
        w0inv = pow(w[0], p - 2, p)
        w = [(x * w0inv) % p for x in w]
        s = sum(w[k] * w[inverse_class[k]] * pow(sizes[k], p - 2, p) for k in range(r)) % p
        dsq = (n * pow(s, p - 2, p)) % p
        deg = next(d for d in range(1, int(n**0.5) + 1) if (d * d - dsq) % p == 0)
        chi_mod = [(deg * w[k] * pow(sizes[k], p - 2, p)) % p for k in range(r)]
        einv = pow(e, p - 2, p)
        values = []
        for k, x in enumerate(reps):
            powers = [where[group.power(x, j)] for j in range(e)]
            counts = []
            for l in range(e):
                m = sum(chi_mod[powers[j]] * pow(z, (-j * l) % e, p) for j in range(e)) * einv % p
                if m > deg:
                    raise ArithmeticError("eigenvalue multiplicity out of range")
                counts.append(m)
            values.append(Cyclotomic.from_exponent_counts(e, counts))
        rows.append(Character(group, values))

    def key(ch: Character):
        vals = [complex(v) for v in ch.values]
        return (ch.degree, [(-round(v.real, 9), round(v.imag, 9)) for v in vals])

    rows.sort(key=key)
    return rows
