"""Finitely generated abelian groups, integer matrices and Smith normal form.

Matrices are lists of rows of Python ints, so arithmetic never overflows.
Groups are stored in diagonal form: each generator has an order, 0 for an
infinite cyclic summand.  Kernels, cokernels and subquotients are computed
on lattices in the ambient generator coordinates and then brought back to
diagonal form, remembering a lift of every new generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence

from .errors import IncompatibleMorphism, NoIntegerSolution, NotAComplex

Matrix = List[List[int]]


# ---------------------------------------------------------------------------
# plain integer matrices


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix, inner: Optional[int] = None) -> Matrix:
    if not A:
        return []
    k = len(B) if inner is None else inner
    ncols = len(B[0]) if B else 0
    out = zeros(len(A), ncols)
    for i, row in enumerate(A):
        o = out[i]
        for t in range(k):
            a = row[t]
            if a:
                bt = B[t]
                for j in range(ncols):
                    if bt[j]:
                        o[j] += a * bt[j]
    return out


def transpose(A: Matrix, ncols: Optional[int] = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(r) for r in zip(*A)]


def shape(A: Matrix, ncols: int = 0) -> tuple:
    return (len(A), len(A[0]) if A else ncols)


def determinant(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


# Above this many rows or columns the input is first put in Hermite form;
# the pivot rule alone lets transform entries grow exponentially.
HERMITE_THRESHOLD = 8


def smith_normal_form(M: Matrix, ncols: Optional[int] = None) -> tuple:
    """(U, D, V) with U M V = D, U and V unimodular, D diagonal with d_i | d_{i+1}.

    The pivot is the nonzero entry of least absolute value in the remaining
    block, ties broken in row-major order.  Large matrices are reduced to
    Hermite form first and the pivot rule is applied to that.
    """
    m = len(M)
    n = len(M[0]) if M else (ncols or 0)
    if max(m, n) > HERMITE_THRESHOLD:
        U1, H = hermite_transform(M, n)
        U2, D, V = _smith_pivoting(H, n)
        return matmul(U2, U1, inner=m), D, V
    return _smith_pivoting(M, n)


def _smith_pivoting(M: Matrix, ncols: Optional[int] = None) -> tuple:
    m = len(M)
    n = len(M[0]) if M else (ncols or 0)
    A = [list(map(int, r)) for r in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                return U, A, V
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V


def inverse_unimodular(U: Matrix) -> Matrix:
    """Inverse of a unimodular matrix by exact elimination on [U | I]."""
    n = len(U)
    A = [list(U[i]) + identity(n)[i] for i in range(n)]
    for c in range(n):
        # Euclid on column c below the diagonal
        while True:
            rows = [i for i in range(c, n) if A[i][c]]
            if not rows:
                raise ValueError("matrix is singular")
            piv = min(rows, key=lambda i: abs(A[i][c]))
            A[c], A[piv] = A[piv], A[c]
            done = True
            for i in range(c + 1, n):
                if A[i][c]:
                    q = A[i][c] // A[c][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[c])]
                    done = done and A[i][c] == 0
            if done:
                break
        if abs(A[c][c]) != 1:
            raise ValueError("matrix is not unimodular")
        if A[c][c] < 0:
            A[c] = [-x for x in A[c]]
    for c in range(n - 1, -1, -1):
        for i in range(c):
            if A[i][c]:
                q = A[i][c]
                A[i] = [x - q * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def _extgcd(a: int, b: int) -> tuple:
    """(g, x, y) with g = x a + y b = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, (a, b) = a // b, (b, a % b)
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hermite_transform(M: Matrix, ncols: Optional[int] = None) -> tuple:
    """(U, H) with U M = H in row Hermite form (zero rows last), U unimodular.

    Rows are inserted one at a time into a reduced basis, so every entry in
    a pivot column stays below its pivot.
    """
    m = len(M)
    n = len(M[0]) if M else (ncols or 0)
    basis = []  # [pivot column, row, transform row], sorted by pivot column
    zero_rows = []
    for i in range(m):
        r = [int(x) for x in M[i]]
        u = [int(k == i) for k in range(m)]
        for entry in basis:
            c, b, ub = entry
            lead = next((k for k in range(c) if r[k]), None)
            if lead is not None:
                break
            a = r[c]
            if not a:
                continue
            p = b[c]
            g, x, y = _extgcd(p, a)
            s, t = p // g, a // g
            entry[1] = [x * bb + y * rr for bb, rr in zip(b, r)]
            entry[2] = [x * bb + y * rr for bb, rr in zip(ub, u)]
            r = [s * rr - t * bb for bb, rr in zip(b, r)]
            u = [s * rr - t * bb for bb, rr in zip(ub, u)]
        c = next((k for k in range(n) if r[k]), None)
        if c is None:
            zero_rows.append(u)
        else:
            if r[c] < 0:
                r, u = [-x for x in r], [-x for x in u]
            basis.append([c, r, u])
            basis.sort(key=lambda e: e[0])
        _reduce_basis(basis)
    H = [e[1] for e in basis] + [[0] * n for _ in zero_rows]
    U = [e[2] for e in basis] + zero_rows
    return U, H


def _reduce_basis(basis: list) -> None:
    for j, (c, b, ub) in enumerate(basis):
        p = b[c]
        for k in range(j):
            row = basis[k]
            q = row[1][c] // p
            if q:
                row[1] = [x - q * y for x, y in zip(row[1], b)]
                row[2] = [x - q * y for x, y in zip(row[2], ub)]


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows`` (zero rows dropped)."""
    _, H = hermite_transform([r for r in rows if any(r)], ncols)
    return [r for r in H if any(r)]


def integer_nullspace(A: Matrix, ncols: int) -> Matrix:
    """Hermite-reduced basis (as rows) of {x in Z^n : A x = 0}."""
    if not A:
        return identity(ncols)
    U, D, V = smith_normal_form(A, ncols)
    rank = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    basis = [[V[i][j] for i in range(ncols)] for j in range(rank, ncols)]
    return hermite_rows(basis, ncols)


def solve_integer(A: Matrix, b: Sequence[int], ncols: int) -> list:
    """Some x in Z^n with A x = b, or NoIntegerSolution."""
    m = len(A)
    if m == 0:
        return [0] * ncols
    U, D, V = smith_normal_form(A, ncols)
    ub = [sum(U[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * ncols
    for i in range(m):
        d = D[i][i] if i < ncols else 0
        if d:
            if ub[i] % d:
                raise NoIntegerSolution("no integer solution")
            y[i] = ub[i] // d
        elif ub[i]:
            raise NoIntegerSolution("no integer solution")
    return [sum(V[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]


# ---------------------------------------------------------------------------
# groups


def _order_text(d: int) -> str:
    return "Z" if d == 0 else f"Z/{d}"


def canonical_invariants(orders: Sequence[int]) -> tuple:
    """(rank, invariant factors) of a direct sum of cyclic groups."""
    rank = sum(1 for d in orders if d == 0)
    tors = [d for d in orders if d > 1]
    if not tors:
        return rank, ()
    _, D, _ = smith_normal_form([[d if i == j else 0 for j in range(len(tors))] for i, d in enumerate(tors)])
    return rank, tuple(D[i][i] for i in range(len(tors)) if D[i][i] > 1)


def notation(rank: int, torsion: Sequence[int]) -> str:
    parts = []
    if rank == 1:
        parts.append("Z")
    elif rank > 1:
        parts.append(f"Z^{rank}")
    parts.extend(f"Z/{d}" for d in torsion)
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FgAbelianGroup:
    """Direct sum of cyclic groups with the given orders (0 means Z)."""

    orders: tuple = ()
    labels: tuple = ()

    def __post_init__(self):
        orders = tuple(int(d) for d in self.orders)
        if any(d < 0 or d == 1 for d in orders):
            raise ValueError("generator orders must be 0 or >= 2")
        object.__setattr__(self, "orders", orders)
        labels = tuple(self.labels) if self.labels else tuple(f"g{i}" for i in range(len(orders)))
        if len(labels) != len(orders):
            raise ValueError("one label per generator")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def free(cls, r: int, labels=()) -> "FgAbelianGroup":
        return cls((0,) * r, labels)

    @classmethod
    def cyclic(cls, d: int, label: str = "g0") -> "FgAbelianGroup":
        return cls((d,), (label,)) if d != 1 else cls()

    @classmethod
    def from_invariants(cls, rank: int, torsion: Sequence[int]) -> "FgAbelianGroup":
        return cls((0,) * rank + tuple(torsion))

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def invariants(self) -> tuple:
        return canonical_invariants(self.orders)

    @property
    def rank(self) -> int:
        return self.invariants[0]

    @property
    def torsion(self) -> tuple:
        return self.invariants[1]

    def is_zero(self) -> bool:
        return self.ngens == 0

    def isomorphic(self, other: "FgAbelianGroup") -> bool:
        return self.invariants == other.invariants

    def canonical(self) -> "FgAbelianGroup":
        r, t = self.invariants
        return FgAbelianGroup.from_invariants(r, t)

    def __str__(self) -> str:
        return notation(*self.invariants)

    def summand_text(self) -> str:
        """Generator-by-generator notation, e.g. 'Z/2 + Z + Z/2'."""
        return " + ".join(_order_text(d) for d in self.orders) if self.orders else "0"

    def reduce(self, vec: Sequence[int]) -> list:
        return [v % d if d else v for v, d in zip(vec, self.orders)]


def direct_sum(groups: Sequence[FgAbelianGroup]) -> FgAbelianGroup:
    orders, labels = [], []
    for g in groups:
        orders.extend(g.orders)
        labels.extend(g.labels)
    return FgAbelianGroup(tuple(orders), tuple(labels))


def zero_group() -> FgAbelianGroup:
    return FgAbelianGroup()


class AbMorphism:
    """A homomorphism between diagonal groups, given on generators."""

    def __init__(self, source: FgAbelianGroup, target: FgAbelianGroup, matrix: Sequence[Sequence[int]], check: bool = True):
        m, n = target.ngens, source.ngens
        mat = [list(map(int, r)) for r in matrix] if m else []
        if len(mat) != m or any(len(r) != n for r in mat):
            raise IncompatibleMorphism(f"matrix must be {m}x{n}", expected=[m, n])
        for i, d in enumerate(target.orders):
            if d:
                mat[i] = [x % d for x in mat[i]]
        if check:
            for j, a in enumerate(source.orders):
                if a:
                    for i, d in enumerate(target.orders):
                        if (a * mat[i][j]) % d if d else a * mat[i][j]:
                            raise IncompatibleMorphism(
                                "a torsion generator is sent to an element of larger order",
                                source_generator=j,
                                target_generator=i,
                            )
        self.source = source
        self.target = target
        self.matrix = mat

    @classmethod
    def zero(cls, source: FgAbelianGroup, target: FgAbelianGroup) -> "AbMorphism":
        return cls(source, target, zeros(target.ngens, source.ngens), check=False)

    @classmethod
    def identity(cls, group: FgAbelianGroup) -> "AbMorphism":
        return cls(group, group, identity(group.ngens), check=False)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def compose(self, first: "AbMorphism") -> "AbMorphism":
        """self o first."""
        if self.source.ngens:
            mat = matmul(self.matrix, first.matrix, inner=self.source.ngens)
        else:
            mat = zeros(self.target.ngens, first.source.ngens)
        return AbMorphism(first.source, self.target, mat, check=False)

    def __call__(self, vec: Sequence[int]) -> list:
        out = [sum(a * b for a, b in zip(row, vec)) for row in self.matrix]
        return self.target.reduce(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, AbMorphism) and self.matrix == other.matrix and \
            self.source.orders == other.source.orders and self.target.orders == other.target.orders

    def __repr__(self) -> str:
        return f"AbMorphism({self.source} -> {self.target}, {self.matrix})"


# ---------------------------------------------------------------------------
# kernels, cokernels, subquotients


@dataclass
class Subquotient:
    """A subquotient in diagonal form together with lifts of its generators.

    ``lifts[j]`` is a vector in the ambient generator coordinates representing
    generator j.  ``basis`` and ``to_quotient`` map ambient kernel vectors to
    quotient coordinates.
    """

    group: FgAbelianGroup
    lifts: list
    basis: list = field(default_factory=list)
    to_quotient: list = field(default_factory=list)
    kept: list = field(default_factory=list)

    def coordinates(self, vec: Sequence[int]) -> list:
        """Quotient coordinates of an ambient vector lying in the kernel lattice."""
        if not self.basis:
            if any(vec):
                raise NoIntegerSolution("vector is not in the kernel")
            return []
        n = len(vec)
        A = transpose(self.basis, n)
        y = solve_integer(A, list(vec), len(self.basis))
        z = [sum(self.to_quotient[i][k] * y[k] for k in range(len(y))) for i in self.kept]
        return self.group.reduce(z)


def _kernel_lattice(outgoing: Optional[AbMorphism], ambient: FgAbelianGroup) -> Matrix:
    """Basis rows of {x in Z^m : F x lies in the target relations}."""
    m = ambient.ngens
    if outgoing is None or outgoing.target.ngens == 0:
        return identity(m)
    F = outgoing.matrix
    tgt = outgoing.target.orders
    extra = [i for i, d in enumerate(tgt) if d]
    big = [list(F[i]) + [tgt[i] if i == e else 0 for e in extra] for i in range(len(F))]
    null = integer_nullspace(big, m + len(extra))
    return hermite_rows([row[:m] for row in null], m)


def _labels_from_lifts(lifts: list, labels: Sequence[str]) -> tuple:
    out = []
    for v in lifts:
        terms = []
        for c, lab in zip(v, labels):
            if c == 0:
                continue
            if c == 1:
                terms.append(f"+{lab}")
            elif c == -1:
                terms.append(f"-{lab}")
            else:
                terms.append(f"{c:+d}*{lab}")
        text = "".join(terms).lstrip("+")
        out.append(text or "0")
    return tuple(out)


def subquotient_data(incoming: Optional[AbMorphism], outgoing: Optional[AbMorphism],
                     ambient: Optional[FgAbelianGroup] = None) -> Subquotient:
    """ker(outgoing) / im(incoming) inside the common middle group."""
    if ambient is None:
        ambient = outgoing.source if outgoing is not None else incoming.target
    if incoming is not None and incoming.target.orders != ambient.orders:
        raise IncompatibleMorphism("incoming map does not land in the middle group")
    if outgoing is not None and outgoing.source.orders != ambient.orders:
        raise IncompatibleMorphism("outgoing map does not start at the middle group")
    if incoming is not None and outgoing is not None and not outgoing.compose(incoming).is_zero():
        raise NotAComplex("outgoing o incoming is not zero")
    m = ambient.ngens
    L = _kernel_lattice(outgoing, ambient)
    l = len(L)
    if l == 0:
        return Subquotient(FgAbelianGroup(), [], [], [], [])
    Lt = transpose(L, m)  # m x l
    generators = [[d if i == j else 0 for i in range(m)] for j, d in enumerate(ambient.orders) if d]
    if incoming is not None:
        for j in range(incoming.source.ngens):
            generators.append([incoming.matrix[i][j] for i in range(m)])
    try:
        Z_cols = [solve_integer(Lt, v, l) for v in generators]
    except NoIntegerSolution:
        raise NotAComplex("outgoing o incoming is not zero") from None
    Z = transpose(Z_cols) if Z_cols else [[0] for _ in range(l)]
    U, D, _ = smith_normal_form(Z, len(Z[0]))
    Uinv = inverse_unimodular(U)
    diag = [D[i][i] if i < len(D[0]) else 0 for i in range(l)]
    free = [i for i in range(l) if diag[i] == 0]
    tors = [i for i in range(l) if diag[i] > 1]
    kept = free + tors
    orders = tuple(diag[i] for i in kept)
    lifts = []
    zero_rows = hermite_rows(generators, m)
    for i in kept:
        col = [Uinv[r][i] for r in range(l)]
        v = [sum(Lt[a][b] * col[b] for b in range(l)) for a in range(m)]
        lifts.append(_size_reduce(v, zero_rows, m))
    group = FgAbelianGroup(orders, _labels_from_lifts(lifts, ambient.labels))
    return Subquotient(group, lifts, L, U, kept)


def _size_reduce(v: list, rows: Matrix, m: int) -> list:
    """Reduce v modulo the lattice spanned by Hermite rows (pivot entries into a centred range)."""
    v = list(v)
    for row in rows:
        c = next(k for k in range(m) if row[k])
        p = row[c]
        q = (v[c] + (p - 1) // 2) // p if p > 1 else v[c] // p
        if p == 1:
            q = v[c]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return v


def kernel(f: AbMorphism) -> tuple:
    """(K, inclusion K -> source)."""
    sq = subquotient_data(None, f, f.source)
    incl = AbMorphism(sq.group, f.source, transpose(sq.lifts, sq.group.ngens) if sq.lifts else zeros(f.source.ngens, 0))
    return sq.group, incl


def cokernel(f: AbMorphism) -> tuple:
    """(C, projection target -> C)."""
    sq = subquotient_data(f, None, f.target)
    n = f.target.ngens
    proj = [[0] * n for _ in range(sq.group.ngens)]
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        coords = sq.coordinates(e)
        for i, c in enumerate(coords):
            proj[i][j] = c
    return sq.group, AbMorphism(f.target, sq.group, proj)


def subquotient(incoming: Optional[AbMorphism], outgoing: Optional[AbMorphism]) -> FgAbelianGroup:
    return subquotient_data(incoming, outgoing).group


# ---------------------------------------------------------------------------
# Hom / Ext tests and extensions


def hom_nonzero(A: FgAbelianGroup, B: FgAbelianGroup) -> bool:
    ra, ta = A.invariants
    rb, tb = B.invariants
    if ra and (rb or tb):
        return True
    return any(gcd(a, b) > 1 for a in ta for b in tb)


def ext_nonzero(Q: FgAbelianGroup, S: FgAbelianGroup) -> bool:
    """Is Ext^1(Q, S) nonzero, i.e. can 0 -> S -> E -> Q -> 0 fail to split?"""
    _, tq = Q.invariants
    rs, ts = S.invariants
    if not tq:
        return False
    if rs:
        return True
    return any(gcd(a, b) > 1 for a in tq for b in ts)


def extension_group(sub: FgAbelianGroup, quotient: FgAbelianGroup, cls: Sequence[Sequence[int]]) -> FgAbelianGroup:
    """Middle term of the extension with class ``cls``.

    Row i of ``cls`` gives, for the i-th generator q_i of the quotient with
    order d_i, the element of ``sub`` that d_i * (lift of q_i) equals.  Rows
    of free generators must vanish.
    """
    s, q = sub.ngens, quotient.ngens
    if len(cls) != q or any(len(r) != s for r in cls):
        raise IncompatibleMorphism(f"extension class must be {q}x{s}")
    relations = []
    for j, d in enumerate(sub.orders):
        if d:
            relations.append([d if i == j else 0 for i in range(s + q)])
    for i, d in enumerate(quotient.orders):
        if d == 0:
            if any(cls[i]):
                raise IncompatibleMorphism("free quotient generators split; their class row must be zero")
            continue
        relations.append([-c for c in cls[i]] + [d if k == i else 0 for k in range(q)])
    total = FgAbelianGroup.free(s + q)
    if not relations:
        return total.canonical()
    R = AbMorphism(FgAbelianGroup.free(len(relations)), total, transpose(relations, len(relations)))
    return cokernel(R)[0].canonical()
