"""Equivariant cell complexes and the Atiyah-Hirzebruch spectral sequence.

The first page is the cellular cochain complex with coefficients in the
orbit K-groups; its differential is assembled from incidence records
``(upper c, lower b, g, sign)``, each contributing ``sign * K^t(G/H_c -> G/H_b)``.
Higher differentials are never guessed: they come in as overrides, and a
page is only turned past a possibly nonzero differential when the caller
says so.

Rows are computed on a cyclic grid of degrees t = 0, -1, ..., -(period - 1);
every other t is folded onto it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .abelian import (
    AbMorphism,
    FgAbelianGroup,
    _labels_from_lifts,
    direct_sum,
    ext_nonzero,
    extension_group,
    hom_nonzero,
    matmul,
    subquotient_data,
)
from .coefficients import Twist, coefficient_period, orbit_coefficients, restriction_map
from .errors import (
    BadAssertion,
    BadIncidenceDimension,
    DSquaredNonzero,
    IncompatibleMorphism,
    NotAComplex,
    NotASubgroup,
    OrbitMapIllDefined,
    PageNotStable,
    ShapeMismatch,
    UnsupportedComplex,
)
from .groups import FiniteGroup

MAX_DIM = 3


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class Cell:
    id: str
    dim: int
    stabilizer: tuple
    orientation: int = 1


@dataclass(frozen=True)
class Incidence:
    upper: str
    lower: str
    g: int
    sign: int


@dataclass
class GCWComplex:
    cells: list
    incidences: list
    checked: bool = False

    @property
    def dimension(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def cells_of_dim(self, n: int) -> list:
        return [c for c in self.cells if c.dim == n]

    def cell(self, cid: str) -> Cell:
        return next(c for c in self.cells if c.id == cid)


def validate_complex(X: GCWComplex, G: FiniteGroup, twist: Optional[Twist] = None) -> GCWComplex:
    """Check cells, incidences and d o d = 0 over a full period of degrees."""
    ids = {}
    cells = []
    for c in X.cells:
        if c.id in ids:
            raise BadIncidenceDimension(f"duplicate cell id {c.id!r}", cell=c.id)
        if c.dim < 0:
            raise BadIncidenceDimension("cell dimension must be nonnegative", cell=c.id)
        if c.dim > MAX_DIM:
            raise UnsupportedComplex(f"cells of dimension above {MAX_DIM} are not supported", cell=c.id)
        if c.orientation not in (1, -1):
            raise BadIncidenceDimension("orientation must be +1 or -1", cell=c.id)
        try:
            stab = G.check_subgroup(c.stabilizer)
        except NotASubgroup as exc:
            raise NotASubgroup(f"stabilizer of {c.id!r} is not a subgroup", cell=c.id) from exc
        cell = Cell(c.id, c.dim, stab, c.orientation)
        ids[c.id] = cell
        cells.append(cell)
    incs = []
    for inc in X.incidences:
        if inc.upper not in ids or inc.lower not in ids:
            raise BadIncidenceDimension("incidence refers to an unknown cell", upper=inc.upper, lower=inc.lower)
        up, low = ids[inc.upper], ids[inc.lower]
        if up.dim != low.dim + 1:
            raise BadIncidenceDimension(
                "incidence must join cells of adjacent dimensions",
                upper=up.id, lower=low.id, dims=[up.dim, low.dim],
            )
        if inc.sign not in (1, -1):
            raise BadIncidenceDimension("incidence sign must be +1 or -1", upper=up.id, lower=low.id)
        if not 0 <= inc.g < G.order:
            raise OrbitMapIllDefined("incidence element is not in the group", g=inc.g)
        gi = G.inv(inc.g)
        low_set = set(low.stabilizer)
        bad = [h for h in up.stabilizer if G.prod(gi, h, inc.g) not in low_set]
        if bad:
            raise OrbitMapIllDefined(
                "g^-1 H_upper g is not contained in H_lower",
                upper=up.id, lower=low.id, g=inc.g, witness=bad[0],
            )
        incs.append(Incidence(up.id, low.id, int(inc.g), int(inc.sign)))
    checked = GCWComplex(cells, incs, checked=True)
    period = coefficient_period(G, twist)
    for t in range(0, -period, -1):
        ds = d1(checked, G, twist, t)
        for n in range(checked.dimension - 1):
            comp = ds[n + 1].compose(ds[n])
            if not comp.is_zero():
                raise DSquaredNonzero(
                    "d1 o d1 is not zero",
                    n=n, t=t, first=ds[n].matrix, second=ds[n + 1].matrix,
                )
    return checked


# ---------------------------------------------------------------------------
# first page


def cell_row(X: GCWComplex, G: FiniteGroup, twist: Optional[Twist], n: int, t: int) -> tuple:
    """(group, per-cell blocks) of E_1^{n,t}; labels are 'cell.irrep'."""
    blocks = []
    orders, labels = [], []
    for c in X.cells_of_dim(n):
        row = orbit_coefficients(G, c.stabilizer, t, twist)
        blocks.append((c, row))
        orders.extend(row.group.orders)
        labels.extend(f"{c.id}.{lab}" for lab in row.group.labels)
    return FgAbelianGroup(tuple(orders), tuple(labels)), blocks


def d1(X: GCWComplex, G: FiniteGroup, twist: Optional[Twist], t: int) -> list:
    """d_1^{n,t} for n = 0 .. dim - 1."""
    out = []
    for n in range(X.dimension):
        src, src_blocks = cell_row(X, G, twist, n, t)
        tgt, tgt_blocks = cell_row(X, G, twist, n + 1, t)
        col0, row0 = {}, {}
        k = 0
        for c, row in src_blocks:
            col0[c.id] = k
            k += row.group.ngens
        k = 0
        for c, row in tgt_blocks:
            row0[c.id] = k
            k += row.group.ngens
        mat = [[0] * src.ngens for _ in range(tgt.ngens)]
        cells = {c.id: c for c in X.cells}
        for inc in X.incidences:
            up, low = cells[inc.upper], cells[inc.lower]
            if low.dim != n:
                continue
            f = restriction_map(G, low.stabilizer, up.stabilizer, inc.g, t, twist)
            s = inc.sign * up.orientation * low.orientation
            for i, r in enumerate(f.matrix):
                for j, v in enumerate(r):
                    mat[row0[up.id] + i][col0[low.id] + j] += s * v
        out.append(AbMorphism(src, tgt, mat))
    return out


# ---------------------------------------------------------------------------
# pages


@dataclass
class SpectralPage:
    r: int
    period: int
    top: int
    entries: Dict[Tuple[int, int], FgAbelianGroup]
    lifts: Dict[Tuple[int, int], list]  # E_1 coordinates of every generator
    e1_labels: Dict[Tuple[int, int], tuple]
    differentials: Dict[Tuple[int, int], AbMorphism] = field(default_factory=dict)
    overrides: list = field(default_factory=list)

    def fold(self, t: int) -> int:
        return -((-t) % self.period)

    def entry(self, n: int, t: int) -> FgAbelianGroup:
        if n < 0 or n > self.top:
            return FgAbelianGroup()
        return self.entries[(n, self.fold(t))]

    def target(self, n: int, t: int) -> Optional[tuple]:
        m = n + self.r
        if m > self.top:
            return None
        return (m, self.fold(t - self.r + 1))

    def source(self, n: int, t: int) -> Optional[tuple]:
        m = n - self.r
        if m < 0:
            return None
        return (m, self.fold(t + self.r - 1))

    def differential(self, n: int, t: int) -> Optional[AbMorphism]:
        tgt = self.target(n, t)
        if tgt is None:
            return None
        key = (n, self.fold(t))
        if key in self.differentials:
            return self.differentials[key]
        return AbMorphism.zero(self.entries[key], self.entries[tgt])

    def grid(self) -> list:
        return sorted(self.entries, key=lambda k: (-k[1], k[0]))

    def potential(self) -> list:
        """Bidegrees whose outgoing d_r could be nonzero for group-theoretic reasons."""
        out = []
        for key in self.grid():
            tgt = self.target(*key)
            if tgt is not None and hom_nonzero(self.entries[key], self.entries[tgt]):
                out.append(key)
        return out


def e1_page(X: GCWComplex, G: FiniteGroup, twist: Optional[Twist] = None,
            t_values: Optional[Sequence[int]] = None) -> SpectralPage:
    period = coefficient_period(G, twist)
    ts = sorted({-((-t) % period) for t in (t_values if t_values is not None else range(0, -period, -1))},
                reverse=True)
    top = X.dimension
    entries, lifts, labels, diffs = {}, {}, {}, {}
    for t in ts:
        ds = d1(X, G, twist, t)
        for n in range(top + 1):
            grp, _ = cell_row(X, G, twist, n, t)
            entries[(n, t)] = grp
            lifts[(n, t)] = [[int(i == j) for i in range(grp.ngens)] for j in range(grp.ngens)]
            labels[(n, t)] = grp.labels
        for n, d in enumerate(ds):
            diffs[(n, t)] = d
    return SpectralPage(1, period, top, entries, lifts, labels, diffs)


def turn_page(P: SpectralPage) -> SpectralPage:
    """Homology at every node; generators remember their E_1 lifts."""
    grid = P.grid()
    if P.r > 1 and len({t for _, t in grid}) != P.period:
        raise NotAComplex("pages beyond the first need every row of the period")
    for key in grid:
        out = P.differential(*key)
        src = P.source(*key)
        if out is not None and src is not None and (src in P.entries):
            inc = P.differential(*src)
            if not out.compose(inc).is_zero():
                raise NotAComplex("d_r o d_r is not zero", at=list(key), r=P.r)
    entries, lifts, labels = {}, {}, {}
    for key in grid:
        out = P.differential(*key)
        src = P.source(*key)
        inc = P.differential(*src) if src is not None and src in P.entries else None
        sq = subquotient_data(inc, out, P.entries[key])
        old = P.lifts[key]
        e1_dim = len(P.e1_labels[key])
        new_lifts = []
        for v in sq.lifts:
            w = [0] * e1_dim
            for coeff, base in zip(v, old):
                if coeff:
                    for i, b in enumerate(base):
                        w[i] += coeff * b
            new_lifts.append(w)
        names = _labels_from_lifts(new_lifts, P.e1_labels[key])
        entries[key] = FgAbelianGroup(sq.group.orders, names)
        lifts[key] = new_lifts
        labels[key] = P.e1_labels[key]
    return SpectralPage(P.r + 1, P.period, P.top, entries, lifts, labels, {}, list(P.overrides))


@dataclass(frozen=True)
class DifferentialOverride:
    page: int
    source: tuple  # (n, t)
    matrix: tuple

    def to_dict(self) -> dict:
        return {"page": self.page, "from": list(self.source), "matrix": [list(r) for r in self.matrix]}


def apply_overrides(P: SpectralPage, overrides: Sequence[DifferentialOverride]) -> SpectralPage:
    """Install the overrides belonging to page P.r."""
    diffs = dict(P.differentials)
    used = list(P.overrides)
    for ov in overrides:
        if ov.page != P.r:
            continue
        n, t = ov.source
        key = (n, P.fold(t))
        if key not in P.entries:
            raise ShapeMismatch("override source is outside the page", source=list(ov.source))
        tgt = P.target(*key)
        if tgt is None:
            raise ShapeMismatch("override target lies beyond the top dimension", source=list(ov.source))
        src_grp, tgt_grp = P.entries[key], P.entries[tgt]
        rows, cols = tgt_grp.ngens, src_grp.ngens
        mat = [list(r) for r in ov.matrix]
        if rows == 0 and cols == 0 and not mat:
            continue
        if len(mat) != rows or any(len(r) != cols for r in mat):
            raise ShapeMismatch(
                f"override matrix must be {rows}x{cols}",
                source=list(ov.source), expected=[rows, cols],
                rows=list(tgt_grp.labels), columns=list(src_grp.labels),
            )
        diffs[key] = AbMorphism(src_grp, tgt_grp, mat)
        used.append(ov)
    page = SpectralPage(P.r, P.period, P.top, P.entries, P.lifts, P.e1_labels, diffs, used)
    for key in page.grid():
        out = page.differential(*key)
        src = page.source(*key)
        if out is not None and src is not None:
            if not out.compose(page.differential(*src)).is_zero():
                raise NotAComplex("overrides do not compose to zero", at=list(key), r=P.r)
    return page


def unresolved(P: SpectralPage) -> list:
    """Potentially nonzero d_r that no override fixed."""
    return [k for k in P.potential() if k not in P.differentials]


# ---------------------------------------------------------------------------
# graded K-groups


@dataclass(frozen=True)
class ExtensionAssertion:
    degree: int
    join: int  # filtration p: extension of E^p by F^{p+1}
    split: bool = False
    cls: Optional[tuple] = None

    def to_dict(self) -> dict:
        d = {"degree": self.degree, "join": self.join}
        if self.split:
            d["split"] = True
        else:
            d["class"] = [list(r) for r in self.cls]
        return d


@dataclass
class GradedKReport:
    degree: int
    pieces: list  # (p, t, group)
    ambiguous: bool
    total: Optional[FgAbelianGroup]
    ambiguities: list = field(default_factory=list)  # filtration indices with an open extension
    assertions: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "pieces": [{"p": p, "t": t, "group": str(g), "generators": list(g.labels)} for p, t, g in self.pieces],
            "ambiguous": self.ambiguous,
            "open_extensions": self.ambiguities,
            "total": None if self.total is None else str(self.total),
            "assertions": [a.to_dict() for a in self.assertions],
        }


def graded_k_report(P: SpectralPage, degrees: Sequence[int],
                    assertions: Sequence[ExtensionAssertion] = ()) -> list:
    """Filtration pieces of K^{-n} and, where possible, the total group."""
    out = []
    for degree in degrees:
        pieces = []
        for p in range(P.top + 1):
            t = P.fold(degree - p)
            pieces.append((p, t, P.entry(p, t)))
        mine = [a for a in assertions if a.degree == degree]
        for a in mine:
            if not 0 <= a.join < P.top:
                raise BadAssertion("join index outside the filtration", degree=degree, join=a.join)
        total = pieces[-1][2].canonical()
        open_ext, used = [], []
        for p in range(P.top - 1, -1, -1):
            quotient = pieces[p][2]
            a = next((x for x in mine if x.join == p), None)
            if a is not None:
                used.append(a)
            if quotient.is_zero():
                continue
            if a is not None and not a.split:
                if total is None:
                    raise BadAssertion("cannot assert an extension above an unresolved one", degree=degree, join=p)
                try:
                    total = extension_group(total, quotient, a.cls)
                except IncompatibleMorphism as exc:
                    raise BadAssertion(
                        f"extension class has the wrong shape or is inconsistent: {exc.message}",
                        degree=degree, join=p, rows=list(quotient.labels),
                        columns=[str(total)],
                    ) from exc
                continue
            if a is None and ext_nonzero(quotient, _sum_above(pieces, p)):
                open_ext.append(p)
                total = None
                continue
            if total is not None:
                total = direct_sum([total, quotient]).canonical()
        out.append(GradedKReport(degree, pieces, bool(open_ext), total, sorted(open_ext), used))
    return out


def _sum_above(pieces: list, p: int) -> FgAbelianGroup:
    return direct_sum([g for q, _, g in pieces if q > p])


# ---------------------------------------------------------------------------
# driver


@dataclass
class AhssResult:
    pages: list
    final: SpectralPage
    reports: list
    assumed_zero: list

    @property
    def e_infinity(self) -> SpectralPage:
        return self.final


def run_ahss(X: GCWComplex, G: FiniteGroup, twist: Optional[Twist] = None,
             overrides: Sequence[DifferentialOverride] = (),
             assertions: Sequence[ExtensionAssertion] = (),
             degrees: Optional[Sequence[int]] = None,
             assume_remaining_zero: bool = False) -> AhssResult:
    """Validate, build E_1, turn pages to E_infinity, and report graded K-groups."""
    X = X if X.checked else validate_complex(X, G, twist)
    for ov in overrides:
        if ov.page < 2:
            raise ShapeMismatch("overrides start at page 2; page 1 is computed", page=ov.page)
        if ov.page > max(X.dimension, 1):
            raise ShapeMismatch("no differential of this page fits in the complex", page=ov.page)
    page = e1_page(X, G, twist)
    pages = [page]
    assumed = []
    page = turn_page(page)
    for r in range(2, X.dimension + 1):
        page = apply_overrides(page, overrides)
        pending = unresolved(page)
        if pending:
            if not assume_remaining_zero:
                raise PageNotStable(
                    f"d_{r} may be nonzero and no override was given",
                    page=r,
                    sources=[list(k) for k in pending],
                    targets=[list(page.target(*k)) for k in pending],
                )
            assumed.extend({"page": r, "from": list(k)} for k in pending)
        pages.append(page)
        page = turn_page(page)
    pages.append(page)
    if degrees is None:
        degrees = list(range(0, -page.period, -1))
    reports = graded_k_report(page, degrees, assertions)
    return AhssResult(pages, page, reports, assumed)
