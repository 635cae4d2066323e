"""Coefficient groups of magnetic equivariant K-theory at orbits, and the maps between them.

Each irreducible corepresentation of a stabilizer contributes one copy of
KO, KU or KSp of a point according to its type.  A map of orbits
``G/H_to -> G/H_from`` pulls a corepresentation V of H_from back to H_to;
the induced map on coefficients is read off from the bimodule
``Hom(W, g*V)`` over the commutant fields of W and V, split into simple
bimodules, each of which acts on K-groups of a point by one of the classical
maps (complexification, realification, quaternionification, forgetting, or
complex conjugation).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .abelian import AbMorphism, FgAbelianGroup
from .characters import Character
from .corep import (
    MagneticRepRing,
    RepType,
    classify_magnetic_irreps,
    core_view,
    kernel_character_values,
    twisted_ring,
)
from .cyclotomic import Cyclotomic
from .errors import NotEquivariant, StabilizerDoesNotLift
from .groups import CentralExtension, FiniteGroup, MagneticGroup, extension_splits, is_magnetic, pullback_extension

# K-groups of a point in degree t, indexed by q = -t mod 8 (0 = Z, d = Z/d, None = 0)
KO_TABLE = (0, 2, 2, None, 0, None, None, None)
KU_TABLE = (0, None, 0, None, 0, None, 0, None)
KSP_TABLE = (0, None, None, None, 0, 2, 2, None)
TABLES = {"R": KO_TABLE, "C": KU_TABLE, "H": KSP_TABLE}
THEORY = {"R": "KO", "C": "KU", "H": "KSp"}
FIELD_DIM = {"R": 1, "C": 2, "H": 4}


class BuiltinTables:
    """KO, KU and KSp of a point, periodic of period 8."""

    KO = KO_TABLE
    KU = KU_TABLE
    KSp = KSP_TABLE

    @staticmethod
    def order(field: str, t: int) -> Optional[int]:
        return TABLES[field][(-t) % 8]

    @staticmethod
    def group(field: str, t: int) -> FgAbelianGroup:
        d = TABLES[field][(-t) % 8]
        return FgAbelianGroup() if d is None else FgAbelianGroup((d,), (THEORY[field],))


# value of each classical map on generators, keyed by q = -t mod 8
_CLASSICAL = {
    ("R", "R"): {0: 1, 1: 1, 2: 1, 4: 1},
    ("H", "H"): {0: 1, 4: 1, 5: 1, 6: 1},
    ("R", "C"): {0: 1, 4: 2},
    ("C", "R"): {0: 2, 2: 1, 4: 1},
    ("H", "C"): {0: 2, 4: 1},
    ("C", "H"): {0: 1, 4: 2, 6: 1},
    ("R", "H"): {0: 1, 4: 4},
    ("H", "R"): {0: 4, 4: 1},
}

# real dimension of a simple (target, source) bimodule
_SIMPLE_DIM = {
    ("R", "R"): 1, ("C", "R"): 2, ("R", "C"): 2, ("C", "C"): 2,
    ("H", "R"): 4, ("R", "H"): 4, ("H", "C"): 4, ("C", "H"): 4, ("H", "H"): 4,
}


def classical_map(source: str, target: str, t: int, conjugate: bool = False) -> int:
    """Integer by which the classical map K_source^t(pt) -> K_target^t(pt) acts on generators."""
    q = (-t) % 8
    if source == target == "C":
        if q % 2:
            return 0
        return (-1) ** (q // 2) if conjugate else 1
    return _CLASSICAL[(source, target)].get(q, 0)


@dataclass(frozen=True)
class CoefficientRow:
    """K^t of one orbit: one cyclic summand per irrep whose field has nonzero K^t."""

    degree: int
    group: FgAbelianGroup
    tags: tuple  # (irrep name, field, degree) per generator
    irrep_index: tuple  # position of each generator's irrep in the ring

    @property
    def labels(self) -> tuple:
        return self.group.labels


def row_from_types(types: Sequence[str], names: Sequence[str], t: int) -> CoefficientRow:
    orders, labels, tags, index = [], [], [], []
    for i, (f, name) in enumerate(zip(types, names)):
        d = TABLES[f][(-t) % 8]
        if d is None:
            continue
        orders.append(d)
        labels.append(name)
        tags.append((name, f, t))
        index.append(i)
    return CoefficientRow(t, FgAbelianGroup(tuple(orders), tuple(labels)), tuple(tags), tuple(index))


def irrep_fields(ring: MagneticRepRing) -> list:
    return ["C" if r.ordinary else r.field for r in ring.irreps]


def point_coefficients(ring: MagneticRepRing, t: int) -> CoefficientRow:
    return row_from_types(irrep_fields(ring), [r.name for r in ring.irreps], t)


def counts_row(n_r: int, n_c: int, n_h: int, t: int) -> FgAbelianGroup:
    """KO^t ^ n_r + KU^t ^ n_c + KSp^t ^ n_h with generators in R, C, H order."""
    types = ["R"] * n_r + ["C"] * n_c + ["H"] * n_h
    return row_from_types(types, [f"{f}{i}" for i, f in enumerate(types)], t).group


# ---------------------------------------------------------------------------
# twists and stabilizers


class Twist:
    """A central extension of the symmetry group with a fixed action of its kernel."""

    def __init__(self, extension: CentralExtension, character="sign"):
        self.extension = extension
        self.kernel_values = kernel_character_values(extension, character)

    @property
    def total(self) -> FiniteGroup:
        return self.extension.total

    def __repr__(self) -> str:
        return f"Twist({self.extension!r}, {self.kernel_values})"


@dataclass
class Stabilizer:
    """A stabilizer subgroup (or its preimage in the extension) with its irreps."""

    ambient: FiniteGroup
    elements: tuple  # elements of the ambient group
    group: FiniteGroup  # reindexed copy
    local: dict
    ring: MagneticRepRing

    @property
    def magnetic(self) -> bool:
        return is_magnetic(self.group)

    def fields(self) -> list:
        return irrep_fields(self.ring)


def stabilizer(G: FiniteGroup, H: Sequence[int], twist: Optional[Twist] = None) -> Stabilizer:
    """Irreps attached to an orbit G/H, cached on the ambient group."""
    H = G.check_subgroup(H)
    ambient = twist.total if twist is not None else G
    cache = ambient.__dict__.setdefault("_stabilizers", {})
    key = (H, id(twist))
    if key in cache:
        return cache[key]
    if twist is not None:
        if twist.extension.base.order != G.order:
            raise StabilizerDoesNotLift("the extension is not over this group")
        elems = twist.extension.preimage(H)
        if len(elems) != len(H) * len(twist.extension.kernel) or not ambient.is_subgroup(elems):
            raise StabilizerDoesNotLift("preimage of the stabilizer is not a subgroup", stabilizer=list(H))
    else:
        elems = H
    if is_magnetic(ambient):
        group, elems = ambient.magnetic_subgroup(elems)
    else:
        group, elems = ambient.subgroup(elems)
    local = {g: i for i, g in enumerate(elems)}
    if twist is not None:
        ring = twisted_ring(group, {local[k]: v for k, v in twist.kernel_values.items()}, twist=twist)
    else:
        ring = classify_magnetic_irreps(group)
    stab = Stabilizer(ambient, elems, group, local, ring)
    cache[key] = stab
    return stab


def orbit_coefficients(G: FiniteGroup, H: Sequence[int], t: int, twist: Optional[Twist] = None) -> CoefficientRow:
    return point_coefficients(stabilizer(G, H, twist).ring, t)


# ---------------------------------------------------------------------------
# induced maps


def _core_values(stab: Stabilizer, chi: Character, elements: Sequence[int]) -> list:
    """chi evaluated at ambient elements lying in the stabilizer core."""
    view = core_view(stab.group)
    return [chi(view.local[stab.local[x]]) for x in elements]


def _multiplicity(target: Character, values: Sequence, stab: Stabilizer) -> int:
    """<values, target> over the target core, values given per core element."""
    view = core_view(stab.group)
    total = Cyclotomic.rational(0)
    for i in range(view.group.order):
        total = total + values[i] * target(i).conjugate()
    m = total.rational_value() / view.group.order
    if m.denominator != 1:
        raise ArithmeticError("non-integral multiplicity")
    return int(m)


def restriction_map(G: FiniteGroup, H_from: Sequence[int], H_to: Sequence[int], g: int, t: int,
                    twist: Optional[Twist] = None) -> AbMorphism:
    """Map K^t(G/H_from) -> K^t(G/H_to) induced by the orbit map x H_to -> x g H_from.

    Requires g^-1 H_to g inside H_from.
    """
    H_from = G.check_subgroup(H_from)
    H_to = G.check_subgroup(H_to)
    gi = G.inv(g)
    frm = set(H_from)
    bad = [h for h in H_to if G.prod(gi, h, g) not in frm]
    if bad:
        raise NotEquivariant("g^-1 H_to g is not contained in H_from", g=g, witness=bad[0])
    src = stabilizer(G, H_from, twist)
    tgt = stabilizer(G, H_to, twist)
    A = src.ambient
    gt = twist.extension.lift(g) if twist is not None else g
    gti = A.inv(gt)
    anti = bool(is_magnetic(G) and G.phi[g])

    tview = core_view(tgt.group)
    t_core = [tgt.elements[i] for i in tview.embedding]
    moved = [A.prod(gti, h, gt) for h in t_core]

    row_src = point_coefficients(src.ring, t)
    row_tgt = point_coefficients(tgt.ring, t)
    src_fields, tgt_fields = src.fields(), tgt.fields()
    matrix = [[0] * row_src.group.ngens for _ in range(row_tgt.group.ngens)]
    for j, vi in enumerate(row_src.irrep_index):
        V = src.ring.irreps[vi]
        f_src = src_fields[vi]
        vplus = _core_values(src, V.plus, moved)
        vminus = _core_values(src, V.minus, moved) if V.minus is not None else [Cyclotomic.rational(0)] * len(moved)
        if anti:
            vplus, vminus = [x.conjugate() for x in vminus], [x.conjugate() for x in vplus]
        if V.ordinary:
            restricted = [a + b for a, b in zip(vplus, vminus)]
        else:
            res = _core_values(src, V.constituents[0], moved)
            if V.type is not RepType.REAL:
                res = [a + b for a, b in zip(res, _core_values(src, V.constituents[1], moved))]
            restricted = [x.conjugate() for x in res] if anti else res
        for i, wi in enumerate(row_tgt.irrep_index):
            W = tgt.ring.irreps[wi]
            f_tgt = tgt_fields[wi]
            if f_src == f_tgt == "C":
                n_id = _multiplicity(W.plus, vplus, tgt)
                n_conj = _multiplicity(W.plus, vminus, tgt)
                value = n_id * classical_map("C", "C", t) + n_conj * classical_map("C", "C", t, conjugate=True)
            else:
                mult = _multiplicity(W.plus, restricted, tgt)
                if W.ordinary:
                    real_dim = 2 * mult
                else:
                    k = 2 if W.type is RepType.QUATERNIONIC else 1
                    real_dim = FIELD_DIM[f_tgt] * mult // k
                count = Fraction(real_dim, _SIMPLE_DIM[(f_tgt, f_src)])
                if count.denominator != 1:
                    raise ArithmeticError("Hom space is not a sum of simple bimodules")
                value = int(count) * classical_map(f_src, f_tgt, t)
            matrix[i][j] = value
    return AbMorphism(row_src.group, row_tgt.group, matrix)


# ---------------------------------------------------------------------------
# periodicity


def periodicity(G: MagneticGroup) -> dict:
    """4 when the pullback of Z/4 -> Z/2 along phi splits, else 8, with the section as witness."""
    E = pullback_extension(G)
    section = extension_splits(E)
    return {
        "period": 4 if section is not None else 8,
        "splits": section is not None,
        "section": None if section is None else [E.total.labels[x] for x in section],
    }


def coefficient_period(G: FiniteGroup, twist: Optional[Twist] = None) -> int:
    """Period used to fold degrees: that of the group carrying the representations."""
    carrier = twist.total if twist is not None else G
    if not is_magnetic(carrier):
        return 4  # KU alone is 2-periodic
    return periodicity(carrier)["period"]
