"""Irreducible corepresentations of magnetic groups.

A corepresentation sends unitary elements to linear maps and antiunitary
elements to antilinear ones; an antiunitary ``g`` is stored as the matrix
``M(g)`` of the operator ``v -> M(g) conj(v)``, so the composition law reads
``M(gh) = M(g) conj^phi(g)(M(h))``.

Classification is exact (characters over cyclotomic fields).  Matrices are
floating point and only needed for the demonstrative Wigner construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Union

import numpy as np

from .characters import Character, character_table, class_data, class_function
from .cyclotomic import Cyclotomic
from .errors import BadCharacter, InconsistentMultiplicities, MatricesUnavailable, NotSelfAssociate
from .groups import CentralExtension, FiniteGroup, MagneticGroup, is_magnetic

TOL = 1e-9

RepMatrices = Dict[int, np.ndarray]


class RepType(str, Enum):
    REAL = "REAL"
    COMPLEX = "COMPLEX"
    QUATERNIONIC = "QUATERNIONIC"

    @property
    def field(self) -> str:
        return {"REAL": "R", "COMPLEX": "C", "QUATERNIONIC": "H"}[self.value]


# ---------------------------------------------------------------------------
# the unitary part of a group


@dataclass(frozen=True)
class CoreView:
    group: FiniteGroup
    embedding: tuple  # local index -> element of the ambient group
    local: Mapping[int, int]


def core_view(G: FiniteGroup) -> CoreView:
    """The core of a magnetic group (or the whole group if it is plain) as a standalone group."""
    cached = G.__dict__.get("_core_view")
    if cached is None:
        if is_magnetic(G):
            K, emb = G.subgroup(G.core)
        else:
            K, emb = G, tuple(range(G.order))
        cached = CoreView(K, emb, {g: i for i, g in enumerate(emb)})
        G.__dict__["_core_view"] = cached
    return cached


def core_character_table(G: FiniteGroup) -> list:
    return character_table(core_view(G).group)


def character_table_of_core(core: Sequence[int], G: FiniteGroup) -> list:
    view = core_view(G)
    if tuple(sorted(core)) != tuple(view.embedding):
        raise BadCharacter("subset is not the core of G")
    return character_table(view.group)


def chi_at(chi: Character, G: FiniteGroup, g: int) -> Cyclotomic:
    """Value of a core character at an element of G (which must be unitary)."""
    return chi(core_view(G).local[g])


def _match_irreducible(chi: Character) -> Character:
    for row in character_table(chi.group):
        if row.values == chi.values:
            return row
    return chi


def conjugate_character(chi: Character, G: MagneticGroup, a0: Optional[int] = None) -> Character:
    """chi'(g) = conj(chi(a0^-1 g a0))."""
    a0 = G.a0 if a0 is None else a0
    view = core_view(G)
    a0i = G.inv(a0)
    vals = [chi(view.local[G.prod(a0i, g, a0)]).conjugate() for g in view.embedding]
    return _match_irreducible(class_function(view.group, vals))


def schur_frobenius(chi: Character, G: MagneticGroup) -> int:
    """sum over the antiunitary coset of chi(g^2)."""
    view = core_view(G)
    total = Cyclotomic.rational(0)
    for g in G.antiunitary:
        total = total + chi(view.local[G.mul(g, g)])
    if not total.is_rational() or total.rational_value().denominator != 1:
        raise BadCharacter("indicator is not an integer; character is not a core character")
    return int(total.rational_value())


# ---------------------------------------------------------------------------
# irreducible corepresentations


@dataclass
class MagneticIrrep:
    name: str
    type: RepType
    constituents: tuple  # (chi,), (chi, chi'), or (chi, chi)
    dimension: int
    indicator: Optional[int] = None
    ordinary: bool = False  # irrep of a plain group (no antiunitary part)
    matrices: Optional[RepMatrices] = None
    phase: complex = 1.0

    @property
    def field(self) -> str:
        return self.type.field

    @property
    def plus(self) -> Character:
        """Core summand on which the commutant's imaginary unit acts as +i."""
        return self.constituents[0]

    @property
    def minus(self) -> Optional[Character]:
        if self.ordinary or self.type is not RepType.COMPLEX:
            return None
        return self.constituents[1]

    def restriction_values(self) -> tuple:
        """Character of the restriction to the core, per core class."""
        vals = self.constituents[0].values
        if self.ordinary:
            return vals
        if self.type is RepType.REAL:
            return vals
        return tuple(a + b for a, b in zip(vals, self.constituents[1].values))

    @property
    def constituent_names(self) -> tuple:
        return tuple(c.name for c in self.constituents)


@dataclass
class MagneticRepRing:
    group: FiniteGroup
    irreps: list
    twist: Optional[tuple] = None
    a0: Optional[int] = None

    @property
    def magnetic(self) -> bool:
        return is_magnetic(self.group)

    @property
    def counts(self) -> tuple:
        c = {t: 0 for t in RepType}
        for r in self.irreps:
            c[r.type] += 1
        return (c[RepType.REAL], c[RepType.COMPLEX], c[RepType.QUATERNIONIC])

    def by_name(self, name: str) -> MagneticIrrep:
        return next(r for r in self.irreps if r.name == name)


def classify_magnetic_irreps(G: FiniteGroup, a0: Optional[int] = None) -> MagneticRepRing:
    """Irreducible corepresentations from the core character table.

    For a plain group every complex irrep is returned as an ordinary irrep of
    complex type.
    """
    table = core_character_table(G)
    if not is_magnetic(G):
        irreps = [
            MagneticIrrep(chi.name, RepType.COMPLEX, (chi,), chi.degree, ordinary=True) for chi in table
        ]
        return MagneticRepRing(G, irreps)
    a0 = G.a0 if a0 is None else a0
    n0 = len(G.core)
    irreps = []
    used = set()
    for chi in table:
        if chi.index in used:
            continue
        ind = schur_frobenius(chi, G)
        name = f"R{len(irreps) + 1}"
        if ind == n0:
            irreps.append(MagneticIrrep(name, RepType.REAL, (chi,), chi.degree, ind))
            used.add(chi.index)
        elif ind == -n0:
            irreps.append(MagneticIrrep(name, RepType.QUATERNIONIC, (chi, chi), 2 * chi.degree, ind))
            used.add(chi.index)
        elif ind == 0:
            partner = conjugate_character(chi, G, a0)
            if partner.index is None or partner.index == chi.index:
                raise NotSelfAssociate("indicator 0 but the character is self-associate", character=chi.name)
            irreps.append(MagneticIrrep(name, RepType.COMPLEX, (chi, partner), 2 * chi.degree, ind))
            used.update((chi.index, partner.index))
        else:
            raise BadCharacter(f"indicator {ind} outside the trichotomy", character=chi.name)
    return MagneticRepRing(G, irreps, a0=a0)


def kernel_character_values(E: CentralExtension, chi_A) -> dict:
    """Normalise a kernel character to {kernel element: +-1} and check it is a homomorphism."""
    kernel = E.kernel
    if chi_A is None or chi_A == "trivial":
        vals = {k: 1 for k in kernel}
    elif chi_A == "sign":
        if len(kernel) != 2:
            raise BadCharacter("'sign' needs a kernel of order 2")
        vals = {k: (1 if k == 0 else -1) for k in kernel}
    elif isinstance(chi_A, Mapping):
        vals = {int(k): int(v) for k, v in chi_A.items()}
    else:
        vals = dict(zip(kernel, (int(v) for v in chi_A)))
    if set(vals) != set(kernel) or any(v not in (1, -1) for v in vals.values()):
        raise BadCharacter("kernel character must assign +-1 to every kernel element")
    for a in kernel:
        for b in kernel:
            if vals[E.total.mul(a, b)] != vals[a] * vals[b]:
                raise BadCharacter("kernel character is not a homomorphism")
    return vals


def twisted_ring(group: FiniteGroup, kernel_values: Mapping[int, int], twist=None) -> MagneticRepRing:
    """Irreps of ``group`` on which each listed central element k acts by kernel_values[k]."""
    full = classify_magnetic_irreps(group)
    view = core_view(group)
    kept = []
    for irrep in full.irreps:
        chi = irrep.constituents[0]
        if all(chi(view.local[k]) == chi.degree * v for k, v in kernel_values.items()):
            kept.append(irrep)
    for i, irrep in enumerate(kept):
        if not irrep.ordinary:
            irrep.name = f"R{i + 1}"
    return MagneticRepRing(group, kept, twist=twist, a0=full.a0)


def twisted_irreps(E: CentralExtension, chi_A="sign") -> MagneticRepRing:
    """Irreps of the total group on which the kernel acts through chi_A."""
    vals = kernel_character_values(E, chi_A)
    return twisted_ring(E.total, vals, twist=(E, vals))


# ---------------------------------------------------------------------------
# induction, decomposition, Frobenius reciprocity


@dataclass
class Corepresentation:
    """A corepresentation known through its restriction to the core (and optionally matrices)."""

    group: MagneticGroup
    restriction: Character
    matrices: Optional[RepMatrices] = None

    @property
    def dimension(self) -> int:
        return self.restriction.degree


def _as_core_character(V, G: FiniteGroup) -> Character:
    if isinstance(V, Character):
        return V
    if isinstance(V, Corepresentation):
        return V.restriction
    if isinstance(V, MagneticIrrep):
        return Character(core_view(G).group, V.restriction_values())
    raise TypeError("expected a Character, Corepresentation or MagneticIrrep")


def _add_chars(a: Character, b: Character) -> Character:
    return Character(a.group, [x + y for x, y in zip(a.values, b.values)])


def core_multiplicities(chi: Character, G: FiniteGroup) -> list:
    """Multiplicity of each irreducible core character in chi."""
    out = []
    for row in core_character_table(G):
        m = chi.inner(row)
        if m.denominator != 1 or m < 0:
            raise BadCharacter("not a character of a representation")
        out.append(int(m))
    return out


def induce(V, G: MagneticGroup, a0: Optional[int] = None) -> Corepresentation:
    """Ind V = V + a0 V; restriction to the core is V + V'."""
    a0 = G.a0 if a0 is None else a0
    if isinstance(V, dict):
        mats = induced_matrices(V, G, a0)
        chi = _character_of_matrices(V, G)
        return Corepresentation(G, _add_chars(chi, _conjugate_class_function(chi, G, a0)), mats)
    chi = _as_core_character(V, G)
    return Corepresentation(G, _add_chars(chi, _conjugate_class_function(chi, G, a0)))


def _conjugate_class_function(chi: Character, G: MagneticGroup, a0: int) -> Character:
    view = core_view(G)
    a0i = G.inv(a0)
    vals = [chi(view.local[G.prod(a0i, g, a0)]).conjugate() for g in view.embedding]
    return class_function(view.group, vals)


def decompose(W, G: MagneticGroup, ring: Optional[MagneticRepRing] = None) -> dict:
    """Multiplicities of irreducible corepresentations in W (ordered by the ring)."""
    ring = ring or classify_magnetic_irreps(G)
    chi = _as_core_character(W, G)
    mult = core_multiplicities(chi, G)
    out = {}
    problems = []
    for irrep in ring.irreps:
        m = mult[irrep.constituents[0].index]
        if irrep.ordinary or irrep.type is RepType.REAL:
            out[irrep.name] = m
        elif irrep.type is RepType.COMPLEX:
            m2 = mult[irrep.constituents[1].index]
            if m != m2:
                problems.append((irrep.name, m, m2))
            out[irrep.name] = min(m, m2)
        else:
            if m % 2:
                problems.append((irrep.name, m))
            out[irrep.name] = m // 2
    if problems:
        raise InconsistentMultiplicities(
            "core multiplicities do not follow the corepresentation restriction pattern",
            partial=out,
            offending=[list(p) for p in problems],
        )
    rebuilt = [0] * len(mult)
    for irrep in ring.irreps:
        for c in irrep.constituents:
            rebuilt[c.index] += out[irrep.name]
    assert rebuilt == mult
    return out


def direct_sum(multiplicities: Mapping[str, int], ring: MagneticRepRing) -> Character:
    """Core restriction character of a direct sum of irreducibles."""
    K = core_view(ring.group).group
    vals = [Cyclotomic.rational(0)] * len(class_data(K)[0])
    for irrep in ring.irreps:
        m = multiplicities.get(irrep.name, 0)
        vals = [v + r * m for v, r in zip(vals, irrep.restriction_values())]
    return Character(K, vals)


def hom_dimension(m1: Mapping[str, int], m2: Mapping[str, int], ring: MagneticRepRing) -> int:
    """Real dimension of Hom between two corepresentations given by multiplicities."""
    real_dim = {RepType.REAL: 1, RepType.COMPLEX: 2, RepType.QUATERNIONIC: 4}
    return sum(m1.get(r.name, 0) * m2.get(r.name, 0) * real_dim[r.type] for r in ring.irreps)


def frobenius_check(V, W, G: MagneticGroup) -> tuple:
    """(dim_R Hom(Ind V, W), dim_R Hom_core(V, res W)).

    The right-hand side is a complex vector space counted at two real
    dimensions per complex dimension.
    """
    ring = classify_magnetic_irreps(G)
    lhs = hom_dimension(decompose(induce(V, G), G, ring), decompose(W, G, ring), ring)
    v = core_multiplicities(_as_core_character(V, G), G)
    w = core_multiplicities(_as_core_character(W, G), G)
    rhs = 2 * sum(a * b for a, b in zip(v, w))
    return lhs, rhs


def zero_corepresentation(G: MagneticGroup) -> Corepresentation:
    K = core_view(G).group
    return Corepresentation(G, Character(K, [Cyclotomic.rational(0)] * len(class_data(K)[0])))


# ---------------------------------------------------------------------------
# matrices


def character_matrices(chi: Character, G: FiniteGroup) -> RepMatrices:
    """1x1 matrices of a linear core character, keyed by elements of G."""
    if chi.degree != 1:
        raise MatricesUnavailable("only linear characters have canonical matrices", degree=chi.degree)
    view = core_view(G)
    return {g: np.array([[complex(chi(i))]]) for i, g in enumerate(view.embedding)}


def irrep_matrices(chi: Character, G: FiniteGroup, seed: int = 0) -> RepMatrices:
    """Unitary matrices realising an irreducible core character (numerical).

    Projects the regular representation onto the chi-isotypic block and splits
    it with a random Hermitian element of the commutant, whose eigenspaces
    are irreducible for generic choices.
    """
    if chi.degree == 1:
        return character_matrices(chi, G)
    view = core_view(G)
    K = view.group
    n, d = K.order, chi.degree
    reg = np.zeros((n, n, n))
    for g in range(n):
        for x in range(n):
            reg[g, K.mul(g, x), x] = 1.0
    vals = np.array([complex(chi(g)) for g in range(n)])
    proj = (d / n) * np.einsum("g,gij->ij", vals.conj(), reg)
    u, s, _ = np.linalg.svd(proj)
    W = u[:, : d * d]
    rng = np.random.default_rng(seed)
    for _ in range(20):
        H = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        H = H + H.conj().T
        avg = sum(reg[g].T @ H @ reg[g] for g in range(n))
        B = W.conj().T @ avg @ W
        evals, evecs = np.linalg.eigh(B)
        U = W @ evecs[:, :d]
        mats = {g: U.conj().T @ reg[view.local[g]] @ U for g in view.embedding}
        if _is_representation(mats, G, chi):
            return mats
    raise MatricesUnavailable("could not split the isotypic component", character=chi.name)


def _is_representation(mats: RepMatrices, G: FiniteGroup, chi: Character) -> bool:
    for g, Mg in mats.items():
        if abs(np.trace(Mg) - complex(chi_at(chi, G, g))) > 1e-8:
            return False
        for h, Mh in mats.items():
            if np.abs(Mg @ Mh - mats[G.mul(g, h)]).max() > 1e-8:
                return False
    return True


def _character_of_matrices(rho: RepMatrices, G: FiniteGroup) -> Character:
    view = core_view(G)
    vals = []
    for cls in class_data(view.group)[0]:
        tr = np.trace(rho[view.embedding[cls[0]]])
        vals.append(_recognise_character_value(tr, view.group.exponent))
    return Character(view.group, vals)


def _recognise_character_value(z: complex, e: int) -> Cyclotomic:
    """Find the cyclotomic integer in Q(zeta_e) closest to z among sums of roots of unity."""
    # solve for small integer coefficients on the power basis by least squares
    from .cyclotomic import cyclotomic_polynomial

    deg = len(cyclotomic_polynomial(e)) - 1
    basis = np.array([np.exp(2j * np.pi * k / e) for k in range(deg)])
    A = np.vstack([basis.real, basis.imag])
    coef, *_ = np.linalg.lstsq(A, np.array([z.real, z.imag]), rcond=None)
    best = Cyclotomic(e, [int(round(c)) for c in coef])
    if abs(complex(best) - z) < 1e-6:
        return best
    # fall back to brute force over small coefficient vectors
    from itertools import product

    for coeffs in product(range(-4, 5), repeat=deg):
        c = Cyclotomic(e, list(coeffs))
        if abs(complex(c) - z) < 1e-6:
            return c
    raise BadCharacter("trace is not a recognisable cyclotomic integer")


def conjugate_matrices(rho: RepMatrices, G: MagneticGroup, a0: Optional[int] = None) -> RepMatrices:
    a0 = G.a0 if a0 is None else a0
    a0i = G.inv(a0)
    return {g: np.conj(rho[G.prod(a0i, g, a0)]) for g in rho}


def find_intertwiner(rho: RepMatrices, rho_prime: RepMatrices, G: MagneticGroup, a0: Optional[int] = None) -> tuple:
    """(T, sign) with rho'(g) = T^-1 rho(g) T and T conj(T) = sign * rho(a0^2)."""
    a0 = G.a0 if a0 is None else a0
    d = next(iter(rho.values())).shape[0]
    blocks = []
    eye = np.eye(d)
    for g in rho:
        # T rho'(g) - rho(g) T = 0, vectorised column-major
        blocks.append(np.kron(rho_prime[g].T, eye) - np.kron(eye, rho[g]))
    A = np.vstack(blocks)
    _, s, vh = np.linalg.svd(A)
    null = [vh[i].conj() for i in range(len(s)) if s[i] < 1e-8] + [vh[i].conj() for i in range(len(s), d * d)]
    if len(null) != 1:
        raise NotSelfAssociate("rho and rho' are not isomorphic irreducibles", nullity=len(null))
    S = null[0].reshape((d, d), order="F")
    target = rho[G.mul(a0, a0)]
    C = S @ S.conj() @ np.linalg.inv(target)
    c = C[0, 0]
    if np.abs(C - c * np.eye(d)).max() > 1e-7 or abs(c.imag) > 1e-7:
        raise NotSelfAssociate("S conj(S) rho(a0^2)^-1 is not a real scalar")
    sign = 1 if c.real > 0 else -1
    T = S / np.sqrt(abs(c.real))
    return T, sign


def wigner_construct(chi, G: MagneticGroup, matrices: Optional[RepMatrices] = None,
                     a0: Optional[int] = None, normalise: bool = True) -> MagneticIrrep:
    """Build the irreducible corepresentation attached to a core irrep, with matrices."""
    a0 = G.a0 if a0 is None else a0
    ring = classify_magnetic_irreps(G, a0)
    if isinstance(chi, dict):
        matrices, chi = chi, _match_irreducible(_character_of_matrices(chi, G))
    irrep = next(r for r in ring.irreps if chi.index in {c.index for c in r.constituents})
    base = irrep.constituents[0]
    if matrices is None or base.index != chi.index:
        if base.degree != 1:
            raise MatricesUnavailable(
                "core irreps of dimension > 1 need user-supplied matrices (see irrep_matrices)",
                character=base.name,
            )
        matrices = character_matrices(base, G)
    rho = matrices
    d = base.degree
    a0i = G.inv(a0)
    out: RepMatrices = {}
    if irrep.type is RepType.COMPLEX:
        rhop = conjugate_matrices(rho, G, a0)
        z = np.zeros((d, d), dtype=complex)
        for g in range(G.order):
            if G.phi[g] == 0:
                out[g] = np.block([[rho[g], z], [z, rhop[g]]])
            else:
                out[g] = np.block([[z, rho[G.mul(g, a0)]], [rhop[G.mul(g, a0i)], z]])
    else:
        T, sign = find_intertwiner(rho, conjugate_matrices(rho, G, a0), G, a0)
        expected = 1 if irrep.type is RepType.REAL else -1
        if sign != expected:
            raise NotSelfAssociate("intertwiner sign disagrees with the indicator", sign=sign)
        for g in range(G.order):
            if irrep.type is RepType.REAL:
                out[g] = rho[g] if G.phi[g] == 0 else rho[G.mul(g, a0i)] @ T
            else:
                z = np.zeros((d, d), dtype=complex)
                if G.phi[g] == 0:
                    out[g] = np.block([[rho[g], z], [z, rho[g]]])
                else:
                    A = rho[G.mul(g, a0i)] @ T
                    out[g] = np.block([[z, A], [-A, z]])
    out = {g: np.asarray(m, dtype=complex) for g, m in out.items()}
    phase = 1.0 + 0j
    if normalise:
        row = out[a0][0]
        first = next(x for x in row if abs(x) > TOL)
        phase = np.conj(first) / abs(first)
        for g in G.antiunitary:
            out[g] = phase * out[g]
    return MagneticIrrep(irrep.name, irrep.type, irrep.constituents, irrep.dimension,
                         irrep.indicator, matrices=out, phase=complex(phase))


def induced_matrices(rho: RepMatrices, G: MagneticGroup, a0: Optional[int] = None) -> RepMatrices:
    """Matrices of Ind V on V + a0 V."""
    a0 = G.a0 if a0 is None else a0
    a0i = G.inv(a0)
    rhop = conjugate_matrices(rho, G, a0)
    d = next(iter(rho.values())).shape[0]
    z = np.zeros((d, d), dtype=complex)
    out = {}
    for g in range(G.order):
        if G.phi[g] == 0:
            out[g] = np.block([[rho[g], z], [z, rhop[g]]])
        else:
            out[g] = np.block([[z, rho[G.mul(g, a0)]], [rhop[G.mul(g, a0i)], z]])
    return out


def corep_law_residual(mats: RepMatrices, G: MagneticGroup) -> float:
    """max |M(gh) - M(g) conj^phi(g)(M(h))|."""
    worst = 0.0
    for g in range(G.order):
        for h in range(G.order):
            rhs = mats[g] @ (np.conj(mats[h]) if G.phi[g] else mats[h])
            worst = max(worst, float(np.abs(mats[G.mul(g, h)] - rhs).max()))
    return worst


def commutant_dimension(mats: RepMatrices, G: MagneticGroup) -> int:
    """Real dimension of {X : X M(g) = M(g) conj^phi(g)(X)}."""
    d = next(iter(mats.values())).shape[0]
    rows = []
    for idx in range(2 * d * d):
        X = np.zeros(d * d, dtype=complex)
        if idx < d * d:
            X[idx] = 1.0
        else:
            X[idx - d * d] = 1j
        X = X.reshape(d, d)
        cols = []
        for g in range(G.order):
            M = mats[g]
            R = X @ M - (M @ np.conj(X) if G.phi[g] else M @ X)
            cols.append(np.concatenate([R.real.ravel(), R.imag.ravel()]))
        rows.append(np.concatenate(cols))
    A = np.array(rows).T
    s = np.linalg.svd(A, compute_uv=False)
    rank = int((s > 1e-8).sum())
    return 2 * d * d - rank


def format_entry(z: complex) -> str:
    """Exact-looking text for small Gaussian rationals, else 12 significant digits."""
    from fractions import Fraction as F

    def part(x: float):
        f = F(x).limit_denominator(12)
        return f if abs(float(f) - x) < 1e-10 else None

    re, im = part(z.real), part(z.imag)
    if re is None or im is None:
        return f"{z.real:.12g}{z.imag:+.12g}i"
    if im == 0:
        return str(re)
    imag = "i" if im == 1 else "-i" if im == -1 else f"{im}i"
    if re == 0:
        return imag
    return f"{re}{'+' if im > 0 else ''}{imag}"
