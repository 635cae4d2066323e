"""Acceptance criteria, one test per criterion.

Each check returns (ok, detail).  The outcome, the runtime and the limit are
recorded and printed as one line per criterion at the end of the session
(see conftest.py), and running this file directly prints the same lines.
"""

import random
import time
from pathlib import Path

import numpy as np
import pytest
import sympy

from magnetick.abelian import (
    AbMorphism,
    FgAbelianGroup,
    identity,
    inverse_unimodular,
    matmul,
    smith_normal_form,
    subquotient_data,
)
from magnetick.ahss import d1, e1_page, run_ahss, turn_page
from magnetick.catalog import cyclic_magnetic, magnetic_catalog
from magnetick.coefficients import Twist, counts_row, periodicity, point_coefficients
from magnetick.corep import (
    Corepresentation,
    chi_at,
    classify_magnetic_irreps,
    commutant_dimension,
    core_character_table,
    corep_law_residual,
    direct_sum,
    format_entry,
    frobenius_check,
    irrep_matrices,
    schur_frobenius,
    twisted_irreps,
    wigner_construct,
)
from magnetick.groups import CentralExtension, extension_splits, pullback_extension
from magnetick.inputs import load_assertions, load_complex, load_group, load_overrides
from magnetick.posets import random_gposet

DATA = Path(__file__).resolve().parents[1] / "src" / "magnetick" / "data"

RESULTS = {}


def record(number, title, limit, check):
    start = time.perf_counter()
    ok, detail = check()
    elapsed = time.perf_counter() - start
    passed = ok and elapsed < limit
    RESULTS[number] = (passed, f"criterion {number} {title}: {'PASS' if passed else 'FAIL'} "
                               f"({elapsed:.2f}s, limit {limit}s) {detail}")
    return passed, RESULTS[number][1]


# ---------------------------------------------------------------------------
# 1: magnetic Z/4


def check_z4_irreps():
    ring = classify_magnetic_irreps(load_group(DATA / "z4.json"))
    found = [(r.type.value, r.dimension) for r in ring.irreps]
    return found == [("REAL", 1), ("QUATERNIONIC", 2)], f"irreps {found}"


# ---------------------------------------------------------------------------
# 2: Z/8 over Z/4 with the sign character


def check_soc_irrep():
    z4, z8 = load_group(DATA / "z4.json"), cyclic_magnetic(8)
    ring = twisted_irreps(CentralExtension(z8, z4, [x % 4 for x in range(8)]), "sign")
    if len(ring.irreps) != 1:
        return False, f"{len(ring.irreps)} irreps"
    (r,) = ring.irreps
    built = wigner_construct(r.plus, z8)
    raw = built.matrices[z8.a0] / built.phase
    target = np.array([[0, 1j], [1, 0]])
    ok = r.type.value == "COMPLEX" and r.dimension == 2 and np.allclose(raw, target)
    shown = "; ".join(" ".join(format_entry(complex(z)) for z in row) for row in raw)
    return ok, f"{r.type.value} dim {r.dimension}, M(a0) = [{shown}] K up to phase {format_entry(built.phase)}"


# ---------------------------------------------------------------------------
# 3: the coefficient table


def table_row(n_r, n_c, n_h, q):
    """(rank, number of Z/2 summands) of K^{-q} of a point, read off the table."""
    return [
        (n_r + n_c + n_h, 0), (0, n_r), (n_c, n_r), (0, 0),
        (n_r + n_c + n_h, 0), (0, n_h), (n_c, n_h), (0, 0),
    ][q % 8]


def check_coefficient_table():
    bad = []
    for n_r in range(4):
        for n_c in range(4):
            for n_h in range(4):
                for q in range(8):
                    rank, twos = table_row(n_r, n_c, n_h, q)
                    if counts_row(n_r, n_c, n_h, -q).invariants != (rank, (2,) * twos):
                        bad.append((n_r, n_c, n_h, -q))
    return not bad, f"{64 * 8 - len(bad)}/512 rows match" + (f"; first mismatch {bad[0]}" if bad else "")


# ---------------------------------------------------------------------------
# 4: periodicity of cyclic groups


def rows_4_periodic(G):
    ring = classify_magnetic_irreps(G)
    return all(point_coefficients(ring, t).group.invariants == point_coefficients(ring, t - 4).group.invariants
               for t in range(0, -8, -1))


def check_cyclic_periodicity():
    notes, ok = [], True
    for n in (2, 3, 4):
        G = cyclic_magnetic(2 * n)
        splits = extension_splits(pullback_extension(G)) is not None
        four = rows_4_periodic(G)
        ok &= splits and four
        notes.append(f"Z/{2 * n}: splits={splits} 4-periodic={four}")
    G = cyclic_magnetic(2)
    splits = extension_splits(pullback_extension(G)) is not None
    four = rows_4_periodic(G)
    eight = periodicity(G)["period"] == 8
    ok &= not splits and not four and eight
    notes.append(f"Z/2: splits={splits} 4-periodic={four}")
    return ok, "; ".join(notes)


# ---------------------------------------------------------------------------
# 5 and 6: the torus


def check_torus_nosoc():
    G = load_group(DATA / "z4.json")
    X = load_complex(DATA / "torus.json", G)
    overrides, _ = load_overrides(DATA / "torus_nosoc_overrides.json")
    assertions = load_assertions(DATA / "torus_nosoc_assertions.json")
    E1 = e1_page(X, G)
    ok = [str(E1.entry(n, t)) for n, t in [(0, 0), (1, 0), (2, 0), (0, -1), (0, -2), (1, -2), (2, -2)]] == [
        "Z^6", "Z^2", "Z", "Z/2 + Z/2", "Z^2 + Z/2 + Z/2", "Z^2", "Z"]
    ok &= d1(X, G, None, 0)[0].matrix == [[0, 0, -1, -1, 1, 2], [-1, -2, 1, 1, 0, 0]]
    ok &= d1(X, G, None, -2)[1].matrix == [[2, 2]]
    E2 = turn_page(E1)
    ok &= str(E2.entry(0, 0)) == "Z^4" and str(E2.entry(2, -2)) == "Z/2"
    result = run_ahss(X, G, None, overrides, assertions)
    totals = [str(r.total) for r in result.reports]
    ok &= totals == ["Z^4", "Z/2", "Z^2 + Z/2", "0"]
    return ok, f"K^0..K^-3 = {totals}"


def soc_twist(G):
    return Twist(CentralExtension(cyclic_magnetic(8), G, [x % 4 for x in range(8)]), "sign")


def check_torus_soc():
    G = load_group(DATA / "z4.json")
    X = load_complex(DATA / "torus.json", G)
    twist = soc_twist(G)
    E1 = e1_page(X, G, twist)
    ok = str(E1.entry(0, 0)) == "Z^4" and str(E1.entry(1, 0)) == "Z^2" and str(E1.entry(2, 0)) == "Z"
    E2 = turn_page(E1)
    ok &= str(E2.entry(0, 0)) == "Z^2"
    result = run_ahss(X, G, twist)
    collapsed = not result.assumed_zero and all(
        str(result.final.entries[k]) == str(E2.entries[k]) for k in E2.entries)
    ambiguous = any(r.ambiguous for r in result.reports)
    totals = [str(r.total) for r in result.reports]
    ok &= collapsed and not ambiguous and totals == ["Z^2 + Z/2", "0", "Z^4", "Z/2"]
    return ok, f"collapsed={collapsed} ambiguous={ambiguous} K^0..K^-3 = {totals}"


# ---------------------------------------------------------------------------
# 7: property suites


def prop_trichotomy(catalog):
    count = 0
    for _, G in catalog:
        n0 = len(G.core)
        for chi in core_character_table(G):
            numeric = sum(complex(chi_at(chi, G, G.mul(g, g))) for g in G.antiunitary)
            exact = schur_frobenius(chi, G)
            if abs(numeric - exact) > 1e-9 or exact not in (n0, 0, -n0):
                return False, count
            count += 1
    return True, count


def prop_wigner(catalog):
    worst, count = 0.0, 0
    for _, G in catalog:
        for r in classify_magnetic_irreps(G).irreps:
            chi = r.constituents[0]
            built = wigner_construct(chi, G, irrep_matrices(chi, G))
            worst = max(worst, corep_law_residual(built.matrices, G))
            if commutant_dimension(built.matrices, G) != {"R": 1, "C": 2, "H": 4}[r.field]:
                return False, worst, count
            count += 1
    return worst < 1e-9, worst, count


def prop_frobenius(catalog):
    rng = random.Random(7)
    for _ in range(100):
        _, G = rng.choice(catalog)
        ring = classify_magnetic_irreps(G)
        table = core_character_table(G)
        V = rng.choice(table)
        W = direct_sum({r.name: rng.randrange(3) for r in ring.irreps}, ring)
        lhs, rhs = frobenius_check(V, Corepresentation(G, W), G)
        if lhs != rhs:
            return False
    return True


def rand_unimodular(rng, n):
    U = identity(n)
    for _ in range(3 * n):
        if n == 1:
            U[0] = [-U[0][0]]
            continue
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-3, 3)
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
    rng.shuffle(U)
    return U


def prop_snf():
    rng = random.Random(2024)
    for _ in range(500):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        bound = rng.choice([1, 3, 20, 1000])
        M = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]
        U, D, V = smith_normal_form(M)
        if matmul(matmul(U, M, inner=m), V, inner=n) != D:
            return False
        if abs(sympy.Matrix(U).det()) != 1 or abs(sympy.Matrix(V).det()) != 1:
            return False
        if any(D[i][j] for i in range(m) for j in range(n) if i != j):
            return False
        d = [D[i][i] for i in range(min(m, n))]
        if any(x < 0 for x in d) or any((b % a if a else b) for a, b in zip(d, d[1:])):
            return False
    return True


def prop_exact_sequences():
    rng = random.Random(14)
    done = 0
    while done < 500:
        r, s = rng.randint(0, 4), rng.randint(0, 4)
        a, c, m = r + rng.randint(0, 2), s + rng.randint(0, 2), r + s
        if m == 0:
            continue
        U = rand_unimodular(rng, m)
        inc = [[int(i == j and i < r) for j in range(a)] for i in range(m)]
        f = matmul(matmul(U, inc, inner=m), rand_unimodular(rng, a), inner=a) if a else [[] for _ in range(m)]
        proj = [[int(j == r + i) for j in range(m)] for i in range(c)]
        g = matmul(matmul(rand_unimodular(rng, c), proj, inner=c), inverse_unimodular(U), inner=m) if c else []
        if c and a and any(any(row) for row in matmul(g, f, inner=m)):
            return False
        mid = FgAbelianGroup.free(m)
        F = AbMorphism(FgAbelianGroup.free(a), mid, f) if a else None
        Gm = AbMorphism(mid, FgAbelianGroup.free(c), g) if c else None
        if not subquotient_data(F, Gm, mid).group.is_zero():
            return False
        done += 1
    return True


def prop_d_squared():
    rng = random.Random(99)
    groups = [cyclic_magnetic(4), cyclic_magnetic(8)]
    done = 0
    while done < 50:
        G = groups[done % 2]
        X = random_gposet(G, rng.randint(2, 4), rng, density=rng.uniform(0.3, 0.8)).order_complex(max_dim=3)
        if X.dimension < 1:
            continue
        for t in range(0, -8, -1):
            ds = d1(X, G, None, t)
            for first, second in zip(ds, ds[1:]):
                if not second.compose(first).is_zero():
                    return False
        done += 1
    return True


def check_properties():
    catalog = magnetic_catalog(16)
    a, n_chars = prop_trichotomy(catalog)
    b, worst, n_irreps = prop_wigner(catalog)
    parts = {
        "a trichotomy": a,
        "b/c Wigner law and commutants": b,
        "d Frobenius": prop_frobenius(catalog),
        "e SNF": prop_snf(),
        "e exact sequences": prop_exact_sequences(),
        "f d1 squared": prop_d_squared(),
    }
    detail = ", ".join(f"{k}={'ok' if v else 'FAILED'}" for k, v in parts.items())
    return all(parts.values()), (f"{len(catalog)} groups, {n_chars} characters, {n_irreps} irreps, "
                                 f"worst residual {worst:.1e}; {detail}")


# ---------------------------------------------------------------------------


CRITERIA = [
    (1, "magnetic Z/4 irreps", 1, check_z4_irreps),
    (2, "twisted Z/8 over Z/4 irrep", 1, check_soc_irrep),
    (3, "coefficient table", 1, check_coefficient_table),
    (4, "cyclic periodicity", 1, check_cyclic_periodicity),
    (5, "untwisted torus", 5, check_torus_nosoc),
    (6, "twisted torus", 5, check_torus_soc),
    (7, "property suites", 60, check_properties),
]


@pytest.mark.parametrize("number,title,limit,check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_acceptance(number, title, limit, check):
    passed, line = record(number, title, limit, check)
    print(line)
    assert passed, line


if __name__ == "__main__":
    for criterion in CRITERIA:
        print(record(*criterion)[1])
