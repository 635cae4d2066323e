import itertools
import random
from collections import Counter
from math import gcd, prod

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from magnetick.abelian import (
    AbMorphism,
    FgAbelianGroup,
    cokernel,
    determinant,
    direct_sum,
    ext_nonzero,
    extension_group,
    hermite_rows,
    hermite_transform,
    hom_nonzero,
    identity,
    integer_nullspace,
    inverse_unimodular,
    kernel,
    matmul,
    smith_normal_form,
    solve_integer,
    subquotient,
    subquotient_data,
)
from magnetick.errors import IncompatibleMorphism, NoIntegerSolution, NotAComplex


def rand_matrix(rng, m, n, bound):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


def rand_unimodular(rng, n, steps=None):
    U = identity(n)
    for _ in range(steps or 3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            U[i] = [-x for x in U[i]]
            continue
        q = rng.randint(-3, 3)
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
    rng.shuffle(U)
    return U


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def check_snf(M, ncols=None):
    U, D, V = smith_normal_form(M, ncols)
    m = len(M)
    n = len(M[0]) if M else ncols
    assert matmul(matmul(U, M, inner=m), V, inner=n) == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i][j] == 0
    d = diagonal(D)
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b % a == 0) if a else b == 0
    return d


def determinantal_invariants(M):
    """Invariant factors from gcds of k x k minors (sympy determinants)."""
    m, n = len(M), len(M[0])
    S = sympy.Matrix(M)
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, int(S.extract(list(rows), list(cols)).det()))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def elements(G):
    return list(itertools.product(*[range(d) for d in G.orders]))


def order_profile(group_elements, add, zero):
    """Multiset of element orders, which determines a finite abelian group."""
    profile = Counter()
    for x in group_elements:
        k, y = 1, x
        while y != zero:
            y = add(y, x)
            k += 1
        profile[k] += 1
    return profile


def profile_of(G):
    def add(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, G.orders))

    return order_profile(elements(G), add, tuple(0 for _ in G.orders))


# ---------------------------------------------------------------------------
# Smith normal form


def test_snf_identity():
    assert check_snf(identity(3)) == [1, 1, 1]


def test_snf_diag_2_3():
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]


def test_snf_zero_matrix():
    U, D, V = smith_normal_form([[0, 0, 0], [0, 0, 0]])
    assert D == [[0, 0, 0], [0, 0, 0]]
    assert U == identity(2) and V == identity(3)


def test_snf_empty_shapes():
    U, D, V = smith_normal_form([], 3)
    assert U == [] and D == [] and V == identity(3)


def test_snf_against_determinantal_divisors():
    rng = random.Random(11)
    for _ in range(60):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        M = rand_matrix(rng, m, n, 6)
        d = [x for x in check_snf(M) if x]
        assert d == determinantal_invariants(M)


def test_random_snf_properties_500():
    rng = random.Random(2024)
    for k in range(500):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        M = rand_matrix(rng, m, n, rng.choice([1, 3, 20, 1000]))
        d = check_snf(M)
        expected = [int(x) for x in diagonal(sympy_snf(sympy.Matrix(M)).tolist())]
        assert sorted(abs(x) for x in expected if x) == [x for x in d if x]


def test_snf_large_entries_and_size():
    rng = random.Random(5)
    for m, n in [(50, 50), (30, 50), (50, 30)]:
        M = rand_matrix(rng, m, n, 10**6)
        d = check_snf(M)
        assert all(x == 1 for x in d[:-1])
        if m == n:
            assert d[-1] == abs(determinant(M))


def test_snf_large_low_rank():
    rng = random.Random(6)
    A, B = rand_matrix(rng, 50, 7, 1000), rand_matrix(rng, 7, 50, 1000)
    M = matmul(A, B)
    d = check_snf(M)
    assert sum(1 for x in d if x) == 7


def test_snf_small_pivot_rule_is_deterministic():
    M = [[4, 6], [6, 9], [2, 3]]
    assert smith_normal_form(M) == smith_normal_form([row[:] for row in M])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-50, 50), min_size=3, max_size=3), min_size=1, max_size=5))
def test_snf_hypothesis(M):
    assert [x for x in check_snf(M) if x] == determinantal_invariants(M)


def test_hermite_transform_matches_row_hermite():
    rng = random.Random(3)
    for _ in range(100):
        M = rand_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), 9)
        U, H = hermite_transform(M)
        assert matmul(U, M) == H
        assert abs(determinant(U)) == 1
        nonzero = [r for r in H if any(r)]
        assert nonzero == hermite_rows(M, len(M[0]))
        pivots = [next(j for j, x in enumerate(r) if x) for r in nonzero]
        assert pivots == sorted(set(pivots))
        for i, (r, c) in enumerate(zip(nonzero, pivots)):
            assert r[c] > 0
            for above in nonzero[:i]:
                assert 0 <= above[c] < r[c]


def test_hermite_form_is_a_lattice_invariant():
    rng = random.Random(4)
    for _ in range(50):
        M = rand_matrix(rng, 4, 5, 7)
        W = rand_unimodular(rng, 4)
        assert hermite_rows(M, 5) == hermite_rows(matmul(W, M), 5)


def test_inverse_unimodular():
    rng = random.Random(9)
    for _ in range(50):
        U = rand_unimodular(rng, 5)
        assert matmul(U, inverse_unimodular(U)) == identity(5)


def test_nullspace_and_solve():
    rng = random.Random(10)
    for _ in range(100):
        A = rand_matrix(rng, 3, 5, 5)
        N = integer_nullspace(A, 5)
        rank = sympy.Matrix(A).rank()
        assert len(N) == 5 - rank
        for v in N:
            assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
        x = [rng.randint(-4, 4) for _ in range(5)]
        b = [sum(a * y for a, y in zip(row, x)) for row in A]
        sol = solve_integer(A, b, 5)
        assert [sum(a * y for a, y in zip(row, sol)) for row in A] == b


def test_solve_without_integer_solution():
    with pytest.raises(NoIntegerSolution):
        solve_integer([[2, 4]], [1], 2)


# ---------------------------------------------------------------------------
# groups and morphisms


def test_notation():
    assert str(FgAbelianGroup((2, 0, 0))) == "Z^2 + Z/2"
    assert str(FgAbelianGroup()) == "0"
    assert str(FgAbelianGroup((2, 3))) == "Z/6"
    assert str(FgAbelianGroup((4, 2, 0))) == "Z + Z/2 + Z/4"


@pytest.mark.parametrize("orders", [(2, 3), (4, 6, 0), (12, 18, 2), (0, 0, 5, 10)])
def test_canonical_is_idempotent(orders):
    G = FgAbelianGroup(orders)
    assert G.canonical() == G.canonical().canonical()
    assert G.isomorphic(G.canonical())
    r, t = G.invariants
    assert all(b % a == 0 for a, b in zip(t, t[1:]))


def test_canonical_matches_order_profile():
    rng = random.Random(8)
    for _ in range(40):
        orders = tuple(rng.choice([2, 3, 4, 6, 8, 9]) for _ in range(rng.randint(1, 3)))
        G = FgAbelianGroup(orders)
        assert profile_of(G) == profile_of(G.canonical())


def test_invalid_orders():
    with pytest.raises(ValueError):
        FgAbelianGroup((1,))


def test_incompatible_morphism():
    with pytest.raises(IncompatibleMorphism):
        AbMorphism(FgAbelianGroup((2,)), FgAbelianGroup((0,)), [[1]])
    with pytest.raises(IncompatibleMorphism):
        AbMorphism(FgAbelianGroup((2,)), FgAbelianGroup((3,)), [[1]])
    AbMorphism(FgAbelianGroup((2,)), FgAbelianGroup((4,)), [[2]])


def test_cokernel_examples():
    Z = FgAbelianGroup.free(1)
    assert str(cokernel(AbMorphism(Z, Z, [[2]]))[0]) == "Z/2"
    assert str(cokernel(AbMorphism(FgAbelianGroup.free(2), Z, [[2, 2]]))[0]) == "Z/2"
    Z2 = FgAbelianGroup((2,))
    assert str(cokernel(AbMorphism.identity(Z2))[0]) == "0"


def test_kernel_examples():
    Z = FgAbelianGroup.free(1)
    assert str(kernel(AbMorphism(Z, Z, [[2]]))[0]) == "0"
    K, incl = kernel(AbMorphism(FgAbelianGroup((2, 2)), FgAbelianGroup((2,)), [[1, 1]]))
    assert str(K) == "Z/2"
    assert incl.matrix == [[1], [1]]
    K, incl = kernel(AbMorphism(FgAbelianGroup.free(2), Z, [[2, 2]]))
    assert str(K) == "Z"
    assert [r[0] for r in incl.matrix] in ([1, -1], [-1, 1])


def test_subquotient_examples():
    A = FgAbelianGroup((0, 2))
    assert subquotient_data(None, None, A).group.orders == (0, 2)
    Z = FgAbelianGroup.free(1)
    assert str(subquotient(AbMorphism(Z, Z, [[1]]), AbMorphism.zero(Z, FgAbelianGroup()))) == "0"


def test_torus_middle_node_is_exact():
    d00 = AbMorphism(FgAbelianGroup.free(6), FgAbelianGroup.free(2), [[0, 0, -1, -1, 1, 2], [-1, -2, 1, 1, 0, 0]])
    d10 = AbMorphism.zero(FgAbelianGroup.free(2), FgAbelianGroup.free(1))
    assert str(subquotient(d00, d10)) == "0"


def test_not_a_complex():
    Z = FgAbelianGroup.free(1)
    f = AbMorphism(Z, Z, [[1]])
    with pytest.raises(NotAComplex):
        subquotient(f, f)


def brute_kernel_profile(f):
    src = f.source
    ker = [x for x in elements(src) if not any(f(list(x)))]

    def add(a, b):
        return tuple((u + v) % d for u, v, d in zip(a, b, src.orders))

    return order_profile(ker, add, tuple(0 for _ in src.orders))


def brute_cokernel_size(f):
    image = {tuple(f(list(x))) for x in elements(f.source)}
    return prod(f.target.orders) // len(image)


def test_finite_kernels_and_cokernels_by_enumeration():
    rng = random.Random(12)
    for _ in range(150):
        src = FgAbelianGroup(tuple(rng.choice([2, 3, 4, 6]) for _ in range(rng.randint(1, 3))))
        tgt = FgAbelianGroup(tuple(rng.choice([2, 4, 6, 12]) for _ in range(rng.randint(1, 3))))
        mat = []
        for i, d in enumerate(tgt.orders):
            row = []
            for a in src.orders:
                step = d // gcd(a, d)
                row.append(step * rng.randrange(d // step + 1))
            mat.append(row)
        f = AbMorphism(src, tgt, mat)
        K, incl = kernel(f)
        assert profile_of(K) == brute_kernel_profile(f)
        assert f.compose(incl).is_zero()
        C, proj = cokernel(f)
        assert prod(C.orders) == brute_cokernel_size(f)
        assert proj.compose(f).is_zero()


def test_rank_nullity_and_degenerate_maps():
    rng = random.Random(13)
    for _ in range(100):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = rand_matrix(rng, m, n, 5)
        f = AbMorphism(FgAbelianGroup.free(n), FgAbelianGroup.free(m), M)
        rank = sympy.Matrix(M).rank()
        assert kernel(f)[0].rank == n - rank
        assert cokernel(f)[0].rank == m - rank
    W = rand_unimodular(rng, 4)
    iso = AbMorphism(FgAbelianGroup.free(4), FgAbelianGroup.free(4), W)
    assert kernel(iso)[0].is_zero() and cokernel(iso)[0].is_zero()


def test_random_exact_sequences_have_zero_homology_500():
    rng = random.Random(14)
    for _ in range(500):
        r, s = rng.randint(0, 4), rng.randint(0, 4)
        a, c = r + rng.randint(0, 2), s + rng.randint(0, 2)
        m = r + s
        if m == 0:
            continue
        # Z^a -> Z^m -> Z^c with image = U(Z^r + 0) = kernel
        U = rand_unimodular(rng, m)
        Ui = inverse_unimodular(U)
        P = rand_unimodular(rng, a) if a else []
        inc = [[(1 if i == j else 0) for j in range(a)] for i in range(m)]
        inc = [[x if i < r else 0 for x in row] for i, row in enumerate(inc)]
        f = matmul(matmul(U, inc, inner=m), P, inner=a) if a else [[] for _ in range(m)]
        Q = rand_unimodular(rng, c) if c else []
        proj = [[int(j == r + i) for j in range(m)] for i in range(c)]
        g = matmul(matmul(Q, proj, inner=c), Ui, inner=m) if c else []
        mid = FgAbelianGroup.free(m)
        F = AbMorphism(FgAbelianGroup.free(a), mid, f) if a else None
        Gm = AbMorphism(mid, FgAbelianGroup.free(c), g) if c else None
        assert subquotient_data(F, Gm, mid).group.is_zero()


def test_subquotient_lifts_and_coordinates():
    Z3 = FgAbelianGroup.free(3, ("a", "b", "c"))
    out = AbMorphism(Z3, FgAbelianGroup.free(1), [[1, 1, 0]])
    inc = AbMorphism(FgAbelianGroup.free(1), Z3, [[2], [-2], [0]])
    sq = subquotient_data(inc, out)
    assert str(sq.group) == "Z + Z/2"
    for lift in sq.lifts:
        assert not any(out(lift))
    assert sq.coordinates([2, -2, 0]) == [0] * sq.group.ngens
    with pytest.raises(NoIntegerSolution):
        sq.coordinates([1, 0, 0])


def test_direct_sum_keeps_labels():
    G = direct_sum([FgAbelianGroup((0,), ("x",)), FgAbelianGroup((2,), ("y",))])
    assert G.labels == ("x", "y") and str(G) == "Z + Z/2"


# ---------------------------------------------------------------------------
# Hom, Ext and extensions


@pytest.mark.parametrize("A,B,expected", [
    ((0,), (0,), True), ((2,), (0,), False), ((2,), (4,), True), ((3,), (2,), False), ((), (2,), False),
])
def test_hom_nonzero(A, B, expected):
    assert hom_nonzero(FgAbelianGroup(A), FgAbelianGroup(B)) is expected


@pytest.mark.parametrize("Q,S,expected", [
    ((2,), (0,), True), ((2,), (2,), True), ((0,), (2,), False), ((3,), (2,), False), ((2,), (), False),
])
def test_ext_nonzero(Q, S, expected):
    assert ext_nonzero(FgAbelianGroup(Q), FgAbelianGroup(S)) is expected


def test_extension_group():
    Z2, Z = FgAbelianGroup((2,)), FgAbelianGroup.free(1)
    assert str(extension_group(Z2, Z2, [[0]])) == "Z/2 + Z/2"
    assert str(extension_group(Z2, Z2, [[1]])) == "Z/4"
    assert str(extension_group(Z, Z2, [[1]])) == "Z"
    assert str(extension_group(Z, Z2, [[0]])) == "Z + Z/2"
    with pytest.raises(IncompatibleMorphism):
        extension_group(Z2, Z, [[1]])


@pytest.mark.parametrize("a,b,k", [(2, 4, 1), (2, 4, 0), (4, 2, 2), (3, 3, 1), (2, 6, 1), (4, 4, 2)])
def test_extension_group_by_enumeration(a, b, k):
    # pairs (s, q) with carry: b * (lift of q generator) = k * (sub generator)
    def add(x, y):
        q = x[1] + y[1]
        return ((x[0] + y[0] + k * (q // b)) % a, q % b)

    elems = [(s_, q) for s_ in range(a) for q in range(b)]
    E = extension_group(FgAbelianGroup((a,)), FgAbelianGroup((b,)), [[k]])
    assert profile_of(E) == order_profile(elems, add, (0, 0))


def test_compose_through_the_zero_group():
    Z2 = FgAbelianGroup.free(2)
    f = AbMorphism.zero(Z2, FgAbelianGroup())
    g = AbMorphism.zero(FgAbelianGroup(), FgAbelianGroup.free(1))
    assert g.compose(f).matrix == [[0, 0]]
