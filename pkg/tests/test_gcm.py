import json
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from liekoszul import rootkit
from liekoszul.exactla import QMatrix, nullspace
from liekoszul.gcm import (DegenerateWeights, GCMType, GeneratorsNotComplementary, NotAGCM, NotNilpotent,
                           classify, compute_gcm, permutation_equivalent, standard_matrices, standard_name)
from liekoszul.liealg import abelian, from_relations

from conftest import DIAMOND, FILIFORM4, G54, G724, H3

TABLE = json.loads((Path(__file__).parent / "data" / "kac_moody_types.json").read_text())


# -- independent oracles -----------------------------------------------------------

def reflection_orbit_finite(A, cap=400):
    """Finite type iff the real roots generated by simple reflections are finitely many."""
    n = len(A)
    seen = set()
    frontier = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen.update(frontier)
    while frontier:
        nxt = []
        for a in frontier:
            for i in range(n):
                pairing = sum(a[j] * A[i][j] for j in range(n))
                b = tuple(a[j] - pairing * (j == i) for j in range(n))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if len(seen) > cap:
                        return False
        frontier = nxt
    return True


def affine_by_null_vector(A):
    """Indecomposable affine iff the kernel is a line spanned by a strictly positive vector."""
    ker = nullspace(QMatrix.from_rows(A))
    if len(ker) != 1:
        return False
    v = ker[0]
    return all(x > 0 for x in v) or all(x < 0 for x in v)


def connected(A, nodes):
    nodes = list(nodes)
    seen, stack = {nodes[0]}, [nodes[0]]
    while stack:
        i = stack.pop()
        for j in nodes:
            if j not in seen and A[i][j]:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(nodes)


def permute(A, p):
    n = len(A)
    inv = [0] * n
    for i, k in enumerate(p):
        inv[k] = i
    return [[A[inv[i]][inv[j]] for j in range(n)] for i in range(n)]


gcm_entry = st.sampled_from([0, -1, -2, -3, -4])


@st.composite
def gcms(draw, max_size=4, connected_only=False):
    n = draw(st.integers(1, max_size))
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in combinations(range(n), 2):
        a = draw(gcm_entry)
        if a:
            A[i][j], A[j][i] = a, draw(st.sampled_from([-1, -2, -3]))
    if connected_only and not connected(A, range(n)):
        for i in range(n - 1):
            if not A[i][i + 1]:
                A[i][i + 1] = A[i + 1][i] = -1
    return A


# -- compute_gcm ------------------------------------------------------------------

def test_h3(h3):
    assert compute_gcm(h3, [0, 1]) == ((2, -1), (-1, 2))


def test_g54(g54):
    A = compute_gcm(g54, [0, 1])
    assert A == ((2, -2), (-2, 2))
    assert classify(A).tag == "affine:A1~1"


def test_abelian_pair():
    assert compute_gcm(abelian(2), [0, 1]) == ((2, 0), (0, 2))
    assert classify(((2, 0), (0, 2))).tag == "decomposable:finite:A1,finite:A1"


def test_filiform4_is_C2():
    A = compute_gcm(from_relations(FILIFORM4), [0, 1])
    assert A == ((2, -2), (-1, 2))
    assert classify(A).tag == "finite:C2"


def test_g724_is_twisted_A2():
    A = compute_gcm(from_relations(G724), [0, 1])
    assert A == ((2, -4), (-1, 2))
    assert classify(A).tag == "affine:A2~2"


def test_filiform5_is_G2():
    L = from_relations("dim 5; [1,2]=3; [1,3]=4; [1,4]=5")
    assert compute_gcm(L, [0, 1]) == ((2, -3), (-1, 2))
    assert classify(compute_gcm(L, [0, 1])).tag == "finite:G2"


def test_g2_nilradical_is_G2():
    nil = rootkit.nilradical("G2")
    gens = [nil.roots.index(r) for r in ((1, 0), (0, 1))]
    assert classify(compute_gcm(nil.algebra, gens)).tag == "finite:G2"


@pytest.mark.parametrize("t", ["A1", "A3", "A5", "B3", "B4", "C3", "C4", "D4", "D5", "G2", "F4", "E6"])
def test_nilradical_gcm_is_cartan_matrix(t):
    nil = rootkit.nilradical(t)
    rs = nil.root_system
    gens = [nil.roots.index(tuple(int(i == j) for i in range(rs.rank))) for j in range(rs.rank)]
    A = compute_gcm(nil.algebra, gens)
    assert A == rs.cartan_matrix()
    name = {"B2": "C2"}.get(rs.name, rs.name)
    assert classify(A).tag == f"finite:{name}"


def test_generator_choice_and_errors(g54):
    assert compute_gcm(g54, [1, 0]) == ((2, -2), (-2, 2))
    with pytest.raises(GeneratorsNotComplementary):
        compute_gcm(g54, [0, 2])
    with pytest.raises(GeneratorsNotComplementary):
        compute_gcm(g54, [0])
    with pytest.raises(NotNilpotent):
        compute_gcm(from_relations(DIAMOND), [0, 1])


def test_weights(g54):
    grading = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]
    assert compute_gcm(g54, [0, 1], weights=grading) == ((2, -2), (-2, 2))
    with pytest.raises(DegenerateWeights):
        compute_gcm(g54, [0, 1], weights=[(1,), (1,), (2,), (3,), (3,)])
    with pytest.raises(ValueError):
        compute_gcm(g54, [0, 1], weights=[(1, 0), (0, 1), (1, 1), (2, 1), (0, 0)])


def test_zero_pattern_symmetric_on_product():
    L = from_relations("dim 6; [1,2]=3; [4,5]=6")
    A = compute_gcm(L, [0, 1, 3, 4])
    assert A == ((2, -1, 0, 0), (-1, 2, 0, 0), (0, 0, 2, -1), (0, 0, -1, 2))
    assert classify(A).tag == "decomposable:finite:A2,finite:A2"


# -- classify ---------------------------------------------------------------------

@pytest.mark.parametrize("row", TABLE, ids=[r["algebra"] for r in TABLE])
def test_reference_table(row):
    assert classify(row["gcm"]).tag == row["type"]


def test_reference_table_spot_rows():
    by_name = {r["algebra"]: r for r in TABLE}
    assert by_name["g3"]["type"] == "finite:A2"
    assert by_name["g5,4"]["type"] == "affine:A1~1"
    assert by_name["g5,6"]["type"] == "indefinite:hyperbolic"
    assert by_name["g6,18"]["gcm"] == [[2, -3], [-1, 2]]
    assert by_name["g6,10"]["type"] == "affine:A4~2"
    assert len(TABLE) == 112


@pytest.mark.parametrize("a", range(1, 7))
@pytest.mark.parametrize("b", range(1, 7))
def test_rank2_trichotomy(a, b):
    t = classify([[2, -a], [-b, 2]])
    if a * b <= 3:
        assert t.kind == "finite"
    elif a * b == 4:
        assert t.kind == "affine"
    else:
        assert t.kind == "hyperbolic"


def test_rank2_names():
    assert classify([[2, -1], [-1, 2]]).name == "A2"
    assert classify([[2, -1], [-2, 2]]).name == "C2"
    assert classify([[2, -1], [-3, 2]]).name == "G2"
    assert classify([[2, -2], [-2, 2]]).name == "A1~1"
    assert classify([[2, -1], [-4, 2]]).name == "A2~2"


def test_not_a_gcm():
    for bad in ([[2, 1], [-1, 2]], [[2, 0], [-1, 2]], [[3, -1], [-1, 2]], [[2, -1]], []):
        with pytest.raises(NotAGCM):
            classify(bad)


def test_gcmtype_tags():
    assert GCMType("hyperbolic").tag == "indefinite:hyperbolic"
    assert GCMType("nonhyperbolic").tag == "indefinite:nonhyperbolic"
    with pytest.raises(ValueError):
        GCMType("decomposable")


def test_nonhyperbolic_example():
    # the rank-3 cycle with all bonds (3,3) contains the hyperbolic edge as a proper subdiagram
    A = [[2, -3, -3], [-3, 2, -3], [-3, -3, 2]]
    assert classify(A).tag == "indefinite:nonhyperbolic"


@pytest.mark.parametrize("size", range(1, 10))
@pytest.mark.parametrize("kind", ["finite", "affine"])
def test_standard_matrices_distinct_and_typed(size, kind):
    named = standard_matrices(size, kind)
    for (n1, A), (n2, B) in combinations(named, 2):
        assert permutation_equivalent(A, B) is None, (n1, n2)
    for name, A in named:
        assert classify(A).kind == kind
        assert standard_name(A) == name
        if kind == "finite":
            assert reflection_orbit_finite(A)
        else:
            assert affine_by_null_vector(A)


def test_standard_counts():
    assert [n for n, _ in standard_matrices(4, "finite")] == ["A4", "B4", "C4", "D4", "F4"]
    assert {n for n, _ in standard_matrices(5, "affine")} == {
        "A4~1", "A8~2", "C4~1", "D5~2", "B4~1", "A7~2", "D4~1", "F4~1", "E6~2"}
    assert {n for n, _ in standard_matrices(3, "affine")} == {"A2~1", "A4~2", "C2~1", "D3~2", "G2~1", "D4~3"}


def test_twisted_A4_row():
    # Table row with a 3-node twisted diagram
    assert classify([[2, -2, -1], [-1, 2, 0], [-2, 0, 2]]).tag == "affine:A4~2"
    assert classify([[2, -2, 0], [-1, 2, -1], [0, -2, 2]]).tag == "affine:D3~2"


@settings(max_examples=150, deadline=None)
@given(gcms(max_size=4, connected_only=True))
def test_finite_matches_reflection_oracle(A):
    assert (classify(A).kind == "finite") == reflection_orbit_finite(A)


@settings(max_examples=150, deadline=None)
@given(gcms(max_size=4, connected_only=True))
def test_affine_matches_null_vector_oracle(A):
    assert (classify(A).kind == "affine") == affine_by_null_vector(A)


@settings(max_examples=100, deadline=None)
@given(gcms(max_size=5), st.randoms(use_true_random=False))
def test_classify_permutation_invariant(A, rnd):
    p = list(range(len(A)))
    rnd.shuffle(p)
    B = permute(A, p)
    assert permutation_equivalent(B, A) is not None
    t1, t2 = classify(A), classify(B)
    if t1.kind == "decomposable":
        assert sorted(c.tag for c in t1.components) == sorted(c.tag for c in t2.components)
    else:
        assert t1 == t2


def test_generator_order_only_permutes():
    L = from_relations(G724)
    assert permutation_equivalent(compute_gcm(L, [0, 1]), compute_gcm(L, [1, 0])) == (1, 0)


def test_spec_examples_from_fixtures(h3):
    assert classify(compute_gcm(h3, [0, 1])).tag == "finite:A2"
    assert classify(compute_gcm(from_relations(G54), [0, 1])).tag == "affine:A1~1"
    assert classify([[2, -3], [-2, 2]]).tag == "indefinite:hyperbolic"
    assert classify(compute_gcm(from_relations(H3), [1, 0])).tag == "finite:A2"
