from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DIAMOND, FILIFORM4, G54, G724, H3
from liekoszul.cecohom import d, omega, form, pull_back_from_ideal, wedge, Cochain
from liekoszul.koszul import (
    BilinearForm,
    NotInvariant,
    analyze,
    common_kernel,
    invariant_forms,
    is_I_exact,
    is_I_null,
    is_quadratic,
    kernel_and_image,
    koszul_form,
    quadratic_search,
)
from liekoszul.liealg import (
    Subspace,
    abelian,
    basis_subalgebra,
    center,
    derived_subalgebra,
    direct_product,
    from_relations,
    quotient,
)


def forms_oracle_dim(L):
    """dim of invariant forms via sympy on the full n×n unknown matrix plus symmetry."""
    n = L.dim
    B = sympy.Matrix(n, n, lambda i, j: sympy.Symbol(f"b{i}_{j}"))
    eqs = [B[i, j] - B[j, i] for i in range(n) for j in range(i + 1, n)]
    ad = [[L.bracket_basis(z, a) for a in range(n)] for z in range(n)]
    for z in range(n):
        for a in range(n):
            for b in range(n):
                e = sum(sympy.Rational(c.numerator, c.denominator) * B[k, b] for k, c in ad[z][a].items())
                e += sum(sympy.Rational(c.numerator, c.denominator) * B[a, k] for k, c in ad[z][b].items())
                eqs.append(e)
    A, _ = sympy.linear_eq_to_matrix([e for e in eqs if e != 0] or [sympy.Integer(0)], list(B))
    return n * n - A.rank()


def symbolic_quadratic(L):
    """Generic determinant of Σ t_a B_a, expanded symbolically."""
    forms = invariant_forms(L)
    n = L.dim
    ts = sympy.symbols(f"t0:{len(forms)}")
    M = sympy.zeros(n, n)
    for t, B in zip(ts, forms):
        M += t * sympy.Matrix(n, n, lambda i, j: sympy.Rational(B.matrix[i][j].numerator, B.matrix[i][j].denominator))
    return sympy.expand(M.det()) != 0


ALL = [H3, G54, DIAMOND, FILIFORM4, G724, "dim 1", "dim 3"]


@pytest.mark.parametrize("text", ALL)
def test_forms_dim_matches_oracle(text):
    L = from_relations(text)
    assert len(invariant_forms(L)) == forms_oracle_dim(L)


def test_table_values(g54):
    assert len(invariant_forms(g54)) == 4
    assert len(invariant_forms(abelian(4))) == 10


def test_koszul_form_examples(g54, diamond):
    B = BilinearForm.from_terms(5, sym={(0, 4): 1, (1, 3): -1}, tensor={2: 1})
    assert koszul_form(g54, B) == omega(5, 0, 1, 2)
    D = BilinearForm.from_terms(4, sym={(0, 3): 1}, tensor={1: 1, 2: 1})
    assert koszul_form(diamond, D) == omega(4, 0, 1, 2)
    assert d(diamond, omega(4, 0, 3)) == koszul_form(diamond, D)
    A = abelian(3)
    assert koszul_form(A, BilinearForm.from_terms(3, sym={(0, 1): 5})).is_zero()
    with pytest.raises(NotInvariant):
        koszul_form(g54, BilinearForm.from_terms(5, tensor={2: 1}))


def test_g724_koszul_form():
    L = from_relations(G724)
    B = BilinearForm.from_terms(7, sym={(0, 6): 1, (1, 5): 1, (2, 4): -1}, tensor={3: 1})
    IB = koszul_form(L, B)
    assert IB == form(7, {(0, 2, 3): 1, (0, 1, 4): -1})
    assert d(L, omega(7, 0, 6)) == IB
    ker, im = kernel_and_image(L)
    assert len(im) == 1


def test_kernel_image(g54):
    ker, im = kernel_and_image(g54)
    assert (len(ker), len(im)) == (3, 1)
    ker, im = kernel_and_image(abelian(3))
    assert (len(ker), len(im)) == (6, 0)


def test_verdicts(g54, h3, diamond):
    assert not is_I_null(g54) and is_I_exact(g54) and is_quadratic(g54)
    assert is_I_null(h3) and is_I_exact(h3) and not is_quadratic(h3)
    assert is_I_null(abelian(4)) and is_quadratic(abelian(4))
    r = analyze(diamond)
    assert r.dim_Im_I == 1 and r.is_quadratic and r.is_I_exact
    assert r.exact_witnesses == [omega(4, 0, 3)]


def test_heisenberg_not_quadratic_by_symbolic_oracle(h3):
    assert not symbolic_quadratic(h3)
    assert symbolic_quadratic(from_relations(G54))


def test_quadratic_methods_agree_with_grid(h3, g54, monkeypatch):
    import liekoszul.koszul as K
    # disable the shortcuts and force the exhaustive grid
    monkeypatch.setattr(K, "RANDOM_TRIALS", 0)
    monkeypatch.setattr(K, "center", _fake_center)
    assert quadratic_search(g54)[::2] == (True, "grid")
    assert quadratic_search(h3)[0] is False


def _fake_center(L):
    # a center with dimension ℓ, so the obstruction never fires
    ell = L.dim - derived_subalgebra(L).dim
    return Subspace.spanned_by(L.dim, [L.basis_vector(i) for i in range(ell)])


def test_symbolic_fallback(h3, g54, monkeypatch):
    import liekoszul.koszul as K
    monkeypatch.setattr(K, "RANDOM_TRIALS", 0)
    monkeypatch.setattr(K, "GRID_LIMIT", 0)
    monkeypatch.setattr(K, "center", _fake_center)
    assert quadratic_search(h3) == (False, None, "symbolic")
    ok, B, method = quadratic_search(g54)
    assert ok and B.is_nondegenerate() and method == "symbolic+grid"


def test_inull_preserved(h3):
    f4 = from_relations(FILIFORM4)
    assert is_I_null(direct_product(h3, f4))
    f6 = from_relations("dim 6; [1,2]=3; [1,3]=4; [1,4]=5; [1,5]=6")
    assert is_I_null(f6)
    assert is_I_null(quotient(f6, center(f6)))


def codim1_splitting(L, B):
    """I_B - d(ω¹∧f) - I_{B2}∘π for the ideal g2 = span(x2..xN)."""
    n = L.dim
    g2 = basis_subalgebra(L, list(range(1, n)))
    f = Cochain(n, 1, "trivial", {(i,): B.matrix[i][0] for i in range(n)})
    B2 = BilinearForm(n - 1, tuple(tuple(B.matrix[i][j] for j in range(1, n)) for i in range(1, n)))
    IB2 = pull_back_from_ideal(koszul_form(g2, B2), list(range(1, n)), n)
    return koszul_form(L, B) - d(L, wedge(omega(n, 0), f)) - IB2


@pytest.mark.parametrize("text", [G54, DIAMOND, G724, FILIFORM4, H3])
def test_codim1_splitting_identity(text):
    L = from_relations(text)
    for B in invariant_forms(L):
        assert codim1_splitting(L, B).is_zero()


@pytest.mark.parametrize("text", ALL + ["dim 6; [1,2]=3; [1,3]=4; [1,4]=5; [1,5]=6"])
def test_structural_invariants(text):
    L = from_relations(text)
    r = analyze(L)
    assert r.dimension_formula_holds()
    assert len(r.kerI_basis) == r.ell * (r.ell + 1) // 2
    for B in r.forms_basis:
        IB = koszul_form(L, B)
        assert d(L, IB).is_zero()
    if r.is_I_null:
        assert r.is_I_exact
    if r.is_quadratic and not L.is_abelian():
        assert not r.is_I_null
    assert (common_kernel(L.dim, r.forms_basis) == r.derived) == r.is_I_null


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([H3, G54, DIAMOND, G724]), st.data())
def test_combination_invariant_and_koszul_closed(text, data):
    L = from_relations(text)
    forms = invariant_forms(L)
    cs = data.draw(st.lists(st.integers(-3, 3), min_size=len(forms), max_size=len(forms)))
    n = L.dim
    M = [[sum(c * B.matrix[i][j] for c, B in zip(cs, forms)) for j in range(n)] for i in range(n)]
    B = BilinearForm(n, M)
    IB = koszul_form(L, B)  # raises if not invariant
    # alternating by storage; check the defining value on every ordered triple
    for i, j, k in combinations(range(n), 3):
        br = L.bracket(L.basis_vector(i), L.basis_vector(j))
        assert IB.value((i, j, k)) == B(br, L.basis_vector(k))
        assert IB.value((j, i, k)) == -IB.value((i, j, k))
    assert d(L, IB).is_zero()
