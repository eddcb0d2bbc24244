from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DIAMOND, FILIFORM4, G54, G724, H3
from liekoszul.cecohom import ADJOINT, Cochain, basis_keys, cohomology_dim, d, d_matrix
from liekoszul.exactla import span
from liekoszul.koszul import kernel_and_image
from liekoszul.leibniz import (
    DegreeTooHigh,
    LeibnizCochain,
    coupled_dim,
    delta,
    hl2_direct,
    is_uncoupling,
    leibniz_report,
    zl2_0,
)
from liekoszul.liealg import abelian, center, from_relations

FIL5 = "dim 5; [1,2]=3; [1,3]=4; [1,4]=5"
SMALL = [H3, G54, DIAMOND, FILIFORM4, FIL5]


def coupled_oracle(L):
    """dim A + dim B - dim(A + B) with A = c ⊗ Im I and B = image of the adjoint d on 2-cochains."""
    n = L.dim
    _, image = kernel_and_image(L)
    keys = basis_keys(n, 3, ADJOINT)
    A = []
    for z in center(L).basis:
        for w in image:
            A.append(tuple(z[t] * w.components.get(I, 0) for t, I in keys))
    D = d_matrix(L, 2, ADJOINT)
    B = [tuple(D[i, j] for i in range(D.nrows)) for j in range(D.ncols)]
    if not A:
        return 0
    return len(span(A)) + len(span(B)) - len(span(A + B))


@pytest.mark.parametrize("text", [H3, G54, DIAMOND])
def test_delta_equals_d_degree_1_and_2(text):
    L = from_relations(text)
    n = L.dim
    for k in (1, 2):
        for key in basis_keys(n, k, ADJOINT):
            phi = Cochain(n, k, ADJOINT, {key: 1})
            assert delta(L, LeibnizCochain.from_alternating(phi)) == LeibnizCochain.from_alternating(d(L, phi))


def test_delta_abelian_zero():
    A = abelian(3)
    psi = LeibnizCochain(3, 2, {(0, (1, 1)): 1, (2, (0, 2)): 5})
    assert delta(A, psi).is_zero()


def test_degree_bound(g54):
    with pytest.raises(DegreeTooHigh):
        delta(g54, LeibnizCochain(5, 4, {}))


@pytest.mark.parametrize("text", SMALL + [G724])
def test_delta_squared_degree_one_sweep(text):
    L = from_relations(text)
    n = L.dim
    for t, i in product(range(n), repeat=2):
        psi = LeibnizCochain(n, 1, {(t, (i,)): 1})
        assert delta(L, delta(L, psi)).is_zero()


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=25, max_size=25))
def test_delta_squared_random_g54(vals):
    L = from_relations(G54)
    psi = LeibnizCochain(5, 1, {(t, (i,)): vals[5 * t + i] for t in range(5) for i in range(5)})
    assert delta(L, delta(L, psi)).is_zero()


@pytest.mark.parametrize("text", SMALL + [G724, "dim 2"])
def test_zl2_0_cocycles(text):
    L = from_relations(text)
    for psi in zl2_0(L):
        assert delta(L, psi).is_zero()


def test_zl2_0_dims(g54):
    assert len(zl2_0(g54)) == 2 * 3
    assert len(zl2_0(abelian(3))) == 3 * 6


def test_uncoupling_classes(h3):
    assert is_uncoupling(from_relations(FIL5))
    assert is_uncoupling(h3)
    aff = from_relations("dim 2; [1,2]=2")
    assert center(aff).dim == 0 and is_uncoupling(aff)


@pytest.mark.parametrize("text", SMALL + [G724])
def test_coupled_matches_oracle(text):
    L = from_relations(text)
    assert coupled_dim(L) == coupled_oracle(L)


def test_abelian_hl2():
    for n in (1, 2, 3):
        r = leibniz_report(abelian(n))
        assert r.hl2_dim == n * (n * (n - 1) // 2) + n * n * (n + 1) // 2


@pytest.mark.parametrize("text", SMALL)
def test_decomposition_matches_leibniz_complex(text):
    L = from_relations(text)
    assert leibniz_report(L).hl2_dim == hl2_direct(L)


def test_g54_hl2(g54):
    r = leibniz_report(g54)
    assert r.zl2_0_dim == 6
    assert r.hl2_dim == cohomology_dim(g54, 2, ADJOINT) + 6 + coupled_oracle(g54)


def delta_oracle(L, psi):
    """δψ evaluated tuple by tuple straight from the defining formula."""
    n, k = L.dim, psi.degree
    table = {}
    for (t, idx), v in psi.components.items():
        table.setdefault(idx, {})[t] = v
    out = {}
    for X in product(range(n), repeat=k + 1):
        acc = {}
        for s, v in table.get(X[1:], {}).items():
            for t, c in L.bracket_basis(X[0], s).items():
                acc[t] = acc.get(t, 0) + v * c
        for p in range(1, k + 1):
            sign = (-1) ** (p + 1)
            for s, v in table.get(X[:p] + X[p + 1:], {}).items():
                for t, c in L.bracket_basis(s, X[p]).items():
                    acc[t] = acc.get(t, 0) + sign * v * c
        for p in range(k + 1):
            for q in range(p + 1, k + 1):
                sign = (-1) ** q
                rest = X[:q] + X[q + 1:]
                for m, c in L.bracket_basis(X[p], X[q]).items():
                    for t, v in table.get(rest[:p] + (m,) + rest[p + 1:], {}).items():
                        acc[t] = acc.get(t, 0) + sign * c * v
        for t, v in acc.items():
            if v:
                out[(t, X)] = v
    return LeibnizCochain(n, k + 1, out)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([H3, G54, DIAMOND, FIL5]), st.integers(1, 3), st.data())
def test_delta_matches_formula_oracle(text, k, data):
    L = from_relations(text)
    n = L.dim
    terms = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.tuples(*[st.integers(0, n - 1)] * k),
                                         st.integers(-3, 3)), max_size=5))
    comps = {}
    for t, args, c in terms:
        comps[(t, args)] = comps.get((t, args), 0) + c
    psi = LeibnizCochain(n, k, comps)
    assert delta(L, psi) == delta_oracle(L, psi)
