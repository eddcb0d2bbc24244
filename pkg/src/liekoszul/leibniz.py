"""Leibniz cochains, the Leibniz coboundary δ, and the HL² decomposition
``HL² = H²(g,g) ⊕ (c ⊗ ker I) ⊕ C`` with ``C ≅ (c ⊗ Im I) ∩ B³(g,g)``."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .cecohom import ADJOINT, Cochain, basis_index, cohomology_dim, d_matrix
from .exactla import QMatrix, intersect, rank
from .koszul import BilinearForm, kernel_and_image
from .liealg import LieAlgebra, center

MAX_DEGREE = 3

Key = Tuple[int, Tuple[int, ...]]


class DegreeTooHigh(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LeibnizCochain:
    """Multilinear map ``g^{⊗k} → g``: ``{(t, (i_1, ..., i_k)): c}`` is the ``x_t`` component on ``(x_{i_1}, ...)``."""
    dim: int
    degree: int
    components: Dict[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (t, idx), v in self.components.items():
            v = Fraction(v)
            if len(idx) != self.degree:
                raise ValueError("argument tuple has the wrong length")
            if v:
                clean[(t, tuple(idx))] = v
        object.__setattr__(self, "components", clean)

    def __eq__(self, other):
        return (isinstance(other, LeibnizCochain) and (self.dim, self.degree) == (other.dim, other.degree)
                and self.components == other.components)

    def is_zero(self) -> bool:
        return not self.components

    def value(self, args: Sequence[int]) -> Dict[int, Fraction]:
        args = tuple(args)
        return {t: v for (t, idx), v in self.components.items() if idx == args}

    @classmethod
    def from_alternating(cls, phi: Cochain) -> "LeibnizCochain":
        """Expand an adjoint CE cochain over all ordered argument tuples."""
        if phi.coefficients != ADJOINT:
            raise ValueError("expected adjoint coefficients")
        out = {}
        for args in product(range(phi.dim), repeat=phi.degree):
            for t, v in phi.value(args).items():
                out[(t, args)] = v
        return cls(phi.dim, phi.degree, out)


def _ordered_lower(L: LieAlgebra) -> List[List[Tuple[int, int, Fraction]]]:
    """``table[m]`` lists ``(a, b, c)`` with ``c`` the ``x_m`` coefficient of ``[x_a, x_b]``, both orders."""
    table: List[List[Tuple[int, int, Fraction]]] = [[] for _ in range(L.dim)]
    for (u, v), vec in L.brackets.items():
        for m, c in vec.items():
            table[m].append((u, v, c))
            table[m].append((v, u, -c))
    return table


def delta(L: LieAlgebra, psi: LeibnizCochain) -> LeibnizCochain:
    """Leibniz coboundary

    ``δψ(X_0..X_k) = [X_0, ψ(X_1..)] + Σ_{p>=1} (-1)^{p+1} [ψ(..X̂_p..), X_p]
    + Σ_{p<q} (-1)^q ψ(.., [X_p, X_q] at slot p, .., X̂_q, ..)``,

    pushed forward term by term from the support of ``ψ``.
    """
    if psi.degree > MAX_DEGREE:
        raise DegreeTooHigh(f"delta is implemented for degree <= {MAX_DEGREE}")
    n, k = L.dim, psi.degree
    ad = L.ad_columns()
    lower = _ordered_lower(L)
    out: Dict[Key, Fraction] = {}

    def put(t, X, c):
        key = (t, X)
        w = out.get(key, 0) + c
        if w:
            out[key] = w
        else:
            out.pop(key, None)

    for (t, args), v in psi.components.items():
        for a in range(n):
            for s, c in ad[a][t].items():
                put(s, (a,) + args, v * c)
        for p in range(1, k + 1):
            sign = 1 if p % 2 else -1
            for b in range(n):
                for s, c in ad[t][b].items():
                    put(s, args[:p] + (b,) + args[p:], sign * v * c)
        for p in range(k):
            for a, b, c in lower[args[p]]:
                head = args[:p] + (a,) + args[p + 1:]
                for q in range(p + 1, k + 1):
                    sign = 1 if q % 2 == 0 else -1
                    put(t, head[:q] + (b,) + head[q:], sign * v * c)
    return LeibnizCochain(n, k + 1, out)


def delta_matrix(L: LieAlgebra, degree: int) -> QMatrix:
    """Matrix of ``δ : CL^degree → CL^{degree+1}``; basis ``(t, args)`` with ``t`` major, args lexicographic."""
    n = L.dim
    src = [(t, a) for t in range(n) for a in product(range(n), repeat=degree)]
    dst = {(t, a): i for i, (t, a) in enumerate((t, a) for t in range(n) for a in product(range(n), repeat=degree + 1))}
    rows: List[Dict[int, Fraction]] = [{} for _ in range(len(dst))]
    for col, key in enumerate(src):
        img = delta(L, LeibnizCochain(n, degree, {key: 1}))
        for k2, v in img.components.items():
            rows[dst[k2]][col] = v
    return QMatrix(len(dst), len(src), rows)


def hl2_direct(L: LieAlgebra) -> int:
    """``dim HL²(g,g)`` by ranking the Leibniz complex itself (small algebras only)."""
    n = L.dim
    return n ** 3 - rank(delta_matrix(L, 2)) - rank(delta_matrix(L, 1))


# -- decomposition ------------------------------------------------------------

def zl2_0(L: LieAlgebra, kernel: Optional[List[BilinearForm]] = None) -> List[LeibnizCochain]:
    """Basis ``x ↦ z·B(x, y)`` of the symmetric Leibniz 2-cocycles, ``z`` central and ``B ∈ ker I``."""
    n = L.dim
    if kernel is None:
        kernel = kernel_and_image(L)[0]
    out = []
    for z in center(L).basis:
        for B in kernel:
            comps = {}
            for t, zt in enumerate(z):
                if zt:
                    for i in range(n):
                        for j in range(n):
                            if B.matrix[i][j]:
                                comps[(t, (i, j))] = zt * B.matrix[i][j]
            out.append(LeibnizCochain(n, 2, comps))
    return out


def _adjoint_vector(n: int, z: Sequence[Fraction], omega: Cochain) -> Tuple[Fraction, ...]:
    index = basis_index(n, 3, ADJOINT)
    vec = [Fraction(0)] * len(index)
    for t, zt in enumerate(z):
        if zt:
            for I, v in omega.components.items():
                vec[index[(t, I)]] = zt * v
    return tuple(vec)


def coupled_dim(L: LieAlgebra, image: Optional[List[Cochain]] = None) -> int:
    """``dim (c ⊗ Im I) ∩ B³(g,g)``."""
    n = L.dim
    if image is None:
        image = kernel_and_image(L)[1]
    c = center(L)
    if not image or c.dim == 0:
        return 0
    tensors = [_adjoint_vector(n, z, w) for z in c.basis for w in image]
    D = d_matrix(L, 2, ADJOINT).transpose()
    cobound = [tuple(r.get(j, Fraction(0)) for j in range(D.ncols)) for r in D.sparse_rows() if r]
    return len(intersect(tensors, cobound))


@dataclass(frozen=True)
class LeibnizReport:
    center_dim: int
    dim_ker_I: int
    zl2_0_dim: int
    coupled_dim: int
    h2_adjoint: int

    @property
    def uncoupling(self) -> bool:
        return self.coupled_dim == 0

    @property
    def hl2_dim(self) -> int:
        return self.h2_adjoint + self.zl2_0_dim + self.coupled_dim


def leibniz_report(L: LieAlgebra) -> LeibnizReport:
    kernel, image = kernel_and_image(L)
    c = center(L).dim
    return LeibnizReport(
        center_dim=c,
        dim_ker_I=len(kernel),
        zl2_0_dim=c * len(kernel),
        coupled_dim=coupled_dim(L, image),
        h2_adjoint=cohomology_dim(L, 2, ADJOINT),
    )


def is_uncoupling(L: LieAlgebra) -> bool:
    return coupled_dim(L) == 0


def hl2_dim(L: LieAlgebra) -> int:
    return leibniz_report(L).hl2_dim
