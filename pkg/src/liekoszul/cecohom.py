"""Chevalley-Eilenberg cochains with trivial or adjoint coefficients.

A trivial k-cochain is a sparse map ``{(i_1 < ... < i_k): value}``; an adjoint
one is ``{(t, (i_1 < ... < i_k)): value}`` meaning the component along
``x_t``.  Conventions: ``(df)(X, Y) = -f([X, Y])`` on 1-forms, the wedge
product carries no factorial normalisation (``ω^{1,2,3}(x_1, x_2, x_3) = 1``),
and for adjoint coefficients

    dφ(X_1..X_{k+1}) = Σ_a (-1)^{a+1} [X_a, φ(..X̂_a..)]
                      + Σ_{a<b} (-1)^{a+b} φ([X_a, X_b], ..X̂_a..X̂_b..).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .exactla import NoSolution, QMatrix, rank, solve
from .liealg import LieAlgebra

TRIVIAL = "trivial"
ADJOINT = "adjoint"

MAX_BETTI_DIM = 10


class NotACoboundary(ValueError):
    pass


class BettiTooLarge(ValueError):
    pass


def sort_sign(seq: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign of the permutation sorting ``seq`` and the sorted tuple; sign 0 on repeats."""
    s = list(seq)
    if len(set(s)) != len(s):
        return 0, tuple(sorted(s))
    sign = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign, tuple(sorted(s))


@dataclass(frozen=True, eq=False)
class Cochain:
    dim: int
    degree: int
    coefficients: str = TRIVIAL
    components: Dict[Hashable, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.coefficients not in (TRIVIAL, ADJOINT):
            raise ValueError(f"unknown coefficients {self.coefficients!r}")
        clean = {}
        for key, v in self.components.items():
            v = Fraction(v)
            if not v:
                continue
            idx = key[1] if self.coefficients == ADJOINT else key
            if len(idx) != self.degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"component key {key!r} is not an increasing {self.degree}-tuple")
            clean[key] = v
        object.__setattr__(self, "components", clean)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and self.dim == other.dim and self.degree == other.degree
                and self.coefficients == other.coefficients and self.components == other.components)

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        out = dict(self.components)
        for k, v in other.components.items():
            out[k] = out.get(k, 0) + v
        return Cochain(self.dim, self.degree, self.coefficients, out)

    def __neg__(self) -> "Cochain":
        return self.scaled(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scaled(self, c) -> "Cochain":
        return Cochain(self.dim, self.degree, self.coefficients,
                       {k: Fraction(c) * v for k, v in self.components.items()})

    def is_zero(self) -> bool:
        return not self.components

    def _compatible(self, other: "Cochain") -> None:
        if (self.dim, self.degree, self.coefficients) != (other.dim, other.degree, other.coefficients):
            raise ValueError("incompatible cochains")

    def value(self, args: Sequence[int]):
        """Value on basis vectors ``x_{args[0]}, ...`` (any order)."""
        sign, key = sort_sign(args)
        if self.coefficients == TRIVIAL:
            return sign * self.components.get(key, Fraction(0))
        out = {}
        if sign:
            for (t, idx), v in self.components.items():
                if idx == key:
                    out[t] = sign * v
        return out

    def to_vector(self) -> Tuple[Fraction, ...]:
        index = basis_index(self.dim, self.degree, self.coefficients)
        vec = [Fraction(0)] * len(index)
        for k, v in self.components.items():
            vec[index[k]] = v
        return tuple(vec)

    @classmethod
    def from_vector(cls, dim: int, degree: int, coefficients: str, vec: Sequence[object]) -> "Cochain":
        keys = basis_keys(dim, degree, coefficients)
        return cls(dim, degree, coefficients, {keys[i]: v for i, v in enumerate(vec) if v})

    def __repr__(self) -> str:
        return f"Cochain({self.coefficients}, degree={self.degree}, {format_form(self)})"


def form(dim: int, terms: Mapping[Sequence[int], object]) -> Cochain:
    """Trivial-coefficient form from ``{(i, j, ...): coeff}`` with 0-based, unsorted indices."""
    comps: Dict[Tuple[int, ...], Fraction] = {}
    degree = None
    for idx, c in terms.items():
        idx = tuple(idx)
        if degree is None:
            degree = len(idx)
        elif len(idx) != degree:
            raise ValueError("mixed degrees")
        sign, key = sort_sign(idx)
        if sign:
            comps[key] = comps.get(key, 0) + sign * Fraction(c)
    return Cochain(dim, degree or 0, TRIVIAL, comps)


def omega(dim: int, *indices: int) -> Cochain:
    """The wedge monomial ``ω^{i_1} ∧ ... ∧ ω^{i_k}`` (0-based indices)."""
    return form(dim, {tuple(indices): 1})


def format_form(phi: Cochain, symbol: str = "ω") -> str:
    """Text like ``ω^{1,3,4} - ω^{1,2,5}`` (1-based indices)."""
    if phi.is_zero():
        return "0"
    parts = []
    for key in sorted(phi.components):
        c = phi.components[key]
        if phi.coefficients == ADJOINT:
            t, idx = key
            mono = f"x{t + 1}⊗{symbol}^{{{','.join(str(i + 1) for i in idx)}}}"
        else:
            mono = f"{symbol}^{{{','.join(str(i + 1) for i in key)}}}"
        mag = abs(c)
        coeff = "" if mag == 1 else (f"{mag.numerator}" if mag.denominator == 1 else f"({mag})") + "·"
        parts.append(("-" if c < 0 else "+", coeff + mono))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return text + "".join(f" {s} {m}" for s, m in parts[1:])


@lru_cache(maxsize=None)
def basis_keys(dim: int, degree: int, coefficients: str) -> Tuple[Hashable, ...]:
    combos = tuple(combinations(range(dim), degree))
    if coefficients == TRIVIAL:
        return combos
    return tuple((t, c) for t in range(dim) for c in combos)


@lru_cache(maxsize=None)
def basis_index(dim: int, degree: int, coefficients: str) -> Dict[Hashable, int]:
    return {k: i for i, k in enumerate(basis_keys(dim, degree, coefficients))}


def cochain_dim(dim: int, degree: int, coefficients: str) -> int:
    c = comb(dim, degree)
    return c if coefficients == TRIVIAL else dim * c


# -- the differential ---------------------------------------------------------

def _lower_table(L: LieAlgebra) -> List[List[Tuple[int, int, Fraction]]]:
    """``table[m]`` lists ``(u, v, c^m_uv)`` for ``u < v``."""
    table: List[List[Tuple[int, int, Fraction]]] = [[] for _ in range(L.dim)]
    for (u, v), vec in L.brackets.items():
        for m, c in vec.items():
            table[m].append((u, v, c))
    return table


def _d_of_basis(L: LieAlgebra, lower, idx: Tuple[int, ...], target: Optional[int]) -> Dict[Hashable, Fraction]:
    out: Dict[Hashable, Fraction] = {}

    def put(J, c, t):
        key = J if t is None else (t, J)
        w = out.get(key, 0) + c
        if w:
            out[key] = w
        else:
            out.pop(key, None)

    # φ([X_a, X_b], rest): only the x_m component of the bracket can pair with ω^idx
    for p, m in enumerate(idx):
        rest = idx[:p] + idx[p + 1:]
        rest_set = set(rest)
        for u, v, c in lower[m]:
            if u in rest_set or v in rest_set:
                continue
            J = tuple(sorted(rest + (u, v)))
            a, b = J.index(u), J.index(v)
            sign = -1 if (a + b + p) % 2 else 1
            put(J, sign * c, target)
    if target is not None:
        members = set(idx)
        for j in range(L.dim):
            if j in members:
                continue
            br = L.bracket_basis(j, target)
            if not br:
                continue
            J = tuple(sorted(idx + (j,)))
            a = J.index(j)
            sign = -1 if a % 2 else 1
            for s, c in br.items():
                put(J, sign * c, s)
    return out


def d(L: LieAlgebra, phi: Cochain) -> Cochain:
    """Chevalley-Eilenberg coboundary of ``phi``."""
    if phi.dim != L.dim:
        raise ValueError("cochain and algebra dimensions differ")
    lower = _lower_table(L)
    out: Dict[Hashable, Fraction] = {}
    for key, v in phi.components.items():
        if phi.coefficients == TRIVIAL:
            img = _d_of_basis(L, lower, key, None)
        else:
            img = _d_of_basis(L, lower, key[1], key[0])
        for k2, c in img.items():
            out[k2] = out.get(k2, 0) + v * c
    return Cochain(L.dim, phi.degree + 1, phi.coefficients, out)


def d_matrix(L: LieAlgebra, degree: int, coefficients: str = TRIVIAL) -> QMatrix:
    """Matrix of ``d : C^degree -> C^{degree+1}`` in the :func:`basis_keys` bases."""
    n = L.dim
    src = basis_keys(n, degree, coefficients)
    dst = basis_index(n, degree + 1, coefficients)
    lower = _lower_table(L)
    rows: List[Dict[int, Fraction]] = [{} for _ in range(len(dst))]
    for col, key in enumerate(src):
        if coefficients == TRIVIAL:
            img = _d_of_basis(L, lower, key, None)
        else:
            img = _d_of_basis(L, lower, key[1], key[0])
        for k2, c in img.items():
            rows[dst[k2]][col] = c
    return QMatrix(len(dst), len(src), rows)


def d_rank(L: LieAlgebra, degree: int, coefficients: str = TRIVIAL) -> int:
    if degree < 0 or degree >= L.dim:
        return 0
    return rank(d_matrix(L, degree, coefficients))


def cohomology_dim(L: LieAlgebra, degree: int, coefficients: str = TRIVIAL) -> int:
    """``dim H^degree`` from the ranks of the two adjacent differentials."""
    if not 0 <= degree <= L.dim:
        return 0
    return (cochain_dim(L.dim, degree, coefficients)
            - d_rank(L, degree, coefficients) - d_rank(L, degree - 1, coefficients))


def betti(L: LieAlgebra, coefficients: str = TRIVIAL) -> Tuple[int, ...]:
    """``(dim H^0, ..., dim H^n)``; refused above dimension 10."""
    n = L.dim
    if n > MAX_BETTI_DIM:
        raise BettiTooLarge(f"Betti numbers are only computed for dim <= {MAX_BETTI_DIM} (got {n})")
    ranks = [d_rank(L, k, coefficients) for k in range(n)] + [0]
    return tuple(cochain_dim(n, k, coefficients) - ranks[k] - (ranks[k - 1] if k else 0)
                 for k in range(n + 1))


def coboundary_witness(L: LieAlgebra, phi: Cochain) -> Cochain:
    """A cochain ``γ`` with ``dγ = phi`` (free coordinates zero), or :class:`NotACoboundary`."""
    if phi.degree == 0:
        if phi.is_zero():
            return phi
        raise NotACoboundary("nonzero 0-cochain")
    D = d_matrix(L, phi.degree - 1, phi.coefficients)
    try:
        x = solve(D, phi.to_vector())
    except NoSolution:
        raise NotACoboundary(f"{format_form(phi)} is not a coboundary") from None
    return Cochain.from_vector(L.dim, phi.degree - 1, phi.coefficients, x)


def is_coboundary(L: LieAlgebra, phi: Cochain) -> bool:
    try:
        coboundary_witness(L, phi)
    except NotACoboundary:
        return False
    return True


# -- forms: wedge, theta ------------------------------------------------------

def wedge(a: Cochain, b: Cochain) -> Cochain:
    if a.coefficients != TRIVIAL or b.coefficients != TRIVIAL or a.dim != b.dim:
        raise ValueError("wedge is defined for trivial-coefficient forms of the same algebra")
    out: Dict[Tuple[int, ...], Fraction] = {}
    for I, u in a.components.items():
        for J, v in b.components.items():
            sign, key = sort_sign(I + J)
            if sign:
                out[key] = out.get(key, 0) + sign * u * v
    return Cochain(a.dim, a.degree + b.degree, TRIVIAL, out)


def theta(L: LieAlgebra, x: Sequence[object], phi: Cochain) -> Cochain:
    """Coadjoint action ``(θ_x φ)(u_1..u_k) = -Σ φ(u_1..[x,u_i]..u_k)`` on a form."""
    if phi.coefficients != TRIVIAL:
        raise ValueError("theta acts on trivial-coefficient forms")
    n = L.dim
    # ad_x matrix entries: [x, x_j] = sum_s A[s][j] x_s
    cols = [L.bracket(x, L.basis_vector(j)) for j in range(n)]
    out: Dict[Tuple[int, ...], Fraction] = {}
    for J in combinations(range(n), phi.degree):
        total = Fraction(0)
        for pos, j in enumerate(J):
            for s, a in enumerate(cols[j]):
                if a:
                    args = J[:pos] + (s,) + J[pos + 1:]
                    total -= a * phi.value(args)
        if total:
            out[J] = total
    return Cochain(n, phi.degree, TRIVIAL, out)


def pull_back_from_ideal(phi: Cochain, positions: Sequence[int], ambient_dim: int) -> Cochain:
    """Push a form on a subalgebra with basis ``x_{positions[a]}`` to the ambient algebra.

    With an adapted basis this is ``phi ∘ (π × ... × π)`` for the projection π
    killing the complementary basis vectors.
    """
    if phi.coefficients != TRIVIAL:
        raise ValueError("only trivial-coefficient forms")
    out = {}
    for idx, v in phi.components.items():
        sign, key = sort_sign([positions[i] for i in idx])
        out[key] = sign * v
    return Cochain(ambient_dim, phi.degree, TRIVIAL, out)
