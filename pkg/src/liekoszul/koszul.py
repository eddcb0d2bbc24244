"""Invariant symmetric forms, the Koszul map ``B ↦ I_B``, and the I-null /
I-exact / quadratic verdicts built on it.

``I_B(X, Y, Z) = B([X, Y], Z)``.  Forms are reported in the dual basis
``ω^i`` of the input basis, with ``ω⊙π = ω⊗π + π⊗ω``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .cecohom import Cochain, NotACoboundary, TRIVIAL, coboundary_witness, d
from .exactla import QMatrix, det, nullspace_of_rows, rank_of_rows, span
from .liealg import LieAlgebra, Subspace, center, derived_subalgebra

# nondegeneracy search budget
RANDOM_TRIALS = 12
GRID_LIMIT = 4096


class NotInvariant(ValueError):
    def __init__(self, z: int, x: int, y: int):
        super().__init__(f"B([x{z + 1},x{x + 1}],x{y + 1}) != -B(x{x + 1},[x{z + 1},x{y + 1}])")
        self.triple = (z, x, y)


class CrossCheckFailed(AssertionError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class BilinearForm:
    dim: int
    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        if len(m) != self.dim or any(len(r) != self.dim for r in m):
            raise ValueError("matrix has the wrong shape")
        if any(m[i][j] != m[j][i] for i in range(self.dim) for j in range(i)):
            raise ValueError("bilinear form is not symmetric")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_upper(cls, dim: int, vec: Sequence[object]) -> "BilinearForm":
        m = [[Fraction(0)] * dim for _ in range(dim)]
        for (i, j), v in zip(_pairs(dim), vec):
            m[i][j] = m[j][i] = Fraction(v)
        return cls(dim, tuple(map(tuple, m)))

    @classmethod
    def from_terms(cls, dim: int, sym: Dict[Tuple[int, int], object] = None,
                   tensor: Dict[int, object] = None) -> "BilinearForm":
        """``Σ c ω^i⊙ω^j`` over ``sym`` plus ``Σ c ω^i⊗ω^i`` over ``tensor`` (0-based)."""
        m = [[Fraction(0)] * dim for _ in range(dim)]
        for (i, j), c in (sym or {}).items():
            m[i][j] += Fraction(c)
            m[j][i] += Fraction(c)
        for i, c in (tensor or {}).items():
            m[i][i] += Fraction(c)
        return cls(dim, tuple(map(tuple, m)))

    def upper(self) -> Tuple[Fraction, ...]:
        return tuple(self.matrix[i][j] for i, j in _pairs(self.dim))

    def __call__(self, u: Sequence[object], v: Sequence[object]) -> Fraction:
        return sum((Fraction(u[i]) * self.matrix[i][j] * v[j]
                    for i in range(self.dim) if u[i] for j in range(self.dim) if v[j]), Fraction(0))

    def kernel(self) -> List[Tuple[Fraction, ...]]:
        return nullspace_of_rows([{j: x for j, x in enumerate(r) if x} for r in self.matrix], self.dim)

    def is_nondegenerate(self) -> bool:
        return rank_of_rows({j: x for j, x in enumerate(r) if x} for r in self.matrix) == self.dim

    def text(self) -> str:
        terms = []
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                c = self.matrix[i][j]
                if not c:
                    continue
                mono = f"ω{i + 1}⊗ω{i + 1}" if i == j else f"ω{i + 1}⊙ω{j + 1}"
                terms.append((c, mono))
        if not terms:
            return "0"
        out = ""
        for k, (c, mono) in enumerate(terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}·"
            out += (("-" if sign == "-" else "") if k == 0 else f" {sign} ") + coef + mono
        return out


def _pairs(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


# -- invariant forms ----------------------------------------------------------

def _invariance_rows(L: LieAlgebra) -> List[Dict[int, Fraction]]:
    """B([z,a],b) + B(a,[z,b]) = 0 for every z and a <= b, in the unknowns B_ij (i <= j)."""
    n = L.dim
    idx = {p: t for t, p in enumerate(_pairs(n))}

    def var(i, j):
        return idx[(i, j) if i <= j else (j, i)]

    ad = L.ad_columns()
    rows = []
    for z in range(n):
        for a in range(n):
            for b in range(a, n):
                r: Dict[int, Fraction] = {}
                for k, c in ad[z][a].items():
                    v = var(k, b)
                    r[v] = r.get(v, 0) + c
                for k, c in ad[z][b].items():
                    v = var(a, k)
                    r[v] = r.get(v, 0) + c
                r = {v: c for v, c in r.items() if c}
                if r:
                    rows.append(r)
    return rows


def invariant_forms(L: LieAlgebra) -> List[BilinearForm]:
    """Canonical basis of the invariant symmetric bilinear forms on ``L``."""
    n = L.dim
    sols = nullspace_of_rows(_invariance_rows(L), n * (n + 1) // 2)
    return [BilinearForm.from_upper(n, v) for v in sols]


def invariance_defect(L: LieAlgebra, B: BilinearForm) -> Optional[Tuple[int, int, int]]:
    """First ``(z, a, b)`` with ``B([z,a],b) + B(a,[z,b]) != 0``, or None."""
    n = L.dim
    ad = L.ad_columns()
    M = B.matrix
    for z in range(n):
        active = [a for a in range(n) if ad[z][a]]
        pairs = {(min(a, b), max(a, b)) for a in active for b in range(n)}
        for a, b in sorted(pairs):
            s = sum(c * M[k][b] for k, c in ad[z][a].items()) + sum(c * M[a][k] for k, c in ad[z][b].items())
            if s:
                return (z, a, b)
    return None


def koszul_form(L: LieAlgebra, B: BilinearForm, check: bool = True) -> Cochain:
    """The 3-form ``I_B(x_i, x_j, x_k) = B([x_i, x_j], x_k)``."""
    if check:
        bad = invariance_defect(L, B)
        if bad is not None:
            raise NotInvariant(*bad)
    n = L.dim
    comps = {}
    for (i, j), vec in L.brackets.items():
        for k in range(j + 1, n):
            v = sum((c * B.matrix[m][k] for m, c in vec.items()), Fraction(0))
            if v:
                comps[(i, j, k)] = v
    return Cochain(n, 3, TRIVIAL, comps)


# -- kernel / image -----------------------------------------------------------

@dataclass
class KoszulReport:
    algebra: LieAlgebra
    forms_basis: List[BilinearForm]
    ell: int
    derived: Subspace
    center: Subspace
    kerI_basis: List[BilinearForm]
    ImI_basis: List[Cochain]
    is_I_null: bool
    is_I_exact: bool
    exact_witnesses: List[Cochain]
    is_quadratic: bool
    quadratic_witness: Optional[BilinearForm]
    quadratic_method: str

    @property
    def forms_dim(self) -> int:
        return len(self.forms_basis)

    @property
    def dim_ker_I(self) -> int:
        return len(self.kerI_basis)

    @property
    def dim_Im_I(self) -> int:
        return len(self.ImI_basis)

    def dimension_formula_holds(self) -> bool:
        return self.forms_dim == self.ell * (self.ell + 1) // 2 + self.dim_Im_I


def _tri_keys(n: int):
    return {k: t for t, k in enumerate(combinations(range(n), 3))}


def kernel_and_image(L: LieAlgebra, forms: Optional[List[BilinearForm]] = None
                     ) -> Tuple[List[BilinearForm], List[Cochain]]:
    """``(ker I, Im I)`` as canonical bases; checks ``dim ker I = ℓ(ℓ+1)/2``."""
    n = L.dim
    if forms is None:
        forms = invariant_forms(L)
    images = [koszul_form(L, B, check=False) for B in forms]
    keys = _tri_keys(n)
    # rows of the matrix whose column a is I_{B_a}
    rows: Dict[int, Dict[int, Fraction]] = {}
    for a, phi in enumerate(images):
        for key, v in phi.components.items():
            rows.setdefault(keys[key], {})[a] = v
    coeffs = nullspace_of_rows(rows.values(), len(forms))
    kernel = [_combine_forms(n, forms, c) for c in coeffs]
    kernel = [BilinearForm.from_upper(n, v) for v in span([B.upper() for B in kernel], n * (n + 1) // 2)]
    image_vectors = [phi.to_vector() for phi in images if not phi.is_zero()]
    image = [Cochain.from_vector(n, 3, TRIVIAL, v) for v in span(image_vectors, len(keys))] if image_vectors else []
    ell = n - derived_subalgebra(L).dim
    if len(kernel) != ell * (ell + 1) // 2:
        raise CrossCheckFailed(f"dim ker I = {len(kernel)} but ℓ(ℓ+1)/2 = {ell * (ell + 1) // 2}")
    return kernel, image


def _combine_forms(n: int, forms: Sequence[BilinearForm], coeffs: Sequence[object]) -> BilinearForm:
    m = [[Fraction(0)] * n for _ in range(n)]
    for c, B in zip(coeffs, forms):
        if c:
            for i in range(n):
                for j in range(n):
                    if B.matrix[i][j]:
                        m[i][j] += c * B.matrix[i][j]
    return BilinearForm(n, tuple(map(tuple, m)))


def common_kernel(n: int, forms: Sequence[BilinearForm]) -> Subspace:
    rows = [{j: x for j, x in enumerate(r) if x} for B in forms for r in B.matrix]
    return Subspace.spanned_by(n, nullspace_of_rows(rows, n))


def is_I_null(L: LieAlgebra, forms: Optional[List[BilinearForm]] = None) -> bool:
    """``I ≡ 0``, cross-checked against ``∩_B ker B = C²g``."""
    if forms is None:
        forms = invariant_forms(L)
    by_map = all(koszul_form(L, B, check=False).is_zero() for B in forms)
    by_kernel = common_kernel(L.dim, forms) == derived_subalgebra(L)
    if by_map != by_kernel:
        raise CrossCheckFailed("the two characterisations of I-null disagree")
    return by_map


def exact_witnesses(L: LieAlgebra, image: Sequence[Cochain]) -> Optional[List[Cochain]]:
    """A 2-form ``γ`` with ``dγ = ω`` for each ``ω`` in ``image``, or None if one is missing."""
    out = []
    for phi in image:
        try:
            out.append(coboundary_witness(L, phi))
        except NotACoboundary:
            return None
    return out


def is_I_exact(L: LieAlgebra) -> bool:
    _, image = kernel_and_image(L)
    return exact_witnesses(L, image) is not None


# -- quadratic ----------------------------------------------------------------

def _nondegenerate_at(n: int, forms: Sequence[BilinearForm], t: Sequence[int]) -> Optional[BilinearForm]:
    B = _combine_forms(n, forms, t)
    if det(QMatrix.from_rows(B.matrix, n)):
        return B
    return None


def _generic_rank_symbolic(n: int, forms: Sequence[BilinearForm]) -> int:
    """Rank of ``Σ t_a B_a`` over the rational function field ``Q(t_1..t_m)``."""
    import sympy
    from sympy.polys.matrices import DomainMatrix

    ts = sympy.symbols(f"t0:{len(forms)}")
    K = sympy.QQ.frac_field(*ts)
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            expr = sum((sympy.Rational(B.matrix[i][j].numerator, B.matrix[i][j].denominator) * t
                        for B, t in zip(forms, ts) if B.matrix[i][j]), sympy.Integer(0))
            row.append(K.from_sympy(expr))
        entries.append(row)
    return DomainMatrix(entries, (n, n), K).rank()


def quadratic_search(L: LieAlgebra, forms: Optional[List[BilinearForm]] = None,
                     seed: int = 0) -> Tuple[bool, Optional[BilinearForm], str]:
    """Decide whether some combination of the invariant forms is nondegenerate.

    Returns ``(verdict, witness, method)``.  Order of attempts: seeded random
    integer points (a hit certifies), the centre-dimension obstruction
    (``dim c = ℓ`` is necessary), the full grid ``{0..n}^m`` when small
    (exact, since ``det`` has degree at most ``n`` in each ``t_a``), and finally
    the symbolic generic rank.
    """
    n = L.dim
    if forms is None:
        forms = invariant_forms(L)
    if n == 0:
        return True, BilinearForm(0, ()), "empty"
    m = len(forms)
    if m == 0:
        return False, None, "no-forms"
    rng = random.Random(seed)
    for _ in range(RANDOM_TRIALS):
        t = [rng.randint(1, 10 * n) for _ in range(m)]
        B = _nondegenerate_at(n, forms, t)
        if B is not None:
            return True, B, "random-point"
    ell = n - derived_subalgebra(L).dim
    if center(L).dim != ell:
        return False, None, "center-obstruction"
    if (n + 1) ** m <= GRID_LIMIT:
        for t in product(range(n + 1), repeat=m):
            B = _nondegenerate_at(n, forms, t)
            if B is not None:
                return True, B, "grid"
        return False, None, "grid"
    if _generic_rank_symbolic(n, forms) < n:
        return False, None, "symbolic"
    # generically nondegenerate but the random points missed; walk the grid lazily
    for t in product(range(n + 1), repeat=m):
        B = _nondegenerate_at(n, forms, t)
        if B is not None:
            return True, B, "symbolic+grid"
    raise CrossCheckFailed("symbolic rank is full but no grid point is nondegenerate")


def is_quadratic(L: LieAlgebra) -> bool:
    return quadratic_search(L)[0]


# -- report -------------------------------------------------------------------

def analyze(L: LieAlgebra) -> KoszulReport:
    forms = invariant_forms(L)
    der = derived_subalgebra(L)
    ell = L.dim - der.dim
    kernel, image = kernel_and_image(L, forms)
    null = is_I_null(L, forms)
    if null != (not image):
        raise CrossCheckFailed("I-null verdict disagrees with Im I")
    witnesses = exact_witnesses(L, image)
    for phi in image:
        if not d(L, phi).is_zero():
            raise CrossCheckFailed("a Koszul form is not closed")
    quad, qwit, method = quadratic_search(L, forms)
    if quad and null and not L.is_abelian():
        raise CrossCheckFailed("a nonabelian quadratic algebra cannot be I-null")
    return KoszulReport(
        algebra=L, forms_basis=forms, ell=ell, derived=der, center=center(L),
        kerI_basis=kernel, ImI_basis=image, is_I_null=null,
        is_I_exact=witnesses is not None, exact_witnesses=witnesses or [],
        is_quadratic=quad, quadratic_witness=qwit, quadratic_method=method,
    )
