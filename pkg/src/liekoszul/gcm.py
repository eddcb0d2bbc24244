"""Generalized Cartan matrices of nilpotent Lie algebras and their Kac type.

Row ``i`` of the matrix attached to generators ``x_1..x_ℓ`` is read off from
ad-nilpotency: ``-a^i_j`` is the least ``k >= 0`` with ``ad(x_i)^{k+1} x_j = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .exactla import QMatrix, det, span
from .liealg import LieAlgebra, derived_subalgebra, is_nilpotent
from .rootkit import build_root_system

Matrix = Tuple[Tuple[int, ...], ...]


class NotNilpotent(ValueError):
    pass


class GeneratorsNotComplementary(ValueError):
    pass


class DegenerateWeights(ValueError):
    """Two generators share a weight (a weight space of dimension > 1)."""


class NotAGCM(ValueError):
    pass


# -- computing the matrix --------------------------------------------------------

def _check_weights(L: LieAlgebra, weights: Sequence[Sequence[object]]) -> List[Tuple[Fraction, ...]]:
    if len(weights) != L.dim:
        raise ValueError("one weight per basis vector is required")
    w = [tuple(Fraction(c) for c in wt) for wt in weights]
    for (i, j), vec in L.brackets.items():
        target = tuple(a + b for a, b in zip(w[i], w[j]))
        for k in vec:
            if w[k] != target:
                raise ValueError(f"weights are not a grading: [x{i + 1},x{j + 1}] has a component on x{k + 1}")
    return w


def _nilpotency_exponent(L: LieAlgebra, i: int, j: int) -> int:
    """Least ``k >= 0`` with ``ad(x_i)^{k+1} x_j = 0``."""
    ad = L.ad_columns()
    v: Dict[int, Fraction] = {j: Fraction(1)}
    for k in range(L.dim + 1):
        nxt: Dict[int, Fraction] = {}
        for s, c in v.items():
            for t, e in ad[i][s].items():
                nxt[t] = nxt.get(t, 0) + c * e
        v = {t: c for t, c in nxt.items() if c}
        if not v:
            return k
    raise NotNilpotent(f"ad(x{i + 1}) is not nilpotent")


def compute_gcm(L: LieAlgebra, generators: Sequence[int],
                weights: Optional[Sequence[Sequence[object]]] = None) -> Matrix:
    """GCM for 0-based generator indices; ``weights`` (one per basis vector) is optional."""
    if not is_nilpotent(L):
        raise NotNilpotent(f"{L.name or 'algebra'} is not nilpotent")
    gens = list(generators)
    if any(not 0 <= g < L.dim for g in gens):
        raise IndexError("generator index out of range")
    derived = derived_subalgebra(L)
    ell = L.dim - derived.dim
    vectors = [L.basis_vector(g) for g in gens] + list(derived.basis)
    if len(gens) != ell or len(span(vectors, L.dim)) != L.dim:
        raise GeneratorsNotComplementary(f"need {ell} generators spanning a complement of [g,g]")
    if weights is not None:
        w = _check_weights(L, weights)
        seen: Dict[Tuple[Fraction, ...], int] = {}
        for g in gens:
            if w[g] in seen:
                raise DegenerateWeights(f"x{seen[w[g]] + 1} and x{g + 1} have the same weight")
            seen[w[g]] = g
    return tuple(tuple(2 if i == j else -_nilpotency_exponent(L, i, j) for j in gens) for i in gens)


# -- classification ----------------------------------------------------------------

@dataclass(frozen=True)
class GCMType:
    kind: str                                  # finite | affine | hyperbolic | nonhyperbolic | decomposable
    name: Optional[str] = None
    components: Tuple["GCMType", ...] = ()

    def __post_init__(self):
        if self.kind == "decomposable" and not self.components:
            raise ValueError("a decomposable type needs components")

    @property
    def tag(self) -> str:
        if self.kind in ("finite", "affine"):
            return f"{self.kind}:{self.name}" if self.name else self.kind
        if self.kind in ("hyperbolic", "nonhyperbolic"):
            return f"indefinite:{self.kind}"
        return "decomposable:" + ",".join(c.tag for c in self.components)

    def __str__(self) -> str:
        return self.tag


def validate(A: Sequence[Sequence[int]]) -> Matrix:
    M = tuple(tuple(int(x) for x in row) for row in A)
    n = len(M)
    if any(len(r) != n for r in M):
        raise NotAGCM("matrix is not square")
    for i in range(n):
        if M[i][i] != 2:
            raise NotAGCM(f"diagonal entry {i + 1} is not 2")
        for j in range(n):
            if i != j and (M[i][j] > 0 or (M[i][j] == 0) != (M[j][i] == 0)):
                raise NotAGCM(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) violate the GCM sign pattern")
    return M


def _components(M: Matrix, nodes: Sequence[int]) -> List[List[int]]:
    left, out = set(nodes), []
    while left:
        stack = [min(left)]
        comp = set(stack)
        while stack:
            i = stack.pop()
            for j in left:
                if j not in comp and M[i][j]:
                    comp.add(j)
                    stack.append(j)
        left -= comp
        out.append(sorted(comp))
    return out


def _sub(M: Matrix, idx: Sequence[int]) -> Matrix:
    return tuple(tuple(M[i][j] for j in idx) for i in idx)


def _minor(M: Matrix, idx: Sequence[int]) -> Fraction:
    return det(QMatrix.from_rows(_sub(M, idx))) if idx else Fraction(1)


def _all_proper_minors_positive(M: Matrix) -> bool:
    n = len(M)
    return all(_minor(M, S) > 0 for k in range(1, n) for S in combinations(range(n), k))


def _basic_kind(M: Matrix) -> str:
    """Kind of an indecomposable block: finite, affine or indefinite."""
    if not _all_proper_minors_positive(M):
        return "indefinite"
    D = _minor(M, range(len(M)))
    return "finite" if D > 0 else "affine" if D == 0 else "indefinite"


def _is_hyperbolic(M: Matrix) -> bool:
    n = len(M)
    for k in range(1, n):
        for S in combinations(range(n), k):
            if len(_components(M, S)) == 1 and _basic_kind(_sub(M, S)) == "indefinite":
                return False
    return True


def classify(A: Sequence[Sequence[int]]) -> GCMType:
    M = validate(A)
    if not M:
        raise NotAGCM("empty matrix")
    comps = _components(M, range(len(M)))
    if len(comps) > 1:
        return GCMType("decomposable", components=tuple(_classify_block(_sub(M, c)) for c in comps))
    return _classify_block(M)


def _classify_block(M: Matrix) -> GCMType:
    kind = _basic_kind(M)
    if kind == "indefinite":
        return GCMType("hyperbolic" if _is_hyperbolic(M) else "nonhyperbolic")
    return GCMType(kind, standard_name(M, kind))


# -- standard matrices -------------------------------------------------------------

def _cartan(kind: str, rank: int) -> Matrix:
    return tuple(tuple(r) for r in build_root_system(kind, rank).cartan_matrix())


def _untwisted(kind: str, rank: int) -> Matrix:
    rs = build_root_system(kind, rank)
    theta = rs.positive_roots[-1]
    S = rs.simple_roots
    tt = rs.inner(theta, theta)
    row0 = [2] + [int(-2 * rs.inner(theta, a) / tt) for a in S]
    col0 = [int(-2 * rs.inner(a, theta) / rs.inner(a, a)) for a in S]
    C = _cartan(kind, rank)
    return (tuple(row0),) + tuple((col0[i],) + C[i] for i in range(rank))


def _transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M))


def _a_even_twisted(ell: int) -> Matrix:
    """``A_{2ℓ}^{(2)}``: a chain of ``ℓ+1`` nodes with a double arrow at each end pointing the same way."""
    if ell == 1:
        return ((2, -4), (-1, 2))
    n = ell + 1
    M = [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]
    M[0][1] = -2
    M[ell - 1][ell] = -2
    return tuple(tuple(r) for r in M)


@lru_cache(maxsize=None)
def standard_matrices(size: int, kind: str) -> Tuple[Tuple[str, Matrix], ...]:
    """Named finite (rank ``size``) or affine (``size`` nodes) Cartan matrices."""
    out: List[Tuple[str, Matrix]] = []
    if kind == "finite":
        n = size
        out.append((f"A{n}", _cartan("A", n)))
        if n == 2:
            out += [("C2", _cartan("C", 2)), ("G2", _cartan("G", 2))]
        if n >= 3:
            out += [(f"B{n}", _cartan("B", n)), (f"C{n}", _cartan("C", n))]
        if n >= 4:
            out.append((f"D{n}", _cartan("D", n)))
        if n in (6, 7, 8):
            out.append((f"E{n}", _cartan("E", n)))
        if n == 4:
            out.append(("F4", _cartan("F", 4)))
        return tuple(out)
    ell = size - 1
    if ell < 1:
        return ()
    out.append((f"A{ell}~1", _untwisted("A", ell)))
    out.append((f"A{2 * ell}~2", _a_even_twisted(ell)))
    if ell >= 2:
        out.append((f"C{ell}~1", _untwisted("C", ell)))
        out.append((f"D{ell + 1}~2", _transpose(_untwisted("C", ell))))
    if ell >= 3:
        out.append((f"B{ell}~1", _untwisted("B", ell)))
        out.append((f"A{2 * ell - 1}~2", _transpose(_untwisted("B", ell))))
    if ell >= 4:
        out.append((f"D{ell}~1", _untwisted("D", ell)))
    if ell in (6, 7, 8):
        out.append((f"E{ell}~1", _untwisted("E", ell)))
    if ell == 4:
        out.append(("F4~1", _untwisted("F", 4)))
        out.append(("E6~2", _transpose(_untwisted("F", 4))))
    if ell == 2:
        out.append(("G2~1", _untwisted("G", 2)))
        out.append(("D4~3", _transpose(_untwisted("G", 2))))
    return tuple(out)


def _signature(M: Matrix, i: int) -> Tuple:
    return (tuple(sorted(M[i])), tuple(sorted(r[i] for r in M)))


def permutation_equivalent(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Optional[Tuple[int, ...]]:
    """A permutation ``p`` with ``A[i][j] == B[p[i]][p[j]]``, or None."""
    A = tuple(map(tuple, A))
    B = tuple(map(tuple, B))
    n = len(A)
    if len(B) != n:
        return None
    sa = [_signature(A, i) for i in range(n)]
    sb = [_signature(B, i) for i in range(n)]
    if sorted(sa) != sorted(sb):
        return None
    perm: List[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for k in range(n):
            if used[k] or sa[i] != sb[k]:
                continue
            if all(A[i][j] == B[k][perm[j]] and A[j][i] == B[perm[j]][k] for j in range(i)):
                used[k] = True
                perm.append(k)
                if extend(i + 1):
                    return True
                perm.pop()
                used[k] = False
        return False

    return tuple(perm) if extend(0) else None


def standard_name(A: Sequence[Sequence[int]], kind: Optional[str] = None) -> Optional[str]:
    M = validate(A)
    kind = kind or _basic_kind(M)
    for name, S in standard_matrices(len(M), kind):
        if permutation_equivalent(M, S) is not None:
            return name
    return None


def format_matrix(A: Sequence[Sequence[int]]) -> str:
    return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in A) + "]"
