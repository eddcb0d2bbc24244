"""Root systems, property (P), and nilradicals / Borel-type subalgebras.

Roots live in ambient coordinates with a diagonal metric.  The E6 and E7
systems keep the √3·ε6 and √2·ε7 directions as rational coordinates with
metric weights 3 and 2, so all arithmetic stays in Q.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .exactla import QMatrix, solve
from .liealg import LieAlgebra, from_relations

Root = Tuple[Fraction, ...]
Coeffs = Tuple[int, ...]

TYPES = ("A", "B", "C", "D", "E", "F", "G")
EXCEPTIONAL = {"E6": ("E", 6), "E7": ("E", 7), "E8": ("E", 8), "F4": ("F", 4), "G2": ("G", 2)}


class InvalidType(ValueError):
    pass


class InvalidRank(InvalidType):
    pass


class GammaNotClosed(ValueError):
    def __init__(self, a: Coeffs, b: Coeffs):
        super().__init__(f"{a} + {b} is a positive root outside Gamma")
        self.pair = (a, b)


def normalize_type(kind: str, rank: Optional[int] = None) -> Tuple[str, int]:
    """Accept ``("E6")``, ``("E", 6)`` or ``("A", 3)``; validate the pair."""
    k = kind.strip().upper()
    if k in EXCEPTIONAL:
        t, r = EXCEPTIONAL[k]
        if rank is not None and rank != r:
            raise InvalidRank(f"{k} has rank {r}")
        return t, r
    if len(k) > 1 and k[0] in TYPES and k[1:].isdigit():
        k, rank = k[0], int(k[1:])
    if k not in TYPES:
        raise InvalidType(f"unknown root system type {kind!r}")
    if rank is None:
        raise InvalidRank(f"type {k} needs a rank")
    minimum = {"A": 1, "B": 2, "C": 2, "D": 2}
    if k in minimum and rank < minimum[k]:
        raise InvalidRank(f"{k}{rank} is not valid (rank >= {minimum[k]})")
    if k == "E" and rank not in (6, 7, 8) or k == "F" and rank != 4 or k == "G" and rank != 2:
        raise InvalidRank(f"{k}{rank} is not a valid type")
    return k, rank


# -- positive roots in ambient coordinates ------------------------------------

def _e(n: int, *pairs) -> Root:
    v = [Fraction(0)] * n
    for i, c in pairs:
        v[i] += Fraction(c)
    return tuple(v)


def _ambient_positive(kind: str, n: int) -> Tuple[List[Root], Tuple[int, ...]]:
    """Positive roots and the diagonal metric weights."""
    if kind == "A":
        dim = n + 1
        return [_e(dim, (i, 1), (j, -1)) for i, j in combinations(range(dim), 2)], (1,) * dim
    if kind in "BCD":
        roots = []
        for i, j in combinations(range(n), 2):
            roots += [_e(n, (i, 1), (j, -1)), _e(n, (i, 1), (j, 1))]
        if kind == "B":
            roots += [_e(n, (i, 1)) for i in range(n)]
        if kind == "C":
            roots += [_e(n, (i, 2)) for i in range(n)]
        return roots, (1,) * n
    if kind == "G":
        # simple roots (1,-1,0) (short) and (-1,2,-1) (long) in the plane x+y+z = 0
        a, b = (1, -1, 0), (-1, 2, -1)
        coeffs = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
        return [tuple(Fraction(p * a[k] + q * b[k]) for k in range(3)) for p, q in coeffs], (1, 1, 1)
    if kind == "F":
        roots = [_e(4, (i, 1)) for i in range(4)]
        for i, j in combinations(range(4), 2):
            roots += [_e(4, (i, 1), (j, -1)), _e(4, (i, 1), (j, 1))]
        for signs in product((1, -1), repeat=3):
            roots.append(tuple(Fraction(s, 2) for s in (1,) + signs))
        return roots, (1, 1, 1, 1)
    if kind == "E":
        # D_m part on the first m coordinates: ε_i + ε_j (i < j) and ε_i - ε_j (i > j)
        m = {6: 5, 7: 6, 8: 8}[n]
        dim = 6 if n == 6 else (7 if n == 7 else 8)
        roots = []
        for i, j in combinations(range(m), 2):
            roots += [_e(dim, (i, 1), (j, 1)), _e(dim, (j, 1), (i, -1))]
        if n == 7:
            roots.append(_e(dim, (6, 1)))  # √2 ε7
        free = {6: 5, 7: 6, 8: 7}[n]
        for signs in product((1, -1), repeat=free):
            minus = signs.count(-1)
            if (n == 7) != (minus % 2 == 1):
                continue
            roots.append(tuple(Fraction(s, 2) for s in signs) + (Fraction(1, 2),))
        weights = (1,) * (dim - 1) + ({6: 3, 7: 2, 8: 1}[n],)
        return roots, weights
    raise InvalidType(kind)


@dataclass(frozen=True)
class RootSystem:
    type: str
    rank: int
    ambient_dim: int
    metric: Tuple[int, ...]
    positive_roots: Tuple[Root, ...]      # canonical order
    simple_roots: Tuple[Root, ...]
    coefficients: Tuple[Coeffs, ...]      # simple-root coordinates of positive_roots
    heights: Tuple[int, ...]

    @property
    def name(self) -> str:
        return f"{self.type}{self.rank}"

    def inner(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return sum((w * a * b for w, a, b in zip(self.metric, u, v)), Fraction(0))

    @property
    def index(self) -> Dict[Coeffs, int]:
        return _coeff_index(self)

    def is_positive_root(self, c: Coeffs) -> bool:
        return tuple(c) in self.index

    def cartan_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        """``a_ij = 2(α_i, α_j)/(α_i, α_i)``."""
        S = self.simple_roots
        return tuple(tuple(int(2 * self.inner(a, b) / self.inner(a, a)) for b in S) for a in S)

    def pairing(self, alpha: Coeffs, j: int) -> Fraction:
        """``α(H_j) = 2(α, α_j)/(α_j, α_j)`` for a root in simple-root coordinates."""
        S = self.simple_roots
        vec = tuple(sum((c * s[k] for c, s in zip(alpha, S)), Fraction(0)) for k in range(self.ambient_dim))
        return 2 * self.inner(vec, S[j]) / self.inner(S[j], S[j])


@lru_cache(maxsize=None)
def _coeff_index(rs: RootSystem) -> Dict[Coeffs, int]:
    return {c: i for i, c in enumerate(rs.coefficients)}


@lru_cache(maxsize=None)
def build_root_system(kind: str, rank: Optional[int] = None) -> RootSystem:
    t, n = normalize_type(kind, rank)
    roots, metric = _ambient_positive(t, n)
    pos = set(roots)
    sums = {tuple(a + b for a, b in zip(r, s)) for r, s in combinations(roots, 2)}
    simple = sorted((r for r in roots if r not in sums), reverse=True)
    if len(simple) != n:
        raise AssertionError(f"{t}{n}: found {len(simple)} simple roots")
    M = QMatrix.from_columns(simple, len(roots[0]))
    coeffs = {}
    for r in roots:
        x = solve(M, r)
        if any(c.denominator != 1 or c < 0 for c in x):
            raise AssertionError(f"{r} is not a nonnegative integer combination of simple roots")
        coeffs[r] = tuple(int(c) for c in x)
    order = sorted(roots, key=lambda r: (sum(coeffs[r]), tuple(-c for c in coeffs[r])))
    assert len(pos) == len(roots)
    return RootSystem(
        type=t, rank=n, ambient_dim=len(roots[0]), metric=tuple(metric),
        positive_roots=tuple(order), simple_roots=tuple(simple),
        coefficients=tuple(coeffs[r] for r in order), heights=tuple(sum(coeffs[r]) for r in order),
    )


def positive_root_count(kind: str, rank: Optional[int] = None) -> int:
    """Closed-form counts, used as an independent check."""
    t, n = normalize_type(kind, rank)
    return {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1),
            "G": 6, "F": 24, "E": {6: 36, 7: 63, 8: 120}.get(n, 0)}[t]


# -- property (P) ---------------------------------------------------------------

def _add(a: Coeffs, b: Coeffs) -> Coeffs:
    return tuple(x + y for x, y in zip(a, b))


def property_P(rs: RootSystem) -> Optional[Tuple[Coeffs, Coeffs, Coeffs]]:
    """None when (P) holds; otherwise the first ``(α, β, γ)`` in canonical order with
    ``α+β, α+γ, β+γ`` all positive roots."""
    C = rs.coefficients
    idx = rs.index
    for a in C:
        partners = [b for b in C if _add(a, b) in idx]
        for b in partners:
            for c in partners:
                if c != b and _add(b, c) in idx:
                    return a, b, c
    return None


def property_P_bruteforce(rs: RootSystem) -> Optional[Tuple[Coeffs, Coeffs, Coeffs]]:
    """Same as :func:`property_P` by a plain triple loop (reference implementation)."""
    C = rs.coefficients
    idx = rs.index
    for a, b, c in product(C, repeat=3):
        if len({a, b, c}) == 3 and _add(a, b) in idx and _add(a, c) in idx and _add(b, c) in idx:
            return a, b, c
    return None


# -- root-labelled nilradicals ------------------------------------------------

@dataclass(frozen=True)
class ChevalleyNilradical:
    root_system: RootSystem
    roots: Tuple[Coeffs, ...]   # root of each basis vector
    algebra: LieAlgebra

    def constants(self) -> Dict[Tuple[Coeffs, Coeffs], Fraction]:
        """``N_{α,β}`` for basis pairs with a nonzero bracket."""
        pos = {r: i for i, r in enumerate(self.roots)}
        out = {}
        for (i, j), vec in self.algebra.brackets.items():
            target = _add(self.roots[i], self.roots[j])
            if set(vec) != {pos.get(target)}:
                raise AssertionError("bracket is not along the sum of the roots")
            out[(self.roots[i], self.roots[j])] = vec[pos[target]]
        return out


def _sign_matrix(rs: RootSystem) -> List[List[int]]:
    A = rs.cartan_matrix()
    n = rs.rank
    return [[1 if i == j else (1 if i < j and A[i][j] == -1 else 0) for j in range(n)] for i in range(n)]


def _cocycle(M, a: Coeffs, b: Coeffs) -> int:
    s = sum(a[i] * M[i][j] * b[j] for i in range(len(a)) for j in range(len(b)))
    return -1 if s % 2 else 1


def _exceptional_E(rs: RootSystem) -> ChevalleyNilradical:
    M = _sign_matrix(rs)
    C = rs.coefficients
    idx = rs.index
    table = {}
    for i, j in combinations(range(len(C)), 2):
        s = _add(C[i], C[j])
        if s in idx:
            table[(i, j)] = {idx[s]: _cocycle(M, C[i], C[j])}
    L = LieAlgebra(len(C), table, name=f"{rs.name}+")
    return ChevalleyNilradical(rs, C, L)


G2_RELATIONS = "dim 6; [1,2]=3; [1,3]=2*4; [1,4]=-3*5; [2,5]=-6; [3,4]=-3*6"

F4_RELATIONS = """dim 24
[1,2]=5
[1,13]=14
[1,15]=-6
[1,16]=-7
[1,17]=-23
[1,18]=19
[1,24]=22
[2,3]=15
[2,7]=8
[2,12]=13
[2,19]=20
[2,21]=24
[2,23]=9
[3,4]=21
[3,5]=6
[3,6]=7
[3,9]=10
[3,11]=12
[3,15]=16
[3,20]=-2*11
[3,22]=1/2*23
[3,24]=-1/2*17
[4,6]=22
[4,7]=23
[4,8]=9
[4,9]=-20
[4,10]=11
[4,15]=-24
[4,16]=17
[4,17]=18
[4,23]=-19
[5,12]=14
[5,16]=8
[5,17]=9
[5,18]=-20
[5,21]=22
[6,11]=-14
[6,15]=-8
[6,17]=10
[6,18]=2*11
[6,21]=1/2*23
[6,24]=1/2*9
[7,18]=2*12
[7,20]=-2*14
[7,24]=10
[8,18]=2*13
[8,19]=2*14
[8,21]=-10
[9,17]=-2*13
[9,21]=-11
[9,23]=2*14
[10,21]=-12
[10,22]=-14
[10,24]=-13
[11,15]=-13
[15,19]=2*11
[15,21]=1/2*17
[15,22]=1/2*9
[15,23]=-10
[16,19]=2*12
[16,20]=2*13
[16,22]=10
[17,22]=11
[17,23]=2*12
[21,22]=1/2*19
[21,24]=1/2*18
[22,24]=-1/2*20
[23,24]=11
"""


def infer_roots(L: LieAlgebra, rs: RootSystem) -> Tuple[Coeffs, ...]:
    """Assign a positive root to each basis vector of a root-vector basis.

    Basis vectors outside ``[L, L]`` are matched to simple roots (every
    assignment is tried); the remaining roots follow from the brackets.  The
    assignment must hit every positive root exactly once and send each nonzero
    bracket to the sum of its roots.
    """
    n = L.dim
    produced = {k for vec in L.brackets.values() for k in vec}
    gens = [i for i in range(n) if i not in produced]
    if len(gens) != rs.rank:
        raise ValueError("number of generators differs from the rank")
    simple = [tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank)]
    for perm in permutations(simple):
        roots: Dict[int, Coeffs] = dict(zip(gens, perm))
        changed = True
        ok = True
        while changed and ok:
            changed = False
            for (i, j), vec in L.brackets.items():
                if i in roots and j in roots:
                    s = _add(roots[i], roots[j])
                    for k in vec:
                        if k not in roots:
                            roots[k] = s
                            changed = True
                        elif roots[k] != s:
                            ok = False
        if ok and len(roots) == n and sorted(roots.values()) == sorted(rs.coefficients):
            return tuple(roots[i] for i in range(n))
    raise ValueError("no consistent root assignment")


def nilradical_exceptional(kind: str) -> ChevalleyNilradical:
    t, n = normalize_type(kind)
    rs = build_root_system(t, n)
    if t == "E":
        return _exceptional_E(rs)
    if t == "G":
        L = from_relations(G2_RELATIONS)
        return ChevalleyNilradical(rs, ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)),
                                   LieAlgebra(6, L.brackets, name="G2+"))
    if t == "F":
        L = from_relations(F4_RELATIONS)
        return ChevalleyNilradical(rs, infer_roots(L, rs), LieAlgebra(24, L.brackets, name="F4+"))
    raise InvalidType(f"{kind} is not exceptional")


# -- classical nilradicals from matrices --------------------------------------

Mat = Dict[Tuple[int, int], Fraction]


def _mat(*entries) -> Mat:
    return {(r, c): Fraction(v) for r, c, v in entries if v}


def _commutator(X: Mat, Y: Mat) -> Mat:
    out: Dict[Tuple[int, int], Fraction] = {}
    for (a, b), u in X.items():
        for (c, e), v in Y.items():
            if b == c:
                out[(a, e)] = out.get((a, e), 0) + u * v
            if e == a:
                out[(c, b)] = out.get((c, b), 0) - v * u
    return {k: v for k, v in out.items() if v}


def _classical_matrices(kind: str, n: int) -> Tuple[List[Mat], List[Mat]]:
    """Nilradical basis matrices and Cartan matrices ``H_i`` whose eigenvalues give ε-coordinates."""
    if kind == "A":
        basis = [_mat((i, j, 1)) for i, j in combinations(range(n + 1), 2)]
        cartan = [_mat((i, i, 1)) for i in range(n + 1)]
        return basis, cartan
    if kind in "BD":
        off = 1 if kind == "B" else 0

        def E(i, j):
            return _mat((off + i, off + j, 1), (off + n + j, off + n + i, -1))

        def F(i, j):
            return _mat((off + i, off + n + j, 1), (off + j, off + n + i, -1))

        basis = [E(i, j) for i, j in combinations(range(n), 2)] + [F(i, j) for i, j in combinations(range(n), 2)]
        if kind == "B":
            basis += [_mat((0, 1 + n + q, 1), (1 + q, 0, -1)) for q in range(n)]
        cartan = [E(i, i) for i in range(n)]
        return basis, cartan
    if kind == "C":
        def E(i, j):
            return _mat((i, j, 1), (n + j, n + i, -1))

        def F(i, j):
            return _mat((i, n + j, 1), (j, n + i, 1)) if i != j else _mat((i, n + i, 2))

        basis = [E(i, j) for i, j in combinations(range(n), 2)]
        basis += [F(i, j) for i in range(n) for j in range(i, n)]
        return basis, [E(i, i) for i in range(n)]
    raise InvalidType(kind)


def _expand(M: Mat, basis: Sequence[Mat]) -> Dict[int, Fraction]:
    """Coordinates of ``M`` in a basis of matrices with disjoint supports."""
    out = {}
    rest = dict(M)
    for b, B in enumerate(basis):
        key = min(B)
        if key in rest:
            c = rest[key] / B[key]
            for k, v in B.items():
                w = rest.get(k, 0) - c * v
                if w:
                    rest[k] = w
                else:
                    rest.pop(k, None)
            out[b] = c
    if rest:
        raise ValueError("matrix is not in the span of the basis")
    return out


def nilradical_classical(kind: str, rank: int) -> ChevalleyNilradical:
    t, n = normalize_type(kind, rank)
    if t not in "ABCD":
        raise InvalidType(f"{kind} is not classical")
    rs = build_root_system(t, n)
    basis, cartan = _classical_matrices(t, n)
    table = {}
    for i, j in combinations(range(len(basis)), 2):
        vec = _expand(_commutator(basis[i], basis[j]), basis)
        if vec:
            table[(i, j)] = vec
    # ε-weights from [H_k, X] = λ_k X
    coords = {r: c for r, c in zip(rs.positive_roots, rs.coefficients)}
    roots = []
    for X in basis:
        lam = []
        for H in cartan:
            C = _commutator(H, X)
            k = min(X)
            lam.append(C.get(k, Fraction(0)) / X[k])
        roots.append(coords[tuple(lam)])
    L = LieAlgebra(len(basis), table, name=f"{t}{n}+")
    return ChevalleyNilradical(rs, tuple(roots), L)


def nilradical(kind: str, rank: Optional[int] = None) -> ChevalleyNilradical:
    t, n = normalize_type(kind, rank)
    if t in "ABCD":
        return nilradical_classical(t, n)
    return nilradical_exceptional(f"{t}{n}")


# -- u = k ⊕ ⊕_{α∈Γ} g^α ---------------------------------------------------------

def build_u(nil: ChevalleyNilradical, gamma: Sequence[Coeffs], k_dim: int,
            alpha_values: Dict[Coeffs, Sequence[object]], name: Optional[str] = None) -> LieAlgebra:
    """Root vectors of ``Γ`` (in nilradical order) followed by ``k_dim`` toral elements
    acting by ``[H_j, X_α] = alpha_values[α][j] X_α``."""
    gamma_set = {tuple(g) for g in gamma}
    idx = nil.root_system.index
    for a, b in product(gamma_set, repeat=2):
        s = _add(a, b)
        if s in idx and s not in gamma_set:
            raise GammaNotClosed(a, b)
    keep = [i for i, r in enumerate(nil.roots) if r in gamma_set]
    if len(keep) != len(gamma_set):
        raise ValueError("Gamma contains vectors that are not positive roots")
    pos = {old: new for new, old in enumerate(keep)}
    table = {}
    for a, i in enumerate(keep):
        for b in range(a + 1, len(keep)):
            vec = nil.algebra.bracket_basis(i, keep[b])
            if vec:
                table[(a, b)] = {pos[k]: c for k, c in vec.items()}
    m = len(keep)
    for j in range(k_dim):
        for a, i in enumerate(keep):
            v = Fraction(alpha_values[nil.roots[i]][j])
            if v:
                table[(a, m + j)] = {a: -v}   # [X, H] = -α(H) X
    return LieAlgebra(m + k_dim, table, name=name)


def borel(kind: str, rank: Optional[int] = None) -> LieAlgebra:
    nil = nilradical(kind, rank)
    rs = nil.root_system
    values = {r: [rs.pairing(r, j) for j in range(rs.rank)] for r in rs.coefficients}
    return build_u(nil, rs.coefficients, rs.rank, values, name=f"borel({rs.name})")


def ideal_chain_holds(nil: ChevalleyNilradical) -> bool:
    """Adding root vectors by decreasing height, each span is an ideal of the next.

    With basis positions ``p < q`` in that order the requirement is that
    ``[x_p, x_q]`` only involves positions below ``q``.
    """
    rs = nil.root_system
    order = sorted(range(nil.algebra.dim),
                   key=lambda i: (-sum(nil.roots[i]), tuple(nil.roots[i])))
    where = {b: p for p, b in enumerate(order)}
    for (i, j), vec in nil.algebra.brackets.items():
        q = max(where[i], where[j])
        if any(where[k] >= q for k in vec):
            return False
    return True
