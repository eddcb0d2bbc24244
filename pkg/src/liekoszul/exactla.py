"""Exact linear algebra over the rationals.

Everything here works on ``fractions.Fraction`` (or ``int``) entries; there is
no floating point anywhere.  Elimination is fraction-free: rows are scaled to
primitive integer vectors and combined by cross-multiplication, dividing out
the row content after every step, so coefficients stay small.  Reduced row
echelon forms are unique, which makes every basis returned by this module
canonical (pivot entries equal to 1, pivots sorted left to right).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

Vector = Tuple[Fraction, ...]
SparseRow = Dict[int, Fraction]


class NoSolution(ValueError):
    """Raised by :func:`solve` when the right-hand side is not in the column space."""


class QMatrix:
    """Immutable rational matrix stored as sparse rows.

    Entries not listed are zero.  ``M[i, j]`` reads an entry, ``M @ v`` applies
    the matrix to a vector.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Mapping[int, object]] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        packed = []
        if rows is None:
            rows = [{}] * nrows
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        for row in rows:
            clean = {}
            for j, v in row.items():
                if not 0 <= j < ncols:
                    raise IndexError(f"column {j} out of range for {ncols} columns")
                v = Fraction(v)
                if v:
                    clean[j] = v
            packed.append(clean)
        self._rows = tuple(packed)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]], ncols: int | None = None) -> "QMatrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        sparse = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            sparse.append({j: v for j, v in enumerate(r) if v})
        return cls(len(rows), ncols, sparse)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[object]], nrows: int) -> "QMatrix":
        rows: List[Dict[int, object]] = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                if v:
                    rows[i][j] = v
        return cls(nrows, len(columns), rows)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls(nrows, ncols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(key)
        return self._rows[i].get(j, Fraction(0))

    def row(self, i: int) -> Dict[int, Fraction]:
        return dict(self._rows[i])

    def sparse_rows(self) -> Tuple[Dict[int, Fraction], ...]:
        return self._rows

    def to_rows(self) -> List[List[Fraction]]:
        return [[r.get(j, Fraction(0)) for j in range(self.ncols)] for r in self._rows]

    def transpose(self) -> "QMatrix":
        cols: List[Dict[int, Fraction]] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return QMatrix(self.ncols, self.nrows, cols)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            out = []
            for r in self._rows:
                acc: Dict[int, Fraction] = {}
                for k, a in r.items():
                    for j, b in other._rows[k].items():
                        acc[j] = acc.get(j, 0) + a * b
                out.append(acc)
            return QMatrix(self.nrows, other.ncols, out)
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(sum((a * v[j] for j, a in r.items()), Fraction(0)) for r in self._rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        return f"QMatrix({self.to_rows()!r})"


# -- elimination core ---------------------------------------------------------

def _primitive(row: Mapping[int, object]) -> Dict[int, int]:
    """Scale a rational row to a primitive integer row with positive leading entry."""
    items = [(j, Fraction(v)) for j, v in row.items() if v]
    if not items:
        return {}
    den = lcm(*(v.denominator for _, v in items))
    ints = {j: v.numerator * (den // v.denominator) for j, v in items}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    lead = ints[min(ints)]
    if lead < 0:
        g = -g
    return {j: v // g for j, v in ints.items()}


def _combine(r: Dict[int, int], p: Dict[int, int], c: int) -> Dict[int, int]:
    """Cancel column ``c`` of ``r`` against pivot row ``p``, then make it primitive."""
    a, b = p[c], r[c]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {j: a * v for j, v in r.items()}
    for j, v in p.items():
        w = out.get(j, 0) - b * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return _primitive(out)


def _echelon(rows: Iterable[Mapping[int, object]]) -> Dict[int, Dict[int, int]]:
    """Forward elimination; returns primitive integer pivot rows keyed by pivot column."""
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        r = _primitive(row)
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = r
                break
            r = _combine(r, p, c)
    return pivots


def _reduce(pivots: Dict[int, Dict[int, int]]) -> List[Tuple[int, SparseRow]]:
    """Back-substitute to the reduced row echelon form, normalised to pivot 1."""
    done: Dict[int, Dict[int, int]] = {}
    for c in sorted(pivots, reverse=True):
        r = pivots[c]
        for c2 in sorted(done):
            if c2 in r:
                r = _combine(r, done[c2], c2)
        done[c] = r
    out = []
    for c in sorted(done):
        r = done[c]
        lead = r[c]
        out.append((c, {j: Fraction(v, lead) for j, v in r.items()}))
    return out


def rref(M: QMatrix) -> List[Tuple[int, SparseRow]]:
    """Reduced row echelon form as ``[(pivot_column, row), ...]`` (zero rows dropped)."""
    return _reduce(_echelon(M.sparse_rows()))


def rank(M: QMatrix) -> int:
    return len(_echelon(M.sparse_rows()))


def rank_of_rows(rows: Iterable[Mapping[int, object]]) -> int:
    """Rank of a family of sparse rows, without building a QMatrix."""
    return len(_echelon(rows))


def nullspace_of_rows(rows: Iterable[Mapping[int, object]], ncols: int) -> List[Vector]:
    reduced = _reduce(_echelon(rows))
    pivot_cols = {c for c, _ in reduced}
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for c, r in reduced:
            if f in r:
                v[c] = -r[f]
        basis.append(tuple(v))
    return span(basis, ncols)


def nullspace(M: QMatrix) -> List[Vector]:
    """Basis of ``{v : M v = 0}`` in reduced echelon form (leading entries 1)."""
    return nullspace_of_rows(M.sparse_rows(), M.ncols)


def solve(M: QMatrix, b: Sequence[object]) -> Vector:
    """Particular solution of ``M x = b`` with every free variable set to 0.

    Raises :class:`NoSolution` if ``b`` is not in the column space of ``M``.
    """
    if len(b) != M.nrows:
        raise ValueError("right-hand side has wrong length")
    n = M.ncols
    aug = []
    for r, bi in zip(M.sparse_rows(), b):
        row = dict(r)
        if bi:
            row[n] = Fraction(bi)
        aug.append(row)
    reduced = _reduce(_echelon(aug))
    x = [Fraction(0)] * n
    for c, r in reduced:
        if c == n:
            raise NoSolution("right-hand side is not in the column space")
        x[c] = r.get(n, Fraction(0))
    return tuple(x)


def span(vectors: Iterable[Sequence[object]], dim: int | None = None) -> List[Vector]:
    """Canonical basis (reduced echelon rows) of the span of ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    if dim is None:
        if not vectors:
            return []
        dim = len(vectors[0])
    rows = [{j: x for j, x in enumerate(v) if x} for v in vectors]
    for v in vectors:
        if len(v) != dim:
            raise ValueError("vectors of mixed dimension")
    out = []
    for _, r in _reduce(_echelon(rows)):
        out.append(tuple(r.get(j, Fraction(0)) for j in range(dim)))
    return out


def intersect(basis_a: Sequence[Sequence[object]], basis_b: Sequence[Sequence[object]]) -> List[Vector]:
    """Canonical basis of ``span(A) ∩ span(B)``."""
    if not basis_a or not basis_b:
        return []
    dim = len(basis_a[0])
    a = span(basis_a, dim)
    b = span(basis_b, dim)
    if not a or not b:
        return []
    # columns a_1..a_p, b_1..b_q; kernel vectors (lam, mu) give sum lam_i a_i = -sum mu_j b_j
    cols = a + b
    M = QMatrix.from_columns(cols, dim)
    p = len(a)
    meet = []
    for kv in nullspace(M):
        meet.append(tuple(sum((kv[i] * a[i][t] for i in range(p)), Fraction(0)) for t in range(dim)))
    return span(meet, dim)


def in_span(v: Sequence[object], basis: Sequence[Sequence[object]]) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return len(span(list(basis) + [tuple(v)])) == len(span(basis))


def det(M: QMatrix) -> Fraction:
    """Determinant by exact Gaussian elimination."""
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    a = M.to_rows()
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        piv = a[c][c]
        result *= piv
        for r in range(c + 1, n):
            f = a[r][c] / piv
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return result
