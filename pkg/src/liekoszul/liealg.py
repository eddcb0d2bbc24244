"""Lie algebras given by rational structure constants.

Basis indices are 0-based inside the library and 1-based in text (the
relation grammar, reports).  Only brackets ``[x_i, x_j]`` with ``i < j`` are
stored; the rest follow by antisymmetry.  Every constructor runs the Jacobi
check, so a :class:`LieAlgebra` that exists is a Lie algebra.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .exactla import QMatrix, Vector, in_span, nullspace_of_rows, span

Bracket = Dict[int, Fraction]


class ParseError(ValueError):
    pass


class JacobiWitness(NamedTuple):
    i: int
    j: int
    k: int
    defect: Vector


class JacobiError(ValueError):
    def __init__(self, witness: JacobiWitness):
        i, j, k = witness.i + 1, witness.j + 1, witness.k + 1
        super().__init__(f"Jacobi identity fails on (x{i}, x{j}, x{k})")
        self.witness = witness


class NotAnIdeal(ValueError):
    def __init__(self, basis_index: int, vector_index: int):
        super().__init__(f"[x{basis_index + 1}, h{vector_index + 1}] leaves the subspace")
        self.witness = (basis_index, vector_index)


class NotADerivation(ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"derivation rule fails on (x{i + 1}, x{j + 1})")
        self.witness = (i, j)


def _clean(vec: Mapping[int, object]) -> Bracket:
    return {k: Fraction(v) for k, v in sorted(vec.items()) if v}


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q with a fixed basis ``x_0 .. x_{n-1}``."""

    __slots__ = ("dim", "name", "labels", "_table", "_ad")

    def __init__(self, dim: int, brackets: Mapping[Tuple[int, int], Mapping[int, object]] | None = None,
                 name: str | None = None, labels: Sequence[str] | None = None, check: bool = True):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        table: Dict[Tuple[int, int], Bracket] = {}
        for (i, j), vec in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"bracket index ({i}, {j}) out of range")
            for k in vec:
                if not 0 <= k < dim:
                    raise IndexError(f"bracket value index {k} out of range")
            if i == j:
                if any(vec.values()):
                    raise ValueError("[x_i, x_i] must vanish")
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            vec = _clean({k: sign * Fraction(v) for k, v in vec.items()})
            if (i, j) in table:
                raise ValueError(f"bracket ({i}, {j}) given twice")
            if vec:
                table[(i, j)] = vec
        self.dim = dim
        self.name = name
        self.labels = tuple(labels) if labels is not None else None
        self._table = table
        self._ad = None
        if check:
            witness = check_jacobi(self)
            if witness is not None:
                raise JacobiError(witness)

    # -- basic access ---------------------------------------------------------

    @property
    def brackets(self) -> Dict[Tuple[int, int], Bracket]:
        """Nonzero structure constants ``{(i, j): {k: c^k_ij}}`` for ``i < j``."""
        return {key: dict(v) for key, v in self._table.items()}

    def bracket_basis(self, i: int, j: int) -> Bracket:
        if i < j:
            return self._table.get((i, j), {})
        if i > j:
            return {k: -v for k, v in self._table.get((j, i), {}).items()}
        return {}

    def bracket(self, u: Sequence[object], v: Sequence[object]) -> Vector:
        out = [Fraction(0)] * self.dim
        nu = [(i, a) for i, a in enumerate(u) if a]
        nv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in nu:
            for j, b in nv:
                for k, c in self.bracket_basis(i, j).items():
                    out[k] += a * b * c
        return tuple(out)

    def ad_columns(self) -> List[List[Bracket]]:
        """``ad[i][j]`` is ``[x_i, x_j]`` as a sparse vector (cached)."""
        if self._ad is None:
            self._ad = [[self.bracket_basis(i, j) for j in range(self.dim)] for i in range(self.dim)]
        return self._ad

    def ad(self, i: int) -> QMatrix:
        """Matrix of ``ad(x_i)``; column ``j`` holds ``[x_i, x_j]``."""
        rows: List[Dict[int, Fraction]] = [{} for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.bracket_basis(i, j).items():
                rows[k][j] = c
        return QMatrix(self.dim, self.dim, rows)

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def is_abelian(self) -> bool:
        return not self._table

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self._table == other._table

    def __hash__(self) -> int:
        return hash((self.dim, tuple(sorted((k, tuple(v.items())) for k, v in self._table.items()))))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<LieAlgebra{label} dim={self.dim} brackets={len(self._table)}>"


@dataclass(frozen=True)
class Subspace:
    """Subspace of a Lie algebra, held as a reduced echelon basis."""

    ambient_dim: int
    basis: Tuple[Vector, ...]

    @classmethod
    def spanned_by(cls, ambient_dim: int, vectors: Iterable[Sequence[object]]) -> "Subspace":
        return cls(ambient_dim, tuple(span(list(vectors), ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[object]) -> bool:
        return in_span(v, self.basis)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def pivots(self) -> List[int]:
        return [next(i for i, x in enumerate(v) if x) for v in self.basis]


# -- text format --------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(?:(\d+)(?:\s*/\s*(\d+))?\s*\*)?\s*x?(\d+)\s*")
_BRACKET = re.compile(r"\[\s*x?(\d+)\s*,\s*x?(\d+)\s*\]\s*=\s*(.*)$")


def _parse_terms(rhs: str, lineno: int) -> Dict[int, Fraction]:
    rhs = rhs.strip()
    if not rhs or rhs == "0":
        return {}
    out: Dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(rhs):
        m = _TERM.match(rhs, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"line {lineno}: cannot parse term at {rhs[pos:]!r}")
        sign, p, q, k = m.groups()
        if not sign and not first:
            raise ParseError(f"line {lineno}: missing sign between terms")
        if q and int(q) == 0:
            raise ParseError(f"line {lineno}: zero denominator")
        coeff = Fraction(int(p), int(q) if q else 1) if p else Fraction(1)
        if sign == "-":
            coeff = -coeff
        k = int(k)
        out[k] = out.get(k, Fraction(0)) + coeff
        pos = m.end()
        first = False
    return out


def from_relations(source: str, check: bool = True) -> LieAlgebra:
    """Parse the structure-constant text format.

    Statements are separated by newlines or ``;``::

        # g_{5,4}
        dim 5
        name g54
        [1,2] = 3
        [1,3] = 4
        [2,3] = 5

    A term is ``[p/q *] k`` (coefficient 1 if omitted), terms joined by ``+``/``-``.
    """
    dim: Optional[int] = None
    name: Optional[str] = None
    raw: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for lineno, line in enumerate(source.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            if stmt.startswith("dim"):
                if dim is not None:
                    raise ParseError(f"line {lineno}: dim given twice")
                try:
                    dim = int(stmt[3:].strip())
                except ValueError:
                    raise ParseError(f"line {lineno}: bad dim line {stmt!r}") from None
                if dim < 0:
                    raise ParseError(f"line {lineno}: negative dimension")
                continue
            if stmt.startswith("name"):
                name = stmt[4:].strip() or None
                continue
            m = _BRACKET.match(stmt)
            if m is None:
                raise ParseError(f"line {lineno}: unrecognised statement {stmt!r}")
            if dim is None:
                raise ParseError(f"line {lineno}: bracket before dim line")
            i, j = int(m.group(1)), int(m.group(2))
            if not i < j:
                raise ParseError(f"line {lineno}: bracket [{i},{j}] needs i < j")
            terms = _parse_terms(m.group(3), lineno)
            for idx in (i, j, *terms):
                if not 1 <= idx <= dim:
                    raise ParseError(f"line {lineno}: index {idx} out of range 1..{dim}")
            if (i, j) in raw:
                raise ParseError(f"line {lineno}: duplicate bracket [{i},{j}]")
            raw[(i, j)] = terms
    if dim is None:
        raise ParseError("missing 'dim' line")
    brackets = {(i - 1, j - 1): {k - 1: c for k, c in t.items()} for (i, j), t in raw.items()}
    return LieAlgebra(dim, brackets, name=name, check=check)


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_relations(L: LieAlgebra) -> str:
    """Inverse of :func:`from_relations`."""
    lines = [f"dim {L.dim}"]
    if L.name:
        lines.append(f"name {L.name}")
    for (i, j), vec in sorted(L.brackets.items()):
        terms = []
        for k, c in vec.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coeff = "" if mag == 1 else f"{format_rational(mag)}*"
            terms.append((sign, f"{coeff}{k + 1}"))
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        text += "".join(f" {s} {t}" for s, t in terms[1:])
        lines.append(f"[{i + 1},{j + 1}] = {text}")
    return "\n".join(lines) + "\n"


# -- Jacobi -------------------------------------------------------------------

def _add(acc: Dict[int, Fraction], vec: Mapping[int, Fraction], scale: Fraction) -> None:
    for k, v in vec.items():
        acc[k] = acc.get(k, 0) + scale * v


def _jacobiator(L: LieAlgebra, i: int, j: int, k: int) -> Dict[int, Fraction]:
    ad = L.ad_columns()
    acc: Dict[int, Fraction] = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for m, coeff in ad[b][c].items():
            _add(acc, ad[a][m], coeff)
    return {m: v for m, v in acc.items() if v}


def check_jacobi(L: LieAlgebra) -> Optional[JacobiWitness]:
    """``None`` when Jacobi holds, else the first failing triple ``i < j < k``."""
    n = L.dim
    if not L._table:
        return None
    for i, j, k in combinations(range(n), 3):
        defect = _jacobiator(L, i, j, k)
        if defect:
            vec = tuple(defect.get(m, Fraction(0)) for m in range(n))
            return JacobiWitness(i, j, k, vec)
    return None


# -- subspaces ----------------------------------------------------------------

def bracket_of_subspaces(L: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    return Subspace.spanned_by(L.dim, [L.bracket(u, v) for u in U.basis for v in V.basis])


def whole(L: LieAlgebra) -> Subspace:
    return Subspace.spanned_by(L.dim, [L.basis_vector(i) for i in range(L.dim)])


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    vecs = []
    for vec in L._table.values():
        vecs.append(tuple(vec.get(k, Fraction(0)) for k in range(L.dim)))
    return Subspace.spanned_by(L.dim, vecs)


def center(L: LieAlgebra) -> Subspace:
    n = L.dim
    # v central iff sum_j v_j [x_i, x_j] = 0 for all i
    rows = []
    for i in range(n):
        per_k: Dict[int, Dict[int, Fraction]] = {}
        for j in range(n):
            for k, c in L.bracket_basis(i, j).items():
                per_k.setdefault(k, {})[j] = c
        rows.extend(per_k.values())
    return Subspace(n, tuple(nullspace_of_rows(rows, n)))


def lower_central_series(L: LieAlgebra) -> List[Subspace]:
    """``[g, C^2 g, C^3 g, ...]`` up to the first repeated term (not repeated)."""
    g = whole(L)
    series = [g]
    while True:
        nxt = bracket_of_subspaces(L, g, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L)[-1].dim == 0


def is_ideal(L: LieAlgebra, h: Subspace) -> bool:
    try:
        _check_ideal(L, h)
    except NotAnIdeal:
        return False
    return True


def _check_ideal(L: LieAlgebra, h: Subspace) -> None:
    for i in range(L.dim):
        x = L.basis_vector(i)
        for a, v in enumerate(h.basis):
            if not h.contains(L.bracket(x, v)):
                raise NotAnIdeal(i, a)


# -- constructions ------------------------------------------------------------

def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, name=f"abelian:{n}")


def direct_product(L1: LieAlgebra, L2: LieAlgebra, name: str | None = None) -> LieAlgebra:
    """Product with ``L1`` on indices ``0..dim L1 - 1`` and ``L2`` shifted after it."""
    s = L1.dim
    table = dict(L1.brackets)
    for (i, j), vec in L2.brackets.items():
        table[(i + s, j + s)] = {k + s: c for k, c in vec.items()}
    return LieAlgebra(s + L2.dim, table, name=name)


def relabel(L: LieAlgebra, order: Sequence[int], name: str | None = None) -> LieAlgebra:
    """New basis ``y_a = x_{order[a]}``."""
    if sorted(order) != list(range(L.dim)):
        raise ValueError("order must be a permutation of the basis indices")
    pos = {old: new for new, old in enumerate(order)}
    table = {}
    for (i, j), vec in L.brackets.items():
        table[(pos[i], pos[j])] = {pos[k]: c for k, c in vec.items()}
    return LieAlgebra(L.dim, table, name=name)


def reduce_mod(h: Subspace, v: Sequence[object]) -> Vector:
    """Reduce ``v`` against the echelon basis of ``h`` (zeroes the pivot entries)."""
    out = list(Fraction(x) for x in v)
    for row, p in zip(h.basis, h.pivots()):
        c = out[p]
        if c:
            for t, x in enumerate(row):
                if x:
                    out[t] -= c * x
    return tuple(out)


def quotient(L: LieAlgebra, ideal: Subspace, name: str | None = None) -> LieAlgebra:
    """``L / ideal`` on the images of the basis vectors at non-pivot positions."""
    _check_ideal(L, ideal)
    pivots = set(ideal.pivots())
    keep = [i for i in range(L.dim) if i not in pivots]
    pos = {old: new for new, old in enumerate(keep)}
    table = {}
    for a, i in enumerate(keep):
        for b in range(a + 1, len(keep)):
            j = keep[b]
            vec = L.bracket(L.basis_vector(i), L.basis_vector(j))
            red = reduce_mod(ideal, vec)
            img = {pos[t]: c for t, c in enumerate(red) if c}
            if img:
                table[(a, b)] = img
    return LieAlgebra(len(keep), table, name=name)


def _derivation_rows(L: LieAlgebra) -> List[Dict[int, Fraction]]:
    """Linear conditions on D (unknown D[a][b] at index a*n + b) for D to be a derivation."""
    n = L.dim
    ad = L.ad_columns()
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            eq: Dict[int, Dict[int, Fraction]] = {}
            # D [x_i, x_j]
            for m, c in ad[i][j].items():
                for k in range(n):
                    eq.setdefault(k, {})
                    eq[k][k * n + m] = eq[k].get(k * n + m, 0) + c
            # - [D x_i, x_j] = - sum_a D[a][i] [x_a, x_j]
            for a in range(n):
                for k, c in ad[a][j].items():
                    eq.setdefault(k, {})
                    eq[k][a * n + i] = eq[k].get(a * n + i, 0) - c
            # - [x_i, D x_j]
            for a in range(n):
                for k, c in ad[i][a].items():
                    eq.setdefault(k, {})
                    eq[k][a * n + j] = eq[k].get(a * n + j, 0) - c
            for r in eq.values():
                r = {u: v for u, v in r.items() if v}
                if r:
                    rows.append(r)
    return rows


@dataclass(frozen=True)
class DerivationSpace:
    ambient: LieAlgebra
    basis: Tuple[QMatrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, D: QMatrix) -> bool:
        flat = [D[a, b] for a in range(D.nrows) for b in range(D.ncols)]
        vecs = [tuple(B[a, b] for a in range(B.nrows) for b in range(B.ncols)) for B in self.basis]
        return in_span(flat, vecs)


def derivations(L: LieAlgebra) -> DerivationSpace:
    n = L.dim
    sols = nullspace_of_rows(_derivation_rows(L), n * n)
    mats = tuple(QMatrix.from_rows([[v[a * n + b] for b in range(n)] for a in range(n)], n) for v in sols)
    return DerivationSpace(L, mats)


def inner_derivations(L: LieAlgebra) -> List[QMatrix]:
    return [L.ad(i) for i in range(L.dim)]


def derivation_defect(L: LieAlgebra, D: QMatrix) -> Optional[Tuple[int, int]]:
    """First pair ``(i, j)`` where ``D[x_i,x_j] != [Dx_i,x_j] + [x_i,Dx_j]``, or None."""
    n = L.dim
    cols = [tuple(D[a, b] for a in range(n)) for b in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = D @ L.bracket(L.basis_vector(i), L.basis_vector(j))
            r1 = L.bracket(cols[i], L.basis_vector(j))
            r2 = L.bracket(L.basis_vector(i), cols[j])
            if any(a != b + c for a, b, c in zip(lhs, r1, r2)):
                return (i, j)
    return None


def is_derivation(L: LieAlgebra, D: QMatrix) -> bool:
    return derivation_defect(L, D) is None


def adjoin_derivation(L: LieAlgebra, D: QMatrix, name: str | None = None) -> LieAlgebra:
    """``C tau ⊕ L`` with the new last basis vector acting as ``[tau, x_i] = D x_i``."""
    n = L.dim
    if D.shape != (n, n):
        raise ValueError(f"derivation must be {n}x{n}")
    bad = derivation_defect(L, D)
    if bad is not None:
        raise NotADerivation(*bad)
    table = dict(L.brackets)
    for i in range(n):
        col = {a: -D[a, i] for a in range(n) if D[a, i]}
        if col:
            table[(i, n)] = col
    return LieAlgebra(n + 1, table, name=name)


def basis_subalgebra(L: LieAlgebra, indices: Sequence[int], name: str | None = None) -> LieAlgebra:
    """The subalgebra spanned by ``x_i`` for ``i`` in ``indices`` (must be closed), renumbered in order."""
    pos = {old: new for new, old in enumerate(indices)}
    table = {}
    for a, i in enumerate(indices):
        for b in range(a + 1, len(indices)):
            vec = L.bracket_basis(i, indices[b])
            if any(k not in pos for k in vec):
                raise ValueError("span of the chosen basis vectors is not closed under the bracket")
            if vec:
                table[(a, b)] = {pos[k]: c for k, c in vec.items()}
    return LieAlgebra(len(indices), table, name=name)
