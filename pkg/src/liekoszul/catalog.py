"""Named algebras and the verdicts expected for them.

Names are ``family`` or ``family:param[:param]`` (``filiform:5``,
``nilradical:B:3``, ``borel:G2``).  Indices inside ``expected`` facts are
1-based, matching the relation text format.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Tuple

from . import rootkit
from .liealg import LieAlgebra, abelian as _abelian, direct_product, from_relations


class UnknownName(KeyError):
    pass


class BadParameters(ValueError):
    pass


G54 = "dim 5; [1,2]=3; [1,3]=4; [2,3]=5"
DIAMOND = "dim 4; [1,2]=3; [1,3]=-2; [2,3]=4"
G724 = "dim 7; [1,2]=3; [1,3]=4; [1,4]=5; [1,5]=6; [2,5]=-7; [3,4]=7"
G54_SQUARED = "dim 10; [1,2]=5; [1,5]=6; [2,5]=7; [3,4]=8; [3,8]=9; [4,8]=10"

G54_FORM = {"sym": {(1, 5): 1, (2, 4): -1}, "tensor": {3: 1}}
I_NULL = {"I_null": True}


def _int(p: str, what: str) -> int:
    try:
        return int(p)
    except ValueError:
        raise BadParameters(f"{what} must be an integer, got {p!r}") from None


def heisenberg(n: int) -> LieAlgebra:
    if n < 3 or n % 2 == 0:
        raise BadParameters("heisenberg needs an odd dimension >= 3")
    k = n // 2
    return LieAlgebra(n, {(i, k + i): {n - 1: 1} for i in range(k)}, name=f"heisenberg:{n}")


def filiform(n: int) -> LieAlgebra:
    if n < 3:
        raise BadParameters("filiform needs n >= 3")
    return LieAlgebra(n, {(0, i): {i + 1: 1} for i in range(1, n - 1)}, name=f"filiform:{n}")


def free2step(m: int) -> LieAlgebra:
    """Free 2-step nilpotent algebra on ``m`` generators; ``[x_i, x_j]`` in lexicographic order of pairs."""
    if not 2 <= m <= 5:
        raise BadParameters("free2step needs 2 <= m <= 5")
    pairs = list(combinations(range(m), 2))
    return LieAlgebra(m + len(pairs), {p: {m + k: 1} for k, p in enumerate(pairs)}, name=f"free2step:{m}")


def _named(text: str, name: str) -> LieAlgebra:
    L = from_relations(text)
    return LieAlgebra(L.dim, L.brackets, name=name)


def _root_params(params: Tuple[str, ...]) -> Tuple[str, Optional[int]]:
    if len(params) == 1:
        return params[0], None
    if len(params) == 2:
        return params[0], _int(params[1], "rank")
    raise BadParameters("expected a type such as B:3 or E6")


def _simple_generators(nil: rootkit.ChevalleyNilradical) -> List[int]:
    n = nil.root_system.rank
    return [nil.roots.index(tuple(int(i == j) for i in range(n))) + 1 for j in range(n)]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    builder: Callable[..., LieAlgebra]
    arity: int = 0                       # number of ``:``-separated parameters (-1: one or two)
    description: str = ""
    facts: Dict[Any, Dict[str, Any]] = field(default_factory=dict)   # keyed by parameter tuple

    def build(self, params: Tuple[str, ...]) -> LieAlgebra:
        if self.arity >= 0 and len(params) != self.arity:
            raise BadParameters(f"{self.name} takes {self.arity} parameter(s)")
        return self.builder(*params)


def _g2_facts() -> Dict[str, Any]:
    return {"dim": 6, "I_null": True, "adjoint_betti": (1, 4, 7, 8, 7, 5, 2),
            "gcm": {"generators": [1, 2], "type": "finite:G2"}}


_ENTRIES: Dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry) -> None:
    _ENTRIES[entry.name] = entry


_register(CatalogEntry(
    "abelian", lambda n: _abelian(_positive(n)), 1, "abelian algebra of dimension n",
    facts={}))
_register(CatalogEntry(
    "heisenberg", lambda n: heisenberg(_int(n, "dimension")), 1, "Heisenberg algebra of odd dimension n",
    facts={("3",): {"dim": 3, "I_null": True, "gcm": {"generators": [1, 2], "type": "finite:A2"}}}))
_register(CatalogEntry(
    "filiform", lambda n: filiform(_int(n, "dimension")), 1, "standard filiform [x1,xi]=x(i+1)",
    facts={("3",): {"gcm": {"generators": [1, 2], "type": "finite:A2"}},
           ("4",): {"gcm": {"generators": [1, 2], "type": "finite:C2"}},
           ("5",): {"gcm": {"generators": [1, 2], "type": "finite:G2"}}}))
_register(CatalogEntry(
    "free2step", lambda m: free2step(_int(m, "generator count")), 1, "free 2-step nilpotent on m generators",
    facts={("4",): {"dim": 10, "dim_Im_I": 4, "I_null": False, "I_exact": True, "quadratic": False},
           ("5",): {"dim": 15, "dim_Im_I": 10, "I_null": False, "I_exact": True, "quadratic": False}}))
_register(CatalogEntry(
    "g54", lambda: _named(G54, "g54"), 0, "5-dimensional quadratic nilpotent algebra g5,4",
    facts={(): {"dim": 5, "forms_dim": 4, "dim_Im_I": 1, "I_null": False, "I_exact": True, "quadratic": True,
                "B": G54_FORM, "I_B": {(1, 2, 3): 1}, "witness": {(1, 5): 1},
                "zl2_0_dim": 6, "gcm": {"generators": [1, 2], "type": "affine:A1~1"}}}))
_register(CatalogEntry(
    "g54xc", lambda: direct_product(_named(G54, "g54"), _abelian(1), name="g54xc"), 0, "g5,4 x C",
    facts={(): {"dim": 6, "forms_dim": 7, "dim_Im_I": 1, "I_null": False, "I_exact": True, "quadratic": True,
                "B": G54_FORM, "I_B": {(1, 2, 3): 1}, "witness": {(1, 5): 1}}}))
_register(CatalogEntry(
    "g54xc2", lambda: direct_product(_named(G54, "g54"), _abelian(2), name="g54xc2"), 0, "g5,4 x C^2",
    facts={(): {"dim": 7, "forms_dim": 11, "dim_Im_I": 1, "I_null": False, "I_exact": True, "quadratic": True,
                "B": G54_FORM, "I_B": {(1, 2, 3): 1}, "witness": {(1, 5): 1}}}))
_register(CatalogEntry(
    "diamond", lambda: _named(DIAMOND, "diamond"), 0, "4-dimensional solvable diamond algebra",
    facts={(): {"dim": 4, "dim_Im_I": 1, "I_null": False, "I_exact": True, "quadratic": True, "nilpotent": False,
                "B": {"sym": {(1, 4): 1}, "tensor": {2: 1, 3: 1}}, "I_B": {(1, 2, 3): 1},
                "witness": {(1, 4): 1}}}))
_register(CatalogEntry(
    "g724", lambda: _named(G724, "g724"), 0, "7-dimensional quadratic nilpotent algebra g7,2.4",
    facts={(): {"dim": 7, "forms_dim": 4, "dim_Im_I": 1, "I_null": False, "I_exact": True, "quadratic": True,
                "B": {"sym": {(1, 7): 1, (2, 6): 1, (3, 5): -1}, "tensor": {4: 1}},
                "I_B": {(1, 3, 4): 1, (1, 2, 5): -1}, "witness": {(1, 7): 1},
                "gcm": {"generators": [1, 2], "type": "affine:A2~2"}}}))
for _alias in ("g618", "g2plus"):
    _register(CatalogEntry(
        _alias, lambda a=_alias: LieAlgebra(6, rootkit.nilradical("G2").algebra.brackets, name=a), 0,
        "nilradical of the G2 Borel subalgebra (g6,18)", facts={(): _g2_facts()}))
_register(CatalogEntry(
    "f4plus", lambda: rootkit.nilradical("F4").algebra, 0, "nilradical of the F4 Borel subalgebra",
    facts={(): {"dim": 24, "I_null": True}}))
for _k, _d in ((6, 36), (7, 63), (8, 120)):
    _register(CatalogEntry(
        f"e{_k}plus", lambda k=_k: rootkit.nilradical(f"E{k}").algebra, 0,
        f"nilradical of the E{_k} Borel subalgebra",
        facts={(): {"dim": _d, "I_null": True, "slow": _k > 6}}))
_register(CatalogEntry(
    "nilradical", lambda *p: rootkit.nilradical(*_root_params(p)).algebra, -1,
    "nilradical of a Borel subalgebra, e.g. nilradical:B:3 or nilradical:E6"))
_register(CatalogEntry(
    "borel", lambda *p: rootkit.borel(*_root_params(p)), -1, "Borel subalgebra, e.g. borel:A:2 or borel:G2"))
_register(CatalogEntry(
    "g54xg54", lambda: _named(G54_SQUARED, "g54xg54"), 0, "g5,4 x g5,4 in interleaved numbering",
    facts={(): {"dim": 10, "quadratic": True, "I_null": False,
                "invariant_forms": [{"sym": {(1, 7): 1, (2, 6): -1}, "tensor": {5: 1}},
                                    {"sym": {(3, 10): 1, (4, 9): -1}, "tensor": {8: 1}}]}}))
_register(CatalogEntry(
    "c_x_g54sq", lambda: direct_product(_named(G54_SQUARED, "g54xg54"), _abelian(1), name="c_x_g54sq"), 0,
    "C x g5,4 x g5,4 with the central factor as x11",
    facts={(): {"dim": 11, "quadratic": True, "I_null": False}}))


def _positive(n: str) -> int:
    v = _int(n, "dimension")
    if v < 1:
        raise BadParameters("dimension must be positive")
    return v


def _facts_for_family(entry: CatalogEntry, params: Tuple[str, ...]) -> Dict[str, Any]:
    if entry.name == "abelian":
        n = _positive(params[0])
        return {"dim": n, "forms_dim": n * (n + 1) // 2, "I_null": True, "quadratic": True}
    if entry.name == "nilradical":
        nil = rootkit.nilradical(*_root_params(params))
        facts = {"dim": nil.algebra.dim, "I_null": True}
        t = nil.root_system.name
        facts["gcm"] = {"generators": _simple_generators(nil), "type": "finite:" + ("C2" if t == "B2" else t)}
        if nil.root_system.type == "E" and nil.root_system.rank > 6:
            facts["slow"] = True
        return facts
    if entry.name == "borel":
        return {"I_null": True, "nilpotent": False}
    return {}


def split(name: str) -> Tuple[str, Tuple[str, ...]]:
    parts = name.strip().split(":")
    return parts[0].lower(), tuple(p.strip() for p in parts[1:])


def _lookup(name: str, params: Tuple[Any, ...]) -> Tuple[CatalogEntry, Tuple[str, ...]]:
    base, extra = split(name)
    if base not in _ENTRIES:
        raise UnknownName(name)
    return _ENTRIES[base], extra + tuple(str(p) for p in params)


def get(name: str, *params: Any) -> LieAlgebra:
    """Build a catalog algebra: ``get("filiform", 5)`` or ``get("filiform:5")``."""
    entry, ps = _lookup(name, params)
    try:
        L = entry.build(ps)
    except (rootkit.InvalidType, BadParameters):
        raise
    except TypeError as exc:
        raise BadParameters(str(exc)) from None
    if L.name is None or ps:
        L = LieAlgebra(L.dim, L.brackets, name=":".join((entry.name,) + ps), check=False)
    return L


def expected(name: str, *params: Any) -> Dict[str, Any]:
    """Known verdicts for a catalog algebra (empty when nothing is recorded)."""
    entry, ps = _lookup(name, params)
    facts = dict(entry.facts.get(ps, {}))
    facts.update(_facts_for_family(entry, ps))
    return facts


def names() -> List[str]:
    return sorted(_ENTRIES)


def describe(name: str) -> str:
    return _lookup(name, ())[0].description


# concrete instances used by report-tables and the structural test-suite
FIXED_INSTANCES: Tuple[str, ...] = (
    "abelian:3", "heisenberg:3", "heisenberg:5", "filiform:3", "filiform:4", "filiform:5",
    "free2step:3", "free2step:4", "free2step:5", "g54", "g54xc", "g54xc2", "diamond", "g724", "g618",
    "f4plus", "e6plus", "e7plus", "e8plus", "g54xg54", "c_x_g54sq",
    "nilradical:A:3", "nilradical:B:3", "nilradical:C:3", "nilradical:D:4", "borel:A:2", "borel:G2",
)
