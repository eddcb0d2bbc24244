"""Command-line front end.

Exit codes: 0 success, 1 input could not be parsed/resolved or fails Jacobi,
2 invalid root-system type or rank, 3 degenerate weights in ``gcm``,
4 request refused (Betti numbers above the dimension limit),
5 ``report-tables`` found at least one FAIL.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import catalog, rootkit
from .cecohom import ADJOINT, MAX_BETTI_DIM, TRIVIAL, BettiTooLarge, betti, cohomology_dim, format_form
from .gcm import DegenerateWeights, GeneratorsNotComplementary, NotNilpotent, classify, compute_gcm, format_matrix
from .koszul import analyze as koszul_analyze
from .leibniz import leibniz_report
from .liealg import (JacobiError, LieAlgebra, ParseError, center, derived_subalgebra, format_rational,
                     from_relations, is_nilpotent)

EXIT_INPUT, EXIT_TYPE, EXIT_WEIGHTS, EXIT_REFUSED, EXIT_FAIL = 1, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- helpers -----------------------------------------------------------------------

def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _text(value: Any) -> str:
    if isinstance(value, bool):
        return _yes(value)
    if isinstance(value, (list, tuple)):
        if not value:
            return "-"
        if all(isinstance(v, str) for v in value):
            return "; ".join(value)
        return "(" + ", ".join(_text(v) for v in value) + ")"
    if isinstance(value, Fraction):
        return format_rational(value)
    if value is None:
        return "-"
    return str(value)


def _render(doc: Dict[str, Any], indent: str = "") -> List[str]:
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_render(value, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {_text(value)}")
    return lines


def _emit(doc: Dict[str, Any], as_json: bool, text: Optional[List[str]] = None) -> None:
    if as_json:
        print(json.dumps(_jsonable(doc), indent=2, ensure_ascii=False))
    else:
        print("\n".join(text if text is not None else _render(doc)))


def load_algebra(source: str) -> LieAlgebra:
    """A relations file path, or a catalog name such as ``g54`` or ``filiform:5``."""
    path = Path(source)
    try:
        if path.is_file():
            L = from_relations(path.read_text())
            return L if L.name else LieAlgebra(L.dim, L.brackets, name=path.stem, check=False)
        return catalog.get(source)
    except JacobiError as exc:
        w = exc.witness
        defect = ", ".join(format_rational(c) for c in w.defect)
        raise CliError(EXIT_INPUT, f"{exc}; jacobiator = ({defect})") from None
    except (ParseError, catalog.BadParameters) as exc:
        raise CliError(EXIT_INPUT, f"cannot read {source!r}: {exc}") from None
    except catalog.UnknownName:
        raise CliError(EXIT_INPUT, f"{source!r} is neither a file nor a catalog name") from None
    except rootkit.InvalidType as exc:
        raise CliError(EXIT_TYPE, str(exc)) from None


def _root_type(kind: str, rank: Optional[int]) -> Tuple[str, int]:
    try:
        return rootkit.normalize_type(kind, rank)
    except rootkit.InvalidType as exc:
        raise CliError(EXIT_TYPE, str(exc)) from None


# -- analyses ----------------------------------------------------------------------

def structure_block(L: LieAlgebra) -> Dict[str, Any]:
    derived = derived_subalgebra(L)
    return {"dim": L.dim, "ell": L.dim - derived.dim, "derived_dim": derived.dim,
            "center_dim": center(L).dim, "nilpotent": is_nilpotent(L)}


def koszul_block(L: LieAlgebra) -> Dict[str, Any]:
    r = koszul_analyze(L)
    identities = []
    for phi, gamma in zip(r.ImI_basis, r.exact_witnesses or []):
        identities.append(f"{format_form(phi)} = d({format_form(gamma)})")
    return {
        "forms_dim": r.forms_dim,
        "dim_ker_I": r.dim_ker_I,
        "dim_Im_I": r.dim_Im_I,
        "I_null": r.is_I_null,
        "I_exact": r.is_I_exact,
        "quadratic": r.is_quadratic,
        "quadratic_method": r.quadratic_method,
        "Im_I_basis": [format_form(phi) for phi in r.ImI_basis],
        "exact_witnesses": identities,
        "nondegenerate_form": r.quadratic_witness.text() if r.quadratic_witness is not None else None,
    }


def betti_block(L: LieAlgebra, coefficients: str) -> Dict[str, Any]:
    try:
        numbers = betti(L, coefficients)
    except BettiTooLarge:
        raise CliError(EXIT_REFUSED, f"Betti numbers are limited to dimension <= {MAX_BETTI_DIM} (got {L.dim})") from None
    return {"coefficients": coefficients, "numbers": list(numbers)}


def leibniz_block(L: LieAlgebra) -> Dict[str, Any]:
    r = leibniz_report(L)
    return {"center_dim": r.center_dim, "dim_ker_I": r.dim_ker_I, "zl2_0_dim": r.zl2_0_dim,
            "coupled_dim": r.coupled_dim, "uncoupling": r.uncoupling, "h2_adjoint": r.h2_adjoint,
            "hl2_dim": r.hl2_dim}


def default_generators(L: LieAlgebra) -> List[int]:
    """Greedy choice of basis vectors spanning a complement of ``[g, g]`` (0-based)."""
    from .exactla import span
    chosen: List[int] = []
    current = list(derived_subalgebra(L).basis)
    for i in range(L.dim):
        trial = current + [L.basis_vector(i)]
        if len(span(trial, L.dim)) > len(current):
            chosen.append(i)
            current = span(trial, L.dim)
    return chosen


def _parse_index_list(text: str) -> List[int]:
    try:
        return [int(t) - 1 for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise CliError(EXIT_INPUT, f"bad index list {text!r}") from None


def _parse_weights(text: str) -> List[Tuple[Fraction, ...]]:
    try:
        return [tuple(Fraction(c) for c in w.split(",")) for w in text.replace(" ", "").split(";") if w]
    except ValueError:
        raise CliError(EXIT_INPUT, f"bad weight list {text!r}") from None


def gcm_block(L: LieAlgebra, generators: Optional[Sequence[int]], weights=None) -> Dict[str, Any]:
    gens = list(generators) if generators is not None else default_generators(L)
    try:
        A = compute_gcm(L, gens, weights=weights)
    except DegenerateWeights as exc:
        raise CliError(EXIT_WEIGHTS, f"degenerate weights: {exc}") from None
    except (NotNilpotent, GeneratorsNotComplementary, ValueError, IndexError) as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    return {"generators": [g + 1 for g in gens], "matrix": format_matrix(A), "type": classify(A).tag}


# -- subcommands -----------------------------------------------------------------

def cmd_analyze(args) -> int:
    L = load_algebra(args.source)
    doc: Dict[str, Any] = {"input": {"source": args.source, "name": L.name}}
    doc["structure"] = structure_block(L)
    doc["koszul"] = koszul_block(L)
    if args.betti:
        doc["betti"] = betti_block(L, args.betti)
    if args.leibniz:
        doc["leibniz"] = leibniz_block(L)
    _emit(doc, args.json)
    return 0


def cmd_roots(args) -> int:
    t, n = _root_type(args.type, args.rank)
    rs = rootkit.build_root_system(t, n)
    doc: Dict[str, Any] = {"type": rs.name, "positive_roots": len(rs.positive_roots),
                           "cartan_matrix": format_matrix(rs.cartan_matrix())}
    text = [f"{rs.name}: {len(rs.positive_roots)} positive roots", f"cartan matrix: {doc['cartan_matrix']}"]
    if args.list:
        doc["roots"] = [list(c) for c in rs.coefficients]
        text += [" ".join(map(str, c)) for c in rs.coefficients]
    if args.check_P:
        w = rootkit.property_P(rs)
        doc["property_P"] = {"holds": w is None, "witness": [list(r) for r in w] if w else None}
        verdict = "holds" if w is None else "fails (alpha, beta, gamma = " + ", ".join(
            "(" + ",".join(map(str, r)) + ")" for r in w) + ")"
        text[0] += f"; property (P): {verdict}"
    _emit(doc, args.json, text)
    return 0


def _algebra_report(L: LieAlgebra, args, extra: Dict[str, Any]) -> int:
    doc: Dict[str, Any] = dict(extra)
    doc["dim"] = L.dim
    text = [f"{L.name}: dim {L.dim}"]
    if getattr(args, "relations", False):
        from .liealg import to_relations
        doc["relations"] = to_relations(L)
        text.append(doc["relations"])
    if args.check_inull:
        k = koszul_block(L)
        doc["koszul"] = k
        text[0] = f"dim {L.dim}; I-null: {_yes(k['I_null'])}"
        if not k["I_null"]:
            text.append("Im I: " + "; ".join(k["Im_I_basis"]))
    _emit(doc, args.json, text)
    return 0


def cmd_nilradical(args) -> int:
    t, n = _root_type(args.type, args.rank)
    nil = rootkit.nilradical(t, n)
    extra = {"type": nil.root_system.name, "ideal_chain": rootkit.ideal_chain_holds(nil)}
    return _algebra_report(nil.algebra, args, extra)


def cmd_borel(args) -> int:
    t, n = _root_type(args.type, args.rank)
    return _algebra_report(rootkit.borel(t, n), args, {"type": f"{t}{n}"})


def cmd_gcm(args) -> int:
    L = load_algebra(args.source)
    gens = _parse_index_list(args.generators) if args.generators else None
    weights = _parse_weights(args.weights) if args.weights else None
    doc = gcm_block(L, gens, weights)
    _emit(doc, args.json, [f"{doc['matrix']} {doc['type']}"])
    return 0


def cmd_cohomology(args) -> int:
    L = load_algebra(args.source)
    if args.degree is not None:
        if not 0 <= args.degree <= L.dim:
            raise CliError(EXIT_INPUT, f"degree must be between 0 and {L.dim}")
        doc = {"coefficients": args.coefficients, "degree": args.degree,
               "dim": cohomology_dim(L, args.degree, args.coefficients)}
        _emit(doc, args.json, [f"dim H^{args.degree}({L.name}, {args.coefficients}) = {doc['dim']}"])
        return 0
    doc = betti_block(L, args.coefficients)
    _emit(doc, args.json, [f"{args.coefficients} Betti numbers of {L.name}: " + " ".join(map(str, doc["numbers"]))])
    return 0


def cmd_list(args) -> int:
    rows = []
    for name in catalog.FIXED_INSTANCES:
        facts = catalog.expected(name)
        rows.append({"name": name, "dim": facts.get("dim") if "dim" in facts else catalog.get(name).dim,
                     "facts": sorted(k for k in facts if k != "slow")})
    families = {n: catalog.describe(n) for n in catalog.names()}
    doc = {"instances": rows, "families": families}
    text = [f"{r['name']:<16} dim {r['dim']:<4} {', '.join(r['facts']) or '-'}" for r in rows]
    text += ["", "families:"] + [f"  {n:<12} {d}" for n, d in families.items()]
    _emit(doc, args.json, text)
    return 0


# -- report-tables -----------------------------------------------------------------

KOSZUL_KEYS = ("dim", "forms_dim", "dim_Im_I", "I_null", "I_exact", "quadratic", "nilpotent")


def _parse_expectations(text: str) -> Dict[str, Any]:
    """``# expect key=value ...`` comment lines of a relations file."""
    out: Dict[str, Any] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line.startswith("#"):
            continue
        body = line.lstrip("#").strip()
        if not body.startswith("expect"):
            continue
        for item in body[len("expect"):].split():
            key, _, value = item.partition("=")
            low = value.lower()
            if low in ("true", "yes"):
                out[key] = True
            elif low in ("false", "no"):
                out[key] = False
            elif value.lstrip("-").isdigit():
                out[key] = int(value)
            else:
                out[key] = value
    if "gcm" in out:
        gens = out.pop("generators", None)
        out["gcm"] = {"type": out["gcm"], "generators": [int(g) for g in str(gens).split(",")] if gens else None}
    return out


def _compare_row(label: str, L: LieAlgebra, facts: Dict[str, Any]) -> List[Dict[str, Any]]:
    cells = []
    wanted = [k for k in KOSZUL_KEYS if k in facts]
    computed: Dict[str, Any] = {}
    if any(k not in ("dim", "nilpotent") for k in wanted):
        computed.update(koszul_block(L))
    computed.update(structure_block(L))
    for key in wanted:
        cells.append({"algebra": label, "check": key, "expected": facts[key], "computed": computed[key],
                      "status": "PASS" if computed[key] == facts[key] else "FAIL"})
    if "gcm" in facts:
        g = facts["gcm"]
        gens = [i - 1 for i in g["generators"]] if g.get("generators") else None
        try:
            got = gcm_block(L, gens)["type"]
        except CliError as exc:
            got = f"error: {exc}"
        cells.append({"algebra": label, "check": "gcm", "expected": g["type"], "computed": got,
                      "status": "PASS" if got == g["type"] else "FAIL"})
    if "adjoint_betti" in facts:
        got = tuple(betti(L, ADJOINT))
        cells.append({"algebra": label, "check": "adjoint_betti", "expected": tuple(facts["adjoint_betti"]),
                      "computed": got, "status": "PASS" if got == tuple(facts["adjoint_betti"]) else "FAIL"})
    if not cells:
        cells.append({"algebra": label, "check": "-", "expected": None, "computed": None,
                      "status": "CONDITIONAL"})
    return cells


def report_rows(extra: Optional[Path] = None, slow: bool = False) -> List[Dict[str, Any]]:
    rows: List[Dict[str, Any]] = []
    for name in sorted(catalog.FIXED_INSTANCES):
        facts = catalog.expected(name)
        if not facts or (facts.get("slow") and not slow):
            continue
        rows.extend(_compare_row(name, catalog.get(name), facts))
    if extra is not None:
        for path in sorted(extra.iterdir()):
            if not path.is_file() or path.name.startswith("."):
                continue
            text = path.read_text()
            try:
                L = from_relations(text)
            except (ParseError, JacobiError) as exc:
                rows.append({"algebra": path.name, "check": "parse", "expected": "valid", "computed": str(exc),
                             "status": "FAIL"})
                continue
            rows.extend(_compare_row(path.name, L, _parse_expectations(text)))
    return rows


def cmd_report_tables(args) -> int:
    extra = Path(args.extra) if args.extra else None
    if extra is not None and not extra.is_dir():
        raise CliError(EXIT_INPUT, f"{args.extra} is not a directory")
    rows = report_rows(extra, args.slow)
    failures = sum(r["status"] == "FAIL" for r in rows)
    doc = {"rows": rows, "failures": failures}
    text = [f"{r['status']:<11} {r['algebra']:<22} {r['check']:<14} expected={_text(r['expected'])} "
            f"computed={_text(r['computed'])}" for r in rows]
    text.append(f"{len(rows)} checks, {failures} failed")
    _emit(doc, args.json, text)
    return EXIT_FAIL if failures else 0


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liekoszul", description="Koszul map, cohomology and root-system tools.")
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit one JSON document")
        s.set_defaults(func=func)
        return s

    s = add("analyze", cmd_analyze, "Koszul analysis of a relations file or catalog algebra")
    s.add_argument("source")
    s.add_argument("--betti", choices=(TRIVIAL, ADJOINT))
    s.add_argument("--leibniz", action="store_true")

    for name, func, help_text in (("roots", cmd_roots, "positive roots of a root system"),
                                  ("nilradical", cmd_nilradical, "nilradical of a Borel subalgebra"),
                                  ("borel", cmd_borel, "Borel subalgebra")):
        s = add(name, func, help_text)
        s.add_argument("type", help="A..G, optionally with the rank attached (E6)")
        s.add_argument("rank", nargs="?", type=int)
        if name == "roots":
            s.add_argument("--check-P", dest="check_P", action="store_true")
            s.add_argument("--list", action="store_true")
        else:
            s.add_argument("--check-inull", dest="check_inull", action="store_true")
            s.add_argument("--relations", action="store_true")

    s = add("gcm", cmd_gcm, "generalized Cartan matrix and its type")
    s.add_argument("source")
    s.add_argument("--generators", help="1-based basis indices, e.g. 1,2")
    s.add_argument("--weights", help="one weight per basis vector, e.g. '1,0;0,1;1,1'")

    s = add("cohomology", cmd_cohomology, "Chevalley-Eilenberg cohomology dimensions")
    s.add_argument("source")
    s.add_argument("--coefficients", choices=(TRIVIAL, ADJOINT), default=TRIVIAL)
    s.add_argument("--degree", type=int)

    add("list", cmd_list, "catalog contents")

    s = add("report-tables", cmd_report_tables, "recompute recorded verdicts and compare")
    s.add_argument("--extra", help="directory of relations files with '# expect key=value' lines")
    s.add_argument("--slow", action="store_true", help="include the E7 and E8 nilradicals")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
