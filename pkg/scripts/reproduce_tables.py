"""Recompute the Koszul and GCM verdicts stored in the catalog and the reference type table.

    python3 scripts/reproduce_tables.py [--slow]
"""
import argparse
import json
import sys
from pathlib import Path

from liekoszul.cli import report_rows
from liekoszul.gcm import classify

TYPE_TABLE = Path(__file__).resolve().parent.parent / "tests" / "data" / "kac_moody_types.json"


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--slow", action="store_true", help="include E7+ and E8+")
    args = ap.parse_args()

    rows = report_rows(slow=args.slow)
    bad = [r for r in rows if r["status"] == "FAIL"]
    print(f"catalog verdicts: {len(rows) - len(bad)}/{len(rows)} PASS")
    for r in bad:
        print(f"  FAIL {r['algebra']} {r['check']}: expected {r['expected']}, computed {r['computed']}")

    table = json.loads(TYPE_TABLE.read_text())
    mismatches = [(r["algebra"], r["type"], classify(r["gcm"]).tag) for r in table
                  if classify(r["gcm"]).tag != r["type"]]
    counts = {}
    for r in table:
        kind = classify(r["gcm"]).kind
        counts[kind] = counts.get(kind, 0) + 1
    print(f"GCM type table: {len(table) - len(mismatches)}/{len(table)} rows reproduced")
    for kind, k in sorted(counts.items()):
        print(f"  {kind:<28} {k}")
    for name, want, got in mismatches:
        print(f"  MISMATCH {name}: table {want}, computed {got}")
    return 1 if bad or mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
