"""Property (P) and I-nullity of nilradicals across root-system types.

    python3 scripts/property_p_survey.py [--max-rank 6] [--inull]
"""
import argparse
import time

from liekoszul import rootkit
from liekoszul.koszul import is_I_null


def types(max_rank):
    for t, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 2)):
        for n in range(lo, max_rank + 1):
            yield t, n
    for k in ("G2", "F4", "E6", "E7", "E8"):
        yield k, None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-rank", type=int, default=6)
    ap.add_argument("--inull", action="store_true", help="also run the Koszul analysis (E8 takes ~20 s)")
    args = ap.parse_args()
    print(f"{'type':<6}{'|Δ+|':>6}  {'(P)':<44}{'I-null':>8}{'sec':>7}")
    for t, n in types(args.max_rank):
        rs = rootkit.build_root_system(t, n)
        w = rootkit.property_P(rs)
        verdict = "holds" if w is None else "fails " + " ".join("".join(map(str, r)) for r in w)
        inull, secs = "", ""
        if args.inull:
            start = time.time()
            inull = "yes" if is_I_null(rootkit.nilradical(t, n).algebra) else "NO"
            secs = f"{time.time() - start:.1f}"
        print(f"{rs.name:<6}{len(rs.positive_roots):>6}  {verdict:<44}{inull:>8}{secs:>7}")


if __name__ == "__main__":
    main()
