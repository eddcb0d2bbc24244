"""HL² decomposition for small catalog algebras, checked against the full Leibniz complex.

    python3 scripts/leibniz_survey.py
"""
from liekoszul import catalog
from liekoszul.leibniz import hl2_direct, leibniz_report

NAMES = ["heisenberg:3", "filiform:4", "filiform:5", "g54", "diamond", "g618", "g724", "free2step:3",
         "nilradical:A:3", "borel:A:2"]
DIRECT_LIMIT = 6


def main():
    print(f"{'algebra':<16}{'dim':>4}{'c':>3}{'kerI':>6}{'ZL2_0':>7}{'C':>4}{'H2':>5}{'HL2':>6}  direct")
    for name in NAMES:
        L = catalog.get(name)
        r = leibniz_report(L)
        direct = hl2_direct(L) if L.dim <= DIRECT_LIMIT else None
        check = "-" if direct is None else ("ok" if direct == r.hl2_dim else f"MISMATCH {direct}")
        print(f"{name:<16}{L.dim:>4}{r.center_dim:>3}{r.dim_ker_I:>6}{r.zl2_0_dim:>7}{r.coupled_dim:>4}"
              f"{r.h2_adjoint:>5}{r.hl2_dim:>6}  {check}")


if __name__ == "__main__":
    main()
