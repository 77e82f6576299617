"""c(h) for the three kernels next to the ranged asymptotics.

    python3 scripts/clustering_curve.py --n 1e6 --tau 2.5 --out results/curve
"""
import argparse
from pathlib import Path

import numpy as np

from clusterspec.analytic import analytic_curve, c_asymptotic
from clusterspec.appio import write_table
from clusterspec.model import derive_params


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=float, default=1e6)
    ap.add_argument("--tau", type=float, default=2.5)
    ap.add_argument("--points", type=int, default=80)
    ap.add_argument("--out", default="results/curve")
    args = ap.parse_args()
    p = derive_params(int(args.n), args.tau)
    h = np.geomspace(1.0, p.h_c, args.points)
    cols = {"h": h}
    for kernel in ("min", "rational", "exp"):
        cur = analytic_curve(p, kernel, h=h)
        cols[f"c_{kernel}"] = cur.c
    cols["c_asymptotic"], cols["regime"] = c_asymptotic(p, h)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_table(cols, out / f"curve_n{int(args.n)}_tau{args.tau:g}.csv")
    print(f"h_s^2/h_c = {p.h_flat_end:.4g}, h_s = {p.h_s:.4g}, h_c = {p.h_c:.4g}")
    for kernel in ("min", "rational", "exp"):
        print(f"{kernel:>8}: c(1) = {cols['c_' + kernel][0]:.5g}, c(h_c) = {cols['c_' + kernel][-1]:.5g}")


if __name__ == "__main__":
    main()
