"""Degree-tail and spectrum exponents for edge-list files (or a generated graph).

    python3 scripts/fit_pipeline.py data/*.edges
    python3 scripts/fit_pipeline.py --generate 1e5 --tau 2.5
"""
import argparse
import math

from clusterspec.appio import read_edge_list
from clusterspec.fit import fit_degree_tail, fit_spectrum_exponent, gof_pvalue
from clusterspec.graphgen import generate_hidden_variable
from clusterspec.model import derive_params
from clusterspec.spectrum import clustering_spectrum


def report(name, g, replicates, seed):
    deg = g.degrees()
    deg = deg[deg > 0]
    fit = fit_degree_tail(deg)
    p = gof_pvalue(deg, fit, replicates, seed)
    k_min = math.sqrt(deg.sum())
    try:
        alpha = f"{fit_spectrum_exponent(clustering_spectrum(g), k_min):.3f}"
    except ValueError:
        alpha = "n/a"
    print(f"{name}: n={g.n} m={g.m} tau_hat={fit.exponent_hat:.3f} xmin={fit.xmin} "
          f"gof={p:.2f} alpha={alpha} (k >= {k_min:.0f})")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("edges", nargs="*")
    ap.add_argument("--generate", type=float, default=None, help="also fit one hidden-variable graph of this size")
    ap.add_argument("--tau", type=float, default=2.5)
    ap.add_argument("--replicates", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for path in args.edges:
        report(path, read_edge_list(path), args.replicates, args.seed)
    if args.generate:
        g, _, _ = generate_hidden_variable(derive_params(int(args.generate), args.tau), "min", args.seed)
        report(f"hidden n={int(args.generate)} tau={args.tau}", g, args.replicates, args.seed)


if __name__ == "__main__":
    main()
