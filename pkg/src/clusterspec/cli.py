"""Command-line entry point: ``clusterspec <subcommand> [options]``."""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import analytic as an
from .appio import RunConfig, parse_seeds, read_edge_list, write_edge_list, write_table
from .errors import AccuracyError, ResourceError
from .experiments import ECM_DEGREE_LAWS, compare_hidden_ecm, ecm_degrees
from .fit import fit_degree_tail, fit_spectrum_exponent, gof_pvalue, with_pvalue
from .graphgen import generate_ecm, generate_hidden_variable
from .model import derive_params, regime_boundaries
from .spectrum import clustering_spectrum, degree_ccdf, log_bin_spectrum

log = logging.getLogger("clusterspec")


def _int_like(text: str) -> int:
    """Accept ``100000`` as well as ``1e5``."""
    value = float(text)
    if not math.isfinite(value) or value != int(value):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _common(p: argparse.ArgumentParser, model=False, kernel=True, seeds=False):
    p.add_argument("--n", type=_int_like, default=10**5, help="number of vertices")
    p.add_argument("--tau", type=float, default=2.5, help="power-law exponent in (2, 3)")
    if kernel:
        p.add_argument("--kernel", choices=["min", "rational", "exp"], default="min")
    if model:
        p.add_argument("--model", choices=["hidden", "ecm"], default="hidden")
    if seeds:
        p.add_argument("--seeds", default="0", help="first seed, 'a:b' range or comma list")
        p.add_argument("--realizations", type=int, default=100)
    p.add_argument("--out", default=".", help="output directory")


def _config(args) -> RunConfig:
    cfg = RunConfig(command=args.command, model=getattr(args, "model", "hidden"), n=args.n, tau=args.tau,
                    kernel=getattr(args, "kernel", "min"), out=args.out,
                    realizations=getattr(args, "realizations", 1),
                    bin_factor=getattr(args, "bin_factor", None) or 1.5, tol=getattr(args, "tol", 1e-8))
    if hasattr(args, "seeds"):
        cfg.seeds = parse_seeds(args.seeds, cfg.realizations)
    Path(cfg.out).mkdir(parents=True, exist_ok=True)
    return cfg.validate()


def _dump_json(obj, path: Path):
    path.write_text(json.dumps(obj, indent=1) + "\n", encoding="utf-8")
    log.info("wrote %s", path)


def cmd_generate(args):
    cfg = _config(args)
    params = derive_params(cfg.n, cfg.tau)
    out = Path(cfg.out)
    for s in cfg.seeds:
        if cfg.model == "hidden":
            g, rep, _ = generate_hidden_variable(params, cfg.kernel, s)
        else:
            g, rep = generate_ecm(ecm_degrees(params, s, args.ecm_degrees), s)
        path = out / f"{cfg.model}_n{cfg.n}_tau{cfg.tau:g}_seed{s}.edges"
        write_edge_list(g, path)
        log.info("seed %d: n=%d m=%d erased loops=%d multi=%d -> %s", s, g.n, g.m,
                 rep.self_loops_erased, rep.multi_edges_erased, path)
    return 0


def cmd_spectrum(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for src in args.edges:
        g, rep = read_edge_list(src, with_report=True)
        log.info("%s: %d lines, %d loops dropped, %d duplicates collapsed", src, rep.lines_read,
                 rep.loops_dropped, rep.duplicates_collapsed)
        stem = Path(src).stem
        table = clustering_spectrum(g)
        write_table(table, out / f"{stem}_spectrum.csv")
        if args.bin_factor:
            write_table(log_bin_spectrum(table, args.bin_factor), out / f"{stem}_spectrum_binned.csv")
        write_table(degree_ccdf(g), out / f"{stem}_ccdf.csv")
    return 0


def cmd_analytic(args):
    cfg = _config(args)
    params = derive_params(cfg.n, cfg.tau)
    out = Path(cfg.out)
    curve = an.analytic_curve(params, cfg.kernel, points=args.points, tol=cfg.tol)
    cols = curve.columns()
    cols["c_asymptotic"] = an.c_asymptotic(params, curve.h)[0]
    write_table(cols, out / "curve.csv")
    t = np.linspace(0.0, 1.0 / (cfg.tau - 1.0), args.points)
    write_table({"t": t,
                 "sigma_at_hc": an.sigma_n(params, cfg.kernel, t, "at_hc", tol=cfg.tol),
                 "sigma_at_zero": an.sigma_n(params, cfg.kernel, t, "at_zero", tol=cfg.tol),
                 "sigma_limit": an.sigma_limit(cfg.tau, t)}, out / "sigma.csv")
    reg = regime_boundaries(params)
    _dump_json({"N": params.N, "tau": params.tau, "mean_h": params.mean_h, "h_s": params.h_s,
                "h_c": params.h_c, "h_flat_end": reg.h_flat_end, "alpha": reg.alpha}, out / "regimes.json")
    return 0


def cmd_slopes(args):
    records = []
    for n in args.n:
        params = derive_params(n, args.tau)
        records.append({
            "N": n, "tau": args.tau,
            "slope_at_hc": an.slope_at_hc(params),
            "numeric_at_hc": an.slope_numeric(params, "min", 1.0 / (args.tau - 1.0), args.dt),
            "limit_at_hc": an.slope_limit(args.tau, "at_hc"),
            "slope_at_half": an.slope_at_half(params),
            "numeric_at_half": an.slope_numeric(params, "min", 0.5, args.dt),
            "limit_at_half": an.slope_limit(args.tau, "at_half"),
        })
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _dump_json(records, out / "slopes.json")
    return 0


def cmd_mix(args):
    cfg = _config(args)
    params = derive_params(cfg.n, cfg.tau)
    k_max = args.k_max or int(params.h_c)
    k = np.unique(np.geomspace(2, k_max, args.points).astype(np.int64))
    write_table({"k": k, "P_k": an.degree_prob(params, k), "cbar": an.cbar_from_ch(params, cfg.kernel, k, cfg.tol)},
                Path(cfg.out) / "mix.csv")
    return 0


def cmd_compare(args):
    cfg = _config(args)
    params = derive_params(cfg.n, cfg.tau)
    res = compare_hidden_ecm(params, cfg.seeds, bin_factor=cfg.bin_factor, min_count=args.min_count,
                             degree_law=args.ecm_degrees, kernel=cfg.kernel)
    out = Path(cfg.out)
    write_table(res, out / "compare.csv")
    worst = float(np.max(np.abs(res.rel_diff))) if len(res.k) else float("nan")
    _dump_json({"realizations": len(cfg.seeds), "bins": int(len(res.k)), "max_abs_rel_diff": worst,
                "erased_fraction": res.erased_fraction, "ecm_degrees": args.ecm_degrees}, out / "compare.json")
    return 0


def cmd_fit(args):
    g = read_edge_list(args.edges)
    deg = g.degrees()
    fit = fit_degree_tail(deg[deg > 0])
    if args.replicates:
        fit = with_pvalue(fit, gof_pvalue(deg[deg > 0], fit, args.replicates, args.seed))
    record = json.loads(fit.to_json())
    table = clustering_spectrum(g)
    k_min = args.k_min if args.k_min else math.sqrt(deg.sum())  # structural cutoff sqrt(N<k>)
    try:
        record["alpha"] = fit_spectrum_exponent(table, k_min)
    except ValueError as exc:
        record["alpha"] = None
        log.warning("alpha not estimated: %s", exc)
    record["alpha_k_min"] = k_min
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _dump_json(record, out / f"{Path(args.edges).stem}_fit.json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clusterspec", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="model graphs to edge lists")
    _common(p, model=True, seeds=True)
    p.set_defaults(realizations=1)
    p.add_argument("--ecm-degrees", choices=ECM_DEGREE_LAWS, default="powerlaw")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("spectrum", help="edge list to cbar(k) and degree CCDF tables")
    p.add_argument("edges", nargs="+")
    p.add_argument("--bin-factor", type=float, default=None)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("analytic", help="c(h), sigma_N(t) and range boundaries")
    _common(p)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("slopes", help="exact and finite-difference slopes of sigma_N")
    p.add_argument("--n", type=_int_like, nargs="+", default=[10**6])
    p.add_argument("--tau", type=float, default=2.25)
    p.add_argument("--dt", type=float, default=1e-6)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_slopes)

    p = sub.add_parser("mix", help="Poisson-mixed cbar(k) from c(h)")
    _common(p)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_mix)

    p = sub.add_parser("compare", help="averaged hidden-variable vs ECM spectra")
    _common(p, kernel=False, seeds=True)
    p.add_argument("--kernel", choices=["min", "rational", "exp"], default="exp")
    p.add_argument("--bin-factor", type=float, default=1.5)
    p.add_argument("--min-count", type=int, default=50)
    p.add_argument("--ecm-degrees", choices=ECM_DEGREE_LAWS, default="powerlaw")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("fit", help="degree tail exponent, bootstrap p-value and spectrum exponent")
    p.add_argument("edges")
    p.add_argument("--replicates", type=int, default=100, help="bootstrap replicates (0 to skip)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k-min", type=float, default=None, help="lower degree for the alpha fit")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError, AccuracyError, ResourceError) as exc:
        print(f"clusterspec {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
