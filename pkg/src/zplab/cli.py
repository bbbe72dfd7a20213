"""Command-line front end: arc figures, unitary ensembles, zero-table scans.

Commands:

* ``zplab arc``: zeros and derivative zeros of an equally spaced arc
  configuration, as CSV plus an unrolled-plane SVG scatter.
* ``zplab cue``: pooled ensemble gap/radial statistics with power-law fit
  reports.
* ``zplab zeta {gaps,msum,filter,dzeros,residuals,hypothesis}``: statistics of
  an ordinate table, including the cached derivative-zero records.

Exit codes: 0 success, 2 usage or domain error, 3 data coverage error,
4 numerical failure.  Outputs are deterministic: identical inputs and
configuration produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import cue, derivzeros, gapstats, polyzeros, runconfig, svgplot
from .errors import (CoverageError, DomainError, NumericalError,
                     TableParseError, ZplabError)
from .zerotable import (FilterConfig, ZeroTable, gap_lambda_values,
                        load_zero_table, m_window_sum, wellspaced_filter)
from .zeta import DEFAULT_CONFIG


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zplab", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--out", help="output directory (default: out)")
        p.add_argument("--cache", help="cache directory (default: $ZPL_CACHE or OUT/cache)")
        p.add_argument("--eps", type=float, help="neighbor-gap constant")
        p.add_argument("--cstar", type=float, help="truncation window constant (> 1)")
        p.add_argument("--c", type=float, help="count-discrepancy constant")
        p.add_argument("--a", type=float, help="evaluation-offset constant")

    p_arc = sub.add_parser("arc", help="arc configuration figures")
    common(p_arc)
    p_arc.add_argument("--degree", type=int, help="number of zeros on the arc")
    p_arc.add_argument("--arc", help="arc as LO:HI radians (accepts pi tokens)")

    p_cue = sub.add_parser("cue", help="random-unitary ensemble statistics")
    common(p_cue)
    p_cue.add_argument("--dim", type=int, help="matrix dimension (<= 256)")
    p_cue.add_argument("--samples", type=int, help="ensemble size (>= 1)")
    p_cue.add_argument("--seed", type=int, help="base seed")
    p_cue.add_argument("--fit", help="gap-CDF fit window LO:HI")
    p_cue.add_argument("--fit-prime", dest="fit_prime", help="radial-CDF fit window LO:HI")

    p_z = sub.add_parser("zeta", help="zero-table statistics")
    common(p_z)
    p_z.add_argument("subcommand", choices=["gaps", "msum", "filter", "dzeros",
                                            "residuals", "hypothesis"])
    p_z.add_argument("--table", help="ordinate table path")
    p_z.add_argument("--range", dest="trange", help="height range T0:T1")
    p_z.add_argument("--index", type=int, help="1-based center index for msum")
    p_z.add_argument("--inner", type=float, help="inner window cutoff for msum")
    p_z.add_argument("--outer", type=float, help="outer window cutoff for msum")
    p_z.add_argument("--nu", type=float, help="threshold for hypothesis counts")
    return parser


def merge_config(args: argparse.Namespace) -> runconfig.RunConfig:
    cfg = runconfig.RunConfig(command=args.command)
    if getattr(args, "config", None):
        runconfig.apply_config_values(cfg, runconfig.read_config_file(args.config))
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        if key in ("trange", "arc", "fit", "fit_prime") and isinstance(value, str):
            value = runconfig.parse_pair(value)
        setattr(cfg, key, value)
    if args.command == "zeta":
        cfg.subcommand = args.subcommand
    return cfg


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def cmd_arc(cfg: runconfig.RunConfig) -> int:
    if not 2 <= cfg.degree <= 1024:
        raise DomainError("degree must be in [2, 1024]")
    config = polyzeros.build_arc_config(cfg.degree, cfg.arc[0], cfg.arc[1])
    deriv_roots = polyzeros.config_critical_points(config)
    unrolled = polyzeros.unroll(deriv_roots, cfg.degree)
    meta = runconfig.metadata_lines(cfg, {})
    out = Path(cfg.out)
    n = cfg.degree

    rows = [f"{k + 1},{a:.12g}" for k, a in enumerate(config.angles)]
    _write(out / f"arc_N{n}_zeros.csv", runconfig.csv_text(meta, "k,angle", rows))

    lam = polyzeros.poly_radial_lambdas(deriv_roots, n)
    rows = [f"{z.real:.12g},{z.imag:.12g},{v:.12g}" for z, v in zip(deriv_roots, lam)]
    _write(out / f"arc_N{n}_deriv_zeros.csv",
           runconfig.csv_text(meta, "re,im,radial_lambda", rows))

    rows = [f"{u.theta:.12g},{u.radius:.12g},{u.normalized_radial:.12g},{u.display_height:.12g}"
            for u in unrolled]
    _write(out / f"arc_N{n}_unrolled.csv",
           runconfig.csv_text(meta, "theta,radius,normalized_radial,display_height", rows))

    svg = svgplot.svg_scatter(
        [svgplot.Series("zeros", "square", config.angles, np.zeros(n)),
         svgplot.Series("derivative zeros", "dot",
                        np.array([u.theta for u in unrolled]),
                        np.array([u.display_height for u in unrolled]))],
        title=f"unrolled arc configuration, N={n}", meta=meta)
    _write(out / f"arc_N{n}_unrolled.svg", svg)
    return 0


def cmd_cue(cfg: runconfig.RunConfig) -> int:
    if cfg.samples < 1:
        raise DomainError("samples must be >= 1")
    if not 2 <= cfg.dim <= cue.MAX_DIMENSION:
        raise DomainError(f"dim must be in [2, {cue.MAX_DIMENSION}]")
    res = cue.ensemble_statistics(cfg.dim, cfg.samples, cfg.seed)
    meta = runconfig.metadata_lines(cfg, {})
    out = Path(cfg.out)
    stem = f"cue_N{cfg.dim}_S{cfg.samples}"

    _write(out / f"{stem}_gap_lambdas.csv",
           runconfig.csv_text(meta, "gap_lambda",
                              [f"{v:.12g}" for v in res.gap_lambdas]))
    _write(out / f"{stem}_radial_lambdas.csv",
           runconfig.csv_text(meta, "radial_lambda",
                              [f"{v:.12g}" for v in res.radial_lambdas]))

    windows = {"gaps": (cfg.fit or (0.5, 2.0), res.gap_lambdas),
               "radial": (cfg.fit_prime or (0.3, 1.5), res.radial_lambdas)}
    for name, (window, data) in windows.items():
        fit = gapstats.fit_exponent(gapstats.empirical_cdf(data), window[0], window[1])
        payload = {"kappa": fit.kappa, "alpha": fit.alpha,
                   "nu_lo": fit.nu_lo, "nu_hi": fit.nu_hi,
                   "rms_residual": fit.rms_residual,
                   "window_samples": fit.window_samples}
        _write(out / f"{stem}_fit_{name}.json", runconfig.json_text(meta, payload))
    return 0


def _load_table(cfg: runconfig.RunConfig) -> ZeroTable:
    if not cfg.table:
        raise DomainError("--table is required for zeta commands")
    return load_zero_table(cfg.table)


def cmd_zeta(cfg: runconfig.RunConfig) -> int:
    table = _load_table(cfg)
    meta = runconfig.metadata_lines(cfg, {"table": table.content_digest})
    out = Path(cfg.out)
    sub = cfg.subcommand

    if sub == "gaps":
        lam = gap_lambda_values(table)
        g = table.ordinates[:-1]
        if cfg.trange:
            mask = (g >= cfg.trange[0]) & (g <= cfg.trange[1])
        else:
            mask = np.ones(g.size, dtype=bool)
        rows = [f"{j + 1},{g[j]:.12g},{lam[j]:.12g}" for j in np.nonzero(mask)[0]]
        _write(out / "zeta_gaps.csv", runconfig.csv_text(meta, "j,gamma,lambda", rows))
        return 0

    if sub == "msum":
        value = m_window_sum(table, cfg.index, cfg.inner, cfg.outer)
        rows = [f"{cfg.index},{table.gamma(cfg.index):.12g},{cfg.inner:.12g},"
                f"{cfg.outer:.12g},{value:.12g}"]
        _write(out / "zeta_msum.csv",
               runconfig.csv_text(meta, "j,gamma,inner,outer,value", rows))
        return 0

    trange = cfg.trange or (10.0, 200.0)
    filter_cfg = FilterConfig(eps=cfg.eps, c_star=cfg.cstar, c=cfg.c, a=cfg.a,
                              height=trange[1])

    if sub == "filter":
        idx = wellspaced_filter(table, filter_cfg)
        candidates = int(np.searchsorted(table.ordinates, trange[1], side="right"))
        rows = [f"{int(j)},{table.gamma(int(j)):.12g}" for j in idx]
        _write(out / "zeta_filter.csv", runconfig.csv_text(meta, "j,gamma", rows))
        _write(out / "zeta_filter.json", runconfig.json_text(meta, {
            "candidates": candidates, "passing": int(idx.size),
            "fraction": idx.size / candidates if candidates else 0.0}))
        return 0

    records, from_cache = derivzeros.cached_deriv_zeros(
        table, trange[0], trange[1], cfg.cache_dir(), DEFAULT_CONFIG, filter_cfg)

    if sub == "dzeros":
        _write(out / "zeta_dzeros.csv",
               "\n".join(f"# {m}" for m in meta) + "\n" + derivzeros.records_to_csv(records))
        return 0

    if sub == "residuals":
        ws = set(wellspaced_filter(table, filter_cfg).tolist())
        rows = [f"{r.gamma_prime:.12g},{r.gamma_c:.12g},{r.case_tag},"
                f"{r.moment_residual:.12g},{int(r.paired_index in ws)}"
                for r in records]
        _write(out / "zeta_residuals.csv",
               runconfig.csv_text(meta, "gamma_prime,gamma_c,case,moment_residual,wellspaced",
                                  rows))
        return 0

    if sub == "hypothesis":
        hc = gapstats.hypothesis_count(records, cfg.nu, trange[1])
        _write(out / "zeta_hypothesis.json", runconfig.json_text(meta, {
            "nu": hc.nu, "height": hc.height, "count": hc.count,
            "implied_c": hc.implied_c if hc.implied_c != float("inf") else "inf"}))
        return 0

    raise DomainError(f"unknown zeta subcommand {sub!r}")


DISPATCH = {"arc": cmd_arc, "cue": cmd_cue, "zeta": cmd_zeta}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = merge_config(args)
        return DISPATCH[cfg.command](cfg)
    except (DomainError, TableParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CoverageError as exc:
        missing = f" (needed: {exc.needed})" if exc.needed else ""
        print(f"coverage error: {exc}{missing}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
