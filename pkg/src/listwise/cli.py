"""``listwise`` command-line interface.

Every command writes its outputs into the directory given by ``--out``, else
``$LISTWISE_OUT_DIR``, else ``./listwise_out``, and echoes the JSON report to
stdout. Exit codes: 0 success, 2 input or configuration error, 3 when exact
enumeration is refused by the combinatorial guard.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from listwise import __version__, bounds, svgplot
from listwise import report as rep
from listwise.errors import EnumerationRefused, InputError
from listwise.groups import detect_groups
from listwise.ingest import DEFAULT_MISSING_TOKENS, IngestConfig, ingest, read_mask, write_mask
from listwise.matrix import MissingnessMatrix, profile
from listwise.subsample import SubsampleConfig, enumerate_exact, run_subsample

OUT_ENV = "LISTWISE_OUT_DIR"
DEFAULT_OUT = "listwise_out"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_REFUSED = 3

DEFAULT_BOUND_NS = (100, 1000, 10000)
DEFAULT_Q_STARS = (0.75, 0.90, 0.99)
DEFAULT_TARGETS = (0.5, 0.99)
DEFAULT_BOUND_K_MAX = 1000
# quarter-decade grid from 10 to 10**6 for the max-k curves
MAX_K_GRID = tuple(sorted({round(10 ** (i / 4)) for i in range(4, 25)}))


def _out_dir(args) -> Path:
    return Path(args.out or os.environ.get(OUT_ENV) or DEFAULT_OUT)


def _add_ingest_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("ingest")
    g.add_argument("--delimiter", default=",", help="field delimiter (default ',')")
    g.add_argument("--missing-token", action="append", dest="missing_tokens", metavar="TOKEN",
                   help="token treated as missing; repeatable (default: empty string and NA)")
    g.add_argument("--drop-col", action="append", dest="drop_cols", default=[], metavar="PATTERN",
                   help="drop columns whose name matches this glob; repeatable")
    g.add_argument("--drop-fully-missing", action="store_true",
                   help="drop columns that are missing in every row")
    g.add_argument("--no-header", action="store_true", help="first line is data, not column names")
    g.add_argument("--mask-input", action="store_true", help="INPUT is a mask sidecar file, not delimited text")


def _ingest_config(args) -> IngestConfig:
    tokens = frozenset(args.missing_tokens) if args.missing_tokens else DEFAULT_MISSING_TOKENS
    return IngestConfig(
        delimiter=args.delimiter,
        missing_tokens=tokens,
        drop_columns=tuple(args.drop_cols),
        drop_fully_missing=args.drop_fully_missing,
        has_header=not args.no_header,
    )


def _load(args) -> tuple[MissingnessMatrix, dict | None, dict]:
    if getattr(args, "mask_input", False):
        return read_mask(args.input), None, {"mask_input": True}
    cfg = _ingest_config(args)
    m, ingest_report = ingest(args.input, cfg)
    return m, ingest_report.to_dict(), cfg.to_dict()


def _emit(args, report: dict, files: dict[str, str]) -> None:
    out = _out_dir(args)
    text = rep.dumps_report(report)
    rep.write_text(out / "report.json", text)
    for name, content in files.items():
        rep.write_text(out / name, content)
    sys.stdout.write(text)


def cmd_profile(args) -> int:
    m, ingest_info, config = _load(args)
    report = rep.build_report(
        rep.provenance("profile", args.input, config, None),
        profile=profile(m), groups=detect_groups(m), ingest=ingest_info,
    )
    _emit(args, report, {})
    return EXIT_OK


def _k_grid(args, n_cols: int) -> list[int]:
    if args.k:
        return sorted(set(args.k))
    k_max = args.k_max if args.k_max is not None else min(100, n_cols)
    if k_max < 1:
        raise InputError("--k-max must be >= 1")
    return list(range(1, k_max + 1))


def cmd_simulate(args) -> int:
    m, ingest_info, config = _load(args)
    ks = _k_grid(args, m.n_cols)
    cfg = SubsampleConfig(k_values=tuple(ks), replicates=args.replicates, seed=args.seed)
    exact = [enumerate_exact(m, k) for k in ks] if args.exact else []
    result = run_subsample(m, cfg, workers=args.workers)
    config = dict(config, k_values=ks, replicates=args.replicates, exact=args.exact)
    report = rep.build_report(
        rep.provenance("simulate", args.input, config, args.seed),
        profile=profile(m), groups=detect_groups(m), ingest=ingest_info,
        subsample=result, exact=exact,
    )
    files = {"subsample.csv": rep.dumps_csv(rep.SUBSAMPLE_COLUMNS, rep.subsample_rows(result))}
    if args.svg:
        xs = [r.k for r in result.records]
        panels = [
            svgplot.Panel("Expected proportion of rows remaining", "variables selected (k)",
                          "mean surviving proportion",
                          [svgplot.Series("mean", xs, [r.mean_surviving_prop for r in result.records])]),
            svgplot.Panel("Probability all rows are lost", "variables selected (k)",
                          "P(no complete row)",
                          [svgplot.Series("probability", xs, [r.prob_all_rows_lost for r in result.records])]),
        ]
        files["subsample.svg"] = svgplot.render(panels, __version__)
    _emit(args, report, files)
    return EXIT_OK


def cmd_bounds(args) -> int:
    ns = sorted(set(args.n)) if args.n else list(DEFAULT_BOUND_NS)
    qs = sorted(set(args.q_star)) if args.q_star else list(DEFAULT_Q_STARS)
    targets = sorted(set(args.target)) if args.target else list(DEFAULT_TARGETS)
    if args.k:
        ks = sorted(set(args.k))
    else:
        k_max = args.k_max if args.k_max is not None else DEFAULT_BOUND_K_MAX
        ks = list(range(1, k_max + 1))
    for q in qs:
        bounds.BoundQuery(1, 1, q)
    for k in ks:
        bounds.BoundQuery(1, k, 0.0)
    for t in targets:
        if not 0.0 < t < 1.0:
            raise InputError(f"--target must lie strictly in (0, 1), got {t}")
    grid_ns = sorted(set(MAX_K_GRID) | set(ns))

    bk = rep.bounds_vs_k_rows(ns, qs, ks)
    mk = rep.max_k_rows(targets, qs, grid_ns)
    ex = rep.expected_rows(qs, ks)
    files = {
        "bounds_vs_k.csv": rep.dumps_csv(rep.BOUNDS_COLUMNS, bk),
        "max_k_vs_n.csv": rep.dumps_csv(rep.MAX_K_COLUMNS, mk),
        "expected_missing_vs_k.csv": rep.dumps_csv(rep.EXPECTED_COLUMNS, ex),
    }
    grid = {
        "n_values": ns,
        "q_star_values": qs,
        "k_values": ks,
        "targets": targets,
        "bounds_vs_k": rep.rows_to_records(rep.BOUNDS_COLUMNS, bk),
        "max_k_vs_n": rep.rows_to_records(rep.MAX_K_COLUMNS, mk),
        "expected_missing_vs_k": rep.rows_to_records(rep.EXPECTED_COLUMNS, ex),
    }
    config = {"n": ns, "q_star": qs, "k_values": ks, "targets": targets}
    if args.growth:
        f = bounds.GrowthFunction.parse(args.growth)
        q_growth = [q for q in qs if q > 0.0]
        growth_ns = [10 ** e for e in range(1, 9)]
        series = {}
        for q in q_growth:
            rows = rep.growth_rows(f, q, growth_ns)
            series[repr(q)] = rep.rows_to_records(rep.GROWTH_COLUMNS, rows)
            files[f"growth_q{q:g}.csv"] = rep.dumps_csv(rep.GROWTH_COLUMNS, rows)
        grid["growth"] = {"function": str(f), "superlogarithmic": bounds.is_superlog(f), "series": series}
        config["growth"] = str(f)
    if args.svg:
        files.update(_bounds_svgs(ns, qs, ks, targets, bk, mk, ex))
    report = rep.build_report(rep.provenance("bounds", None, config, None), bounds_grid=grid)
    _emit(args, report, files)
    return EXIT_OK


def _bounds_svgs(ns, qs, ks, targets, bk, mk, ex) -> dict[str, str]:
    panels = []
    for n in ns:
        series = [svgplot.Series(f"q*={q:g}", ks, [r[3] for r in bk if r[0] == n and r[1] == q]) for q in qs]
        panels.append(svgplot.Panel(f"n = {n}", "k", "lower bound on P(all rows lost)", series))
    out = {"bounds_vs_k.svg": svgplot.render(panels, __version__)}
    panels = []
    for t in targets:
        series = []
        for q in qs:
            pts = [r for r in mk if r[0] == t and r[1] == q]
            if pts:
                series.append(svgplot.Series(f"q*={q:g}", [r[2] for r in pts], [r[3] for r in pts]))
        panels.append(svgplot.Panel(f"largest k with bound <= {t:g}", "n", "k", series, ylim=None, log_x=True))
    out["max_k_vs_n.svg"] = svgplot.render(panels, __version__)
    series = [svgplot.Series(f"q*={q:g}", ks, [r[2] for r in ex if r[0] == q]) for q in qs]
    out["expected_missing_vs_k.svg"] = svgplot.render(
        [svgplot.Panel("Expected share of rows dropped", "k", "lower bound", series)], __version__)
    return out


def cmd_mask_export(args) -> int:
    m, _, _ = _load(args)
    target = Path(args.mask_out) if args.mask_out else _out_dir(args) / (Path(args.input).stem + ".mask")
    target.parent.mkdir(parents=True, exist_ok=True)
    write_mask(m, target)
    sys.stdout.write(f"{target}\n")
    return EXIT_OK


def cmd_mask_import(args) -> int:
    m = read_mask(args.input)
    report = rep.build_report(
        rep.provenance("mask-import", args.input, {"mask_input": True}, None),
        profile=profile(m), groups=detect_groups(m),
    )
    _emit(args, report, {})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="listwise", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"listwise {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./{DEFAULT_OUT})")

    p = sub.add_parser("profile", help="missingness summary and identical-pattern groups")
    p.add_argument("input")
    _add_ingest_flags(p)
    add_out(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("simulate", help="random variable subsampling with listwise deletion")
    p.add_argument("input")
    _add_ingest_flags(p)
    p.add_argument("--k", type=int, action="append", help="number of variables to draw; repeatable")
    p.add_argument("--k-max", type=int, help="sweep k = 1..K (default min(100, columns))")
    p.add_argument("--replicates", type=int, default=25_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1, help="threads for replicate blocks; output does not depend on it")
    p.add_argument("--exact", action="store_true", help="also enumerate every subset exactly (guarded)")
    p.add_argument("--svg", action="store_true", help="also write SVG charts")
    add_out(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bounds", help="closed-form lower-bound curves")
    p.add_argument("--n", type=int, action="append", help="rows; repeatable (default 100, 1000, 10000)")
    p.add_argument("--q-star", type=float, action="append", help="observation bound; repeatable (default 0.75, 0.9, 0.99)")
    p.add_argument("--k", type=int, action="append", help="k values; repeatable")
    p.add_argument("--k-max", type=int, help=f"sweep k = 1..K (default {DEFAULT_BOUND_K_MAX})")
    p.add_argument("--target", type=float, action="append", help="probability target for max-k; repeatable (default 0.5, 0.99)")
    p.add_argument("--growth", help="growth rate such as power_log:1.1 or polynomial:0.5")
    p.add_argument("--svg", action="store_true")
    add_out(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("mask", help="export or import the compact mask sidecar")
    msub = p.add_subparsers(dest="mask_command", required=True)
    pe = msub.add_parser("export", help="delimited file -> mask file")
    pe.add_argument("input")
    _add_ingest_flags(pe)
    pe.add_argument("--mask-out", help="mask file path (default <out>/<input stem>.mask)")
    add_out(pe)
    pe.set_defaults(func=cmd_mask_export)
    pi = msub.add_parser("import", help="mask file -> profile report")
    pi.add_argument("input")
    add_out(pi)
    pi.set_defaults(func=cmd_mask_import)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "workers", 1) < 1:
            raise InputError("--workers must be >= 1")
        return args.func(args)
    except EnumerationRefused as exc:
        print(f"listwise: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except InputError as exc:
        print(f"listwise: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
