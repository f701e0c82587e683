"""Command-line driver: verify / sweep / probe.

Exit codes: 0 all certified, 1 at least one certified violation, 2 invalid
input (bad flags, config, grid, or probe name).
"""

from __future__ import annotations

import argparse
import sys

from .config import PROBE_NAMES, load_config, parse_kv_text
from .errors import ConfigError
from . import runner


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meancert",
        description="Numerically certify weighted arithmetic/geometric/harmonic "
        "mean inequalities for positive definite matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run certifier suites over seeded instance families")
    verify.add_argument("--config", help="flat key=value config file")
    verify.add_argument("--select", help="comma-separated certifier tags (default: all)")
    verify.add_argument("--seed", type=int, help="master seed")
    verify.add_argument("--trials", type=int, help="trials per inequality")
    verify.add_argument("--dims", type=str, help="comma-separated dimensions")
    verify.add_argument("--cond-caps", type=str, help="comma-separated condition caps")
    verify.add_argument("--tol-scale", type=float, help="tolerance scale factor")
    verify.add_argument("--workers", type=int, help="parallel worker processes")
    verify.add_argument("--out", help="report path (default verify_report.<format>)")
    verify.add_argument("--format", choices=("json", "csv"), help="report format")
    verify.set_defaults(func=cmd_verify)

    sweep = sub.add_parser("sweep", help="grid sweep of one ratio-family certifier")
    sweep.add_argument("--grid", required=True, help="key=value grid file: v, tau, lambda, dim")
    sweep.add_argument("--config", help="flat key=value config file")
    sweep.add_argument(
        "--select", default="det_root_gap",
        help=f"certifier to sweep, one of: {', '.join(runner.SWEEPABLE_IDS)}",
    )
    sweep.add_argument("--seed", type=int, help="master seed")
    sweep.add_argument("--trials", type=int, help="trials per grid cell")
    sweep.add_argument("--out", help="report path (default sweep_report.<format>)")
    sweep.add_argument("--format", choices=("json", "csv"), help="report format")
    sweep.set_defaults(func=cmd_sweep)

    probe = sub.add_parser("probe", help="sharpness probes (limit tables)")
    probe.add_argument("--name", required=True, help=f"one of: {', '.join(PROBE_NAMES)}")
    probe.add_argument("--v", type=float, help="weight v (gap_ratio_limits)")
    probe.add_argument("--tau", type=float, help="weight tau (gap_ratio_limits)")
    probe.add_argument("--lams", type=_floats, help="comma-separated powers (gap_ratio_limits)")
    probe.add_argument("--b", type=float, help="fixed operand b (gap_ratio_limits)")
    probe.add_argument("--eps", type=_floats, help="comma-separated eps values")
    probe.add_argument("--v-values", type=_floats, help="weights (gap_factor_sharpness)")
    probe.add_argument("--t-values", type=_floats, help="t values > 1 (gap_factor_sharpness)")
    probe.add_argument("--out", help="report path (default probe_report.<format>)")
    probe.add_argument("--format", choices=("json", "csv"), help="report format")
    probe.set_defaults(func=cmd_probe)
    return parser


def _base_overrides(args) -> dict:
    overrides = {
        "master_seed": getattr(args, "seed", None),
        "trials_per_inequality": getattr(args, "trials", None),
        "output_format": getattr(args, "format", None),
        "output_path": getattr(args, "out", None),
        "workers": getattr(args, "workers", None),
        "tolerance_scale": getattr(args, "tol_scale", None),
    }
    if getattr(args, "select", None) and args.command == "verify":
        overrides["inequality_selection"] = tuple(
            t.strip() for t in args.select.split(",") if t.strip()
        )
    if getattr(args, "dims", None):
        overrides["dims"] = tuple(int(x) for x in args.dims.split(",") if x.strip())
    if getattr(args, "cond_caps", None):
        overrides["cond_caps"] = tuple(float(x) for x in args.cond_caps.split(",") if x.strip())
    return overrides


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_verify(args) -> int:
    cfg = load_config(getattr(args, "config", None), _base_overrides(args))
    records, summaries = runner.run_verify(cfg)
    out_path = cfg.resolved_output_path("verify_report")
    failures = sum(len(s["failures"]) for s in summaries.values())
    if cfg.output_format == "csv":
        _write(out_path, runner.records_to_csv(records))
        if failures:
            # the fixed CSV columns cannot carry witnesses; violations get a sidecar
            _write(out_path + ".witnesses.json", runner.witnesses_json(records))
    else:
        _write(out_path, runner.suite_json(cfg, summaries, records))
    print(runner.summary_table(summaries))
    print(f"report written to {out_path}; failures={failures}")
    return 1 if failures else 0


def _parse_grid(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = parse_kv_text(fh.read(), source=path)
    except OSError as exc:
        raise ConfigError(f"cannot read grid file {path}: {exc}") from exc
    grid = {}
    converters = {"v": float, "tau": float, "lambda": float, "dim": int}
    for key, text in raw.items():
        if key not in converters:
            raise ConfigError(f"unknown grid key {key!r} (expected v, tau, lambda, dim)")
        try:
            grid[key] = tuple(converters[key](x) for x in text.split(",") if x.strip())
        except ValueError as exc:
            raise ConfigError(f"bad grid value for {key!r}: {text!r}") from exc
        if not grid[key]:
            raise ConfigError(f"grid key {key!r} has no values")
    if not grid:
        raise ConfigError("grid file defines no axes")
    return grid


def cmd_sweep(args) -> int:
    cfg = load_config(getattr(args, "config", None), _base_overrides(args))
    grid = _parse_grid(args.grid)
    records, skipped = runner.run_sweep(cfg, grid, args.select)
    out_path = cfg.output_path or f"sweep_report.{cfg.output_format}"
    if cfg.output_format == "csv":
        _write(out_path, runner.records_to_csv(records))
    else:
        _write(out_path, runner.sweep_json(cfg, args.select, records, skipped))
    failures = sum(1 for r in records if r.verdict == "fail")
    print(f"skipped_cells={skipped}")
    print(f"report written to {out_path}; rows={len(records)}; failures={failures}")
    return 1 if failures else 0


def cmd_probe(args) -> int:
    cfg = load_config(None, {"output_format": args.format, "output_path": args.out})
    if args.name == "gap_ratio_limits":
        params = {
            "v": args.v if args.v is not None else 0.25,
            "tau": args.tau if args.tau is not None else 0.5,
            "lams": args.lams or (1.0, 2.0),
            "b": args.b if args.b is not None else 1.0,
            "eps_list": args.eps or (1e-2, 1e-4, 1e-6, 1e-8),
        }
        rows, reports = runner.run_probe_gap_ratio_limits(**params)
    elif args.name == "gap_factor_sharpness":
        params = {
            "v_values": args.v_values or ((args.v,) if args.v is not None else (0.1, 0.3, 0.5)),
            "t_list": args.t_values or (1 + 1e-6, 1 + 1e-4, 1 + 1e-2, 2.0, 10.0),
        }
        rows, reports = runner.run_probe_gap_factor_sharpness(**params)
    else:
        raise ConfigError(f"unknown probe {args.name!r}; expected one of {', '.join(PROBE_NAMES)}")
    holds = all(r.holds for r in reports)
    out_path = cfg.output_path or f"probe_report.{cfg.output_format}"
    if cfg.output_format == "csv":
        _write(out_path, runner.probe_rows_to_csv(rows))
    else:
        json_params = {k: (list(v) if isinstance(v, tuple) else v) for k, v in params.items()}
        _write(out_path, runner.probe_json(args.name, json_params, rows, holds))
    print(f"probe {args.name}: {'pass' if holds else 'FAIL'}; report written to {out_path}")
    return 0 if holds else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
