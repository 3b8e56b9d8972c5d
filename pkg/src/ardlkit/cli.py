"""Batch command-line front end.

Subcommands:
    unitroot   ADF and PP tests on every column of a CSV file
    ardl       lag selection, bounds test, long-run and ECM per config
    pipeline   the full chain including unit-root screening and diagnostics
    simulate   write a seeded synthetic dataset as CSV
    render     re-render a saved JSON report as text (or JSON)

Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical
or degeneracy error, 5 refusal because a variable is integrated beyond
order one.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import yaml

from . import dataio, report as report_mod
from .dataio import IngestionConfig
from .errors import (
    ArdlkitError,
    ConfigError,
    DataError,
    I2VariablePresent,
    NumericalError,
)
from .pipeline import (
    PipelineConfig,
    load_config,
    run_pipeline,
)
from .simgen import dgp_from_dict, generate
from .unitroot import Deterministic, adf_test, pp_test

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4
EXIT_I2 = 5


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ardlkit",
        description="ARDL bounds-testing toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_unit = sub.add_parser("unitroot", help="unit-root tests on a CSV")
    p_unit.add_argument("--input", required=True, help="CSV file")
    p_unit.add_argument("--config", help="optional pipeline config for "
                                         "ingestion/test options")
    p_unit.add_argument("--output", help="write the report here")
    p_unit.add_argument("--format", choices=("json", "text"), default="text")

    p_ardl = sub.add_parser("ardl", help="ARDL estimation and bounds test")
    p_ardl.add_argument("--config", required=True)
    p_ardl.add_argument("--input", help="override the config input path")
    p_ardl.add_argument("--output", help="write the report here")
    p_ardl.add_argument("--format", choices=("json", "text"), default="text")
    p_ardl.add_argument("--force", action="store_true",
                        help="estimate long-run/ECM even without "
                             "cointegration")

    p_pipe = sub.add_parser("pipeline", help="full analysis pipeline")
    p_pipe.add_argument("--config", required=True)
    p_pipe.add_argument("--input", help="override the config input path")
    p_pipe.add_argument("--output", help="override the JSON output path")
    p_pipe.add_argument("--format", choices=("json", "text"), default="text")
    p_pipe.add_argument("--force", action="store_true")

    p_sim = sub.add_parser("simulate", help="write a synthetic dataset")
    p_sim.add_argument("--config", required=True,
                       help="YAML/JSON file with a dgp section")
    p_sim.add_argument("--seed", type=int, help="override the dgp seed")
    p_sim.add_argument("--output", required=True, help="CSV path to write")

    p_rend = sub.add_parser("render", help="re-render a JSON report")
    p_rend.add_argument("--input", required=True, help="report JSON file")
    p_rend.add_argument("--output", help="write rendering here")
    p_rend.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def _emit(data: bytes, output: str | None) -> None:
    if output:
        Path(output).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def _cmd_pipeline(args) -> int:
    cfg = load_config(args.config)
    if args.input:
        cfg = dataclasses.replace(cfg, input_path=args.input)
    if args.force:
        cfg = dataclasses.replace(cfg, force=True)
    if args.output:
        cfg = dataclasses.replace(cfg, json_path=args.output)
    result = run_pipeline(cfg)
    if cfg.json_path:
        Path(cfg.json_path).write_bytes(
            report_mod.render_report(result, "json"))
    if cfg.text_path:
        Path(cfg.text_path).write_bytes(
            report_mod.render_report(result, "text"))
    sys.stdout.write(
        report_mod.render_report(result, args.format).decode("utf-8"))
    return EXIT_OK


def _cmd_ardl(args) -> int:
    cfg = load_config(args.config)
    if args.input:
        cfg = dataclasses.replace(cfg, input_path=args.input)
    if args.force:
        cfg = dataclasses.replace(cfg, force=True)
    # The ardl subcommand is the pipeline minus the screening gate: run
    # everything, then strip the unit-root section from the payload.
    result = run_pipeline(cfg)
    payload = report_mod.to_payload(result)
    payload.pop("unit_root", None)
    if args.format == "json":
        data = (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode()
    else:
        data = report_mod.render_text(payload).encode()
    _emit(data, args.output)
    return EXIT_OK


def _unitroot_payload(path: str, cfg: PipelineConfig | None) -> dict:
    ingestion = cfg.ingestion if cfg else IngestionConfig()
    ur = cfg.unit_root if cfg else None
    ds = dataio.load_csv(path, ingestion)
    rows = []
    for name in ds.series:
        s = ds[name]
        d1 = dataio.difference(s, 1)
        for det in (Deterministic.CONSTANT, Deterministic.CONSTANT_TREND):
            for stage, series in (("level", s), ("first_difference", d1)):
                for test in ("ADF", "PP"):
                    if test == "ADF":
                        res = adf_test(series, det,
                                       ur.max_lag if ur else None,
                                       ur.rule if ur else "AIC")
                    else:
                        res = pp_test(series, det,
                                      ur.bandwidth if ur else None)
                    decisions = {
                        a: ("reject" if v == "stationary"
                            else "fail-to-reject")
                        for a, v in res.verdict_at.items()
                    }
                    rows.append({
                        "variable": name,
                        "test": test,
                        "spec": det.value,
                        "stage": stage,
                        "statistic": res.statistic,
                        "lag_or_bandwidth": res.lag_or_bandwidth,
                        "nobs": res.nobs,
                        "critical_values": {
                            report_mod.pct(a): cv
                            for a, cv in sorted(res.critical_values.items())
                        },
                        "verdict_at": {
                            report_mod.pct(a): v
                            for a, v in sorted(res.verdict_at.items())
                        },
                        "stars": report_mod.stars_from_map(decisions,
                                                           "reject"),
                    })
    return {"schema_version": report_mod.SCHEMA_VERSION,
            "input": str(path), "table": rows}


def _cmd_unitroot(args) -> int:
    cfg = load_config(args.config) if args.config else None
    payload = _unitroot_payload(args.input, cfg)
    if args.format == "json":
        data = (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode()
    else:
        lines = ["UNIT ROOT TESTS", "-" * 60]
        rows = [[r["variable"], r["test"],
                 "trend" if r["spec"] == "constant_and_trend" else "no trend",
                 r["stage"].replace("_", " "),
                 f"{r['statistic']:.3f}" + r["stars"],
                 str(r["lag_or_bandwidth"])]
                for r in payload["table"]]
        lines += report_mod._table(
            ["variable", "test", "deterministic", "stage", "statistic",
             "lags/bw"], rows)
        lines.append("significance stars: * 10%, ** 5%, *** 1%")
        data = ("\n".join(lines) + "\n").encode()
    _emit(data, args.output)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    path = Path(args.config)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        payload = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"config parse failure: {exc}") from None
    if not isinstance(payload, dict):
        raise ConfigError("simulate config must be a mapping")
    dgp_payload = payload.get("dgp", payload)
    if not isinstance(dgp_payload, dict):
        raise ConfigError("dgp section must be a mapping")
    dgp_payload = dict(dgp_payload)
    if args.seed is not None:
        dgp_payload["seed"] = args.seed
    ds = generate(dgp_from_dict(dgp_payload))
    dataio.save_csv(ds, args.output)
    sys.stdout.write(f"wrote {ds.n} observations to {args.output}\n")
    return EXIT_OK


def _cmd_render(args) -> int:
    path = Path(args.input)
    if not path.exists():
        raise DataError(f"report file not found: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"report parse failure: {exc}") from None
    if args.format == "json":
        data = (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode()
    else:
        data = report_mod.render_text(payload).encode()
    _emit(data, args.output)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "pipeline": _cmd_pipeline,
        "ardl": _cmd_ardl,
        "unitroot": _cmd_unitroot,
        "simulate": _cmd_simulate,
        "render": _cmd_render,
    }
    try:
        return handlers[args.command](args)
    except I2VariablePresent as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_I2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ArdlkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
