"""Config-driven batch pipeline: ingest, transform, test, estimate, report.

The pipeline reproduces the full level-relationship workflow for each
configured model: unit-root screening of every variable (refusing to
proceed past I(1)), lag selection, the bounds cointegration test,
long-run and error-correction estimation, and the diagnostics battery.
Results land in an AnalysisReport whose JSON rendering is byte-stable:
same config and input file, same bytes out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from . import dataio
from .ardl import (
    ArdlModel,
    BoundsTestResult,
    EcmResult,
    LongRunCoefficients,
    bounds_test,
    estimate_ardl,
    long_run,
    select_lags,
    estimate_ecm,
)
from .dataio import Dataset, IngestionConfig, TimeSeries
from .diagnostics import DiagnosticsReport, run_battery
from .errors import ConfigError, I2VariablePresent
from .unitroot import (
    Deterministic,
    IntegrationOrder,
    UnitRootConfig,
    UnitRootResult,
    adf_test,
    classify_integration,
    pp_test,
)

ALLOWED_LEVELS = (0.01, 0.05, 0.10)


@dataclass(frozen=True)
class VariableSpec:
    """A derived variable: a source column plus a transform chain."""

    name: str
    source: str
    transforms: tuple[str, ...] = ()

    def __post_init__(self):
        for t in self.transforms:
            if t not in ("log", "diff"):
                raise ConfigError(
                    f"variable {self.name!r}: unknown transform {t!r} "
                    "(expected 'log' or 'diff')"
                )


@dataclass(frozen=True)
class ModelSpec:
    """One ARDL model to estimate."""

    name: str
    dependent: str
    regressors: tuple[str, ...]
    max_p: int = 2
    max_q: int = 2
    criterion: str = "SBC"
    bounds_case: str = "III"

    def __post_init__(self):
        if not self.regressors:
            raise ConfigError(f"model {self.name!r} needs >= 1 regressor")
        if self.dependent in self.regressors:
            raise ConfigError(
                f"model {self.name!r}: dependent cannot be a regressor"
            )
        if self.criterion.upper() not in ("AIC", "SBC"):
            raise ConfigError(f"model {self.name!r}: criterion must be "
                              "AIC or SBC")
        if self.bounds_case.upper() not in ("II", "III"):
            raise ConfigError(f"model {self.name!r}: bounds_case must be "
                              "II or III")


@dataclass(frozen=True)
class UnitRootStage:
    """Unit-root screening options (classification side)."""

    test: str = "ADF"
    spec: Deterministic = Deterministic.CONSTANT
    alpha: float = 0.05
    max_lag: int | None = None
    rule: str = "AIC"
    bandwidth: int | None = None


@dataclass(frozen=True)
class DiagnosticsStage:
    enabled: bool = True
    bg_lags: int = 2
    reset_powers: tuple[int, ...] = (2,)
    serial_correlation: bool = True
    functional_form: bool = True
    normality: bool = True
    heteroscedasticity: bool = True
    stability: bool = True

    def include(self) -> tuple[str, ...]:
        out = []
        if self.serial_correlation:
            out.append("serial_correlation")
        if self.functional_form:
            out.append("functional_form")
        if self.normality:
            out.append("normality")
        if self.heteroscedasticity:
            out.append("heteroscedasticity")
        if self.stability:
            out.append("stability")
        return tuple(out)


@dataclass(frozen=True)
class PipelineConfig:
    input_path: str
    ingestion: IngestionConfig
    variables: tuple[VariableSpec, ...]
    models: tuple[ModelSpec, ...]
    levels: tuple[float, ...] = ALLOWED_LEVELS
    unit_root: UnitRootStage = UnitRootStage()
    diagnostics: DiagnosticsStage = DiagnosticsStage()
    alpha: float = 0.05
    force: bool = False
    json_path: str | None = None
    text_path: str | None = None


@dataclass(frozen=True, eq=False)
class ModelResult:
    """Everything the pipeline produced for one configured model."""

    spec: ModelSpec
    ardl: ArdlModel
    bounds: BoundsTestResult
    long_run: LongRunCoefficients | None
    ecm: EcmResult | None
    diagnostics: DiagnosticsReport | None


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    """Structured pipeline output; see report.render_report for encodings."""

    config: PipelineConfig
    provenance: dataio.Provenance
    unit_root_table: tuple[dict, ...]
    integration: tuple[IntegrationOrder, ...]
    models: tuple[ModelResult, ...]
    warnings: tuple[str, ...]


def _as_tuple(value, what: str) -> tuple:
    if value is None:
        return ()
    if isinstance(value, (list, tuple)):
        return tuple(value)
    raise ConfigError(f"{what} must be a list")


def parse_config(payload: dict, base_dir: Path | None = None) -> PipelineConfig:
    """Build and validate a PipelineConfig from a parsed mapping.

    Raises ConfigError on any structural problem before data is read.
    """
    if not isinstance(payload, dict):
        raise ConfigError("config root must be a mapping")
    payload = dict(payload)

    inp = payload.get("input")
    if not isinstance(inp, dict) or "path" not in inp:
        raise ConfigError("config needs an input section with a path")
    path = str(inp["path"])
    if base_dir is not None and not Path(path).is_absolute():
        path = str(base_dir / path)
    ingestion = IngestionConfig(
        date_column=inp.get("date_column", "date"),
        date_format=inp.get("date_format", "YYYY-MM"),
        value_columns=(tuple(inp["value_columns"])
                       if inp.get("value_columns") else None),
        missing_policy=inp.get("missing_policy", "reject"),
        dependent=inp.get("dependent"),
    )

    variables = []
    for name, vspec in (payload.get("variables") or {}).items():
        if isinstance(vspec, str):
            variables.append(VariableSpec(name, vspec))
        elif isinstance(vspec, dict):
            variables.append(VariableSpec(
                name, vspec.get("source", name),
                tuple(vspec.get("transforms", ())),
            ))
        else:
            raise ConfigError(f"variable {name!r} must map to a source "
                              "name or a mapping")

    models = []
    for mpayload in _as_tuple(payload.get("models"), "models"):
        if not isinstance(mpayload, dict):
            raise ConfigError("each model must be a mapping")
        try:
            models.append(ModelSpec(
                name=mpayload.get("name", f"model{len(models) + 1}"),
                dependent=mpayload["dependent"],
                regressors=tuple(_as_tuple(mpayload.get("regressors"),
                                           "regressors")),
                max_p=int(mpayload.get("max_p", 2)),
                max_q=int(mpayload.get("max_q", 2)),
                criterion=str(mpayload.get("criterion", "SBC")),
                bounds_case=str(mpayload.get("bounds_case", "III")),
            ))
        except KeyError as exc:
            raise ConfigError(f"model missing required key {exc}") from None
    if not models:
        raise ConfigError("config defines no models")

    levels = tuple(float(a) for a in
                   _as_tuple(payload.get("levels"), "levels") or ALLOWED_LEVELS)
    bad = [a for a in levels if a not in ALLOWED_LEVELS]
    if bad:
        raise ConfigError(
            f"significance levels {bad} unsupported; allowed {ALLOWED_LEVELS}"
        )

    ur = payload.get("unit_root") or {}
    spec_name = ur.get("spec", "constant")
    try:
        ur_spec = Deterministic(spec_name)
    except ValueError:
        raise ConfigError(f"unknown deterministic spec {spec_name!r}") from None
    unit_root = UnitRootStage(
        test=str(ur.get("test", "ADF")).upper(),
        spec=ur_spec,
        alpha=float(ur.get("alpha", 0.05)),
        max_lag=ur.get("max_lag"),
        rule=str(ur.get("rule", "AIC")),
        bandwidth=ur.get("bandwidth"),
    )
    if unit_root.test not in ("ADF", "PP"):
        raise ConfigError("unit_root.test must be ADF or PP")
    if unit_root.alpha not in ALLOWED_LEVELS:
        raise ConfigError("unit_root.alpha must be one of 1%, 5%, 10%")

    dg = payload.get("diagnostics") or {}
    diagnostics = DiagnosticsStage(
        enabled=bool(dg.get("enabled", True)),
        bg_lags=int(dg.get("bg_lags", 2)),
        reset_powers=tuple(dg.get("reset_powers", (2,))),
        serial_correlation=bool(dg.get("serial_correlation", True)),
        functional_form=bool(dg.get("functional_form", True)),
        normality=bool(dg.get("normality", True)),
        heteroscedasticity=bool(dg.get("heteroscedasticity", True)),
        stability=bool(dg.get("stability", True)),
    )

    out = payload.get("output") or {}

    def _resolve(p):
        if p is None:
            return None
        p = str(p)
        if base_dir is not None and not Path(p).is_absolute():
            return str(base_dir / p)
        return p

    cfg = PipelineConfig(
        input_path=path,
        ingestion=ingestion,
        variables=tuple(variables),
        models=tuple(models),
        levels=levels,
        unit_root=unit_root,
        diagnostics=diagnostics,
        alpha=float(payload.get("alpha", 0.05)),
        force=bool(payload.get("force", False)),
        json_path=_resolve(out.get("json")),
        text_path=_resolve(out.get("text")),
    )
    _validate_references(cfg)
    return cfg


def load_config(path) -> PipelineConfig:
    """Parse a YAML (or JSON; JSON is a YAML subset) config file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        payload = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"config parse failure: {exc}") from None
    return parse_config(payload, base_dir=path.parent)


def _validate_references(cfg: PipelineConfig) -> None:
    declared = {v.name for v in cfg.variables}
    known: set[str] | None = None
    if cfg.ingestion.value_columns is not None:
        known = declared | set(cfg.ingestion.value_columns)
    for m in cfg.models:
        for name in (m.dependent, *m.regressors):
            if known is not None and name not in known:
                raise ConfigError(
                    f"model {m.name!r} references undefined variable {name!r}"
                )


def _build_variables(ds: Dataset,
                     specs: tuple[VariableSpec, ...]) -> dict[str, TimeSeries]:
    out: dict[str, TimeSeries] = {name: ds[name] for name in ds.series}
    for vs in specs:
        if vs.source not in out:
            raise ConfigError(
                f"variable {vs.name!r}: source column {vs.source!r} "
                "not in the input file"
            )
        s = out[vs.source]
        for t in vs.transforms:
            s = dataio.log_transform(s) if t == "log" else dataio.difference(s)
        out[vs.name] = s.rename(vs.name)
    return out


def _align(variables: dict[str, TimeSeries], names: tuple[str, ...],
           dependent: str) -> Dataset:
    """Trim the named series to their common (intersection) sample."""
    missing = [n for n in names if n not in variables]
    if missing:
        raise ConfigError(f"undefined variables referenced: {missing}")
    chosen = {n: variables[n] for n in names}
    freq = next(iter(chosen.values())).frequency
    start = max(dataio.period_ordinal(s.index[0], freq)
                for s in chosen.values())
    stop = min(dataio.period_ordinal(s.index[-1], freq)
               for s in chosen.values())
    if stop < start:
        raise ConfigError("series have no overlapping sample")
    trimmed = {}
    for n, s in chosen.items():
        lo = start - dataio.period_ordinal(s.index[0], freq)
        hi = stop - dataio.period_ordinal(s.index[0], freq) + 1
        trimmed[n] = TimeSeries(n, freq, s.index[lo:hi], s.values[lo:hi])
    roles = {n: ("dependent" if n == dependent else "regressor")
             for n in names}
    return Dataset(series=trimmed, roles=roles)


def _unit_root_row(variable: str, stage: str,
                   res: UnitRootResult) -> dict:
    return {
        "variable": variable,
        "test": res.test,
        "spec": res.spec.value,
        "stage": stage,
        "statistic": res.statistic,
        "lag_or_bandwidth": res.lag_or_bandwidth,
        "nobs": res.nobs,
        "critical_values": dict(res.critical_values),
        "verdict_at": dict(res.verdict_at),
    }


def run_pipeline(cfg: PipelineConfig) -> AnalysisReport:
    """Execute the full chain for every configured model.

    Refuses (I2VariablePresent) to run any bounds test when a model
    variable classifies beyond I(1); errors from any stage propagate
    with their own types so the CLI can map them to exit codes.
    """
    ds = dataio.load_csv(cfg.input_path, cfg.ingestion)
    variables = _build_variables(ds, cfg.variables)
    warnings: list[str] = []

    used: list[str] = []
    for m in cfg.models:
        for name in (m.dependent, *m.regressors):
            if name not in used:
                used.append(name)

    table: list[dict] = []
    ur = cfg.unit_root
    for name in used:
        s = variables.get(name)
        if s is None:
            raise ConfigError(f"model references undefined variable {name!r}")
        d1 = dataio.difference(s, 1)
        for det in (Deterministic.CONSTANT, Deterministic.CONSTANT_TREND):
            table.append(_unit_root_row(
                name, "level", adf_test(s, det, ur.max_lag, ur.rule)))
            table.append(_unit_root_row(
                name, "first_difference",
                adf_test(d1, det, ur.max_lag, ur.rule)))
            table.append(_unit_root_row(
                name, "level", pp_test(s, det, ur.bandwidth)))
            table.append(_unit_root_row(
                name, "first_difference", pp_test(d1, det, ur.bandwidth)))

    classify_cfg = UnitRootConfig(
        test=ur.test, spec=ur.spec, alpha=ur.alpha,
        max_lag=ur.max_lag, rule=ur.rule, bandwidth=ur.bandwidth,
    )
    integration = tuple(classify_integration(variables[name], classify_cfg)
                        for name in used)
    beyond = [io.series_name for io in integration if io.order == "higher"]
    if beyond:
        raise I2VariablePresent(
            f"variables classified beyond I(1) at alpha={ur.alpha}: "
            f"{', '.join(beyond)}; the bounds test is invalid there"
        )

    model_results: list[ModelResult] = []
    for m in cfg.models:
        dset = _align(variables, (m.dependent, *m.regressors), m.dependent)
        spec = select_lags(dset, m.max_p, m.max_q, m.criterion)
        model = estimate_ardl(dset, spec)
        bounds = bounds_test(model, m.bounds_case, cfg.alpha)
        if bounds.decision == "inconclusive":
            warnings.append(
                f"{m.name}: bounds F {bounds.f_statistic:.4f} falls inside "
                f"the {_pct(cfg.alpha)} band; cointegration inconclusive"
            )

        gated = bounds.decision == "not_cointegrated" and not cfg.force
        lr = ecm = diag = None
        if gated:
            warnings.append(
                f"{m.name}: no cointegration at {_pct(cfg.alpha)}; long-run "
                "and error-correction tables suppressed (set force: true "
                "to override)"
            )
        else:
            lr = long_run(model)
            ecm = estimate_ecm(model, lr)
            if ecm.non_negative_loading:
                warnings.append(
                    f"{m.name}: error-correction loading "
                    f"{ecm.ecm_coefficient:.4f} is non-negative; no "
                    "error correction toward the long run"
                )
        # the battery diagnoses the conditional-ECM regression, which
        # exists whatever the bounds decision was
        if cfg.diagnostics.enabled:
            diag = run_battery(
                model.levels_fit,
                bg_lags=cfg.diagnostics.bg_lags,
                reset_powers=cfg.diagnostics.reset_powers,
                alpha=cfg.alpha,
                include=cfg.diagnostics.include(),
            )
            if diag.verdict == "fail":
                warnings.append(
                    f"{m.name}: diagnostics verdict fail at "
                    f"{_pct(cfg.alpha)}"
                )
        else:
            warnings.append(f"{m.name}: diagnostics disabled by config")
        model_results.append(ModelResult(
            spec=m, ardl=model, bounds=bounds,
            long_run=lr, ecm=ecm, diagnostics=diag,
        ))

    return AnalysisReport(
        config=cfg,
        provenance=ds.provenance,
        unit_root_table=tuple(table),
        integration=integration,
        models=tuple(model_results),
        warnings=tuple(warnings),
    )


def _pct(alpha: float) -> str:
    return f"{alpha * 100:g}%"
