"""Report rendering: versioned JSON and aligned plain-text tables.

Significance stars follow the usual convention — * at 10%, ** at 5%,
*** at 1% — and are always derived from the same decision maps the JSON
carries, so the two encodings can never disagree. Rendering is pure:
the same report renders to the same bytes.
"""

from __future__ import annotations

import json
import math
from pathlib import PurePath

from .ardl import coefficient_pvalues
from .diagnostics import DiagnosticsReport, StabilityResult
from .errors import ConfigError
from .linreg import DEFAULT_LEVELS, TestStatistic, decisions_from_pvalue
from .pipeline import AnalysisReport, ModelResult
from .unitroot import IntegrationOrder

SCHEMA_VERSION = 1

_ORDER_LABEL = {"I0": "I(0)", "I1": "I(1)", "higher": "I(2) or higher"}


def pct(alpha: float) -> str:
    return f"{alpha * 100:g}%"


def stars_from_map(decisions: dict[float, str], positive: str) -> str:
    """Stars from a decision map: *** at 1%, ** at 5%, * at 10%."""
    for alpha, mark in ((0.01, "***"), (0.05, "**"), (0.10, "*")):
        if decisions.get(alpha) == positive:
            return mark
    return ""


def _coef_rows(fit, names) -> list[dict]:
    pvals = coefficient_pvalues(fit)
    rows = []
    for name in names:
        p = pvals[name]
        decisions = (decisions_from_pvalue(p, DEFAULT_LEVELS)
                     if math.isfinite(p) else {})
        rows.append({
            "variable": name,
            "coefficient": fit.coefficients[name],
            "std_error": fit.std_errors[name],
            "t_stat": fit.t_stats[name],
            "p_value": p,
            "stars": stars_from_map(decisions, "reject"),
        })
    return rows


def _test_payload(t: TestStatistic | None, alpha: float) -> dict | None:
    if t is None:
        return None
    return {
        "name": t.name,
        "statistic": t.statistic,
        "distribution": t.distribution,
        "p_value": t.p_value,
        "decision": t.decision_at.get(alpha),
        "decision_at": {pct(a): d for a, d in sorted(t.decision_at.items())},
    }


def _stability_payload(s: StabilityResult | None) -> dict | None:
    if s is None:
        return None
    return {
        "test": s.test,
        "stable": s.stable,
        "alpha": s.alpha,
        "max_path": float(max(abs(v) for v in s.path)) if len(s.path) else 0.0,
        "n_steps": int(len(s.path)),
    }


def _diagnostics_payload(d: DiagnosticsReport | None) -> dict | None:
    if d is None:
        return None
    return {
        "alpha": d.alpha,
        "serial_correlation": _test_payload(d.serial_correlation, d.alpha),
        "functional_form": _test_payload(d.functional_form, d.alpha),
        "normality": _test_payload(d.normality, d.alpha),
        "heteroscedasticity": _test_payload(d.heteroscedasticity, d.alpha),
        "cusum": _stability_payload(d.cusum),
        "cusumsq": _stability_payload(d.cusumsq),
        "verdict": d.verdict,
    }


def _model_payload(mr: ModelResult) -> dict:
    spec = mr.ardl.spec
    fit = mr.ardl.levels_fit
    out = {
        "name": mr.spec.name,
        "dependent": spec.dependent,
        "regressors": list(spec.regressors),
        "selected": {
            "p": spec.p,
            "q": dict(spec.q),
            "criterion": mr.spec.criterion.upper(),
            "description": spec.describe(),
        },
        "n_effective": mr.ardl.n_effective,
        "conditional_ecm_rows": _coef_rows(fit, fit.design.names),
        "bounds": {
            "f_statistic": mr.bounds.f_statistic,
            "case": mr.bounds.case,
            "k": mr.bounds.k,
            "alpha": mr.bounds.alpha,
            "decision": mr.bounds.decision,
            "restricted": list(mr.bounds.restricted),
            "bounds": {pct(a): list(b)
                       for a, b in sorted(mr.bounds.bounds.items())},
        },
        "long_run": None,
        "short_run": None,
        "diagnostics": _diagnostics_payload(mr.diagnostics),
    }
    if mr.long_run is not None:
        rows = []
        for name, value in mr.long_run.values.items():
            t = mr.long_run.t_stats[name]
            p = (2.0 * _normal_sf(abs(t))) if math.isfinite(t) else math.nan
            decisions = (decisions_from_pvalue(p, DEFAULT_LEVELS)
                         if math.isfinite(p) else {})
            rows.append({
                "variable": name,
                "coefficient": value,
                "std_error": mr.long_run.std_errors[name],
                "t_stat": t,
                "p_value": p,
                "stars": stars_from_map(decisions, "reject"),
            })
        out["long_run"] = {"rows": rows}
    if mr.ecm is not None:
        efit = mr.ecm.fit
        row_names = [n for n in efit.design.names if n.startswith("D")]
        row_names.append("ECM(-1)")
        out["short_run"] = {
            "rows": _coef_rows(efit, row_names),
            "ecm_coefficient": mr.ecm.ecm_coefficient,
            "non_negative_loading": mr.ecm.non_negative_loading,
            "speed_of_adjustment_pct": mr.ecm.speed_of_adjustment_pct,
            "one_step_gap": mr.ecm.adjustment_gap,
            "r_squared": efit.r_squared,
            "adj_r_squared": efit.adj_r_squared,
            "f_statistic": efit.f_statistic,
            "durbin_watson": efit.durbin_watson,
        }
    return out


def _normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _unit_root_payload(report: AnalysisReport) -> dict:
    rows = []
    for row in report.unit_root_table:
        decisions = {a: ("reject" if v == "stationary" else "fail-to-reject")
                     for a, v in row["verdict_at"].items()}
        rows.append({
            "variable": row["variable"],
            "test": row["test"],
            "spec": row["spec"],
            "stage": row["stage"],
            "statistic": row["statistic"],
            "lag_or_bandwidth": row["lag_or_bandwidth"],
            "nobs": row["nobs"],
            "critical_values": {pct(a): cv for a, cv
                                in sorted(row["critical_values"].items())},
            "verdict_at": {pct(a): v for a, v
                           in sorted(row["verdict_at"].items())},
            "stars": stars_from_map(decisions, "reject"),
        })
    ur = report.config.unit_root
    return {
        "classification": {
            "test": ur.test,
            "spec": ur.spec.value,
            "alpha": ur.alpha,
        },
        "table": rows,
        "integration": [
            {"variable": io.series_name, "order": io.order,
             "label": _ORDER_LABEL[io.order], "alpha": io.alpha}
            for io in report.integration
        ],
    }


def to_payload(report: AnalysisReport) -> dict:
    """Plain-primitive mapping of the whole report (JSON-ready)."""
    prov = report.provenance
    return {
        "schema_version": SCHEMA_VERSION,
        "provenance": {
            # basename only: absolute paths would make the encoding
            # machine-dependent and break golden-file comparisons
            "source_file": PurePath(prov.source_path).name,
            "rows_read": prov.rows_read,
            "rows_used": prov.rows_used,
            "policy": prov.policy,
            "rows_dropped": prov.rows_dropped,
            "cells_imputed": prov.cells_imputed,
        },
        "levels": [pct(a) for a in sorted(report.config.levels)],
        "alpha": report.config.alpha,
        "variables": [
            {"name": v.name, "source": v.source,
             "transforms": list(v.transforms)}
            for v in report.config.variables
        ],
        "unit_root": _unit_root_payload(report),
        "models": [_model_payload(mr) for mr in report.models],
        "warnings": list(report.warnings),
    }


def render_report(report: AnalysisReport, fmt: str = "json") -> bytes:
    """Encode a report as UTF-8 bytes in the requested format."""
    if fmt == "json":
        text = json.dumps(to_payload(report), indent=2, sort_keys=True)
        return (text + "\n").encode("utf-8")
    if fmt == "text":
        return render_text(to_payload(report)).encode("utf-8")
    raise ConfigError(f"unknown report format {fmt!r}")


# --- text rendering --------------------------------------------------------

def _fmt(value, nd=6) -> str:
    if value is None:
        return "-"
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    return f"{value:.{nd}f}"


def _table(headers: list[str], rows: list[list[str]]) -> list[str]:
    widths = [len(h) for h in headers]
    for row in rows:
        for j, cell in enumerate(row):
            widths[j] = max(widths[j], len(cell))
    def line(cells):
        return "  ".join(c.ljust(w) if j == 0 else c.rjust(w)
                         for j, (c, w) in enumerate(zip(cells, widths)))
    out = [line(headers), line(["-" * w for w in widths])]
    out += [line(r) for r in rows]
    return out


def render_text(payload: dict) -> str:
    lines: list[str] = []
    push = lines.append
    push("ARDL BOUNDS-TESTING ANALYSIS")
    push("=" * 60)
    prov = payload["provenance"]
    push(f"input: {prov['source_file']} "
         f"({prov['rows_used']} rows used of {prov['rows_read']} read, "
         f"missing-value policy {prov['policy']})")
    push("")

    if payload.get("unit_root"):
        push("UNIT ROOT TESTS")
        push("-" * 60)
        rows = []
        for r in payload["unit_root"]["table"]:
            rows.append([
                r["variable"], r["test"],
                "trend" if r["spec"] == "constant_and_trend" else "no trend",
                r["stage"].replace("_", " "),
                _fmt(r["statistic"], 3) + r["stars"],
                str(r["lag_or_bandwidth"]),
            ])
        lines += _table(
            ["variable", "test", "deterministic", "stage", "statistic",
             "lags/bw"],
            rows,
        )
        cls = payload["unit_root"]["classification"]
        push("")
        push(f"integration orders ({cls['test']}, {cls['spec']}, "
             f"alpha {pct(cls['alpha'])}):")
        for io in payload["unit_root"]["integration"]:
            push(f"  {io['variable']}: {io['label']}")
        push("")

    for m in payload["models"]:
        push(f"MODEL {m['name']}: {m['dependent']} on "
             f"{', '.join(m['regressors'])} - {m['selected']['description']} "
             f"selected by {m['selected']['criterion']}")
        push("-" * 60)
        b = m["bounds"]
        band = b["bounds"][pct(b["alpha"])]
        push(f"bounds test (case {b['case']}, k={b['k']}): "
             f"F = {_fmt(b['f_statistic'], 4)}, "
             f"{pct(b['alpha'])} band {_fmt(band[0], 2)} - {_fmt(band[1], 2)} "
             f"=> {b['decision'].replace('_', ' ')}")
        push("")

        if m["long_run"] is not None:
            push("long-run coefficients")
            lines += _table(
                ["variable", "coefficient", "std. error", "t-statistic"],
                [[r["variable"], _fmt(r["coefficient"]) + r["stars"],
                  _fmt(r["std_error"]), _fmt(r["t_stat"])]
                 for r in m["long_run"]["rows"]],
            )
            push("")
        if m["short_run"] is not None:
            sr = m["short_run"]
            push("short-run (error-correction) coefficients")
            lines += _table(
                ["variable", "coefficient", "std. error", "t-statistic"],
                [[r["variable"], _fmt(r["coefficient"]) + r["stars"],
                  _fmt(r["std_error"]), _fmt(r["t_stat"])]
                 for r in sr["rows"]],
            )
            push(f"R-squared {_fmt(sr['r_squared'])}   "
                 f"Adj. R-squared {_fmt(sr['adj_r_squared'])}   "
                 f"F-statistic (overall) {_fmt(sr['f_statistic'], 4)}   "
                 f"DW {_fmt(sr['durbin_watson'])}")
            push(f"speed of adjustment: "
                 f"{sr['speed_of_adjustment_pct']:.1f}% of a disequilibrium "
                 "shock is corrected each period")
            push("")
        if m["diagnostics"] is not None:
            d = m["diagnostics"]
            push(f"diagnostics (alpha {pct(d['alpha'])})")
            drows = []
            for label, key in (
                ("serial correlation", "serial_correlation"),
                ("functional form", "functional_form"),
                ("normality", "normality"),
                ("heteroscedasticity", "heteroscedasticity"),
            ):
                t = d[key]
                if t is None:
                    continue
                drows.append([
                    label, _fmt(t["statistic"], 6),
                    _fmt(t["p_value"], 6) if t["p_value"] is not None else "-",
                    t["decision"] or "-",
                ])
            lines += _table(["test", "statistic", "p-value", "decision"],
                            drows)
            for key, label in (("cusum", "CUSUM"), ("cusumsq", "CUSUMSQ")):
                s = d[key]
                if s is not None:
                    push(f"{label}: {'Stable' if s['stable'] else 'Unstable'}")
            push(f"diagnostics verdict: {d['verdict']}")
            push("")

    if payload["warnings"]:
        push("WARNINGS")
        push("-" * 60)
        for w in payload["warnings"]:
            push(f"  - {w}")
        push("")
    push("significance stars: * 10%, ** 5%, *** 1%")
    return "\n".join(lines) + "\n"
