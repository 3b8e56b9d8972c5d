"""Residual diagnostics and structural-stability tests.

The battery covers serial correlation (Breusch-Godfrey LM), functional
form (Ramsey RESET), normality (Jarque-Bera), heteroscedasticity
(Breusch-Pagan-Godfrey LM), and parameter stability (CUSUM and CUSUM of
squares on recursive residuals). Each test stands alone; run_battery
bundles them into one report with an overall verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .critvals import cusumsq_c0
from .errors import (
    ConfigError,
    ConstantFitted,
    PerfectFitDegenerate,
    RankDeficientPrefix,
    SampleTooShort,
    ZeroVariance,
)
from .linreg import (
    DEFAULT_LEVELS,
    DesignMatrix,
    RegressionResult,
    TestStatistic,
    decisions_from_pvalue,
    ols,
    wald_f_test,
)

# Straight-line CUSUM boundary slopes from the Brownian-motion crossing
# probabilities (Brown-Durbin-Evans).
CUSUM_CRITICAL = {0.01: 1.143, 0.05: 0.948, 0.10: 0.850}


@dataclass(frozen=True, eq=False)
class StabilityResult:
    """A cumulative statistic path against its significance bounds."""

    test: str
    path: np.ndarray
    lower_bound: np.ndarray
    upper_bound: np.ndarray
    stable: bool
    alpha: float


@dataclass(frozen=True, eq=False)
class DiagnosticsReport:
    """The six-test battery with a pass/fail verdict.

    verdict is "pass" exactly when no enabled LM/F test rejects at the
    configured alpha and both enabled stability paths stay in bounds.
    """

    serial_correlation: TestStatistic | None
    functional_form: TestStatistic | None
    normality: TestStatistic | None
    heteroscedasticity: TestStatistic | None
    cusum: StabilityResult | None
    cusumsq: StabilityResult | None
    alpha: float
    verdict: str


def breusch_godfrey(rr: RegressionResult, X: DesignMatrix | None = None,
                    lags: int = 1) -> TestStatistic:
    """LM test for residual serial correlation up to ``lags``.

    The auxiliary regression puts the residuals on the original design
    plus their own lags (zero-padded before the sample), and LM = n R^2
    is referred to chi2(lags).
    """
    X = X if X is not None else rr.design
    if lags < 1:
        raise ValueError("lags must be >= 1")
    e = rr.residuals
    n = e.shape[0]
    if n <= X.k + lags + 1:
        raise SampleTooShort(
            f"breusch_godfrey with {lags} lags needs more than "
            f"{X.k + lags + 1} observations, got {n}"
        )
    cols = {name: X.column(name) for name in X.names}
    for j in range(1, lags + 1):
        lagged = np.zeros(n)
        lagged[j:] = e[:-j]
        cols[f"RESID(-{j})"] = lagged
    aux = ols(e, DesignMatrix.from_columns(cols))
    lm = n * aux.r_squared
    p = float(stats.chi2.sf(lm, lags))
    return TestStatistic(
        name="breusch_godfrey",
        statistic=float(lm),
        distribution=f"chi2({lags})",
        p_value=p,
        decision_at=decisions_from_pvalue(p),
    )


def ramsey_reset(rr: RegressionResult, X: DesignMatrix | None = None,
                 powers=(2,)) -> TestStatistic:
    """RESET functional-form test: F on powers of the fitted values.

    powers must be a nonempty subset of {2, 3, 4}. The fitted values
    are rescaled to unit maximum before powering; the F statistic is
    invariant to that rescaling and conditioning improves.
    """
    X = X if X is not None else rr.design
    powers = tuple(sorted(set(powers)))
    if not powers or not set(powers) <= {2, 3, 4}:
        raise ValueError(f"powers must be a nonempty subset of {{2,3,4}}")
    fitted = rr.fitted
    spread = float(fitted.max() - fitted.min())
    scale = float(np.max(np.abs(fitted)))
    if scale == 0.0 or spread <= 1e-12 * scale:
        raise ConstantFitted("fitted values are constant")
    if rr.rss <= 1e-13 * max(float(rr.y @ rr.y), 1.0):
        raise PerfectFitDegenerate("zero residual variance")
    f_scaled = fitted / scale
    cols = {name: X.column(name) for name in X.names}
    added = []
    for pwr in powers:
        name = f"FITTED^{pwr}"
        cols[name] = f_scaled ** pwr
        added.append(name)
    aug = ols(rr.y, DesignMatrix.from_columns(cols))
    result = wald_f_test(aug, added)
    return TestStatistic(
        name="ramsey_reset",
        statistic=result.statistic,
        distribution=result.distribution,
        p_value=result.p_value,
        decision_at=result.decision_at,
    )


def jarque_bera(residuals) -> TestStatistic:
    """Normality test from moment skewness and kurtosis (divisor n)."""
    e = np.asarray(residuals, dtype=np.float64)
    n = e.shape[0]
    if n < 8:
        raise SampleTooShort(f"jarque_bera needs >= 8 observations, got {n}")
    d = e - e.mean()
    m2 = float(d @ d) / n
    if m2 == 0.0:
        raise ZeroVariance("constant residuals")
    skew = float(np.mean(d**3)) / m2**1.5
    kurt = float(np.mean(d**4)) / m2**2
    jb = n / 6.0 * (skew**2 + (kurt - 3.0) ** 2 / 4.0)
    p = float(stats.chi2.sf(jb, 2))
    return TestStatistic(
        name="jarque_bera",
        statistic=float(jb),
        distribution="chi2(2)",
        p_value=p,
        decision_at=decisions_from_pvalue(p),
    )


def breusch_pagan(rr: RegressionResult,
                  X: DesignMatrix | None = None) -> TestStatistic:
    """LM heteroscedasticity test: squared residuals on the design.

    LM = n R^2 of the auxiliary regression, chi2 with one degree of
    freedom per non-constant regressor.
    """
    X = X if X is not None else rr.design
    df = X.k - 1 if X.has_constant() else X.k
    if df < 1:
        raise ConfigError("breusch_pagan needs at least one non-constant "
                          "regressor")
    e2 = rr.residuals**2
    aux = ols(e2, X)
    lm = len(e2) * aux.r_squared
    p = float(stats.chi2.sf(lm, df))
    return TestStatistic(
        name="breusch_pagan",
        statistic=float(lm),
        distribution=f"chi2({df})",
        p_value=p,
        decision_at=decisions_from_pvalue(p),
    )


def recursive_residuals(y, X: DesignMatrix) -> np.ndarray:
    """Standardized one-step-ahead prediction errors.

    Starting from the first k observations, each subsequent y is
    predicted from the fit so far; the errors are scaled so they are
    iid N(0, sigma^2) under stability. Uses rank-one covariance updates.
    """
    y = np.asarray(y, dtype=np.float64)
    n, k = X.n, X.k
    if n <= k + 2:
        raise SampleTooShort(
            f"recursive residuals need n > k + 2, got n={n}, k={k}"
        )
    x0 = X.matrix[:k]
    xtx = x0.T @ x0
    if np.linalg.matrix_rank(xtx) < k:
        raise RankDeficientPrefix(
            "first k observations do not identify the coefficients"
        )
    xtx_inv = np.linalg.inv(xtx)
    beta = xtx_inv @ (x0.T @ y[:k])

    w = np.empty(n - k)
    for t in range(k, n):
        x_t = X.matrix[t]
        err = y[t] - x_t @ beta
        f_t = 1.0 + x_t @ xtx_inv @ x_t
        w[t - k] = err / math.sqrt(f_t)
        v = xtx_inv @ x_t
        xtx_inv = xtx_inv - np.outer(v, v) / f_t
        beta = beta + xtx_inv @ x_t * err
    return w


def cusum(rr: RegressionResult, X: DesignMatrix | None = None,
          alpha: float = 0.05) -> StabilityResult:
    """Cumulative sum of scaled recursive residuals with straight-line
    bounds +/- a (sqrt(m) + 2 r / sqrt(m)), m = n - k."""
    X = X if X is not None else rr.design
    if alpha not in CUSUM_CRITICAL:
        raise ConfigError(
            f"CUSUM bounds tabulated at {sorted(CUSUM_CRITICAL)}, got {alpha}"
        )
    w = recursive_residuals(rr.y, X)
    m = w.shape[0]
    sigma = math.sqrt(float(w @ w) / m)
    path = np.cumsum(w) / sigma if sigma > 0.0 else np.zeros(m)
    a = CUSUM_CRITICAL[alpha]
    r = np.arange(1, m + 1)
    upper = a * (math.sqrt(m) + 2.0 * r / math.sqrt(m))
    lower = -upper
    stable = bool(np.all((path >= lower) & (path <= upper)))
    return StabilityResult("CUSUM", path, lower, upper, stable, alpha)


def cusumsq(rr: RegressionResult, X: DesignMatrix | None = None,
            alpha: float = 0.05) -> StabilityResult:
    """Cumulative squared recursive-residual share against parallel
    bounds r/m +/- c0 from the embedded table (5% only)."""
    X = X if X is not None else rr.design
    if alpha != 0.05:
        raise ConfigError("CUSUMSQ offsets are tabulated at 5% only")
    w = recursive_residuals(rr.y, X)
    m = w.shape[0]
    w2 = w**2
    total = float(w2.sum())
    if total == 0.0:
        raise ZeroVariance("all recursive residuals are zero")
    path = np.cumsum(w2) / total
    expected = np.arange(1, m + 1) / m
    c0 = cusumsq_c0(m)
    upper = expected + c0
    lower = expected - c0
    stable = bool(np.all((path >= lower) & (path <= upper)))
    return StabilityResult("CUSUMSQ", path, lower, upper, stable, alpha)


def run_battery(rr: RegressionResult, X: DesignMatrix | None = None,
                bg_lags: int = 2, reset_powers=(2,), alpha: float = 0.05,
                include: tuple[str, ...] = (
                    "serial_correlation", "functional_form", "normality",
                    "heteroscedasticity", "stability",
                )) -> DiagnosticsReport:
    """Run the full diagnostics battery on one regression."""
    X = X if X is not None else rr.design
    sc = breusch_godfrey(rr, X, bg_lags) \
        if "serial_correlation" in include else None
    ff = ramsey_reset(rr, X, reset_powers) \
        if "functional_form" in include else None
    nm = jarque_bera(rr.residuals) if "normality" in include else None
    ht = breusch_pagan(rr, X) if "heteroscedasticity" in include else None
    cs = cusum(rr, X, alpha) if "stability" in include else None
    csq = cusumsq(rr, X, 0.05) if "stability" in include else None

    ok = True
    for t in (sc, ff, nm, ht):
        if t is not None and t.decision_at.get(alpha) == "reject":
            ok = False
    for s in (cs, csq):
        if s is not None and not s.stable:
            ok = False
    return DiagnosticsReport(
        serial_correlation=sc,
        functional_form=ff,
        normality=nm,
        heteroscedasticity=ht,
        cusum=cs,
        cusumsq=csq,
        alpha=alpha,
        verdict="pass" if ok else "fail",
    )
