"""Least-squares engine: OLS with full inference, Wald/F tests, and the
Bartlett-kernel long-run variance.

Every test in the toolkit reduces to a call into this module. Fits go
through a pivoted QR decomposition, never the raw normal equations, with
rank declared deficient below 1e-10 of the largest column norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg as sla
from scipy import stats

from .errors import (
    AllZeroResiduals,
    BandwidthTooLarge,
    DegenerateRestriction,
    DimensionMismatch,
    PerfectFitDegenerate,
    RankDeficient,
    SampleTooShort,
    UnknownCoefficient,
)

RANK_RTOL = 1e-10
DEFAULT_LEVELS = (0.01, 0.05, 0.10)

CONST_NAME = "C"
TREND_NAME = "TREND"


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    """Named regressor columns, shape (n, k) with n > k."""

    names: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=np.float64)
        if mat.ndim != 2:
            raise DimensionMismatch("design matrix must be 2-dimensional")
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) != mat.shape[1]:
            raise DimensionMismatch(
                f"{len(self.names)} names for {mat.shape[1]} columns"
            )
        if len(set(self.names)) != len(self.names):
            raise ValueError("design column names must be unique")
        if mat.shape[0] <= mat.shape[1]:
            raise SampleTooShort(
                f"need n > k, got n={mat.shape[0]}, k={mat.shape[1]}"
            )

    @classmethod
    def from_columns(cls, columns: dict[str, np.ndarray]) -> "DesignMatrix":
        names = tuple(columns)
        mat = np.column_stack([np.asarray(columns[n], dtype=np.float64)
                               for n in names])
        return cls(names, mat)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def k(self) -> int:
        return self.matrix.shape[1]

    def column(self, name: str) -> np.ndarray:
        return self.matrix[:, self.names.index(name)]

    def drop(self, names) -> "DesignMatrix":
        keep = [i for i, n in enumerate(self.names) if n not in set(names)]
        return DesignMatrix(tuple(self.names[i] for i in keep),
                            self.matrix[:, keep])

    def has_constant(self) -> bool:
        for j in range(self.k):
            col = self.matrix[:, j]
            if col[0] != 0.0 and np.all(col == col[0]):
                return True
        return False


@dataclass(frozen=True, eq=False)
class TestStatistic:
    """A named statistic with its reference distribution and decisions.

    p_value is present exactly when the distribution is standard; a
    bounds-context Wald statistic is flagged ``nonstandard-tabulated``
    and carries neither p-value nor decisions (the bounds table owns the
    decision there).
    """

    name: str
    statistic: float
    distribution: str
    p_value: float | None
    decision_at: dict[float, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.p_value is not None:
            for alpha, decision in self.decision_at.items():
                expected = "reject" if self.p_value < alpha else "fail-to-reject"
                if decision != expected:
                    raise ValueError(
                        f"decision at {alpha} inconsistent with p-value"
                    )


def decisions_from_pvalue(p: float, levels=DEFAULT_LEVELS) -> dict[float, str]:
    return {a: ("reject" if p < a else "fail-to-reject") for a in levels}


@dataclass(frozen=True, eq=False)
class RegressionResult:
    """OLS estimates plus the full inference payload.

    sigma2 is the unbiased residual variance RSS/(n-k); the Gaussian
    log-likelihood is concentrated, i.e. evaluated at the ML variance
    RSS/n. AIC = -2 logL + 2k and SBC = -2 logL + k ln n use that
    log-likelihood, so the two variance conventions are deliberate.
    """

    coefficients: dict[str, float]
    std_errors: dict[str, float]
    t_stats: dict[str, float]
    residuals: np.ndarray
    fitted: np.ndarray
    r_squared: float
    adj_r_squared: float
    f_statistic: float
    durbin_watson: float
    log_likelihood: float
    aic: float
    sbc: float
    sigma2: float
    cov_matrix: np.ndarray
    n: int
    k: int
    design: DesignMatrix
    y: np.ndarray

    @property
    def rss(self) -> float:
        return float(self.residuals @ self.residuals)

    @property
    def beta(self) -> np.ndarray:
        return np.array([self.coefficients[n] for n in self.design.names])


def ols(y, X: DesignMatrix) -> RegressionResult:
    """Fit y on X by least squares via a pivoted QR decomposition.

    Parameters
    ----------
    y : array_like, shape (n,)
        Dependent variable.
    X : DesignMatrix
        Full-column-rank design; include the constant explicitly.

    Returns
    -------
    RegressionResult

    Raises
    ------
    DimensionMismatch
        y does not match the design's row count.
    RankDeficient
        A pivoted diagonal of R falls below 1e-10 of the largest column
        norm; the error names the offending columns.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or y.shape[0] != X.n:
        raise DimensionMismatch(
            f"y has shape {y.shape}, design has {X.n} rows"
        )
    n, k = X.n, X.k

    Q, R, piv = sla.qr(X.matrix, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if diag[0] == 0.0:
        raise RankDeficient(X.names, "design is identically zero")
    deficient = np.flatnonzero(diag < RANK_RTOL * diag[0])
    if deficient.size:
        bad = tuple(X.names[piv[i]] for i in deficient)
        raise RankDeficient(bad)

    beta_piv = sla.solve_triangular(R, Q.T @ y)
    beta = np.empty(k)
    beta[piv] = beta_piv

    fitted = X.matrix @ beta
    residuals = y - fitted
    rss = float(residuals @ residuals)
    df = n - k
    sigma2 = rss / df

    r_inv = sla.solve_triangular(R, np.eye(k))
    xtx_inv_piv = r_inv @ r_inv.T
    xtx_inv = np.empty((k, k))
    xtx_inv[np.ix_(piv, piv)] = xtx_inv_piv
    cov = sigma2 * xtx_inv
    cov = (cov + cov.T) / 2.0
    se = np.sqrt(np.maximum(np.diag(cov), 0.0))

    has_const = X.has_constant()
    if has_const:
        ybar = y.mean()
        centered = y - ybar
        tss = float(centered @ centered)
        # a dependent that is constant relative to machine precision has
        # nothing to explain; without the guard 0/0 noise leaks into R^2
        if math.sqrt(tss / n) <= 1e-14 * abs(ybar):
            tss = 0.0
    else:
        tss = float(y @ y)
    if tss > 0.0:
        r2 = min(max(1.0 - rss / tss, 0.0), 1.0)
    else:
        r2 = 0.0
    adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / df if df > 0 else math.nan

    q_overall = k - 1 if has_const else k
    if q_overall >= 1:
        if rss > 0.0:
            f_stat = (max(tss - rss, 0.0) / q_overall) / (rss / df)
        else:
            f_stat = math.inf
    else:
        f_stat = math.nan

    if rss > 0.0:
        diffs = np.diff(residuals)
        dw = float(diffs @ diffs) / rss
        log_l = -0.5 * n * (math.log(2.0 * math.pi) + math.log(rss / n) + 1.0)
    else:
        dw = math.nan
        log_l = math.inf

    aic = -2.0 * log_l + 2.0 * k
    sbc = -2.0 * log_l + k * math.log(n)

    names = X.names
    return RegressionResult(
        coefficients={nm: float(b) for nm, b in zip(names, beta)},
        std_errors={nm: float(s) for nm, s in zip(names, se)},
        t_stats={nm: (float(b / s) if s > 0.0 else math.nan)
                 for nm, b, s in zip(names, beta, se)},
        residuals=residuals,
        fitted=fitted,
        r_squared=r2,
        adj_r_squared=adj_r2,
        f_statistic=f_stat,
        durbin_watson=dw,
        log_likelihood=log_l,
        aic=aic,
        sbc=sbc,
        sigma2=sigma2,
        cov_matrix=cov,
        n=n,
        k=k,
        design=X,
        y=y,
    )


def information_criteria(rr: RegressionResult) -> tuple[float, float]:
    """(AIC, SBC) under the contract -2 logL + {2k, k ln n}."""
    aic = -2.0 * rr.log_likelihood + 2.0 * rr.k
    sbc = -2.0 * rr.log_likelihood + rr.k * math.log(rr.n)
    return aic, sbc


def wald_f_test(rr: RegressionResult, restricted_names,
                bounds_context: bool = False,
                levels=DEFAULT_LEVELS) -> TestStatistic:
    """F-test of H0: every named coefficient equals zero.

    F = ((RSS_r - RSS_u)/q) / (RSS_u/(n-k)). In a bounds-test context
    the statistic's asymptotic distribution is nonstandard, so the
    result carries no p-value and no decisions; otherwise it is F(q, n-k).

    Raises
    ------
    UnknownCoefficient
        A restricted name is not in the model.
    PerfectFitDegenerate
        Unrestricted RSS is zero: the ratio is undefined, not infinite.
    DegenerateRestriction
        The restricted model cannot be estimated.
    """
    restricted = tuple(restricted_names)
    if not restricted:
        raise ValueError("need at least one restricted coefficient")
    unknown = [nm for nm in restricted if nm not in rr.coefficients]
    if unknown:
        raise UnknownCoefficient(", ".join(unknown))

    rss_u = rr.rss
    scale = float(rr.y @ rr.y)
    if rss_u <= 1e-13 * max(scale, 1.0):
        raise PerfectFitDegenerate(
            "unrestricted model fits exactly; F ratio undefined"
        )

    remaining = [nm for nm in rr.design.names if nm not in set(restricted)]
    if remaining:
        try:
            restricted_fit = ols(rr.y, rr.design.drop(restricted))
        except RankDeficient as exc:
            raise DegenerateRestriction(str(exc)) from exc
        rss_r = restricted_fit.rss
    else:
        rss_r = scale

    q = len(restricted)
    df = rr.n - rr.k
    f_stat = max(rss_r - rss_u, 0.0) / q / (rss_u / df)

    if bounds_context:
        return TestStatistic(
            name=f"F({', '.join(restricted)} = 0)",
            statistic=float(f_stat),
            distribution="nonstandard-tabulated",
            p_value=None,
            decision_at={},
        )
    p = float(stats.f.sf(f_stat, q, df))
    return TestStatistic(
        name=f"F({', '.join(restricted)} = 0)",
        statistic=float(f_stat),
        distribution=f"F({q}, {df})",
        p_value=p,
        decision_at=decisions_from_pvalue(p, levels),
    )


def default_bandwidth(n: int) -> int:
    """Bartlett truncation rule floor(4 (n/100)^(2/9)) used when no
    bandwidth is given."""
    return int(math.floor(4.0 * (n / 100.0) ** (2.0 / 9.0)))


def newey_west_lrv(residuals, bandwidth: int) -> float:
    """Bartlett-kernel long-run variance of a residual series.

    lambda^2 = gamma_0 + 2 sum_{j=1..bw} (1 - j/(bw+1)) gamma_j with
    gamma_j the j-th sample autocovariance of the demeaned series
    (divisor n). Nonnegative by construction of the kernel.
    """
    e = np.asarray(residuals, dtype=np.float64)
    if e.size == 0:
        raise SampleTooShort("empty residual vector")
    if bandwidth < 0:
        raise ValueError("bandwidth must be nonnegative")
    if bandwidth >= e.size:
        raise BandwidthTooLarge(
            f"bandwidth {bandwidth} with only {e.size} residuals"
        )
    d = e - e.mean()
    n = e.size
    lrv = float(d @ d) / n
    for j in range(1, bandwidth + 1):
        gamma_j = float(d[j:] @ d[:-j]) / n
        lrv += 2.0 * (1.0 - j / (bandwidth + 1.0)) * gamma_j
    return max(lrv, 0.0)


def durbin_watson(residuals) -> float:
    """DW = sum (e_t - e_{t-1})^2 / sum e_t^2."""
    e = np.asarray(residuals, dtype=np.float64)
    if e.size < 2:
        raise SampleTooShort("Durbin-Watson needs at least 2 residuals")
    denom = float(e @ e)
    if denom == 0.0:
        raise AllZeroResiduals("all residuals are zero")
    diffs = np.diff(e)
    return float(diffs @ diffs) / denom
