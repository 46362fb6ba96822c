"""Goodness-of-fit and interpretation diagnostics for a fitted logit.

Covers Pearson chi-square over covariate patterns, the classification
summary at a probability cutoff, a plot-ready normal QQ table of Pearson
residuals, and average marginal effects with delta-method standard errors.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .logit import DesignMatrix, LogitFit, classify_threshold, predict_prob
from .special import chi2_sf, norm_ppf, two_sided_p

__all__ = [
    "CovariatePattern",
    "ClassificationSummary",
    "MarginalEffect",
    "covariate_patterns",
    "pearson_chi2",
    "classification_summary",
    "qq_export",
    "marginal_effects",
    "write_margins_csv",
    "write_qq_csv",
]


@dataclass(frozen=True)
class CovariatePattern:
    pattern_index: int
    row_indices: tuple[int, ...]
    m: int        # pattern size
    y_sum: int    # observed successes within the pattern
    p_hat: float  # fitted probability (constant within the pattern)


@dataclass(frozen=True)
class ClassificationSummary:
    tp: int
    tn: int
    fp: int
    fn: int
    accuracy: float
    sensitivity: float | None  # None when there are no positive observations
    specificity: float | None  # None when there are no negative observations
    cutoff: float


@dataclass(frozen=True)
class MarginalEffect:
    name: str
    kind: str  # "continuous" or "discrete"
    dydx: float
    std_err: float
    z: float
    p: float


def covariate_patterns(
    X: np.ndarray,
    y: np.ndarray | None = None,
    p: np.ndarray | None = None,
) -> list[CovariatePattern]:
    """Group rows by exact equality of their covariate vector.

    Patterns are numbered by first occurrence. y and fitted p, when given,
    fill in the observed successes and the (within-pattern constant)
    fitted probability.
    """
    X = np.asarray(X, dtype=float)
    if not np.all(np.isfinite(X)):
        raise ValueError("covariate matrix contains non-finite entries")
    groups: dict[bytes, list[int]] = {}
    order: list[bytes] = []
    for i in range(X.shape[0]):
        key = X[i].tobytes()
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(i)
    patterns = []
    for idx, key in enumerate(order):
        rows = groups[key]
        y_sum = int(np.sum(np.asarray(y)[rows])) if y is not None else 0
        p_hat = float(np.asarray(p)[rows[0]]) if p is not None else math.nan
        patterns.append(CovariatePattern(
            pattern_index=idx, row_indices=tuple(rows), m=len(rows),
            y_sum=y_sum, p_hat=p_hat,
        ))
    return patterns


def pearson_chi2(
    result: LogitFit, patterns: list[CovariatePattern]
) -> dict[str, float | int | None]:
    """Pearson goodness-of-fit statistic over covariate patterns.

    df = #patterns - (k+1). When df <= 0 the p-value is reported as None.
    """
    chi2 = 0.0
    for pat in patterns:
        denom = pat.m * pat.p_hat * (1.0 - pat.p_hat)
        if denom == 0.0 or pat.p_hat in (0.0, 1.0):
            raise ValueError(
                f"degenerate fitted probability {pat.p_hat} in pattern {pat.pattern_index}"
            )
        chi2 += (pat.y_sum - pat.m * pat.p_hat) ** 2 / denom
    df = len(patterns) - (result.k + 1)
    p = chi2_sf(chi2, df) if df > 0 else None
    return {"chi2": chi2, "df": df, "p": p, "n_patterns": len(patterns)}


def classification_summary(
    result: LogitFit, data: DesignMatrix, cutoff: float = 0.5
) -> ClassificationSummary:
    """Confusion counts and rates at the given probability cutoff."""
    p = predict_prob(data.X, result.beta)
    yhat = classify_threshold(p, cutoff)
    y = data.y.astype(int)
    tp = int(np.sum((yhat == 1) & (y == 1)))
    tn = int(np.sum((yhat == 0) & (y == 0)))
    fp = int(np.sum((yhat == 1) & (y == 0)))
    fn = int(np.sum((yhat == 0) & (y == 1)))
    n = len(y)
    return ClassificationSummary(
        tp=tp, tn=tn, fp=fp, fn=fn,
        accuracy=(tp + tn) / n,
        sensitivity=tp / (tp + fn) if (tp + fn) > 0 else None,
        specificity=tn / (tn + fp) if (tn + fp) > 0 else None,
        cutoff=cutoff,
    )


def qq_export(patterns: list[CovariatePattern]) -> list[tuple[float, float]]:
    """Sorted Pearson residuals paired with normal plotting positions.

    Row i carries the quantile at (i - 0.5)/J and the i-th smallest
    residual, one row per covariate pattern.
    """
    residuals = []
    for pat in patterns:
        denom = math.sqrt(pat.m * pat.p_hat * (1.0 - pat.p_hat))
        if denom == 0.0:
            raise ValueError(
                f"degenerate fitted probability {pat.p_hat} in pattern {pat.pattern_index}"
            )
        residuals.append((pat.y_sum - pat.m * pat.p_hat) / denom)
    residuals.sort()
    j = len(residuals)
    return [(norm_ppf((i + 0.5) / j), residuals[i]) for i in range(j)]


def _ame_vector(beta: np.ndarray, X: np.ndarray, targets: list[tuple[int, str]]) -> np.ndarray:
    """Average marginal effects at beta for the given (column, kind) targets."""
    p = predict_prob(X, beta)
    out = np.empty(len(targets))
    for t, (j, kind) in enumerate(targets):
        if kind == "continuous":
            out[t] = beta[j] * float(np.mean(p * (1.0 - p)))
        else:  # discrete: average counterfactual 0 -> 1 change
            X1 = X.copy()
            X1[:, j] = 1.0
            X0 = X.copy()
            X0[:, j] = 0.0
            out[t] = float(np.mean(predict_prob(X1, beta) - predict_prob(X0, beta)))
    return out


def marginal_effects(
    result: LogitFit, data: DesignMatrix, kinds: dict[str, str]
) -> list[MarginalEffect]:
    """Average marginal effects for every non-intercept predictor.

    kinds maps each predictor name to "continuous" (derivative form) or
    "discrete" (0 -> 1 counterfactual change). Standard errors come from
    the delta method with a finite-difference Jacobian against fit.cov.
    """
    targets = []
    for j, name in enumerate(result.names):
        if j == 0:
            continue
        if name not in kinds:
            raise ValueError(f"no declared kind for variable {name!r}")
        if kinds[name] not in ("continuous", "discrete"):
            raise ValueError(f"unknown kind {kinds[name]!r} for variable {name!r}")
        targets.append((j, kinds[name]))

    beta = result.beta
    ame = _ame_vector(beta, data.X, targets)

    # Jacobian d(AME)/d(beta) by central differences, relative step 1e-6.
    jac = np.empty((len(targets), len(beta)))
    for l in range(len(beta)):
        h = 1e-6 * max(1.0, abs(beta[l]))
        bp, bm = beta.copy(), beta.copy()
        bp[l] += h
        bm[l] -= h
        jac[:, l] = (_ame_vector(bp, data.X, targets) - _ame_vector(bm, data.X, targets)) / (2 * h)
    var = jac @ result.cov @ jac.T
    se = np.sqrt(np.maximum(np.diag(var), 0.0))

    effects = []
    for t, (j, kind) in enumerate(targets):
        z = ame[t] / se[t] if se[t] > 0 else math.nan
        effects.append(MarginalEffect(
            name=result.names[j], kind=kind, dydx=float(ame[t]),
            std_err=float(se[t]), z=float(z),
            p=two_sided_p(z) if math.isfinite(z) else math.nan,
        ))
    return effects


def write_margins_csv(path: str | Path, effects: list[MarginalEffect]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["variable", "kind", "dydx", "std_err", "z", "p"])
        for e in effects:
            w.writerow([e.name, e.kind, f"{e.dydx:.12g}", f"{e.std_err:.12g}",
                        f"{e.z:.12g}", f"{e.p:.12g}"])


def write_qq_csv(path: str | Path, pairs: list[tuple[float, float]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["theoretical_quantile", "pearson_residual"])
        for theo, resid in pairs:
            w.writerow([f"{theo:.12g}", f"{resid:.12g}"])
