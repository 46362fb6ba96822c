"""Binary logit estimated by maximum likelihood (Newton/IRLS).

The optimizer is plain Newton-Raphson on the log-likelihood with
step-halving, which for the logistic link is the same as iteratively
reweighted least squares. Starting point is beta = 0; convergence is
declared when the log-likelihood change drops below tol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special import chi2_sf, two_sided_p

__all__ = [
    "DesignMatrix",
    "LogitFit",
    "EstimationError",
    "NonIdentifiableError",
    "CollinearityError",
    "PerfectSeparationError",
    "predict_prob",
    "log_odds",
    "log_likelihood",
    "fit",
    "classify_threshold",
    "lr_test",
    "pseudo_r2",
]

# |beta| beyond this while still growing is treated as the MLE running away.
_SEPARATION_BETA = 30.0
_RANK_TOL = 1e-12


class EstimationError(RuntimeError):
    """Base class for failures of the maximum-likelihood fit."""


class NonIdentifiableError(EstimationError):
    """The response contains only one class; no slope is identified."""


class CollinearityError(EstimationError):
    """The weighted cross-product matrix is rank deficient."""

    def __init__(self, columns: list[str]):
        self.columns = columns
        super().__init__(f"linearly dependent column(s): {columns}")


class PerfectSeparationError(EstimationError):
    """A linear combination of predictors classifies y exactly; the MLE diverges."""


@dataclass(frozen=True)
class DesignMatrix:
    X: np.ndarray          # N x (k+1), leading column of ones
    y: np.ndarray          # N, values in {0, 1}
    names: tuple[str, ...]  # k+1 column labels, intercept first

    def __post_init__(self):
        X, y = np.asarray(self.X, dtype=float), np.asarray(self.y, dtype=float)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        n, p = X.shape
        if len(self.names) != p:
            raise ValueError("names must match the number of columns")
        if y.shape != (n,):
            raise ValueError("y length must match the number of rows")
        if not n > p:
            raise ValueError(f"need more observations ({n}) than parameters ({p})")
        if not np.all(np.isfinite(X)):
            raise ValueError("design matrix contains non-finite entries")
        if not np.all((y == 0) | (y == 1)):
            raise ValueError("response must be binary 0/1")
        if not np.all(X[:, 0] == 1.0):
            raise ValueError("first column must be the intercept (all ones)")
        for j in range(1, p):
            if np.ptp(X[:, j]) == 0.0:
                raise ValueError(f"column {self.names[j]!r} is constant")

    @property
    def k(self) -> int:
        """Number of predictors, excluding the intercept."""
        return self.X.shape[1] - 1


@dataclass(frozen=True)
class LogitFit:
    names: tuple[str, ...]
    beta: np.ndarray
    cov: np.ndarray
    std_err: np.ndarray
    z: np.ndarray
    p: np.ndarray
    ll: float
    ll0: float
    n_obs: int
    n_iter: int
    converged: bool

    @property
    def k(self) -> int:
        return len(self.beta) - 1


def predict_prob(X: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Logistic probabilities exp(eta)/(1+exp(eta)), overflow-safe on both tails."""
    X = np.asarray(X, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if X.shape[1] != beta.shape[0]:
        raise ValueError(f"dimension mismatch: X has {X.shape[1]} columns, beta has {beta.shape[0]}")
    eta = X @ beta
    out = np.empty_like(eta)
    pos = eta >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-eta[pos]))
    e = np.exp(eta[~pos])
    out[~pos] = e / (1.0 + e)
    return out


def log_odds(p):
    """ln(p/(1-p)), the inverse of the logistic function; p must lie in (0, 1)."""
    p = np.asarray(p, dtype=float)
    if np.any(p <= 0.0) or np.any(p >= 1.0):
        raise ValueError("log-odds requires probabilities strictly inside (0, 1)")
    out = np.log(p / (1.0 - p))
    return float(out) if out.ndim == 0 else out


def log_likelihood(beta: np.ndarray, X: np.ndarray, y: np.ndarray) -> float:
    """Bernoulli log-likelihood, computed as sum(y*eta - softplus(eta))."""
    y = np.asarray(y, dtype=float)
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("response must be binary 0/1")
    eta = np.asarray(X, dtype=float) @ np.asarray(beta, dtype=float)
    return float(np.sum(y * eta - np.logaddexp(0.0, eta)))


def _intercept_only_ll(y: np.ndarray) -> tuple[float, float]:
    """Closed-form intercept-only MLE: beta0 = logit(ybar), and its log-likelihood."""
    ybar = float(np.mean(y))
    beta0 = math.log(ybar / (1.0 - ybar))
    n = len(y)
    ll0 = n * (ybar * math.log(ybar) + (1.0 - ybar) * math.log(1.0 - ybar))
    return beta0, ll0


def _check_rank(A: np.ndarray, names: tuple[str, ...]) -> None:
    # Rescale to unit diagonal first so the test reflects linear dependence,
    # not the wildly different units of the raw columns.
    d = np.sqrt(np.diag(A))
    if np.any(d == 0.0):
        cols = [names[j] for j in np.nonzero(d == 0.0)[0]]
        raise CollinearityError(cols)
    B = A / np.outer(d, d)
    s, vt = np.linalg.svd(B, compute_uv=True)[1:]
    if s[-1] < _RANK_TOL * s[0]:
        null = np.abs(vt[-1])
        cols = [names[j] for j in range(len(names)) if null[j] > 0.1 * null.max()]
        raise CollinearityError(cols)


def fit(data: DesignMatrix, tol: float = 1e-10, max_iter: int = 100) -> LogitFit:
    """Maximize the log-likelihood by Newton-Raphson with step-halving.

    Raises NonIdentifiableError for a single-class response,
    CollinearityError when X'WX is rank deficient, and
    PerfectSeparationError when the coefficients run away.
    """
    X, y, names = data.X, data.y, data.names
    if np.all(y == y[0]):
        raise NonIdentifiableError("response contains a single class")

    beta = np.zeros(X.shape[1])
    ll = log_likelihood(beta, X, y)
    converged = False
    n_iter = 0
    grew = False
    for n_iter in range(1, max_iter + 1):
        p = predict_prob(X, beta)
        w = p * (1.0 - p)
        A = X.T @ (X * w[:, None])
        _check_rank(A, names)
        delta = np.linalg.solve(A, X.T @ (y - p))
        step = 1.0
        beta_new = beta + delta
        ll_new = log_likelihood(beta_new, X, y)
        while ll_new < ll and step > 1e-12:
            step *= 0.5
            beta_new = beta + step * delta
            ll_new = log_likelihood(beta_new, X, y)
        grew = np.max(np.abs(beta_new)) > np.max(np.abs(beta)) + 1e-3
        done = abs(ll_new - ll) < tol
        beta, ll = beta_new, ll_new
        if done:
            converged = True
            break

    if np.max(np.abs(beta)) > _SEPARATION_BETA and grew:
        raise PerfectSeparationError(
            f"coefficients diverging (max |beta| = {np.max(np.abs(beta)):.3g} "
            f"after {n_iter} iterations)"
        )

    p = predict_prob(X, beta)
    w = p * (1.0 - p)
    A = X.T @ (X * w[:, None])
    _check_rank(A, names)
    cov = np.linalg.inv(A)
    cov = (cov + cov.T) / 2.0
    std_err = np.sqrt(np.diag(cov))
    z = beta / std_err
    pvals = np.array([two_sided_p(zj) for zj in z])
    _, ll0 = _intercept_only_ll(y)

    return LogitFit(
        names=names, beta=beta, cov=cov, std_err=std_err, z=z, p=pvals,
        ll=ll, ll0=ll0, n_obs=len(y), n_iter=n_iter, converged=converged,
    )


def classify_threshold(p, cutoff: float = 0.5):
    """1 iff p >= cutoff (the 0.5 boundary is classified positive)."""
    if not 0.0 < cutoff < 1.0:
        raise ValueError(f"cutoff must be in (0, 1), got {cutoff}")
    p = np.asarray(p, dtype=float)
    out = (p >= cutoff).astype(int)
    return int(out) if out.ndim == 0 else out


def lr_test(result: LogitFit) -> dict[str, float]:
    """Likelihood-ratio test of the fitted model against intercept-only."""
    chi2 = max(0.0, 2.0 * (result.ll - result.ll0))
    df = result.k
    p = chi2_sf(chi2, df) if df >= 1 else 1.0
    return {"chi2": chi2, "df": df, "p": p}


def pseudo_r2(result: LogitFit) -> float:
    """McFadden's pseudo R-squared, 1 - ll/ll0."""
    if result.ll0 == 0.0:
        raise ValueError("intercept-only log-likelihood is zero; pseudo R2 undefined")
    return 1.0 - result.ll / result.ll0
