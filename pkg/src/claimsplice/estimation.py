"""Two-stage (margins-first) maximum likelihood and model selection.

Stage 1 maximizes each marginal composite log-likelihood with a restarted
Nelder-Mead simplex on transformed parameters; the likelihood is not smooth
in the threshold at data points, so a derivative-free search is deliberate.
Stage 2 plugs the fitted marginal cdfs in as pseudo-observations and
maximizes the Gumbel copula likelihood over its single parameter.

Model selection uses AIC = -2 l + 2 df and BIC = -2 l + ln(n) df on the
joint decomposition l = l_marginal1 + l_marginal2 + l_copula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import optimize

from claimsplice import _kernels
from claimsplice.composite import (
    MODEL_TAGS,
    CompositeModel,
    CompositeParams,
    HEAD_FAMILIES,
    InverseBurrParams,
    InverseWeibullParams,
    ParalogisticParams,
    WeibullParams,
)
from claimsplice.copula import BivariateModel, GumbelCopula, clamp_pseudo_obs


class ConvergenceError(RuntimeError):
    """Raised when no optimizer restart reaches the tolerance."""


class DegenerateDataError(ValueError):
    """Raised for data the estimator cannot work with (e.g. all equal)."""


@dataclass(frozen=True)
class OptimizerConfig:
    max_iter: int = 5000
    tol: float = 1e-8
    restarts: int = 3
    simplex_scale: float = 0.1
    min_n: int = 20
    seed: Optional[int] = None

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be > 0")
        if self.max_iter < 1 or self.restarts < 1:
            raise ValueError("max_iter and restarts must be >= 1")


@dataclass
class MarginalFit:
    family: str  # head-family name
    params: CompositeParams
    r: float
    loglik: float
    df: int
    converged: bool
    n_iter: int
    n: int

    @property
    def model(self):
        return CompositeModel(self.params)


@dataclass
class CopulaFit:
    phi: float
    loglik: float
    at_boundary: bool


@dataclass
class FitReport:
    marginal1: MarginalFit
    marginal2: MarginalFit
    copula: CopulaFit
    n: int
    loglik: float = field(init=False)
    df: int = field(init=False)
    df_fixed_thresholds: int = field(init=False)
    aic: float = field(init=False)
    bic: float = field(init=False)
    model_tau: float = field(init=False)
    empirical_tau: Optional[float] = None

    def __post_init__(self):
        self.loglik = self.marginal1.loglik + self.marginal2.loglik + self.copula.loglik
        self.df = self.marginal1.df + self.marginal2.df + 1
        # alternative accounting that leaves the threshold out of each marginal count
        self.df_fixed_thresholds = self.df - 2
        self.aic = aic(self.loglik, self.df)
        self.bic = bic(self.loglik, self.df, self.n)
        self.model_tau = 1.0 - 1.0 / self.copula.phi

    @property
    def model(self):
        return BivariateModel(self.marginal1.model, self.marginal2.model, GumbelCopula(self.copula.phi))


def aic(loglik, df):
    """Akaike information criterion, -2 l + 2 df."""
    if df < 1:
        raise ValueError("df must be >= 1")
    return -2.0 * loglik + 2.0 * df


def bic(loglik, df, n):
    """Bayesian information criterion, -2 l + ln(n) df (natural log)."""
    if df < 1 or n < 1:
        raise ValueError("df >= 1 and n >= 1 required")
    return -2.0 * loglik + math.log(n) * df


# ---------------------------------------------------------------------------
# stage 1: marginal fits

_HEAD_DIM = {"weibull": 2, "paralogistic": 2, "invburr": 3}


def _pack_params(family, x, lo, hi):
    """Transformed optimizer vector -> raw kernel parameter vector.

    Positive parameters ride on the log scale; the threshold is squashed
    into (lo, hi) by a logistic so every simplex point stays feasible.
    """
    k = _HEAD_DIM[family]
    raw = np.empty(k + 3)
    raw[: k + 2] = np.exp(x[: k + 2])
    t = x[k + 2]
    raw[k + 2] = lo + (hi - lo) / (1.0 + np.exp(-t))
    return raw


def _unpack_theta(theta, lo, hi):
    p = (theta - lo) / (hi - lo)
    p = min(max(p, 1e-12), 1.0 - 1e-12)
    return math.log(p / (1.0 - p))


def _initial_guesses(family, data, theta0):
    """Crude moment-style starting values given a threshold guess."""
    head_data = data[data <= theta0]
    if head_data.size == 0:
        head_data = data
    med = float(np.median(head_data))
    if family == "weibull":
        head = [1.0, float(np.mean(head_data))]
    elif family == "paralogistic":
        head = [1.0, 1.0 / med]
    else:
        head = [1.0, 1.0, 1.0 / med]
    tail = [1.5, theta0]
    return np.array(head + tail + [theta0])


def _raw_to_params(family, raw):
    k = _HEAD_DIM[family]
    head_cls = HEAD_FAMILIES[family]
    head = head_cls(*raw[:k])
    tail = InverseWeibullParams(alpha=raw[k], gamma=raw[k + 1])
    return CompositeParams(head=head, tail=tail, theta=float(raw[k + 2]))


def fit_marginal(data, family, config=None):
    """Maximum-likelihood fit of one composite marginal.

    Runs a Nelder-Mead search from several threshold initializations
    (data quantiles 0.5, 0.7, 0.9 cycled over the restart budget) and keeps
    the best local maximum.
    """
    config = config or OptimizerConfig()
    if family not in HEAD_FAMILIES:
        raise ValueError(f"unknown head family {family!r}; expected one of {sorted(HEAD_FAMILIES)}")
    data = np.ascontiguousarray(data, dtype=float)
    if np.any(data <= 0) or np.any(~np.isfinite(data)):
        raise ValueError("all observations must be strictly positive and finite")
    if data.size < config.min_n:
        raise DegenerateDataError(f"need at least {config.min_n} observations, got {data.size}")
    if np.all(data == data[0]):
        raise DegenerateDataError("degenerate sample: all observations are equal")

    code = {"weibull": _kernels.WEIBULL, "paralogistic": _kernels.PARALOGISTIC, "invburr": _kernels.INVBURR}[family]
    lo, hi = float(np.min(data)), float(np.max(data))
    k = _HEAD_DIM[family]

    def objective(x):
        if np.any(np.abs(x) > 700):
            return np.inf
        return _kernels.composite_nll(code, _pack_params(family, x, lo, hi), data)

    quantiles = [0.5, 0.7, 0.9]
    best = None
    total_iter = 0
    for i in range(config.restarts):
        theta0 = float(np.quantile(data, quantiles[i % len(quantiles)]))
        raw0 = _initial_guesses(family, data, theta0)
        x0 = np.concatenate([np.log(raw0[: k + 2]), [_unpack_theta(raw0[k + 2], lo, hi)]])
        res = optimize.minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": config.max_iter,
                "fatol": config.tol,
                "xatol": 1e-8,
                "initial_simplex": x0 + config.simplex_scale * np.vstack([np.zeros_like(x0), np.eye(x0.size)]),
            },
        )
        total_iter += res.nit
        if best is None or res.fun < best.fun:
            best = res

    if not np.isfinite(best.fun):
        raise ConvergenceError(f"no finite likelihood found for family {family!r}")
    raw = _pack_params(family, best.x, lo, hi)
    params = _raw_to_params(family, raw)
    model = CompositeModel(params)
    return MarginalFit(
        family=family,
        params=params,
        r=model.r,
        loglik=-float(best.fun),
        df=k + 3,
        converged=bool(best.success),
        n_iter=total_iter,
        n=data.size,
    )


# ---------------------------------------------------------------------------
# stage 2: copula fit

def fit_copula(u, v, config=None):
    """Maximize the Gumbel likelihood over phi >= 1 on pseudo-observations.

    Works on the unconstrained scale eta = ln(phi - 1). The independence
    boundary (phi = 1, log-likelihood 0) is compared against the interior
    optimum explicitly.
    """
    config = config or OptimizerConfig()
    u = np.ascontiguousarray(clamp_pseudo_obs(u), dtype=float)
    v = np.ascontiguousarray(clamp_pseudo_obs(v), dtype=float)
    if u.shape != v.shape:
        raise ValueError("u and v must have the same length")

    def objective(eta):
        return _kernels.gumbel_nll(1.0 + math.exp(eta), u, v)

    res = optimize.minimize_scalar(objective, bounds=(-15.0, 8.0), method="bounded",
                                   options={"xatol": 1e-10, "maxiter": config.max_iter})
    phi = 1.0 + math.exp(res.x)
    loglik = -float(res.fun)
    # the boundary phi = 1 has log-likelihood exactly 0
    if loglik <= 0.0 or phi <= 1.0 + 1e-6:
        return CopulaFit(phi=1.0, loglik=0.0, at_boundary=True)
    return CopulaFit(phi=phi, loglik=loglik, at_boundary=False)


def fit_bivariate(y1, y2, family1, family2, config=None):
    """Full two-stage fit of the bivariate composite model.

    Stage failures carry the stage identity in the raised error message.
    """
    config = config or OptimizerConfig()
    y1 = np.asarray(y1, dtype=float)
    y2 = np.asarray(y2, dtype=float)
    if y1.shape != y2.shape:
        raise ValueError("coordinates must be paired: unequal lengths")
    fits = []
    for j, (y, fam) in enumerate(((y1, family1), (y2, family2)), start=1):
        try:
            fits.append(fit_marginal(y, fam, config))
        except (ValueError, RuntimeError) as exc:
            raise type(exc)(f"stage 1, marginal {j} ({fam}): {exc}") from exc
    u = clamp_pseudo_obs(fits[0].model.cdf(y1))
    v = clamp_pseudo_obs(fits[1].model.cdf(y2))
    try:
        cop = fit_copula(u, v, config)
    except (ValueError, RuntimeError) as exc:
        raise type(exc)(f"stage 2, copula: {exc}") from exc
    report = FitReport(marginal1=fits[0], marginal2=fits[1], copula=cop, n=y1.size)
    report.empirical_tau = empirical_kendall_tau(y1, y2)
    return report


def fit_bivariate_by_tag(y1, y2, tag, config=None):
    """Fit using a composite-model tag ('wiw', 'pariw', 'ibiw') for both marginals."""
    if tag not in MODEL_TAGS:
        raise ValueError(f"unknown model tag {tag!r}; expected one of {sorted(MODEL_TAGS)}")
    fam = MODEL_TAGS[tag]
    return fit_bivariate(y1, y2, fam, fam, config)


def joint_mle_refinement(y1, y2, report, config=None):
    """Optional one-step joint MLE over all parameters starting at the
    two-stage estimates. Off the default path; not part of the two-stage
    procedure proper.
    """
    config = config or OptimizerConfig()
    y1 = np.ascontiguousarray(y1, dtype=float)
    y2 = np.ascontiguousarray(y2, dtype=float)
    fam1, fam2 = report.marginal1.family, report.marginal2.family
    code1 = {"weibull": 0, "paralogistic": 1, "invburr": 2}[fam1]
    code2 = {"weibull": 0, "paralogistic": 1, "invburr": 2}[fam2]
    k1, k2 = _HEAD_DIM[fam1], _HEAD_DIM[fam2]
    lo1, hi1 = float(np.min(y1)), float(np.max(y1))
    lo2, hi2 = float(np.min(y2)), float(np.max(y2))

    def split(x):
        x1 = x[: k1 + 3]
        x2 = x[k1 + 3 : k1 + 3 + k2 + 3]
        eta = x[-1]
        return x1, x2, eta

    def objective(x):
        if np.any(np.abs(x) > 700):
            return np.inf
        x1, x2, eta = split(x)
        raw1 = _pack_params(fam1, x1, lo1, hi1)
        raw2 = _pack_params(fam2, x2, lo2, hi2)
        nll = _kernels.composite_nll(code1, raw1, y1) + _kernels.composite_nll(code2, raw2, y2)
        if not np.isfinite(nll):
            return np.inf
        m1 = CompositeModel(_raw_to_params(fam1, raw1))
        m2 = CompositeModel(_raw_to_params(fam2, raw2))
        u = np.ascontiguousarray(clamp_pseudo_obs(m1.cdf(y1)))
        v = np.ascontiguousarray(clamp_pseudo_obs(m2.cdf(y2)))
        return nll + _kernels.gumbel_nll(1.0 + math.exp(eta), u, v)

    def to_x(fit, lo, hi, k):
        raw = fit.params.as_vector()
        return np.concatenate([np.log(raw[: k + 2]), [_unpack_theta(raw[k + 2], lo, hi)]])

    x0 = np.concatenate([
        to_x(report.marginal1, lo1, hi1, k1),
        to_x(report.marginal2, lo2, hi2, k2),
        [math.log(max(report.copula.phi - 1.0, 1e-8))],
    ])
    res = optimize.minimize(objective, x0, method="Nelder-Mead",
                            options={"maxiter": config.max_iter, "fatol": config.tol})
    x1, x2, eta = split(res.x)
    return {
        "params1": _raw_to_params(fam1, _pack_params(fam1, x1, lo1, hi1)),
        "params2": _raw_to_params(fam2, _pack_params(fam2, x2, lo2, hi2)),
        "phi": 1.0 + math.exp(eta),
        "loglik": -float(res.fun),
        "converged": bool(res.success),
    }


# ---------------------------------------------------------------------------
# dependence diagnostics

def _merge_count(y, buf, lo, mid, hi):
    """Merge step counting inversions between y[lo:mid] and y[mid:hi]."""
    i, j, k, swaps = lo, mid, lo, 0
    while i < mid and j < hi:
        if y[j] < y[i]:
            buf[k] = y[j]
            swaps += mid - i
            j += 1
        else:
            buf[k] = y[i]
            i += 1
        k += 1
    buf[k:hi] = y[i:mid] if i < mid else y[j:hi]
    y[lo:hi] = buf[lo:hi]
    return swaps


def _count_inversions(y):
    y = y.copy()
    buf = np.empty_like(y)
    swaps = 0
    width = 1
    n = y.size
    while width < n:
        for lo in range(0, n - width, 2 * width):
            swaps += _merge_count(y, buf, lo, lo + width, min(lo + 2 * width, n))
        width *= 2
    return swaps


def _tie_count(sorted_vals):
    """Sum of t*(t-1)/2 over groups of equal consecutive values."""
    total = 0
    run = 1
    for a, b in zip(sorted_vals[:-1], sorted_vals[1:]):
        if a == b:
            run += 1
        else:
            total += run * (run - 1) // 2
            run = 1
    return total + run * (run - 1) // 2


def empirical_kendall_tau(x, y):
    """Tie-adjusted Kendall's tau-b in O(n log n) (merge-sort inversion count).

    The test suite checks it pair-for-pair against an O(n^2) enumeration.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.size
    if n < 2 or y.size != n:
        raise ValueError("need two equal-length samples with n >= 2")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DegenerateDataError("Kendall's tau undefined for a constant coordinate")

    order = np.lexsort((y, x))
    xs, ys = x[order], y[order]
    n0 = n * (n - 1) // 2
    n1 = _tie_count(xs)  # pairs tied in x
    n2 = _tie_count(np.sort(ys))  # pairs tied in y
    # pairs tied in both coordinates
    joint = _tie_count([(a, b) for a, b in zip(xs, ys)])
    swaps = _count_inversions(ys)
    num = n0 - n1 - n2 + joint - 2 * swaps
    return num / math.sqrt((n0 - n1) * (n0 - n2))
