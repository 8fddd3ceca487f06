"""Spliced (composite) severity model: truncated head below a threshold,
truncated Inverse Weibull tail above it.

The mixing weight r is not free: continuity of the density at the threshold
fixes it to

    r = f_T(theta) F_H(theta) / (f_T(theta) F_H(theta) + f_H(theta) S_T(theta))

where H is the head family, T the Inverse Weibull tail and S_T = 1 - F_T.
Both the A/(A+B) terms are assembled in log space so extreme thresholds do
not overflow. The cdf at the threshold equals r by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from claimsplice import _kernels
from claimsplice.families import (
    InverseBurrParams,
    InverseWeibullParams,
    ParalogisticParams,
    WeibullParams,
    _check_positive_y,
    _check_prob,
    _softplus,
)

HeadParams = Union[WeibullParams, ParalogisticParams, InverseBurrParams]

HEAD_FAMILIES = {
    "weibull": WeibullParams,
    "paralogistic": ParalogisticParams,
    "invburr": InverseBurrParams,
}

_FAMILY_CODES = {
    WeibullParams: _kernels.WEIBULL,
    ParalogisticParams: _kernels.PARALOGISTIC,
    InverseBurrParams: _kernels.INVBURR,
}

# CLI-facing tags for the three composite models
MODEL_TAGS = {"wiw": "weibull", "pariw": "paralogistic", "ibiw": "invburr"}


@dataclass(frozen=True)
class CompositeParams:
    """Head family parameters + Inverse Weibull tail + splice threshold."""

    head: HeadParams
    tail: InverseWeibullParams
    theta: float

    def __post_init__(self):
        if type(self.head) not in _FAMILY_CODES:
            raise ValueError(f"unsupported head family {type(self.head).__name__}")
        if not (np.isfinite(self.theta) and self.theta > 0.0):
            raise ValueError(f"theta must be finite and > 0, got {self.theta!r}")

    @property
    def family_code(self):
        return _FAMILY_CODES[type(self.head)]

    def as_vector(self):
        """Raw parameter vector in kernel layout [head..., alpha, gamma, theta]."""
        head = [getattr(self.head, f) for f in ("mu", "sigma", "tau") if hasattr(self.head, f)]
        return np.array(head + [self.tail.alpha, self.tail.gamma, self.theta], dtype=float)


def _log_weight_terms(params: CompositeParams):
    """(log A, log B) of the continuity condition, A = f_T F_H, B = f_H S_T at theta."""
    th = params.theta
    log_a = params.tail.logpdf(th) + params.head.logcdf(th)
    log_b = params.head.logpdf(th) + params.tail.logsf(th)
    return float(log_a), float(log_b)


def mixing_weight(params: CompositeParams):
    """Continuity mixing weight r in [0, 1], computed stably in log space."""
    log_a, log_b = _log_weight_terms(params)
    if not (np.isfinite(log_a) or np.isfinite(log_b)):
        raise ValueError(
            "degenerate composite: both continuity terms underflow at theta "
            f"(theta={params.theta!r})"
        )
    return float(np.exp(-_softplus(log_b - log_a)))


def mixing_weight_direct(params: CompositeParams):
    """r from the per-family closed-form A/(A+B) expressions in plain arithmetic.

    Redundant with :func:`mixing_weight` by algebra; kept as the direct
    transcription of the closed forms for cross-checking.
    """
    h, t, th = params.head, params.tail, params.theta
    f_t = (t.alpha / th) * (t.gamma / th) ** t.alpha * np.exp(-((t.gamma / th) ** t.alpha))
    s_t = 1.0 - np.exp(-((t.gamma / th) ** t.alpha))
    if isinstance(h, WeibullParams):
        cdf_h = 1.0 - np.exp(-((th / h.sigma) ** h.mu))
        f_h = (h.mu / h.sigma) * np.exp(-((th / h.sigma) ** h.mu)) * (th / h.sigma) ** (h.mu - 1.0)
    elif isinstance(h, ParalogisticParams):
        cdf_h = 1.0 - (1.0 / ((h.sigma * th) ** h.mu + 1.0)) ** h.mu
        f_h = h.mu**2 * (th * h.sigma) ** h.mu / (th * ((th * h.sigma) ** h.mu + 1.0) ** (h.mu + 1.0))
    else:
        cdf_h = ((h.tau * th) ** h.sigma + 1.0) ** (-h.mu) * (h.tau * th) ** (h.mu * h.sigma)
        f_h = (
            h.mu * h.sigma * (th * h.tau) ** (h.mu * h.sigma)
            / (th * ((th * h.tau) ** h.sigma + 1.0) ** (h.mu + 1.0))
        )
    a = f_t * cdf_h
    b = f_h * s_t
    return float(a / (a + b))


class CompositeModel:
    """Immutable spliced model with cached splice constants.

    Evaluation methods are vectorized over y and safe for concurrent use.
    """

    def __init__(self, params: CompositeParams):
        self.params = params
        log_a, log_b = _log_weight_terms(params)
        if not (np.isfinite(log_a) or np.isfinite(log_b)):
            raise ValueError("degenerate composite: continuity terms underflow at theta")
        self.log_r = float(-_softplus(log_b - log_a))
        self.log_1mr = float(-_softplus(log_a - log_b))
        self.r = float(np.exp(self.log_r))
        # cached normalizers: F_H(theta) and S_T(theta), in logs
        self.log_head_cdf_theta = float(params.head.logcdf(params.theta))
        self.log_tail_sf_theta = float(params.tail.logsf(params.theta))

    @property
    def theta(self):
        return self.params.theta

    def logpdf(self, y):
        y = _check_positive_y(y)
        scalar = y.ndim == 0
        y = np.atleast_1d(y)
        head = y <= self.theta
        out = np.empty_like(y)
        if np.any(head):
            out[head] = self.log_r + self.params.head.logpdf(y[head]) - self.log_head_cdf_theta
        if np.any(~head):
            out[~head] = self.log_1mr + self.params.tail.logpdf(y[~head]) - self.log_tail_sf_theta
        return float(out[0]) if scalar else out

    def pdf(self, y):
        return np.exp(self.logpdf(y))

    def cdf(self, y):
        y = _check_positive_y(y)
        scalar = y.ndim == 0
        y = np.atleast_1d(y)
        head = y <= self.theta
        out = np.empty_like(y)
        if np.any(head):
            out[head] = np.exp(self.log_r + self.params.head.logcdf(y[head]) - self.log_head_cdf_theta)
        if np.any(~head):
            tail_cdf_theta = float(self.params.tail.cdf(self.theta))
            frac = (self.params.tail.cdf(y[~head]) - tail_cdf_theta) / np.exp(self.log_tail_sf_theta)
            out[~head] = self.r + np.exp(self.log_1mr) * frac
        out = np.minimum(out, 1.0)
        return float(out[0]) if scalar else out

    def ppf(self, u):
        u = _check_prob(u)
        scalar = u.ndim == 0
        u = np.atleast_1d(u)
        out = np.empty_like(u)
        head = u <= self.r
        if np.any(head):
            uh = np.exp(np.log(u[head]) + self.log_head_cdf_theta - self.log_r)
            out[head] = self.params.head.ppf(uh)
        if np.any(~head):
            ut = u[~head]
            tail_cdf_theta = float(self.params.tail.cdf(self.theta))
            target = tail_cdf_theta + (ut - self.r) / np.exp(self.log_1mr) * np.exp(self.log_tail_sf_theta)
            out[~head] = self.params.tail.ppf(np.minimum(target, 1.0 - 1e-16))
        return float(out[0]) if scalar else out

    def sample(self, n, rng):
        """Inverse-cdf sampling; rng is a numpy Generator or a seed."""
        if n < 1:
            raise ValueError("n must be >= 1")
        rng = np.random.default_rng(rng)
        u = rng.uniform(1e-12, 1.0 - 1e-12, size=n)
        return self.ppf(u)

    def log_likelihood(self, data):
        """Sum of log densities over the observations (compiled kernel path)."""
        data = np.ascontiguousarray(_check_positive_y(data), dtype=float)
        nll = _kernels.composite_nll(self.params.family_code, self.params.as_vector(), data)
        return -nll

    def smoothness_gap(self, h=1e-5):
        """Diagnostic: relative mismatch of left/right pdf derivatives at theta.

        The splice is continuous by construction but generally not
        differentiable; this reports |f'(theta-) - f'(theta+)| / f(theta).
        """
        th = self.theta
        step = h * th
        left = (self.pdf(th) - self.pdf(th - step)) / step
        right = (self.pdf(th + 2.0 * step) - self.pdf(th + step)) / step
        return float(abs(left - right) / self.pdf(th))
