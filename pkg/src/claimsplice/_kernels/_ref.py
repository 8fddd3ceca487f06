"""Pure-numpy reference implementation of the likelihood kernels.

Vectorized and numerically identical (to rounding) to the Cython twin in
``_fastkern.pyx``; the test suite cross-checks the two on random inputs.
"""

from __future__ import annotations

import numpy as np


def _softplus(t):
    return np.where(t > 0, t + np.log1p(np.exp(-np.abs(t))), np.log1p(np.exp(np.minimum(t, 0.0))))


def _log1mexp(x):
    ln2 = 0.6931471805599453
    with np.errstate(divide="ignore"):
        small = np.log(-np.expm1(-np.minimum(x, ln2)))
        large = np.log1p(-np.exp(-np.maximum(x, ln2)))
    return np.where(x < ln2, small, large)


def _head_logpdf_logcdf(family, params, y):
    """Log pdf and log cdf of the head family at y (scalar or array)."""
    if family == 0:  # Weibull
        mu, sigma = params[0], params[1]
        z = np.log(y) - np.log(sigma)
        lp = np.log(mu) - np.log(sigma) + (mu - 1.0) * z - np.exp(mu * z)
        lc = _log1mexp(np.exp(mu * z))
    elif family == 1:  # Paralogistic
        mu, sigma = params[0], params[1]
        t = mu * (np.log(y) + np.log(sigma))
        lp = 2.0 * np.log(mu) + t - np.log(y) - (mu + 1.0) * _softplus(t)
        lc = _log1mexp(mu * _softplus(t))
    elif family == 2:  # Inverse Burr
        mu, sigma, tau = params[0], params[1], params[2]
        z = np.log(y) + np.log(tau)
        lp = (
            np.log(mu) + np.log(sigma) + mu * sigma * z - np.log(y)
            - (mu + 1.0) * _softplus(sigma * z)
        )
        lc = -mu * _softplus(-sigma * z)
    else:
        raise ValueError(f"unknown head family code {family}")
    return lp, lc


def composite_nll(family, params, y):
    """Negative log-likelihood of a spliced head/tail model.

    ``params`` is the raw parameter vector ``[head..., alpha, gamma, theta]``
    per the family-code layout in the package docstring. Observations with
    ``y <= theta`` fall in the head branch (closed interval). Returns +inf
    for invalid parameters or for data with zero density.
    """
    params = np.asarray(params, dtype=float)
    y = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(params)) or np.any(params <= 0.0):
        return np.inf
    alpha, gamma, theta = params[-3], params[-2], params[-1]

    # Inverse Weibull tail pieces at theta
    t_theta = np.exp(alpha * (np.log(gamma) - np.log(theta)))
    log_sf_iw_theta = _log1mexp(t_theta)
    log_f_iw_theta = np.log(alpha) - np.log(theta) + alpha * (np.log(gamma) - np.log(theta)) - t_theta

    lp_h_theta, lc_h_theta = _head_logpdf_logcdf(family, params, theta)

    log_a = log_f_iw_theta + lc_h_theta
    log_b = lp_h_theta + log_sf_iw_theta
    if not (np.isfinite(log_a) or np.isfinite(log_b)):
        return np.inf
    log_r = -_softplus(log_b - log_a)
    log_1mr = -_softplus(log_a - log_b)

    head = y <= theta
    total = 0.0
    if np.any(head):
        lp, _ = _head_logpdf_logcdf(family, params, y[head])
        total += np.sum(log_r + lp - lc_h_theta)
    if np.any(~head):
        yt = y[~head]
        z = np.log(gamma) - np.log(yt)
        lp_iw = np.log(alpha) - np.log(yt) + alpha * z - np.exp(alpha * z)
        total += np.sum(log_1mr + lp_iw - log_sf_iw_theta)
    if not np.isfinite(total):
        return np.inf
    return -float(total)


def gumbel_nll(phi, u, v):
    """Negative log-likelihood of the Gumbel copula density at (u, v) pairs.

    Expects u, v strictly inside (0, 1); callers clamp pseudo-observations.
    """
    if not np.isfinite(phi) or phi < 1.0:
        return np.inf
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    lu = -np.log(u)  # > 0
    lv = -np.log(v)
    # s = lu^phi + lv^phi computed via logs to survive extreme phi
    a = phi * np.log(lu)
    b = phi * np.log(lv)
    m = np.maximum(a, b)
    log_s = m + np.log1p(np.exp(-np.abs(a - b)))
    w = np.exp(log_s / phi)  # s^(1/phi)
    logc = (
        -w
        + (phi - 1.0) * (np.log(lu) + np.log(lv))
        + lu
        + lv
        + (1.0 / phi - 2.0) * log_s
        + np.log(w + phi - 1.0)
    )
    total = np.sum(logc)
    if not np.isfinite(total):
        return np.inf
    return -float(total)
