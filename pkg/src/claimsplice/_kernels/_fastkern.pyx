# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled likelihood kernels; see _ref.py for the readable twin."""

from libc.math cimport log, log1p, exp, expm1, fabs, INFINITY, isfinite

cimport cython

import numpy as np


cdef inline double softplus(double t) nogil:
    if t > 0.0:
        return t + log1p(exp(-t))
    return log1p(exp(t))


cdef inline double log1mexp(double x) nogil:
    # log(1 - exp(-x)) for x > 0
    if x < 0.6931471805599453:
        return log(-expm1(-x))
    return log1p(-exp(-x))


cdef inline double head_logpdf(int family, double* p, double y) nogil:
    cdef double mu = p[0]
    cdef double sigma = p[1]
    cdef double z, t
    if family == 0:
        z = log(y) - log(sigma)
        return log(mu) - log(sigma) + (mu - 1.0) * z - exp(mu * z)
    elif family == 1:
        t = mu * (log(y) + log(sigma))
        return 2.0 * log(mu) + t - log(y) - (mu + 1.0) * softplus(t)
    else:
        z = log(y) + log(p[2])
        return log(mu) + log(sigma) + mu * sigma * z - log(y) - (mu + 1.0) * softplus(sigma * z)


cdef inline double head_logcdf(int family, double* p, double y) nogil:
    cdef double mu = p[0]
    cdef double sigma = p[1]
    cdef double z, t
    if family == 0:
        z = log(y) - log(sigma)
        return log1mexp(exp(mu * z))
    elif family == 1:
        t = mu * (log(y) + log(sigma))
        return log1mexp(mu * softplus(t))
    else:
        z = log(y) + log(p[2])
        return -mu * softplus(-sigma * z)


def composite_nll(int family, double[::1] params, double[::1] y):
    """Negative log-likelihood of a spliced head/tail model (compiled path)."""
    cdef Py_ssize_t k, n = y.shape[0]
    cdef Py_ssize_t np_ = params.shape[0]
    cdef double alpha, gamma, theta
    cdef double t_theta, log_sf_iw_theta, log_f_iw_theta
    cdef double lp_h_theta, lc_h_theta, log_a, log_b, log_r, log_1mr
    cdef double total = 0.0, yi, z

    for k in range(np_):
        if not isfinite(params[k]) or params[k] <= 0.0:
            return INFINITY
    alpha = params[np_ - 3]
    gamma = params[np_ - 2]
    theta = params[np_ - 1]

    t_theta = exp(alpha * (log(gamma) - log(theta)))
    log_sf_iw_theta = log1mexp(t_theta)
    log_f_iw_theta = log(alpha) - log(theta) + alpha * (log(gamma) - log(theta)) - t_theta

    lp_h_theta = head_logpdf(family, &params[0], theta)
    lc_h_theta = head_logcdf(family, &params[0], theta)

    log_a = log_f_iw_theta + lc_h_theta
    log_b = lp_h_theta + log_sf_iw_theta
    if not (isfinite(log_a) or isfinite(log_b)):
        return INFINITY
    log_r = -softplus(log_b - log_a)
    log_1mr = -softplus(log_a - log_b)

    for k in range(n):
        yi = y[k]
        if yi <= theta:
            total += log_r + head_logpdf(family, &params[0], yi) - lc_h_theta
        else:
            z = log(gamma) - log(yi)
            total += log_1mr + log(alpha) - log(yi) + alpha * z - exp(alpha * z) - log_sf_iw_theta
    if not isfinite(total):
        return INFINITY
    return -total


def gumbel_nll(double phi, double[::1] u, double[::1] v):
    """Negative log-likelihood of the Gumbel copula density (compiled path)."""
    cdef Py_ssize_t k, n = u.shape[0]
    cdef double lu, lv, a, b, m, log_s, w, total = 0.0
    if not isfinite(phi) or phi < 1.0:
        return INFINITY
    for k in range(n):
        lu = -log(u[k])
        lv = -log(v[k])
        a = phi * log(lu)
        b = phi * log(lv)
        m = a if a > b else b
        log_s = m + log1p(exp(-fabs(a - b)))
        w = exp(log_s / phi)
        total += (-w + (phi - 1.0) * (log(lu) + log(lv)) + lu + lv
                  + (1.0 / phi - 2.0) * log_s + log(w + phi - 1.0))
    if not isfinite(total):
        return INFINITY
    return -total
