"""Hot likelihood kernels with a compiled core and a pure-Python fallback.

The derivative-free fits evaluate the composite log-likelihood thousands of
times per run, so the inner sums live here. At import we pick the Cython
extension if it built, otherwise the numpy reference; set the environment
variable ``CLAIMSPLICE_PURE=1`` to force the fallback (used by the tests and
the benchmark).

Family codes shared by both backends:
    0 Weibull head      params = [mu, sigma, alpha, gamma, theta]
    1 Paralogistic head params = [mu, sigma, alpha, gamma, theta]
    2 Inverse Burr head params = [mu, sigma, tau, alpha, gamma, theta]
"""

import os

from claimsplice._kernels import _ref

WEIBULL, PARALOGISTIC, INVBURR = 0, 1, 2

if os.environ.get("CLAIMSPLICE_PURE"):
    BACKEND = "python"
    composite_nll = _ref.composite_nll
    gumbel_nll = _ref.gumbel_nll
else:
    try:
        from claimsplice._kernels import _fastkern

        BACKEND = "cython"
        composite_nll = _fastkern.composite_nll
        gumbel_nll = _fastkern.gumbel_nll
    except ImportError:
        BACKEND = "python"
        composite_nll = _ref.composite_nll
        gumbel_nll = _ref.gumbel_nll

__all__ = [
    "BACKEND",
    "WEIBULL",
    "PARALOGISTIC",
    "INVBURR",
    "composite_nll",
    "gumbel_nll",
]
