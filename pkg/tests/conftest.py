import numpy as np
import pytest

from claimsplice.composite import CompositeParams
from claimsplice.families import (
    InverseBurrParams,
    InverseWeibullParams,
    ParalogisticParams,
    WeibullParams,
)

FAMILIES = ["weibull", "paralogistic", "invburr"]


def random_head(family, rng):
    if family == "weibull":
        return WeibullParams(mu=rng.uniform(0.5, 3.0), sigma=np.exp(rng.uniform(np.log(100), np.log(10000))))
    if family == "paralogistic":
        return ParalogisticParams(mu=rng.uniform(0.6, 3.0), sigma=np.exp(rng.uniform(np.log(1e-4), np.log(1e-2))))
    return InverseBurrParams(
        mu=rng.uniform(0.5, 3.0),
        sigma=rng.uniform(0.5, 3.0),
        tau=np.exp(rng.uniform(np.log(1e-4), np.log(1e-2))),
    )


def random_composite(family, rng):
    return CompositeParams(
        head=random_head(family, rng),
        tail=InverseWeibullParams(alpha=rng.uniform(0.8, 3.0), gamma=np.exp(rng.uniform(np.log(1e3), np.log(2e4)))),
        theta=np.exp(rng.uniform(np.log(500), np.log(2e4))),
    )


def total_mass(pdf, ppf, extra_breaks=()):
    """Quadrature oracle: integral of pdf over (0, inf).

    Substitutes y = exp(s) so that scales spanning many decades and heavy
    tails integrate accurately, splitting at quantiles (and any extra
    breakpoints such as a splice threshold). The mass outside the
    [1e-9, 1-1e-9] quantile range (2e-9) is below the 1e-6 tolerances used.
    """
    from scipy import integrate

    breaks = sorted(
        set(np.log(float(ppf(q))) for q in (1e-9, 0.05, 0.5, 0.95, 1 - 1e-9))
        | set(np.log(b) for b in extra_breaks)
    )

    def g(s):
        return pdf(np.exp(s)) * np.exp(s)

    total = 0.0
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b > a:
            total += integrate.quad(g, a, b, limit=200)[0]
    return total


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
