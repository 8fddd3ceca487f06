"""Spliced claim-severity distributions joined by a Gumbel copula.

Builds composite (head/tail spliced) severity models with a continuity-fixed
mixing weight, couples two such marginals through a Gumbel copula, and
estimates everything by two-stage maximum likelihood (marginals first, then
the dependence parameter).
"""

from claimsplice.families import (
    WeibullParams,
    ParalogisticParams,
    InverseBurrParams,
    InverseWeibullParams,
)
from claimsplice.composite import CompositeParams, CompositeModel, mixing_weight
from claimsplice.copula import GumbelCopula, BivariateModel
from claimsplice.estimation import (
    OptimizerConfig,
    MarginalFit,
    FitReport,
    fit_marginal,
    fit_copula,
    fit_bivariate,
    aic,
    bic,
    empirical_kendall_tau,
)

__version__ = "0.1.0"

__all__ = [
    "WeibullParams",
    "ParalogisticParams",
    "InverseBurrParams",
    "InverseWeibullParams",
    "CompositeParams",
    "CompositeModel",
    "mixing_weight",
    "GumbelCopula",
    "BivariateModel",
    "OptimizerConfig",
    "MarginalFit",
    "FitReport",
    "fit_marginal",
    "fit_copula",
    "fit_bivariate",
    "aic",
    "bic",
    "empirical_kendall_tau",
]
