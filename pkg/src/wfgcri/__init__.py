"""Weighted fractional cumulative residual inaccuracy.

Survival models, quadrature evaluation of the inaccuracy family, bound
checks, plug-in estimators and the simulation, chaos and finance pipelines
built on them.
"""
from .distributions import (Affine, Exponential, GammaShape2, MixtureHazard,
                            PhrTransform, PoTransform, PowerTransform, Rayleigh,
                            SurvivalModel, Truncated, Weibull, parse_model)
from .estimators import (EmpiricalSample, empirical_sf, estimate_wfgcri_phr,
                         estimate_wfgcri_two_sample)
from .exceptions import (ConditioningError, DivergenceError, DomainError,
                         IntegrationError, WfgcriError)
from .measures import (IntegrationConfig, MeasureResult, PowerWeight, cre, dwfgcri,
                       dwfgcri_closed_form_exp, dwfgcri_phr,
                       dwfgcri_phr_closed_form_weibull2, dwfgcri_po, fgcre, fgcri,
                       shannon_entropy, wcri, wfgcre, wfgcri, wfgcri_closed_form_exp)
from .theory import THEOREMS, BoundCheck, random_suite

__version__ = "0.1.0"

__all__ = [
    "Affine", "Exponential", "GammaShape2", "MixtureHazard", "PhrTransform",
    "PoTransform", "PowerTransform", "Rayleigh", "SurvivalModel", "Truncated",
    "Weibull", "parse_model",
    "EmpiricalSample", "empirical_sf", "estimate_wfgcri_phr",
    "estimate_wfgcri_two_sample",
    "ConditioningError", "DivergenceError", "DomainError", "IntegrationError",
    "WfgcriError",
    "IntegrationConfig", "MeasureResult", "PowerWeight", "cre", "dwfgcri",
    "dwfgcri_closed_form_exp", "dwfgcri_phr", "dwfgcri_phr_closed_form_weibull2",
    "dwfgcri_po", "fgcre", "fgcri", "shannon_entropy", "wcri", "wfgcre", "wfgcri",
    "wfgcri_closed_form_exp",
    "THEOREMS", "BoundCheck", "random_suite",
]
