"""Numerical two-sided evaluation of the bounds and orderings of the inaccuracy.

Each check evaluates both sides of an inequality by quadrature and returns a
:class:`BoundCheck`.  ``slack`` is signed so that a non-negative value means
the inequality holds; a check passes when ``slack >= -margin`` with
``margin = 1e-7 * max(|lhs|, |rhs|, 1)``.  A failing comparison is
re-evaluated once at ten times tighter quadrature tolerance before it is
reported, so quadrature noise is not mistaken for a violation.

Checks whose premise (stochastic order, support, range of beta) is not met
return status ``premise_violated``; checks whose auxiliary integrals diverge
or overflow return ``inconclusive``.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

import numpy as np
from scipy.special import gamma as gamma_fn

from .distributions import (Affine, Exponential, MixtureHazard, Rayleigh,
                            SurvivalModel, Truncated, Weibull)
from .exceptions import DivergenceError, DomainError, IntegrationError
from .measures import (IntegrationConfig, PowerWeight, _integrate_tail,
                       _signed_integral, _weight, dwfgcri, dwfgcri_phr,
                       shannon_entropy, wcri, wfgcre, wfgcri)

__all__ = [
    "THEOREMS",
    "BoundCheck",
    "stochastically_le",
    "check_lower_bound_T2_1",
    "check_stochastic_order_bounds",
    "check_monotonicity_T2_3_T2_4",
    "check_finite_support_bounds_T2_7",
    "check_weight_power_bound_T2_8",
    "check_mixture_bound_T2_9",
    "check_phr_scaling_T3_2",
    "random_suite",
    "run_config",
]

THEOREMS = ("T2_1i", "T2_1ii", "T2_2", "T2_3", "T2_4", "T2_7i", "T2_7ii",
            "T2_8", "T2_9", "T3_2")

HOLDS = "holds"
VIOLATED = "violated"
PREMISE_VIOLATED = "premise_violated"
INCONCLUSIVE = "inconclusive"

MARGIN = 1e-7
PREMISE_GRID = 1000


@dataclass(frozen=True)
class BoundCheck:
    theorem: str
    lhs: float
    rhs: float
    slack: float
    status: str
    config: str = ""

    @property
    def holds(self) -> Optional[bool]:
        if self.status == HOLDS:
            return True
        if self.status == VIOLATED:
            return False
        return None

    @property
    def config_hash(self) -> str:
        return hashlib.sha256(f"{self.theorem}|{self.config}".encode()).hexdigest()[:12]


def _margin(lhs, rhs):
    return MARGIN * max(abs(lhs), abs(rhs), 1.0)


def _slack(lhs, rhs, relation):
    if relation == ">=":
        return lhs - rhs
    if relation == "<=":
        return rhs - lhs
    return -abs(lhs - rhs)


# Sides are computed by a callable taking an IntegrationConfig so a failing
# comparison can be redone at tighter tolerance.
Sides = Callable[[IntegrationConfig], tuple]


def _decide(theorem: str, sides: Sides, relation: str, config: IntegrationConfig,
            desc: str) -> BoundCheck:
    try:
        lhs, rhs = sides(config)
        slack = _slack(lhs, rhs, relation)
        if not slack >= -_margin(lhs, rhs):
            lhs, rhs = sides(config.tightened())
            slack = _slack(lhs, rhs, relation)
    except (DivergenceError, OverflowError, IntegrationError) as exc:
        return BoundCheck(theorem, math.nan, math.nan, math.nan, INCONCLUSIVE,
                          f"{desc}; {type(exc).__name__}: {exc}")
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        return BoundCheck(theorem, lhs, rhs, math.nan, INCONCLUSIVE, desc)
    status = HOLDS if slack >= -_margin(lhs, rhs) else VIOLATED
    return BoundCheck(theorem, lhs, rhs, slack, status, desc)


def _premise_failed(theorem, desc, why):
    return BoundCheck(theorem, math.nan, math.nan, math.nan, PREMISE_VIOLATED,
                      f"{desc}; premise: {why}")


def _describe(**kw):
    parts = []
    for k, v in kw.items():
        if isinstance(v, float):
            v = repr(v)
        parts.append(f"{k}={v}")
    return ",".join(parts)


def stochastically_le(x: SurvivalModel, y: SurvivalModel, points: int = PREMISE_GRID,
                      tol: float = 1e-12) -> bool:
    """``X <=_st Y`` on a grid of ``points`` log-spaced points (``S_X <= S_Y``)."""
    upper = max(float(m._inv_cumhaz(np.array([-math.log(1e-12)]))[0])
                for m in (x, y))
    upper = min(upper, *(m.support[1] for m in (x, y)))
    grid = np.concatenate([[0.0], np.geomspace(upper * 1e-6, upper, points - 1)])
    sx = np.exp(-x._cumhaz(grid))
    sy = np.exp(-y._cumhaz(grid))
    return bool(np.all(sx <= sy + tol))


# -- individual theorems --------------------------------------------------------

def check_lower_bound_T2_1(true: SurvivalModel, ref: SurvivalModel, beta: float,
                           weight=1.0, variant: str = "i",
                           config: Optional[IntegrationConfig] = None) -> BoundCheck:
    """Lower bounds on the inaccuracy.

    Variant ``i`` compares with ``1/Gamma(beta+1) int psi S_X F_Y**beta``.
    Variant ``ii`` compares with ``exp(D + H(X)) / Gamma(beta+1)`` where
    ``D = int f_X ln[psi S_X (-ln S_Y)**beta]`` and ``H`` is the differential
    entropy of ``X`` (log-sum inequality).
    """
    psi = _weight(weight)
    config = config or IntegrationConfig()
    beta = float(beta)
    desc = _describe(X=true.to_spec(), Y=ref.to_spec(), beta=beta, c=psi.c)
    if variant == "i":
        def sides(cfg):
            lhs = wfgcri(true, ref, beta, psi, cfg).value

            def integrand(w):
                sx = np.exp(-true._cumhaz(w))
                fy = -np.expm1(-ref._cumhaz(w))
                return np.where(sx > 0, psi(w) * sx * np.power(fy, beta), 0.0)

            rhs = _integrate_tail(integrand, true, 0.0, cfg, (ref,)).value
            return lhs, rhs / gamma_fn(beta + 1.0)

        return _decide("T2_1i", sides, ">=", config, desc)
    if variant == "ii":
        def sides(cfg):
            lhs = wfgcri(true, ref, beta, psi, cfg).value

            def integrand(w):
                with np.errstate(divide="ignore", invalid="ignore"):
                    logf = np.log(true._hazard(w)) - true._cumhaz(w)
                    f = np.exp(logf)
                    inner = -true._cumhaz(w)
                    if psi.c > 0:
                        inner = inner + psi.c * np.log(w)
                    if beta > 0:
                        inner = inner + beta * np.log(ref._cumhaz(w))
                    return np.where(f > 0, f * inner, 0.0)

            d = _signed_integral(integrand, true, cfg)
            h = shannon_entropy(true, cfg)
            rhs = math.exp(d + h) / gamma_fn(beta + 1.0)
            return lhs, rhs

        return _decide("T2_1ii", sides, ">=", config, desc)
    raise DomainError(f"variant must be 'i' or 'ii', got {variant!r}")


def check_stochastic_order_bounds(x: SurvivalModel, y: SurvivalModel, beta: float,
                                  weight=1.0, direction: Optional[str] = None,
                                  config: Optional[IntegrationConfig] = None
                                  ) -> BoundCheck:
    """Inaccuracy versus the weighted entropies of both models.

    ``direction`` is ``"X_le_st_Y"`` (upper bound by the minimum) or
    ``"X_ge_st_Y"`` (lower bound by the maximum); ``None`` picks whichever
    order the models satisfy.
    """
    psi = _weight(weight)
    config = config or IntegrationConfig()
    beta = float(beta)
    desc = _describe(X=x.to_spec(), Y=y.to_spec(), beta=beta, c=psi.c)
    le, ge = stochastically_le(x, y), stochastically_le(y, x)
    if direction is None:
        direction = "X_le_st_Y" if le else "X_ge_st_Y" if ge else None
        if direction is None:
            return _premise_failed("T2_2", desc, "models not stochastically ordered")
    if direction == "X_le_st_Y" and not le:
        return _premise_failed("T2_2", desc, "X <=st Y fails on grid")
    if direction == "X_ge_st_Y" and not ge:
        return _premise_failed("T2_2", desc, "X >=st Y fails on grid")
    if direction not in ("X_le_st_Y", "X_ge_st_Y"):
        raise DomainError(f"unknown direction {direction!r}")
    desc += f",direction={direction}"

    def sides(cfg):
        k = wfgcri(x, y, beta, psi, cfg).value
        hx = wfgcre(x, beta, psi, cfg).value
        hy = wfgcre(y, beta, psi, cfg).value
        return k, (min(hx, hy) if direction == "X_le_st_Y" else max(hx, hy))

    relation = "<=" if direction == "X_le_st_Y" else ">="
    return _decide("T2_2", sides, relation, config, desc)


def check_monotonicity_T2_3_T2_4(x: SurvivalModel, y: SurvivalModel, z: SurvivalModel,
                                 beta: float, weight=1.0,
                                 config: Optional[IntegrationConfig] = None
                                 ) -> list[BoundCheck]:
    """Monotonicity in each argument and the two-triangle inequality.

    Requires ``X <=st Y <=st Z``.  Returns three checks: ``K(Z,X) >= K(Z,Y)``,
    ``K(X,Y) >= K(X,Z)`` and ``K(X,Y) + K(Y,Z) >= 2 K(X,Z)``.
    """
    psi = _weight(weight)
    config = config or IntegrationConfig()
    beta = float(beta)
    desc = _describe(X=x.to_spec(), Y=y.to_spec(), Z=z.to_spec(), beta=beta, c=psi.c)
    if not (stochastically_le(x, y) and stochastically_le(y, z)):
        return [_premise_failed("T2_3", desc + ",part=i", "X <=st Y <=st Z fails"),
                _premise_failed("T2_3", desc + ",part=ii", "X <=st Y <=st Z fails"),
                _premise_failed("T2_4", desc, "X <=st Y <=st Z fails")]

    def k(a, b, cfg):
        return wfgcri(a, b, beta, psi, cfg).value

    return [
        _decide("T2_3", lambda cfg: (k(z, x, cfg), k(z, y, cfg)), ">=", config,
                desc + ",part=i"),
        _decide("T2_3", lambda cfg: (k(x, y, cfg), k(x, z, cfg)), ">=", config,
                desc + ",part=ii"),
        _decide("T2_4", lambda cfg: (k(x, y, cfg) + k(y, z, cfg), 2.0 * k(x, z, cfg)),
                ">=", config, desc),
    ]


def check_finite_support_bounds_T2_7(x: SurvivalModel, y: SurvivalModel, beta: float,
                                     weight=1.0, variant: Optional[str] = None,
                                     config: Optional[IntegrationConfig] = None
                                     ) -> BoundCheck:
    """Bounds through the unweighted CRI for models sharing a support ``(a, b)``.

    Variant ``i`` (``beta >= 1``) is a lower bound scaled by ``inf psi``;
    variant ``ii`` (``0 < beta <= 1``) an upper bound scaled by ``sup psi``.
    With ``variant=None`` the variant follows ``beta`` (``i`` at ``beta = 1``).
    """
    psi = _weight(weight)
    config = config or IntegrationConfig()
    beta = float(beta)
    if variant is None:
        variant = "i" if beta >= 1 else "ii"
    theorem = {"i": "T2_7i", "ii": "T2_7ii"}.get(variant)
    if theorem is None:
        raise DomainError(f"variant must be 'i' or 'ii', got {variant!r}")
    desc = _describe(X=x.to_spec(), Y=y.to_spec(), beta=beta, c=psi.c)
    (a, b), (ay, by) = x.support, y.support
    if (a, b) != (ay, by) or not (0 < a < b < math.inf):
        return _premise_failed(theorem, desc, "no common bounded support 0 < a < b")
    if variant == "i" and beta < 1:
        return _premise_failed(theorem, desc, "variant i needs beta >= 1")
    if variant == "ii" and not 0 < beta <= 1:
        return _premise_failed(theorem, desc, "variant ii needs 0 < beta <= 1")
    scale = a**psi.c if variant == "i" else b**psi.c

    def sides(cfg):
        lhs = wfgcri(x, y, beta, psi, cfg).value
        cri = wcri(x, y, 0.0, cfg).value
        rhs = scale * cri**beta / (gamma_fn(beta + 1.0) * (b - a) ** (beta - 1.0))
        return lhs, rhs

    return _decide(theorem, sides, ">=" if variant == "i" else "<=", config, desc)


def check_weight_power_bound_T2_8(x: SurvivalModel, y: SurvivalModel, beta: float,
                                  zeta_exponent: float,
                                  config: Optional[IntegrationConfig] = None
                                  ) -> BoundCheck:
    """Weight ``psi = zeta**beta`` against the WCRI with weight ``zeta``.

    With ``zeta(w) = w**z`` the inaccuracy uses exponent ``beta * z``; the
    comparison is ``>=`` for ``beta > 1``, ``<=`` for ``beta < 1`` and
    equality at ``beta = 1``.
    """
    config = config or IntegrationConfig()
    beta, z = float(beta), float(zeta_exponent)
    desc = _describe(X=x.to_spec(), Y=y.to_spec(), beta=beta, zeta=z)

    def sides(cfg):
        lhs = wfgcri(x, y, beta, PowerWeight(beta * z), cfg).value
        rhs = wcri(x, y, z, cfg).value ** beta / gamma_fn(beta + 1.0)
        return lhs, rhs

    relation = ">=" if beta > 1 else "<=" if beta < 1 else "=="
    return _decide("T2_8", sides, relation, config, desc)


def check_mixture_bound_T2_9(components: Sequence[tuple], ref: SurvivalModel,
                             beta: float, weight=1.0,
                             config: Optional[IntegrationConfig] = None) -> BoundCheck:
    """Inaccuracy of a hazard mixture against the mixture of inaccuracies."""
    psi = _weight(weight)
    config = config or IntegrationConfig()
    beta = float(beta)
    mixture = MixtureHazard(tuple(components))
    desc = _describe(X=mixture.to_spec(), Y=ref.to_spec(), beta=beta, c=psi.c)

    def sides(cfg):
        lhs = wfgcri(mixture, ref, beta, psi, cfg).value
        rhs = math.fsum(p * wfgcri(m, ref, beta, psi, cfg).value
                        for p, m in mixture.components)
        return lhs, rhs

    return _decide("T2_9", sides, "<=", config, desc)


def check_phr_scaling_T3_2(x: SurvivalModel, y: SurvivalModel, alpha: float,
                           beta: float, weight=1.0, t: float = 0.0,
                           config: Optional[IntegrationConfig] = None) -> BoundCheck:
    """PHR dynamic inaccuracy versus ``alpha**beta`` times the base one."""
    psi = _weight(weight)
    config = config or IntegrationConfig()
    alpha, beta, t = float(alpha), float(beta), float(t)
    desc = _describe(X=x.to_spec(), Y=y.to_spec(), alpha=alpha, beta=beta, c=psi.c, t=t)

    def sides(cfg):
        lhs = dwfgcri_phr(x, y, beta, alpha, t, psi, cfg).value
        rhs = alpha**beta * dwfgcri(x, y, beta, t, psi, cfg).value
        return lhs, rhs

    relation = "<=" if alpha > 1 else ">=" if alpha < 1 else "=="
    return _decide("T3_2", sides, relation, config, desc)


# -- randomized suite -----------------------------------------------------------

WEIGHT_EXPONENTS = (0.0, 0.3, 1.0, 2.0)


def _loguniform(rng, lo, hi):
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def _random_model(rng, family: Optional[str] = None, shape: Optional[float] = None):
    family = family or rng.choice(["exp", "weibull", "rayleigh"])
    if family == "exp":
        return Exponential(_loguniform(rng, 0.3, 3.0))
    if family == "weibull":
        k = shape if shape is not None else float(rng.uniform(0.7, 3.0))
        return Weibull(k, _loguniform(rng, 0.3, 3.0))
    return Rayleigh(_loguniform(rng, 0.3, 3.0))


def _random_pair(rng):
    """Half the pairs share a family (and Weibull shape), so they are ordered."""
    if rng.random() < 0.5:
        family = str(rng.choice(["exp", "weibull", "rayleigh"]))
        shape = float(rng.uniform(0.7, 3.0))
        return _random_model(rng, family, shape), _random_model(rng, family, shape)
    return _random_model(rng), _random_model(rng)


def _beta(rng, lo=0.1, hi=3.0):
    return float(rng.uniform(lo, hi))


def _c(rng):
    return float(rng.choice(WEIGHT_EXPONENTS))


def _one_config(theorem: str, rng, config) -> list[BoundCheck]:
    if theorem == "T2_1i":
        x, y = _random_pair(rng)
        return [check_lower_bound_T2_1(x, y, _beta(rng), _c(rng), "i", config)]
    if theorem == "T2_1ii":
        x, y = _random_pair(rng)
        return [check_lower_bound_T2_1(x, y, _beta(rng), _c(rng), "ii", config)]
    if theorem == "T2_2":
        x, y = _random_pair(rng)
        return [check_stochastic_order_bounds(x, y, _beta(rng), _c(rng), None, config)]
    if theorem in ("T2_3", "T2_4"):
        if rng.random() < 0.7:
            family = str(rng.choice(["exp", "weibull", "rayleigh"]))
            shape = float(rng.uniform(0.7, 3.0))
            models = [_random_model(rng, family, shape) for _ in range(3)]
        else:
            models = [_random_model(rng) for _ in range(3)]
        # larger hazard level first gives X <=st Y <=st Z within a family
        models.sort(key=lambda m: -float(m._cumhaz(np.array([1.0]))[0]))
        checks = check_monotonicity_T2_3_T2_4(*models, _beta(rng), _c(rng), config)
        return checks[:2] if theorem == "T2_3" else checks[2:]
    if theorem in ("T2_7i", "T2_7ii"):
        a = float(rng.uniform(0.05, 1.0))
        b = a + float(rng.uniform(0.3, 3.0))
        x = Truncated(_random_model(rng), a, b)
        y = Truncated(_random_model(rng), a, b)
        variant = "i" if theorem == "T2_7i" else "ii"
        beta = _beta(rng, 1.0, 3.0) if variant == "i" else _beta(rng, 0.1, 1.0)
        return [check_finite_support_bounds_T2_7(x, y, beta, _c(rng), variant, config)]
    if theorem == "T2_8":
        x, y = _random_pair(rng)
        return [check_weight_power_bound_T2_8(x, y, _beta(rng), _c(rng), config)]
    if theorem == "T2_9":
        k = int(rng.integers(2, 4))
        weights = rng.dirichlet(np.ones(k))
        weights = weights / math.fsum(weights)
        comps = [(float(p), _random_model(rng)) for p in weights]
        fix = 1.0 - math.fsum(p for p, _ in comps[1:])
        comps[0] = (fix, comps[0][1])
        return [check_mixture_bound_T2_9(comps, _random_model(rng), _beta(rng),
                                         _c(rng), config)]
    if theorem == "T3_2":
        x, y = _random_pair(rng)
        alpha = _loguniform(rng, 0.2, 5.0)
        t = float(rng.uniform(0.0, 2.0))
        return [check_phr_scaling_T3_2(x, y, alpha, _beta(rng), _c(rng), t, config)]
    raise DomainError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")


def random_suite(theorem: str, n_configs: int = 200, seed: int = 0,
                 config: Optional[IntegrationConfig] = None) -> list[BoundCheck]:
    """Run ``n_configs`` seeded random configurations of one theorem.

    Configuration ``i`` draws from its own stream seeded by ``(seed, i)``,
    so any single configuration can be reproduced in isolation.
    """
    out: list[BoundCheck] = []
    for i in range(n_configs):
        out.extend(run_config(theorem, i, seed, config))
    return out


def run_config(theorem: str, index: int, seed: int = 0,
               config: Optional[IntegrationConfig] = None) -> list[BoundCheck]:
    """Checks of configuration ``index`` in the suite seeded by ``seed``."""
    if theorem not in THEOREMS:
        raise DomainError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    rng = np.random.default_rng([seed, index, THEOREMS.index(theorem)])
    return _one_config(theorem, rng, config or IntegrationConfig())


def affine_image(model: SurvivalModel, scale: float, shift: float) -> SurvivalModel:
    """Model of ``scale * X + shift``."""
    return Affine(model, scale, shift)
