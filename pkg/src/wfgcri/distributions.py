"""Parametric survival models.

Every model is an immutable value object built around its cumulative hazard
``H(w) = -ln S(w)``.  Working on the log scale keeps ``-ln S`` accurate deep in
the tail, where ``S`` itself underflows; the information measures only ever
need ``S`` and ``-ln S``.

Models can be written as short strings (``exp:rate=0.8``,
``phr:alpha=0.5,base=weibull:k=2,eta=1``, ...) and parsed back with
:func:`parse_model`.
"""
from __future__ import annotations

import abc
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import DomainError

__all__ = [
    "SurvivalModel",
    "Exponential",
    "Weibull",
    "Rayleigh",
    "GammaShape2",
    "MixtureHazard",
    "PhrTransform",
    "PoTransform",
    "Truncated",
    "Affine",
    "PowerTransform",
    "parse_model",
    "BISECTION_TOL",
]

BISECTION_TOL = 1e-12
_MAX_BISECTION_STEPS = 4000


def _nonneg(w):
    arr = np.asarray(w, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError(f"survival models are defined on w >= 0, got {w!r}")
    return arr


def _positive(name, value):
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


def _fmt(x):
    return repr(float(x))


def _scalar_or_array(arr, like):
    return float(arr) if np.ndim(like) == 0 else arr


class SurvivalModel(abc.ABC):
    """Lifetime distribution on ``[0, inf)``.

    Subclasses implement ``_cumhaz``, ``_hazard`` and optionally ``_inv_cumhaz``
    on float arrays without argument checking; the public methods validate
    and dispatch to them.
    """

    @abc.abstractmethod
    def _cumhaz(self, w: np.ndarray) -> np.ndarray: ...

    @abc.abstractmethod
    def _hazard(self, w: np.ndarray) -> np.ndarray: ...

    @abc.abstractmethod
    def to_spec(self) -> str: ...

    @property
    def support(self) -> tuple[float, float]:
        """Interval outside of which the density vanishes."""
        return 0.0, math.inf

    def __str__(self):
        return self.to_spec()

    # -- public, validated API -------------------------------------------

    def cumhaz(self, w):
        """Cumulative hazard ``-ln S(w)`` (``inf`` beyond a finite support)."""
        arr = _nonneg(w)
        return _scalar_or_array(self._cumhaz(arr), w)

    def sf(self, w):
        arr = _nonneg(w)
        return _scalar_or_array(np.exp(-self._cumhaz(arr)), w)

    def cdf(self, w):
        arr = _nonneg(w)
        return _scalar_or_array(-np.expm1(-self._cumhaz(arr)), w)

    def hazard(self, w):
        arr = _nonneg(w)
        return _scalar_or_array(self._hazard(arr), w)

    def pdf(self, w):
        arr = _nonneg(w)
        return _scalar_or_array(self._hazard(arr) * np.exp(-self._cumhaz(arr)), w)

    def logpdf(self, w):
        arr = _nonneg(w)
        with np.errstate(divide="ignore"):
            out = np.log(self._hazard(arr)) - self._cumhaz(arr)
        return _scalar_or_array(out, w)

    def inv_cumhaz(self, h):
        """Smallest ``w`` with ``H(w) >= h``."""
        arr = np.asarray(h, dtype=float)
        if np.any(np.isnan(arr)) or np.any(arr < 0):
            raise DomainError(f"cumulative hazard levels must be >= 0, got {h!r}")
        return _scalar_or_array(self._inv_cumhaz(arr), h)

    def quantile(self, q):
        arr = np.asarray(q, dtype=float)
        if np.any(~((arr > 0) & (arr < 1))):
            raise DomainError(f"quantile levels must lie in (0, 1), got {q!r}")
        return _scalar_or_array(self._inv_cumhaz(-np.log1p(-arr)), q)

    def sample(self, n: int, seed: int) -> np.ndarray:
        """Draw ``n`` values by inverse transform from a PCG64 stream."""
        if int(n) != n or n < 1:
            raise DomainError(f"sample size must be a positive integer, got {n!r}")
        rng = np.random.default_rng(seed)
        u = rng.random(int(n))
        return self._inv_cumhaz(-np.log1p(-u))

    # -- default numerical inverse ----------------------------------------

    def _inv_cumhaz(self, h: np.ndarray) -> np.ndarray:
        return _bisect_inv_cumhaz(self, h)


def _bisect_inv_cumhaz(model: SurvivalModel, h: np.ndarray) -> np.ndarray:
    """Vectorised bisection for ``H(w) = h`` to absolute tolerance 1e-12."""
    shape = np.shape(h)
    h = np.atleast_1d(np.asarray(h, dtype=float)).ravel()
    lo_s, hi_s = model.support
    lo = np.full(h.shape, lo_s)
    if math.isfinite(hi_s):
        hi = np.full(h.shape, hi_s)
    else:
        hi = np.full(h.shape, lo_s + 1.0)
        for _ in range(1100):
            short = model._cumhaz(hi) < h
            if not short.any():
                break
            hi = np.where(short, lo_s + 2.0 * (hi - lo_s), hi)
    for _ in range(_MAX_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        active = (hi - lo > BISECTION_TOL) & (mid > lo) & (mid < hi)
        if not active.any():
            break
        right = model._cumhaz(mid) < h
        lo = np.where(active & right, mid, lo)
        hi = np.where(active & ~right, mid, hi)
    out = 0.5 * (lo + hi)
    out = np.where(h <= 0, lo_s, out)
    out = np.where(np.isinf(h), hi_s, out)
    return out.reshape(shape)


@dataclass(frozen=True)
class Exponential(SurvivalModel):
    rate: float

    def __post_init__(self):
        object.__setattr__(self, "rate", _positive("rate", self.rate))

    def _cumhaz(self, w):
        return self.rate * w

    def _hazard(self, w):
        return np.full(np.shape(w), self.rate)

    def _inv_cumhaz(self, h):
        return h / self.rate

    def to_spec(self):
        return f"exp:rate={_fmt(self.rate)}"


@dataclass(frozen=True)
class Weibull(SurvivalModel):
    """Weibull with survival function ``exp(-eta * w**k)``."""

    k: float
    eta: float

    def __post_init__(self):
        object.__setattr__(self, "k", _positive("k", self.k))
        object.__setattr__(self, "eta", _positive("eta", self.eta))

    def _cumhaz(self, w):
        return self.eta * w**self.k

    def _hazard(self, w):
        with np.errstate(divide="ignore"):
            return self.eta * self.k * w ** (self.k - 1.0)

    def _inv_cumhaz(self, h):
        return (h / self.eta) ** (1.0 / self.k)

    def to_spec(self):
        return f"weibull:k={_fmt(self.k)},eta={_fmt(self.eta)}"


@dataclass(frozen=True)
class Rayleigh(SurvivalModel):
    """Rayleigh with survival function ``exp(-(b * w)**2)``."""

    b: float

    def __post_init__(self):
        object.__setattr__(self, "b", _positive("b", self.b))

    def _cumhaz(self, w):
        return (self.b * w) ** 2

    def _hazard(self, w):
        return 2.0 * self.b**2 * w

    def _inv_cumhaz(self, h):
        return np.sqrt(h) / self.b

    def to_spec(self):
        return f"rayleigh:b={_fmt(self.b)}"


@dataclass(frozen=True)
class GammaShape2(SurvivalModel):
    """Gamma(2, 1): ``S(w) = (1 + w) exp(-w)``."""

    def _cumhaz(self, w):
        return w - np.log1p(w)

    def _hazard(self, w):
        return w / (1.0 + w)

    def to_spec(self):
        return "gamma2"


@dataclass(frozen=True)
class MixtureHazard(SurvivalModel):
    """Mixture of hazard rates: ``S(w) = prod_i S_i(w)**p_i``."""

    components: tuple[tuple[float, SurvivalModel], ...]

    def __post_init__(self):
        comps = tuple((float(p), m) for p, m in self.components)
        if not comps:
            raise DomainError("a hazard mixture needs at least one component")
        if any(not (p > 0) for p, _ in comps):
            raise DomainError("mixture weights must be strictly positive")
        total = math.fsum(p for p, _ in comps)
        if abs(total - 1.0) > 1e-12:
            raise DomainError(f"mixture weights must sum to 1, got {total!r}")
        object.__setattr__(self, "components", comps)

    @property
    def weights(self):
        return tuple(p for p, _ in self.components)

    @property
    def support(self):
        los, his = zip(*(m.support for _, m in self.components))
        return min(los), min(his)

    def _cumhaz(self, w):
        return sum(p * m._cumhaz(w) for p, m in self.components)

    def _hazard(self, w):
        return sum(p * m._hazard(w) for p, m in self.components)

    def to_spec(self):
        inner = ";".join(f"{_fmt(p)}*{m.to_spec()}" for p, m in self.components)
        return f"mix:[{inner}]"


@dataclass(frozen=True)
class PhrTransform(SurvivalModel):
    """Proportional hazards: ``S(w) = S_base(w)**alpha``."""

    base: SurvivalModel
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _positive("alpha", self.alpha))

    @property
    def support(self):
        return self.base.support

    def _cumhaz(self, w):
        return self.alpha * self.base._cumhaz(w)

    def _hazard(self, w):
        return self.alpha * self.base._hazard(w)

    def _inv_cumhaz(self, h):
        return self.base._inv_cumhaz(h / self.alpha)

    def to_spec(self):
        return f"phr:alpha={_fmt(self.alpha)},base={self.base.to_spec()}"


@dataclass(frozen=True)
class PoTransform(SurvivalModel):
    """Proportional odds: ``S(w) = alpha S_b(w) / (1 - (1 - alpha) S_b(w))``."""

    base: SurvivalModel
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _positive("alpha", self.alpha))

    @property
    def support(self):
        return self.base.support

    def _cumhaz(self, w):
        hb = self.base._cumhaz(w)
        if self.alpha == 1.0:
            return hb
        # (1 - abar e^-hb) / alpha = 1 - (abar / alpha) expm1(-hb), exact 0 at hb = 0
        ratio = (1.0 - self.alpha) / self.alpha
        return hb + np.log1p(-ratio * np.expm1(-hb))

    def _hazard(self, w):
        abar = 1.0 - self.alpha
        return self.base._hazard(w) / (1.0 - abar * np.exp(-self.base._cumhaz(w)))

    def _inv_cumhaz(self, h):
        # S = s / (alpha + (1 - alpha) s) with s = exp(-h)
        abar = 1.0 - self.alpha
        hb = h + np.log(self.alpha + abar * np.exp(-h))
        return self.base._inv_cumhaz(np.maximum(hb, 0.0))

    def to_spec(self):
        return f"po:alpha={_fmt(self.alpha)},base={self.base.to_spec()}"


@dataclass(frozen=True)
class Truncated(SurvivalModel):
    """``base`` conditioned on lying in the open interval ``(a, b)``."""

    base: SurvivalModel
    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (0 <= a < b < math.inf):
            raise DomainError(f"truncation needs 0 <= a < b < inf, got ({a}, {b})")
        if not self.base._cumhaz(np.array([b]))[0] > self.base._cumhaz(np.array([a]))[0]:
            raise DomainError("base model puts no mass on the truncation interval")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def support(self):
        return self.a, self.b

    def _log_mass_above(self, w):
        # ln(S0(w) - S0(b)) for w < b
        hw = self.base._cumhaz(w)
        hb = self.base._cumhaz(np.asarray(self.b))
        with np.errstate(divide="ignore", invalid="ignore"):
            return -hw + np.log(-np.expm1(hw - hb))

    def _cumhaz(self, w):
        w = np.asarray(w, dtype=float)
        inside = (w >= self.a) & (w < self.b)
        wc = np.clip(w, self.a, self.b)
        with np.errstate(invalid="ignore"):
            core = self._log_mass_above(np.asarray(self.a)) - self._log_mass_above(wc)
        out = np.where(inside, np.maximum(core, 0.0), 0.0)
        return np.where(w >= self.b, np.inf, out)

    def _hazard(self, w):
        w = np.asarray(w, dtype=float)
        inside = (w >= self.a) & (w < self.b)
        wc = np.clip(w, self.a, self.b)
        hb = self.base._cumhaz(np.asarray(self.b))
        with np.errstate(divide="ignore", invalid="ignore"):
            core = self.base._hazard(wc) / -np.expm1(self.base._cumhaz(wc) - hb)
        return np.where(inside, core, 0.0)

    def to_spec(self):
        return f"trunc:a={_fmt(self.a)},b={_fmt(self.b)},base={self.base.to_spec()}"


@dataclass(frozen=True)
class Affine(SurvivalModel):
    """Distribution of ``scale * X + shift`` for ``X ~ base``."""

    base: SurvivalModel
    scale: float
    shift: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "scale", _positive("scale", self.scale))
        shift = float(self.shift)
        if not (shift >= 0 and math.isfinite(shift)):
            raise DomainError(f"shift must be finite and >= 0, got {shift!r}")
        object.__setattr__(self, "shift", shift)

    @property
    def support(self):
        lo, hi = self.base.support
        return self.scale * lo + self.shift, self.scale * hi + self.shift

    def _pre(self, w):
        return np.maximum((np.asarray(w, dtype=float) - self.shift) / self.scale, 0.0)

    def _cumhaz(self, w):
        return self.base._cumhaz(self._pre(w))

    def _hazard(self, w):
        w = np.asarray(w, dtype=float)
        return np.where(w >= self.shift, self.base._hazard(self._pre(w)) / self.scale, 0.0)

    def _inv_cumhaz(self, h):
        return self.scale * self.base._inv_cumhaz(h) + self.shift

    def to_spec(self):
        return (f"affine:a={_fmt(self.scale)},b={_fmt(self.shift)},"
                f"base={self.base.to_spec()}")


@dataclass(frozen=True)
class PowerTransform(SurvivalModel):
    """Distribution of ``X**power`` for ``X ~ base``."""

    base: SurvivalModel
    power: float

    def __post_init__(self):
        object.__setattr__(self, "power", _positive("power", self.power))

    @property
    def support(self):
        lo, hi = self.base.support
        return lo**self.power, hi**self.power

    def _cumhaz(self, w):
        return self.base._cumhaz(np.asarray(w, dtype=float) ** (1.0 / self.power))

    def _hazard(self, w):
        w = np.asarray(w, dtype=float)
        inv = 1.0 / self.power
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.base._hazard(w**inv) * inv * w ** (inv - 1.0)

    def _inv_cumhaz(self, h):
        return self.base._inv_cumhaz(h) ** self.power

    def to_spec(self):
        return f"pow:p={_fmt(self.power)},base={self.base.to_spec()}"


# -- model grammar -----------------------------------------------------------

def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def _params(body: str, allowed: Sequence[str]) -> dict[str, str]:
    """Parse ``k=v,k=v[,base=<model>]``; ``base=`` swallows the remainder."""
    out: dict[str, str] = {}
    rest = body
    while rest:
        if rest.startswith("base="):
            out["base"] = rest[len("base="):]
            break
        head, _, rest = rest.partition(",")
        key, eq, value = head.partition("=")
        if not eq:
            raise DomainError(f"expected key=value, got {head!r}")
        out[key.strip()] = value.strip()
    unknown = set(out) - set(allowed)
    missing = set(allowed) - set(out)
    if unknown or missing:
        raise DomainError(
            f"bad parameters {sorted(out)}; expected {sorted(allowed)}")
    return out


def _num(value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise DomainError(f"not a number: {value!r}") from None


def parse_model(text: str) -> SurvivalModel:
    """Build a model from its string form.

    >>> parse_model("phr:alpha=0.5,base=exp:rate=1")
    PhrTransform(base=Exponential(rate=1.0), alpha=0.5)
    """
    text = text.strip()
    kind, _, body = text.partition(":")
    kind = kind.strip().lower()
    if kind == "gamma2":
        if body.strip():
            raise DomainError("gamma2 takes no parameters")
        return GammaShape2()
    if kind == "exp":
        p = _params(body, ["rate"])
        return Exponential(_num(p["rate"]))
    if kind == "weibull":
        p = _params(body, ["k", "eta"])
        return Weibull(_num(p["k"]), _num(p["eta"]))
    if kind == "rayleigh":
        p = _params(body, ["b"])
        return Rayleigh(_num(p["b"]))
    if kind == "mix":
        body = body.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise DomainError("mixture components must be enclosed in [...]")
        comps = []
        for item in _split_top(body[1:-1], ";"):
            weight, star, model = item.partition("*")
            if not star:
                raise DomainError(f"mixture component needs 'p*model', got {item!r}")
            comps.append((_num(weight), parse_model(model)))
        return MixtureHazard(tuple(comps))
    if kind == "phr":
        p = _params(body, ["alpha", "base"])
        return PhrTransform(parse_model(p["base"]), _num(p["alpha"]))
    if kind == "po":
        p = _params(body, ["alpha", "base"])
        return PoTransform(parse_model(p["base"]), _num(p["alpha"]))
    if kind == "trunc":
        p = _params(body, ["a", "b", "base"])
        return Truncated(parse_model(p["base"]), _num(p["a"]), _num(p["b"]))
    if kind == "affine":
        p = _params(body, ["a", "b", "base"])
        return Affine(parse_model(p["base"]), _num(p["a"]), _num(p["b"]))
    if kind == "pow":
        p = _params(body, ["p", "base"])
        return PowerTransform(parse_model(p["base"]), _num(p["p"]))
    raise DomainError(f"unknown model family {kind!r}")
