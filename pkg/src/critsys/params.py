"""Validated parameter sets shared by every module.

The second coupling exponent is always derived, never user supplied, so the
constraint alpha + beta = 2n/(n - 2s) holds exactly by construction.  All
values are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DomainError

#: tolerance for closed-form identities that must hold after construction
IDENTITY_TOL = 1e-12

#: keys of the JSON parameter object accepted by the CLI
PARAM_KEYS = ("n", "s", "alpha", "mu1", "mu2", "gamma")


@dataclass(frozen=True)
class SystemParams:
    """Immutable problem data: dimension, fractional order and couplings.

    Fields
    ------
    n      spatial dimension, integer, n > 2s
    s      fractional order, 0 < s < 1
    alpha  first coupling exponent, 1 < alpha < 2* - 1
    beta   second coupling exponent, derived as 2* - alpha
    mu1    first self-interaction strength, > 0
    mu2    second self-interaction strength, > 0
    gamma  coupling strength, any sign
    """

    n: int
    s: float
    alpha: float
    beta: float
    mu1: float
    mu2: float
    gamma: float

    @property
    def two_star(self) -> float:
        return 2.0 * self.n / (self.n - 2.0 * self.s)

    def replace_gamma(self, gamma: float) -> "SystemParams":
        return SystemParams(self.n, self.s, self.alpha, self.beta,
                            self.mu1, self.mu2, float(gamma))

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DerivedExponents:
    """Exponents derived from (n, s) that appear throughout the algebra."""

    two_star: float
    p_half: float        # (2* - 2)/2, the power carried by k and l
    decay_power: float   # (n - 2s)/(2s), the power in the split energy value


def make_params(n: int, s: float, alpha: float, mu1: float, mu2: float,
                gamma: float) -> SystemParams:
    """Validate raw inputs and return a `SystemParams`.

    beta is derived as 2* - alpha.  Raises `DomainError` naming the violated
    constraint for any input outside the admissible set.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError("n must be a positive integer",
                          constraint="n", value=n)
    n = int(n)
    if n < 1:
        raise DomainError("n must be a positive integer",
                          constraint="n", value=n)
    for name, v in (("s", s), ("alpha", alpha), ("mu1", mu1), ("mu2", mu2),
                    ("gamma", gamma)):
        if not (isinstance(v, (int, float, np.floating, np.integer))
                and math.isfinite(float(v))):
            raise DomainError(f"{name} must be a finite real number",
                              constraint=name, value=v)
    s = float(s)
    alpha = float(alpha)
    mu1, mu2, gamma = float(mu1), float(mu2), float(gamma)

    if not 0.0 < s < 1.0:
        raise DomainError("s out of range (need 0 < s < 1)",
                          constraint="s", value=s)
    if not n > 2.0 * s:
        raise DomainError("dimension too small (need n > 2s)",
                          constraint="n > 2s", value=(n, s))
    two_star = 2.0 * n / (n - 2.0 * s)
    if not 1.0 < alpha < two_star - 1.0:
        raise DomainError(
            "alpha out of range (need 1 < alpha < 2* - 1 so that beta > 1)",
            constraint="alpha", value=alpha)
    if not mu1 > 0.0:
        raise DomainError("mu1 must be positive", constraint="mu1", value=mu1)
    if not mu2 > 0.0:
        raise DomainError("mu2 must be positive", constraint="mu2", value=mu2)

    beta = two_star - alpha
    p = SystemParams(n=n, s=s, alpha=alpha, beta=beta, mu1=mu1, mu2=mu2,
                     gamma=gamma)
    assert abs(p.alpha + p.beta - p.two_star) <= IDENTITY_TOL
    return p


def critical_exponent(params: SystemParams) -> float:
    """The critical power 2* = 2n/(n - 2s)."""
    return params.two_star


def derived_exponents(params: SystemParams) -> DerivedExponents:
    ts = params.two_star
    return DerivedExponents(
        two_star=ts,
        p_half=0.5 * (ts - 2.0),
        decay_power=(params.n - 2.0 * params.s) / (2.0 * params.s),
    )


def params_from_dict(obj: dict) -> SystemParams:
    """Build params from a JSON-style mapping ``{"n":..., ..., "gamma":...}``.

    A ``beta`` entry is tolerated if consistent with the derived value.
    """
    missing = [k for k in PARAM_KEYS if k not in obj]
    if missing:
        raise DomainError(f"missing parameter fields: {', '.join(missing)}",
                          constraint="params", value=missing)
    p = make_params(obj["n"], obj["s"], obj["alpha"], obj["mu1"], obj["mu2"],
                    obj["gamma"])
    if "beta" in obj and abs(float(obj["beta"]) - p.beta) > IDENTITY_TOL:
        raise DomainError(
            "supplied beta is inconsistent with 2* - alpha",
            constraint="beta", value=obj["beta"])
    return p


def params_from_json(text: str) -> SystemParams:
    return params_from_dict(json.loads(text))
