"""Shared strategies and helpers for the test suite."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from critsys.params import make_params


@st.composite
def system_params(draw, gamma_min=-5.0, gamma_max=5.0):
    """Any valid parameter set (gamma of either sign)."""
    n = draw(st.integers(min_value=1, max_value=6))
    s_hi = min(0.95, 0.5 * n - 0.01)
    s = draw(st.floats(min_value=0.05, max_value=s_hi))
    ts = 2.0 * n / (n - 2.0 * s)
    frac = draw(st.floats(min_value=0.05, max_value=0.95))
    alpha = 1.0 + frac * (ts - 2.0)
    mu1 = draw(st.floats(min_value=0.1, max_value=10.0))
    mu2 = draw(st.floats(min_value=0.1, max_value=10.0))
    gamma = draw(st.floats(min_value=gamma_min, max_value=gamma_max))
    return make_params(n, s, alpha, mu1, mu2, gamma)


@st.composite
def concave_regime_params(draw, gamma_min=0.01, gamma_max=3.0):
    """n > 4s with 1 < alpha, beta < 2 (the root-finding curve regime)."""
    n = draw(st.integers(min_value=1, max_value=6))
    s_hi = min(0.95, 0.25 * n - 0.01)
    s = draw(st.floats(min_value=0.05, max_value=s_hi))
    ts = 2.0 * n / (n - 2.0 * s)
    lo, hi = max(1.0, ts - 2.0), min(2.0, ts - 1.0)
    frac = draw(st.floats(min_value=0.05, max_value=0.95))
    alpha = lo + frac * (hi - lo)
    mu1 = draw(st.floats(min_value=0.1, max_value=10.0))
    mu2 = draw(st.floats(min_value=0.1, max_value=10.0))
    gamma = draw(st.floats(min_value=gamma_min, max_value=gamma_max))
    return make_params(n, s, alpha, mu1, mu2, gamma)


def rng_params(rng: np.random.Generator, *, regime: str,
               mu_range=(0.2, 5.0)) -> dict:
    """Seeded numpy draw of raw fields for one of the solver regimes.

    regime "A": 2s < n < 4s with alpha, beta > 2 (critical power above 4);
    regime "B": n > 4s with 1 < alpha, beta < 2 (critical power below 4).
    Returns the raw fields without gamma; callers pick gamma relative to
    the regime threshold.
    """
    if regime == "A":
        n = 1
        s = rng.uniform(0.27, 0.48)
        ts = 2.0 * n / (n - 2.0 * s)
        alpha = 2.0 + rng.uniform(0.1, 0.9) * (ts - 4.0)
    elif regime == "B":
        n = int(rng.choice([1, 2, 3, 5]))
        s = rng.uniform(0.05, 0.25 * n - 0.02) if n <= 3 \
            else rng.uniform(0.05, 0.95)
        ts = 2.0 * n / (n - 2.0 * s)
        lo, hi = max(1.0, ts - 2.0), min(2.0, ts - 1.0)
        alpha = lo + rng.uniform(0.1, 0.9) * (hi - lo)
    else:
        raise ValueError(regime)
    return {"n": n, "s": float(s), "alpha": float(alpha),
            "mu1": float(rng.uniform(*mu_range)),
            "mu2": float(rng.uniform(*mu_range))}


def symmetric_threshold(ts: float, mu: float) -> float:
    """Common value of both thresholds when alpha = beta = 2*/2, mu1 = mu2."""
    return (ts - 2.0) * mu
