"""The algebraic coupling system and everything computed from it.

A synchronized pair (sqrt(k) U, sqrt(l) U) built on a single ground-state
profile solves the coupled PDE system exactly when (k, l) solves

    F1(k, l) = mu1 k^((2*-2)/2) + (alpha gamma / 2*) k^((alpha-2)/2) l^(beta/2) - 1 = 0,
    F2(k, l) = mu2 l^((2*-2)/2) + (beta gamma / 2*) k^(alpha/2) l^((beta-2)/2) - 1 = 0,

with k, l > 0.  This module provides the two constraint curves l(k) and k(l),
the scalar reduction f(k) whose zeros are the roots of the system, bracketed
bisection with Newton polish for the minimal-k root, the ratio reduction used
in the concave regime, curve slope diagnostics, the analytic Jacobian, and a
randomized domination check.

All fractional powers act on strictly positive quantities; they are computed
as exp(p*log(x)) so that no negative-base power is ever formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .errors import (CounterexampleError, DomainError,
                     MonotonicityViolationError, NoSignChangeError,
                     NumericalError)
from .params import SystemParams

#: cap used instead of non-finite values when f(k) overflows near its
#: divergent endpoint; any |f| at or above this is a sentinel, not a value
F_SENTINEL = 1e300

#: default tolerances: residuals of (F1, F2) and bisection interval width
RESIDUAL_TOL = 1e-12
BISECT_XTOL = 1e-10

_SCAN_POINTS = 512


def _powp(x, p):
    """x**p for strictly positive x (0 allowed when p >= 0), via exp/log."""
    x = np.asarray(x, dtype=float)
    if p == 0.0:
        out = np.ones_like(x)
    else:
        with np.errstate(divide="ignore"):
            out = np.exp(p * np.log(x))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class CouplingSolution:
    """A root of the coupling system together with its residuals."""

    k: float
    l: float
    res1: float
    res2: float
    method: str = "bisection"


@dataclass(frozen=True)
class CurveDiagnostics:
    """Slope structure of the constraint curves in the 1 < alpha, beta < 2 regime.

    ``k_sign_change`` is where l'(k) turns negative, ``k_inflection`` where
    l''(k) = 0 (the slope minimum), ``lprime_min`` the closed-form minimal
    slope; the ``grid`` fields are finite-difference cross-checks.  The
    primed fields describe the mirror curve k(l).
    """

    k_sign_change: float
    k_inflection: float
    lprime_min: float
    lprime_min_grid: float
    l_sign_change: float
    l_inflection: float
    kprime_min: float
    kprime_min_grid: float


def k_sup(params: SystemParams) -> float:
    """Right endpoint mu1^(-2/(2*-2)) of the k-domain of the curve l(k)."""
    return _powp(params.mu1, -2.0 / (params.two_star - 2.0))


def l_sup(params: SystemParams) -> float:
    """Right endpoint mu2^(-2/(2*-2)) of the l-domain of the curve k(l)."""
    return _powp(params.mu2, -2.0 / (params.two_star - 2.0))


def _check_positive(name, v, allow_zero=False):
    v = np.asarray(v, dtype=float)
    bad = ~(v >= 0.0) if allow_zero else ~(v > 0.0)
    if np.any(bad):
        kind = "nonnegative" if allow_zero else "positive"
        raise DomainError(f"{name} must be {kind}", constraint=name,
                          value=float(np.atleast_1d(v)[np.atleast_1d(bad)][0]))


def eval_F1(params: SystemParams, k, l):
    """First coupling function; k > 0 (k = 0 allowed when alpha >= 2), l >= 0."""
    a, b, ts = params.alpha, params.beta, params.two_star
    karr = np.asarray(k, dtype=float)
    if params.alpha < 2.0:
        _check_positive("k", karr)
    else:
        _check_positive("k", karr, allow_zero=True)
    _check_positive("l", l, allow_zero=True)
    r = 0.5 * (ts - 2.0)
    larr = np.asarray(l, dtype=float)
    with np.errstate(divide="ignore"):
        out = (params.mu1 * _powp(karr, r)
               + (a * params.gamma / ts) * _powp(karr, 0.5 * (a - 2.0))
               * _powp(larr, 0.5 * b) - 1.0)
    return out if np.ndim(out) else float(out)


def eval_F2(params: SystemParams, k, l):
    """Second coupling function; l > 0 (l = 0 allowed when beta >= 2), k >= 0."""
    a, b, ts = params.alpha, params.beta, params.two_star
    larr = np.asarray(l, dtype=float)
    if params.beta < 2.0:
        _check_positive("l", larr)
    else:
        _check_positive("l", larr, allow_zero=True)
    _check_positive("k", k, allow_zero=True)
    r = 0.5 * (ts - 2.0)
    karr = np.asarray(k, dtype=float)
    with np.errstate(divide="ignore"):
        out = (params.mu2 * _powp(larr, r)
               + (b * params.gamma / ts) * _powp(karr, 0.5 * a)
               * _powp(larr, 0.5 * (b - 2.0)) - 1.0)
    return out if np.ndim(out) else float(out)


def _require_positive_gamma(params):
    if not params.gamma > 0.0:
        raise DomainError("curve parametrizations require gamma > 0",
                          constraint="gamma > 0", value=params.gamma)


def curve_l_of_k(params: SystemParams, k):
    """The curve l(k) solving F1(k, l(k)) = 0 on 0 < k <= mu1^(-2/(2*-2))."""
    _require_positive_gamma(params)
    a, b, ts = params.alpha, params.beta, params.two_star
    ksup = k_sup(params)
    karr = np.asarray(k, dtype=float)
    if np.any(karr <= 0.0) or np.any(karr > ksup * (1.0 + 1e-14)):
        raise DomainError("k outside the bracket (0, mu1^(-2/(2*-2))]",
                          constraint="k", value=k)
    q = 1.0 - params.mu1 * _powp(karr, 0.5 * (ts - 2.0))
    q = np.maximum(q, 0.0)  # endpoint roundoff only
    coef = _powp(ts / (a * params.gamma), 2.0 / b)
    out = coef * _powp(karr, (2.0 - a) / b) * _powp(q, 2.0 / b)
    return out if np.ndim(out) else float(out)


def curve_k_of_l(params: SystemParams, l):
    """The mirror curve k(l) solving F2(k(l), l) = 0 on 0 < l <= mu2^(-2/(2*-2))."""
    _require_positive_gamma(params)
    a, b, ts = params.alpha, params.beta, params.two_star
    lsup = l_sup(params)
    larr = np.asarray(l, dtype=float)
    if np.any(larr <= 0.0) or np.any(larr > lsup * (1.0 + 1e-14)):
        raise DomainError("l outside the bracket (0, mu2^(-2/(2*-2))]",
                          constraint="l", value=l)
    q = 1.0 - params.mu2 * _powp(larr, 0.5 * (ts - 2.0))
    q = np.maximum(q, 0.0)
    coef = _powp(ts / (b * params.gamma), 2.0 / a)
    out = coef * _powp(larr, (2.0 - b) / a) * _powp(q, 2.0 / a)
    return out if np.ndim(out) else float(out)


def eval_f(params: SystemParams, k):
    """Scalar reduction along the curve: f(k) = 0 iff (k, l(k)) solves the system.

    f is F2(k, l(k)) multiplied by the positive factor l(k)^((2-beta)/2) k^(-alpha/2),
    expanded in closed form:

        f(k) = mu2 (2*/(alpha gamma))^(alpha/beta) k^(-(2*-2)alpha/(2 beta)) Q^(alpha/beta)
             + beta gamma / 2*
             - (2*/(alpha gamma))^((2-beta)/beta) k^(-(2*-2)/beta) Q^((2-beta)/beta),

    with Q = 1 - mu1 k^((2*-2)/2).  For 1 < alpha, beta < 2 it tends to
    -inf at k -> 0+ and equals beta*gamma/2* > 0 at the right endpoint.
    Where the divergent term overflows, a signed sentinel of magnitude
    ``F_SENTINEL`` is returned instead of a non-finite value.
    """
    _require_positive_gamma(params)
    a, b, ts = params.alpha, params.beta, params.two_star
    ksup = k_sup(params)
    karr = np.asarray(k, dtype=float)
    if np.any(karr <= 0.0) or np.any(karr > ksup * (1.0 + 1e-14)):
        raise DomainError("k outside (0, mu1^(-2/(2*-2))]",
                          constraint="k", value=k)
    r = 0.5 * (ts - 2.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        logk = np.log(karr)
        q = np.maximum(1.0 - params.mu1 * _powp(karr, r), 0.0)
        logq = np.log(q)
        lc = math.log(ts / (a * params.gamma))
        log_t1 = (math.log(params.mu2) + (a / b) * lc
                  - (ts - 2.0) * a / (2.0 * b) * logk + (a / b) * logq)
        log_t3 = ((2.0 - b) / b * lc - (ts - 2.0) / b * logk
                  + (2.0 - b) / b * logq)
        t2 = b * params.gamma / ts
        t1 = np.exp(np.minimum(log_t1, 690.0))
        t3 = np.exp(np.minimum(log_t3, 690.0))
        out = t1 + t2 - t3
        # resolve overflow by log comparison of the competing terms
        huge = (log_t1 > 689.0) | (log_t3 > 689.0)
        if np.any(huge):
            sign = np.where(log_t1 >= log_t3, 1.0, -1.0)
            out = np.where(huge, sign * F_SENTINEL, out)
    return out if np.ndim(out) else float(out)


def jacobian(params: SystemParams, k: float, l: float) -> np.ndarray:
    """Analytic Jacobian of (F1, F2) with respect to (k, l)."""
    a, b, ts = params.alpha, params.beta, params.two_star
    g = params.gamma
    r = 0.5 * (ts - 2.0)
    d11 = (params.mu1 * r * _powp(k, r - 1.0)
           + (a * g / ts) * 0.5 * (a - 2.0) * _powp(k, 0.5 * (a - 4.0))
           * _powp(l, 0.5 * b))
    d12 = (a * g / ts) * 0.5 * b * _powp(k, 0.5 * (a - 2.0)) \
        * _powp(l, 0.5 * (b - 2.0))
    d21 = (b * g / ts) * 0.5 * a * _powp(k, 0.5 * (a - 2.0)) \
        * _powp(l, 0.5 * (b - 2.0))
    d22 = (params.mu2 * r * _powp(l, r - 1.0)
           + (b * g / ts) * 0.5 * (b - 2.0) * _powp(k, 0.5 * a)
           * _powp(l, 0.5 * (b - 4.0)))
    return np.array([[d11, d12], [d21, d22]])


def gamma_gradient(params: SystemParams, k: float, l: float) -> np.ndarray:
    """Partial derivatives of (F1, F2) with respect to gamma."""
    a, b, ts = params.alpha, params.beta, params.two_star
    return np.array([
        (a / ts) * _powp(k, 0.5 * (a - 2.0)) * _powp(l, 0.5 * b),
        (b / ts) * _powp(k, 0.5 * a) * _powp(l, 0.5 * (b - 2.0)),
    ])


def newton_polish(params: SystemParams, k: float, l: float, tol: float,
                  max_iter: int = 12) -> tuple[float, float]:
    """Damped Newton on (F1, F2); keeps the iterate strictly positive."""
    for _ in range(max_iter):
        F = np.array([eval_F1(params, k, l), eval_F2(params, k, l)])
        if np.max(np.abs(F)) <= 0.05 * tol:
            break
        J = jacobian(params, k, l)
        try:
            step = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            break
        scale = 1.0
        while scale > 1e-6 and (k - scale * step[0] <= 0.0
                                or l - scale * step[1] <= 0.0):
            scale *= 0.5
        k, l = k - scale * step[0], l - scale * step[1]
    return float(k), float(l)


def _regime_check_solver(params):
    a, b = params.alpha, params.beta
    case_b = params.n > 4.0 * params.s and 1.0 < a < 2.0 and 1.0 < b < 2.0
    case_a = (2.0 * params.s < params.n < 4.0 * params.s
              and a > 2.0 and b > 2.0)
    if not (case_a or case_b):
        raise DomainError(
            "root finding needs n > 4s with 1 < alpha, beta < 2, or "
            "2s < n < 4s with alpha, beta > 2",
            constraint="regime", value=(params.n, params.s, a, b))
    return case_a


def _decoupled_solution(params) -> CouplingSolution:
    k0, l0 = k_sup(params), l_sup(params)
    return CouplingSolution(k=k0, l=l0,
                            res1=abs(eval_F1(params, k0, l0)),
                            res2=abs(eval_F2(params, k0, l0)),
                            method="decoupled")


def find_k0_l0(params: SystemParams, tol: float = RESIDUAL_TOL) -> CouplingSolution:
    """Minimal-k root of the coupling system by bracketed bisection.

    Scans a geometric grid over (0, mu1^(-2/(2*-2))), bisects the leftmost
    sign change of f, maps back through the curve l(k), then polishes with
    Newton so that both residuals meet ``tol``.  gamma = 0 returns the
    decoupled pair without root finding; gamma < 0 is rejected.
    """
    if params.gamma == 0.0:
        return _decoupled_solution(params)
    if params.gamma < 0.0:
        raise DomainError("no root finding for gamma < 0 (minimum not attained)",
                          constraint="gamma >= 0", value=params.gamma)
    case_a = _regime_check_solver(params)

    ksup = k_sup(params)
    grid = ksup * np.geomspace(1e-8, 1.0 - 1e-12, _SCAN_POINTS)
    fv = eval_f(params, grid)

    roots_on_grid = np.flatnonzero(fv == 0.0)
    cells = np.flatnonzero(np.sign(fv[:-1]) * np.sign(fv[1:]) < 0.0)
    if roots_on_grid.size and (not cells.size
                               or roots_on_grid[0] <= cells[0]):
        k_root = float(grid[roots_on_grid[0]])
    elif cells.size:
        i = cells[0]
        if not case_a and fv[i] > 0.0:
            # f must rise through its minimal root; a falling first crossing
            # means the true minimal root sits below the scan floor
            raise NumericalError(
                "leftmost crossing is a sign fall; the minimal root lies "
                "below the scan floor (coupling too weak for this grid)",
                constraint="scan-floor", value=float(grid[i]))
        k_root = bisect(lambda kk: eval_f(params, kk),
                        grid[i], grid[i + 1], xtol=BISECT_XTOL)
    else:
        raise NoSignChangeError(
            "scan found no sign change of f; parameters outside the "
            "solvable hypotheses or grid too coarse",
            constraint="bracket", value=(float(fv[0]), float(fv[-1])))

    l_root = curve_l_of_k(params, k_root)
    if l_root <= 0.0:
        raise NumericalError("root collapsed onto the curve endpoint",
                             constraint="l > 0", value=l_root)
    k0, l0 = newton_polish(params, k_root, l_root, tol)

    res1 = abs(eval_F1(params, k0, l0))
    res2 = abs(eval_F2(params, k0, l0))
    if res1 > tol or res2 > tol:
        raise NumericalError("residual tolerance not met after polish",
                             constraint="residual", value=max(res1, res2))
    if not (0.0 < k0 < ksup and 0.0 < l0 < l_sup(params)):
        raise NumericalError("root left the admissible box",
                             constraint="0 < k < k_sup, 0 < l < l_sup",
                             value=(k0, l0))

    # in the convex-curve regime the reduction must stay negative left of
    # the minimal root
    if not case_a and k0 > 2e-8 * ksup:
        left = np.geomspace(ksup * 1e-8, k0 * (1.0 - 1e-6), 256)
        if np.any(eval_f(params, left) > 1e-10):
            raise NumericalError(
                "f is positive left of the returned root; minimal-k "
                "selection failed", constraint="minimal-k", value=k0)

    return CouplingSolution(k=k0, l=l0, res1=res1, res2=res2,
                            method="bisection")


# ---------------------------------------------------------------------------
# ratio reduction (2s < n < 4s, alpha, beta > 2)

def ratio_f1(params: SystemParams, x):
    """(x+1)^((2*-2)/2) / (mu1 x^((2*-2)/2) + (alpha gamma/2*) x^((alpha-2)/2))."""
    a, ts = params.alpha, params.two_star
    r = 0.5 * (ts - 2.0)
    x = np.asarray(x, dtype=float)
    den = params.mu1 * _powp(x, r) + (a * params.gamma / ts) * _powp(x, 0.5 * (a - 2.0))
    out = _powp(x + 1.0, r) / den
    return out if np.ndim(out) else float(out)


def ratio_f2(params: SystemParams, x):
    """(x+1)^((2*-2)/2) / (mu2 + (beta gamma/2*) x^(alpha/2))."""
    a, b, ts = params.alpha, params.beta, params.two_star
    r = 0.5 * (ts - 2.0)
    x = np.asarray(x, dtype=float)
    den = params.mu2 + (b * params.gamma / ts) * _powp(x, 0.5 * a)
    out = _powp(x + 1.0, r) / den
    return out if np.ndim(out) else float(out)


def solve_ratio_reduction(params: SystemParams,
                          tol: float = RESIDUAL_TOL) -> CouplingSolution:
    """Root via the substitution y = k + l, x = k/l.

    Under the concave-regime coupling bound, f1 is strictly decreasing and
    f2 strictly increasing with f1 -> +inf at 0 and f2 -> +inf at infinity,
    so f1 - f2 has a unique sign change; the unique root of the system is
    k = x0 y0/(1+x0), l = y0/(1+x0) with y0 = f1(x0)^(2/(2*-2)).
    """
    _require_positive_gamma(params)
    if not (2.0 * params.s < params.n < 4.0 * params.s
            and params.alpha > 2.0 and params.beta > 2.0):
        raise DomainError(
            "ratio reduction needs 2s < n < 4s and alpha, beta > 2",
            constraint="regime",
            value=(params.n, params.s, params.alpha, params.beta))

    xs = np.geomspace(1e-4, 1e4, 1000)
    f1v = ratio_f1(params, xs)
    f2v = ratio_f2(params, xs)
    if not np.all(np.diff(f1v) < 0.0):
        raise MonotonicityViolationError(
            "sampled f1 is not strictly decreasing; coupling bound violated",
            constraint="f1 decreasing", value=params.gamma)
    if not np.all(np.diff(f2v) > 0.0):
        raise MonotonicityViolationError(
            "sampled f2 is not strictly increasing; coupling bound violated",
            constraint="f2 increasing", value=params.gamma)

    g = lambda x: ratio_f1(params, x) - ratio_f2(params, x)
    lo, hi = 1e-4, 1e4
    while g(lo) <= 0.0 and lo > 1e-12:
        lo *= 0.1
    while g(hi) >= 0.0 and hi < 1e12:
        hi *= 10.0
    if not (g(lo) > 0.0 > g(hi)):
        raise NoSignChangeError("f1 - f2 shows no sign change on the scan range",
                                constraint="bracket", value=(lo, hi))
    x0 = bisect(g, lo, hi, xtol=1e-12, rtol=1e-12)

    r = 0.5 * (params.two_star - 2.0)
    y0 = _powp(ratio_f1(params, x0), 1.0 / r)
    k = x0 * y0 / (1.0 + x0)
    l = y0 / (1.0 + x0)
    k, l = newton_polish(params, k, l, tol)
    res1 = abs(eval_F1(params, k, l))
    res2 = abs(eval_F2(params, k, l))
    if res1 > tol or res2 > tol:
        raise NumericalError("residual tolerance not met after polish",
                             constraint="residual", value=max(res1, res2))
    return CouplingSolution(k=k, l=l, res1=res1, res2=res2, method="ratio")


# ---------------------------------------------------------------------------
# slope diagnostics (n > 4s, 1 < alpha, beta < 2)

def curve_lprime(params: SystemParams, k):
    """Analytic slope of the curve l(k):

    l'(k) = (2* mu1/(alpha gamma))^(2/beta) k^((2-2*)/beta)
            (mu1^-1 - k^((2*-2)/2))^((2-beta)/beta) ((2-alpha)/(mu1 beta) - k^((2*-2)/2))
    """
    a, b, ts = params.alpha, params.beta, params.two_star
    r = 0.5 * (ts - 2.0)
    k = np.asarray(k, dtype=float)
    coef = _powp(ts * params.mu1 / (a * params.gamma), 2.0 / b)
    mid = np.maximum(1.0 / params.mu1 - _powp(k, r), 0.0)
    out = (coef * _powp(k, (2.0 - ts) / b) * _powp(mid, (2.0 - b) / b)
           * ((2.0 - a) / (params.mu1 * b) - _powp(k, r)))
    return out if np.ndim(out) else float(out)


def curve_kprime(params: SystemParams, l):
    """Analytic slope of the mirror curve k(l)."""
    a, b, ts = params.alpha, params.beta, params.two_star
    r = 0.5 * (ts - 2.0)
    l = np.asarray(l, dtype=float)
    coef = _powp(ts * params.mu2 / (b * params.gamma), 2.0 / a)
    mid = np.maximum(1.0 / params.mu2 - _powp(l, r), 0.0)
    out = (coef * _powp(l, (2.0 - ts) / a) * _powp(mid, (2.0 - a) / a)
           * ((2.0 - b) / (params.mu2 * a) - _powp(l, r)))
    return out if np.ndim(out) else float(out)


def curve_diagnostics(params: SystemParams,
                      grid_points: int = 10_000) -> CurveDiagnostics:
    """Closed-form slope structure of both curves plus grid validation.

    The finite-difference minimum of each slope must agree with the closed
    form within 1e-6 relative; otherwise a `NumericalError` is raised.
    """
    _require_positive_gamma(params)
    a, b, ts = params.alpha, params.beta, params.two_star
    if ts >= 4.0:
        raise DomainError("slope diagnostics need 2* < 4 (n > 4s)",
                          constraint="2* < 4", value=ts)
    if not (1.0 < a < 2.0 and 1.0 < b < 2.0):
        raise DomainError("slope diagnostics need 1 < alpha, beta < 2",
                          constraint="alpha, beta", value=(a, b))
    e = 2.0 / (ts - 2.0)
    k_sign = _powp((2.0 - a) / (params.mu1 * b), e)
    k_infl = _powp(2.0 * (2.0 - a) / (params.mu1 * b * (4.0 - ts)), e)
    lpm = -(_powp(ts * (ts - 2.0) * params.mu1 / (2.0 * a * params.gamma), 2.0 / b)
            * _powp((2.0 - b) / (2.0 - a), (2.0 - b) / b))
    l_sign = _powp((2.0 - b) / (params.mu2 * a), e)
    l_infl = _powp(2.0 * (2.0 - b) / (params.mu2 * a * (4.0 - ts)), e)
    kpm = -(_powp(ts * (ts - 2.0) * params.mu2 / (2.0 * b * params.gamma), 2.0 / a)
            * _powp((2.0 - a) / (2.0 - b), (2.0 - a) / a))

    lpm_grid = float(np.min(finite_difference_lprime(params, grid_points)[1]))
    kpm_grid = float(np.min(_fd_kprime(params, grid_points)[1]))
    for closed, measured, name in ((lpm, lpm_grid, "l'(k)"),
                                   (kpm, kpm_grid, "k'(l)")):
        if abs(measured - closed) > 1e-6 * abs(closed):
            raise NumericalError(
                f"grid minimum of {name} disagrees with the closed form",
                constraint="slope-min", value=(closed, measured))

    return CurveDiagnostics(k_sign_change=k_sign, k_inflection=k_infl,
                            lprime_min=lpm, lprime_min_grid=lpm_grid,
                            l_sign_change=l_sign, l_inflection=l_infl,
                            kprime_min=kpm, kprime_min_grid=kpm_grid)


def finite_difference_lprime(params: SystemParams, grid_points: int = 10_000):
    """Central finite differences of l(k) on a uniform interior grid."""
    ksup = k_sup(params)
    ks = np.linspace(ksup * 1e-6, ksup * (1.0 - 1e-6), grid_points)
    lv = curve_l_of_k(params, ks)
    return ks, np.gradient(lv, ks)


def _fd_kprime(params: SystemParams, grid_points: int = 10_000):
    lsup = l_sup(params)
    ls = np.linspace(lsup * 1e-6, lsup * (1.0 - 1e-6), grid_points)
    kv = curve_k_of_l(params, ls)
    return ls, np.gradient(kv, ls)


# ---------------------------------------------------------------------------
# randomized domination check

@dataclass(frozen=True)
class DominationReport:
    samples: int
    feasible: int
    violations: int
    worst_margin: float | None
    worst_point: tuple[float, float] | None


def check_domination(params: SystemParams, solution: CouplingSolution,
                     samples: int = 10_000, seed: int = 0,
                     slack: float = 1e-9) -> DominationReport:
    """Randomized check that feasible pairs dominate the root in c + d.

    Draws log-uniform (c, d); every pair with F1 >= 0 and F2 >= 0 must
    satisfy c + d >= k0 + l0 - slack.  A violating pair raises
    `CounterexampleError` with the pair attached; this signals either a
    solver bug or parameters outside the theorem hypotheses.
    """
    rng = np.random.default_rng(seed)
    k0, l0 = solution.k, solution.l
    lo_c, hi_c = k0 / 10.0, 10.0 * max(k0, k_sup(params))
    lo_d, hi_d = l0 / 10.0, 10.0 * max(l0, l_sup(params))
    c = np.exp(rng.uniform(math.log(lo_c), math.log(hi_c), samples))
    d = np.exp(rng.uniform(math.log(lo_d), math.log(hi_d), samples))
    f1 = eval_F1(params, c, d)
    f2 = eval_F2(params, c, d)
    feas = (f1 >= 0.0) & (f2 >= 0.0)
    margins = c + d - (k0 + l0)
    n_feas = int(np.count_nonzero(feas))
    if n_feas == 0:
        return DominationReport(samples, 0, 0, None, None)
    worst_idx = np.flatnonzero(feas)[np.argmin(margins[feas])]
    worst_margin = float(margins[worst_idx])
    worst_point = (float(c[worst_idx]), float(d[worst_idx]))
    bad = feas & (margins < -slack)
    n_bad = int(np.count_nonzero(bad))
    if n_bad:
        i = np.flatnonzero(bad)[0]
        raise CounterexampleError(
            "feasible pair undercuts the root in c + d",
            constraint="c + d >= k0 + l0",
            value=(float(c[i]), float(d[i])))
    return DominationReport(samples, n_feas, 0, worst_margin, worst_point)
