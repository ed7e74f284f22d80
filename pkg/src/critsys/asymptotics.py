"""Constructive devices: separated-bubble perturbation and branch continuation.

Two machines live here.  The first quantifies how far the Nehari projection
of a widely separated bubble pair sits from (1, 1): the overlap ratio theta
feeds a contracting fixed point for (t_R, s_R), and the resulting upper
bound on the split energy closes the gap to the non-attained value as the
separation R grows.  The second traces the implicitly defined solution
branch (k(gamma), l(gamma)) of the coupling system upward from the
decoupled point at gamma = 0 with an Euler predictor and Newton corrector,
recording Jacobian conditioning and the energy-ordering certificate, and
bracketing the coupling value where the certificate first fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebraic, regimes
from .bubbles import BubbleSpec, ground_state_amplitude, \
    sobolev_constant_closed_form
from .errors import DivergenceError, DomainError, QuadratureError
from .params import SystemParams, derived_exponents
from .spectral import GridField

#: conservative rejection threshold for the overlap ratio
THETA_MAX = 0.1

#: slack added to the contraction-ball bound (pure roundoff allowance)
BALL_SLACK = 1e-8


@dataclass(frozen=True)
class OverlapDatum:
    R: float
    theta: float


@dataclass(frozen=True)
class OverlapQuadrature:
    """Grid quadrature settings for the overlap integrals.

    L = None picks the box automatically (half the separation plus a
    margin of ten bubble widths).  Tail contributions are estimated by
    box doubling at the same point count when ``check_tails`` is on.
    """

    N: int = 128
    eps: float = 1.0
    L: float | None = None
    margin_factor: float = 10.0
    check_tails: bool = True


@dataclass(frozen=True)
class PerturbationSolution:
    tR: float
    sR: float
    iterations: int
    defect: float


@dataclass(frozen=True)
class GapRow:
    R: float
    theta: float
    tR: float
    sR: float
    upper_bound: float
    gap: float


@dataclass(frozen=True)
class BranchSample:
    gamma: float
    k: float
    l: float
    jac_cond: float
    ordering_ok: bool


@dataclass(frozen=True)
class ContinuationPath:
    samples: tuple[BranchSample, ...]
    gamma1_bracket: tuple[float, float] | None
    termination: str  # "completed" | "fold" | "stalled"


# ---------------------------------------------------------------------------
# overlap ratio

def _pair_fields(params: SystemParams, R: float,
                 quad: OverlapQuadrature, L: float,
                 shift: tuple[float, ...] | None) -> tuple[GridField, GridField]:
    ts = params.two_star
    S = sobolev_constant_closed_form(params).value
    shift = (0.0,) * params.n if shift is None else tuple(shift)
    c1 = tuple((R / 2.0 if d == 0 else 0.0) + shift[d] for d in range(params.n))
    c2 = tuple((-R / 2.0 if d == 0 else 0.0) + shift[d] for d in range(params.n))
    base = GridField(params.n, quad.N, L, np.zeros(quad.N ** params.n))
    decay = 0.5 * (params.n - 2.0 * params.s)

    def w(center, mu):
        amp = mu ** (-1.0 / (ts - 2.0)) * ground_state_amplitude(
            params, BubbleSpec(quad.eps, center), S)
        x = base.axis()
        r2 = np.zeros((quad.N,) * params.n)
        for d in range(params.n):
            shape = [1] * params.n
            shape[d] = quad.N
            r2 = r2 + ((x - center[d]) ** 2).reshape(shape)
        return amp * (quad.eps ** 2 + r2) ** (-decay)

    return base.like(w(c1, params.mu1)), base.like(w(c2, params.mu2))


def _theta_on_box(params: SystemParams, R: float, quad: OverlapQuadrature,
                  L: float, shift) -> float:
    a, b, ts = params.alpha, params.beta, params.two_star
    w1, w2 = _pair_fields(params, R, quad, L, shift)
    hn = w1.h ** params.n
    num = hn * float(np.sum(w1.values ** a * w2.values ** b))
    den = hn * params.mu1 * float(np.sum(w1.values ** ts))
    return num / den


def overlap_theta(params: SystemParams, R: float,
                  quad: OverlapQuadrature = OverlapQuadrature(),
                  shift: tuple[float, ...] | None = None) -> OverlapDatum:
    """Overlap ratio of two ground-state bubbles separated by R along e1.

    theta = integral(w1^alpha w2^beta) / integral(mu1 w1^(2*)), both by grid
    quadrature on a box containing both bubbles.  Raises `QuadratureError`
    when box doubling moves the value by more than 10%.
    """
    if not R >= 0.0:
        raise DomainError("separation must be nonnegative", constraint="R",
                          value=R)
    L = quad.L if quad.L is not None \
        else R / 2.0 + quad.margin_factor * quad.eps
    theta = _theta_on_box(params, R, quad, L, shift)
    if quad.check_tails:
        theta2 = _theta_on_box(params, R, quad, 2.0 * L, shift)
        if abs(theta - theta2) > 0.1 * max(theta, theta2):
            raise QuadratureError(
                "box tails contribute more than 10% to the overlap ratio",
                constraint="tails", value=abs(theta - theta2))
    return OverlapDatum(R=float(R), theta=float(theta))


# ---------------------------------------------------------------------------
# fixed point for (t_R, s_R)

def perturbation_constants(params: SystemParams) -> tuple[np.ndarray, np.ndarray]:
    """Matrix B and vector c of the linearization around (1, 1)."""
    a, b, ts, g = params.alpha, params.beta, params.two_star, params.gamma
    d = ts - 2.0
    B = np.array([
        [-(a * g / ts) * (a - 2.0) / d, -(a * g / ts) * b / d],
        [-(b * g / ts) * a / d, -(b * g / ts) * (b - 2.0) / d],
    ])
    c = np.array([-(a * g / ts) * 2.0 / d, -(b * g / ts) * 2.0 / d])
    return B, c


def contraction_ball(params: SystemParams, theta: float) -> float:
    """Radius 2 ||c||_1 theta of the certified fixed-point ball."""
    _, c = perturbation_constants(params)
    return 2.0 * float(np.sum(np.abs(c))) * theta


def solve_tR_sR(params: SystemParams, theta: float,
                tol: float = 1e-12, max_iter: int = 200) -> PerturbationSolution:
    """Fixed point of the overlap-perturbed projection system

        t^((2*-2)/2) + (alpha gamma/2*) t^((alpha-2)/2) s^(beta/2) theta = 1,
        s^((2*-2)/2) + (beta gamma/2*)  t^(alpha/2) s^((beta-2)/2)  theta = 1,

    solved by iterating the exact rearranged map from (1, 1); the
    linearization around (1, 1) is the contraction that certifies the ball
    |t-1| + |s-1| <= 2 ||c||_1 theta.  Solutions outside that ball (or
    non-convergence within ``max_iter``) raise `DivergenceError`: theta is
    outside the contraction regime.
    """
    if theta < 0.0:
        raise DomainError("theta must be nonnegative", constraint="theta",
                          value=theta)
    if theta > THETA_MAX:
        raise DomainError(f"theta above conservative cap {THETA_MAX}",
                          constraint="theta", value=theta)
    a, b, ts, g = params.alpha, params.beta, params.two_star, params.gamma
    r = 0.5 * (ts - 2.0)

    def defect(t, s):
        g1 = t ** r + (a * g / ts) * t ** (0.5 * (a - 2.0)) \
            * s ** (0.5 * b) * theta - 1.0
        g2 = s ** r + (b * g / ts) * t ** (0.5 * a) \
            * s ** (0.5 * (b - 2.0)) * theta - 1.0
        return max(abs(g1), abs(g2))

    t, s = 1.0, 1.0
    iterations = 0
    d = defect(t, s)
    while d > tol:
        iterations += 1
        if iterations > max_iter:
            raise DivergenceError(
                "fixed point did not converge; theta outside the "
                "contraction regime", constraint="iterations", value=d)
        base1 = 1.0 - (a * g / ts) * t ** (0.5 * (a - 2.0)) \
            * s ** (0.5 * b) * theta
        base2 = 1.0 - (b * g / ts) * t ** (0.5 * a) \
            * s ** (0.5 * (b - 2.0)) * theta
        if base1 <= 0.0 or base2 <= 0.0:
            raise DivergenceError(
                "iteration left the positive cone; theta outside the "
                "contraction regime", constraint="positivity",
                value=min(base1, base2))
        t, s = base1 ** (1.0 / r), base2 ** (1.0 / r)
        d = defect(t, s)
    if iterations == 0:
        iterations = 1  # theta = 0 resolves on the first evaluation

    ball = contraction_ball(params, theta) + BALL_SLACK
    if abs(t - 1.0) + abs(s - 1.0) > ball:
        raise DivergenceError(
            "converged outside the certified ball; theta outside the "
            "contraction regime", constraint="ball",
            value=abs(t - 1.0) + abs(s - 1.0))
    return PerturbationSolution(tR=t, sR=s, iterations=iterations, defect=d)


def energy_gap_vs_R(params: SystemParams, R_list,
                    quad: OverlapQuadrature = OverlapQuadrature(),
                    tol: float = 1e-12) -> list[GapRow]:
    """Split-energy upper bound along a separation ladder (gamma < 0 only).

    For each R: theta(R), the fixed point (t_R, s_R), the dimensionless
    upper bound t_R mu1^(-(n-2s)/2s) + s_R mu2^(-(n-2s)/2s), and its gap to
    the non-attained value.  The gap must shrink toward zero as R grows.
    """
    if not params.gamma < 0.0:
        raise DomainError("the separation ladder applies to gamma < 0",
                          constraint="gamma < 0", value=params.gamma)
    dpow = derived_exponents(params).decay_power
    base_value = params.mu1 ** (-dpow) + params.mu2 ** (-dpow)
    rows = []
    for R in R_list:
        datum = overlap_theta(params, R, quad)
        sol = solve_tR_sR(params, datum.theta, tol=tol)
        upper = sol.tR * params.mu1 ** (-dpow) + sol.sR * params.mu2 ** (-dpow)
        rows.append(GapRow(R=float(R), theta=datum.theta, tR=sol.tR,
                           sR=sol.sR, upper_bound=upper,
                           gap=upper - base_value))
    return rows


# ---------------------------------------------------------------------------
# continuation in gamma

def continuation_branch(params_base: SystemParams, gamma_max: float,
                        step: float | None = None,
                        tol: float = 1e-12,
                        cond_limit: float = 1e12,
                        max_samples: int = 100_000) -> ContinuationPath:
    """Trace (k(gamma), l(gamma)) from the decoupled point at gamma = 0.

    Euler predictor on the implicit derivative, Newton corrector with the
    analytic Jacobian, adaptive steps (halved on corrector failure).  Each
    accepted sample re-verifies both residuals below 1e-10 and evaluates the
    energy-ordering certificate; the bracket where the certificate first
    flips is reported as an interval, never a point.  A corrector Jacobian
    condition number above ``cond_limit`` marks a fold: the sample is
    recorded and the branch truncated.
    """
    p0 = params_base
    if not (p0.n > 4.0 * p0.s and 1.0 < p0.alpha < 2.0 and 1.0 < p0.beta < 2.0):
        raise DomainError("continuation needs n > 4s and 1 < alpha, beta < 2",
                          constraint="regime",
                          value=(p0.n, p0.s, p0.alpha, p0.beta))
    if not gamma_max > 0.0:
        raise DomainError("gamma_max must be positive", constraint="gamma_max",
                          value=gamma_max)
    thr_b = regimes.gamma_threshold_B(p0)
    if step is None:
        step = thr_b / 100.0
    max_step = thr_b / 25.0

    k = algebraic.k_sup(p0)
    l = algebraic.l_sup(p0)
    gamma = 0.0
    samples = [_accept(p0.replace_gamma(0.0), gamma, k, l)]
    termination = "completed"

    while gamma < gamma_max:
        dgamma = min(step, gamma_max - gamma)
        advanced = False
        while dgamma >= 1e-12 * max(1.0, gamma_max):
            gamma_next = gamma + dgamma
            if gamma_next <= gamma:
                break  # step below float resolution
            p_here = p0.replace_gamma(gamma)
            J = algebraic.jacobian(p_here, k, l)
            rhs = -algebraic.gamma_gradient(p_here, k, l)
            try:
                vel = np.linalg.solve(J, rhs)
            except np.linalg.LinAlgError:
                vel = np.zeros(2)
            k_pred, l_pred = k + vel[0] * dgamma, l + vel[1] * dgamma
            p_next = p0.replace_gamma(gamma_next)
            ok, k_new, l_new = _newton_correct(p_next, k_pred, l_pred, tol)
            if ok:
                gamma, k, l = gamma_next, k_new, l_new
                samples.append(_accept(p_next, gamma, k, l))
                advanced = True
                break
            dgamma *= 0.5
        if not advanced:
            # a stall with exploding conditioning is a fold: the cond_limit
            # itself is unreachable in double precision because the step
            # underflows while cond grows only like 1/sqrt(distance)
            at_fold = samples[-1].jac_cond > max(1e4,
                                                 100.0 * samples[0].jac_cond)
            termination = "fold" if at_fold else "stalled"
            break
        if samples[-1].jac_cond > cond_limit:
            termination = "fold"
            break
        if len(samples) >= max_samples:
            termination = "stalled"
            break
        step = min(step * 1.2, max_step)

    bracket = None
    for prev, cur in zip(samples, samples[1:]):
        if prev.ordering_ok and not cur.ordering_ok:
            bracket = (prev.gamma, cur.gamma)
            break
    return ContinuationPath(samples=tuple(samples), gamma1_bracket=bracket,
                            termination=termination)


def _newton_correct(params, k, l, tol, max_iter=25):
    if k <= 0.0 or l <= 0.0:
        return False, k, l
    for _ in range(max_iter):
        F = np.array([algebraic.eval_F1(params, k, l),
                      algebraic.eval_F2(params, k, l)])
        if np.max(np.abs(F)) <= tol:
            return True, float(k), float(l)
        J = algebraic.jacobian(params, k, l)
        try:
            delta = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            return False, k, l
        scale = 1.0
        while scale > 1e-8 and (k - scale * delta[0] <= 0.0
                                or l - scale * delta[1] <= 0.0):
            scale *= 0.5
        k, l = k - scale * delta[0], l - scale * delta[1]
        if not (math.isfinite(k) and math.isfinite(l)):
            return False, k, l
    return False, k, l


def _accept(params, gamma, k, l) -> BranchSample:
    res = max(abs(algebraic.eval_F1(params, k, l)),
              abs(algebraic.eval_F2(params, k, l)))
    if res > 1e-10:
        raise DivergenceError("accepted sample violates the residual bound",
                              constraint="residual", value=res)
    cond = float(np.linalg.cond(algebraic.jacobian(params, k, l)))
    ok = regimes.energy_ordering_check(params, k, l)
    return BranchSample(gamma=float(gamma), k=float(k), l=float(l),
                        jac_cond=cond, ordering_ok=ok)
