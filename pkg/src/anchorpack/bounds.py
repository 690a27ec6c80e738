"""Analytic lower bounds on the area covered by TilePacking.

``eval_F`` bounds the total area of beta-tiles. The simple bound charges
every remaining tile 1/beta; the integral bound sweeps beta from beta0 to
infinity, which turns the tail into an exponential integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.optimize import minimize

EULER_GAMMA = 0.57721566490153286061

Mode = Literal["simple", "integral"]

# Search box and start point as (lambda, beta, alpha).
DEFAULT_BOX = ((0.01, 0.5), (5.0, 100.0), (0.51, 1.5))
DEFAULT_START = (0.3, 6.0, 1.0)


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class BoundParams:
    """(beta, lambda, alpha) with 0 < lambda < alpha and beta >= 3 + 2 alpha.

    ``beta0`` is the lower integration limit of the integral bound and
    defaults to ``beta``.
    """

    beta: float
    lam: float
    alpha: float
    beta0: float | None = None

    def __post_init__(self) -> None:
        if not (0.0 < self.lam < self.alpha):
            raise DomainError(f"need 0 < lambda < alpha, got lambda={self.lam}, alpha={self.alpha}")
        if self.beta < 3.0 + 2.0 * self.alpha:
            raise DomainError(f"need beta >= 3 + 2 alpha, got beta={self.beta}, alpha={self.alpha}")
        if self.beta0 is None:
            object.__setattr__(self, "beta0", self.beta)


@dataclass(frozen=True)
class BoundResult:
    params: BoundParams
    value: float
    mode: Mode


def _check_lam_alpha(lam: float, alpha: float) -> None:
    if not (0.0 < lam < alpha):
        raise DomainError(f"need 0 < lambda < alpha, got lambda={lam}, alpha={alpha}")


def charge_constant(lam: float, alpha: float) -> float:
    """The factor multiplying beta*e^-beta in F (and E1 in the integral bound)."""
    _check_lam_alpha(lam, alpha)
    one_a = 1.0 + alpha
    num = (1.0 + 2.0 * alpha - 2.0 * lam) * (2.0 * one_a**2 + lam * (2.0 + alpha)) * math.exp(3.0 + 2.0 * alpha)
    den = 4.0 * lam * (alpha - lam) * one_a**2
    return num / den


def eval_F(beta: float, lam: float, alpha: float) -> float:
    """Upper bound on the total area of all beta-tiles."""
    if beta <= 0:
        raise DomainError(f"beta must be positive, got {beta}")
    return charge_constant(lam, alpha) * beta * math.exp(-beta)


def lower_bound_simple(params: BoundParams) -> BoundResult:
    F = eval_F(params.beta, params.lam, params.alpha)
    return BoundResult(params, (1.0 - F) / params.beta, "simple")


def exp_integral_E1(x: float) -> float:
    """E1(x) = integral of exp(-t)/t over [x, inf), for x > 0."""
    if not x > 0:
        raise DomainError(f"E1 needs a positive argument, got {x}")
    if x < 1.0:
        # -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        total = 0.0
        term = 1.0
        k = 1
        while True:
            term *= -x / k
            contrib = term / k
            total += contrib
            if abs(contrib) < 1e-17 * abs(total):
                break
            k += 1
        return -EULER_GAMMA - math.log(x) - total
    # continued fraction, modified Lentz
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x)


def lower_bound_integral(beta0: float, lam: float, alpha: float) -> BoundResult:
    if beta0 < 3.0 + 2.0 * alpha:
        raise DomainError(f"need beta0 >= 3 + 2 alpha, got beta0={beta0}, alpha={alpha}")
    value = 1.0 / beta0 - charge_constant(lam, alpha) * exp_integral_E1(beta0)
    return BoundResult(BoundParams(beta0, lam, alpha), value, "integral")


def _raw_bound(mode: Mode, lam: float, beta: float, alpha: float) -> float:
    K = charge_constant(lam, alpha)
    if mode == "simple":
        return 1.0 / beta - K * math.exp(-beta)
    return 1.0 / beta - K * exp_integral_E1(beta)


def _objective(mode: Mode, box):
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])

    def f(v: np.ndarray) -> float:
        lam, beta, alpha = np.clip(v, lo, hi)
        penalty = 0.0
        if lam >= alpha:
            penalty += 1e3 * (lam - alpha + 1e-3)
            lam = alpha * 0.999
        if beta < 3.0 + 2.0 * alpha:
            penalty += 1e3 * (3.0 + 2.0 * alpha - beta)
        try:
            return -_raw_bound(mode, lam, beta, alpha) + penalty
        except (DomainError, OverflowError):
            return 1e6

    return f


def optimize_bound(
    mode: Mode = "integral",
    box=DEFAULT_BOX,
    start=DEFAULT_START,
    tol: float = 1e-8,
    restarts: int = 8,
    seed: int = 0,
) -> BoundResult:
    """Maximize a bound over (lambda, beta, alpha) inside ``box``.

    Bounded Nelder-Mead from ``start`` plus ``restarts - 1`` jittered starts;
    constraint violations are penalized. The best run wins; equal values keep
    the earlier start.
    """
    if mode not in ("simple", "integral"):
        raise ValueError(f"unknown mode {mode!r}")
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])
    x0 = np.asarray(start, dtype=float)
    if np.any(x0 < lo) or np.any(x0 > hi) or not (x0[0] < x0[2]) or x0[1] < 3.0 + 2.0 * x0[2]:
        raise DomainError(f"infeasible start {tuple(start)}")

    rng = np.random.default_rng(seed)
    starts = [x0]
    for _ in range(max(restarts, 1) - 1):
        jitter = x0 + rng.normal(scale=0.1, size=3) * (hi - lo) * np.array([1.0, 0.1, 1.0])
        starts.append(np.clip(jitter, lo, hi))

    f = _objective(mode, box)
    best_x, best_val = None, math.inf
    for s in starts:
        res = minimize(
            f,
            s,
            method="Nelder-Mead",
            bounds=list(zip(lo, hi)),
            options={"xatol": tol, "fatol": 1e-15, "maxiter": 20_000, "maxfev": 40_000},
        )
        if res.fun < best_val:
            best_x, best_val = res.x, float(res.fun)

    lam, beta, alpha = (float(v) for v in best_x)
    params = BoundParams(beta, lam, alpha)
    value = _raw_bound(mode, lam, beta, alpha)
    return BoundResult(params, value, mode)
