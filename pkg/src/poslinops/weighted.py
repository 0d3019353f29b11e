"""Weighted-space machinery: rho-norms, uniform operator bound, convergence.

Full-plane suprema are estimated on a truncated strip plus an analytic tail
certificate that exploits the monotone decay of rho / rho1 in y.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .basis import DEFAULT_POLICY, DomainError
from .moduli import rho, weighted_modulus
from .operators import (
    CompactRegion,
    apply_on_grid,
    eval_grid,
    second_central_moment_grid,
    _moment_t,
    _moment_t2,
    _moment_tau,
    _moment_tau2,
)
from .reporting import CAVEAT_FROZEN_WEIGHTED_MODULUS, BoundReport


@dataclass(frozen=True)
class WeightSpec:
    """rho = 1 + x^2 + y^2, or the power family rho^(1+epsilon)."""

    kind: str = "rho"  # "rho" | "rho1_power"
    epsilon: float = 0.0

    def __post_init__(self):
        if self.kind not in ("rho", "rho1_power"):
            raise DomainError(f"unknown weight kind {self.kind!r}")
        if self.kind == "rho1_power" and self.epsilon <= 0.0:
            raise DomainError(f"epsilon must be > 0, got {self.epsilon}")

    def __call__(self, x, y):
        base = rho(x, y)
        if self.kind == "rho":
            return base
        return base ** (1.0 + self.epsilon)


@dataclass(frozen=True)
class TruncatedStrip:
    """The strip [0, 1] x [0, S]."""

    S: float

    def __post_init__(self):
        if self.S <= 0.0:
            raise DomainError(f"S must be > 0, got {self.S}")


def weighted_norm(g, weight, strip, grid_points=201):
    """Grid max of |g| / weight over the strip (lower estimate of the sup)."""
    xs = np.linspace(0.0, 1.0, grid_points)
    ys = np.linspace(0.0, strip.S, grid_points)
    G = eval_grid(g, xs, ys)
    W = weight(xs[:, None], ys[None, :])
    return float(np.max(np.abs(G) / W))


def _moment_gap_parts(params, m, n, xs, ys):
    gx = _moment_t2(params, m, xs) - xs * xs
    gy = _moment_tau2(params, n, ys) - ys * ys
    return gx, gy


def operator_rho_norm_bound(params, m, n, strip, grid_points=201):
    """Surrogate for the uniform operator norm on the rho-weighted space.

    1 + sup over the full domain of |L(t^2 + tau^2) - x^2 - y^2| / rho, the
    sup estimated as the max of a strip grid value and the analytic y -> inf
    limit |n^2 / (n + beta2)^2 - 1|.
    """
    xs = np.linspace(0.0, 1.0, grid_points)
    ys = np.linspace(0.0, strip.S, grid_points)
    gx, gy = _moment_gap_parts(params, m, n, xs, ys)
    ratio = np.abs(gx[:, None] + gy[None, :]) / rho(xs[:, None], ys[None, :])
    tail_limit = abs(n * n / (n + params.beta2) ** 2 - 1.0)
    return 1.0 + max(float(ratio.max()), tail_limit)


def check_theorem_5_2(f, params, schedule, weight1, strip, grid_points=201,
                      policy=DEFAULT_POLICY):
    """Certified ||Lf - f||_rho1 estimates along an (m, n) schedule.

    Each entry is a strip grid estimate plus a tail certificate for y > S:
    |Lf - f| <= M_f (||L|| + 1) rho there, and rho / rho1 <= (1 + S^2)^-eps.
    """
    if f.growth != "rho_dominated" or f.m_f is None:
        raise DomainError("check_theorem_5_2 needs rho_dominated growth with m_f")
    if weight1.kind != "rho1_power":
        raise DomainError("weight1 must be a rho1_power weight")
    xs = np.linspace(0.0, 1.0, grid_points)
    ys = np.linspace(0.0, strip.S, grid_points)
    R1 = weight1(xs[:, None], ys[None, :])
    F = eval_grid(f, xs, ys)
    decay = (1.0 + strip.S**2) ** (-weight1.epsilon)
    out = []
    for m, n in schedule:
        L = apply_on_grid(f, params, m, n, xs, ys, policy)
        strip_part = float(np.max(np.abs(L - F) / R1))
        bound = operator_rho_norm_bound(params, m, n, strip, grid_points)
        tail_part = (f.m_f * bound + f.m_f) * decay
        out.append(strip_part + tail_part)
    return out


def check_theorem_5_3(f, params, m, n, s, grid_points=201, policy=DEFAULT_POLICY,
                      strip=None):
    """Weighted-modulus rate bound on the disc x^2 + y^2 <= s^2.

    f is rescaled to unit rho-norm.  delta^2 is the rho-weighted sup of the
    second central moment (strip grid max plus analytic tail limit); the
    constant is c^2 (1 + M) with c = sup of rho on the disc and M the uniform
    operator-norm surrogate.  The weighted modulus uses the frozen grid
    definition, flagged by a caveat.
    """
    if f.growth != "rho_dominated":
        raise DomainError("check_theorem_5_3 needs rho_dominated growth")
    if s <= 0.0:
        raise DomainError(f"s must be > 0, got {s}")
    if strip is None:
        strip = TruncatedStrip(max(50.0, 2.0 * s))

    norm = weighted_norm(f, WeightSpec("rho"), strip, grid_points)
    if norm == 0.0:
        raise DomainError("f vanishes on the sampling strip; cannot normalize")
    from .operators import Function2D

    fhat = Function2D(
        eval=lambda x, y, _f=f.eval, _c=norm: np.asarray(_f(x, y)) / _c,
        name=f.name + "_unit_rho",
        growth="rho_dominated",
        m_f=1.0,
    )

    # LHS: sup over the part of the disc inside the domain
    xs = np.linspace(0.0, 1.0, grid_points)
    ys = np.linspace(0.0, s, grid_points)
    L = apply_on_grid(fhat, params, m, n, xs, ys, policy)
    F = eval_grid(fhat, xs, ys)
    disc = (xs[:, None] ** 2 + ys[None, :] ** 2) <= s * s
    lhs = float(np.max(np.abs(L - F)[disc]))

    sx = np.linspace(0.0, 1.0, grid_points)
    sy = np.linspace(0.0, strip.S, grid_points)
    central = second_central_moment_grid(params, m, n, sx, sy)
    ratio = central / rho(sx[:, None], sy[None, :])
    tail_limit = params.beta2**2 / (n + params.beta2) ** 2
    delta = math.sqrt(max(float(ratio.max()), tail_limit))

    M = operator_rho_norm_bound(params, m, n, strip, grid_points)
    c = 1.0 + s * s  # sup of rho on the disc
    w = weighted_modulus(fhat, delta, strip.S, grid_points)
    rhs = c * c * (1.0 + M) * w.value
    return BoundReport(lhs=lhs, rhs=rhs, caveat=CAVEAT_FROZEN_WEIGHTED_MODULUS)
