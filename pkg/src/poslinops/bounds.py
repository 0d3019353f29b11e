"""Explicit error-bound formulas and inequality checkers on R_A.

Covers the delta quantities of the rate theorem, the full/partial-modulus
rate bounds, the Lipschitz-class corollaries and the order-r bound with its
auxiliary distance-power function.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
from scipy.special import gammaln

from .basis import DEFAULT_POLICY, DomainError
from .moduli import full_modulus, partial_moduli
from .operators import apply_on_grid, eval_grid, nodes, bernstein_weight_matrix, \
    szasz_weight_matrix
from .reporting import (
    CAVEAT_NONE,
    CAVEAT_RHS_GRID_LOWER_BOUND,
    BoundReport,
)
from .taylor import apply_rth_on_grid


@dataclass(frozen=True)
class DeltaTriple:
    delta_m: float
    delta_n: float
    delta_mn: float


def deltas(m, n, params, region):
    """The rate quantities delta_m, delta_n and their combination."""
    b1, b2, A = params.beta1, params.beta2, region.A
    delta_m = math.sqrt(4.0 * b1 * b1 + m) / (m + b1)
    delta_n = math.sqrt(b2 * b2 * A * A + n * A) / (n + b2)
    delta_mn = math.sqrt(delta_m**2 + 4.0 * delta_n**2)
    return DeltaTriple(delta_m, delta_n, delta_mn)


def sup_error_on_grid(f, params, m, n, region, grid_points=201,
                      policy=DEFAULT_POLICY):
    """Grid sup of |L(f) - f| over R_A."""
    xs = np.linspace(0.0, 1.0, grid_points)
    ys = np.linspace(0.0, region.A, grid_points)
    L = apply_on_grid(f, params, m, n, xs, ys, policy)
    F = eval_grid(f, xs, ys)
    return float(np.max(np.abs(L - F)))


def check_theorem_3_3(f, params, m, n, region, grid_points=201,
                      policy=DEFAULT_POLICY, moduli_source="closed_form",
                      closed_form_moduli=None):
    """Rate-of-convergence inequalities via partial (a) and full (b) moduli.

    ``closed_form_moduli`` maps kind ("full" | "partial_x" | "partial_y") to
    a callable (delta, A) -> value.  With grid moduli the RHS is itself a
    lower estimate, flagged by a caveat.
    """
    lhs = sup_error_on_grid(f, params, m, n, region, grid_points, policy)
    d = deltas(m, n, params, region)
    caveat = CAVEAT_NONE
    if moduli_source == "closed_form":
        if not closed_form_moduli:
            raise DomainError(
                f"{getattr(f, 'name', 'f')} carries no closed-form moduli"
            )
        w1 = closed_form_moduli["partial_x"](d.delta_m, region.A)
        w2 = closed_form_moduli["partial_y"](d.delta_n, region.A)
        w = closed_form_moduli["full"](d.delta_mn, region.A)
    elif moduli_source == "grid":
        e1, e2 = partial_moduli(f, region, d.delta_m, grid_points)
        _, e2b = partial_moduli(f, region, d.delta_n, grid_points)
        w1, w2 = e1.value, e2b.value
        w = full_modulus(f, region, d.delta_mn, grid_points).value
        caveat = CAVEAT_RHS_GRID_LOWER_BOUND
    else:
        raise DomainError(f"unknown moduli_source {moduli_source!r}")
    report_a = BoundReport(lhs=lhs, rhs=1.5 * (w1 + w2), caveat=caveat)
    report_b = BoundReport(lhs=lhs, rhs=1.5 * w, caveat=caveat)
    return report_a, report_b


def corollary_3_4_bound(M1, gamma, delta_mn):
    """Rate bound for f in Lip_M1(gamma): (3/2) M1 delta_mn^gamma."""
    if not 0.0 < gamma <= 1.0:
        raise DomainError(f"gamma must be in (0, 1], got {gamma}")
    return 1.5 * M1 * delta_mn**gamma


def corollary_3_5_bound(M2, alpha, M3, beta, delta_m, delta_n):
    """Rate bound for axis-wise Lipschitz conditions."""
    for g in (alpha, beta):
        if not 0.0 < g <= 1.0:
            raise DomainError(f"Lipschitz exponents must be in (0, 1], got {g}")
    return 1.5 * M2 * delta_m**alpha + 1.5 * M3 * (2.0 * delta_n) ** beta


def beta_func(gamma, r):
    """Euler beta B(gamma, r) for integer r >= 1, by the exact product form."""
    if gamma <= 0.0:
        raise DomainError(f"gamma must be > 0, got {gamma}")
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    denom = 1.0
    for k in range(r):
        denom *= gamma + k
    return math.factorial(r - 1) / denom


def sup_distance_power_operator(params, m, n, p_exp, region, grid_points=101,
                                policy=DEFAULT_POLICY):
    """Grid sup over (x, y) of L(((t-x)^2 + (tau-y)^2)^(p_exp/2); x, y).

    The integrand depends on the outer point, so the sup needs one operator
    evaluation per grid point; the sweep is vectorized one grid row at a time.
    """
    xs = np.linspace(0.0, 1.0, grid_points)
    ys = np.linspace(0.0, region.A, grid_points)
    WX = bernstein_weight_matrix(m, xs)
    WY = szasz_weight_matrix(n, ys, policy)
    tx, ty = nodes(params, m, n, WY.shape[1])
    half = 0.5 * p_exp
    best = 0.0
    for a, x in enumerate(xs):
        dx2 = (tx - x) ** 2  # (m+1,)
        dy2 = (ys[:, None] - ty[None, :]) ** 2  # (G, K)
        M = (dx2[None, :, None] + dy2[:, None, :]) ** half
        vals = np.einsum("v,bvk,bk->b", WX[a], M, WY)
        best = max(best, float(vals.max()))
    return best


def theorem_4_1_bound(derivs, f, params, m, n, r, gamma, M, region,
                      grid_points=101, policy=DEFAULT_POLICY, mode="moment"):
    """Order-r approximation bound, three interchangeable RHS variants.

    mode "moment": RHS through the operator applied to the distance power
    |.|^(r+gamma).  mode "modulus": RHS through the closed-form modulus of the
    distance-power function at delta_mn.  mode "lipschitz": RHS through its
    Lipschitz constant (1+A^2)^(r/2) and delta_mn^gamma.
    """
    if r < 1:
        raise DomainError("the order-r bound requires r >= 1")
    if not 0.0 < gamma <= 1.0:
        raise DomainError(f"gamma must be in (0, 1], got {gamma}")
    xs = np.linspace(0.0, 1.0, grid_points)
    ys = np.linspace(0.0, region.A, grid_points)
    Lr = apply_rth_on_grid(derivs, params, m, n, r, xs, ys, policy)
    F = eval_grid(f, xs, ys)
    lhs = float(np.max(np.abs(Lr - F)))

    prefactor = (gamma * M / (gamma + r)) * beta_func(gamma, r) / math.factorial(r - 1)
    p_exp = r + gamma
    if mode == "moment":
        rhs = prefactor * sup_distance_power_operator(
            params, m, n, p_exp, region, grid_points, policy
        )
    elif mode == "modulus":
        d = deltas(m, n, params, region)
        diam = math.sqrt(1.0 + region.A**2)
        # exact modulus of dist(., c)^p on a convex region of diameter diam
        w_g = diam**p_exp - max(diam - d.delta_mn, 0.0) ** p_exp
        rhs = prefactor * 1.5 * w_g
    elif mode == "lipschitz":
        d = deltas(m, n, params, region)
        rhs = (
            M
            * (1.0 + region.A**2) ** (r / 2.0)
            / math.factorial(r - 1)
            * (gamma / (gamma + r))
            * beta_func(gamma, r)
            * d.delta_mn**gamma
        )
    else:
        raise DomainError(f"unknown mode {mode!r}")
    return BoundReport(lhs=lhs, rhs=rhs)


def beta_func_loggamma(gamma, r):
    """Log-gamma route for B(gamma, r); cross-check for beta_func."""
    return math.exp(gammaln(gamma) + gammaln(r) - gammaln(gamma + r))
