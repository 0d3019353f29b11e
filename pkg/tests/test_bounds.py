"""Tests for the rate quantities and the explicit error-bound checkers."""

import math

import numpy as np
import pytest
from scipy.special import beta as scipy_beta

from poslinops import (
    CompactRegion,
    DomainError,
    StancuParams,
    TruncationPolicy,
    beta_func,
    beta_func_loggamma,
    check_theorem_3_3,
    corollary_3_4_bound,
    corollary_3_5_bound,
    corpus_lookup,
    deltas,
    sup_distance_power_operator,
    sup_error_on_grid,
    theorem_4_1_bound,
)
from poslinops.reporting import CAVEAT_RHS_GRID_LOWER_BOUND

R1 = CompactRegion(1.0)
TIGHT = TruncationPolicy(1e-14)


def test_deltas_unshifted():
    d = deltas(25, 25, StancuParams(), R1)
    assert d.delta_m == pytest.approx(1.0 / 5.0)
    assert d.delta_n == pytest.approx(1.0 / 5.0)
    assert d.delta_mn == pytest.approx(math.sqrt(0.04 + 4 * 0.04))


def test_deltas_shifted_example():
    d = deltas(100, 100, StancuParams(1, 2, 1, 2), R1)
    assert d.delta_m == pytest.approx(math.sqrt(116.0) / 102.0)
    assert d.delta_n == pytest.approx(math.sqrt(104.0) / 102.0)
    assert d.delta_mn == pytest.approx(
        math.hypot(d.delta_m, 2.0 * d.delta_n)
    )


def test_deltas_scale_with_region():
    d1 = deltas(50, 50, StancuParams(0, 1, 0, 1), CompactRegion(1.0))
    d2 = deltas(50, 50, StancuParams(0, 1, 0, 1), CompactRegion(4.0))
    assert d2.delta_n > d1.delta_n
    assert d2.delta_m == d1.delta_m


def test_deltas_vanish():
    for m in (10, 100, 1000, 10000):
        d = deltas(m, m, StancuParams(1, 2, 1, 2), R1)
        assert d.delta_mn <= 3.0 / math.sqrt(m)


def test_sup_error_constant_zero():
    f = corpus_lookup("const1").function
    err = sup_error_on_grid(f, StancuParams(), 10, 10, R1, 51, TIGHT)
    assert err <= 1e-12


def test_check_theorem_3_3_closed_form_linear():
    entry = corpus_lookup("linear")
    for m, n in ((10, 10), (50, 50)):
        ra, rb = check_theorem_3_3(
            entry.function, StancuParams(1, 2, 1, 2), m, n, R1,
            grid_points=101, policy=TIGHT,
            closed_form_moduli=entry.closed_form_moduli,
        )
        assert ra.holds and rb.holds
        assert ra.caveat == "none" and rb.caveat == "none"
        assert ra.margin > 0 and rb.margin > 0


def test_check_theorem_3_3_grid_source_flags_caveat():
    entry = corpus_lookup("prod")
    ra, rb = check_theorem_3_3(
        entry.function, StancuParams(), 20, 20, R1, grid_points=101,
        policy=TIGHT, moduli_source="grid",
    )
    assert ra.caveat == CAVEAT_RHS_GRID_LOWER_BOUND
    assert rb.caveat == CAVEAT_RHS_GRID_LOWER_BOUND
    # the grid modulus still dominates the grid sup error here
    assert ra.holds and rb.holds


def test_check_theorem_3_3_missing_moduli():
    entry = corpus_lookup("prod")
    with pytest.raises(DomainError):
        check_theorem_3_3(entry.function, StancuParams(), 10, 10, R1,
                          closed_form_moduli=entry.closed_form_moduli)


def test_check_theorem_3_3_unknown_source():
    entry = corpus_lookup("linear")
    with pytest.raises(DomainError):
        check_theorem_3_3(entry.function, StancuParams(), 10, 10, R1,
                          moduli_source="bogus")


def test_corollary_bounds_arithmetic():
    assert corollary_3_4_bound(2.0, 1.0, 0.3) == pytest.approx(0.9)
    assert corollary_3_4_bound(1.0, 0.5, 0.04) == pytest.approx(0.3)
    assert corollary_3_5_bound(1.0, 1.0, 1.0, 1.0, 0.2, 0.1) == pytest.approx(
        1.5 * 0.2 + 1.5 * 0.2
    )
    with pytest.raises(DomainError):
        corollary_3_4_bound(1.0, 1.5, 0.1)
    with pytest.raises(DomainError):
        corollary_3_5_bound(1.0, 0.0, 1.0, 1.0, 0.1, 0.1)


def test_corollary_3_4_dominates_for_lipschitz_corpus():
    # for x + y with M1 = sqrt(2), gamma = 1 the bound covers the grid error
    entry = corpus_lookup("linear")
    gamma, M_of_A = entry.lipschitz_data
    params = StancuParams(1, 2, 1, 2)
    for m in (10, 40):
        err = sup_error_on_grid(entry.function, params, m, m, R1, 101, TIGHT)
        d = deltas(m, m, params, R1)
        assert err <= corollary_3_4_bound(M_of_A(1.0), gamma, d.delta_mn)


def test_beta_func_examples():
    assert beta_func(1.0, 1) == pytest.approx(1.0)
    assert beta_func(1.0, 2) == pytest.approx(0.5)
    assert beta_func(0.5, 1) == pytest.approx(2.0)
    assert beta_func(2.0, 3) == pytest.approx(2.0 / (2 * 3 * 4))
    with pytest.raises(DomainError):
        beta_func(0.0, 1)
    with pytest.raises(DomainError):
        beta_func(1.0, 0)


def test_beta_func_routes_agree():
    for gamma in (0.1, 0.25, 0.5, 0.75, 1.0):
        for r in (1, 2, 5, 10, 20):
            a = beta_func(gamma, r)
            b = beta_func_loggamma(gamma, r)
            c = float(scipy_beta(gamma, r))
            assert abs(a - b) <= 1e-12 * a
            assert abs(a - c) <= 1e-12 * a


def test_sup_distance_power_p2_matches_central_moment():
    from poslinops import second_central_moment_grid

    params = StancuParams(1, 1, 2, 2)
    m = n = 15
    got = sup_distance_power_operator(params, m, n, 2.0, R1, 41, TIGHT)
    xs = np.linspace(0.0, 1.0, 41)
    ys = np.linspace(0.0, 1.0, 41)
    want = float(second_central_moment_grid(params, m, n, xs, ys).max())
    assert got == pytest.approx(want, abs=1e-10)


def test_sup_distance_power_power_mean_ordering():
    # Jensen: L(d^p) <= L(d^2)^(p/2) for p < 2, so the sups are ordered
    params = StancuParams(1, 2, 1, 2)
    m = n = 20
    s2 = sup_distance_power_operator(params, m, n, 2.0, R1, 21, TIGHT)
    for p in (1.0, 1.5):
        sp = sup_distance_power_operator(params, m, n, p, R1, 21, TIGHT)
        assert sp <= s2 ** (p / 2.0) + 1e-12


def test_theorem_4_1_linear_exact():
    # the degree-1 Taylor polynomial reproduces x + y, so the LHS vanishes
    entry = corpus_lookup("linear")
    rep = theorem_4_1_bound(
        entry.derivative_provider, entry.function, StancuParams(1, 2, 1, 2),
        10, 10, 1, 1.0, 1.0, R1, 41, TIGHT,
    )
    assert rep.lhs <= 1e-10
    assert rep.holds


def test_theorem_4_1_quad_holds_all_modes():
    entry = corpus_lookup("quad")
    M = 2.0 * math.sqrt(2.0)
    for mode in ("moment", "modulus", "lipschitz"):
        rep = theorem_4_1_bound(
            entry.derivative_provider, entry.function, StancuParams(1, 1, 2, 2),
            20, 20, 1, 1.0, M, R1, 41, TIGHT, mode=mode,
        )
        assert rep.holds, mode
        assert rep.margin > 0.0, mode


def test_theorem_4_1_rhs_decreases():
    entry = corpus_lookup("quad")
    M = 2.0 * math.sqrt(2.0)
    rhs = [
        theorem_4_1_bound(
            entry.derivative_provider, entry.function, StancuParams(1, 1, 2, 2),
            m, m, 1, 1.0, M, R1, 41, TIGHT,
        ).rhs
        for m in (10, 20, 40)
    ]
    assert rhs[0] >= rhs[1] >= rhs[2]


def test_theorem_4_1_validation():
    entry = corpus_lookup("quad")
    with pytest.raises(DomainError):
        theorem_4_1_bound(entry.derivative_provider, entry.function,
                          StancuParams(), 10, 10, 0, 1.0, 1.0, R1)
    with pytest.raises(DomainError):
        theorem_4_1_bound(entry.derivative_provider, entry.function,
                          StancuParams(), 10, 10, 1, 2.0, 1.0, R1)
    with pytest.raises(DomainError):
        theorem_4_1_bound(entry.derivative_provider, entry.function,
                          StancuParams(), 10, 10, 1, 1.0, 1.0, R1, mode="bogus")
