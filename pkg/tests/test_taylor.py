"""Tests for the order-r operator, Taylor polynomials and derivatives."""

import math

import numpy as np
import pytest

from poslinops import (
    CompactRegion,
    DirectionalFrame,
    DomainError,
    Function2D,
    Point2D,
    StancuParams,
    TruncationPolicy,
    apply,
    apply_rth,
    corpus_lookup,
    directional_rth_derivative,
    f_rth_lipschitz_estimate,
    finite_difference_derivs,
    szasz_weights,
    taylor_poly,
)
from poslinops.basis import bernstein_weights
from poslinops.taylor import PartialDerivativeSet, fd_stencil_weights

TIGHT = TruncationPolicy(1e-14)


def _monomial_derivs(a, b):
    """Closed-form derivative provider for x^a y^b."""

    def falling(p, k):
        out = 1.0
        for t in range(k):
            out *= p - t
        return out

    def ev(i, j, x, y):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        if i > a or j > b:
            return np.zeros(np.broadcast_shapes(x.shape, y.shape))
        return (
            falling(a, i) * falling(b, j) * x ** (a - i) * y ** (b - j)
        )

    return PartialDerivativeSet(order=10, eval=ev)


def test_taylor_poly_r0():
    d = corpus_lookup("quad").derivative_provider
    node = Point2D(0.3, 0.7)
    assert taylor_poly(d, node, Point2D(0.9, 2.0), 0) == pytest.approx(
        0.3**2 + 0.7**2
    )


def test_taylor_poly_linear_exact():
    d = corpus_lookup("linear").derivative_provider
    for node in (Point2D(0.0, 0.0), Point2D(0.8, 3.0)):
        assert taylor_poly(d, node, Point2D(0.25, 1.5), 1) == pytest.approx(1.75)


def test_taylor_poly_degree3_exact():
    d = _monomial_derivs(2, 1)
    val = taylor_poly(d, Point2D(0.5, 1.0), Point2D(0.3, 1.4), 3)
    assert val == pytest.approx(0.3**2 * 1.4, abs=1e-12)


def test_taylor_poly_order_error():
    d = PartialDerivativeSet(order=1, eval=lambda i, j, x, y: 0.0)
    with pytest.raises(DomainError):
        taylor_poly(d, Point2D(0.1, 0.1), Point2D(0.2, 0.2), 2)


def test_apply_rth_r0_reduction():
    rng = np.random.default_rng(21)
    entries = [corpus_lookup(n) for n in ("smooth", "prod", "quad")]
    for k in range(30):
        e = entries[k % 3]
        b1, b2 = rng.random(2) * 3
        params = StancuParams(rng.random() * b1, b1, rng.random() * b2, b2)
        m = int(rng.integers(1, 31))
        n = int(rng.integers(1, 31))
        p = Point2D(float(rng.random()), float(rng.random() * 3))
        a = apply_rth(e.derivative_provider, params, m, n, 0, p, TIGHT)
        b = apply(e.function, params, m, n, p, TIGHT)
        assert abs(a - b) <= 1e-12 * (1.0 + abs(b))


def test_apply_rth_polynomial_exactness():
    rng = np.random.default_rng(22)
    policy = TruncationPolicy(1e-12)
    for r in (1, 2, 3):
        for a in range(r + 1):
            b = r - a
            d = _monomial_derivs(a, b)
            params = StancuParams(0.5, 1.0, 0.5, 1.0)
            m = int(rng.integers(2, 51))
            n = int(rng.integers(2, 51))
            p = Point2D(float(rng.random()), float(rng.random() * 2))
            K = len(szasz_weights(n, p.y, policy)) - 1
            tol = 10 * policy.tail_tol * (1.0 + (K / n + 1.0) ** 3)
            got = apply_rth(d, params, m, n, r, p, policy)
            assert abs(got - p.x**a * p.y**b) <= tol


def test_apply_rth_against_direct_summation_oracle():
    # independent brute-force evaluation of the order-r sum
    e = corpus_lookup("smooth")
    params = StancuParams(0.5, 1.5, 0.5, 1.5)
    m = n = 20
    r = 2
    p = Point2D(0.5, 0.5)
    got = apply_rth(e.derivative_provider, params, m, n, r, p, TIGHT)

    wx = bernstein_weights(m, p.x).values
    wy = szasz_weights(n, p.y, TIGHT).values
    total = 0.0
    for nu in range(m + 1):
        tx = (nu + params.alpha1) / (m + params.beta1)
        for k in range(len(wy)):
            ty = (k + params.alpha2) / (n + params.beta2)
            total += wx[nu] * wy[k] * taylor_poly(
                e.derivative_provider, Point2D(tx, ty), p, r
            )
    assert got == pytest.approx(total, abs=1e-10)


def test_fd_stencil_weights_classical():
    assert np.allclose(fd_stencil_weights(0.0, np.array([-1.0, 0.0, 1.0]), 2),
                       [1.0, -2.0, 1.0])
    assert np.allclose(fd_stencil_weights(0.0, np.array([-1.0, 0.0, 1.0]), 1),
                       [-0.5, 0.0, 0.5])


def test_fd_mixed_partial():
    f = corpus_lookup("prod").function
    d = finite_difference_derivs(f, 2, h=1e-3)
    assert abs(d.eval(1, 1, 0.5, 1.0) - 1.0) <= 1e-5


def test_fd_linear_exact():
    f = corpus_lookup("linear").function
    d = finite_difference_derivs(f, 1, h=0.05)
    assert d.eval(1, 0, 0.3, 2.0) == pytest.approx(1.0, abs=1e-10)
    assert d.eval(0, 1, 0.0, 0.0) == pytest.approx(1.0, abs=1e-10)


def test_fd_identity_at_order_zero():
    f = corpus_lookup("quad").function
    d = finite_difference_derivs(f, 2)
    assert d.eval(0, 0, 0.37, 1.21) == f.eval(0.37, 1.21)


def test_fd_boundary_stencils():
    f = corpus_lookup("quad").function
    d = finite_difference_derivs(f, 2, h=1e-4)
    assert d.eval(2, 0, 0.0, 1.0) == pytest.approx(2.0, abs=1e-4)
    assert d.eval(2, 0, 1.0, 1.0) == pytest.approx(2.0, abs=1e-4)
    assert d.eval(0, 2, 0.5, 0.0) == pytest.approx(2.0, abs=1e-4)


def test_fd_convergence_order():
    f = corpus_lookup("smooth").function
    exact = corpus_lookup("smooth").derivative_provider
    hs = [1e-2, 5e-3, 2.5e-3]
    errs = []
    for h in hs:
        d = finite_difference_derivs(f, 2, h=h)
        errs.append(abs(d.eval(1, 1, 0.4, 0.9) - exact.eval(1, 1, 0.4, 0.9)))
    slope = (math.log(errs[0]) - math.log(errs[-1])) / (
        math.log(hs[0]) - math.log(hs[-1])
    )
    assert slope >= 1.9


def test_directional_derivative_linear():
    d = corpus_lookup("linear").derivative_provider
    frame = DirectionalFrame(Point2D(0.2, 0.5), (1.0, 0.0), 0.3)
    assert directional_rth_derivative(d, frame, 1) == pytest.approx(1.0)


def test_directional_derivative_quad():
    d = corpus_lookup("quad").derivative_provider
    s = 1.0 / math.sqrt(2.0)
    u = math.sqrt(2.0) * 0.3
    frame = DirectionalFrame(Point2D(0.0, 0.0), (s, s), u)
    assert directional_rth_derivative(d, frame, 1) == pytest.approx(
        0.6 * math.sqrt(2.0)
    )
    # second derivative is 2 in every direction
    rng = np.random.default_rng(9)
    for _ in range(3):
        th = rng.random() * math.pi / 2
        frame = DirectionalFrame(Point2D(0.3, 0.4), (math.cos(th), math.sin(th)), 0.1)
        assert directional_rth_derivative(d, frame, 2) == pytest.approx(2.0)


def test_directional_derivative_domain_error():
    d = corpus_lookup("quad").derivative_provider
    with pytest.raises(DomainError):
        directional_rth_derivative(d, DirectionalFrame(Point2D(0.9, 0.0), (1.0, 0.0), 0.5), 1)


def test_taylor_matches_directional_maclaurin():
    # the nodal Taylor value along p = node + u * dir matches the degree-r
    # Maclaurin polynomial in u of F(u) = f(node + u * dir)
    e = corpus_lookup("smooth")
    node = Point2D(0.4, 0.6)
    d = (0.6, 0.8)
    u = 0.25
    p = Point2D(node.x + u * d[0], node.y + u * d[1])
    r = 3
    got = taylor_poly(e.derivative_provider, node, p, r)
    want = 0.0
    for h in range(r + 1):
        fh = directional_rth_derivative(
            e.derivative_provider, DirectionalFrame(node, d, 0.0), h
        ) if h > 0 else e.function.eval(node.x, node.y)
        want += fh * u**h / math.factorial(h)
    assert got == pytest.approx(want, abs=1e-12)


def test_f_rth_lipschitz_polynomial_degree_r():
    # for f of total degree r the r-th directional derivative is constant
    d = corpus_lookup("linear").derivative_provider
    w = f_rth_lipschitz_estimate(d, 1, 1.0, CompactRegion(1.0), samples=300, seed=0)
    assert w.M_estimate == pytest.approx(0.0, abs=1e-12)


def test_f_rth_lipschitz_quad():
    d = corpus_lookup("quad").derivative_provider
    w = f_rth_lipschitz_estimate(d, 1, 1.0, CompactRegion(1.0), samples=500, seed=1)
    assert w.M_estimate == pytest.approx(2.0, abs=1e-9)


def test_frame_validation():
    with pytest.raises(DomainError):
        DirectionalFrame(Point2D(0.0, 0.0), (1.0, 1.0), 0.1)
