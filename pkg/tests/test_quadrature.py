import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate
from scipy.special import beta as beta_fn

from stratcone.quadrature import (
    ResolutionWarning,
    ball_rule,
    check_oscillation,
    gauss_jacobi_rule,
    gauss_laguerre_rule,
    integrate,
    lorentz_cone_rule,
    simplex_rule,
)


def test_single_point_legendre():
    rule = gauss_jacobi_rule(1, 0.0, 0.0)
    assert rule.nodes.tolist() == pytest.approx([0.0], abs=1e-15)
    assert rule.weights.tolist() == pytest.approx([2.0])


@pytest.mark.parametrize("alpha,beta", [(0.0, 0.0), (0.5, -0.5), (2.3, 1.7)])
def test_jacobi_moments_against_beta(alpha, beta):
    rule = gauss_jacobi_rule(12, alpha, beta)
    for k in range(8):
        # int (1-v)^a (1+v)^b ((1+v)/2)^k dv = 2^{a+b+1} B(a+1, b+k+1)
        exact = 2 ** (alpha + beta + 1) * beta_fn(alpha + 1, beta + k + 1)
        assert integrate(lambda v: ((1 + v) / 2) ** k, rule) == pytest.approx(exact, rel=1e-13)


def test_laguerre_moments():
    rule = gauss_laguerre_rule(10, 1.5)
    for k in range(6):
        assert integrate(lambda x: x**k, rule) == pytest.approx(math.gamma(2.5 + k), rel=1e-12)


def test_ball_total_weight_matches_beta_product():
    p, alpha = 2, 2.0
    rule = ball_rule(p, alpha, 40)
    # polar coordinates: 2^{-p/2} |S^{p-1}| int_0^1 r^{p-1}(1-r^2)^{alpha-1/2} dr
    sphere = 2 * math.pi ** (p / 2) / math.gamma(p / 2)
    exact = 2 ** (-p / 2) * sphere * 0.5 * beta_fn(p / 2, alpha + 0.5)
    assert rule.total_weight == pytest.approx(exact, rel=1e-12)


def test_ball_rule_against_scipy_dblquad():
    rule = ball_rule(2, 1.25, 12)
    poly = lambda x, y: 1 + x**2 * y**2 + 3 * y**4
    weight = lambda x, y: 0.5 * (1 - x * x - y * y) ** 0.75
    exact, _ = sp_integrate.dblquad(lambda y, x: poly(x, y) * weight(x, y), -1, 1,
                                    lambda x: -math.sqrt(1 - x * x), lambda x: math.sqrt(1 - x * x), epsabs=1e-13)
    assert integrate(lambda v: poly(v[:, 0], v[:, 1]), rule) == pytest.approx(exact, rel=1e-9)


def test_simplex_rule_dirichlet_moments():
    lams = [1.5, 2.0, 0.7]
    rule = simplex_rule(2, lams, 10)
    norm = math.prod(math.gamma(a) for a in lams) / math.gamma(sum(lams))
    assert rule.total_weight == pytest.approx(norm, rel=1e-12)
    # E[v1 v2] for a Dirichlet distribution
    mean = lams[0] * lams[1] / (sum(lams) * (sum(lams) + 1))
    assert integrate(lambda v: v[:, 0] * v[:, 1], rule) / norm == pytest.approx(mean, rel=1e-12)


def test_lorentz_cone_rule_gamma():
    n, lam = 3, 2.5
    rule = lorentz_cone_rule(n, lam, 0.5, 20)
    # int_Omega Q^{lam - n/2} e^{-x1} dx in Euclidean coordinates
    sphere = 2 * math.pi ** ((n - 1) / 2) / math.gamma((n - 1) / 2)

    def radial(x1):
        inner, _ = sp_integrate.quad(lambda r: (x1 * x1 - r * r) ** (lam - n / 2) * r ** (n - 2), 0, x1)
        return inner * math.exp(-x1)

    exact, _ = sp_integrate.quad(radial, 0, np.inf, epsabs=1e-13)
    assert rule.total_weight == pytest.approx(sphere * exact, rel=1e-8)


def test_oscillation_warning():
    with pytest.warns(ResolutionWarning):
        check_oscillation(1e6, 10)


def test_rules_are_deterministic():
    a = simplex_rule(3, [1.2, 2.0, 0.8, 1.5], 6)
    b = simplex_rule(3, [1.2, 2.0, 0.8, 1.5], 6)
    assert np.array_equal(a.nodes, b.nodes) and np.array_equal(a.weights, b.weights)
