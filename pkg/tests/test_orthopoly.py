import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from scipy import integrate as sp_integrate
from scipy.special import eval_gegenbauer, eval_jacobi

from stratcone import orthopoly as op
from stratcone.polyalg import laplacian
from stratcone.quadrature import ball_rule, simplex_rule


@pytest.mark.parametrize("n,a,b", [(0, 0.5, 1.5), (3, 0.5, 1.5), (5, -0.3, 2.0), (4, 2.0, 2.0)])
def test_jacobi_against_scipy(n, a, b):
    xs = np.linspace(-1, 1, 9)
    poly = op.jacobi_poly(n, Fraction(a).limit_denominator(100), Fraction(b).limit_denominator(100))
    assert np.allclose(poly.evaluate(xs[:, None]), eval_jacobi(n, a, b, xs), rtol=1e-12, atol=1e-12)


def test_jacobi_norm_against_scipy_quad():
    n, a, b = 3, 0.5, 1.5
    exact, _ = sp_integrate.quad(lambda x: eval_jacobi(n, a, b, x) ** 2 * (1 - x) ** a * (1 + x) ** b, -1, 1)
    assert op.jacobi_norm2(n, a, b) == pytest.approx(exact, rel=1e-10)


def test_jacobi_degree_one_row():
    alpha, beta = Fraction(3, 4), Fraction(1, 5)
    poly = op.jacobi_poly(1, alpha, beta)
    assert [poly.coefficient((0,)), poly.coefficient((1,))] == [(alpha - beta) / 2, (alpha + beta + 2) / 2]


@pytest.mark.parametrize("n,alpha", [(2, 1), (4, Fraction(3, 2)), (5, Fraction(7, 3))])
def test_gegenbauer_against_scipy(n, alpha):
    xs = np.linspace(-1, 1, 7)
    assert np.allclose(op.gegenbauer(n, alpha).evaluate(xs[:, None]), eval_gegenbauer(n, float(alpha), xs), rtol=1e-12)


def test_gegenbauer_norm_against_scipy_quad():
    n, alpha = 3, 1.25
    exact, _ = sp_integrate.quad(lambda x: eval_gegenbauer(n, alpha, x) ** 2 * (1 - x * x) ** (alpha - 0.5), -1, 1)
    assert op.gegenbauer_norm2(n, alpha) == pytest.approx(exact, rel=1e-10)


def test_hypergeometric_against_mpmath():
    assert op.kummer_1f1(1.5, 2.5, 3.0) == pytest.approx(float(mpmath.hyp1f1(1.5, 2.5, 3.0)), rel=1e-13)
    z = complex(0, -4.0)
    assert op.kummer_1f1(2.0, 3.5, z) == pytest.approx(complex(mpmath.hyp1f1(2.0, 3.5, z)), rel=1e-12)
    assert op.conf_0f1(2.5, -6.0) == pytest.approx(float(mpmath.hyp0f1(2.5, -6.0)), rel=1e-12)
    assert op.hyper_pfq([1, 2], [3], 0.5) == pytest.approx(float(mpmath.hyp2f1(1, 2, 3, 0.5)), rel=1e-12)


def test_hypergeometric_bad_parameter():
    with pytest.raises(op.HypergeometricError):
        op.hyper_pfq([1], [-2], 0.3)


def test_pochhammer_exact():
    assert op.pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert op.pochhammer(3, 0) == 1


def _gram(polys, rule):
    vals = np.array([q.evaluate(rule.nodes) for q in polys])
    return (vals * rule.weights) @ vals.T


@pytest.mark.parametrize("lams", [[Fraction(3, 2), Fraction(5, 2)], [Fraction(1, 2), Fraction(2), Fraction(7, 3)]])
def test_simplex_basis_orthogonal(lams):
    nv = len(lams) - 1
    polys = [op.simplex_basis(nv, lams, k) for d in range(4) for k in op.multi_indices(nv, d)]
    gram = _gram(polys, simplex_rule(nv, [float(x) for x in lams], 6))
    diag = np.sqrt(np.diag(gram))
    off = gram / np.outer(diag, diag) - np.eye(len(polys))
    assert np.max(np.abs(off)) < 1e-10


def test_dunkl_xu_family_spans_same_degree_spaces():
    lams = [Fraction(3, 2), Fraction(2), Fraction(5, 2)]
    rule = simplex_rule(2, [float(x) for x in lams], 6)
    lower = [op.simplex_basis(2, lams, k) for d in range(3) for k in op.multi_indices(2, d)]
    for k in op.multi_indices(2, 3):
        alt = op.simplex_basis_dunklxu(2, lams, k)
        assert alt.degree() == 3
        vals = alt.evaluate(rule.nodes)
        for q in lower:
            assert abs(np.sum(rule.weights * vals * q.evaluate(rule.nodes))) < 1e-12


def test_ball_basis_orthogonal_against_scipy():
    alpha = Fraction(3, 2)
    polys = [op.ball_basis(2, alpha, k) for k in [(0, 0), (1, 0), (0, 2), (2, 0), (1, 1)]]
    weight = lambda x, y: 0.5 * (1 - x * x - y * y) ** (float(alpha) - 0.5)

    def inner(f, g):
        val, _ = sp_integrate.dblquad(
            lambda y, x: f.evaluate(np.array([x, y])) * g.evaluate(np.array([x, y])) * weight(x, y),
            -1, 1, lambda x: -math.sqrt(1 - x * x), lambda x: math.sqrt(1 - x * x), epsabs=1e-12,
        )
        return val

    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            assert abs(inner(polys[i], polys[j])) < 1e-9


@pytest.mark.parametrize("p", [1, 2, 3])
def test_ball_basis_orthogonal_quadrature(p):
    alpha = Fraction(3, 4)
    polys = [op.ball_basis(p, alpha, k) for d in range(4) for k in op.multi_indices(p, d)]
    gram = _gram(polys, ball_rule(p, float(alpha), 6))
    diag = np.sqrt(np.diag(gram))
    assert np.max(np.abs(gram / np.outer(diag, diag) - np.eye(len(polys)))) < 1e-10


@pytest.mark.parametrize("p,degree,expected", [(2, 3, 2), (3, 4, 9), (3, 2, 5), (4, 2, 9)])
def test_harmonic_basis(p, degree, expected):
    basis = op.harmonic_basis(p, degree)
    assert op.harmonic_dim(p, degree) == expected == len(basis)
    for h in basis:
        assert h.is_homogeneous() and h.degree() == degree
        assert laplacian(h).is_zero()


def _sphere3_rule(npts):
    ct, wt = np.polynomial.legendre.leggauss(npts)
    phi = 2 * np.pi * np.arange(2 * npts) / (2 * npts)
    st = np.sqrt(1 - ct**2)
    pts = np.array([[s * math.cos(f), s * math.sin(f), c] for c, s in zip(ct, st) for f in phi])
    w = np.array([wc * 2 * np.pi / (2 * npts) for wc in wt for _ in phi]) / (4 * np.pi)
    return pts, w


def test_harmonic_kernel_reproduces_harmonics():
    pts, w = _sphere3_rule(12)
    x = np.array([0.3, -0.5, 0.8]) / np.linalg.norm([0.3, -0.5, 0.8])
    for degree in (1, 2, 3):
        kern = op.harmonic_kernel(3, degree, x[None, :], pts)
        for h in op.harmonic_basis(3, degree):
            assert np.sum(w * kern * h.evaluate(pts)) == pytest.approx(h.evaluate(x), abs=1e-12)


def test_harmonic_kernel_rejects_p2():
    with pytest.raises(ValueError):
        op.harmonic_kernel(2, 1, [1.0, 0.0], [0.0, 1.0])


def test_mixed_basis_structure():
    poly = op.ball_mixed_basis(3, 5, 5, 3, 1, 0)
    assert poly.degree() == 3
    with pytest.raises(ValueError):
        op.ball_mixed_basis(3, 5, 5, 1, 1, 0)


def test_juhl_coefficients_example():
    assert op.juhl_coefficients(2, 1) == [4, -1]


@pytest.mark.parametrize("alpha", [Fraction(1), Fraction(3, 2), Fraction(11, 4)])
def test_juhl_symbol_is_inflated_gegenbauer(alpha):
    for l in range(9):
        assert op.juhl_symbol(l, alpha) == op.inflated_gegenbauer(l, alpha)


def test_inflated_gegenbauer_definition():
    poly = op.inflated_gegenbauer(4, Fraction(3, 2))
    x, y = 2.0, 0.7
    assert poly.evaluate(np.array([x, y])) == pytest.approx(x**2 * eval_gegenbauer(4, 1.5, y / math.sqrt(x)))


def test_rankin_cohen_degree_one():
    lam1, lam2 = Fraction(3), Fraction(7, 2)
    assert op.rankin_cohen_coefficients(lam1, lam2, 1) == [lam2, -lam1]


@pytest.mark.parametrize("l", [0, 1, 3, 5])
def test_kummer_pair_against_mpmath(l):
    alpha, beta, x = 1.7, 2.4, 6.0
    lhs, rhs = op.kummer_integral_pair(alpha, beta, l, x)
    assert lhs == pytest.approx(rhs, rel=1e-9)
    direct = mpmath.quad(lambda v: mpmath.jacobi(l, alpha - 1, beta - 1, v) * mpmath.expj(v * x)
                         * (1 - v) ** (alpha - 1) * (1 + v) ** (beta - 1), [-1, 0, 1])
    assert rhs == pytest.approx(complex(direct), rel=1e-8, abs=1e-10)


@pytest.mark.parametrize("l", [0, 2, 4])
def test_gegenbauer_fourier_pair(l):
    lhs, rhs = op.gegenbauer_fourier_pair(1.8, l, 4.0)
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_factorization_residuals_vanish():
    lams = [Fraction(3, 2), Fraction(2), Fraction(5, 2)]
    for k in op.multi_indices(2, 3):
        assert op.simplex_factorization_residual(2, lams, k).is_zero()
    for k in op.multi_indices(2, 3):
        assert op.ball_factorization_residual(2, Fraction(3, 2), k).is_zero()


def test_multi_indices_count():
    assert len(op.multi_indices(3, 4)) == math.comb(6, 2)
    assert all(sum(k) == 4 for k in op.multi_indices(3, 4))
