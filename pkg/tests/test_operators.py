import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from stratcone import jordan as jd
from stratcone import operators as ops
from stratcone.polyalg import MultiPoly, PowPolyFunction


def fd_bessel(alg, lam, func, x, h=1e-3):
    """Independent finite-difference Bessel operator from numeric P(e_a, e_b)."""
    n = alg.n
    gram_inv = np.linalg.inv(jd.gram_matrix(alg))
    eye = np.eye(n)
    grad = np.zeros(n, dtype=complex)
    hess = np.zeros((n, n), dtype=complex)
    for a in range(n):
        grad[a] = (func(x + h * eye[a]) - func(x - h * eye[a])) / (2 * h)
        for b in range(n):
            hess[a, b] = (func(x + h * eye[a] + h * eye[b]) - func(x + h * eye[a] - h * eye[b])
                          - func(x - h * eye[a] + h * eye[b]) + func(x - h * eye[a] - h * eye[b])) / (4 * h * h)
    # gradient and Hessian with respect to the trace form
    grad_tr = gram_inv @ grad
    hess_tr = gram_inv @ hess @ gram_inv
    out = lam * grad_tr
    for a in range(n):
        for b in range(n):
            pab = jd.quad_rep_polarized(jd.element(alg, eye[a]), jd.element(alg, eye[b]))
            out = out + hess_tr[a, b] * (pab @ x)
    return out


def lorentz_f(n, mu, poly):
    xs = MultiPoly.variables(n)
    q = xs[0] * xs[0]
    for i in range(1, n):
        q = q - xs[i] * xs[i]
    return PowPolyFunction(q, {mu: poly})


def test_rank1_bessel_is_x_d2_plus_lam_d():
    x = MultiPoly.variable(1, 0)
    f = PowPolyFunction(x, {Fraction(1, 3): x**2 + 1})
    lam = Fraction(5, 2)
    result = ops.bessel_apply(ops.DiffOperatorSpec.bessel_rank1(lam), f)
    pt = np.array([1.7])
    func = lambda s: s ** (1 / 3) * (s * s + 1)
    h = 1e-4
    d1 = (func(pt[0] + h) - func(pt[0] - h)) / (2 * h)
    d2 = (func(pt[0] + h) - 2 * func(pt[0]) + func(pt[0] - h)) / h**2
    assert result.evaluate(pt) == pytest.approx(pt[0] * d2 + float(lam) * d1, rel=1e-6)


def test_lorentz_bessel_against_finite_differences():
    n, lam = 3, Fraction(7, 2)
    xs = MultiPoly.variables(n)
    f = lorentz_f(n, Fraction(1, 2), xs[0] * xs[1] + xs[2] ** 2)
    comps = ops.bessel_apply(ops.DiffOperatorSpec.bessel_lorentz(lam, n), f)
    x = np.array([2.0, 0.4, -0.7])
    exact = np.array([c.evaluate(x) for c in comps])
    numeric = fd_bessel(jd.Lorentz(n), float(lam), lambda z: f.evaluate(z), x)
    assert np.allclose(exact, numeric.real, rtol=1e-6, atol=1e-6)


@pytest.mark.parametrize("alg", [jd.Rank1Product(1), jd.Rank1Product(2), jd.Lorentz(3), jd.Lorentz(4)], ids=str)
def test_shift_identity(alg):
    delta, _ = ops.jordan_adjugate(alg)
    xs = MultiPoly.variables(alg.n)
    f = PowPolyFunction(delta, {Fraction(1, 5): xs[0] ** 2 + 3 * xs[-1]})
    for mu in (Fraction(-1, 2), Fraction(-3, 2), Fraction(2, 3)):
        assert all(r.is_zero() for r in ops.bessel_shift_identity_check(alg, Fraction(9, 4), mu, f))


def test_shift_identity_detects_wrong_constant():
    alg = jd.Lorentz(3)
    delta, adj = ops.jordan_adjugate(alg)
    f = PowPolyFunction(delta, {0: MultiPoly.constant(3, 1)})
    mu, lam = Fraction(-1, 2), Fraction(3)
    lhs = ops.jordan_bessel(alg, lam, f.shift_mu(mu))
    # B_lam Delta^mu = mu(mu + lam - n/r) Delta^{mu-1} N(x); a wrong n/r must leave a residual
    wrong = mu * (mu + lam - 1)
    residual = lhs[0] - f.mul_poly(adj[0]).shift_mu(mu - 1).scale(wrong)
    assert not residual.is_zero()


def test_tensor_sum_is_sum_of_rank1():
    xs = MultiPoly.variables(2)
    f = PowPolyFunction(MultiPoly.constant(2, 1), {0: xs[0] ** 3 * xs[1] + xs[1] ** 2})
    lams = (Fraction(3, 2), Fraction(2))
    total = ops.bessel_apply(ops.DiffOperatorSpec.bessel_tensor_sum(lams), f)
    expected = sum(
        (f.derivative(i).derivative(i).mul_poly(xs[i]) + f.derivative(i).scale(lams[i]) for i in range(2)),
        PowPolyFunction(f.base, {}),
    )
    assert total.equals(expected)


@pytest.mark.parametrize("lams", [[Fraction(3, 2), Fraction(5, 2)], [Fraction(1, 2), Fraction(2), Fraction(7, 3), Fraction(1)]])
def test_strat_tensor_closed_form_equals_pullback(lams):
    n = len(lams)
    xs = MultiPoly.variables(n)
    f = PowPolyFunction(xs[0], {Fraction(1, 3): xs[0] * xs[1] ** 2 + xs[-1] - 2})
    assert ops.strat_bessel_tensor(lams, f).equals(ops.strat_bessel_tensor_pullback(lams, f))


def test_strat_tensor_finite_differences():
    lams = [Fraction(3, 2), Fraction(2), Fraction(5, 2)]
    xs = MultiPoly.variables(3)
    f = PowPolyFunction(xs[0], {Fraction(1, 2): xs[0] * xs[1] * xs[2] + xs[1] ** 3})
    closed = ops.strat_bessel_tensor(lams, f)
    t, v = 1.3, np.array([0.2, 0.5])
    numeric = ops.strat_bessel_tensor_fd(lams, lambda s, w: f.evaluate(np.concatenate([[s], w])), t, v)
    assert numeric == pytest.approx(closed.evaluate(np.array([t, *v])), abs=1e-6)


@pytest.mark.parametrize("n,p", [(4, 1), (5, 2), (5, 3)])
def test_strat_lorentz_closed_form_and_fd(n, p):
    m = n - p
    lam = Fraction(2 * n + 1, 2)
    xs = MultiPoly.variables(n)
    f = lorentz_f(m, Fraction(1, 4), MultiPoly.zero(m))
    f = PowPolyFunction(f.base.embed(n, list(range(m))), {Fraction(1, 4): xs[0] * xs[-1] ** 2 + xs[1] - xs[m]})
    closed = ops.strat_bessel_lorentz(lam, n, p, f)
    pulled = ops.strat_bessel_lorentz_pullback(lam, n, p, f)
    assert all(a.equals(b) for a, b in zip(closed, pulled))
    x = np.concatenate([[1.5], 0.3 * np.ones(m - 1) / math.sqrt(m - 1)])
    v = 0.4 * np.ones(p) / math.sqrt(p)
    numeric = ops.strat_bessel_lorentz_fd(float(lam), n, p, lambda a, b: f.evaluate(np.concatenate([a, b])), x, v)
    exact = [c.evaluate(np.concatenate([x, v])) for c in closed]
    assert np.allclose(numeric, exact, atol=1e-6)


@pytest.mark.parametrize("k", range(4))
def test_simplex_and_ball_eigenchecks(k):
    assert ops.simplex_eigencheck([Fraction(3, 2), Fraction(2), Fraction(5, 2)], k)
    assert ops.ball_eigencheck(Fraction(7, 4), 2, k)


def test_eigencheck_fails_for_wrong_basis():
    lams = [Fraction(3, 2), Fraction(5, 2)]
    v = MultiPoly.variable(1, 0)
    residual = ops.simplex_pde_apply(lams, v**2) + (v**2).scale(2 * (2 + 4 - 1))
    assert not residual.is_zero()


def test_lie_action_n_and_l():
    alg = jd.Lorentz(3)
    xs = MultiPoly.variables(3)
    f = lorentz_f(3, Fraction(1, 2), xs[1] + 1)
    x = np.array([2.0, 0.3, 0.5])
    u = np.array([0.1, 0.2, -0.3])
    n_act = ops.lie_action(alg, 3.0, "n", u, f)
    assert n_act(x) == pytest.approx(1j * (u @ jd.gram_matrix(alg) @ x) * f.evaluate(x))
    # the identity matrix generates dilations x -> e^s x, with Jacobian factor e^{s lam r/2}
    lam = 3.0
    l_act = ops.lie_action(alg, lam, "l", np.eye(3), f)
    h = 1e-5
    scaled = lambda s: math.exp(s) ** (lam * alg.r / 2) * f.evaluate(math.exp(s) * x)
    assert l_act(x) == pytest.approx((scaled(h) - scaled(-h)) / (2 * h), rel=1e-7)


def test_lie_action_nbar_against_finite_differences():
    alg = jd.Lorentz(3)
    lam = 3.5
    xs = MultiPoly.variables(3)
    f = lorentz_f(3, Fraction(1, 2), xs[0] + xs[2] ** 2)
    w = np.array([0.3, -0.2, 0.1])
    v = np.array([1.0, 0.5, -0.25])
    gram = jd.gram_matrix(alg)
    x = np.array([2.0, 0.4, -0.3])
    act = ops.lie_action(alg, lam, "nbar", v, f, phase=w)
    func = lambda z: f.evaluate(z) * cmath.exp(1j * (z @ gram @ w))
    bessel = fd_bessel(alg, lam, func, x, h=1e-3)
    assert act(x) == pytest.approx(1j * (v @ gram @ bessel), rel=1e-6)


@pytest.mark.parametrize("lam", [1.5, 3.0])
def test_hankel_closed_forms(lam):
    t = np.array([0.3, 1.0, 2.5])
    phase = cmath.exp(-1j * math.pi * lam / 2)
    assert np.allclose(ops.hankel_rank1(lam, lambda x: np.exp(-x), t), phase * np.exp(-t), atol=1e-12)
    assert np.allclose(ops.hankel_rank1(lam, lambda x: x * np.exp(-x), t), phase * (lam - t) * np.exp(-t), atol=1e-12)


def test_hankel_involution():
    assert ops.hankel_involution_defect(2.5, lambda x: (1 + x**2) * np.exp(-x), np.linspace(0.1, 5, 7)) < 1e-3


def test_operator_spec_validation():
    with pytest.raises(ValueError):
        ops.DiffOperatorSpec("Laplace", ())
    with pytest.raises(ValueError):
        ops.bessel_apply(ops.DiffOperatorSpec.simplex_pde([1, 2]), PowPolyFunction(MultiPoly.constant(1, 1), {}))
