import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate as sp_integrate

from stratcone import orthopoly as op
from stratcone import sbo
from stratcone.polyalg import MultiPoly

LAMS = [Fraction(3, 2), Fraction(2), Fraction(5, 2)]


def tensor_spec(k=(1, 1)):
    return sbo.SboSpec.tensor_simplex(LAMS, op.simplex_basis(2, LAMS, k))


def ball_spec(n=5, p=2, lam=5, k=(1, 1)):
    alpha = Fraction(lam) - Fraction(n - 1, 2)
    return sbo.SboSpec.lorentz_ball(n, p, lam, op.ball_basis(p, alpha, k))


def test_spec_rejects_non_orthogonal_polynomial():
    v = MultiPoly.variables(2)
    with pytest.raises(ValueError):
        sbo.SboSpec.tensor_simplex(LAMS, v[0] ** 2)
    spec = sbo.SboSpec.tensor_simplex(LAMS, v[0] ** 2, require_orthogonal=False)
    assert sbo.pol_k_defect(spec) > 1e-3


def test_so_p_rejects_p2():
    with pytest.raises(ValueError):
        sbo.SboSpec.lorentz_ball_so_p(5, 2, 5, 2, 1)


def test_dilation_exponents():
    spec = tensor_spec()
    assert spec.source_dilation_exponent() == pytest.approx(3.0)
    assert spec.target_dilation_exponent() == pytest.approx(5.0)
    b = ball_spec()
    assert (b.source_dilation_exponent(), b.target_dilation_exponent()) == (5.0, 7.0)


def test_tensor_sbo_two_factors_against_scipy():
    lams = [Fraction(3, 2), Fraction(5, 2)]
    poly = op.simplex_basis(1, lams, (2,))
    spec = sbo.SboSpec.tensor_simplex(lams, poly)
    f = sbo.StratFunction(lambda x, v: np.exp(-x[..., 0]) * (1 + x[..., 0] * v[..., 0] ** 3), 3)
    t = np.array([0.5, 2.0])
    got = sbo.sbo_apply(spec, f, t[:, None])
    for ti, value in zip(t, got):
        integral, _ = sp_integrate.quad(
            lambda v: math.exp(-ti) * (1 + ti * v**3) * poly.evaluate(np.array([v])), 0, 1,
            weight="alg", wvar=(0.5, 1.5), epsabs=1e-14, epsrel=1e-13,
        )
        assert value == pytest.approx(integral * ti**-2, rel=1e-10)


def test_ball_sbo_one_dimensional_against_scipy():
    n, p, lam = 4, 1, 4
    alpha = Fraction(lam) - Fraction(n - 1, 2)
    poly = op.ball_basis(1, alpha, (2,))
    spec = sbo.SboSpec.lorentz_ball(n, p, lam, poly)
    f = sbo.StratFunction(lambda x, v: np.exp(-2 * x[..., 0]) * (x[..., 1] + v[..., 0] ** 2), 2)
    x = np.array([[2.0, 0.5, 0.3]])
    q = 4.0 - 0.25 - 0.09
    exponent = float(alpha) - 0.5
    integral, _ = sp_integrate.quad(
        lambda v: math.exp(-4.0) * (0.5 + v * v) * poly.evaluate(np.array([v])) * 2**-0.5, -1, 1,
        weight="alg", wvar=(exponent, exponent), epsabs=1e-14, epsrel=1e-13,
    )
    assert sbo.sbo_apply(spec, f, x)[0] == pytest.approx(integral / q, rel=1e-10)


def test_so_p_block_coefficient():
    spec = sbo.SboSpec.lorentz_ball_so_p(5, 3, 5, 3, 1)
    kernel_poly = op.ball_mixed_basis(3, 5, 5, 3, 1, 2)
    harmonic = op.harmonic_basis(3, 1)[2]
    f = sbo.StratFunction(lambda x, v: np.exp(-x[..., 0]) * kernel_poly.evaluate(v), kernel_poly.degree())
    x = sbo.sample_cone_points(spec, 4, seed=3)
    rng = np.random.default_rng(0)
    u = rng.normal(size=(5, 3))
    u /= np.linalg.norm(u, axis=1)[:, None]
    got = sbo.sbo_so_p(spec, f, x, u)
    q = x[:, 0] ** 2 - np.sum(x[:, 1:] ** 2, axis=1)
    expected = sbo.so_p_block_coefficient(spec) * (np.exp(-x[:, 0]) * q ** -1.5)[:, None] * harmonic.evaluate(u)[None, :]
    assert np.allclose(got, expected, rtol=1e-12, atol=1e-14)


def test_so_p_annihilates_other_blocks():
    spec = sbo.SboSpec.lorentz_ball_so_p(5, 3, 5, 3, 1)
    other = op.ball_mixed_basis(3, 5, 5, 3, 0, 0)
    f = sbo.StratFunction(lambda x, v: np.exp(-x[..., 0]) * other.evaluate(v), other.degree())
    x = sbo.sample_cone_points(spec, 3, seed=1)
    u = np.array([[0.0, 0.6, 0.8], [1.0, 0.0, 0.0]])
    assert np.max(np.abs(sbo.sbo_so_p(spec, f, x, u))) < 1e-13


def test_holographic_operator_is_multiplication():
    spec = tensor_spec()
    h = sbo.holo_apply(spec, lambda x: np.exp(-x[..., 0]))
    x, v = np.array([1.5]), np.array([0.2, 0.3])
    assert h(x, v) == pytest.approx(spec.poly.evaluate(v) * 1.5**2 * math.exp(-1.5))


def _pair(spec, rng):
    nvars = spec.cone_dim + spec.p
    coeffs = rng.integers(-3, 4, size=3)
    poly = MultiPoly(nvars, {tuple([1] + [0] * (nvars - 1)): int(coeffs[0]) or 1, tuple([0] * nvars): int(coeffs[1]) or 1})
    kernel = op.ball_mixed_basis(spec.p, spec.lam, spec.n, spec.degree, spec.block, 0) if spec.poly is None else spec.poly
    poly = poly + kernel.embed(nvars, list(range(spec.cone_dim, nvars)))
    f = sbo.gaussian_poly_function(spec, poly, 0.5)
    if spec.geometry == "LorentzBallSO_p":
        harm = op.harmonic_basis(spec.p, spec.harmonic_degree)[0]
        g = lambda x, u: np.exp(-x[..., 0]) * (1 + x[..., 0]) * harm.evaluate(u)
    else:
        g = lambda x: np.exp(-spec.cone_trace(x) / 2) * (1 + x[..., 0])
    return f, g


@pytest.mark.parametrize("spec", [tensor_spec(), ball_spec(), sbo.SboSpec.lorentz_ball_so_p(5, 3, 5, 2, 1)],
                         ids=["tensor", "ball", "so_p"])
def test_adjointness(spec, rng):
    f, g = _pair(spec, rng)
    defect, lhs, rhs = sbo.adjointness_defect(spec, f, g, 0.5, npts=10)
    assert abs(lhs) > 1e-8
    assert defect < 1e-10


@pytest.mark.parametrize("kind,element", [("translation", [0.7]), ("dilation", 1.8)])
def test_tensor_intertwining(kind, element, rng):
    spec = tensor_spec()
    f, _ = _pair(spec, rng)
    assert sbo.verify_parabolic_intertwine(spec, kind, element, f, sbo.sample_cone_points(spec, 6)) < 1e-10


def test_so_p_rotation_equivariance(rng):
    spec = sbo.SboSpec.lorentz_ball_so_p(5, 3, 5, 3, 1)
    f, _ = _pair(spec, rng)
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    u = rng.normal(size=(4, 3))
    u /= np.linalg.norm(u, axis=1)[:, None]
    assert sbo.verify_parabolic_intertwine(spec, "rotation", q, f, sbo.sample_cone_points(spec, 4), u) < 1e-10


def test_structure_kind_rejected_for_tensor(rng):
    spec = tensor_spec()
    f, _ = _pair(spec, rng)
    with pytest.raises(ValueError):
        sbo.verify_parabolic_intertwine(spec, "structure", np.eye(1), f, [1.0])


def test_bessel_intertwining_only_if():
    spec = ball_spec()
    assert all(r.is_zero() for r in sbo.bessel_intertwining_residual(spec, Fraction(1, 3)))
    v = MultiPoly.variables(2)
    assert any(not r.is_zero() for r in sbo.bessel_intertwining_residual(spec, Fraction(1, 3), v[0] ** 2))


def test_tensor_diagram():
    f = lambda x: np.exp(-x.sum(-1)) * x[..., 0] * x[..., 1] ** 2
    defect, one, two = sbo.verify_diagram_tensor(LAMS, (1, 1), f, np.array([0.5, 1.0, 3.0]))
    assert defect < 1e-10
    assert np.max(np.abs(one)) > 1e-6


def test_conformal_diagram():
    f = lambda z: np.exp(-z[..., 0]) * z[..., 1]
    g = lambda x: np.exp(-x[..., 0]) * (1 + x[..., 1])
    first, second = sbo.verify_diagram_conform(3, 4, 2, f, g, sbo.sample_cone_points(2, 4), sbo.sample_cone_points(3, 4, seed=1))
    assert first < 1e-6 and second < 1e-6


def test_jacobi_transform_of_constant_degree_zero():
    # T_0 of 1 is the Beta-type integral 2^{a+b-1} B(a, b)
    a, b = Fraction(3, 2), Fraction(5, 2)
    value = sbo.jacobi_transform(a, b, 0, lambda pts: np.ones(pts.shape[:-1]), np.array([[1.0, 0.3]]))
    a, b = float(a), float(b)
    assert value[0] == pytest.approx(2 ** (a + b - 1) * math.gamma(a) * math.gamma(b) / math.gamma(a + b), rel=1e-12)


def test_branching_tables():
    rows = sbo.branching_table("TensorSimplex", 4, 3)
    assert rows[3]["multiplicity"] == 10
    assert all(r["multiplicity"] == 1 for r in sbo.branching_table("TensorSimplex", 2, 6))
    so3 = sbo.branching_table("LorentzBallSO_p", 3, 4)
    assert so3[4]["harmonic_dims"] == [9, 5, 1]
    assert all(r["match"] for r in so3)


def test_sample_points_inside_cone():
    x = sbo.sample_cone_points(4, 20, seed=2)
    assert np.all(x[:, 0] ** 2 - np.sum(x[:, 1:] ** 2, axis=1) > 0)
