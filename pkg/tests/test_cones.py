import math

import numpy as np
import pytest

from stratcone import cones
from stratcone import jordan as jd

EMBEDDINGS = [
    cones.EqualRankLorentz(4, 1),
    cones.EqualRankLorentz(6, 3),
    cones.DiagonalProduct(jd.Rank1Product(1), 3),
    cones.DiagonalProduct(jd.Lorentz(3), 2),
    cones.DiagonalProduct(jd.SymMatrices(2), 3),
    cones.ScalarLine(jd.Lorentz(4)),
]


def sample(emb, rng):
    if emb.kind == "scalar_line":
        t = np.array([1.3])
    else:
        t = jd.random_cone_point(emb.inner, rng)
    _, dv = cones.strat_dims(emb)
    while True:
        v = rng.normal(scale=0.15, size=dv)
        if cones.in_strat_space(emb, v):
            return cones.StratCoords(t, v)


@pytest.mark.parametrize("emb", EMBEDDINGS, ids=str)
def test_round_trip_and_image_in_cone(emb, rng):
    c = sample(emb, rng)
    x = cones.strat_forward(emb, c)
    assert jd.in_cone(jd.element(emb.outer, x))
    back = cones.strat_inverse(emb, x)
    assert np.allclose(back.t, c.t, atol=1e-12) and np.allclose(back.v, c.v, atol=1e-12)


@pytest.mark.parametrize("emb", EMBEDDINGS, ids=str)
def test_jacobian_against_finite_differences(emb, rng):
    c = sample(emb, rng)
    assert cones.strat_jacobian(emb, c) == pytest.approx(cones.strat_jacobian_numeric(emb, c), rel=1e-6)


@pytest.mark.parametrize("emb", [cones.EqualRankLorentz(5, 2), cones.ScalarLine(jd.Lorentz(3))], ids=str)
def test_general_jacobian_formula_on_its_range(emb, rng):
    c = sample(emb, rng)
    assert cones.strat_jacobian_general(emb, c) == pytest.approx(cones.strat_jacobian(emb, c), rel=1e-10)


@pytest.mark.parametrize("emb", EMBEDDINGS[:5], ids=str)
def test_determinant_and_trace_identities(emb, rng):
    det_lhs, det_rhs, tr_lhs, tr_rhs = cones.strat_identities_check(emb, sample(emb, rng))
    assert det_lhs == pytest.approx(det_rhs, rel=1e-10)
    assert tr_lhs == pytest.approx(tr_rhs, rel=1e-12)


def test_points_outside_stratification_space_rejected():
    emb = cones.EqualRankLorentz(4, 1)
    assert not cones.in_strat_space(emb, [1.5])


def test_simplex_chart():
    t, v = 2.0, np.array([0.2, 0.5])
    x = cones.simplex_chart_forward(t, v)
    assert x.sum() == pytest.approx(t)
    t_back, v_back = cones.simplex_chart_inverse(x)
    assert t_back == pytest.approx(t) and np.allclose(v_back, v)
    assert cones.simplex_chart_jacobian(t, 3) == pytest.approx(t**2)


@pytest.mark.parametrize("alg,lam", [(jd.Rank1Product(1), 2.7), (jd.Lorentz(3), 2.2), (jd.Lorentz(5), 3.9)], ids=str)
def test_gindikin_gamma_against_quadrature(alg, lam):
    assert cones.gamma_cone(alg, lam) == pytest.approx(cones.gamma_cone_quadrature(alg, lam), rel=1e-9)


def test_gindikin_gamma_closed_form_sym():
    # Sym(2): (2 pi)^{1/2} Gamma(lam) Gamma(lam - 1/2)
    lam = 2.5
    expected = math.sqrt(2 * math.pi) * math.gamma(lam) * math.gamma(lam - 0.5)
    assert cones.gamma_cone(jd.SymMatrices(2), lam) == pytest.approx(expected)


@pytest.mark.parametrize("alg", [jd.Rank1Product(1), jd.Lorentz(3), jd.Lorentz(4)], ids=str)
def test_beta_against_quadrature(alg):
    lam1, lam2 = 2.6, 3.1
    assert cones.beta_cone(alg, lam1, lam2) == pytest.approx(cones.beta_cone_quadrature(alg, lam1, lam2), rel=1e-8)


def test_gamma_pole_raises():
    with pytest.raises(jd.JordanError):
        cones.gamma_cone(jd.Lorentz(4), 1.0)


@pytest.mark.parametrize("lams", [[1.5, 2.5], [1.2, 3.3, 2.0], [2.0, 1.1, 1.7, 3.9]])
def test_gamma_product_identity(lams):
    lhs, rhs, _ = cones.gamma_product_identity(lams)
    assert rhs == pytest.approx(lhs, rel=1e-10)


def test_gamma_product_identity_lorentz_factor():
    lhs, rhs, _ = cones.gamma_product_identity([2.5, 3.0], algebra=jd.Lorentz(3))
    assert rhs == pytest.approx(lhs, rel=1e-10)


def test_equal_rank_volume_identity():
    emb = cones.EqualRankLorentz(5, 2)
    lam = 5.3
    volume = cones.volume_strat_space(emb, lam)
    assert cones.gamma_cone(jd.Lorentz(5), lam) == pytest.approx(volume * cones.gamma_cone(jd.Lorentz(3), lam), rel=1e-8)


def test_hilbert_isometry_product_chart():
    emb = cones.DiagonalProduct(jd.Rank1Product(1), 3)
    lams = [1.5, 2.0, 2.5]
    f = lambda x: np.exp(-x.sum(axis=1)) * (1 + x[:, 0] * x[:, 2])
    chart, cone, ratio = cones.hilbert_isometry_check(emb, f, lams, 1.0)
    assert chart / cone == pytest.approx(ratio, rel=1e-9)
    assert ratio == pytest.approx(3 ** 5)


def test_hilbert_isometry_equal_rank():
    emb = cones.EqualRankLorentz(4, 1)
    f = lambda x: np.exp(-x[:, 0]) * (1 + x[:, 1] * x[:, 3])
    chart, cone, ratio = cones.hilbert_isometry_check(emb, f, 3.5, 0.5)
    assert chart / cone == pytest.approx(ratio, rel=1e-9)


def test_check_embedding():
    emb = cones.DiagonalProduct(jd.Lorentz(3), 2)
    assert cones.check_embedding(emb.inner, emb.outer, cones.embedding_matrix(emb)) == pytest.approx(2.0)
    with pytest.raises(jd.JordanError):
        cones.check_embedding(emb.inner, emb.outer, 2 * cones.embedding_matrix(emb))


def test_extension_preserves_outer_cone():
    emb = cones.EqualRankLorentz(5, 2)
    g = 1.5 * jd.lorentz_boost(3, 0.3)
    big = cones.extend_to_outer(emb, g)
    x = np.array([3.0, 0.5, 0.2, 1.0, -0.4])
    assert jd.in_cone(jd.element(emb.outer, big @ x))


def test_constructor_validation():
    with pytest.raises(jd.JordanError):
        cones.EqualRankLorentz(3, 2)
    with pytest.raises(jd.JordanError):
        cones.DiagonalProduct(jd.Lorentz(3), 1)
    with pytest.raises(jd.JordanError):
        cones.ScalarLine(jd.SymMatrices(2))
