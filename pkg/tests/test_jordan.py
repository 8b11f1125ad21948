import math

import numpy as np
import pytest

from stratcone import jordan as jd

ALGEBRAS = [jd.Rank1Product(3), jd.Lorentz(3), jd.Lorentz(5), jd.SymMatrices(2), jd.SymMatrices(3),
            jd.DirectSum(jd.Lorentz(3), jd.Rank1Product(1))]


def el(alg, coords):
    return jd.element(alg, coords)


def test_lorentz_product_example():
    alg = jd.Lorentz(3)
    prod = jd.product(el(alg, [2, 1, 0]), el(alg, [3, 0, 1]))
    assert prod.coords.tolist() == pytest.approx([6, 3, 2])


def test_sym_product_is_symmetrized_matrix_product(rng):
    alg = jd.SymMatrices(3)
    a = rng.normal(size=(3, 3)); a = a + a.T
    b = rng.normal(size=(3, 3)); b = b + b.T
    prod = jd.product(el(alg, jd.sym_pack(a)), el(alg, jd.sym_pack(b)))
    assert np.allclose(jd.sym_unpack(prod.coords, 3), (a @ b + b @ a) / 2)


def test_sym_packing_makes_trace_form_euclidean(rng):
    a = rng.normal(size=(3, 3)); a = a + a.T
    b = rng.normal(size=(3, 3)); b = b + b.T
    alg = jd.SymMatrices(3)
    assert jd.inner(el(alg, jd.sym_pack(a)), el(alg, jd.sym_pack(b))) == pytest.approx(np.trace(a @ b))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=str)
def test_identity_and_jordan_identity(alg, rng):
    e = jd.identity(alg)
    x = el(alg, rng.normal(size=alg.n))
    y = el(alg, rng.normal(size=alg.n))
    assert np.allclose(jd.product(e, x).coords, x.coords)
    x2 = jd.product(x, x)
    lhs = jd.product(jd.product(x, y), x2)
    rhs = jd.product(x, jd.product(y, x2))
    assert np.allclose(lhs.coords, rhs.coords)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=str)
def test_trace_form_is_associative(alg, rng):
    x, y, z = (el(alg, rng.normal(size=alg.n)) for _ in range(3))
    assert jd.inner(jd.product(x, y), z) == pytest.approx(jd.inner(x, jd.product(y, z)))


@pytest.mark.parametrize("alg", [a for a in ALGEBRAS if a.is_simple], ids=str)
def test_determinant_of_quadratic_representation(alg, rng):
    x = jd.random_cone_point(alg, rng)
    power = 2 * alg.n / alg.r
    assert np.linalg.det(jd.quad_rep(el(alg, x))) == pytest.approx(jd.det(el(alg, x)) ** power, rel=1e-10)


def test_sym_determinant_is_matrix_determinant(rng):
    a = rng.normal(size=(3, 3)); a = a @ a.T + np.eye(3)
    assert jd.det(el(jd.SymMatrices(3), jd.sym_pack(a))) == pytest.approx(np.linalg.det(a))


def test_lorentz_det_trace_and_inverse():
    alg = jd.Lorentz(4)
    x = el(alg, [3.0, 1.0, -0.5, 0.25])
    assert jd.det(x) == pytest.approx(9 - 1 - 0.25 - 0.0625)
    assert jd.trace(x) == pytest.approx(6.0)
    inv = jd.inverse(x)
    assert np.allclose(jd.product(x, inv).coords, jd.identity(alg).coords)


def test_spectral_decomposition_lorentz():
    alg = jd.Lorentz(3)
    x = el(alg, [3.0, 1.0, 1.0])
    (l1, l2), c1, c2 = jd.spectral_rank2(x)
    assert l1 == pytest.approx(3 + math.sqrt(2)) and l2 == pytest.approx(3 - math.sqrt(2))
    assert np.allclose((l1 * c1 + l2 * c2).coords, x.coords)
    assert np.allclose(jd.product(c1, c1).coords, c1.coords)
    assert np.allclose(jd.product(c1, c2).coords, 0)


@pytest.mark.parametrize("alg", [jd.Lorentz(4), jd.SymMatrices(3), jd.Rank1Product(2)], ids=str)
def test_sqrt_and_power(alg, rng):
    x = el(alg, jd.random_cone_point(alg, rng))
    root = jd.sqrt(x)
    assert np.allclose(jd.product(root, root).coords, x.coords)
    assert np.allclose(jd.power(x, -1).coords, jd.inverse(x).coords)


def test_cone_membership():
    alg = jd.Lorentz(3)
    assert jd.in_cone(el(alg, [2, 1, 1]))
    assert not jd.in_cone(el(alg, [1, 1, 1]))
    with pytest.raises(jd.JordanError):
        jd.sqrt(el(alg, [1, 2, 0]))


def test_algebra_mismatch_raises():
    with pytest.raises(jd.JordanError):
        jd.product(jd.identity(jd.Lorentz(3)), jd.identity(jd.Lorentz(4)))
    with pytest.raises(jd.JordanError):
        jd.Lorentz(1)


def test_boost_preserves_quadratic_form():
    g = jd.lorentz_boost(4, 0.7, 2)
    x = np.array([3.0, 1.0, 0.5, -1.0])
    q = lambda z: z[0] ** 2 - z[1:] @ z[1:]
    assert q(g @ x) == pytest.approx(q(x))


def test_polar_decomposition_of_boost():
    alg = jd.Lorentz(3)
    g = 2.0 * jd.lorentz_boost(3, 0.4)
    x, k = jd.polar_decompose(g, alg)
    assert np.allclose(jd.quad_rep(x) @ k, g)
    assert np.allclose(k @ jd.identity(alg).coords, jd.identity(alg).coords)


def test_exact_structure_constants_match_numeric_product():
    alg = jd.Lorentz(4)
    table = jd.structure_constants(alg)
    eye = np.eye(alg.n)
    for a in range(alg.n):
        for b in range(alg.n):
            numeric = jd.product(el(alg, eye[a]), el(alg, eye[b])).coords
            assert np.allclose([float(c) for c in table[a][b]], numeric)


def test_polarized_quadratic_representation(rng):
    alg = jd.SymMatrices(2)
    x = el(alg, rng.normal(size=3))
    y = el(alg, rng.normal(size=3))
    assert np.allclose(jd.quad_rep_polarized(x, x), jd.quad_rep(x))
    expected = jd.quad_rep(x + y) - jd.quad_rep(x) - jd.quad_rep(y)
    assert np.allclose(jd.quad_rep_polarized(x, y), expected / 2)
