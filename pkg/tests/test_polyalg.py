from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratcone.polyalg import MultiPoly, PowPolyFunction, euler_operator, laplacian

small_terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
    max_size=5,
)


def test_arithmetic_and_degree():
    x, y = MultiPoly.variables(2)
    p = (x + y) ** 2 - x * x - y * y
    assert p == MultiPoly(2, {(1, 1): 2})
    assert p.degree() == 2
    assert (x - x).is_zero()


def test_derivative_and_substitute():
    x, y = MultiPoly.variables(2)
    p = x**3 * y + Fraction(1, 2) * y**2
    assert p.derivative(0) == 3 * x**2 * y
    assert p.derivative(1, 2) == MultiPoly.constant(2, 1)
    swapped = p.substitute([y, x])
    assert swapped == y**3 * x + Fraction(1, 2) * x**2


def test_evaluate_matches_python(rng):
    x, y, z = MultiPoly.variables(3)
    p = x * y * z - 2 * x**2 + Fraction(3, 4)
    pts = rng.normal(size=(7, 3))
    expected = pts[:, 0] * pts[:, 1] * pts[:, 2] - 2 * pts[:, 0] ** 2 + 0.75
    assert np.allclose(p.evaluate(pts), expected, rtol=0, atol=1e-14)


def test_json_round_trip_is_canonical():
    x, y = MultiPoly.variables(2)
    p = x**2 - Fraction(2, 3) * y + 1
    assert MultiPoly.from_json(p.to_json()) == p
    assert p.to_json() == (1 + x**2 - Fraction(2, 3) * y).to_json()


def test_laplacian_and_euler_of_harmonic():
    x, y = MultiPoly.variables(2)
    harmonic = x**3 - 3 * x * y**2
    assert laplacian(harmonic).is_zero()
    assert euler_operator(harmonic) == 3 * harmonic


def test_pow_poly_derivative_product_rule():
    x, y = MultiPoly.variables(2)
    base = x * x - y * y
    f = PowPolyFunction(base, {Fraction(1, 2): x + y})
    df = f.derivative(0)
    pt = np.array([2.0, 0.5])
    h = 1e-6
    numeric = (f.evaluate(pt + [h, 0]) - f.evaluate(pt - [h, 0])) / (2 * h)
    assert df.evaluate(pt) == pytest.approx(numeric, rel=1e-8)


def test_pow_poly_merges_integer_shifts():
    x, y = MultiPoly.variables(2)
    base = x + y
    merged = PowPolyFunction(base, {Fraction(1, 3): x, Fraction(4, 3): MultiPoly.constant(2, 1)})
    assert list(merged.parts) == [Fraction(1, 3)]
    assert merged.parts[Fraction(1, 3)] == 2 * x + y


@settings(max_examples=40, deadline=None)
@given(small_terms, small_terms, small_terms)
def test_ring_axioms(a, b, c):
    pa, pb, pc = MultiPoly(2, a), MultiPoly(2, b), MultiPoly(2, c)
    assert pa * (pb + pc) == pa * pb + pa * pc
    assert (pa * pb) * pc == pa * (pb * pc)
    assert (pa * pb).derivative(0) == pa.derivative(0) * pb + pa * pb.derivative(0)


def test_rejects_bad_exponents():
    with pytest.raises(ValueError):
        MultiPoly(2, {(1,): 1})
    with pytest.raises(ValueError):
        MultiPoly(1, {(-1,): 1})
