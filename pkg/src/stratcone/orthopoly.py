"""Orthogonal polynomials and hypergeometric series.

Conventions:

* Jacobi P_n^{(a,b)} is orthogonal for (1-t)^a (1+t)^b on (-1, 1).
* Gegenbauer C_n^alpha = (2 alpha)_n / (alpha + 1/2)_n * P_n^{(alpha-1/2, alpha-1/2)}.
* The inflated Gegenbauer polynomial in variables (x, y) is x^{l/2} C_l^alpha(y / x^{1/2}).
* Simplex D_n weight: (1-|v|)^{lam_{n+1}-1} prod v_i^{lam_i-1}.
* Ball weight d mu_alpha = 2^{-p/2} (1-|v|^2)^{alpha-1/2} dv.

Polynomial constructors return exact ``MultiPoly`` objects when parameters are rational.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np

from .polyalg import MultiPoly, as_fraction, laplacian
from .quadrature import check_oscillation, gauss_jacobi_rule, integrate

__all__ = [
    "WeightSpec",
    "HypergeometricError",
    "pochhammer",
    "hyper_pfq",
    "kummer_1f1",
    "conf_0f1",
    "jacobi_poly",
    "jacobi_norm2",
    "gegenbauer",
    "gegenbauer_norm2",
    "homogenize",
    "multi_indices",
    "simplex_basis",
    "simplex_basis_dunklxu",
    "ball_basis",
    "ball_mixed_basis",
    "harmonic_basis",
    "harmonic_dim",
    "harmonic_kernel",
    "inflated_gegenbauer",
    "juhl_coefficients",
    "juhl_symbol",
    "rankin_cohen_coefficients",
    "kummer_integral_pair",
    "gegenbauer_fourier_pair",
    "simplex_factorization_residual",
    "ball_factorization_residual",
]


class HypergeometricError(ValueError):
    """Parameter pole or a divergent series."""


@dataclass(frozen=True)
class WeightSpec:
    domain: str
    params: tuple

    def __post_init__(self):
        if self.domain == "interval":
            a, b = self.params
            if a <= -1 or b <= -1:
                raise ValueError("interval weight needs alpha, beta > -1")
        elif self.domain == "simplex":
            if any(x <= 0 for x in self.params):
                raise ValueError("simplex weight needs positive parameters")
        elif self.domain == "ball":
            alpha, p = self.params
            if alpha <= -0.5 or p < 1:
                raise ValueError("ball weight needs alpha > -1/2 and p >= 1")
        else:
            raise ValueError(f"unknown weight domain {self.domain!r}")


# hypergeometric series

def _exact(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def pochhammer(a, n: int):
    """Rising factorial (a)_n; exact for rational ``a``."""
    if n < 0:
        raise ValueError("pochhammer index must be non-negative")
    result = Fraction(1) if _exact(a) else 1.0
    for j in range(n):
        result *= a + j
    return result


def _nonpositive_integer(value) -> bool:
    if isinstance(value, complex):
        if value.imag != 0:
            return False
        value = value.real
    return float(value) <= 0 and float(value) == int(float(value))


def hyper_pfq(a: Sequence, b: Sequence, z, tol: float = 1e-15, max_terms: int = 20000):
    """Generalized hypergeometric series pFq(a; b; z).

    Forward summation with a ratio-based tail bound. When the partial sums show heavy
    cancellation (largest term much larger than the sum), the value is recomputed with
    mpmath at a working precision that covers the lost digits.
    """
    a = list(a)
    b = list(b)
    for bj in b:
        if _nonpositive_integer(bj):
            raise HypergeometricError(f"lower parameter {bj} is a non-positive integer")
    terminating = any(_nonpositive_integer(aj) for aj in a)
    if z == 0:
        return 1.0
    if not terminating:
        if len(a) > len(b) + 1:
            raise HypergeometricError("series diverges for p > q + 1")
        if len(a) == len(b) + 1 and abs(z) >= 1:
            raise HypergeometricError("series does not converge for |z| >= 1 when p = q + 1")
    z = complex(z) if isinstance(z, complex) else float(z)
    term = 1.0 + 0j if isinstance(z, complex) else 1.0
    total = term
    biggest = 1.0
    for k in range(max_terms):
        num = 1.0
        for aj in a:
            num *= aj + k
        den = float(k + 1)
        for bj in b:
            den *= bj + k
        ratio = num / den * z
        term = term * ratio
        if term == 0:
            break
        total = total + term
        biggest = max(biggest, abs(term))
        # tail bound once the term ratio settles below one
        nxt = 1.0
        for aj in a:
            nxt *= abs(aj + k + 1)
        d2 = float(k + 2)
        for bj in b:
            d2 *= abs(bj + k + 1)
        r = nxt / d2 * abs(z)
        if r < 1 and abs(term) * r / (1 - r) <= tol * abs(total):
            break
    else:
        raise HypergeometricError("series did not converge within the term budget")
    scale = abs(total)
    if scale == 0 or biggest / scale > 1e3:
        lost_bits = int(math.log2(biggest / max(scale, 1e-300))) + 1 if scale else 200
        with mpmath.workprec(80 + lost_bits):
            value = mpmath.hyper(a, b, z)
        return complex(value) if isinstance(z, complex) else float(value)
    return total


def kummer_1f1(a, b, z, tol: float = 1e-15):
    return hyper_pfq([a], [b], z, tol)


def conf_0f1(b, z, tol: float = 1e-15):
    return hyper_pfq([], [b], z, tol)


# classical one-variable families

def _binom_general(x, k: int):
    """Generalized binomial coefficient C(x, k) for rational/real x."""
    out = Fraction(1) if _exact(x) else 1.0
    for j in range(k):
        out = out * (x - j) / (j + 1)
    return out


@lru_cache(maxsize=4096)
def _jacobi_coeffs(n: int, a, b) -> tuple:
    t = MultiPoly.variable(1, 0)
    one = MultiPoly.constant(1, 1)
    total = MultiPoly.zero(1)
    for s in range(n + 1):
        c = _binom_general(a + n, n - s) * _binom_general(b + n, s)
        total = total + (t - one) ** s * (t + one) ** (n - s) * c
    total = total / 2**n
    return tuple(total.coefficient((j,)) for j in range(n + 1))


def jacobi_poly(n: int, alpha, beta) -> MultiPoly:
    """Jacobi polynomial P_n^{(alpha, beta)} as an exact one-variable polynomial."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    a, b = as_fraction(alpha), as_fraction(beta)
    return MultiPoly.from_univariate(_jacobi_coeffs(n, a, b))


def jacobi_norm2(n: int, alpha: float, beta: float) -> float:
    """Squared norm of P_n^{(alpha,beta)} for (1-t)^alpha (1+t)^beta on (-1, 1)."""
    a, b = float(alpha), float(beta)
    if n == 0:
        return math.exp((a + b + 1) * math.log(2) + math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2))
    return math.exp(
        (a + b + 1) * math.log(2) + math.lgamma(n + a + 1) + math.lgamma(n + b + 1)
        - math.lgamma(n + 1) - math.lgamma(n + a + b + 1)
    ) / (2 * n + a + b + 1)


def gegenbauer(n: int, alpha) -> MultiPoly:
    """Gegenbauer polynomial C_n^alpha, obtained from the Jacobi family."""
    al = as_fraction(alpha)
    if al == 0 or (al + Fraction(1, 2) <= 0 and (al + Fraction(1, 2)).denominator == 1 and -(al + Fraction(1, 2)) < n):
        raise ValueError("Gegenbauer normalization is singular at this alpha")
    factor = pochhammer(2 * al, n) / pochhammer(al + Fraction(1, 2), n)
    return jacobi_poly(n, al - Fraction(1, 2), al - Fraction(1, 2)).scale(factor)


def gegenbauer_norm2(n: int, alpha: float) -> float:
    """Squared norm of C_n^alpha for (1-t^2)^{alpha-1/2} on (-1, 1)."""
    al = float(alpha)
    return math.pi * 2 ** (1 - 2 * al) * math.exp(math.lgamma(2 * al + n) - math.lgamma(n + 1) - 2 * math.lgamma(al)) / (n + al)


def homogenize(univariate: MultiPoly, numerator: MultiPoly, denominator: MultiPoly, degree: int) -> MultiPoly:
    """denominator^degree * p(numerator / denominator) for a one-variable p of degree <= degree."""
    out = MultiPoly.zero(numerator.nvars)
    for j in range(degree + 1):
        c = univariate.coefficient((j,))
        if c:
            out = out + numerator ** j * denominator ** (degree - j) * c
    return out


def multi_indices(length: int, total: int) -> list[tuple[int, ...]]:
    """All k in N^length with |k| = total, in lexicographic order."""
    if length == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total, -1, -1):
        for rest in multi_indices(length - 1, total - first):
            out.append((first,) + rest)
    return sorted(out)


# simplex families

def simplex_basis(n: int, lams: Sequence, k: Sequence[int]) -> MultiPoly:
    """The family R_k^Lambda on D_n: nested sums |x^{(i)}| with homogenized Jacobi factors.

    ``lams`` has n+1 entries, ``k`` has n entries.
    """
    lams = [as_fraction(x) for x in lams]
    k = list(k)
    if len(lams) != n + 1 or len(k) != n:
        raise ValueError("need n+1 weight parameters and an n-index")
    xs = MultiPoly.variables(n)
    one = MultiPoly.constant(n, 1)
    partial = [MultiPoly.zero(n)]
    for x in xs:
        partial.append(partial[-1] + x)

    def alpha(i: int) -> Fraction:
        # alpha_i = |Lambda^{(i)}| + 2 |k^{(i-1)}|, 1-based i
        return sum(lams[:i], Fraction(0)) + 2 * sum(k[: i - 1])

    result = jacobi_poly(k[n - 1], lams[n] - 1, alpha(n) - 1).substitute([partial[n] * 2 - one])
    for i in range(1, n):
        jac = jacobi_poly(k[i - 1], lams[i] - 1, alpha(i) - 1)
        num = partial[i] - xs[i]
        den = partial[i] + xs[i]
        result = result * homogenize(jac, num, den, k[i - 1])
    return result


def simplex_basis_dunklxu(n: int, lams: Sequence, k: Sequence[int]) -> MultiPoly:
    """A second orthogonal family on D_n, peeling off x_1 first.

    Q_k(x) = P_{k_1}^{(a, lam_1 - 1)}(2 x_1 - 1) (1 - x_1)^{|k'|} Q'_{k'}(x' / (1 - x_1)),
    with a = lam_2 + ... + lam_{n+1} - 1 + 2|k'| and Q' the same family on D_{n-1}
    for the parameters (lam_2, ..., lam_{n+1}).
    """
    lams = [as_fraction(x) for x in lams]
    k = list(k)
    if len(lams) != n + 1 or len(k) != n:
        raise ValueError("need n+1 weight parameters and an n-index")
    one = MultiPoly.constant(n, 1)
    x1 = MultiPoly.variable(n, 0)
    if n == 1:
        return jacobi_poly(k[0], lams[1] - 1, lams[0] - 1).substitute([x1 * 2 - one])
    tail = sum(k[1:])
    a = sum(lams[1:], Fraction(0)) - 1 + 2 * tail
    head = jacobi_poly(k[0], a, lams[0] - 1).substitute([x1 * 2 - one])
    inner = simplex_basis_dunklxu(n - 1, lams[1:], k[1:])
    # homogenize the inner polynomial with respect to (1 - x_1)
    rest = MultiPoly.zero(n)
    shrink = one - x1
    for exps, c in inner.terms.items():
        deg = sum(exps)
        rest = rest + MultiPoly(n, {(0,) + exps: c}) * shrink ** (tail - deg)
    return head * rest


# ball families

def inflated_gegenbauer(l: int, alpha) -> MultiPoly:
    """I_l C_l^alpha(x, y) = x^{l/2} C_l^alpha(y / sqrt(x)), a polynomial in (x, y)."""
    geg = gegenbauer(l, alpha)
    terms = {}
    for (m,), c in geg.terms.items():
        if (l - m) % 2:
            raise ArithmeticError("Gegenbauer parity violated")
        terms[((l - m) // 2, m)] = c
    return MultiPoly(2, terms)


def ball_basis(p: int, alpha, k: Sequence[int]) -> MultiPoly:
    """Orthogonal basis element P_k^alpha on the unit ball of R^p for d mu_alpha."""
    al = as_fraction(alpha)
    k = list(k)
    if len(k) != p:
        raise ValueError("multi-index length must equal p")
    vs = MultiPoly.variables(p)
    one = MultiPoly.constant(p, 1)
    result = one
    radius = one  # 1 - |v^{(j-1)}|^2
    for j in range(1, p + 1):
        tail = sum(k[j:])
        param = al + tail + Fraction(p - j, 2)
        infl = inflated_gegenbauer(k[j - 1], param)
        result = result * infl.substitute([radius, vs[j - 1]])
        radius = radius - vs[j - 1] * vs[j - 1]
    return result


def harmonic_dim(p: int, degree: int) -> int:
    if degree < 0:
        return 0
    total = math.comb(degree + p - 1, p - 1)
    if degree >= 2:
        total -= math.comb(degree + p - 3, p - 1)
    return total


def _monomials(p: int, degree: int) -> list[tuple[int, ...]]:
    return sorted(multi_indices(p, degree))


@lru_cache(maxsize=256)
def _harmonic_basis_cached(p: int, degree: int) -> tuple:
    cols = _monomials(p, degree)
    rows = _monomials(p, degree - 2) if degree >= 2 else []
    row_index = {r: i for i, r in enumerate(rows)}
    matrix = [[Fraction(0)] * len(cols) for _ in rows]
    for j, exps in enumerate(cols):
        lap = laplacian(MultiPoly(p, {exps: 1}))
        for e, c in lap.terms.items():
            matrix[row_index[e]][j] += c
    pivots = _rref(matrix)
    pivot_of_col = {col: row for row, col in enumerate(pivots)}
    basis = []
    for j, exps in enumerate(cols):
        if j in pivot_of_col:
            continue
        terms = {exps: Fraction(1)}
        for col, row in pivot_of_col.items():
            val = matrix[row][j]
            if val:
                terms[cols[col]] = -val
        basis.append(MultiPoly(p, terms))
    return tuple(basis)


def _rref(matrix: list[list[Fraction]]) -> list[int]:
    """In-place reduced row echelon form; returns the pivot column of each nonzero row."""
    pivots = []
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    row = 0
    for col in range(ncols):
        pick = next((r for r in range(row, nrows) if matrix[r][col]), None)
        if pick is None:
            continue
        matrix[row], matrix[pick] = matrix[pick], matrix[row]
        inv = 1 / matrix[row][col]
        matrix[row] = [v * inv for v in matrix[row]]
        for r in range(nrows):
            if r != row and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    del matrix[row:]
    return pivots


def harmonic_basis(p: int, degree: int) -> list[MultiPoly]:
    """Basis of harmonic homogeneous polynomials of the given degree in p variables.

    Element i has leading monomial equal to the i-th free column of the Laplacian
    matrix (columns in ascending graded lexicographic order), with coefficient 1.
    """
    if p < 2:
        raise ValueError("harmonic basis needs p >= 2")
    if degree < 0:
        return []
    return list(_harmonic_basis_cached(p, degree))


def harmonic_kernel(p: int, degree: int, x, y) -> float:
    """Reproducing kernel of degree-n harmonics for the normalized sphere measure.

    K_n(x, y) = (2n+p-2)/(p-2) |x|^n |y|^n C_n^{(p-2)/2}(<x,y> / |x||y|).
    """
    if p < 3:
        raise ValueError("the kernel formula needs p >= 3")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    infl = inflated_gegenbauer(degree, Fraction(p - 2, 2))
    norms = np.sum(x * x, axis=-1) * np.sum(y * y, axis=-1)
    dots = np.sum(x * y, axis=-1)
    pts = np.stack(np.broadcast_arrays(norms, dots), axis=-1)
    values = infl.evaluate(pts.reshape(-1, 2)).reshape(pts.shape[:-1])
    values = (2 * degree + p - 2) / (p - 2) * values
    return float(values) if values.ndim == 0 else values


def ball_mixed_basis(p: int, lam, n: int, l: int, j: int, kappa: int) -> MultiPoly:
    """P_{j,kappa}(v) = P_j^{(lam - n/2, l-2j+(p-2)/2)}(2|v|^2 - 1) Y_kappa(v).

    Y_kappa is the kappa-th element of ``harmonic_basis(p, l - 2j)``.
    """
    if p < 2:
        raise ValueError("mixed basis needs p >= 2")
    if not 0 <= 2 * j <= l:
        raise ValueError("need 0 <= 2j <= l")
    harmonics = harmonic_basis(p, l - 2 * j)
    if not 0 <= kappa < len(harmonics):
        raise IndexError("harmonic index out of range")
    lam = as_fraction(lam)
    radial = jacobi_poly(j, lam - Fraction(n, 2), Fraction(l - 2 * j) + Fraction(p - 2, 2))
    vs = MultiPoly.variables(p)
    norm2 = sum((v * v for v in vs), MultiPoly.zero(p))
    return radial.substitute([norm2 * 2 - MultiPoly.constant(p, 1)]) * harmonics[kappa]


# Juhl and Rankin-Cohen

def juhl_coefficients(l: int, alpha) -> list[Fraction]:
    """a_k(l, alpha) = (-1)^k 2^{l-2k} Gamma(alpha+l-k) / (Gamma(alpha) k! (l-2k)!), k = 0..l//2."""
    al = as_fraction(alpha)
    if al <= 0 and al.denominator == 1:
        raise ValueError("Gamma(alpha) has a pole at this alpha")
    return [
        Fraction((-1) ** k * 2 ** (l - 2 * k)) * pochhammer(al, l - k) / (math.factorial(k) * math.factorial(l - 2 * k))
        for k in range(l // 2 + 1)
    ]


def juhl_symbol(l: int, alpha) -> MultiPoly:
    """sum_k a_k y^{l-2k} q^k in variables (q, y)."""
    return MultiPoly(2, {(k, l - 2 * k): a for k, a in enumerate(juhl_coefficients(l, alpha))})


def rankin_cohen_coefficients(lam1, lam2, l: int) -> list:
    """(-1)^j (lam1 + l - j)_j (lam2 + j)_{l-j} / (j! (l-j)!), j = 0..l."""
    return [
        (-1) ** j * pochhammer(lam1 + l - j, j) * pochhammer(lam2 + j, l - j)
        / (math.factorial(j) * math.factorial(l - j))
        for j in range(l + 1)
    ]


# integral representations

def kummer_integral_pair(alpha: float, beta: float, l: int, x: float, npts: int = 60):
    """Both sides of the Jacobi-Fourier integral representation of Kummer's function.

    lhs = C x^l e^{ix} 1F1(alpha+l; alpha+beta+2l; -2ix),
          C = 2^{alpha+beta+l-1} i^l / l! * B(alpha+l, beta+l);
    rhs = int_{-1}^{1} P_l^{(alpha-1, beta-1)}(v) e^{ivx} (1-v)^{alpha-1} (1+v)^{beta-1} dv.
    """
    if alpha <= 0 or beta <= 0:
        raise ValueError("need alpha, beta > 0")
    check_oscillation(x, npts)
    const = math.exp(
        (alpha + beta + l - 1) * math.log(2) - math.lgamma(l + 1)
        + math.lgamma(alpha + l) + math.lgamma(beta + l) - math.lgamma(alpha + beta + 2 * l)
    ) * (1j) ** l
    lhs = const * x**l * cmath.exp(1j * x) * kummer_1f1(alpha + l, alpha + beta + 2 * l, complex(0, -2 * x))
    rule = gauss_jacobi_rule(npts, alpha - 1, beta - 1)
    jac = _float_poly(l, alpha - 1, beta - 1)
    rhs = integrate(lambda v: np.polyval(jac, v) * np.exp(1j * v * x), rule)
    return complex(lhs), complex(rhs)


def gegenbauer_fourier_pair(nu: float, l: int, x: float, npts: int = 60):
    """Both sides of the Fourier transform of a Gegenbauer-weighted polynomial.

    lhs = int_{-1}^{1} C_l^nu(v) (1-v^2)^{nu-1/2} e^{ixv} dv;
    rhs = c(l; nu) x^l 0F1(l+nu+1; -x^2/4),
          c(l; nu) = i^l sqrt(pi) (2nu)_l Gamma(nu+1/2) / (2^l l! Gamma(l+nu+1)).
    """
    if nu <= 0.5:
        raise ValueError("need nu > 1/2")
    check_oscillation(x, npts)
    rule = gauss_jacobi_rule(npts, nu - 0.5, nu - 0.5)
    coeffs = _float_poly(l, nu - 0.5, nu - 0.5) * (pochhammer(2 * nu, l) / pochhammer(nu + 0.5, l))
    lhs = integrate(lambda v: np.polyval(coeffs, v) * np.exp(1j * v * x), rule)
    c = (1j) ** l * math.sqrt(math.pi) * pochhammer(2 * nu, l) * math.exp(
        math.lgamma(nu + 0.5) - l * math.log(2) - math.lgamma(l + 1) - math.lgamma(l + nu + 1)
    )
    rhs = c * x**l * conf_0f1(l + nu + 1, -x * x / 4)
    return complex(lhs), complex(rhs)


def _float_poly(n: int, a: float, b: float) -> np.ndarray:
    """Float Jacobi coefficients (highest degree first, numpy.polyval order)."""
    coeffs = [_binom_general(float(a) + n, n - s) * _binom_general(float(b) + n, s) for s in range(n + 1)]
    poly = np.zeros(1)
    for s, c in enumerate(coeffs):
        term = np.polymul([c], _binomial_power([1.0, -1.0], s))
        term = np.polymul(term, _binomial_power([1.0, 1.0], n - s))
        poly = np.polyadd(poly, term)
    return poly / 2**n


def _binomial_power(base: list, power: int) -> np.ndarray:
    out = np.array([1.0])
    for _ in range(power):
        out = np.polymul(out, base)
    return out


# factorization identities under the splitting maps

def simplex_factorization_residual(n: int, lams: Sequence, k: Sequence[int]) -> MultiPoly:
    """R_k^Lambda(phi(y, u)) - R_{k'}^{Lambda'}(y) P_{k_1}^{(lam_2-1, lam_1-1)}(u) y_1^{k_1}.

    phi(y, u) = (y_1(1+u)/2, y_1(1-u)/2, y_2, ..., y_{n-1}); variables are (y_1..y_{n-1}, u),
    Lambda' = (lam_1+lam_2+2k_1, lam_3, ...), k' = (k_2, ...). Zero when the identity holds.
    """
    if n < 2:
        raise ValueError("the splitting map needs n >= 2")
    lams = [as_fraction(x) for x in lams]
    k = list(k)
    zs = MultiPoly.variables(n)
    ys, u = zs[: n - 1], zs[n - 1]
    one = MultiPoly.constant(n, 1)
    half = Fraction(1, 2)
    phi = [(ys[0] * (one + u)).scale(half), (ys[0] * (one - u)).scale(half)] + ys[1:]
    lhs = simplex_basis(n, lams, k).substitute(phi)
    reduced = simplex_basis(n - 1, [lams[0] + lams[1] + 2 * k[0]] + lams[2:], k[1:])
    reduced = reduced.embed(n, list(range(n - 1)))
    factor = jacobi_poly(k[0], lams[1] - 1, lams[0] - 1).embed(n, [n - 1])
    return lhs - reduced * factor * ys[0] ** k[0]


def _reduce_radical(poly: MultiPoly, s_index: int, square: MultiPoly) -> MultiPoly:
    """Normal form modulo s^2 = square: every s^(2a+b) becomes square^a s^b with b in {0, 1}."""
    out = MultiPoly.zero(poly.nvars)
    for exps, c in poly.terms.items():
        e = exps[s_index]
        rest = list(exps)
        rest[s_index] = e % 2
        out = out + MultiPoly(poly.nvars, {tuple(rest): c}) * square ** (e // 2)
    return out


def ball_factorization_residual(p: int, alpha, k: Sequence[int]) -> MultiPoly:
    """P_k^alpha(theta(x, u)) - P_{k'}^{alpha'}(x) (1-|x|^2)^{k_p/2} C_{k_p}^alpha(u).

    theta(x, u) = (x, (1-|x|^2)^{1/2} u) with alpha' = alpha + k_p + 1/2 and k' = (k_1..k_{p-1}).
    The square root is a formal variable s reduced modulo s^2 = 1-|x|^2; variables are
    (x_1..x_{p-1}, u, s).
    """
    if p < 2:
        raise ValueError("the splitting map needs p >= 2")
    al = as_fraction(alpha)
    k = list(k)
    nv = p + 1
    zs = MultiPoly.variables(nv)
    xs, u, s = zs[: p - 1], zs[p - 1], zs[p]
    square = MultiPoly.constant(nv, 1) - sum((x * x for x in xs), MultiPoly.zero(nv))
    lhs = ball_basis(p, al, k).substitute(xs + [s * u])
    inner = ball_basis(p - 1, al + k[-1] + Fraction(1, 2), k[:-1]).embed(nv, list(range(p - 1)))
    rhs = inner * s ** k[-1] * gegenbauer(k[-1], al).embed(nv, [p - 1])
    return _reduce_radical(lhs, p, square) - _reduce_radical(rhs, p, square)
