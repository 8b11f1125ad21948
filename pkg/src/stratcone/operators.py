"""Bessel operators and the stratified operator identities, in exact arithmetic.

The Bessel operator of a Euclidean Jordan algebra is B_lam f = P(grad) x + lam grad f, the
gradient taken for the trace form. Acting on ``PowPolyFunction`` objects (determinant
power times polynomial) it stays in closed form, so every identity below is checked as
an equality of exact rational expressions.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.special import gamma as gamma_fn
from scipy.special import jv

from . import jordan as jd
from .jordan import AlgebraDescriptor
from .orthopoly import ball_basis, multi_indices, simplex_basis
from .polyalg import MultiPoly, PowPolyFunction, as_fraction
from .quadrature import ResolutionWarning, gauss_jacobi_rule

__all__ = [
    "DiffOperatorSpec",
    "bessel_apply",
    "jordan_bessel",
    "jordan_adjugate",
    "bessel_shift_identity_check",
    "strat_bessel_tensor",
    "strat_bessel_tensor_pullback",
    "strat_bessel_tensor_fd",
    "strat_bessel_lorentz",
    "strat_bessel_lorentz_pullback",
    "strat_bessel_lorentz_fd",
    "simplex_pde_apply",
    "simplex_eigencheck",
    "simplex_residuals",
    "ball_pde_apply",
    "ball_eigencheck",
    "ball_residuals",
    "lorentz_ball_operator",
    "lie_action",
    "hankel_rank1",
    "hankel_involution_defect",
]


@dataclass(frozen=True)
class DiffOperatorSpec:
    family: str
    params: tuple

    FAMILIES = (
        "BesselRank1", "BesselLorentz", "BesselTensorSum", "SimplexPDE",
        "BallPDE", "StratBesselTensor", "StratBesselLorentz",
    )

    def __post_init__(self):
        if self.family not in self.FAMILIES:
            raise ValueError(f"unknown operator family {self.family!r}")

    @classmethod
    def bessel_rank1(cls, lam):
        return cls("BesselRank1", (as_fraction(lam),))

    @classmethod
    def bessel_lorentz(cls, lam, n: int):
        return cls("BesselLorentz", (as_fraction(lam), n))

    @classmethod
    def bessel_tensor_sum(cls, lams):
        return cls("BesselTensorSum", tuple(as_fraction(x) for x in lams))

    @classmethod
    def simplex_pde(cls, lams):
        return cls("SimplexPDE", tuple(as_fraction(x) for x in lams))

    @classmethod
    def ball_pde(cls, alpha, p: int):
        return cls("BallPDE", (as_fraction(alpha), p))

    @classmethod
    def strat_bessel_tensor(cls, lams):
        return cls("StratBesselTensor", tuple(as_fraction(x) for x in lams))

    @classmethod
    def strat_bessel_lorentz(cls, lam, n: int, p: int):
        return cls("StratBesselLorentz", (as_fraction(lam), n, p))


# exact Jordan data

@lru_cache(maxsize=64)
def _polarized_linear(algebra: AlgebraDescriptor, nvars: int) -> tuple:
    """Linear polynomials M[a][b][c] = (P(e_a, e_b) x)_c in the first algebra.n variables."""
    consts = jd.structure_constants(algebra)
    n = algebra.n
    lmaps = [[[consts[a][d][c] for d in range(n)] for c in range(n)] for a in range(n)]

    def matmul(x, y):
        return [[sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    xs = MultiPoly.variables(nvars)
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            prod_ab = [consts[a][b][c] for c in range(n)]
            l_ab = [[sum(prod_ab[e] * lmaps[e][c][d] for e in range(n)) for d in range(n)] for c in range(n)]
            ab = matmul(lmaps[a], lmaps[b])
            ba = matmul(lmaps[b], lmaps[a])
            mat = [[ab[c][d] + ba[c][d] - l_ab[c][d] for d in range(n)] for c in range(n)]
            comps = []
            for c in range(n):
                poly = MultiPoly.zero(nvars)
                for d in range(n):
                    if mat[c][d]:
                        poly = poly + xs[d].scale(mat[c][d])
                comps.append(poly)
            row.append(tuple(comps))
        table.append(tuple(row))
    return tuple(table)


def jordan_adjugate(algebra: AlgebraDescriptor, nvars: int | None = None) -> tuple[MultiPoly, list[MultiPoly]]:
    """(Delta, N) with x^{-1} = N(x) / Delta(x), as exact polynomials in the coordinates."""
    nvars = algebra.n if nvars is None else nvars
    xs = MultiPoly.variables(nvars)
    dets, adjs = [], []
    for part, off in zip(algebra.parts, algebra.offsets):
        if part.kind == "rank1":
            dets.append(xs[off])
            adjs.append([MultiPoly.constant(nvars, 1)])
        elif part.kind == "lorentz":
            q = xs[off] * xs[off]
            for i in range(1, part.n):
                q = q - xs[off + i] * xs[off + i]
            dets.append(q)
            adjs.append([xs[off]] + [-xs[off + i] for i in range(1, part.n)])
        else:
            raise jd.JordanError("exact adjugate unavailable for Sym(n)")
    delta = MultiPoly.constant(nvars, 1)
    for d in dets:
        delta = delta * d
    comps = []
    for k, block in enumerate(adjs):
        others = MultiPoly.constant(nvars, 1)
        for j, d in enumerate(dets):
            if j != k:
                others = others * d
        comps.extend(c * others for c in block)
    return delta, comps


def jordan_bessel(algebra: AlgebraDescriptor, lam, f: PowPolyFunction) -> list[PowPolyFunction]:
    """Components of B_lam f for an algebra built from rank-one and Lorentz pieces.

    The cone coordinates are the first ``algebra.n`` variables of ``f``; any further
    variables are carried along as parameters.
    """
    lam = as_fraction(lam)
    n = algebra.n
    if f.nvars < n:
        raise ValueError("function has fewer variables than the algebra dimension")
    gram = jd.exact_gram(algebra)
    table = _polarized_linear(algebra, f.nvars)
    firsts = [f.derivative(a) for a in range(n)]
    out = [PowPolyFunction(f.base, {}) for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            second = firsts[a].derivative(b)
            if second.is_zero():
                continue
            weight = 1 / (gram[a] * gram[b]) * (1 if a == b else 2)
            # P(e_a, e_b) is symmetric in (a, b); off-diagonal pairs counted twice
            for c in range(n):
                lin = table[a][b][c]
                if not lin.is_zero():
                    out[c] = out[c] + second.mul_poly(lin).scale(weight)
    for c in range(n):
        out[c] = out[c] + firsts[c].scale(lam / gram[c])
    return out


def bessel_apply(spec: DiffOperatorSpec, f: PowPolyFunction):
    """Apply a Bessel-type operator exactly.

    Scalar families return a ``PowPolyFunction``; ``BesselLorentz`` returns the list of
    coordinate components.
    """
    fam = spec.family
    if fam == "BesselRank1":
        (lam,) = spec.params
        return jordan_bessel(jd.Rank1Product(1), lam, f)[0]
    if fam == "BesselTensorSum":
        out = PowPolyFunction(f.base, {})
        for i, lam in enumerate(spec.params):
            first = f.derivative(i)
            out = out + first.derivative(i).mul_poly(MultiPoly.variable(f.nvars, i)) + first.scale(lam)
        return out
    if fam == "BesselLorentz":
        lam, n = spec.params
        return jordan_bessel(jd.Lorentz(n), lam, f)
    if fam == "StratBesselTensor":
        return strat_bessel_tensor(spec.params, f)
    if fam == "StratBesselLorentz":
        lam, n, p = spec.params
        return strat_bessel_lorentz(lam, n, p, f)
    raise ValueError(f"{fam} acts on plain polynomials; use its *_pde_apply function")


def bessel_shift_identity_check(algebra: AlgebraDescriptor, lam, mu, f: PowPolyFunction) -> list[PowPolyFunction]:
    """Residual of B_lam(Delta^mu f) - Delta^mu (B_{lam+2mu} f + mu(mu+lam-n/r) x^{-1} f).

    ``f`` must use the algebra's determinant (in its first coordinates) as base.
    Every returned component is exactly zero when the identity holds.
    """
    lam, mu = as_fraction(lam), as_fraction(mu)
    delta, adj = jordan_adjugate(algebra, f.nvars)
    if f.base != delta:
        raise ValueError("f must be expressed with the Jordan determinant as base")
    ratio = Fraction(algebra.n, algebra.r)
    lhs = jordan_bessel(algebra, lam, f.shift_mu(mu))
    shifted = jordan_bessel(algebra, lam + 2 * mu, f)
    coef = mu * (mu + lam - ratio)
    residual = []
    for c in range(algebra.n):
        inv_term = f.mul_poly(adj[c]).shift_mu(-1).scale(coef)
        rhs = (shifted[c] + inv_term).shift_mu(mu)
        residual.append(lhs[c] - rhs)
    return residual


# stratified tensor-product Bessel operator

def _simplex_vpart(lams: Sequence[Fraction], f: PowPolyFunction, offset: int) -> PowPolyFunction:
    """sum v_i(1-v_i) d_ii - 2 sum_{i<j} v_i v_j d_ij + sum (lam_i - |lam| v_i) d_i on variables offset.."""
    total = sum(lams, Fraction(0))
    nv = len(lams) - 1
    vs = [MultiPoly.variable(f.nvars, offset + i) for i in range(nv)]
    one = MultiPoly.constant(f.nvars, 1)
    out = PowPolyFunction(f.base, {})
    firsts = [f.derivative(offset + i) for i in range(nv)]
    for i in range(nv):
        out = out + firsts[i].derivative(offset + i).mul_poly(vs[i] * (one - vs[i]))
        for j in range(i + 1, nv):
            out = out + firsts[i].derivative(offset + j).mul_poly(vs[i] * vs[j]).scale(-2)
        out = out + firsts[i].mul_poly(one.scale(lams[i]) - vs[i].scale(total))
    return out


def strat_bessel_tensor(lams, f: PowPolyFunction) -> PowPolyFunction:
    """Closed form of the tensor-product Bessel operator in the chart (t, v), v in D_{n-1}.

    B^{(t)}_{|lam|} f + (1/t) [simplex operator in v] f, with t the first variable and the
    base of ``f`` equal to t.
    """
    lams = [as_fraction(x) for x in lams]
    if f.base != MultiPoly.variable(f.nvars, 0):
        raise ValueError("f must use t (variable 0) as base")
    total = sum(lams, Fraction(0))
    radial = bessel_apply(DiffOperatorSpec.bessel_rank1(total), f)
    return radial + _simplex_vpart(lams, f, 1).shift_mu(-1)


def strat_bessel_tensor_pullback(lams, f: PowPolyFunction) -> PowPolyFunction:
    """Independent evaluation: push f to R_+^n, apply sum_i B_{lam_i}, pull back.

    Uses x = theta(t, v) = (t v_1, ..., t v_{n-1}, t(1-|v|)) whose inverse is
    t = sum x_i = s, v_i = x_i / s; every t^a v^beta term becomes s^{a-|beta|} x^beta.
    """
    lams = [as_fraction(x) for x in lams]
    n = len(lams)
    if f.nvars != n:
        raise ValueError("f needs one t variable and n-1 simplex variables")
    xs = MultiPoly.variables(n)
    s = sum(xs, MultiPoly.zero(n))
    pushed = PowPolyFunction(s, {})
    for mu, poly in f.parts.items():
        for exps, c in poly.terms.items():
            a, beta = exps[0], exps[1:]
            mono = MultiPoly(n, {tuple(beta) + (0,): c})
            pushed = pushed + PowPolyFunction(s, {mu + a - sum(beta): mono})
    image = bessel_apply(DiffOperatorSpec.bessel_tensor_sum(lams), pushed)
    tv = MultiPoly.variables(n)
    t = tv[0]
    theta = [t * tv[i + 1] for i in range(n - 1)]
    theta.append(t - sum(theta, MultiPoly.zero(n)))
    out = PowPolyFunction(t, {})
    for mu, poly in image.parts.items():
        out = out + PowPolyFunction(t, {mu: poly.substitute(theta)})
    return out


# stratified Lorentz Bessel operator

def lorentz_ball_operator(lam, n: int, p: int, poly: PowPolyFunction | MultiPoly, offset: int):
    """sum d_ii - sum_{i,j} v_i v_j d_ij - (2 lam - n + p + 1) sum v_i d_i on variables offset..offset+p-1."""
    lam = as_fraction(lam)
    coef = 2 * lam - n + p + 1
    nv = poly.nvars
    vs = [MultiPoly.variable(nv, offset + i) for i in range(p)]
    is_pow = isinstance(poly, PowPolyFunction)
    out = PowPolyFunction(poly.base, {}) if is_pow else MultiPoly.zero(nv)
    firsts = [poly.derivative(offset + i) for i in range(p)]
    for i in range(p):
        out = out + firsts[i].derivative(offset + i)
        for j in range(p):
            term = firsts[i].derivative(offset + j)
            out = out - (term.mul_poly(vs[i] * vs[j]) if is_pow else term * (vs[i] * vs[j]))
        out = out - (firsts[i].mul_poly(vs[i]).scale(coef) if is_pow else (firsts[i] * vs[i]).scale(coef))
    return out


def strat_bessel_lorentz(lam, n: int, p: int, f: PowPolyFunction) -> list[PowPolyFunction]:
    """Closed form of the first n-p components of B^{(n)}_lam in the ball chart.

    B^{(n-p)}_lam f + (x^{-1}/4) [ball operator in v] f, where f lives on (x, v) with
    x in the (n-p)-dimensional cone and base Q(x).
    """
    lam = as_fraction(lam)
    m = n - p
    small = jd.Lorentz(m)
    delta, adj = jordan_adjugate(small, f.nvars)
    if f.base != delta:
        raise ValueError("f must use Q(x) as base")
    radial = jordan_bessel(small, lam, f)
    vpart = lorentz_ball_operator(lam, n, p, f, m)
    return [radial[c] + vpart.mul_poly(adj[c]).shift_mu(-1).scale(Fraction(1, 4)) for c in range(m)]


def strat_bessel_lorentz_pullback(lam, n: int, p: int, f: PowPolyFunction) -> list[PowPolyFunction]:
    """Independent evaluation through the big cone.

    With z = (z', z''), v = -z'' / Q(z')^{1/2}: every Q^mu x^a v^beta term becomes
    (-1)^{|beta|} Q(z')^{mu - |beta|/2} z'^a z''^beta. Apply B^{(n)}_lam exactly, keep the
    first n-p components and substitute z'' = -Q(x)^{1/2} v back.
    """
    lam = as_fraction(lam)
    m = n - p
    if f.nvars != n:
        raise ValueError("f needs n-p cone variables and p ball variables")
    zs = MultiPoly.variables(n)
    q = zs[0] * zs[0]
    for i in range(1, m):
        q = q - zs[i] * zs[i]
    pushed = PowPolyFunction(q, {})
    for mu, poly in f.parts.items():
        for exps, c in poly.terms.items():
            b = sum(exps[m:])
            pushed = pushed + PowPolyFunction(q, {mu - Fraction(b, 2): MultiPoly(n, {exps: c * (-1) ** b})})
    image = jordan_bessel(jd.Lorentz(n), lam, pushed)[:m]
    out = []
    for comp in image:
        back = PowPolyFunction(q, {})
        for mu, poly in comp.parts.items():
            for exps, c in poly.terms.items():
                b = sum(exps[m:])
                back = back + PowPolyFunction(q, {mu + Fraction(b, 2): MultiPoly(n, {exps: c * (-1) ** b})})
        out.append(back)
    return out


# finite-difference oracles

def _hessian_fd(func: Callable[[np.ndarray], float], z: np.ndarray, h: float):
    """Gradient and Hessian by central differences with one Richardson step."""
    dim = z.size

    def grad_hess(step):
        grad = np.zeros(dim)
        hess = np.zeros((dim, dim))
        f0 = func(z)
        for i in range(dim):
            ei = np.zeros(dim)
            ei[i] = step
            fp, fm = func(z + ei), func(z - ei)
            grad[i] = (fp - fm) / (2 * step)
            hess[i, i] = (fp - 2 * f0 + fm) / step**2
            for j in range(i + 1, dim):
                ej = np.zeros(dim)
                ej[j] = step
                val = (func(z + ei + ej) - func(z + ei - ej) - func(z - ei + ej) + func(z - ei - ej)) / (4 * step**2)
                hess[i, j] = hess[j, i] = val
        return grad, hess

    g1, h1 = grad_hess(h)
    g2, h2 = grad_hess(h / 2)
    return (4 * g2 - g1) / 3, (4 * h2 - h1) / 3


def strat_bessel_tensor_fd(lams, f_eval: Callable, t: float, v: np.ndarray, rel_step: float = 1e-2) -> float:
    """sum_i B_{lam_i} of F(x) = f(sum x, x'/sum x) at x = theta(t, v), by finite differences."""
    lams = [float(x) for x in lams]
    v = np.asarray(v, dtype=float)
    x0 = np.concatenate([t * v, [t * (1 - v.sum())]])

    def big(x):
        s = x.sum()
        return f_eval(s, x[:-1] / s)

    h = rel_step * min(x0.min(), 1.0)
    grad, hess = _hessian_fd(big, x0, h)
    return float(sum(x0[i] * hess[i, i] + lams[i] * grad[i] for i in range(len(lams))))


def strat_bessel_lorentz_fd(lam: float, n: int, p: int, f_eval: Callable, x: np.ndarray, v: np.ndarray, rel_step: float = 1e-2) -> np.ndarray:
    """First n-p components of B^{(n)}_lam F with F = f o iota^{-1}, by finite differences."""
    m = n - p
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    qx = x[0] ** 2 - x[1:] @ x[1:]
    z0 = np.concatenate([x, -math.sqrt(qx) * v])

    def big(z):
        q = z[0] ** 2 - z[1:m] @ z[1:m]
        return f_eval(z[:m], -z[m:] / math.sqrt(q))

    # keep the stencil inside the cone
    margin = min(x[0] - math.sqrt(x[1:] @ x[1:]), 1.0)
    h = rel_step * margin
    grad, hess = _hessian_fd(big, z0, h)
    # B f = (1/4) sum_ab d_a d_b f P(e_a,e_b) z + (lam/2) grad f
    alg = jd.Lorentz(n)
    eye = np.eye(n)
    out = lam / 2 * grad
    for a in range(n):
        for b in range(n):
            if hess[a, b] != 0:
                pab = jd.quad_rep_polarized(jd.JordanElement(alg, eye[a]), jd.JordanElement(alg, eye[b]))
                out = out + 0.25 * hess[a, b] * (pab @ z0)
    return out[:m]


# eigen-identities on the simplex and the ball

def simplex_pde_apply(lams, poly: MultiPoly) -> MultiPoly:
    """sum v_i(1-v_i) d_ii - 2 sum_{i<j} v_i v_j d_ij + sum (lam_i - |lam| v_i) d_i."""
    lams = [as_fraction(x) for x in lams]
    if poly.nvars != len(lams) - 1:
        raise ValueError("polynomial must have len(lams) - 1 variables")
    wrapped = PowPolyFunction(MultiPoly.constant(poly.nvars, 1), {0: poly})
    result = _simplex_vpart(lams, wrapped, 0)
    # the base is 1, so every exponent class collapses to a plain polynomial
    return sum(result.parts.values(), MultiPoly.zero(poly.nvars))


def simplex_residuals(lams, k: int) -> list[tuple[tuple, MultiPoly]]:
    """operator(R) + k(k+|lam|-1) R for every R_k basis element of degree k on D_{n-1}."""
    lams = [as_fraction(x) for x in lams]
    nv = len(lams) - 1
    eig = k * (k + sum(lams, Fraction(0)) - 1)
    out = []
    for idx in multi_indices(nv, k):
        r = simplex_basis(nv, lams, idx)
        out.append((idx, simplex_pde_apply(lams, r) + r.scale(eig)))
    return out


def simplex_eigencheck(lams, k: int) -> bool:
    return all(res.is_zero() for _, res in simplex_residuals(lams, k))


def ball_pde_apply(alpha, p: int, poly: MultiPoly) -> MultiPoly:
    """sum d_ii f - sum_i d_i ( v_i [ (2 alpha - 1) f + sum_j v_j d_j f ] )."""
    alpha = as_fraction(alpha)
    if poly.nvars != p:
        raise ValueError("polynomial must have p variables")
    vs = MultiPoly.variables(p)
    euler = MultiPoly.zero(p)
    for j in range(p):
        euler = euler + vs[j] * poly.derivative(j)
    inner = poly.scale(2 * alpha - 1) + euler
    out = MultiPoly.zero(p)
    for i in range(p):
        out = out + poly.derivative(i, 2) - (vs[i] * inner).derivative(i)
    return out


def ball_residuals(alpha, p: int, k: int) -> list[tuple[tuple, MultiPoly]]:
    alpha = as_fraction(alpha)
    eig = (k + p) * (k + 2 * alpha - 1)
    out = []
    for idx in multi_indices(p, k):
        poly = ball_basis(p, alpha, idx)
        out.append((idx, ball_pde_apply(alpha, p, poly) + poly.scale(eig)))
    return out


def ball_eigencheck(alpha, p: int, k: int) -> bool:
    return all(res.is_zero() for _, res in ball_residuals(alpha, p, k))


# derived Lie algebra action

def lie_action(algebra: AlgebraDescriptor, lam: float, part: str, element, f: PowPolyFunction, phase=None) -> Callable:
    """Evaluator of d rho(element) applied to f(x) e^{i(x|w)}.

    ``part`` is "n" (element u in V), "l" (element T, an n x n matrix acting on
    coordinates) or "nbar" (element v in V). ``phase`` is the vector w, or None.
    """
    n = algebra.n
    gram = jd.gram_matrix(algebra)
    w = np.zeros(n) if phase is None else np.asarray(phase, dtype=float)
    m = float(algebra.m)
    firsts = [f.derivative(a) for a in range(n)]

    def base_values(x):
        return f.evaluate(x), np.array([d.evaluate(x) for d in firsts])

    if part == "n":
        u = np.asarray(element, dtype=float)

        def act(x):
            x = np.asarray(x, dtype=float)
            return 1j * (u @ gram @ x) * f.evaluate(x) * cmath.exp(1j * (x @ gram @ w))

        return act
    if part == "l":
        t_mat = np.asarray(element, dtype=float)
        adjoint = np.linalg.solve(gram, t_mat.T @ gram)

        def act(x):
            x = np.asarray(x, dtype=float)
            val, grad = base_values(x)
            y = adjoint @ x
            deriv = grad @ y + 1j * (y @ gram @ w) * val
            return (lam / (2 * m) * np.trace(adjoint) * val + deriv) * cmath.exp(1j * (x @ gram @ w))

        return act
    if part == "nbar":
        v = np.asarray(element, dtype=float)
        comps = jordan_bessel(algebra, as_fraction(Fraction(lam).limit_denominator(10**6)), f)
        ginv = np.linalg.inv(gram)

        def act(x):
            x = np.asarray(x, dtype=float)
            val, grad = base_values(x)
            bess = np.array([c.evaluate(x) for c in comps], dtype=complex)
            wx = jd.quad_rep(jd.JordanElement(algebra, w)) @ x
            grad_vec = ginv @ grad
            pol = jd.quad_rep_polarized(jd.JordanElement(algebra, w), jd.JordanElement(algebra, grad_vec)) @ x
            total = bess - val * wx + 2j * pol + 1j * lam * val * w
            return 1j * (v @ gram @ total) * cmath.exp(1j * (x @ gram @ w))

        return act
    raise ValueError("part must be 'n', 'l' or 'nbar'")


# rank-one Hankel transform (exploratory)

def _hankel_kernel(lam: float, x: np.ndarray, t: np.ndarray) -> np.ndarray:
    """0F1(lam; -x t) / Gamma(lam) = (x t)^{(1-lam)/2} J_{lam-1}(2 sqrt(x t))."""
    z = np.multiply.outer(t, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.power(z, (1 - lam) / 2) * jv(lam - 1, 2 * np.sqrt(z))
    small = z < 1e-300
    if np.any(small):
        out[small] = 1.0 / gamma_fn(lam)
    return out


def hankel_rank1(lam: float, f: Callable[[np.ndarray], np.ndarray], t_grid, truncation: float = 40.0, npts: int = 200) -> np.ndarray:
    """rho(j) f(t) = (Gamma(lam) i^lam)^{-1} int_0^T 0F1(lam; -x t) f(x) x^{lam-1} dx.

    Principal branch for i^lam. The integral is truncated at ``truncation``; a warning is
    issued when |f| at the cut is not negligible.
    """
    rule = gauss_jacobi_rule(npts, 0.0, lam - 1)
    x = truncation * (1 + rule.nodes) / 2
    w = rule.weights * (truncation / 2) ** lam
    fx = np.asarray(f(x))
    tail = abs(np.asarray(f(np.array([truncation])))[0])
    if tail > 1e-12 * max(1.0, float(np.max(np.abs(fx)))):
        warnings.warn("Hankel truncation radius leaves a non-negligible tail", ResolutionWarning, stacklevel=2)
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    kernel = _hankel_kernel(lam, x, t)
    phase = cmath.exp(-1j * math.pi * lam / 2)
    return phase * (kernel @ (w * fx))


def hankel_involution_defect(lam: float, f: Callable[[np.ndarray], np.ndarray], t_grid, truncation: float = 40.0, npts: int = 200) -> float:
    """max |i^{2 lam} rho(j)^2 f - f| on the grid (rho(j)^2 = i^{-2 lam} on this class)."""
    rule = gauss_jacobi_rule(npts, 0.0, lam - 1)
    x = truncation * (1 + rule.nodes) / 2
    once = hankel_rank1(lam, f, x, truncation, npts)
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    w = rule.weights * (truncation / 2) ** lam
    twice = cmath.exp(-1j * math.pi * lam / 2) * (_hankel_kernel(lam, x, t) @ (w * once))
    restored = twice * cmath.exp(1j * math.pi * lam)
    return float(np.max(np.abs(restored - np.asarray(f(t)))))
