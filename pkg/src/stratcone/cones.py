"""Symmetric-cone analysis: Gindikin Gamma/Beta functions and stratification charts.

Three concrete embeddings V1 -> V2 are supported:

* ``EqualRankLorentz(n, p)``: R x R^{n-p-1} into R x R^{n-1} (first n-p coordinates).
  Chart iota(x, v) = (x, -Q(x)^{1/2} v) for x in the smaller cone and |v| < 1.
* ``DiagonalProduct(V, p)``: V diagonally into V^p. Chart
  iota(t, v) = (P(t^{1/2})(e+v_1)/p, ..., P(t^{1/2})(e-v_1-...-v_{p-1})/p).
  For V = R this is the simplex chart with X = {1+v_i > 0, 1-sum v_i > 0}.
* ``ScalarLine(Lorentz(n))``: R e into a Lorentz algebra, iota(t, u) = (t/2)(1, u).

Measures on cones are Euclidean for the trace form unless a function says otherwise;
for Lorentz(n) this is 2^{n/2} times Lebesgue measure in raw coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import jordan as jd
from .jordan import AlgebraDescriptor, JordanElement, JordanError
from .quadrature import (
    ball_rule,
    gauss_jacobi_rule,
    gauss_laguerre_rule,
    integrate,
    lorentz_cone_rule,
    simplex_rule,
)

__all__ = [
    "ConeEmbedding",
    "StratCoords",
    "EqualRankLorentz",
    "DiagonalProduct",
    "ScalarLine",
    "check_embedding",
    "embedding_matrix",
    "complement_basis",
    "extend_to_outer",
    "gamma_cone",
    "beta_cone",
    "gamma_cone_quadrature",
    "beta_cone_quadrature",
    "in_strat_space",
    "strat_forward",
    "strat_inverse",
    "strat_jacobian",
    "strat_jacobian_general",
    "strat_jacobian_numeric",
    "strat_identities_check",
    "gamma_product_identity",
    "volume_strat_space",
    "k_compensator",
    "hilbert_isometry_check",
    "strat_dims",
    "simplex_chart_forward",
    "simplex_chart_inverse",
    "simplex_chart_jacobian",
]


@dataclass(frozen=True)
class ConeEmbedding:
    kind: str
    inner: AlgebraDescriptor
    outer: AlgebraDescriptor
    copies: int = 1

    @property
    def equal_rank(self) -> bool:
        return self.inner.r == self.outer.r

    def __str__(self):
        if self.kind == "equal_rank_lorentz":
            return f"EqualRankLorentz({self.outer.n}, {self.outer.n - self.inner.n})"
        if self.kind == "diagonal_product":
            return f"DiagonalProduct({self.inner}, {self.copies})"
        return f"ScalarLine({self.outer})"


@dataclass(frozen=True)
class StratCoords:
    """Stratified coordinates: t in the small cone, v a point of the stratification space."""

    t: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "t", np.atleast_1d(np.asarray(self.t, dtype=float)))
        object.__setattr__(self, "v", np.atleast_1d(np.asarray(self.v, dtype=float)))


def EqualRankLorentz(n: int, p: int) -> ConeEmbedding:
    if p < 1 or n - p < 2:
        raise JordanError("EqualRankLorentz(n, p) needs p >= 1 and n - p >= 2")
    return ConeEmbedding("equal_rank_lorentz", jd.Lorentz(n - p), jd.Lorentz(n))


def DiagonalProduct(algebra: AlgebraDescriptor, p: int) -> ConeEmbedding:
    if p < 2:
        raise JordanError("DiagonalProduct needs at least two copies")
    if not algebra.is_simple:
        raise JordanError("DiagonalProduct is implemented for a simple factor")
    return ConeEmbedding("diagonal_product", algebra, jd.DirectSum(*([algebra] * p)), p)


def ScalarLine(outer: AlgebraDescriptor) -> ConeEmbedding:
    if outer.kind != "lorentz":
        raise JordanError("ScalarLine is implemented for Lorentz algebras")
    return ConeEmbedding("scalar_line", jd.Rank1Product(1), outer)


def strat_dims(emb: ConeEmbedding) -> tuple[int, int]:
    """(dimension of t, dimension of v)."""
    if emb.kind == "equal_rank_lorentz":
        return emb.inner.n, emb.outer.n - emb.inner.n
    if emb.kind == "diagonal_product":
        return emb.inner.n, (emb.copies - 1) * emb.inner.n
    return 1, emb.outer.n - 1


def embedding_matrix(emb: ConeEmbedding) -> np.ndarray:
    """Matrix of eta: V1 -> V2 in coordinates."""
    n1, n2 = emb.inner.n, emb.outer.n
    if emb.kind == "equal_rank_lorentz":
        return np.eye(n2, n1)
    if emb.kind == "diagonal_product":
        return np.vstack([np.eye(n1)] * emb.copies)
    out = np.zeros((n2, 1))
    out[0, 0] = 1.0
    return out


def check_embedding(inner: AlgebraDescriptor, outer: AlgebraDescriptor, eta: np.ndarray, samples: int = 8, seed: int = 0) -> float:
    """Validate a candidate embedding and return the scalar-product ratio mu.

    Checks unitality, the homomorphism property and (x|y)_2 = mu (x|y)_1 with
    mu = r_2 / r_1. Raises ``JordanError`` when any of them fails.
    """
    eta = np.asarray(eta, dtype=float)
    if not np.allclose(eta @ jd._identity(inner), jd._identity(outer)):
        raise JordanError("embedding is not unital")
    rng = np.random.default_rng(seed)
    g1, g2 = jd.gram_matrix(inner), jd.gram_matrix(outer)
    mu = outer.r / inner.r
    for _ in range(samples):
        x, y = rng.normal(size=inner.n), rng.normal(size=inner.n)
        if not np.allclose(eta @ jd._product(inner, x, y), jd._product(outer, eta @ x, eta @ y)):
            raise JordanError("embedding is not a Jordan homomorphism")
        lhs = (eta @ x) @ g2 @ (eta @ y)
        if not math.isclose(lhs, mu * (x @ g1 @ y), rel_tol=1e-10, abs_tol=1e-12):
            raise JordanError("scalar products are not proportional with ratio r2/r1")
    return mu


def complement_basis(emb: ConeEmbedding) -> np.ndarray:
    """Columns form a trace-form-orthonormal basis of the orthogonal complement of V1."""
    eta = embedding_matrix(emb)
    gram = jd.gram_matrix(emb.outer)
    root = np.linalg.cholesky(gram).T  # gram = root^T root
    # work in coordinates where the trace form is the dot product
    image = root @ eta
    q, _ = np.linalg.qr(image, mode="complete")
    comp = q[:, eta.shape[1]:]
    return np.linalg.solve(root, comp)


def extend_to_outer(emb: ConeEmbedding, g: np.ndarray) -> np.ndarray:
    """Extend g in G(Omega_1) to V2 so that it preserves V1 and its complement."""
    g = np.asarray(g, dtype=float)
    if emb.kind == "equal_rank_lorentz":
        n1, n2 = emb.inner.n, emb.outer.n
        scale = abs(np.linalg.det(g)) ** (1.0 / n1)
        out = scale * np.eye(n2)
        out[:n1, :n1] = g
        return out
    if emb.kind == "diagonal_product":
        n1 = emb.inner.n
        out = np.zeros((emb.outer.n, emb.outer.n))
        for k in range(emb.copies):
            out[k * n1:(k + 1) * n1, k * n1:(k + 1) * n1] = g
        return out
    return float(np.squeeze(g)) * np.eye(emb.outer.n)


# Gamma and Beta

def gamma_cone(algebra: AlgebraDescriptor, lam: float) -> float:
    """Gindikin Gamma (2 pi)^{(n-r)/2} prod_{i=1}^{r} Gamma(lam - (i-1) d/2)."""
    if not algebra.is_simple:
        raise JordanError("gamma_cone needs a simple algebra")
    r, n, d = algebra.r, algebra.n, algebra.d
    args = [lam - i * d / 2 for i in range(r)]
    for a in args:
        if a <= 0 and a == int(a):
            raise JordanError(f"Gamma pole at argument {a}")
    return (2 * math.pi) ** ((n - r) / 2) * math.prod(math.gamma(a) for a in args)


def beta_cone(algebra: AlgebraDescriptor, lam1: float, lam2: float) -> float:
    return gamma_cone(algebra, lam1) * gamma_cone(algebra, lam2) / gamma_cone(algebra, lam1 + lam2)


def gamma_cone_quadrature(algebra: AlgebraDescriptor, lam: float, npts: int = 40) -> float:
    """Integral of e^{-tr x} Delta(x)^{lam - m} over the cone, by an independent rule."""
    if algebra.kind == "rank1" and algebra.size == 1:
        return gauss_laguerre_rule(npts, lam - 1).total_weight
    if algebra.kind != "lorentz":
        raise JordanError("quadrature oracle implemented for R and Lorentz cones")
    n = algebra.n
    # the angular integrand is constant, so a coarse ball rule is exact
    rule = lorentz_cone_rule(n, lam, 1.0, npts, ball_npts=2)
    return 2 ** (n / 2) * rule.total_weight


def beta_cone_quadrature(algebra: AlgebraDescriptor, lam1: float, lam2: float, npts: int = 60) -> float:
    """Integral of Delta(x)^{lam1-m} Delta(e-x)^{lam2-m} over the cone intersected with e - cone."""
    if algebra.kind == "rank1" and algebra.size == 1:
        return gauss_jacobi_rule(npts, lam2 - 1, lam1 - 1).total_weight * 2.0 ** (1 - lam1 - lam2)
    if algebra.kind != "lorentz":
        raise JordanError("quadrature oracle implemented for R and Lorentz cones")
    n = algebra.n
    a, b = lam1 - n / 2, lam2 - n / 2
    sphere = 2 * math.pi ** ((n - 1) / 2) / math.gamma((n - 1) / 2)
    # |u| < min(x1, 1 - x1): split at x1 = 1/2; the half x1 > 1/2 is the mirror with a <-> b
    total = _beta_half(a, b, n, npts) + _beta_half(b, a, n, npts)
    return 2 ** (n / 2) * sphere * total


def _beta_half(a: float, b: float, n: int, npts: int) -> float:
    """Radial-reduced integral over 0 < x1 < 1/2, |u| < x1 of (x1^2-|u|^2)^a ((1-x1)^2-|u|^2)^b.

    With |u| = x1 sqrt(w) the u-integral becomes
    x1^{2a+n-1}/2 * int_0^1 (1-w)^a w^{(n-3)/2} ((1-x1)^2 - x1^2 w)^b dw (per unit sphere area).
    """
    c = (n - 3) / 2
    expo = 2 * a + n - 1
    inner = gauss_jacobi_rule(npts, a, c)
    w = (1 + inner.nodes) / 2
    ww = inner.weights * 2.0 ** (-(a + c + 1))
    outer = gauss_jacobi_rule(npts, 0.0, expo)
    s = (1 + outer.nodes) / 2  # x1 = s/2
    sw = outer.weights * 2.0 ** (-(expo + 1))
    x1 = s / 2
    smooth = np.power((1 - x1[:, None]) ** 2 - x1[:, None] ** 2 * w[None, :], b) @ ww
    # dx1 = ds/2 and x1^expo = (s/2)^expo
    return float(np.sum(sw * smooth)) * 0.5 * 0.5**expo * 0.5


# charts

def in_strat_space(emb: ConeEmbedding, v) -> bool:
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if emb.kind == "equal_rank_lorentz" or emb.kind == "scalar_line":
        return bool(v @ v < 1)
    n1, p = emb.inner.n, emb.copies
    blocks = v.reshape(p - 1, n1)
    e = jd._identity(emb.inner)
    if not all(jd._in_cone(emb.inner, e + b) for b in blocks):
        return False
    return jd._in_cone(emb.inner, e - blocks.sum(axis=0))


def strat_forward(emb: ConeEmbedding, c: StratCoords) -> np.ndarray:
    t, v = c.t, c.v
    if emb.kind == "equal_rank_lorentz":
        q = jd._det(emb.inner, t)
        if not jd._in_cone(emb.inner, t) or not in_strat_space(emb, v):
            raise JordanError("point outside the chart domain")
        return np.concatenate([t, -math.sqrt(q) * v])
    if emb.kind == "scalar_line":
        if t[0] <= 0 or not in_strat_space(emb, v):
            raise JordanError("point outside the chart domain")
        return t[0] / 2 * np.concatenate([[1.0], v])
    alg, p = emb.inner, emb.copies
    if not jd._in_cone(alg, t) or not in_strat_space(emb, v):
        raise JordanError("point outside the chart domain")
    root = jd._quad(alg, jd._power(alg, t, 0.5))
    e = jd._identity(alg)
    blocks = list(v.reshape(p - 1, alg.n))
    blocks.append(-np.sum(blocks, axis=0))
    return np.concatenate([root @ (e + b) / p for b in blocks])


def strat_inverse(emb: ConeEmbedding, x) -> StratCoords:
    x = np.asarray(x, dtype=float)
    if not jd._in_cone(emb.outer, x):
        raise JordanError("point outside the outer cone")
    if emb.kind == "equal_rank_lorentz":
        n1 = emb.inner.n
        t = x[:n1]
        return StratCoords(t, -x[n1:] / math.sqrt(jd._det(emb.inner, t)))
    if emb.kind == "scalar_line":
        t = 2 * x[0]
        return StratCoords([t], x[1:] / x[0])
    alg, p = emb.inner, emb.copies
    blocks = x.reshape(p, alg.n)
    t = blocks.sum(axis=0)
    inv_root = jd._quad(alg, jd._power(alg, t, -0.5))
    e = jd._identity(alg)
    v = [inv_root @ (p * b) - e for b in blocks[:-1]]
    return StratCoords(t, np.concatenate(v))


def strat_jacobian(emb: ConeEmbedding, c: StratCoords) -> float:
    """Absolute Jacobian determinant of the chart in raw coordinates."""
    t = c.t
    if emb.kind == "equal_rank_lorentz":
        p = emb.outer.n - emb.inner.n
        return jd._det(emb.inner, t) ** (p / 2)
    if emb.kind == "scalar_line":
        n = emb.outer.n
        return t[0] ** (n - 1) / 2**n
    alg, p = emb.inner, emb.copies
    m = alg.n / alg.r
    return jd._det(alg, t) ** ((p - 1) * m) / p ** ((p - 1) * alg.n)


def strat_jacobian_general(emb: ConeEmbedding, c: StratCoords) -> float:
    """(r1/r2)^{n2} det P2(t^{1/2}) / det P1(t^{1/2}), the coordinate-free form."""
    t = c.t
    eta = embedding_matrix(emb)
    root1 = jd._power(emb.inner, t, 0.5) if emb.kind != "scalar_line" else np.sqrt(t)
    root2 = eta @ root1
    det2 = np.linalg.det(jd._quad(emb.outer, root2))
    det1 = np.linalg.det(jd._quad(emb.inner, root1))
    return (emb.inner.r / emb.outer.r) ** emb.outer.n * det2 / det1


def strat_jacobian_numeric(emb: ConeEmbedding, c: StratCoords, rel_step: float = 1e-4) -> float:
    """Central differences with one Richardson step, for cross-checking."""
    params = np.concatenate([c.t, c.v])
    nt = c.t.size

    def fwd(z):
        return strat_forward(emb, StratCoords(z[:nt], z[nt:]))

    scale = max(1.0, float(np.max(np.abs(params))))
    h = rel_step * scale
    cols = []
    for i in range(params.size):
        def diff(step):
            plus, minus = params.copy(), params.copy()
            plus[i] += step
            minus[i] -= step
            return (fwd(plus) - fwd(minus)) / (2 * step)
        d1, d2 = diff(h), diff(h / 2)
        cols.append((4 * d2 - d1) / 3)
    return abs(float(np.linalg.det(np.column_stack(cols))))


def _unit_of_complement(emb: ConeEmbedding, c: StratCoords) -> np.ndarray:
    """The V2 element e + u with u in V1-perp that the chart attaches to v."""
    e2 = jd._identity(emb.outer)
    if emb.kind == "equal_rank_lorentz":
        return np.concatenate([e2[: emb.inner.n], -c.v])
    if emb.kind == "scalar_line":
        return np.concatenate([[1.0], c.v])
    alg, p = emb.inner, emb.copies
    e = jd._identity(alg)
    blocks = list(c.v.reshape(p - 1, alg.n))
    blocks.append(-np.sum(blocks, axis=0))
    return np.concatenate([e + b for b in blocks])


def strat_identities_check(emb: ConeEmbedding, c: StratCoords) -> tuple[float, float, float, float]:
    """Both sides of Delta2(iota) = (r1/r2)^{r2} Delta2(eta t) Delta2(e+u) and tr2(iota) = tr1(t)."""
    x = strat_forward(emb, c)
    eta = embedding_matrix(emb)
    t_outer = eta @ c.t
    det_lhs = jd._det(emb.outer, x)
    det_rhs = (emb.inner.r / emb.outer.r) ** emb.outer.r * jd._det(emb.outer, t_outer) * jd._det(
        emb.outer, _unit_of_complement(emb, c)
    )
    tr_lhs = jd._trace(emb.outer, x)
    tr_rhs = jd._trace(emb.inner, c.t) if emb.kind != "scalar_line" else float(c.t[0])
    return det_lhs, det_rhs, tr_lhs, tr_rhs


def gamma_product_identity(lams: Sequence[float], algebra: AlgebraDescriptor | None = None, npts: int = 40):
    """(lhs, rhs, I) for prod Gamma(lam_k) = Gamma(|lam|) p^{-(r|lam|-n)} I(lam).

    For the rank-one cone I is the chart integral over X, computed by mapping the simplex
    rule to X coordinates. Otherwise I is the closed Beta product.
    """
    algebra = algebra or jd.Rank1Product(1)
    lams = [float(x) for x in lams]
    p = len(lams)
    if p < 2:
        raise ValueError("need at least two parameters")
    r, n, d = algebra.r, algebra.n, algebra.d
    if any(x <= (r - 1) * d / 2 for x in lams):
        raise ValueError("parameters below the Gindikin range")
    total = sum(lams)
    lhs = math.prod(gamma_cone(algebra, x) for x in lams)
    if algebra.kind == "rank1" and algebra.size == 1:
        nodes, weights = x_chart_rule(lams, npts)
        integral = float(np.sum(weights))
    else:
        integral = p ** (r * total - n) * math.prod(
            beta_cone(algebra, sum(lams[: k + 1]), lams[k + 1]) for k in range(p - 1)
        )
    rhs = gamma_cone(algebra, total) * p ** (-(r * total - n)) * integral
    return lhs, rhs, integral


def x_chart_rule(lams: Sequence[float], npts: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on X = {1+v_i>0, 1-sum v_i>0} for prod (1+v_i)^{lam_i-1} (1-sum v)^{lam_p-1} dv.

    Pulled back from the simplex rule through v_i = p x_i - 1.
    """
    p = len(lams)
    rule = simplex_rule(p - 1, lams, npts)
    scale = float(p) ** (sum(lams) - 1)
    return p * rule.nodes - 1, rule.weights * scale


def volume_strat_space(emb: ConeEmbedding, lam: float, npts: int = 40) -> float:
    """Integral over X of Delta2(e+u)^{lam - m2} du (Euclidean du on the complement)."""
    if emb.kind != "equal_rank_lorentz":
        raise JordanError("volume identity is stated for equal-rank embeddings")
    n = emb.outer.n
    p = n - emb.inner.n
    rule = ball_rule(p, lam - n / 2 + 0.5, npts)
    # Euclidean measure on the complement is 2^{p/2} Lebesgue; the ball rule carries 2^{-p/2}
    return 2.0**p * rule.total_weight


def k_compensator(emb: ConeEmbedding, g: np.ndarray, t) -> np.ndarray:
    """k = P2((g t)^{-1/2}) g P2(t^{1/2}) for g acting on V2 and t in the small cone."""
    g = np.asarray(g, dtype=float)
    t2 = embedding_matrix(emb) @ np.atleast_1d(np.asarray(t, dtype=float))
    outer = emb.outer
    gt = g @ t2
    if not jd._in_cone(outer, gt):
        raise JordanError("g does not map t into the cone")
    return jd._quad(outer, jd._power(outer, gt, -0.5)) @ g @ jd._quad(outer, jd._power(outer, t2, 0.5))


def hilbert_isometry_check(
    emb: ConeEmbedding,
    f: Callable[[np.ndarray], np.ndarray],
    params,
    decay: float,
    npts: int = 24,
) -> tuple[float, float, float]:
    """(chart-side norm, cone-side norm, predicted ratio) for |f|^2 e^{-2 decay tr}-type integrands.

    ``f`` must be of the form e^{-decay * (coordinate sum or x_1)} times a polynomial, so
    the cone-side rule is exact. For the product chart with V = R, ``params`` is the
    vector Lambda and the ratio is p^{|Lambda|-1}; for equal-rank Lorentz it is lambda and
    the ratio is 1 (both sides in the same Euclidean normalization).
    """
    if emb.kind == "diagonal_product" and emb.inner.kind == "rank1":
        lams = [float(x) for x in params]
        p = len(lams)
        radial = gauss_laguerre_rule(npts, sum(lams) - 1)
        t = radial.nodes / (2 * decay)
        tw = radial.weights / (2 * decay) ** sum(lams)
        vnodes, vweights = x_chart_rule(lams, npts)
        pts, wts = [], []
        for ti, twi in zip(t, tw):
            x = np.column_stack([ti * (1 + vnodes) / p, ti * (1 - vnodes.sum(axis=1)) / p])
            pts.append(x)
            wts.append(twi * vweights)
        pts = np.vstack(pts)
        wts = np.concatenate(wts)
        chart = float(np.sum(wts * np.abs(f(pts)) ** 2))
        cone = _product_laguerre(f, lams, decay, npts)
        return chart, cone, float(p) ** (sum(lams) - 1)
    if emb.kind == "equal_rank_lorentz":
        lam = float(params)
        n = emb.outer.n
        n1 = emb.inner.n
        p = n - n1
        small = lorentz_cone_rule(n1, lam, decay, npts)
        ball = ball_rule(p, lam - n / 2 + 0.5, npts)
        bw = ball.weights * 2 ** (p / 2)
        xs = np.repeat(small.nodes, ball.size, axis=0)
        vs = np.tile(ball.nodes, (small.size, 1))
        q = xs[:, 0] ** 2 - np.sum(xs[:, 1:] ** 2, axis=1)
        pts = np.column_stack([xs, -np.sqrt(q)[:, None] * vs])
        wts = np.repeat(small.weights, ball.size) * np.tile(bw, small.size)
        # Euclidean factors: 2^{n1/2} on the small cone, 2^{p/2} on the complement
        chart = 2 ** (n1 / 2) * 2 ** (p / 2) * float(np.sum(wts * np.abs(f(pts)) ** 2))
        big = lorentz_cone_rule(n, lam, decay, npts)
        cone = 2 ** (n / 2) * float(np.sum(big.weights * np.abs(f(big.nodes)) ** 2))
        return chart, cone, 1.0
    raise JordanError("isometry check implemented for the simplex and equal-rank Lorentz charts")


def _product_laguerre(f, lams, decay, npts):
    rules = [gauss_laguerre_rule(npts, lam - 1) for lam in lams]
    grids = np.meshgrid(*[r.nodes / (2 * decay) for r in rules], indexing="ij")
    wgrid = np.ones_like(grids[0])
    for axis, (r, lam) in enumerate(zip(rules, lams)):
        shape = [1] * len(lams)
        shape[axis] = -1
        wgrid = wgrid * (r.weights / (2 * decay) ** lam).reshape(shape)
    pts = np.column_stack([g.ravel() for g in grids])
    return float(np.sum(wgrid.ravel() * np.abs(f(pts)) ** 2))


# the simplex chart of R_+^n

def simplex_chart_forward(t, v) -> np.ndarray:
    """theta(t, v) = (t v_1, ..., t v_{n-1}, t (1 - |v|)), vectorized over leading axes."""
    t = np.asarray(t, dtype=float)
    v = np.asarray(v, dtype=float)
    last = t * (1 - np.sum(v, axis=-1))
    return np.concatenate([t[..., None] * v, last[..., None]], axis=-1)


def simplex_chart_inverse(x) -> tuple[np.ndarray, np.ndarray]:
    """(t, v) with t = |x| and v_i = x_i / |x| for i < n."""
    x = np.asarray(x, dtype=float)
    t = np.sum(x, axis=-1)
    return t, x[..., :-1] / t[..., None]


def simplex_chart_jacobian(t, n: int):
    """|det D theta| = t^{n-1}."""
    return np.asarray(t, dtype=float) ** (n - 1)
