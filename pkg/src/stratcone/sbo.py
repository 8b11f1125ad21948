"""Symmetry breaking and holographic operators in the stratified model.

Three geometries are supported:

* ``TensorSimplex``: R_+^n stratified as R_+ x D_{n-1}; Psi f(t) = t^{-k} int f(t, v) P(v) dmu_Lambda(v).
* ``LorentzBall``: Omega_n stratified as Omega_{n-p} x B^p; Psi f(x) = Q(x)^{-k/2} int f(x, v) P(v) dmu_alpha(v).
* ``LorentzBallSO_p``: the SO(p)-refined operators Psi_{l,j} built from the reproducing
  kernel of degree l-2j spherical harmonics.

Functions are passed as vectorized evaluators ``f(x, v)`` where ``x`` has shape
(..., cone_dim) and ``v`` shape (..., strat_dim); arrays broadcast.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import jordan as jd
from .cones import simplex_chart_forward
from .operators import jordan_bessel, strat_bessel_lorentz, strat_bessel_tensor, bessel_apply, DiffOperatorSpec
from .orthopoly import (
    gegenbauer,
    gegenbauer_norm2,
    harmonic_basis,
    harmonic_dim,
    harmonic_kernel,
    inflated_gegenbauer,
    jacobi_norm2,
    jacobi_poly,
    multi_indices,
    simplex_basis,
)
from .polyalg import MultiPoly, PowPolyFunction, as_fraction
from .quadrature import (
    QuadratureRule,
    ResolutionWarning,
    ball_rule,
    gauss_jacobi_rule,
    gauss_laguerre_rule,
    integrate,
    lorentz_cone_rule,
    simplex_rule,
)

__all__ = [
    "SboSpec",
    "StratFunction",
    "gaussian_poly_function",
    "strat_rule",
    "pol_k_defect",
    "sbo_apply",
    "holo_apply",
    "sbo_so_p",
    "so_p_gamma",
    "so_p_adjoint_constant",
    "so_p_block_coefficient",
    "sphere_area",
    "target_inner",
    "source_inner",
    "adjointness_defect",
    "bessel_intertwining_residual",
    "verify_diagram_tensor",
    "jacobi_transform",
    "verify_diagram_conform",
    "verify_parabolic_intertwine",
    "branching_table",
    "sample_cone_points",
]

GEOMETRIES = ("TensorSimplex", "LorentzBall", "LorentzBallSO_p")


@dataclass(frozen=True)
class SboSpec:
    """Parameters of one symmetry breaking operator.

    For ``TensorSimplex`` ``lams`` holds Lambda (n entries) and ``poly`` a polynomial on
    D_{n-1}. For ``LorentzBall`` ``lams = (lam,)`` and ``poly`` lives on B^p. For
    ``LorentzBallSO_p`` ``degree`` is l and ``block`` is j; no polynomial is stored.
    """

    geometry: str
    n: int
    p: int
    lams: tuple
    degree: int
    poly: MultiPoly | None = None
    block: int | None = None

    def __post_init__(self):
        if self.geometry not in GEOMETRIES:
            raise ValueError(f"unknown geometry {self.geometry!r}")

    @classmethod
    def tensor_simplex(cls, lams: Sequence, poly: MultiPoly, require_orthogonal: bool = True) -> "SboSpec":
        lams = tuple(as_fraction(x) for x in lams)
        n = len(lams)
        if n < 2:
            raise ValueError("need at least two tensor factors")
        if poly.nvars != n - 1:
            raise ValueError("polynomial must live on D_{n-1}")
        spec = cls("TensorSimplex", n, n - 1, lams, poly.degree(), poly)
        spec._validate(require_orthogonal)
        return spec

    @classmethod
    def lorentz_ball(cls, n: int, p: int, lam, poly: MultiPoly, require_orthogonal: bool = True) -> "SboSpec":
        if n - p < 2 or p < 1:
            raise ValueError("need p >= 1 and n - p >= 2")
        if poly.nvars != p:
            raise ValueError("polynomial must have p variables")
        spec = cls("LorentzBall", n, p, (as_fraction(lam),), poly.degree(), poly)
        spec._validate(require_orthogonal)
        return spec

    @classmethod
    def lorentz_ball_so_p(cls, n: int, p: int, lam, l: int, j: int) -> "SboSpec":
        if p < 3:
            raise ValueError("the harmonic kernel formula needs p >= 3; p = 2 is not supported")
        if n - p < 2:
            raise ValueError("need n - p >= 2")
        if not 0 <= 2 * j <= l:
            raise ValueError("need 0 <= 2j <= l")
        return cls("LorentzBallSO_p", n, p, (as_fraction(lam),), l, None, j)

    def _validate(self, require_orthogonal: bool) -> None:
        if require_orthogonal and self.degree > 0:
            defect = pol_k_defect(self)
            if defect > 1e-9:
                raise ValueError(f"polynomial is not orthogonal to lower degrees (defect {defect:.2e})")

    @property
    def lam(self) -> Fraction:
        return self.lams[0]

    @property
    def total(self) -> Fraction:
        return sum(self.lams, Fraction(0))

    @property
    def cone_dim(self) -> int:
        return 1 if self.geometry == "TensorSimplex" else self.n - self.p

    @property
    def alpha(self) -> Fraction:
        """Ball weight parameter alpha = lam - (n-1)/2."""
        if self.geometry == "TensorSimplex":
            raise AttributeError("alpha is a ball parameter")
        return self.lam - Fraction(self.n - 1, 2)

    @property
    def harmonic_degree(self) -> int:
        return self.degree - 2 * self.block

    def source_dilation_exponent(self) -> float:
        return float(self.total / 2) if self.geometry == "TensorSimplex" else float(self.lam)

    def target_dilation_exponent(self) -> float:
        if self.geometry == "TensorSimplex":
            return float(self.total / 2 + self.degree)
        return float(self.lam + self.degree)

    def cone_trace(self, x: np.ndarray) -> np.ndarray:
        """Jordan trace on the small cone: t itself, or 2 x_1 for a Lorentz cone."""
        return x[..., 0] if self.geometry == "TensorSimplex" else 2 * x[..., 0]

    def cone_det(self, x: np.ndarray) -> np.ndarray:
        if self.geometry == "TensorSimplex":
            return x[..., 0]
        return x[..., 0] ** 2 - np.sum(x[..., 1:] ** 2, axis=-1)

    def cone_pairing(self, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        """Trace form (x|u) on the small algebra."""
        return np.sum(x * u, axis=-1) * (1 if self.geometry == "TensorSimplex" else 2)

    def describe(self) -> dict:
        out = {"geometry": self.geometry, "n": self.n, "p": self.p,
               "lams": [str(x) for x in self.lams], "degree": self.degree}
        if self.block is not None:
            out["block"] = self.block
        if self.poly is not None:
            out["poly"] = self.poly.to_json_obj()
        return out


@dataclass(frozen=True)
class StratFunction:
    """Evaluator on Omega_1 x X with an optional bound on its polynomial degree in v."""

    evaluator: Callable[[np.ndarray, np.ndarray], np.ndarray]
    v_degree: int | None = None
    decay: float | None = None
    description: str = ""

    def __call__(self, x, v):
        return self.evaluator(x, v)


def gaussian_poly_function(spec: SboSpec, poly: MultiPoly, decay: float, description: str = "") -> StratFunction:
    """e^{-decay tr(x)} poly(x, v), poly in cone_dim + strat_dim variables."""
    d1 = spec.cone_dim
    if poly.nvars != d1 + spec.p:
        raise ValueError("test polynomial has the wrong number of variables")
    v_degree = max((sum(e[d1:]) for e in poly.terms), default=0)

    def evaluator(x, v):
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        shape = np.broadcast_shapes(x.shape[:-1], v.shape[:-1])
        xb = np.broadcast_to(x, shape + (d1,))
        vb = np.broadcast_to(v, shape + (spec.p,))
        pts = np.concatenate([xb, vb], axis=-1)
        return np.exp(-decay * spec.cone_trace(xb)) * poly.evaluate(pts)

    return StratFunction(evaluator, v_degree, decay, description or poly.to_string())


def strat_rule(spec: SboSpec, npts: int) -> QuadratureRule:
    """Quadrature for the probability-like weight on X (dmu_Lambda or dmu_alpha)."""
    if spec.geometry == "TensorSimplex":
        return simplex_rule(spec.n - 1, [float(x) for x in spec.lams], npts)
    return ball_rule(spec.p, float(spec.alpha), npts)


def pol_k_defect(spec: SboSpec) -> float:
    """max |<P, m>| / (|P| |m|) over monomials m of lower degree."""
    poly, k = spec.poly, spec.degree
    rule = strat_rule(spec, k + 1)
    pv = poly.evaluate(rule.nodes)
    p_norm = math.sqrt(integrate(lambda _: pv * pv, rule))
    worst = 0.0
    for deg in range(k):
        for exps in multi_indices(poly.nvars, deg):
            mono = MultiPoly.monomial(exps)
            mv = mono.evaluate(rule.nodes)
            m_norm = math.sqrt(integrate(lambda _: mv * mv, rule))
            worst = max(worst, abs(integrate(lambda _: pv * mv, rule)) / (p_norm * m_norm))
    return worst


def _as_cone_points(spec: SboSpec, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if spec.geometry == "TensorSimplex" and x.ndim == 1:
        x = x[:, None]
    if x.ndim == 1:
        x = x[None, :]
    if x.shape[-1] != spec.cone_dim:
        raise ValueError("sample points have the wrong dimension")
    return x


def _default_npts(spec: SboSpec, f, npts: int | None) -> int:
    need = None
    if isinstance(f, StratFunction) and f.v_degree is not None:
        need = (f.v_degree + spec.degree) // 2 + 1
    if npts is None:
        return max(need or 0, spec.degree + 4, 8)
    if need is not None and npts < need:
        warnings.warn(f"{npts} points do not integrate degree {f.v_degree + spec.degree} exactly", ResolutionWarning, stacklevel=3)
    return npts


def sbo_apply(spec: SboSpec, f, x_samples, npts: int | None = None) -> np.ndarray:
    """Psi f at the given cone points (TensorSimplex / LorentzBall)."""
    if spec.geometry == "LorentzBallSO_p":
        raise ValueError("use sbo_so_p for the SO(p) geometry")
    x = _as_cone_points(spec, x_samples)
    rule = strat_rule(spec, _default_npts(spec, f, npts))
    pw = spec.poly.evaluate(rule.nodes) * rule.weights
    values = np.asarray(f(x[:, None, :], rule.nodes[None, :, :]))
    projected = values @ pw
    det = spec.cone_det(x)
    power = -spec.degree if spec.geometry == "TensorSimplex" else -spec.degree / 2
    return projected * np.power(det, power)


def holo_apply(spec: SboSpec, g: Callable) -> StratFunction:
    """The holographic (multiplication) operator.

    TensorSimplex: P(v) t^k g(t); LorentzBall: P(v) Q(x)^{k/2} g(x);
    LorentzBallSO_p: Q(x)^{l/2} P_j(2|v|^2 - 1) g(x, v), g harmonic in its second slot.
    """
    if spec.geometry == "LorentzBallSO_p":
        radial = _so_p_radial(spec)

        def evaluator(x, v):
            x = np.asarray(x, dtype=float)
            v = np.asarray(v, dtype=float)
            q = spec.cone_det(x)
            r2 = np.sum(v * v, axis=-1)
            return np.power(q, spec.degree / 2) * radial.evaluate((2 * r2 - 1)[..., None]) * g(x, v)

        return StratFunction(evaluator, None, None, "holographic SO(p)")
    power = spec.degree if spec.geometry == "TensorSimplex" else spec.degree / 2

    def evaluator(x, v):
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        return spec.poly.evaluate(v) * np.power(spec.cone_det(x), power) * g(x)

    return StratFunction(evaluator, None, None, "holographic")


# SO(p) refinement

def _so_p_radial(spec: SboSpec) -> MultiPoly:
    d = spec.harmonic_degree
    return jacobi_poly(spec.block, spec.lam - Fraction(spec.n, 2), Fraction(d) + Fraction(spec.p - 2, 2))


def so_p_gamma(spec: SboSpec) -> float:
    """gamma = 2^{(l-2j+lam+(p-n)/2+1)/2} / |P_j| with the Jacobi norm on (-1, 1)."""
    d = spec.harmonic_degree
    lam, n, p = float(spec.lam), spec.n, spec.p
    norm = math.sqrt(jacobi_norm2(spec.block, lam - n / 2, d + (p - 2) / 2))
    return 2 ** ((d + lam + (p - n) / 2 + 1) / 2) / norm


def sphere_area(p: int) -> float:
    """Surface area of S^{p-1}."""
    return 2 * math.pi ** (p / 2) / math.gamma(p / 2)


def so_p_adjoint_constant(spec: SboSpec) -> float:
    """kappa with <Psi_{l,j} f, g> = kappa <f, Phi_{l,j} g> (surface measure on the sphere)."""
    return so_p_gamma(spec) * sphere_area(spec.p)


def so_p_block_coefficient(spec: SboSpec) -> float:
    """c with Psi_{l,j}(Q^a P_{j,kappa}) = c Q^{a - l/2} Y_kappa, in dmu_alpha normalization."""
    d = spec.harmonic_degree
    lam, n, p = float(spec.lam), spec.n, spec.p
    radial = 2 ** (-(p / 2 + d + lam - n / 2 + 1)) * jacobi_norm2(spec.block, lam - n / 2, d + (p - 2) / 2)
    return so_p_gamma(spec) * sphere_area(p) * 2 ** (-p / 2) * radial


def sbo_so_p(spec: SboSpec, f, x_samples, u_samples, npts: int | None = None) -> np.ndarray:
    """Psi_{l,j} f on the grid x_samples x u_samples, shape (M, U)."""
    if spec.geometry != "LorentzBallSO_p":
        raise ValueError("sbo_so_p needs a LorentzBallSO_p spec")
    x = _as_cone_points(spec, x_samples)
    u = np.atleast_2d(np.asarray(u_samples, dtype=float))
    rule = strat_rule(spec, _default_npts(spec, f, npts))
    v = rule.nodes
    radial = _so_p_radial(spec).evaluate((2 * np.sum(v * v, axis=1) - 1)[:, None])
    kernel = harmonic_kernel(spec.p, spec.harmonic_degree, u[:, None, :], v[None, :, :])
    values = np.asarray(f(x[:, None, :], v[None, :, :]))
    projected = (values * (radial * rule.weights)) @ kernel.T
    return so_p_gamma(spec) * projected * np.power(spec.cone_det(x), -spec.degree / 2)[:, None]


# inner products and adjointness

def _cone_rule(spec: SboSpec, shift: float, decay: float, npts: int):
    """Nodes/weights for int_{Omega_1} F(x) det^{base + shift} dx; returns (x, w, det-weight power)."""
    if spec.geometry == "TensorSimplex":
        a = float(spec.total) - 1 + shift
        rule = gauss_laguerre_rule(npts, a)
        x = rule.nodes[:, None] / decay
        w = rule.weights / decay ** (a + 1) * np.exp(rule.nodes)
        return x, w
    m = spec.n - spec.p
    lam_rule = float(spec.lam) + shift
    rule = lorentz_cone_rule(m, lam_rule, decay / 2, npts)
    x = rule.nodes
    w = rule.weights * np.exp(decay * x[:, 0])
    return x, w


def _sphere_rule(p: int, degree: int, npts: int):
    """Nodes and weights so that sum w h(node) = int_{S^{p-1}} h dsigma for h homogeneous of the given degree."""
    rule = ball_rule(p, 0.5, npts)
    return rule.nodes, rule.weights * 2 ** (p / 2) * (degree + p)


def target_inner(spec: SboSpec, F: Callable, G: Callable | None, decay: float, npts: int = 16) -> complex:
    """<F, G> on the target space; ``decay`` is the combined exponential rate of F conj(G).

    ``G=None`` gives <F, F>, calling F only in its own (grid) form.

    TensorSimplex: int F conj(G) t^{|Lambda|+2k-1} dt. Lorentz geometries:
    int F conj(G) Q^{lam+k-(n-p)/2} dx, with the sphere integral for SO(p).
    """
    k = spec.degree
    shift = k if spec.geometry == "TensorSimplex" else k / 2
    # split det^{k...} off the weight so that polynomial integrands stay polynomial
    x, w = _cone_rule(spec, shift, decay, npts)
    extra = np.power(spec.cone_det(x), k if spec.geometry == "TensorSimplex" else k / 2)
    if spec.geometry == "LorentzBallSO_p":
        u, uw = _sphere_rule(spec.p, 2 * spec.harmonic_degree, npts)
        f_vals = np.asarray(F(x, u))
        g_vals = f_vals if G is None else np.asarray(G(x[:, None, :], u[None, :, :]))
        inner = (f_vals * np.conj(g_vals)) @ uw
    else:
        f_vals = np.asarray(F(x))
        g_vals = f_vals if G is None else np.asarray(G(x))
        inner = f_vals * np.conj(g_vals)
    return complex(np.sum(w * extra * inner))


def source_inner(spec: SboSpec, f: Callable, h: Callable, decay: float, npts: int = 16) -> complex:
    """<f, h> on L^2(Omega_1, det^{base}) (x) L^2(X, dmu)."""
    k = spec.degree
    shift = k if spec.geometry == "TensorSimplex" else k / 2
    x, w = _cone_rule(spec, shift, decay, npts)
    reduce = np.power(spec.cone_det(x), -k if spec.geometry == "TensorSimplex" else -k / 2)
    rule = strat_rule(spec, npts)
    vals = np.asarray(f(x[:, None, :], rule.nodes[None, :, :])) * np.conj(np.asarray(h(x[:, None, :], rule.nodes[None, :, :])))
    return complex(np.sum(w * reduce * (vals @ rule.weights)))


def adjointness_defect(spec: SboSpec, f: StratFunction, g: Callable, g_decay: float, npts: int = 16) -> tuple[float, complex, complex]:
    """Defect of <Psi f, g>_target = kappa <f, Phi g>_source relative to |Psi f| |g|.

    kappa is 1 except in the SO(p) geometry where it is gamma |S^{p-1}|.
    """
    decay = (f.decay or 0.0) + g_decay
    if decay <= 0:
        raise ValueError("the pairing needs a positive total decay rate")
    if spec.geometry == "LorentzBallSO_p":
        def psi(x, u):
            return sbo_so_p(spec, f, x, u, npts)
        kappa = so_p_adjoint_constant(spec)
    else:
        def psi(x):
            return sbo_apply(spec, f, x, npts)
        kappa = 1.0
    lhs = target_inner(spec, psi, g, decay, npts)
    rhs = kappa * source_inner(spec, f, holo_apply(spec, g), decay, npts)
    # Cauchy-Schwarz scale, so pairs whose inner product cancels to ~0 are not judged on rounding noise
    psi_norm2 = abs(target_inner(spec, psi, None, 2 * (f.decay or 0.0), npts))
    if spec.geometry == "LorentzBallSO_p":
        g_grid = lambda x, u: g(x[:, None, :], np.asarray(u)[None, :, :])
    else:
        g_grid = g
    g_norm2 = abs(target_inner(spec, g_grid, None, 2 * g_decay, npts))
    scale = max(abs(lhs), abs(rhs), math.sqrt(psi_norm2 * g_norm2), 1e-300)
    return abs(lhs - rhs) / scale, lhs, rhs


# exact Bessel intertwining (the "if and only if" direction)

def bessel_intertwining_residual(spec: SboSpec, power, poly: MultiPoly | None = None) -> list[PowPolyFunction]:
    """Exact residual of the n-bar intertwining identity on det^power P(v).

    TensorSimplex: t^{-k} B_strat(t^a P) - B_{|Lambda|+2k}(t^{a-k} P).
    Lorentz geometries: Q^{-k/2} B_strat(Q^a P) - B^{(n-p)}_{lam+k}(Q^{a-k/2} P), componentwise.
    All components vanish identically iff P satisfies the eigen-equation of its degree.
    """
    a = as_fraction(power)
    if poly is None:
        poly = spec.poly
    if poly is None:
        raise ValueError("a polynomial is required")
    k = poly.degree()
    if spec.geometry == "TensorSimplex":
        nv = spec.n
        t = MultiPoly.variable(nv, 0)
        pv = poly.embed(nv, list(range(1, nv)))
        f = PowPolyFunction(t, {a: pv})
        lhs = strat_bessel_tensor(spec.lams, f).shift_mu(-k)
        rhs = bessel_apply(DiffOperatorSpec.bessel_rank1(spec.total + 2 * k), PowPolyFunction(t, {a - k: pv}))
        return [lhs - rhs]
    n, p = spec.n, spec.p
    m = n - p
    xs = MultiPoly.variables(n)
    q = xs[0] * xs[0]
    for i in range(1, m):
        q = q - xs[i] * xs[i]
    pv = poly.embed(n, list(range(m, n)))
    f = PowPolyFunction(q, {a: pv})
    lhs = [c.shift_mu(Fraction(-k, 2)) for c in strat_bessel_lorentz(spec.lam, n, p, f)]
    rhs = jordan_bessel(jd.Lorentz(m), spec.lam + k, PowPolyFunction(q, {a - Fraction(k, 2): pv}))
    return [x - y for x, y in zip(lhs, rhs)]


# commuting diagrams

def jacobi_transform(lam_a, lam_b, k: int, g: Callable, y: np.ndarray, npts: int = 24) -> np.ndarray:
    """T_k^{lam_b, lam_a} g(y) = y_1^{-k} int g(iota(y, w)) P_k^{(lam_b-1, lam_a-1)}(w) (1+w)^{lam_a-1} (1-w)^{lam_b-1} dw.

    iota(y, w) = (y_1 (1+w)/2, y_1 (1-w)/2, y_2, ...). ``g`` takes points of shape (..., len(y)+1).
    """
    y = np.atleast_2d(np.asarray(y, dtype=float))
    rule = gauss_jacobi_rule(npts, float(lam_b) - 1, float(lam_a) - 1)
    jac = jacobi_poly(k, as_fraction(lam_b) - 1, as_fraction(lam_a) - 1).evaluate(rule.nodes[:, None])
    w = rule.nodes
    y1 = y[:, :1]
    pts = np.concatenate(
        [
            (y1 * (1 + w) / 2)[..., None],
            (y1 * (1 - w) / 2)[..., None],
            np.broadcast_to(y[:, None, 1:], (y.shape[0], w.size, y.shape[1] - 1)),
        ],
        axis=-1,
    )
    values = np.asarray(g(pts))
    return (values @ (jac * rule.weights)) * y[:, 0] ** (-k)


def _simplex_marginal(lams, kvec, f: Callable, t: np.ndarray, npts: int, absolute: bool = False) -> np.ndarray:
    """^{(n)}Psi_k^Lambda of f o theta_n at the radii t (of |f| |R| when ``absolute``)."""
    n = len(lams)
    if n == 1:
        values = np.asarray(f(t[:, None]))
        return np.abs(values) if absolute else values
    rule = simplex_rule(n - 1, [float(x) for x in lams], npts)
    basis = simplex_basis(n - 1, [as_fraction(x) for x in lams], kvec).evaluate(rule.nodes)
    values = np.asarray(f(simplex_chart_forward(t[:, None], rule.nodes[None, :, :])))
    if absolute:
        values, basis = np.abs(values), np.abs(basis)
    return (values @ (basis * rule.weights)) * t ** (-sum(kvec))


def verify_diagram_tensor(lams, kvec, f: Callable, t_samples, npts: int = 16) -> tuple[float, np.ndarray, np.ndarray]:
    """Two paths of the tensor-product diagram; returns (relative defect, path I, path II).

    Path I is ^{(n)}Psi_k^Lambda o theta_n^*; path II is ^{(n-1)}Psi_{k'}^{Lambda'} o theta_{n-1}^*
    o T_{k_1}^{lam_2, lam_1} o iota_{n-1,n}^*, with Lambda' = (lam_1+lam_2+2k_1, lam_3, ...)
    and k' = (k_2, ...). The identity is path II = 2^{lam_1+lam_2-1} path I.
    """
    lams = [as_fraction(x) for x in lams]
    kvec = list(kvec)
    n = len(lams)
    if len(kvec) != n - 1:
        raise ValueError("need an (n-1)-index")
    t = np.asarray(t_samples, dtype=float)
    path_one = _simplex_marginal(lams, kvec, f, t, npts)
    reduced = [lams[0] + lams[1] + 2 * kvec[0]] + lams[2:]

    def transformed(y):
        flat = y.reshape(-1, y.shape[-1])
        return jacobi_transform(lams[0], lams[1], kvec[0], f, flat, npts).reshape(y.shape[:-1])

    path_two = _simplex_marginal(reduced, kvec[1:], transformed, t, npts)
    const = 2 ** float(lams[0] + lams[1] - 1)
    # measure the defect against the absolute integral, so orthogonal inputs do not divide 0 by 0
    scale = max(float(np.max(const * _simplex_marginal(lams, kvec, f, t, npts, absolute=True))), 1e-300)
    return float(np.max(np.abs(path_two - const * path_one)) / scale), path_one, path_two


def verify_diagram_conform(n: int, lam: int, l: int, f: Callable, g: Callable, x_samples, z_samples, npts: int = 24) -> tuple[float, float]:
    """Defects of the two commuting triangles of the conformal (p = 1) diagram.

    First: c_1 D_hat f = Theta^{-1} P_l iota^* f on Omega_{n-1}, c_1 = 2^{-1/2} i^l / |C_l^alpha|.
    Second: (iota^*)^{-1} Theta g = c_2 phi g on Omega_n, c_2 = 1 / |C_l^alpha|.
    Norms are taken in L^2((-1,1), dmu_alpha), alpha = lam - (n-1)/2.
    """
    alpha = Fraction(2 * lam - n + 1, 2)
    norm = math.sqrt(2 ** -0.5 * gegenbauer_norm2(l, float(alpha)))
    geg = gegenbauer(l, alpha)
    x = np.atleast_2d(np.asarray(x_samples, dtype=float))
    q = x[:, 0] ** 2 - np.sum(x[:, 1:] ** 2, axis=1)
    root = np.sqrt(q)

    def lifted(nodes):
        pts = np.concatenate([np.broadcast_to(x[:, None, :], (x.shape[0], nodes.size, n - 1)), (-root[:, None] * nodes[None, :])[..., None]], axis=-1)
        return np.asarray(f(pts))

    # direct operator with the raw (1 - v^2)^{lam - n/2} weight
    raw = gauss_jacobi_rule(npts, lam - n / 2, lam - n / 2)
    d_hat = (1j) ** (-l) * q ** (-l / 2) * (lifted(raw.nodes) @ (geg.evaluate(raw.nodes[:, None]) * raw.weights))
    c1 = 2 ** -0.5 * (1j) ** l / norm
    # projection in the stratified model with dmu_alpha
    ball = ball_rule(1, float(alpha), npts)
    bn = ball.nodes[:, 0]
    lifted_ball = lifted(bn)
    geg_ball = geg.evaluate(ball.nodes) * ball.weights
    theta_inv = q ** (-l / 2) * (lifted_ball @ geg_ball) / norm
    scale = np.max(q ** (-l / 2) * (np.abs(lifted_ball) @ np.abs(geg_ball)) / norm)
    first = float(np.max(np.abs(c1 * d_hat - theta_inv)) / max(scale, 1e-300))

    z = np.atleast_2d(np.asarray(z_samples, dtype=float))
    zp = z[:, : n - 1]
    qz = zp[:, 0] ** 2 - np.sum(zp[:, 1:] ** 2, axis=1)
    infl = inflated_gegenbauer(l, alpha)
    phi = infl.evaluate(np.column_stack([qz, -z[:, -1]])) * np.asarray(g(zp))
    v = -z[:, -1] / np.sqrt(qz)
    theta_g = qz ** (l / 2) * np.asarray(g(zp)) * geg.evaluate(v[:, None]) / norm
    second = float(np.max(np.abs(theta_g - phi / norm)) / max(np.max(np.abs(theta_g)), 1e-300))
    return first, second


# parabolic generators

def sample_cone_points(spec_or_dim, count: int, seed: int = 0) -> np.ndarray:
    """Deterministic interior points: log-spaced radii, random directions inside the unit ball."""
    dim = spec_or_dim.cone_dim if isinstance(spec_or_dim, SboSpec) else int(spec_or_dim)
    rng = np.random.default_rng(seed)
    radii = np.geomspace(0.2, 4.0, count)
    if dim == 1:
        return radii[:, None]
    dirs = rng.normal(size=(count, dim - 1))
    dirs *= (rng.uniform(0, 0.8, size=count) / np.linalg.norm(dirs, axis=1))[:, None]
    return radii[:, None] * np.column_stack([np.ones(count), dirs])


def verify_parabolic_intertwine(spec: SboSpec, kind: str, element, f: StratFunction, x_samples, u_samples=None, npts: int | None = None) -> float:
    """Relative defect |Psi(S(g) f) - pi(g) Psi f| on samples.

    ``kind``: "translation" (u in V_1), "dilation" (a > 0), "structure" (a Lorentz
    transformation of the small cone, Lorentz geometries) or "rotation" (R in SO(p), SO(p)
    geometry only).
    """
    x = _as_cone_points(spec, x_samples)
    so_p = spec.geometry == "LorentzBallSO_p"
    if so_p and u_samples is None:
        raise ValueError("the SO(p) geometry needs sphere samples")

    def psi(func, pts, us=None):
        if so_p:
            return sbo_so_p(spec, func, pts, u_samples if us is None else us, npts)
        return sbo_apply(spec, func, pts, npts)

    base = psi(f, x)
    if kind == "translation":
        u = np.atleast_1d(np.asarray(element, dtype=float))

        def moved(xx, vv):
            return np.exp(1j * spec.cone_pairing(np.asarray(xx), u)) * f(xx, vv)

        lhs = psi(StratFunction(moved, f.v_degree, f.decay), x)
        phase = np.exp(1j * spec.cone_pairing(x, u))
        rhs = phase[:, None] * base if so_p else phase * base
    elif kind == "dilation":
        a = float(element)
        s_src = spec.source_dilation_exponent()

        def moved(xx, vv):
            return a**s_src * f(a * np.asarray(xx), vv)

        lhs = psi(StratFunction(moved, f.v_degree, f.decay), x)
        rhs = a ** spec.target_dilation_exponent() * psi(f, a * x)
    elif kind == "structure":
        if spec.geometry == "TensorSimplex":
            raise ValueError("the structure group of R_+ consists of dilations only")
        h = np.asarray(element, dtype=float)
        h_inv = np.linalg.inv(h)

        def moved(xx, vv):
            return f(np.asarray(xx) @ h_inv.T, vv)

        lhs = psi(StratFunction(moved, f.v_degree, f.decay), x)
        rhs = psi(f, x @ h_inv.T)
    elif kind == "rotation":
        if not so_p:
            raise ValueError("SO(p) rotations act on the SO(p) geometry only")
        rot = np.asarray(element, dtype=float)
        r_inv = rot.T

        def moved(xx, vv):
            return f(xx, np.asarray(vv) @ r_inv.T)

        lhs = psi(StratFunction(moved, f.v_degree, f.decay), x)
        rhs = psi(f, x, np.atleast_2d(u_samples) @ r_inv.T)
    else:
        raise ValueError(f"unknown group element kind {kind!r}")
    scale = max(float(np.max(np.abs(base))), float(np.max(np.abs(rhs))), 1e-300)
    return float(np.max(np.abs(lhs - rhs)) / scale)


# multiplicities

def branching_table(geometry: str, dim: int, degree_cap: int) -> list[dict]:
    """Multiplicity rows for k = 0..degree_cap.

    ``TensorSimplex`` with dim = n: multiplicity C(n+k-2, n-2), cross-checked against the
    number of multi-indices of the orthogonal basis. ``LorentzBall`` with dim = p:
    C(p+k-1, p-1). ``LorentzBallSO_p`` with dim = p: the harmonic refinement
    [dim H^p_{k-2j}] with dimensions counted from an explicit basis.
    """
    rows = []
    for k in range(degree_cap + 1):
        if geometry == "TensorSimplex":
            closed = math.comb(dim + k - 2, dim - 2)
            counted = len(multi_indices(dim - 1, k))
            rows.append({"k": k, "multiplicity": closed, "basis_count": counted, "match": closed == counted})
        elif geometry == "LorentzBall":
            closed = math.comb(dim + k - 1, dim - 1)
            counted = len(multi_indices(dim, k))
            rows.append({"k": k, "multiplicity": closed, "basis_count": counted, "match": closed == counted})
        elif geometry == "LorentzBallSO_p":
            closed = math.comb(dim + k - 1, dim - 1)
            dims = [harmonic_dim(dim, k - 2 * j) for j in range(k // 2 + 1)]
            counted = [len(harmonic_basis(dim, k - 2 * j)) for j in range(k // 2 + 1)]
            rows.append({
                "k": k, "multiplicity": closed, "harmonic_dims": dims, "basis_counts": counted,
                "match": dims == counted and sum(dims) == closed,
            })
        else:
            raise ValueError(f"unknown geometry {geometry!r}")
    return rows
