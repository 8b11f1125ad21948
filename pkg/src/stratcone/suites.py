"""Named verification suites, one per acceptance criterion.

Each suite returns a list of ``CheckResult`` records. A check passes when its
``value`` (a defect, or a count of nonzero exact residuals) is at most its
``tolerance``. The CLI and the acceptance tests both drive this registry.
"""

from __future__ import annotations

import fnmatch
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import cones
from . import jordan as jd
from . import operators as ops
from . import orthopoly as op
from . import sbo
from .polyalg import MultiPoly, PowPolyFunction
from .quadrature import ball_rule, integrate, simplex_rule

__all__ = ["CheckResult", "SuiteConfig", "SUITES", "run_suites", "suite_names"]


@dataclass
class CheckResult:
    name: str
    anchor: str
    params: dict
    value: float
    tolerance: float
    gating: bool = True
    runtime_ms: float | None = None

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)

    def to_json_obj(self, timing: bool = False) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "params": self.params,
            "value": float(self.value),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
            "gating": self.gating,
            "runtime_ms": round(self.runtime_ms, 3) if timing and self.runtime_ms is not None else None,
        }


@dataclass
class SuiteConfig:
    seed: int = 0
    order: int | None = None
    tolerances: dict = field(default_factory=dict)

    def rng(self, *salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, *salt])

    def npts(self, default: int) -> int:
        return self.order if self.order is not None else default


class _Recorder:
    """Collects checks, timing each one and applying tolerance overrides."""

    def __init__(self, config: SuiteConfig):
        self.config = config
        self.results: list[CheckResult] = []

    def check(self, name: str, anchor: str, params: dict, compute: Callable[[], float], tolerance: float, gating: bool = True):
        start = time.perf_counter()
        value = float(compute())
        elapsed = (time.perf_counter() - start) * 1e3
        for pattern, tol in self.config.tolerances.items():
            if fnmatch.fnmatchcase(name, pattern):
                tolerance = float(tol)
        self.results.append(CheckResult(name, anchor, _jsonable(params), value, tolerance, gating, elapsed))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    return obj


def _rel(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def _random_fraction(rng, low: float, high: float, den: int = 6) -> Fraction:
    return Fraction(int(rng.integers(math.ceil(low * den) + 1, math.floor(high * den))), den)


def _random_poly(rng, nvars: int, degree: int, nterms: int) -> MultiPoly:
    terms = {}
    for _ in range(nterms):
        deg = int(rng.integers(0, degree + 1))
        cuts = np.sort(rng.integers(0, deg + 1, size=nvars - 1)) if nvars > 1 else np.array([], dtype=int)
        exps = np.diff(np.concatenate([[0], cuts, [deg]])).astype(int)
        terms[tuple(int(e) for e in exps)] = Fraction(int(rng.integers(-4, 5)) or 1, int(rng.integers(1, 4)))
    return MultiPoly(nvars, terms)


def _count_nonzero(residuals) -> float:
    return float(sum(0 if r.is_zero() else 1 for r in residuals))


# 1. Jordan determinant identities

def suite_jordan(rec: _Recorder) -> None:
    algebras = [jd.Lorentz(n) for n in range(3, 7)] + [jd.SymMatrices(n) for n in range(2, 5)]
    for idx, alg in enumerate(algebras):
        rng = rec.config.rng(1, idx)
        xs = [jd.random_cone_point(alg, rng) for _ in range(100)]
        ys = [jd.random_cone_point(alg, rng) for _ in range(100)]
        power = 2 * alg.n / alg.r
        label = f"{alg.kind}({alg.size})"

        def det_quad():
            return max(_rel(np.linalg.det(jd._quad(alg, x)), jd._det(alg, x) ** power) for x in xs)

        def det_of_image():
            return max(
                _rel(jd._det(alg, jd._quad(alg, y) @ x), jd._det(alg, y) ** 2 * jd._det(alg, x))
                for x, y in zip(xs, ys)
            )

        rec.check(f"jordan/det-quad/{label}", "det P(x) = Delta(x)^{2n/r}", {"algebra": label, "points": 100}, det_quad, 1e-10)
        rec.check(f"jordan/det-image/{label}", "Delta(P(y)x) = Delta(y)^2 Delta(x)", {"algebra": label, "points": 100}, det_of_image, 1e-10)


# 2. charts: round trips and Jacobians

def _sample_strat(emb, rng):
    t = jd.random_cone_point(emb.inner, rng) if emb.kind != "scalar_line" else np.array([rng.uniform(0.3, 3.0)])
    _, dv = cones.strat_dims(emb)
    while True:
        if emb.kind == "diagonal_product":
            v = rng.normal(scale=0.12, size=dv)
        else:
            v = rng.normal(size=dv)
            v *= rng.uniform(0.05, 0.85) / np.linalg.norm(v)
        if cones.in_strat_space(emb, v):
            return cones.StratCoords(t, v)


def suite_strat(rec: _Recorder) -> None:
    embeddings = [cones.EqualRankLorentz(n, p) for n in range(3, 7) for p in range(1, 4) if n - p >= 2]
    embeddings += [cones.DiagonalProduct(jd.Rank1Product(1), p) for p in range(2, 6)]
    embeddings += [cones.DiagonalProduct(jd.Lorentz(3), p) for p in range(2, 5)]
    embeddings += [cones.DiagonalProduct(jd.SymMatrices(2), p) for p in range(2, 5)]
    for idx, emb in enumerate(embeddings):
        rng = rec.config.rng(2, idx)
        samples = [_sample_strat(emb, rng) for _ in range(20)]
        label = f"{emb.kind}({emb.inner.kind}{emb.inner.size}->{emb.outer.n})"

        def round_trip():
            worst = 0.0
            for c in samples:
                back = cones.strat_inverse(emb, cones.strat_forward(emb, c))
                scale = max(1.0, float(np.max(np.abs(c.t))))
                worst = max(worst, float(np.max(np.abs(back.t - c.t))) / scale, float(np.max(np.abs(back.v - c.v))))
            return worst

        def jacobian():
            return max(_rel(cones.strat_jacobian_numeric(emb, c), cones.strat_jacobian(emb, c)) for c in samples)

        params = {"embedding": label, "points": len(samples)}
        rec.check(f"strat/round-trip/{label}", "iota^{-1} o iota = id", params, round_trip, 1e-12)
        rec.check(f"strat/jacobian/{label}", "|Jac iota| closed form", params, jacobian, 1e-6)

    for n in range(2, 6):
        rng = rec.config.rng(2, 100 + n)
        ts = rng.uniform(0.3, 3.0, size=20)
        vs = rng.dirichlet(np.ones(n), size=20)[:, : n - 1]

        def round_trip_simplex():
            x = cones.simplex_chart_forward(ts, vs)
            t_back, v_back = cones.simplex_chart_inverse(x)
            return max(float(np.max(np.abs(t_back - ts) / ts)), float(np.max(np.abs(v_back - vs))))

        def jacobian_simplex():
            worst = 0.0
            for t, v in zip(ts, vs):
                z0 = np.concatenate([[t], v])
                h = 1e-5
                jac = np.empty((n, n))
                for i in range(n):
                    step = np.zeros(n)
                    step[i] = h
                    plus = cones.simplex_chart_forward((z0 + step)[0], (z0 + step)[1:])
                    minus = cones.simplex_chart_forward((z0 - step)[0], (z0 - step)[1:])
                    jac[:, i] = (plus - minus) / (2 * h)
                worst = max(worst, _rel(abs(np.linalg.det(jac)), cones.simplex_chart_jacobian(t, n)))
            return worst

        params = {"chart": "simplex", "n": n, "points": 20}
        rec.check(f"strat/round-trip/simplex{n}", "theta_n^{-1} o theta_n = id", params, round_trip_simplex, 1e-12)
        rec.check(f"strat/jacobian/simplex{n}", "|Jac theta_n| = t^{n-1}", params, jacobian_simplex, 1e-6)


# 3. Gamma product and volume identities

def suite_gamma(rec: _Recorder) -> None:
    for p in (2, 3, 4):
        rng = rec.config.rng(3, p)
        for trial in range(3):
            lams = [float(x) for x in rng.uniform(1.0, 4.0, size=p)]

            def product():
                lhs, rhs, _ = cones.gamma_product_identity(lams, npts=rec.config.npts(40))
                return _rel(rhs, lhs)

            rec.check(f"gamma/product/p{p}/{trial}", "prod Gamma(lam_k) = Gamma(|lam|) p^{-(|lam|-1)} I(lam)",
                      {"p": p, "lams": lams}, product, 1e-8)
    rng = rec.config.rng(3, 99)
    for n, p in ((4, 1), (5, 1), (5, 2), (6, 2), (6, 3)):
        lam = float(n - 1 + rng.uniform(0.5, 2.5))

        def volume():
            emb = cones.EqualRankLorentz(n, p)
            lhs = cones.gamma_cone(jd.Lorentz(n), lam)
            rhs = cones.volume_strat_space(emb, lam, rec.config.npts(40)) * cones.gamma_cone(jd.Lorentz(n - p), lam)
            return _rel(rhs, lhs)

        rec.check(f"gamma/volume/lorentz{n}-{p}", "Gamma_{Omega_2} = V_X Gamma_{Omega_1}", {"n": n, "p": p, "lam": lam}, volume, 1e-6)


# 4. orthogonality of the bases

def _gram_defect(polys, rule, blocks=None) -> float:
    """Largest normalized inner product between members of different blocks (default: singletons)."""
    vals = np.array([q.evaluate(rule.nodes) for q in polys])
    gram = (vals * rule.weights) @ vals.T
    diag = np.sqrt(np.abs(np.diag(gram)))
    off = gram / np.outer(diag, diag)
    labels = np.arange(len(polys)) if blocks is None else np.array(blocks)
    off[labels[:, None] == labels[None, :]] = 0.0
    return float(np.max(np.abs(off)))


SIMPLEX_SAMPLES = (
    [Fraction(3, 2), Fraction(5, 2)],
    [Fraction(3, 2), Fraction(2), Fraction(5, 2)],
    [Fraction(7, 3), Fraction(1, 2), Fraction(2), Fraction(3, 4)],
)
BALL_ALPHAS = (Fraction(3, 4), Fraction(2), Fraction(7, 2))


def suite_orthogonality(rec: _Recorder) -> None:
    for lams in SIMPLEX_SAMPLES:
        nv = len(lams) - 1
        rule = simplex_rule(nv, [float(x) for x in lams], rec.config.npts(6))
        for family, build in (("simplex", op.simplex_basis), ("simplex-alt", op.simplex_basis_dunklxu)):
            polys = [build(nv, lams, k) for d in range(5) for k in op.multi_indices(nv, d)]
            rec.check(f"orthogonality/{family}/D{nv}", "R_k^Lambda orthogonal on D_{n-1}",
                      {"lams": lams, "max_degree": 4, "size": len(polys)}, lambda: _gram_defect(polys, rule), 1e-9)
    for p in (1, 2, 3):
        for alpha in BALL_ALPHAS[:2]:
            rule = ball_rule(p, float(alpha), rec.config.npts(6))
            polys = [op.ball_basis(p, alpha, k) for d in range(5) for k in op.multi_indices(p, d)]
            rec.check(f"orthogonality/ball/p{p}/alpha{alpha}", "P_k^alpha orthogonal for dmu_alpha",
                      {"p": p, "alpha": alpha, "max_degree": 4, "size": len(polys)}, lambda: _gram_defect(polys, rule), 1e-9)
    for p, n, lam in ((3, 5, 5), (4, 6, 6)):
        alpha = lam - Fraction(n - 1, 2)
        rule = ball_rule(p, float(alpha), rec.config.npts(6))
        index = [(l, j, kappa) for l in range(5) for j in range(l // 2 + 1) for kappa in range(op.harmonic_dim(p, l - 2 * j))]
        polys = [op.ball_mixed_basis(p, lam, n, l, j, kappa) for l, j, kappa in index]
        blocks = [l * 100 + j for l, j, _ in index]
        rec.check(f"orthogonality/mixed-blocks/p{p}", "W_{l,j} blocks mutually orthogonal",
                  {"p": p, "n": n, "lam": lam, "max_degree": 4}, lambda: _gram_defect(polys, rule, blocks), 1e-9)


# 5. exact factorizations

def suite_factorization(rec: _Recorder) -> None:
    simplex_params = (
        [Fraction(3, 2), Fraction(2), Fraction(5, 2)],
        [Fraction(1, 3), Fraction(7, 4), Fraction(2), Fraction(5, 3)],
        [Fraction(4), Fraction(1, 2), Fraction(9, 5), Fraction(1)],
    )
    for idx, lams in enumerate(simplex_params):
        n = len(lams) - 1
        rec.check(f"factorization/simplex/{idx}", "R_k^Lambda o phi = R_{k'}^{Lambda'} P_{k_1} y_1^{k_1}",
                  {"lams": lams, "max_degree": 4},
                  lambda: _count_nonzero(op.simplex_factorization_residual(n, lams, k) for d in range(5) for k in op.multi_indices(n, d)), 0)
    for p in (2, 3):
        for alpha in BALL_ALPHAS:
            rec.check(f"factorization/ball/p{p}/alpha{alpha}", "P_k^alpha o theta = P_{k'}^{alpha'} (1-|x|^2)^{k_p/2} C_{k_p}^alpha",
                      {"p": p, "alpha": alpha, "max_degree": 4},
                      lambda: _count_nonzero(op.ball_factorization_residual(p, alpha, k) for d in range(5) for k in op.multi_indices(p, d)), 0)


# 6. exact Bessel eigen-identities

def suite_bessel_eigen(rec: _Recorder) -> None:
    for lams in SIMPLEX_SAMPLES:
        for k in range(5):
            rec.check(f"bessel-eigen/simplex/D{len(lams) - 1}/k{k}", "simplex operator eigenvalue -k(k+|Lambda|-1)",
                      {"lams": lams, "k": k}, lambda: _count_nonzero(r for _, r in ops.simplex_residuals(lams, k)), 0)
    for p in (1, 2, 3):
        for alpha in BALL_ALPHAS[:2]:
            for k in range(5):
                rec.check(f"bessel-eigen/ball/p{p}/alpha{alpha}/k{k}", "ball operator eigenvalue -(k+p)(k+2alpha-1)",
                          {"p": p, "alpha": alpha, "k": k}, lambda: _count_nonzero(r for _, r in ops.ball_residuals(alpha, p, k)), 0)
    cases = [(jd.Rank1Product(1), "rank1"), (jd.Rank1Product(2), "rank1x2"), (jd.Lorentz(3), "lorentz3"), (jd.Lorentz(4), "lorentz4")]
    for idx, (alg, label) in enumerate(cases):
        rng = rec.config.rng(6, idx)
        delta, _ = ops.jordan_adjugate(alg)
        poly = _random_poly(rng, alg.n, 3, 4)
        f = PowPolyFunction(delta, {Fraction(1, 3): poly})
        lam = Fraction(7, 2)
        mus = [Fraction(-k, 2) for k in range(1, 5)]
        if alg.kind == "rank1":
            mus += [Fraction(-k) for k in range(1, 5)]
        for mu in mus:
            rec.check(f"bessel-eigen/shift/{label}/mu{mu}", "B_lam(Delta^mu f) = Delta^mu(B_{lam+2mu} f + mu(mu+lam-n/r) x^{-1} f)",
                      {"algebra": label, "mu": mu, "lam": lam},
                      lambda: _count_nonzero(ops.bessel_shift_identity_check(alg, lam, mu, f)), 0)


# 7. stratified Bessel decompositions

def _tensor_case(rng, lams):
    n = len(lams)
    poly = _random_poly(rng, n, 3, 5)
    t = MultiPoly.variable(n, 0)
    return PowPolyFunction(t, {Fraction(1, 3): poly})


def _lorentz_case(rng, n, p):
    m = n - p
    xs = MultiPoly.variables(n)
    q = xs[0] * xs[0]
    for i in range(1, m):
        q = q - xs[i] * xs[i]
    return PowPolyFunction(q, {Fraction(1, 4): _random_poly(rng, n, 3, 5)})


def suite_strat_bessel(rec: _Recorder) -> None:
    tensor_params = [[Fraction(3, 2), Fraction(5, 2)]] + [list(x) for x in SIMPLEX_SAMPLES[1:]]
    tensor_params.append([Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(4, 3), Fraction(3)])
    for idx, lams in enumerate(tensor_params):
        rng = rec.config.rng(7, idx)
        f = _tensor_case(rng, lams)
        n = len(lams)
        label = f"tensor{n}"
        rec.check(f"strat-bessel/exact/{label}", "tensor Bessel operator in (t, v) coordinates",
                  {"lams": lams, "f": repr(f)},
                  lambda: 0.0 if ops.strat_bessel_tensor(lams, f).equals(ops.strat_bessel_tensor_pullback(lams, f)) else 1.0, 0)
        closed = ops.strat_bessel_tensor(lams, f)
        ts = rng.uniform(0.5, 2.0, size=100)
        vs = rng.dirichlet(np.ones(n) * 3, size=100)[:, : n - 1]

        def fd_tensor():
            worst = 0.0
            for t, v in zip(ts, vs):
                numeric = ops.strat_bessel_tensor_fd(lams, lambda s, w: f.evaluate(np.concatenate([[s], w])), t, v)
                worst = max(worst, abs(numeric - closed.evaluate(np.concatenate([[t], v]))))
            return worst

        rec.check(f"strat-bessel/fd/{label}", "tensor Bessel operator vs finite differences",
                  {"lams": lams, "points": 100}, fd_tensor, 1e-5)
    for idx, (n, p) in enumerate(((4, 1), (4, 2), (5, 1), (5, 2), (5, 3))):
        rng = rec.config.rng(7, 100 + idx)
        lam = Fraction(2 * n + 1, 2)
        f = _lorentz_case(rng, n, p)
        label = f"lorentz{n}-{p}"

        def exact_lorentz():
            closed = ops.strat_bessel_lorentz(lam, n, p, f)
            pulled = ops.strat_bessel_lorentz_pullback(lam, n, p, f)
            return float(sum(0 if a.equals(b) else 1 for a, b in zip(closed, pulled)))

        rec.check(f"strat-bessel/exact/{label}", "Lorentz Bessel operator restricted through iota",
                  {"n": n, "p": p, "lam": lam, "f": repr(f)}, exact_lorentz, 0)
        closed = ops.strat_bessel_lorentz(lam, n, p, f)
        m = n - p
        heights = rng.uniform(0.6, 2.0, size=100)
        spatial = rng.normal(size=(100, m - 1))
        spatial *= (heights * rng.uniform(0.0, 0.6, size=100) / np.linalg.norm(spatial, axis=1))[:, None]
        xs = np.column_stack([heights, spatial])
        vs = rng.normal(size=(100, p))
        vs *= (rng.uniform(0, 0.7, size=100) / np.linalg.norm(vs, axis=1))[:, None]

        def fd_lorentz():
            worst = 0.0
            for x, v in zip(xs, vs):
                numeric = ops.strat_bessel_lorentz_fd(float(lam), n, p, lambda a, b: f.evaluate(np.concatenate([a, b])), x, v)
                exact = np.array([c.evaluate(np.concatenate([x, v])) for c in closed])
                worst = max(worst, float(np.max(np.abs(numeric - exact))))
            return worst

        rec.check(f"strat-bessel/fd/{label}", "Lorentz Bessel restriction vs finite differences",
                  {"n": n, "p": p, "points": 100}, fd_lorentz, 1e-5)


# 8. Juhl symbol

def suite_juhl(rec: _Recorder) -> None:
    for alpha in (Fraction(1), Fraction(3, 2), Fraction(7, 3), Fraction(5)):
        rec.check(f"juhl/alpha{alpha}", "Juhl symbol = inflated Gegenbauer I_l C_l^alpha",
                  {"alpha": alpha, "max_l": 8},
                  lambda: float(sum(op.juhl_symbol(l, alpha) != op.inflated_gegenbauer(l, alpha) for l in range(9))), 0)


# 9. integral representations

def suite_integral_reps(rec: _Recorder) -> None:
    rng = rec.config.rng(9)
    xs = (0.5, 1.0, 2.5, 5.0, 7.5, 10.0)
    npts = rec.config.npts(60)
    for trial in range(3):
        a, b = (float(x) for x in rng.uniform(1.0, 4.0, size=2))
        nu = float(rng.uniform(1.0, 4.0))

        def kummer():
            worst = 0.0
            for l in range(6):
                for x in ((0.0,) + xs if l == 0 else xs):
                    lhs, rhs = op.kummer_integral_pair(a, b, l, x, npts)
                    worst = max(worst, abs(lhs - rhs) / abs(lhs))
            return worst

        def fourier():
            worst = 0.0
            for l in range(6):
                for x in ((0.0,) + xs if l == 0 else xs):
                    lhs, rhs = op.gegenbauer_fourier_pair(nu, l, x, npts)
                    worst = max(worst, abs(lhs - rhs) / abs(rhs))
            return worst

        rec.check(f"integral-reps/kummer/{trial}", "Jacobi-weighted Fourier integral = C x^l e^{ix} 1F1",
                  {"alpha": a, "beta": b, "max_l": 5, "x": [0.0, *xs]}, kummer, 1e-8)
        rec.check(f"integral-reps/gegenbauer/{trial}", "Gegenbauer-weighted Fourier integral = c(l;nu) x^l 0F1",
                  {"nu": nu, "max_l": 5, "x": [0.0, *xs]}, fourier, 1e-8)


# 10. commuting diagrams

def _tensor_test_functions(rng, n: int, count: int = 5):
    out = []
    for _ in range(count):
        exps = rng.integers(0, 4, size=n)
        out.append((exps.tolist(), lambda x, e=exps: np.exp(-x.sum(-1)) * np.prod(x ** e, axis=-1)))
    return out


def suite_diagrams(rec: _Recorder) -> None:
    configs = [
        ([Fraction(3, 2), Fraction(5, 2)], [(0,), (1,), (2,), (3,)]),
        ([Fraction(3, 2), Fraction(2), Fraction(5, 2)], [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]),
        ([Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(4, 3)], [(1, 1, 1), (0, 2, 1)]),
    ]
    ts = np.geomspace(0.2, 5.0, 8)
    for idx, (lams, kvecs) in enumerate(configs):
        funcs = _tensor_test_functions(rec.config.rng(10, idx), len(lams))
        for kvec in kvecs:
            rec.check(f"diagrams/tensor/n{len(lams)}/k{''.join(map(str, kvec))}", "(II) = 2^{lam_1+lam_2-1} (I)",
                      {"lams": lams, "k": list(kvec), "test_functions": [e for e, _ in funcs]},
                      lambda: max(sbo.verify_diagram_tensor(lams, kvec, f, ts, rec.config.npts(16))[0] for _, f in funcs), 1e-6)
    for idx, (n, lam) in enumerate(((3, 3), (3, 4), (4, 4), (4, 5))):
        rng = rec.config.rng(10, 50 + idx)
        polys_f = [_random_poly(rng, n, 3, 4) for _ in range(5)]
        polys_g = [_random_poly(rng, n - 1, 2, 3) for _ in range(5)]
        x_samples = sbo.sample_cone_points(n - 1, 6, seed=idx)
        z_samples = sbo.sample_cone_points(n, 6, seed=100 + idx)
        for l in range(4):
            def conform():
                worst = 0.0
                for pf, pg in zip(polys_f, polys_g):
                    f = lambda z, q=pf: np.exp(-z[..., 0]) * q.evaluate(z)
                    g = lambda x, q=pg: np.exp(-x[..., 0]) * q.evaluate(x)
                    worst = max(worst, *sbo.verify_diagram_conform(n, lam, l, f, g, x_samples, z_samples, rec.config.npts(24)))
                return worst

            rec.check(f"diagrams/conform/n{n}/lam{lam}/l{l}", "c_1 D_hat = Theta^{-1} P_l iota^*, (iota^*)^{-1} Theta = c_2 phi",
                      {"n": n, "lam": lam, "l": l, "test_functions": 5}, conform, 1e-6)


# shared SBO fixtures

def _tensor_spec():
    lams = [Fraction(3, 2), Fraction(2), Fraction(5, 2)]
    return sbo.SboSpec.tensor_simplex(lams, op.simplex_basis(2, lams, (1, 1)))


def _ball_spec():
    n, p, lam = 5, 2, 5
    return sbo.SboSpec.lorentz_ball(n, p, lam, op.ball_basis(p, Fraction(lam) - Fraction(n - 1, 2), (1, 1)))


def _rotation(p: int, rng) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(p, p)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def _structure_element(m: int, rng) -> np.ndarray:
    boost = jd.lorentz_boost(m, float(rng.uniform(-0.6, 0.6)), 1)
    if m > 2:
        spatial = np.eye(m)
        spatial[1:, 1:] = _rotation(m - 1, rng)
        boost = spatial @ boost
    return boost


def _kernel_polys(spec) -> list[MultiPoly]:
    if spec.geometry == "LorentzBallSO_p":
        l, j = spec.degree, spec.block
        return [op.ball_mixed_basis(spec.p, spec.lam, spec.n, l, j, kappa) for kappa in range(op.harmonic_dim(spec.p, spec.harmonic_degree))]
    return [spec.poly]


def _random_test_function(spec, rng, decay=0.5):
    """e^{-decay tr x} (q(x) P(v) + r(x, v)) with P the kernel polynomial, so that Psi f is not identically zero."""
    d1 = spec.cone_dim
    nvars = d1 + spec.p
    poly = _random_poly(rng, nvars, 3, 5)
    for kernel in _kernel_polys(spec):
        weight = _random_poly(rng, d1, 2, 2).embed(nvars, list(range(d1)))
        if weight.is_zero():
            weight = MultiPoly.constant(nvars, 1)
        poly = poly + weight * kernel.embed(nvars, list(range(d1, nvars)))
    return sbo.gaussian_poly_function(spec, poly, decay)


# 11. intertwining for the parabolic generators

def suite_intertwining(rec: _Recorder) -> None:
    specs = [("tensor", _tensor_spec()), ("ball", _ball_spec())]
    specs += [(f"so_p/l{l}/j{j}", sbo.SboSpec.lorentz_ball_so_p(5, 3, 5, l, j)) for l in range(5) for j in range(l // 2 + 1)]
    for idx, (label, spec) in enumerate(specs):
        rng = rec.config.rng(11, idx)
        funcs = [_random_test_function(spec, rng) for _ in range(3)]
        x = sbo.sample_cone_points(spec, 8, seed=idx)
        u = None
        if spec.geometry == "LorentzBallSO_p":
            u = rng.normal(size=(6, spec.p))
            u /= np.linalg.norm(u, axis=1)[:, None]
        elements = [("translation", rng.normal(size=spec.cone_dim)), ("dilation", float(rng.uniform(0.5, 2.0)))]
        if spec.geometry != "TensorSimplex":
            elements.append(("structure", _structure_element(spec.cone_dim, rng)))
        if spec.geometry == "LorentzBallSO_p":
            elements.append(("rotation", _rotation(spec.p, rng)))
        for kind, element in elements:
            tol = 1e-9 if kind == "rotation" else 1e-8
            rec.check(f"intertwining/{label}/{kind}", f"Psi o S_lam(g) = pi(g) o Psi ({kind})",
                      {"spec": spec.describe() if spec.poly is None else label, "kind": kind},
                      lambda: max(sbo.verify_parabolic_intertwine(spec, kind, element, f, x, u, rec.config.order) for f in funcs), tol)


# 12. negative controls

def suite_negative_control(rec: _Recorder) -> None:
    tensor = _tensor_spec()
    ball = _ball_spec()
    so_p = sbo.SboSpec.lorentz_ball_so_p(5, 3, 5, 2, 1)
    v2 = MultiPoly.variables(2)
    v3 = MultiPoly.variables(3)
    # W_{l,j} built with the exponent lam - 1/2 instead of lam - n/2 is not orthogonal
    wrong_radial = op.jacobi_poly(1, Fraction(5) - Fraction(1, 2), Fraction(1, 2))
    norm2 = sum((v * v for v in v3), MultiPoly.zero(3))
    wrong = wrong_radial.substitute([norm2 * 2 - MultiPoly.constant(3, 1)])
    cases = [
        ("tensor", tensor, v2[0] ** 2),
        ("tensor-mixed", tensor, v2[0] * v2[1]),
        ("ball", ball, v2[0] ** 2),
        ("ball-mixed", ball, v2[0] * v2[1] + v2[1]),
        ("so_p", so_p, wrong),
    ]
    for label, spec, poly in cases:
        def identity_holds():
            residual = sbo.bessel_intertwining_residual(spec, Fraction(1, 3), poly)
            return 0.0 if any(not r.is_zero() for r in residual) else 1.0

        rec.check(f"negative-control/{label}", "Bessel intertwining fails off Pol_k",
                  {"geometry": spec.geometry, "poly": poly.to_string()}, identity_holds, 0)
    for label, spec in (("tensor", tensor), ("ball", ball)):
        rec.check(f"negative-control/positive/{label}", "Bessel intertwining holds on Pol_k",
                  {"geometry": spec.geometry, "poly": spec.poly.to_string()},
                  lambda: _count_nonzero(sbo.bessel_intertwining_residual(spec, Fraction(1, 3))), 0)
    rec.check("negative-control/positive/so_p", "Bessel intertwining holds on W_{l,j}",
              {"geometry": so_p.geometry},
              lambda: _count_nonzero(r for kappa in range(op.harmonic_dim(3, 0))
                                     for r in sbo.bessel_intertwining_residual(so_p, Fraction(1, 3), op.ball_mixed_basis(3, 5, 5, 2, 1, kappa))), 0)


# 13. adjointness

def suite_adjointness(rec: _Recorder) -> None:
    specs = [("tensor", _tensor_spec()), ("ball", _ball_spec()), ("so_p", sbo.SboSpec.lorentz_ball_so_p(5, 3, 5, 3, 1))]
    for idx, (label, spec) in enumerate(specs):
        rng = rec.config.rng(13, idx)
        pairs = []
        for _ in range(20):
            f = _random_test_function(spec, rng)
            gpoly = _random_poly(rng, spec.cone_dim, 2, 3)
            if spec.geometry == "LorentzBallSO_p":
                harmonics = op.harmonic_basis(spec.p, spec.harmonic_degree)
                coefs = rng.integers(-3, 4, size=len(harmonics))
                g = (lambda x, u, q=gpoly, c=coefs, h=harmonics:
                     np.exp(-spec.cone_trace(x) / 2) * q.evaluate(x) * sum(ci * hi.evaluate(u) for ci, hi in zip(c, h)))
            else:
                g = lambda x, q=gpoly: np.exp(-spec.cone_trace(x) / 2) * q.evaluate(x)
            pairs.append((f, g))
        npts = rec.config.npts(8 if spec.geometry == "LorentzBallSO_p" else 12)
        rec.check(f"adjointness/{label}", "<Psi f, g> = kappa <f, Phi g>",
                  {"geometry": spec.geometry, "pairs": 20, "kappa": sbo.so_p_adjoint_constant(spec) if spec.geometry == "LorentzBallSO_p" else 1.0},
                  lambda: max(sbo.adjointness_defect(spec, f, g, 0.5, npts)[0] for f, g in pairs), 1e-9)


# 14. multiplicities

def suite_branching(rec: _Recorder) -> None:
    for n in range(2, 7):
        rec.check(f"branching/tensor/n{n}", "multiplicity C(n+k-2, n-2)", {"n": n, "max_k": 6},
                  lambda: float(sum(not row["match"] for row in sbo.branching_table("TensorSimplex", n, 6))), 0)
    for p in range(1, 5):
        rec.check(f"branching/ball/p{p}", "multiplicity C(p+k-1, p-1)", {"p": p, "max_k": 6},
                  lambda: float(sum(not row["match"] for row in sbo.branching_table("LorentzBall", p, 6))), 0)
    for p in range(2, 5):
        rec.check(f"branching/so_p/p{p}", "Pol_k = sum_j H^p_{k-2j}", {"p": p, "max_k": 6},
                  lambda: float(sum(not row["match"] for row in sbo.branching_table("LorentzBallSO_p", p, 6))), 0)


# 15. exploratory Hankel involution

def suite_hankel(rec: _Recorder) -> None:
    grid = np.linspace(0.1, 6.0, 12)
    for lam in (1.5, 2.5, 4.0):
        for label, func in (("exp", lambda x: np.exp(-x)), ("x2exp", lambda x: x**2 * np.exp(-x)), ("poly-exp", lambda x: (1 + x - x**3 / 6) * np.exp(-x))):
            rec.check(f"hankel/lam{lam}/{label}", "rho(j)^2 = i^{-2 lam} on the rank-one L^2 model",
                      {"lam": lam, "f": label}, lambda: ops.hankel_involution_defect(lam, func, grid), 1e-3, gating=False)


SUITES: dict[str, tuple[int, Callable[[_Recorder], None]]] = {
    "jordan": (1, suite_jordan),
    "strat": (2, suite_strat),
    "gamma": (3, suite_gamma),
    "orthogonality": (4, suite_orthogonality),
    "factorization": (5, suite_factorization),
    "bessel-eigen": (6, suite_bessel_eigen),
    "strat-bessel": (7, suite_strat_bessel),
    "juhl": (8, suite_juhl),
    "integral-reps": (9, suite_integral_reps),
    "diagrams": (10, suite_diagrams),
    "intertwining": (11, suite_intertwining),
    "negative-control": (12, suite_negative_control),
    "adjointness": (13, suite_adjointness),
    "branching": (14, suite_branching),
    "hankel": (15, suite_hankel),
}


def suite_names() -> list[str]:
    return list(SUITES)


def run_suites(names, config: SuiteConfig | None = None) -> list[CheckResult]:
    """Run the named suites (``"all"`` expands to every suite) in registry order."""
    config = config or SuiteConfig()
    if isinstance(names, str):
        names = [names]
    selected = []
    for name in names:
        if name == "all":
            selected.extend(SUITES)
        elif name in SUITES:
            selected.append(name)
        else:
            raise KeyError(f"unknown suite {name!r}")
    rec = _Recorder(config)
    for name in dict.fromkeys(selected):
        SUITES[name][1](rec)
    return rec.results
