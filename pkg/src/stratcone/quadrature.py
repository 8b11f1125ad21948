"""Gaussian rules on the interval, the simplex, the ball and the Lorentz cone.

Interval rules come from the Golub-Welsch eigenvalue problem for the Jacobi
(or Laguerre) three-term recurrence. Simplex and ball rules are tensor products of
interval rules pushed through the iterated maps

    phi(y, u)   = (y1 (1+u)/2, y1 (1-u)/2, y2, ..., y_{n-1})          (simplex)
    theta(x, u) = (x, sqrt(1-|x|^2) u)                                  (ball)

under which the simplex and ball weights split into one-dimensional Jacobi weights.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "QuadratureRule",
    "ResolutionWarning",
    "gauss_jacobi_rule",
    "gauss_laguerre_rule",
    "simplex_rule",
    "ball_rule",
    "lorentz_cone_rule",
    "integrate",
    "simplex_total_weight",
    "ball_total_weight",
    "OSCILLATION_LIMIT",
]

OSCILLATION_LIMIT = 50.0


class ResolutionWarning(UserWarning):
    """Raised (as a warning) when a rule is asked to resolve more than it can."""


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights for a weighted integral.

    ``nodes`` has shape (N,) for interval rules and (N, d) otherwise. ``order`` is the
    polynomial degree integrated exactly (per factor, for mapped product rules).
    """

    domain: str
    params: dict = field(compare=False)
    nodes: np.ndarray = field(compare=False)
    weights: np.ndarray = field(compare=False)
    order: int = 0

    @property
    def size(self) -> int:
        return int(self.weights.shape[0])

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    def to_json_obj(self) -> dict:
        return {
            "domain": self.domain,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "nodes": self.nodes.tolist(),
            "weights": self.weights.tolist(),
        }


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def _golub_welsch(diag: np.ndarray, offdiag: np.ndarray, mu0: float) -> tuple[np.ndarray, np.ndarray]:
    if diag.size == 1:
        return diag.copy(), np.array([mu0])
    nodes, vecs = eigh_tridiagonal(diag, offdiag)
    weights = mu0 * vecs[0, :] ** 2
    return nodes, weights


@lru_cache(maxsize=256)
def _jacobi_nodes(npts: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(npts, dtype=float)
    s = 2 * k + a + b
    diag = np.empty(npts)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag[:] = (b * b - a * a) / (s * (s + 2))
    diag[0] = (b - a) / (a + b + 2)
    kk = np.arange(1, npts, dtype=float)
    ss = 2 * kk + a + b
    beta = np.empty(npts - 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        beta[:] = 4 * kk * (kk + a) * (kk + b) * (kk + a + b) / (ss**2 * (ss + 1) * (ss - 1))
    if npts > 1:
        beta[0] = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
    log_mu0 = (a + b + 1) * math.log(2) + math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2)
    nodes, weights = _golub_welsch(diag, np.sqrt(beta), math.exp(log_mu0))
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_jacobi_rule(npts: int, alpha: float, beta: float) -> QuadratureRule:
    """Gauss rule for the weight (1-v)^alpha (1+v)^beta on (-1, 1)."""
    if npts < 1:
        raise ValueError("npts must be at least 1")
    if alpha <= -1 or beta <= -1:
        raise ValueError("Jacobi parameters must exceed -1")
    nodes, weights = _jacobi_nodes(int(npts), float(alpha), float(beta))
    return QuadratureRule(
        "interval", {"alpha": float(alpha), "beta": float(beta), "npts": npts},
        np.array(nodes), np.array(weights), 2 * npts - 1,
    )


def gauss_laguerre_rule(npts: int, alpha: float) -> QuadratureRule:
    """Gauss rule for the weight s^alpha e^{-s} on (0, inf)."""
    if npts < 1:
        raise ValueError("npts must be at least 1")
    if alpha <= -1:
        raise ValueError("Laguerre parameter must exceed -1")
    k = np.arange(npts, dtype=float)
    diag = 2 * k + alpha + 1
    kk = np.arange(1, npts, dtype=float)
    off = np.sqrt(kk * (kk + alpha))
    nodes, weights = _golub_welsch(diag, off, math.gamma(alpha + 1))
    return QuadratureRule("halfline", {"alpha": float(alpha), "npts": npts}, nodes, weights, 2 * npts - 1)


def simplex_total_weight(lams: Sequence[float]) -> float:
    """Dirichlet integral prod Gamma(lam_i) / Gamma(|lam|)."""
    return math.exp(sum(math.lgamma(x) for x in lams) - math.lgamma(sum(lams)))


def simplex_rule(n: int, lams: Sequence[float], npts: int) -> QuadratureRule:
    """Rule on D_n = {x_i > 0, |x| < 1} for the weight (1-|x|)^{lam_{n+1}-1} prod x_i^{lam_i-1}.

    ``lams`` has n+1 entries. For n = 0 the domain is a point of unit mass.
    """
    lams = [float(x) for x in lams]
    if len(lams) != n + 1:
        raise ValueError(f"simplex D_{n} needs {n + 1} weight parameters")
    if any(x <= 0 for x in lams):
        raise ValueError("simplex parameters must be positive")
    nodes, weights = _simplex_nodes(n, tuple(lams), int(npts))
    return QuadratureRule(
        "simplex", {"n": n, "lams": lams, "npts": npts}, nodes, weights, 2 * npts - 1
    )


def _simplex_nodes(n: int, lams: tuple, npts: int) -> tuple[np.ndarray, np.ndarray]:
    if n == 0:
        return np.zeros((1, 0)), np.ones(1)
    l1, l2 = lams[0], lams[1]
    line = gauss_jacobi_rule(npts, l2 - 1, l1 - 1)
    scale = 2.0 ** (-(l1 + l2 - 1))
    if n == 1:
        return ((1 + line.nodes) / 2)[:, None], line.weights * scale
    inner_nodes, inner_weights = _simplex_nodes(n - 1, (l1 + l2,) + lams[2:], npts)
    y = np.repeat(inner_nodes, line.size, axis=0)
    u = np.tile(line.nodes, inner_nodes.shape[0])
    w = np.repeat(inner_weights, line.size) * np.tile(line.weights, inner_nodes.shape[0]) * scale
    x = np.empty((y.shape[0], n))
    x[:, 0] = y[:, 0] * (1 + u) / 2
    x[:, 1] = y[:, 0] * (1 - u) / 2
    x[:, 2:] = y[:, 1:]
    return x, w


def ball_total_weight(p: int, alpha: float) -> float:
    """Total mass of d mu_alpha = 2^{-p/2} (1-|v|^2)^{alpha-1/2} dv on the unit ball of R^p."""
    return math.exp(
        -p / 2 * math.log(2) + p / 2 * math.log(math.pi)
        + math.lgamma(alpha + 0.5) - math.lgamma(alpha + 0.5 + p / 2)
    )


def ball_rule(p: int, alpha: float, npts: int) -> QuadratureRule:
    """Rule on the unit ball of R^p for d mu_alpha = 2^{-p/2} (1-|v|^2)^{alpha-1/2} dv."""
    if p < 1:
        raise ValueError("ball dimension must be at least 1")
    if alpha <= -0.5:
        raise ValueError("ball parameter must exceed -1/2")
    nodes, weights = _ball_nodes(int(p), float(alpha), int(npts))
    return QuadratureRule("ball", {"p": p, "alpha": float(alpha), "npts": npts}, nodes, weights, 2 * npts - 1)


def _ball_nodes(p: int, alpha: float, npts: int) -> tuple[np.ndarray, np.ndarray]:
    line = gauss_jacobi_rule(npts, alpha - 0.5, alpha - 0.5)
    lw = line.weights * 2.0 ** (-0.5)
    if p == 1:
        return line.nodes[:, None].copy(), lw
    inner_nodes, inner_weights = _ball_nodes(p - 1, alpha + 0.5, npts)
    m = inner_nodes.shape[0]
    x = np.repeat(inner_nodes, line.size, axis=0)
    u = np.tile(line.nodes, m)
    radial = np.sqrt(np.clip(1 - np.sum(x * x, axis=1), 0.0, None))
    nodes = np.column_stack([x, radial * u])
    weights = np.repeat(inner_weights, line.size) * np.tile(lw, m)
    return nodes, weights


def lorentz_cone_rule(n: int, lam: float, decay: float, npts: int, ball_npts: int | None = None) -> QuadratureRule:
    """Rule for  integral over the Lorentz cone of F(x) Q(x)^{lam - n/2} e^{-2 decay x_1} dx.

    ``dx`` is Lebesgue measure in raw coordinates and Q(x) = x_1^2 - |x'|^2. Uses the
    polar chart x = s (1, w), |w| < 1: the s-integral is generalized Gauss-Laguerre and the
    w-integral a ball rule with ``ball_npts`` points per axis (default ``npts``; the node
    count grows like ball_npts^{n-1}). Requires n >= 2 and lam > n/2 - 1.
    """
    if n < 2:
        raise ValueError("Lorentz cone needs n >= 2")
    a = lam - n / 2
    if a <= -1:
        raise ValueError("need lam > n/2 - 1 for integrability")
    radial = gauss_laguerre_rule(npts, 2 * lam - 1)
    s = radial.nodes / (2 * decay)
    sw = radial.weights / (2 * decay) ** (2 * lam)
    ball = ball_rule(n - 1, a + 0.5, npts if ball_npts is None else ball_npts)
    bw = ball.weights * 2.0 ** ((n - 1) / 2)
    mb = ball.size
    svals = np.repeat(s, mb)
    w = np.tile(ball.nodes, (s.size, 1))
    nodes = np.column_stack([svals, svals[:, None] * w])
    weights = np.repeat(sw, mb) * np.tile(bw, s.size)
    return QuadratureRule(
        "lorentz-cone", {"n": n, "lam": lam, "decay": decay, "npts": npts, "ball_npts": ball_npts or npts}, nodes, weights, 2 * npts - 1
    )


def integrate(f: Callable[[np.ndarray], np.ndarray], rule: QuadratureRule):
    """Apply ``rule`` to a vectorized evaluator ``f(nodes)``.

    The weighted values are reduced by numpy's pairwise summation over a contiguous
    array, so the result is bit-stable for fixed inputs.
    """
    values = np.asarray(f(rule.nodes))
    if values.shape[0] != rule.size:
        raise ValueError("evaluator must return one value per node")
    products = np.ascontiguousarray(rule.weights.reshape((-1,) + (1,) * (values.ndim - 1)) * values)
    total = np.sum(products, axis=0)
    return total.item() if np.ndim(total) == 0 else total


def check_oscillation(frequency: float, npts: int) -> None:
    """Warn when an e^{i v x} integrand is beyond the documented resolution range."""
    if abs(frequency) > OSCILLATION_LIMIT or abs(frequency) > npts:
        warnings.warn(
            f"oscillation frequency {frequency} is beyond the resolved range for {npts} points",
            ResolutionWarning,
            stacklevel=3,
        )
