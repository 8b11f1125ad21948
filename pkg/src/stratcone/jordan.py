"""Euclidean Jordan algebras: rank-one products R^p, Lorentz algebras, Sym(n), direct sums.

Coordinates:

* ``Rank1Product(p)``: R^p with the componentwise product.
* ``Lorentz(n)``: x = (x_1, u) in R x R^{n-1}, product (x, u)(y, v) = (xy + <u,v>, xv + yu).
  The trace form is (a|b) = tr(ab) = 2 a.b, so the Gram matrix is 2 I.
* ``SymMatrices(n)``: packed upper triangle, row by row, off-diagonal entries scaled by
  sqrt(2), so the trace form is the coordinate dot product.
* ``DirectSum``: concatenation of the summands' coordinates.

Geometry is done in floating point. Exact structure constants (for the polynomial
Bessel operators) are available for algebras built from rank-one and Lorentz pieces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

__all__ = [
    "AlgebraDescriptor",
    "Rank1Product",
    "Lorentz",
    "SymMatrices",
    "DirectSum",
    "JordanElement",
    "JordanError",
    "identity",
    "element",
    "product",
    "lmap",
    "quad_rep",
    "quad_rep_polarized",
    "box",
    "trace",
    "det",
    "inner",
    "gram_matrix",
    "spectral_rank2",
    "sqrt",
    "power",
    "inverse",
    "in_cone",
    "polar_decompose",
    "lorentz_boost",
    "random_cone_point",
    "structure_constants",
]

_SQRT2 = math.sqrt(2.0)


class JordanError(ValueError):
    """Domain error: algebra mismatch, point outside the cone, singular element."""


@dataclass(frozen=True)
class AlgebraDescriptor:
    kind: str
    size: int = 0
    summands: tuple = ()

    def __post_init__(self):
        if self.kind not in {"rank1", "lorentz", "sym", "sum"}:
            raise JordanError(f"unknown algebra kind {self.kind!r}")
        if self.kind == "sum":
            if not self.summands:
                raise JordanError("direct sum needs at least one summand")
        elif self.size < 1:
            raise JordanError("algebra size must be positive")
        if self.kind == "lorentz" and self.size < 2:
            raise JordanError("Lorentz(n) needs n >= 2")

    @property
    def n(self) -> int:
        if self.kind == "rank1":
            return self.size
        if self.kind == "lorentz":
            return self.size
        if self.kind == "sym":
            return self.size * (self.size + 1) // 2
        return sum(s.n for s in self.summands)

    @property
    def r(self) -> int:
        if self.kind == "rank1":
            return self.size
        if self.kind == "lorentz":
            return 2
        if self.kind == "sym":
            return self.size
        return sum(s.r for s in self.summands)

    @property
    def d(self) -> int:
        if self.kind == "rank1":
            return 0
        if self.kind == "lorentz":
            return self.size - 2
        if self.kind == "sym":
            return 1
        ds = {s.d for s in self.summands}
        if len(ds) != 1:
            raise JordanError("Peirce dimension undefined for mixed direct sums")
        return ds.pop()

    @property
    def m(self) -> Fraction:
        return Fraction(self.n, self.r)

    @property
    def is_simple(self) -> bool:
        return self.kind in {"lorentz", "sym"} or (self.kind == "rank1" and self.size == 1)

    @property
    def parts(self) -> tuple["AlgebraDescriptor", ...]:
        """Simple summands (rank-one products split into copies of R)."""
        if self.kind == "sum":
            out = []
            for s in self.summands:
                out.extend(s.parts)
            return tuple(out)
        if self.kind == "rank1":
            return tuple(Rank1Product(1) for _ in range(self.size))
        return (self,)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        offs, pos = [], 0
        for s in self.parts:
            offs.append(pos)
            pos += s.n
        return tuple(offs)

    def __str__(self):
        if self.kind == "rank1":
            return f"Rank1Product({self.size})"
        if self.kind == "lorentz":
            return f"Lorentz({self.size})"
        if self.kind == "sym":
            return f"SymMatrices({self.size})"
        return "DirectSum(" + ", ".join(str(s) for s in self.summands) + ")"


def Rank1Product(p: int) -> AlgebraDescriptor:
    return AlgebraDescriptor("rank1", p)


def Lorentz(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor("lorentz", n)


def SymMatrices(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor("sym", n)


def DirectSum(*summands: AlgebraDescriptor) -> AlgebraDescriptor:
    return AlgebraDescriptor("sum", 0, tuple(summands))


@dataclass(frozen=True)
class JordanElement:
    algebra: AlgebraDescriptor
    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float).copy()
        if coords.shape != (self.algebra.n,):
            raise JordanError(f"{self.algebra} needs {self.algebra.n} coordinates, got {coords.shape}")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    def _same(self, other: "JordanElement"):
        if not isinstance(other, JordanElement) or other.algebra != self.algebra:
            raise JordanError("algebra mismatch")

    def __add__(self, other):
        self._same(other)
        return JordanElement(self.algebra, self.coords + other.coords)

    def __sub__(self, other):
        self._same(other)
        return JordanElement(self.algebra, self.coords - other.coords)

    def __neg__(self):
        return JordanElement(self.algebra, -self.coords)

    def __mul__(self, scalar):
        if isinstance(scalar, JordanElement):
            return product(self, scalar)
        return JordanElement(self.algebra, self.coords * float(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"JordanElement({self.algebra}, {self.coords.tolist()})"


def element(algebra: AlgebraDescriptor, coords: Sequence[float]) -> JordanElement:
    return JordanElement(algebra, np.asarray(coords, dtype=float))


# packed symmetric matrices

def sym_pack(mat: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    out = []
    for i in range(n):
        for j in range(i, n):
            out.append(mat[i, j] if i == j else _SQRT2 * mat[i, j])
    return np.array(out)


def sym_unpack(coords: np.ndarray, n: int) -> np.ndarray:
    mat = np.empty((n, n))
    k = 0
    for i in range(n):
        for j in range(i, n):
            val = coords[k] if i == j else coords[k] / _SQRT2
            mat[i, j] = mat[j, i] = val
            k += 1
    return mat


def _sym_size(alg: AlgebraDescriptor) -> int:
    return alg.size


# raw-array kernels, one per simple kind; direct sums dispatch block by block

def _blocks(alg: AlgebraDescriptor, x: np.ndarray):
    for part, off in zip(alg.parts, alg.offsets):
        yield part, x[off: off + part.n]


def _product(alg: AlgebraDescriptor, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if alg.kind == "rank1":
        return x * y
    if alg.kind == "lorentz":
        out = np.empty_like(x)
        out[0] = x[0] * y[0] + x[1:] @ y[1:]
        out[1:] = x[0] * y[1:] + y[0] * x[1:]
        return out
    if alg.kind == "sym":
        a, b = sym_unpack(x, alg.size), sym_unpack(y, alg.size)
        return sym_pack(0.5 * (a @ b + b @ a))
    return np.concatenate([_product(p, xb, yb) for (p, xb), (_, yb) in zip(_blocks(alg, x), _blocks(alg, y))])


def _identity(alg: AlgebraDescriptor) -> np.ndarray:
    if alg.kind == "rank1":
        return np.ones(alg.size)
    if alg.kind == "lorentz":
        e = np.zeros(alg.size)
        e[0] = 1.0
        return e
    if alg.kind == "sym":
        return sym_pack(np.eye(alg.size))
    return np.concatenate([_identity(p) for p in alg.parts])


def _gram(alg: AlgebraDescriptor) -> np.ndarray:
    if alg.kind == "lorentz":
        return 2.0 * np.eye(alg.n)
    if alg.kind in {"rank1", "sym"}:
        return np.eye(alg.n)
    g = np.zeros((alg.n, alg.n))
    for part, off in zip(alg.parts, alg.offsets):
        g[off: off + part.n, off: off + part.n] = _gram(part)
    return g


def _lmap(alg: AlgebraDescriptor, x: np.ndarray) -> np.ndarray:
    eye = np.eye(alg.n)
    return np.column_stack([_product(alg, x, eye[:, k]) for k in range(alg.n)])


def _quad(alg: AlgebraDescriptor, x: np.ndarray) -> np.ndarray:
    lx = _lmap(alg, x)
    return 2 * lx @ lx - _lmap(alg, _product(alg, x, x))


def _trace(alg: AlgebraDescriptor, x: np.ndarray) -> float:
    if alg.kind == "rank1":
        return float(np.sum(x))
    if alg.kind == "lorentz":
        return float(2 * x[0])
    if alg.kind == "sym":
        return float(np.trace(sym_unpack(x, alg.size)))
    return sum(_trace(p, xb) for p, xb in _blocks(alg, x))


def _det(alg: AlgebraDescriptor, x: np.ndarray) -> float:
    if alg.kind == "rank1":
        return float(np.prod(x))
    if alg.kind == "lorentz":
        return float(x[0] ** 2 - x[1:] @ x[1:])
    if alg.kind == "sym":
        return float(np.linalg.det(sym_unpack(x, alg.size)))
    return float(np.prod([_det(p, xb) for p, xb in _blocks(alg, x)]))


def _in_cone(alg: AlgebraDescriptor, x: np.ndarray) -> bool:
    if alg.kind == "rank1":
        return bool(np.all(x > 0))
    if alg.kind == "lorentz":
        return bool(x[0] > 0 and x[0] ** 2 - x[1:] @ x[1:] > 0)
    if alg.kind == "sym":
        return bool(np.all(np.linalg.eigvalsh(sym_unpack(x, alg.size)) > 0))
    return all(_in_cone(p, xb) for p, xb in _blocks(alg, x))


def _lorentz_frame(x: np.ndarray):
    u = x[1:]
    norm = float(np.sqrt(u @ u))
    if norm == 0.0:
        direction = np.zeros_like(u)
        direction[0] = 1.0
    else:
        direction = u / norm
    c1 = 0.5 * np.concatenate([[1.0], direction])
    c2 = 0.5 * np.concatenate([[1.0], -direction])
    return x[0] + norm, x[0] - norm, c1, c2


def _power(alg: AlgebraDescriptor, x: np.ndarray, s: float) -> np.ndarray:
    """Spectral power x^s (eigenvalues must be positive unless s is an integer)."""
    if alg.kind == "rank1":
        return np.power(x, s)
    if alg.kind == "lorentz":
        l1, l2, c1, c2 = _lorentz_frame(x)
        return np.power(l1, s) * c1 + np.power(l2, s) * c2
    if alg.kind == "sym":
        w, v = np.linalg.eigh(sym_unpack(x, alg.size))
        return sym_pack((v * np.power(w, s)) @ v.T)
    return np.concatenate([_power(p, xb, s) for p, xb in _blocks(alg, x)])


# public API on JordanElement

def identity(algebra: AlgebraDescriptor) -> JordanElement:
    return JordanElement(algebra, _identity(algebra))


def _pair(x: JordanElement, y: JordanElement) -> AlgebraDescriptor:
    if x.algebra != y.algebra:
        raise JordanError(f"algebra mismatch: {x.algebra} vs {y.algebra}")
    return x.algebra


def product(x: JordanElement, y: JordanElement) -> JordanElement:
    alg = _pair(x, y)
    return JordanElement(alg, _product(alg, x.coords, y.coords))


def lmap(x: JordanElement) -> np.ndarray:
    """Matrix of L(x): y -> x y, acting on coordinates."""
    return _lmap(x.algebra, x.coords)


def quad_rep(x: JordanElement) -> np.ndarray:
    """Matrix of the quadratic representation P(x) = 2 L(x)^2 - L(x^2)."""
    return _quad(x.algebra, x.coords)


def quad_rep_polarized(x: JordanElement, y: JordanElement) -> np.ndarray:
    """P(x, y) = L(x)L(y) + L(y)L(x) - L(xy)."""
    alg = _pair(x, y)
    lx, ly = _lmap(alg, x.coords), _lmap(alg, y.coords)
    return lx @ ly + ly @ lx - _lmap(alg, _product(alg, x.coords, y.coords))


def box(x: JordanElement, y: JordanElement) -> np.ndarray:
    """x box y: z -> (xy)z + x(yz) - y(xz)."""
    alg = _pair(x, y)
    lx, ly = _lmap(alg, x.coords), _lmap(alg, y.coords)
    return _lmap(alg, _product(alg, x.coords, y.coords)) + lx @ ly - ly @ lx


def trace(x: JordanElement) -> float:
    return _trace(x.algebra, x.coords)


def det(x: JordanElement) -> float:
    return _det(x.algebra, x.coords)


def gram_matrix(algebra: AlgebraDescriptor) -> np.ndarray:
    """Gram matrix of the trace form (a|b) = tr(ab) in coordinates."""
    return _gram(algebra)


def inner(x: JordanElement, y: JordanElement) -> float:
    alg = _pair(x, y)
    return float(x.coords @ _gram(alg) @ y.coords)


def spectral_rank2(x: JordanElement):
    """Eigenvalues (l1 >= l2) and the Jordan frame (c1, c2) of a Lorentz element."""
    if x.algebra.kind != "lorentz":
        raise JordanError("spectral_rank2 needs a Lorentz algebra")
    l1, l2, c1, c2 = _lorentz_frame(x.coords)
    return (l1, l2), JordanElement(x.algebra, c1), JordanElement(x.algebra, c2)


def in_cone(x: JordanElement) -> bool:
    return _in_cone(x.algebra, x.coords)


def sqrt(x: JordanElement) -> JordanElement:
    if not in_cone(x):
        raise JordanError("square root needs a point of the open cone")
    return JordanElement(x.algebra, _power(x.algebra, x.coords, 0.5))


def power(x: JordanElement, s: float) -> JordanElement:
    """Spectral power; non-integer powers need a cone point."""
    if float(s) != int(s) and not in_cone(x):
        raise JordanError("non-integer power needs a point of the open cone")
    if s < 0 and det(x) == 0:
        raise JordanError("singular element")
    return JordanElement(x.algebra, _power(x.algebra, x.coords, float(s)))


def inverse(x: JordanElement) -> JordanElement:
    alg = x.algebra
    if alg.kind == "lorentz":
        q = _det(alg, x.coords)
        if q == 0:
            raise JordanError("singular element")
        # minimal polynomial x^2 - 2 x_1 x + Q(x) e = 0
        return JordanElement(alg, np.concatenate([[x.coords[0]], -x.coords[1:]]) / q)
    if alg.kind == "rank1":
        if np.any(x.coords == 0):
            raise JordanError("singular element")
        return JordanElement(alg, 1.0 / x.coords)
    if alg.kind == "sym":
        mat = sym_unpack(x.coords, alg.size)
        if np.linalg.det(mat) == 0:
            raise JordanError("singular element")
        return JordanElement(alg, sym_pack(np.linalg.inv(mat)))
    return JordanElement(alg, np.concatenate([inverse(JordanElement(p, xb)).coords for p, xb in _blocks(alg, x.coords)]))


def _sample_rays(alg: AlgebraDescriptor) -> list[np.ndarray]:
    e = _identity(alg)
    rays = [e]
    for k in range(alg.n):
        direction = np.zeros(alg.n)
        direction[k] = 1.0
        for sign in (1.0, -1.0):
            candidate = e + sign * 0.5 * direction / math.sqrt(direction @ _gram(alg) @ direction)
            if _in_cone(alg, candidate):
                rays.append(candidate)
    return rays


def polar_decompose(g: np.ndarray, algebra: AlgebraDescriptor):
    """Split a cone automorphism as g = P(x) k with x = sqrt(g e) and k orthogonal, k e = e."""
    g = np.asarray(g, dtype=float)
    if g.shape != (algebra.n, algebra.n):
        raise JordanError("matrix size does not match the algebra")
    for ray in _sample_rays(algebra):
        if not _in_cone(algebra, g @ ray):
            raise JordanError("map does not preserve the cone")
    ge = JordanElement(algebra, g @ _identity(algebra))
    x = sqrt(ge)
    k = np.linalg.solve(quad_rep(x), g)
    return x, k


def lorentz_boost(n: int, rapidity: float, axis: int = 1) -> np.ndarray:
    """Boost of the Lorentz cone mixing x_1 and x_{axis+1}; preserves Q and the cone."""
    g = np.eye(n)
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    g[0, 0] = g[axis, axis] = ch
    g[0, axis] = g[axis, 0] = sh
    return g


def structure_constants(algebra: AlgebraDescriptor) -> list[list[list[Fraction]]]:
    """Exact constants C[a][b][c] with e_a e_b = sum_c C[a][b][c] e_c.

    Available for algebras assembled from rank-one and Lorentz pieces; Sym(n) has
    irrational constants in the sqrt(2)-scaled packing and is rejected.
    """
    n = algebra.n
    consts = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for part, off in zip(algebra.parts, algebra.offsets):
        if part.kind == "rank1":
            consts[off][off][off] = Fraction(1)
        elif part.kind == "lorentz":
            for a in range(part.n):
                for b in range(part.n):
                    if a == 0:
                        consts[off + a][off + b][off + b] += 1
                    elif b == 0:
                        consts[off + a][off + b][off + a] += 1
                    elif a == b:
                        consts[off + a][off + b][off] += 1
        else:
            raise JordanError("exact structure constants are only available without Sym(n) summands")
    return consts


def exact_gram(algebra: AlgebraDescriptor) -> list[Fraction]:
    """Diagonal of the trace-form Gram matrix (it is diagonal for rank-one/Lorentz pieces)."""
    diag = []
    for part in algebra.parts:
        if part.kind == "rank1":
            diag.append(Fraction(1))
        elif part.kind == "lorentz":
            diag.extend([Fraction(2)] * part.n)
        else:
            raise JordanError("exact Gram matrix unavailable for Sym(n)")
    return diag


def random_cone_point(algebra: AlgebraDescriptor, rng: np.random.Generator, shift: float = 0.2) -> np.ndarray:
    """Coordinates of y^2 + shift e for a standard normal y; always interior for shift > 0."""
    y = rng.normal(size=algebra.n)
    return _product(algebra, y, y) + shift * _identity(algebra)
