"""Exact sparse multivariate polynomials over the rationals.

Two carriers live here:

* ``MultiPoly``: a sparse polynomial with ``Fraction`` coefficients.
* ``PowPolyFunction``: finite sums ``base**mu * poly`` where ``base`` is a fixed
  polynomial (a Jordan determinant, a trace, ...) and ``mu`` a rational exponent.
  This is the function class on which the Bessel-type operators act in closed form.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "MultiPoly",
    "PowPolyFunction",
    "as_fraction",
    "laplacian",
    "signature_laplacian",
    "euler_operator",
]


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions and decimal strings to ``Fraction``; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, (np.integer,)):
        return Fraction(int(value))
    raise TypeError(f"exact arithmetic needs an int/Fraction/str, got {type(value).__name__}")


def _add_exps(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean: dict[tuple, Fraction] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have length {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = as_fraction(coef)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        self.nvars = nvars
        self.terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    # construction helpers
    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value) -> "MultiPoly":
        c = as_fraction(value)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls._raw(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def variables(cls, nvars: int) -> list["MultiPoly"]:
        return [cls.variable(nvars, i) for i in range(nvars)]

    @classmethod
    def monomial(cls, exps: Sequence[int], coef=1) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): coef})

    @classmethod
    def from_univariate(cls, coeffs: Sequence, nvars: int = 1, index: int = 0) -> "MultiPoly":
        """Polynomial sum_j coeffs[j] * x_index**j."""
        terms = {}
        for power, c in enumerate(coeffs):
            exps = [0] * nvars
            exps[index] = power
            terms[tuple(exps)] = c
        return cls(nvars, terms)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self.terms), default=-1)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def leading_exponent(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms()[0][0]

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, deg: int) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == deg})

    # arithmetic
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other):
        if isinstance(other, PowPolyFunction):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, PowPolyFunction):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, factor) -> "MultiPoly":
        f = as_fraction(factor)
        if not f:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw(self.nvars, {e: c * f for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PowPolyFunction):
            return NotImplemented
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._coerce(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exps(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.scale(1 / as_fraction(other))

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.to_string()})"

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # calculus
    def derivative(self, index: int, order: int = 1) -> "MultiPoly":
        if not 0 <= index < self.nvars:
            raise IndexError(f"variable {index} out of range")
        out = {}
        for exps, c in self.terms.items():
            e = exps[index]
            if e < order:
                continue
            factor = 1
            for j in range(order):
                factor *= e - j
            new = list(exps)
            new[index] = e - order
            out[tuple(new)] = c * factor
        return MultiPoly._raw(self.nvars, out)

    def gradient(self) -> list["MultiPoly"]:
        return [self.derivative(i) for i in range(self.nvars)]

    # composition and re-embedding
    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: replace variable i by ``images[i]`` (all sharing one arity)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return MultiPoly.constant(0, self.constant_term())
        target = images[0].nvars
        if any(img.nvars != target for img in images):
            raise ValueError("images must share one arity")
        power_cache: list[dict[int, MultiPoly]] = [{0: MultiPoly.constant(target, 1)} for _ in images]

        def power(i: int, e: int) -> MultiPoly:
            cache = power_cache[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        result = MultiPoly.zero(target)
        acc: dict[tuple, Fraction] = {}
        for exps, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            for k, v in term.terms.items():
                acc[k] = acc.get(k, Fraction(0)) + v
        result = MultiPoly._raw(target, {k: v for k, v in acc.items() if v})
        return result

    def compose_affine(self, matrix, shift=None) -> "MultiPoly":
        """Return ``x -> p(A x + b)`` where ``A`` is nvars x m (rational entries)."""
        rows = [list(r) for r in matrix]
        if len(rows) != self.nvars:
            raise ValueError("affine map must have one row per variable")
        m = len(rows[0]) if rows else 0
        shift = list(shift) if shift is not None else [0] * self.nvars
        images = []
        for i, row in enumerate(rows):
            terms = {}
            for j, a in enumerate(row):
                exps = [0] * m
                exps[j] = 1
                terms[tuple(exps)] = a
            terms[(0,) * m] = as_fraction(shift[i]) + as_fraction(terms.get((0,) * m, 0))
            images.append(MultiPoly(m, terms))
        return self.substitute(images)

    def embed(self, nvars: int, positions: Sequence[int]) -> "MultiPoly":
        """Re-index: variable i becomes variable ``positions[i]`` of an ``nvars``-ary ring."""
        if len(positions) != self.nvars:
            raise ValueError("need a position per variable")
        out = {}
        for exps, c in self.terms.items():
            new = [0] * nvars
            for i, e in enumerate(exps):
                new[positions[i]] += e
            new = tuple(new)
            out[new] = out.get(new, Fraction(0)) + c
        return MultiPoly._raw(nvars, {k: v for k, v in out.items() if v})

    def restrict(self, keep: Sequence[int]) -> "MultiPoly":
        """Drop variables not in ``keep``; they must not occur."""
        out = {}
        keepset = set(keep)
        for exps, c in self.terms.items():
            if any(e and i not in keepset for i, e in enumerate(exps)):
                raise ValueError("polynomial depends on a dropped variable")
            out[tuple(exps[i] for i in keep)] = c
        return MultiPoly._raw(len(keep), out)

    def split_parity(self, index: int) -> tuple["MultiPoly", "MultiPoly"]:
        """(even part, odd part) with respect to the sign of variable ``index``."""
        even = {e: c for e, c in self.terms.items() if e[index] % 2 == 0}
        odd = {e: c for e, c in self.terms.items() if e[index] % 2 == 1}
        return MultiPoly._raw(self.nvars, even), MultiPoly._raw(self.nvars, odd)

    # evaluation
    def evaluate(self, point):
        """Evaluate at a point.

        Rational inputs give an exact ``Fraction``. Float/complex inputs give a float.
        A numpy array of shape (..., nvars) is evaluated pointwise (vectorized).
        """
        if isinstance(point, np.ndarray) and point.ndim >= 2:
            return self._evaluate_array(point)
        point = list(point) if self.nvars else []
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        exact = all(isinstance(p, (int, Fraction)) and not isinstance(p, bool) for p in point)
        if exact:
            total = Fraction(0)
            for exps, c in self.terms.items():
                term = c
                for p, e in zip(point, exps):
                    if e:
                        term *= Fraction(p) ** e
                total += term
            return total
        return self._evaluate_array(np.asarray(point)[None, :])[0]

    def _evaluate_array(self, pts: np.ndarray):
        pts = np.asarray(pts)
        if pts.shape[-1] != self.nvars:
            raise ValueError("trailing dimension must equal nvars")
        shape = pts.shape[:-1]
        flat = pts.reshape(-1, self.nvars)
        dtype = np.result_type(flat.dtype, np.float64)
        out = np.zeros(flat.shape[0], dtype=dtype)
        if not self.terms:
            return out.reshape(shape)
        maxdeg = [self.degree_in(i) for i in range(self.nvars)]
        powers = []
        for i in range(self.nvars):
            col = flat[:, i].astype(dtype)
            table = [np.ones_like(col)]
            for _ in range(max(maxdeg[i], 0)):
                table.append(table[-1] * col)
            powers.append(table)
        for exps, c in self.sorted_terms():
            term = np.full(flat.shape[0], float(c), dtype=dtype)
            for i, e in enumerate(exps):
                if e:
                    term = term * powers[i][e]
            out += term
        return out.reshape(shape)

    def __call__(self, *point):
        if len(point) == 1 and not isinstance(point[0], (int, float, complex, Fraction)):
            return self.evaluate(point[0])
        return self.evaluate(point)

    # serialization
    def to_json_obj(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"exps": list(e), "num": c.numerator, "den": c.denominator}
                for e, c in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "MultiPoly":
        return cls(obj["nvars"], {tuple(t["exps"]): Fraction(t["num"], t["den"]) for t in obj["terms"]})

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        return cls.from_json_obj(json.loads(text))


def laplacian(poly: MultiPoly, variables: Iterable[int] | None = None) -> MultiPoly:
    idx = range(poly.nvars) if variables is None else variables
    return signature_laplacian(poly, {i: 1 for i in idx})


def signature_laplacian(poly: MultiPoly, signs) -> MultiPoly:
    """sum_i sign_i d^2/dx_i^2. ``signs`` is a sequence (one per variable) or a dict index->sign."""
    if not isinstance(signs, Mapping):
        signs = dict(enumerate(signs))
    out = MultiPoly.zero(poly.nvars)
    for i, s in signs.items():
        if s:
            out = out + poly.derivative(i, 2).scale(s)
    return out


def euler_operator(poly: MultiPoly, variables: Iterable[int] | None = None) -> MultiPoly:
    idx = range(poly.nvars) if variables is None else variables
    out = MultiPoly.zero(poly.nvars)
    for i in idx:
        out = out + MultiPoly.variable(poly.nvars, i) * poly.derivative(i)
    return out


class PowPolyFunction:
    """A finite sum  sum_mu base**mu * poly_mu  with rational exponents.

    ``base`` is a fixed polynomial (for instance a Jordan determinant or a trace). Terms
    whose exponents differ by an integer are merged on the smaller exponent, so each
    stored exponent represents a distinct class modulo the integers.
    """

    __slots__ = ("base", "parts")

    def __init__(self, base: MultiPoly, parts: Mapping[object, MultiPoly] | None = None):
        self.base = base
        merged: dict[Fraction, MultiPoly] = {}
        for mu, poly in (parts or {}).items():
            mu = as_fraction(mu)
            if poly.nvars != base.nvars:
                raise ValueError("poly and base arity differ")
            merged = _merge_part(base, merged, mu, poly)
        self.parts = {mu: p for mu, p in merged.items() if not p.is_zero()}

    @classmethod
    def single(cls, base: MultiPoly, mu, poly: MultiPoly) -> "PowPolyFunction":
        return cls(base, {mu: poly})

    @classmethod
    def from_parts(cls, base: MultiPoly, mu, px: MultiPoly, pv: MultiPoly) -> "PowPolyFunction":
        """Build base**mu * px(x) * pv(v) with x the first ``px.nvars`` variables, v the rest."""
        total = base.nvars
        if px.nvars + pv.nvars != total:
            raise ValueError("px and pv arities must add up to the base arity")
        x_part = px.embed(total, list(range(px.nvars)))
        v_part = pv.embed(total, list(range(px.nvars, total)))
        return cls(base, {mu: x_part * v_part})

    @property
    def nvars(self) -> int:
        return self.base.nvars

    def is_zero(self) -> bool:
        return not self.parts

    def _check(self, other: "PowPolyFunction"):
        if other.base != self.base:
            raise ValueError("PowPolyFunction bases differ")

    def __add__(self, other):
        if isinstance(other, MultiPoly):
            other = PowPolyFunction(self.base, {0: other})
        self._check(other)
        merged = dict(self.parts)
        for mu, poly in other.parts.items():
            merged = _merge_part(self.base, merged, mu, poly)
        return PowPolyFunction(self.base, merged)

    def __neg__(self):
        return PowPolyFunction(self.base, {mu: -p for mu, p in self.parts.items()})

    def __sub__(self, other):
        if isinstance(other, MultiPoly):
            other = PowPolyFunction(self.base, {0: other})
        return self + (-other)

    def scale(self, factor) -> "PowPolyFunction":
        return PowPolyFunction(self.base, {mu: p.scale(factor) for mu, p in self.parts.items()})

    def mul_poly(self, poly: MultiPoly) -> "PowPolyFunction":
        return PowPolyFunction(self.base, {mu: p * poly for mu, p in self.parts.items()})

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            return self.mul_poly(other)
        if isinstance(other, PowPolyFunction):
            self._check(other)
            out = PowPolyFunction(self.base, {})
            for mu1, p1 in self.parts.items():
                for mu2, p2 in other.parts.items():
                    out = out + PowPolyFunction(self.base, {mu1 + mu2: p1 * p2})
            return out
        return self.scale(other)

    __rmul__ = __mul__

    def shift_mu(self, amount) -> "PowPolyFunction":
        """Multiply by base**amount."""
        amount = as_fraction(amount)
        return PowPolyFunction(self.base, {mu + amount: p for mu, p in self.parts.items()})

    def derivative(self, index: int) -> "PowPolyFunction":
        db = self.base.derivative(index)
        out = PowPolyFunction(self.base, {})
        for mu, p in self.parts.items():
            # d(b^mu p) = b^(mu-1) (mu p db + b dp)
            piece = p.scale(mu) * db + self.base * p.derivative(index)
            out = out + PowPolyFunction(self.base, {mu - 1: piece})
        return out

    def evaluate(self, point):
        """Float (or complex) evaluation; ``point`` may be an array of shape (..., nvars)."""
        pts = np.asarray(point, dtype=float)
        single = pts.ndim == 1
        if single:
            pts = pts[None, :]
        b = self.base.evaluate(pts)
        total = np.zeros(pts.shape[:-1])
        for mu, p in self.parts.items():
            if mu.denominator == 1:
                factor = b ** int(mu) if mu >= 0 else 1.0 / b ** int(-mu)
            else:
                factor = np.power(b, float(mu))
            total = total + factor * p.evaluate(pts)
        return total[0] if single else total

    def equals(self, other: "PowPolyFunction") -> bool:
        return (self - other).is_zero()

    def __eq__(self, other):
        if isinstance(other, PowPolyFunction):
            return self.base == other.base and self.equals(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.base, frozenset(self.parts)))

    def __repr__(self):
        inner = ", ".join(f"mu={mu}: {p.to_string()}" for mu, p in sorted(self.parts.items()))
        return f"PowPolyFunction(base={self.base.to_string()}; {inner})"


def _merge_part(base: MultiPoly, parts: dict, mu: Fraction, poly: MultiPoly) -> dict:
    """Insert base**mu * poly into ``parts``, aligning integer-separated exponents."""
    out = dict(parts)
    for existing in list(out):
        diff = mu - existing
        if diff.denominator == 1:
            d = int(diff)
            if d >= 0:
                out[existing] = out[existing] + poly * base ** d
            else:
                out[mu] = out.pop(existing) * base ** (-d) + poly
            return _reduce(base, out)
    out[mu] = poly
    return out


def _reduce(base: MultiPoly, parts: dict) -> dict:
    return {mu: p for mu, p in parts.items() if not p.is_zero()}
