"""Sparse multivariate polynomials over the rationals with a weighted grading.

A monomial is a plain tuple of non-negative exponents.  A :class:`Polynomial`
maps monomials to nonzero :class:`fractions.Fraction` coefficients and knows
how many variables its ring has; mixing rings is an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import DegenerateInput, NotMixed, StructuralError

Monomial = Tuple[int, ...]


def weighted_degree(m: Sequence[int], w) -> int:
    """Return the weighted degree ``sum(w_i * m_i)`` of the exponent vector ``m``."""
    weights = w.weights if isinstance(w, WeightSystem) else tuple(w)
    if len(m) != len(weights):
        raise StructuralError(
            f"monomial has {len(m)} exponents but there are {len(weights)} weights")
    return sum(a * b for a, b in zip(m, weights))


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | Iterable = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: Dict[Monomial, Fraction] = {}
        for m, c in items:
            m = tuple(int(e) for e in m)
            if nvars is None:
                nvars = len(m)
            if len(m) != nvars:
                raise StructuralError(f"monomial {m} does not belong to a ring with {nvars} variables")
            if any(e < 0 for e in m):
                raise StructuralError(f"negative exponent in {m}")
            c = _as_fraction(c)
            if c:
                c = clean.get(m, 0) + c
                if c:
                    clean[m] = c
                else:
                    clean.pop(m, None)
        if nvars is None:
            raise StructuralError("variable count is required for an empty polynomial")
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction], nvars: int) -> "Polynomial":
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        c = _as_fraction(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise StructuralError(f"variable index {i} out of range for {nvars} variables")
        m = [0] * nvars
        m[i] = 1
        return cls._raw({tuple(m): Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls({tuple(exps): coeff})

    # basic accessors -------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coeff(self, m: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def weighted_degree(self, w) -> int:
        return max((weighted_degree(m, w) for m in self._terms), default=-1)

    def is_weighted_homogeneous(self, w) -> bool:
        return len({weighted_degree(m, w) for m in self._terms}) <= 1

    def support_variables(self) -> set:
        return {i for m in self._terms for i, e in enumerate(m) if e}

    def sorted_terms(self):
        """Terms in canonical display order (graded reverse lexicographic, largest first)."""
        return sorted(self._terms.items(), key=lambda t: _grevlex_key(t[0]), reverse=True)

    # arithmetic ------------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise StructuralError(
                f"cannot combine polynomials in {self.nvars} and {other.nvars} variables")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            c = out.get(m, 0) + c
            if c:
                out[m] = c
            else:
                out.pop(m, None)
        return Polynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw({m: v * c for m, v in self._terms.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = out.get(m, 0) + c1 * c2
                if c:
                    out[m] = c
                else:
                    del out[m]
        return Polynomial._raw(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, m: Monomial, c=1) -> "Polynomial":
        c = _as_fraction(c)
        return Polynomial._raw(
            {tuple(a + b for a, b in zip(k, m)): v * c for k, v in self._terms.items()},
            self.nvars)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # calculus and substitution --------------------------------------------

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                out[tuple(mm)] = c * e
        return Polynomial._raw(out, self.nvars)

    def gradient(self):
        return [self.derivative(i) for i in range(self.nvars)]

    def __call__(self, *point):
        return self.evaluate(point[0] if len(point) == 1 and isinstance(point[0], (list, tuple)) else point)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise StructuralError(f"point has {len(point)} coordinates, ring has {self.nvars}")
        pt = [_as_fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def subs(self, i: int, value) -> "Polynomial":
        """Set variable ``i`` to a rational constant, keeping the ring."""
        value = _as_fraction(value)
        out: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            mm = list(m)
            e = mm[i]
            mm[i] = 0
            mm = tuple(mm)
            c = c * value ** e if e else c
            c = out.get(mm, 0) + c
            if c:
                out[mm] = c
            else:
                out.pop(mm, None)
        return Polynomial._raw(out, self.nvars)

    def restrict(self, i: int, value) -> "Polynomial":
        """Set variable ``i`` to ``value`` and drop it from the ring."""
        p = self.subs(i, value)
        return Polynomial._raw({m[:i] + m[i + 1:]: c for m, c in p._terms.items()}, self.nvars - 1)

    def permute(self, perm: Sequence[int]) -> "Polynomial":
        """Rename variables: variable ``i`` becomes variable ``perm[i]``."""
        if sorted(perm) != list(range(self.nvars)):
            raise StructuralError(f"{perm} is not a permutation of {self.nvars} variables")
        out = {}
        for m, c in self._terms.items():
            mm = [0] * self.nvars
            for i, e in enumerate(m):
                mm[perm[i]] = e
            out[tuple(mm)] = c
        return Polynomial._raw(out, self.nvars)

    def embed(self, nvars: int, positions: Sequence[int]) -> "Polynomial":
        """Move into a ring with ``nvars`` variables; variable ``i`` lands at ``positions[i]``."""
        if len(positions) != self.nvars or len(set(positions)) != self.nvars:
            raise StructuralError("positions must be distinct, one per variable")
        out = {}
        for m, c in self._terms.items():
            mm = [0] * nvars
            for i, e in enumerate(m):
                mm[positions[i]] = e
            out[tuple(mm)] = c
        return Polynomial._raw(out, nvars)

    def translate(self, shift: Sequence) -> "Polynomial":
        """Return ``p(x + shift)``."""
        if len(shift) != self.nvars:
            raise StructuralError("shift length does not match variable count")
        shift = [_as_fraction(a) for a in shift]
        if not any(shift):
            return self
        n = self.nvars
        cache = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = (Polynomial.var(i, n) + shift[i]) ** e
            return cache[key]

        result: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            part = {tuple(e if not shift[i] else 0 for i, e in enumerate(m)): c}
            for i, e in enumerate(m):
                if e and shift[i]:
                    factor = power(i, e)._terms
                    nxt = {}
                    for k1, v1 in part.items():
                        for k2, v2 in factor.items():
                            kk = tuple(a + b for a, b in zip(k1, k2))
                            nxt[kk] = nxt.get(kk, 0) + v1 * v2
                    part = nxt
            for k, v in part.items():
                v = result.get(k, 0) + v
                if v:
                    result[k] = v
                else:
                    result.pop(k, None)
        return Polynomial._raw(result, n)

    def homogeneous_part(self, w, degree: int) -> "Polynomial":
        return Polynomial._raw(
            {m: c for m, c in self._terms.items() if weighted_degree(m, w) == degree}, self.nvars)

    # display ---------------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r}, nvars={self.nvars})"


def variables(nvars: int):
    """Return the generators ``x1, ..., xn`` of the ring with ``nvars`` variables."""
    return [Polynomial.var(i, nvars) for i in range(nvars)]


def gradient(f: Polynomial):
    return f.gradient()


def direct_sum(f: Polynomial, h: Polynomial) -> Polynomial:
    """Return ``f(x) + h(y)`` on disjoint variable sets (x first, then y)."""
    n = f.nvars + h.nvars
    return f.embed(n, range(f.nvars)) + h.embed(n, range(f.nvars, n))


@dataclass(frozen=True)
class WeightSystem:
    """Positive integer weights with gcd one."""

    weights: Tuple[int, ...]

    def __post_init__(self):
        ws = tuple(int(x) for x in self.weights)
        object.__setattr__(self, "weights", ws)
        if not ws:
            raise StructuralError("a weight system needs at least one weight")
        if any(x < 1 for x in ws):
            raise StructuralError(f"weights must be positive, got {ws}")
        g = 0
        for x in ws:
            g = gcd(g, x)
        if g != 1:
            raise StructuralError(f"weights must have gcd 1, got gcd {g} for {ws}")

    @classmethod
    def usual(cls, nvars: int) -> "WeightSystem":
        return cls((1,) * nvars)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    @property
    def total(self) -> int:
        return sum(self.weights)

    @property
    def is_usual(self) -> bool:
        return all(x == 1 for x in self.weights)

    def extended(self) -> "WeightSystem":
        """The weights ``(1, w)`` of the homogenizing variable followed by ``w``."""
        return WeightSystem((1,) + self.weights)

    def without(self, i: int) -> Tuple[int, ...]:
        return self.weights[:i] + self.weights[i + 1:]

    def degree(self, m: Sequence[int]) -> int:
        return weighted_degree(m, self.weights)


@dataclass(frozen=True)
class WeightedDecomposition:
    """The graded pieces of ``f`` with top degree ``N`` and gap ``k``."""

    w: WeightSystem
    N: int
    k: int
    parts: Dict[int, Polynomial] = field(hash=False)
    poly: Polynomial = field(hash=False)

    @property
    def top(self) -> Polynomial:
        return self.parts[self.N]

    @property
    def gap_part(self) -> Polynomial:
        return self.parts[self.N - self.k]

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    @property
    def n(self) -> int:
        """Dimension of the generic fibre, one less than the number of variables."""
        return self.poly.nvars - 1


def decompose(f: Polynomial, w: WeightSystem) -> WeightedDecomposition:
    if not isinstance(w, WeightSystem):
        w = WeightSystem(tuple(w))
    if len(w) != f.nvars:
        raise StructuralError(f"{len(w)} weights given for {f.nvars} variables")
    if f.is_constant():
        raise DegenerateInput("cannot decompose a constant polynomial")
    buckets: Dict[int, Dict[Monomial, Fraction]] = {}
    for m, c in f.items():
        buckets.setdefault(w.degree(m), {})[m] = c
    degrees = sorted(buckets, reverse=True)
    # a constant part never determines the gap: 0 < k < N is required
    lower = [d for d in degrees[1:] if d > 0]
    if not lower:
        raise NotMixed(f"{f} has no non-constant part below its top form for weights {w.weights}")
    N = degrees[0]
    k = N - lower[0]
    parts = {d: Polynomial._raw(t, f.nvars) for d, t in buckets.items()}
    return WeightedDecomposition(w, N, k, parts, f)


def homogenize(dec: WeightedDecomposition) -> Polynomial:
    """Homogenize with a new weight-one variable placed first: ``sum x0^(N-i) f_i``."""
    n = dec.nvars + 1
    out = {}
    for d, part in dec.parts.items():
        for m, c in part.items():
            out[(dec.N - d,) + m] = c
    return Polynomial._raw(out, n)
