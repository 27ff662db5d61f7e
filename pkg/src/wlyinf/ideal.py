"""Gröbner bases for global orders and Mora standard bases for the local order.

Internally polynomials are dictionaries from exponent tuples to Python ints
(fraction-free, content removed); the public surface speaks
:class:`~wlyinf.poly.Polynomial`.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Monomial, Polynomial

IntPoly = Dict[Monomial, int]


class BudgetExceeded(RuntimeError):
    """Raised when a basis computation exceeds its reduction-step budget."""


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order; ``key(m)`` is larger for larger monomials.

    ``wdegrevlex`` and ``lex`` are global (1 is the smallest monomial);
    ``local`` is anti-graded by total degree with a reverse-lex tie-break, so
    the constant monomial is the largest.
    """

    kind: str
    weights: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in ("wdegrevlex", "lex", "local"):
            raise ValueError(f"unknown order {self.kind!r}")
        if self.kind == "wdegrevlex" and self.weights is None:
            raise ValueError("wdegrevlex needs weights")

    @classmethod
    def wdegrevlex(cls, weights: Sequence[int]) -> "MonomialOrder":
        return cls("wdegrevlex", tuple(int(x) for x in weights))

    @classmethod
    def grevlex(cls, nvars: int) -> "MonomialOrder":
        return cls.wdegrevlex((1,) * nvars)

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def local(cls) -> "MonomialOrder":
        return cls("local")

    @property
    def is_global(self) -> bool:
        return self.kind != "local"

    def key(self, m: Monomial):
        if self.kind == "lex":
            return m
        if self.kind == "wdegrevlex":
            return (sum(a * b for a, b in zip(m, self.weights)),) + tuple(-e for e in reversed(m))
        return (-sum(m),) + tuple(-e for e in reversed(m))

    def degree(self, m: Monomial) -> int:
        if self.kind == "wdegrevlex":
            return sum(a * b for a, b in zip(m, self.weights))
        return sum(m)


# ---------------------------------------------------------------------------
# integer polynomial helpers


def _content(p: IntPoly) -> int:
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _primitive(p: IntPoly) -> IntPoly:
    g = _content(p)
    if g > 1:
        return {m: c // g for m, c in p.items()}
    return p


def to_intpoly(p: Polynomial) -> IntPoly:
    den = 1
    for c in p._terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return _primitive({m: int(c * den) for m, c in p._terms.items()})


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Entry:
    __slots__ = ("lm", "lc", "terms", "tail", "deg", "ecart")

    def __init__(self, terms: IntPoly, key):
        lm = max(terms, key=key)
        self.lm = lm
        self.lc = terms[lm]
        self.terms = terms
        self.tail = [(m, c) for m, c in terms.items() if m != lm]
        self.deg = max(sum(m) for m in terms)
        self.ecart = self.deg - sum(lm)


def _entry_to_poly(e: _Entry, nvars: int, monic: bool = True) -> Polynomial:
    if monic:
        lc = e.lc
        return Polynomial._raw({m: Fraction(c, lc) for m, c in e.terms.items()}, nvars)
    return Polynomial._raw({m: Fraction(c) for m, c in e.terms.items()}, nvars)


# ---------------------------------------------------------------------------
# global reduction and Buchberger


def _reduce_full(f: IntPoly, basis: List[_Entry], order: MonomialOrder, counter=None) -> IntPoly:
    """Fully reduce ``f`` modulo ``basis``; result is primitive (or empty)."""
    key = order.key
    h = dict(f)
    heap = [(tuple(-x for x in key(m)), m) for m in h]
    heapq.heapify(heap)
    rem: IntPoly = {}
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = h.get(m)
        if c is None:
            continue
        g = None
        for e in basis:
            if _divides(e.lm, m):
                g = e
                break
        if g is None:
            rem[m] = h.pop(m)
            continue
        if counter is not None:
            counter.tick()
        q = gcd(c, g.lc)
        a, b = g.lc // q, c // q
        if a < 0:
            a, b = -a, -b
        if a != 1:
            for mm in h:
                h[mm] *= a
            for mm in rem:
                rem[mm] *= a
        del h[m]
        shift = _sub(m, g.lm)
        for mg, cg in g.tail:
            mm = tuple(x + y for x, y in zip(mg, shift))
            v = h.get(mm)
            if v is None:
                h[mm] = -b * cg
                heapq.heappush(heap, (tuple(-x for x in key(mm)), mm))
            else:
                v -= b * cg
                if v:
                    h[mm] = v
                else:
                    del h[mm]
        steps += 1
        if steps % 16 == 0 and (h or rem):
            g2 = gcd(_content(h) if h else 0, _content(rem) if rem else 0)
            if g2 > 1:
                h = {mm: v // g2 for mm, v in h.items()}
                rem = {mm: v // g2 for mm, v in rem.items()}
    return _primitive(rem) if rem else rem


def _spoly(e1: _Entry, e2: _Entry) -> IntPoly:
    lcm = _lcm(e1.lm, e2.lm)
    s1, s2 = _sub(lcm, e1.lm), _sub(lcm, e2.lm)
    q = gcd(e1.lc, e2.lc)
    a, b = e2.lc // q, e1.lc // q
    out: IntPoly = {}
    for m, c in e1.tail:
        mm = tuple(x + y for x, y in zip(m, s1))
        out[mm] = out.get(mm, 0) + a * c
    for m, c in e2.tail:
        mm = tuple(x + y for x, y in zip(m, s2))
        v = out.get(mm, 0) - b * c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return {m: c for m, c in out.items() if c}


class _Counter:
    def __init__(self, budget):
        self.budget = budget
        self.count = 0

    def tick(self):
        self.count += 1
        if self.budget is not None and self.count > self.budget:
            raise BudgetExceeded(f"more than {self.budget} reduction steps")


def _buchberger(polys: List[IntPoly], order: MonomialOrder, budget=None,
                stop_on_unit=False) -> List[_Entry]:
    key = order.key
    counter = _Counter(budget)
    G: List[_Entry] = []
    active: List[bool] = []
    pairs: list = []  # heap of (priority, tiebreak, i, j)
    tie = itertools.count()

    def priority(lcm):
        return (order.degree(lcm), key(lcm))

    def update(h: _Entry):
        nonlocal pairs
        hi = len(G)
        C = [(i, _lcm(h.lm, G[i].lm)) for i in range(len(G)) if active[i]]
        D = []
        while C:
            i, lc = C.pop()
            if _coprime(h.lm, G[i].lm) or not any(
                    _divides(lc2, lc) for _, lc2 in itertools.chain(C, D)):
                D.append((i, lc))
        E = [(i, lc) for i, lc in D if not _coprime(h.lm, G[i].lm)]
        kept = [item for item in pairs
                if not (_divides(h.lm, item[4])
                        and _lcm(G[item[2]].lm, h.lm) != item[4]
                        and _lcm(G[item[3]].lm, h.lm) != item[4])]
        if len(kept) != len(pairs):
            heapq.heapify(kept)
            pairs = kept
        for i, lc in E:
            heapq.heappush(pairs, (priority(lc), next(tie), i, hi, lc))
        for i in range(len(G)):
            if active[i] and _divides(h.lm, G[i].lm):
                active[i] = False
        G.append(h)
        active.append(True)

    for p in polys:
        if not p:
            continue
        r = _reduce_full(p, [G[i] for i in range(len(G)) if active[i]], order, counter)
        if not r:
            continue
        e = _Entry(r, key)
        if stop_on_unit and not any(e.lm):
            return [e]
        update(e)

    while pairs:
        _, _, i, j, lc = heapq.heappop(pairs)
        s = _spoly(G[i], G[j])
        if not s:
            continue
        basis = [G[t] for t in range(len(G)) if active[t]]
        r = _reduce_full(s, basis, order, counter)
        if not r:
            continue
        e = _Entry(r, key)
        if stop_on_unit and not any(e.lm):
            return [e]
        update(e)

    # minimal, then interreduced
    basis = [G[i] for i in range(len(G)) if active[i]]
    basis.sort(key=lambda e: key(e.lm))
    minimal: List[_Entry] = []
    for e in basis:
        if not any(_divides(o.lm, e.lm) for o in minimal):
            minimal.append(e)
    reduced = []
    for idx, e in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        t = _reduce_keep_lead(e.terms, e.lm, others, order) if e.tail else dict(e.terms)
        t = _primitive(t)
        if t[e.lm] < 0:
            t = {m: -c for m, c in t.items()}
        reduced.append(_Entry(t, key))
    reduced.sort(key=lambda e: key(e.lm), reverse=True)
    return reduced


def _reduce_keep_lead(f: IntPoly, lm: Monomial, basis: List[_Entry], order: MonomialOrder) -> IntPoly:
    key = order.key
    h = dict(f)
    heap = [(tuple(-x for x in key(m)), m) for m in h]
    heapq.heapify(heap)
    rem: IntPoly = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = h.get(m)
        if c is None:
            continue
        g = None
        if m != lm:
            for e in basis:
                if _divides(e.lm, m):
                    g = e
                    break
        if g is None:
            rem[m] = h.pop(m)
            continue
        q = gcd(c, g.lc)
        a, b = g.lc // q, c // q
        if a < 0:
            a, b = -a, -b
        if a != 1:
            for mm in h:
                h[mm] *= a
            for mm in rem:
                rem[mm] *= a
        del h[m]
        shift = _sub(m, g.lm)
        for mg, cg in g.tail:
            mm = tuple(x + y for x, y in zip(mg, shift))
            v = h.get(mm)
            if v is None:
                h[mm] = -b * cg
                heapq.heappush(heap, (tuple(-x for x in key(mm)), mm))
            else:
                v -= b * cg
                if v:
                    h[mm] = v
                else:
                    del h[mm]
    return _primitive(rem)


# ---------------------------------------------------------------------------
# Mora normal form and tangent-cone standard bases


def _ecart(h: IntPoly, lm: Monomial) -> int:
    return max(sum(m) for m in h) - sum(lm)


def _mora_nf(f: IntPoly, basis: List[_Entry], key, counter=None) -> IntPoly:
    """Weak normal form for the local order (écart-driven, Mora's algorithm)."""
    h = dict(f)
    T = list(basis)
    while h:
        lm = max(h, key=key)
        best = None
        for e in T:
            if _divides(e.lm, lm) and (best is None or e.ecart < best.ecart):
                best = e
        if best is None:
            return _primitive(h)
        if counter is not None:
            counter.tick()
        if best.ecart > _ecart(h, lm):
            T.append(_Entry(dict(h), key))
        c = h[lm]
        q = gcd(c, best.lc)
        a, b = best.lc // q, c // q
        if a < 0:
            a, b = -a, -b
        if a != 1:
            h = {m: v * a for m, v in h.items()}
        del h[lm]
        shift = _sub(lm, best.lm)
        for mg, cg in best.tail:
            mm = tuple(x + y for x, y in zip(mg, shift))
            v = h.get(mm, 0) - b * cg
            if v:
                h[mm] = v
            else:
                h.pop(mm, None)
        if h:
            h = _primitive(h)
    return h


def _mora(polys: List[IntPoly], budget=None) -> List[_Entry]:
    order = MonomialOrder.local()
    key = order.key
    counter = _Counter(budget)
    G: List[_Entry] = []
    for p in polys:
        if p:
            G.append(_Entry(p, key))
    if any(not any(e.lm) for e in G):
        nv = len(G[0].lm)
        return [_Entry({(0,) * nv: 1}, key)]
    tie = itertools.count()
    pairs = [(sum(_lcm(G[i].lm, G[j].lm)), next(tie), i, j)
             for i in range(len(G)) for j in range(i + 1, len(G))]
    heapq.heapify(pairs)
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        s = _spoly(G[i], G[j])
        if not s:
            continue
        r = _mora_nf(s, G, key, counter)
        if not r:
            continue
        e = _Entry(r, key)
        if not any(e.lm):
            return [_Entry({e.lm: 1}, key)]
        hi = len(G)
        G.append(e)
        for t in range(hi):
            heapq.heappush(pairs, (sum(_lcm(G[t].lm, e.lm)), next(tie), t, hi))
    # drop elements whose leading monomial is redundant
    G.sort(key=lambda e: (key(e.lm), -e.ecart, -len(e.terms)), reverse=True)
    minimal: List[_Entry] = []
    for e in G:
        if not any(_divides(o.lm, e.lm) for o in minimal):
            minimal.append(e)
    for idx, e in enumerate(minimal):
        if e.lc < 0:
            minimal[idx] = _Entry({m: -c for m, c in e.terms.items()}, key)
    return minimal


# ---------------------------------------------------------------------------
# public surface


@dataclass(frozen=True)
class StandardBasis:
    """A Gröbner basis (global order) or Mora standard basis (local order)."""

    generators: Tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool
    nvars: int
    _entries: tuple = field(default=(), repr=False, compare=False)

    def leading_monomials(self) -> List[Monomial]:
        return [e.lm for e in self._entries]

    @property
    def is_unit(self) -> bool:
        return any(not any(m) for m in self.leading_monomials())

    def normal_form(self, p: Polynomial) -> Polynomial:
        """Normal form (global) or weak normal form (local), up to a nonzero scalar."""
        if p.nvars != self.nvars:
            from .errors import StructuralError
            raise StructuralError("polynomial and basis live in different rings")
        ip = to_intpoly(p)
        if not ip:
            return p
        if self.order.is_global:
            r = _reduce_full(ip, list(self._entries), self.order)
        else:
            r = _mora_nf(ip, list(self._entries), self.order.key)
        return Polynomial._raw({m: Fraction(c) for m, c in r.items()}, self.nvars)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _check_ring(gens: Sequence[Polynomial]) -> int:
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].nvars
    for g in gens:
        if g.nvars != n:
            from .errors import StructuralError
            raise StructuralError("generators live in different rings")
    return n


def groebner_basis(gens: Sequence[Polynomial], order: MonomialOrder | None = None,
                   budget: int | None = None) -> StandardBasis:
    """Reduced Gröbner basis of ``gens`` for a global order (default grevlex).

    ``budget`` bounds the number of reduction steps; :class:`BudgetExceeded`
    is raised beyond it.
    """
    n = _check_ring(gens)
    if order is None:
        order = MonomialOrder.grevlex(n)
    if not order.is_global:
        raise ValueError("groebner_basis needs a global order; use local_standard_basis")
    ints = [to_intpoly(g) for g in gens if g]
    entries = _buchberger(ints, order, budget=budget) if ints else []
    if any(not any(e.lm) for e in entries):
        entries = [_Entry({(0,) * n: 1}, order.key)]
    polys = tuple(_entry_to_poly(e, n) for e in entries)
    return StandardBasis(polys, order, True, n, tuple(entries))


def local_standard_basis(gens: Sequence[Polynomial], budget: int | None = None) -> StandardBasis:
    """Standard basis of the ideal generated by ``gens`` in the local ring at the origin."""
    n = _check_ring(gens)
    ints = [to_intpoly(g) for g in gens if g]
    entries = _mora(ints, budget=budget) if ints else []
    polys = tuple(_entry_to_poly(e, n) for e in entries)
    return StandardBasis(polys, MonomialOrder.local(), False, n, tuple(entries))


def is_unit_ideal(gens: Sequence[Polynomial], budget: int | None = None) -> bool:
    n = _check_ring(gens)
    ints = [to_intpoly(g) for g in gens if g]
    if not ints:
        return False
    entries = _buchberger(ints, MonomialOrder.grevlex(n), budget=budget, stop_on_unit=True)
    return any(not any(e.lm) for e in entries)


@dataclass(frozen=True)
class Staircase:
    """Standard monomials of a basis; ``monomials`` is None when there are infinitely many."""

    monomials: Optional[Tuple[Monomial, ...]]

    @property
    def is_finite(self) -> bool:
        return self.monomials is not None

    def __len__(self):
        if self.monomials is None:
            raise ValueError("infinite staircase has no length")
        return len(self.monomials)

    def __iter__(self):
        if self.monomials is None:
            raise ValueError("cannot iterate an infinite staircase")
        return iter(self.monomials)


def standard_monomials(lms: Sequence[Monomial], nvars: int) -> Optional[List[Monomial]]:
    """Monomials outside the monomial ideal generated by ``lms`` (None if infinite)."""
    bounds = []
    for i in range(nvars):
        pure = [m[i] for m in lms if m[i] and all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    out: List[Monomial] = []
    cur = [0] * nvars

    def covered(m):
        return any(_divides(g, m) for g in lms)

    def rec(i):
        if i == nvars:
            out.append(tuple(cur))
            return
        for e in range(bounds[i]):
            cur[i] = e
            # zeros in later slots: if already covered, larger exponents are too
            if covered(tuple(cur)):
                break
            rec(i + 1)
        cur[i] = 0

    rec(0)
    return out


def quotient_staircase(sb: StandardBasis) -> Staircase:
    lms = sb.leading_monomials()
    if sb.is_unit:
        return Staircase(())
    mons = standard_monomials(lms, sb.nvars)
    return Staircase(None if mons is None else tuple(mons))


def krull_dimension(sb: StandardBasis) -> int:
    """Dimension of the affine variety: largest variable set independent of the leading terms."""
    if not sb.order.is_global:
        raise ValueError("krull_dimension needs a basis for a global order")
    lms = sb.leading_monomials()
    if sb.is_unit:
        return -1
    n = sb.nvars
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return -1


def radical_membership(p: Polynomial, gens: Sequence[Polynomial], budget: int | None = None) -> bool:
    """True iff ``p`` vanishes on V(gens): test 1 in (gens, 1 - t*p) with an extra variable t."""
    n = _check_ring(list(gens) + [p])
    if p.is_zero():
        return True
    m = n + 1
    lifted = [g.embed(m, range(n)) for g in gens]
    t = Polynomial.var(n, m)
    lifted.append(Polynomial.constant(1, m) - t * p.embed(m, range(n)))
    return is_unit_ideal(lifted, budget=budget)


def eliminate(gens: Sequence[Polynomial], count: int) -> List[Polynomial]:
    """Generators of the ideal intersected with the ring of the last ``nvars - count`` variables.

    Variables ``0 .. count-1`` are eliminated with a lex basis; results keep the full ring.
    """
    sb = groebner_basis(gens, MonomialOrder.lex())
    return [g for g in sb.generators if not any(any(m[:count]) for m in g.monomials())]


def _rational_roots(univariate: Dict[int, Fraction]) -> List[Fraction]:
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** e for e, c in univariate.items())
    poly = sympy.Poly(expr, x, domain="QQ")
    roots = poly.ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


def rational_solutions(gens: Sequence[Polynomial], budget: int | None = None):
    """All rational points of a zero-dimensional ideal, by lex back-substitution.

    Returns None when the ideal is not zero-dimensional.
    """
    n = _check_ring(gens)
    gens = [g for g in gens if g]
    if n == 0:
        return [()] if not gens else []
    if not gens:
        return None
    sb = groebner_basis(gens, MonomialOrder.lex(), budget=budget)
    if sb.is_unit:
        return []
    last = n - 1
    uni = [g for g in sb.generators if all(not any(m[:last]) for m in g.monomials())]
    if not uni:
        return None
    u = min(uni, key=lambda g: g.total_degree())
    roots = _rational_roots({m[last]: c for m, c in u.items()})
    out = []
    for r in roots:
        rest = [g.restrict(last, r) for g in sb.generators]
        rest = [g for g in rest if g]
        if any(g.is_constant() for g in rest):
            continue
        if n == 1:
            out.append((r,))
            continue
        sub = rational_solutions(rest, budget) if rest else None
        if sub is None:
            return None
        out.extend(s + (r,) for s in sub)
    return sorted(set(out))
