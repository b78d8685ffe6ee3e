"""Lexicographic and exponential orderings, their gated restrictions, and the successor extension."""

from __future__ import annotations

import itertools
from typing import Callable, Iterator

from .core import Ordering, Tri
from .terms import Atom, DomainError, ExpSeq, Nat, Pair, Succ, Term, as_term
from .wellfounded import as_tri

BOXABLE = (ExpSeq, Nat, Atom)
Oracle = Callable[[Term], object]


class SeamError(ValueError):
    """Concatenation would break strict exponent descent at the seam."""

    def __init__(self, position: int, left_exponent: Term, right_exponent: Term):
        super().__init__(
            f"seam at position {position}: {right_exponent!r} is not below {left_exponent!r}")
        self.position = position
        self.left_exponent = left_exponent
        self.right_exponent = right_exponent


class _Cached:
    """Lazily materialised prefix of a possibly infinite iterator."""

    def __init__(self, it: Iterator):
        self._it = it
        self.items = []
        self.exhausted = False

    def take(self, n: int):
        while len(self.items) < n and not self.exhausted:
            x = next(self._it, None)
            if x is None:
                self.exhausted = True
            else:
                self.items.append(x)
        return self.items[:n]


def fair_product(xs: Iterator, ys: Iterator) -> Iterator[tuple]:
    """Enumerate ``xs x ys`` along anti-diagonals so infinite factors stay fair."""
    a, b = _Cached(xs), _Cached(ys)
    d = 0
    while True:
        a.take(d + 1)
        b.take(d + 1)
        emitted = False
        for i in range(d + 1):
            j = d - i
            if i < len(a.items) and j < len(b.items):
                emitted = True
                yield a.items[i], b.items[j]
        if not emitted and a.exhausted and b.exhausted and d >= len(a.items) + len(b.items):
            return
        d += 1


class LexOrdering(Ordering):
    """Pairs ``<x, y>`` compared by ``first`` on x, ties broken by ``second`` on y."""

    def __init__(self, first: Ordering, second: Ordering):
        self.first = first
        self.second = second
        self.name = f"lex({first.name},{second.name})"

    def in_domain(self, t):
        return (type(t) is Pair and self.first.in_domain(t.first)
                and self.second.in_domain(t.second))

    def relation(self, p, q):
        if self.first.relation(p.first, q.first):
            return True
        return p.first == q.first and self.second.relation(p.second, q.second)

    def enumerate_below(self, t):
        for y in self.second.enumerate_below(t.second):
            yield Pair(t.first, y)
        for x in self.first.enumerate_below(t.first):
            for y in self.second.enumerate_domain():
                yield Pair(x, y)

    def enumerate_domain(self):
        return (Pair(x, y) for x, y in fair_product(self.first.enumerate_domain(),
                                                   self.second.enumerate_domain()))

    @property
    def has_enumerator(self):
        return self.first.has_enumerator and self.second.has_enumerator


def lex_less(lx: LexOrdering, p, q) -> bool:
    return lx.less(p, q)


def lexw_less(lx: LexOrdering, p, q, wf: Oracle) -> Tri:
    """Lexicographic order restricted to wellfounded second components.

    ``wf`` maps a term to a wellfoundedness verdict for ``lx.second``.
    """
    p, q = as_term(p), as_term(q)
    if not lx.less(p, q):
        return Tri.FALSE
    return Tri.all(as_tri(wf(x)) for x in (p.second, q.second))


class ExpOrdering(Ordering):
    """Formal sums ``p^e0*c0 + ...`` with strictly decreasing exponents.

    Two sums compare at their first differing summand, by the lexicographic
    order on (exponent, coefficient); a proper prefix is smaller.
    """

    def __init__(self, exponent_order: Ordering, coefficient_order: Ordering):
        self.exponent_order = exponent_order
        self.coefficient_order = coefficient_order
        self.name = f"exp({exponent_order.name},{coefficient_order.name})"
        self._domain_memo = {}

    def components_ok(self, t) -> bool:
        if type(t) is not ExpSeq:
            return False
        E, C = self.exponent_order, self.coefficient_order
        return all(E.in_domain(e) and C.in_domain(c) for e, c in t.summands)

    def descends(self, t: ExpSeq) -> bool:
        rel = self.exponent_order.relation
        s = t.summands
        return all(rel(s[i + 1][0], s[i][0]) for i in range(len(s) - 1))

    def in_domain(self, t):
        memo = self._domain_memo
        hit = memo.get(t)
        if hit is None:
            hit = self.components_ok(t) and self.descends(t)
            if len(memo) > 200_000:
                memo.clear()
            memo[t] = hit
        return hit

    def relation(self, a, b):
        s, t = a.summands, b.summands
        for x, y in zip(s, t):
            if x == y:
                continue
            ex, ey = x[0], y[0]
            if self.exponent_order.relation(ex, ey):
                return True
            return ex == ey and self.coefficient_order.relation(x[1], y[1])
        return len(s) < len(t)

    def tails(self, e: Term) -> Iterator[tuple]:
        """Every descending summand sequence whose exponents all lie below ``e``."""
        yield ()
        for e2 in self.exponent_order.enumerate_below(e):
            for c in self.coefficient_order.enumerate_domain():
                for rest in self.tails(e2):
                    yield ((e2, c),) + rest

    def enumerate_below(self, t):
        E, C = self.exponent_order, self.coefficient_order
        s = t.summands
        for k in range(len(s)):
            yield ExpSeq(s[:k])
        for k, (e, c) in enumerate(s):
            prefix = s[:k]
            for c2 in C.enumerate_below(c):
                for tail in self.tails(e):
                    yield ExpSeq(prefix + ((e, c2),) + tail)
            for e2 in E.enumerate_below(e):
                if k and not E.relation(e2, prefix[-1][0]):
                    continue
                for c2 in C.enumerate_domain():
                    for tail in self.tails(e2):
                        yield ExpSeq(prefix + ((e2, c2),) + tail)

    def _sequences(self, es, cs, maxlen):
        rel = self.exponent_order.relation

        def extend(seq):
            yield ExpSeq(seq)
            if len(seq) == maxlen:
                return
            for e in es:
                if seq and not rel(e, seq[-1][0]):
                    continue
                for c in cs:
                    yield from extend(seq + ((e, c),))

        return extend(())

    def enumerate_domain(self):
        E = _Cached(self.exponent_order.enumerate_domain())
        C = _Cached(self.coefficient_order.enumerate_domain())
        seen = set()
        for r in itertools.count(1):
            es, cs = E.take(r), C.take(r)
            fresh = False
            for t in self._sequences(es, cs, r):
                if t not in seen:
                    seen.add(t)
                    fresh = True
                    yield t
            if E.exhausted and C.exhausted and r > len(es) + 1 and not fresh:
                return

    @property
    def has_enumerator(self):
        return self.exponent_order.has_enumerator and self.coefficient_order.has_enumerator


def _check_components(eo: ExpOrdering, t) -> ExpSeq:
    t = as_term(t)
    if not eo.components_ok(t):
        raise DomainError(f"{t!r} has components outside the base domains of {eo.name}")
    return t


def exp_dom(eo: ExpOrdering, t) -> bool:
    """Whether a sum has strictly decreasing exponents (the empty sum qualifies)."""
    return eo.descends(_check_components(eo, t))


def exp_less(eo: ExpOrdering, alpha, beta) -> bool:
    return eo.less(alpha, beta)


def expw_less(eo: ExpOrdering, alpha, beta, wf: Oracle) -> Tri:
    """Exponential order restricted to sums whose coefficients are all wellfounded."""
    alpha, beta = as_term(alpha), as_term(beta)
    if not eo.less(alpha, beta):
        return Tri.FALSE
    return Tri.all(as_tri(wf(c)) for c in alpha.coefficients + beta.coefficients)


def add(beta, alpha, eo: ExpOrdering) -> ExpSeq:
    """Concatenate ``beta + alpha``; no carrying, only a seam check."""
    beta, alpha = eo.check(as_term(beta)), eo.check(as_term(alpha))
    if beta.summands and alpha.summands:
        left, right = beta.summands[-1][0], alpha.summands[0][0]
        if not eo.exponent_order.relation(right, left):
            raise SeamError(len(beta.summands), left, right)
    return ExpSeq(beta.summands + alpha.summands)


def dom_up(beta, a, eo: ExpOrdering) -> bool:
    """Empty, or the last exponent of ``beta`` is at or above ``a``."""
    beta = eo.check(as_term(beta))
    a = eo.exponent_order.check(as_term(a))
    if not beta.summands:
        return True
    last = beta.summands[-1][0]
    return a == last or eo.exponent_order.relation(a, last)


def exp_bound_lt(alpha, a, eo: ExpOrdering) -> bool:
    """Leading exponent of ``alpha`` below ``a``; vacuously true for the empty sum."""
    alpha = eo.check(as_term(alpha))
    a = eo.exponent_order.check(as_term(a))
    if not alpha.summands:
        return True
    return eo.exponent_order.relation(alpha.summands[0][0], a)


class SuccOrdering(Ordering):
    """Extend a relation with boxed successors ``x+1`` sitting just above ``x``."""

    def __init__(self, base: Ordering):
        self.base = base
        self.name = f"succ({base.name})"

    def in_domain(self, t):
        if type(t) is Succ:
            return self.base.in_domain(t.base)
        return self.base.in_domain(t)

    def relation(self, x, y):
        rel = self.base.relation
        if type(x) is Succ:
            return rel(x.base, y.base if type(y) is Succ else y)
        if type(y) is Succ:
            return x == y.base or rel(x, y.base)
        return rel(x, y)

    def enumerate_below(self, t):
        if type(t) is Succ:
            yield t.base
            t = t.base
        for a in self.base.enumerate_below(t):
            yield a
            if isinstance(a, BOXABLE):
                yield Succ(a)

    def enumerate_domain(self):
        for a in self.base.enumerate_domain():
            yield a
            if isinstance(a, BOXABLE):
                yield Succ(a)

    @property
    def has_enumerator(self):
        return self.base.has_enumerator


def succ_less(base: Ordering, x, y) -> bool:
    return SuccOrdering(base).less(x, y)


def lex(first: Ordering, second: Ordering) -> LexOrdering:
    return LexOrdering(first, second)


def exp(exponent_order: Ordering, coefficient_order: Ordering) -> ExpOrdering:
    return ExpOrdering(exponent_order, coefficient_order)


def succ(base: Ordering) -> SuccOrdering:
    return SuccOrdering(base)
