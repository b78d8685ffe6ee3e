"""Pathological orderings driven by a partial-consistency predicate, and glued orderings.

``CON(T, n)`` ("no proof of a contradiction with code <= n") is abstracted as
any antitone predicate on the naturals.  Two sources ship: one that never
becomes inconsistent and one that becomes inconsistent from a given code on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Union

from .constructors import _Cached
from .core import Ordering
from .terms import DomainError, Nat, Pair, as_term


@dataclass(frozen=True)
class ProofSource:
    con_upto: Callable[[int], bool]
    description: str = ""


def never_inconsistent() -> ProofSource:
    return ProofSource(lambda n: True, "never inconsistent")


def inconsistent_at(k: int) -> ProofSource:
    """A contradiction proof with code ``k``: ``CON(n)`` fails for every ``n >= k``."""
    if k < 0:
        raise ValueError("proof codes are natural numbers")
    return ProofSource(lambda n: n < k, f"inconsistent at {k}")


class AntitoneError(ValueError):
    pass


def validate_source(src: ProofSource, upto: int) -> ProofSource:
    """Reject a source whose consistency verdict comes back after failing, on ``0..upto``."""
    failed_at = None
    for n in range(upto + 1):
        ok = src.con_upto(n)
        if failed_at is None and not ok:
            failed_at = n
        elif failed_at is not None and ok:
            raise AntitoneError(
                f"{src.description or 'source'}: CON fails at {failed_at} but holds at {n}")
    return src


def _nat(x) -> int:
    x = as_term(x)
    if type(x) is not Nat:
        raise DomainError(f"{x!r} is not a natural number")
    return x.n


def kreisel_less(ps: ProofSource, n, m) -> bool:
    """``n < m`` while consistent up to ``min(n, m)``, ``n > m`` once not."""
    n, m = _nat(n), _nat(m)
    if ps.con_upto(min(n, m)):
        return n < m
    return n > m


def kreisel_prime_less(ps: ProofSource, base: Ordering, n, m) -> bool:
    n, m = as_term(n), as_term(m)
    base.check(n)
    base.check(m)
    return ps.con_upto(max(_nat(n), _nat(m))) and base.relation(n, m)


class KreiselOrder(Ordering):
    def __init__(self, ps: ProofSource, name: Optional[str] = None):
        self.source = ps
        self.name = name or f"kreisel[{ps.description}]"

    def in_domain(self, t):
        return type(t) is Nat

    def relation(self, a, b):
        return kreisel_less(self.source, a, b)

    def enumerate_below(self, t):
        m = t.n
        con = self.source.con_upto
        for n in range(m):
            if con(n):
                yield Nat(n)
        if not con(m):
            for n in itertools.count(m + 1):
                yield Nat(n)

    def enumerate_domain(self):
        return (Nat(n) for n in itertools.count())


class KreiselPrimeOrder(Ordering):
    def __init__(self, ps: ProofSource, base: Ordering, name: Optional[str] = None):
        self.source = ps
        self.base = base
        self.name = name or f"kreiselprime[{ps.description}]({base.name})"

    def in_domain(self, t):
        return type(t) is Nat and self.base.in_domain(t)

    def relation(self, a, b):
        return self.source.con_upto(max(a.n, b.n)) and self.base.relation(a, b)

    def enumerate_below(self, t):
        con = self.source.con_upto
        return (x for x in self.base.enumerate_below(t) if con(max(x.n, t.n)))

    def enumerate_domain(self):
        return self.base.enumerate_domain()

    @property
    def has_enumerator(self):
        return self.base.has_enumerator


def kreisel(ps: ProofSource) -> KreiselOrder:
    return KreiselOrder(ps)


def kreisel_prime(ps: ProofSource, base: Ordering) -> KreiselPrimeOrder:
    return KreiselPrimeOrder(ps, base)


NOT_WO = None


@dataclass(frozen=True)
class WoClaim:
    """Index ``p`` codes a proof that ``ord`` is a wellordering."""
    ord: Ordering


class ProofStream:
    """Maps indices to claims; indices without an entry are not wellordering proofs."""

    def __init__(self, claims: Mapping[int, Optional[Union[WoClaim, Ordering]]] = (), name: str = "stream"):
        self.claims: Dict[int, Optional[WoClaim]] = {}
        for p, c in dict(claims).items():
            if isinstance(c, Ordering):
                c = WoClaim(c)
            self.claims[int(p)] = c
        self.name = name

    def __getitem__(self, p: int) -> Optional[WoClaim]:
        return self.claims.get(p)

    def ordering_at(self, p: int) -> Optional[Ordering]:
        claim = self.claims.get(p)
        return claim.ord if claim is not None else None


def glue_less(stream: ProofStream, x, y) -> bool:
    return GlueOrder(stream).less(x, y)


class GlueOrder(Ordering):
    """``<n, p>  <  <m, q>`` iff ``p < q``, or ``p = q`` and ``n <_p m``.

    Indices that are not wellordering proofs carry the empty ordering, so two
    pairs sharing such an index are never related.
    """

    def __init__(self, stream: ProofStream, name: Optional[str] = None):
        self.stream = stream
        self.name = name or f"glue:{stream.name}"

    def in_domain(self, t):
        if type(t) is not Pair or type(t.first) is not Nat or type(t.second) is not Nat:
            return False
        ord = self.stream.ordering_at(t.second.n)
        return ord is None or ord.in_domain(t.first)

    def relation(self, x, y):
        p, q = x.second.n, y.second.n
        if p != q:
            return p < q
        ord = self.stream.ordering_at(p)
        return ord is not None and ord.relation(x.first, y.first)

    def _index_domain(self, p: int):
        ord = self.stream.ordering_at(p)
        if ord is None:
            # no claim: comparisons at this index are all false, any first component admitted
            return (Nat(n) for n in itertools.count())
        return ord.enumerate_domain()

    def enumerate_below(self, t):
        q = t.second.n
        ord = self.stream.ordering_at(q)
        if ord is not None:
            for n in ord.enumerate_below(t.first):
                yield Pair(n, t.second)
        for p in range(q - 1, -1, -1):
            for n in self._index_domain(p):
                yield Pair(n, Nat(p))

    def enumerate_domain(self):
        caches = []
        for r in itertools.count(1):
            caches.append(_Cached(self._index_domain(len(caches))))
            for p, cache in enumerate(caches):
                for n in cache.take(r)[r - 1 if p < r - 1 else 0:]:
                    yield Pair(n, Nat(p))
