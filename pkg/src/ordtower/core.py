"""Ordering descriptors, finite restrictions and relation-axiom checks."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence, Tuple

from .terms import TERM_TYPE_SET, DomainError, Nat, Term, as_term


class NoEnumerator(TypeError):
    """The ordering cannot list the elements below a term."""


class Tri(enum.Enum):
    """Three-valued verdict for relations gated by wellfounded-part membership."""

    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool) -> "Tri":
        return cls.TRUE if flag else cls.FALSE

    @classmethod
    def all(cls, values: Iterable["Tri"]) -> "Tri":
        # Kleene conjunction: FALSE dominates UNKNOWN
        seen_unknown = False
        for v in values:
            if v is cls.FALSE:
                return cls.FALSE
            if v is cls.UNKNOWN:
                seen_unknown = True
        return cls.UNKNOWN if seen_unknown else cls.TRUE


class Ordering:
    """A named, decidable strict relation on terms.

    Subclasses implement :meth:`relation` (assumes both arguments are in the
    domain) and :meth:`in_domain`.  :meth:`enumerate_below` lists every
    element strictly below a term; it may be an infinite generator, callers
    bound their own consumption.  :meth:`enumerate_domain` lists the domain,
    also possibly infinitely.
    """

    name: str = "ordering"

    def relation(self, a: Term, b: Term) -> bool:
        raise NotImplementedError

    def in_domain(self, t: Term) -> bool:
        raise NotImplementedError

    def enumerate_below(self, t: Term) -> Iterator[Term]:
        raise NoEnumerator(f"{self.name} cannot enumerate predecessors")

    def enumerate_domain(self) -> Iterator[Term]:
        raise NoEnumerator(f"{self.name} cannot enumerate its domain")

    @property
    def has_enumerator(self) -> bool:
        return type(self).enumerate_below is not Ordering.enumerate_below

    def check(self, t: Term) -> Term:
        if not self.in_domain(t):
            raise DomainError(f"{t!r} is not in the domain of {self.name}")
        return t

    def less(self, a, b) -> bool:
        return less(self, a, b)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


def less(ord: Ordering, a, b) -> bool:
    """Checked entry point: ``a < b`` in ``ord``.

    Raises DomainError if either side lies outside the domain.
    """
    if type(a) not in TERM_TYPE_SET:
        a = as_term(a)
    if type(b) not in TERM_TYPE_SET:
        b = as_term(b)
    in_domain = ord.in_domain
    if not in_domain(a):
        raise DomainError(f"{a!r} is not in the domain of {ord.name}")
    if not in_domain(b):
        raise DomainError(f"{b!r} is not in the domain of {ord.name}")
    return ord.relation(a, b)


class NatOrder(Ordering):
    name = "nat"

    def relation(self, a, b):
        return a.n < b.n

    def in_domain(self, t):
        return type(t) is Nat

    def enumerate_below(self, t):
        return (Nat(i) for i in range(t.n))

    def enumerate_domain(self):
        return (Nat(i) for i in itertools.count())


class ChainOrder(Ordering):
    """The finite chain ``0 < 1 < ... < k-1``."""

    def __init__(self, k: int):
        if k < 0:
            raise ValueError("chain length must be non-negative")
        self.k = k
        self.name = f"chain:{k}"

    def relation(self, a, b):
        return a.n < b.n

    def in_domain(self, t):
        return type(t) is Nat and t.n < self.k

    def enumerate_below(self, t):
        return (Nat(i) for i in range(t.n))

    def enumerate_domain(self):
        return (Nat(i) for i in range(self.k))


class ExplicitOrder(Ordering):
    """A finite relation given by its edge table; taken as-is, not closed."""

    def __init__(self, elements: Iterable, edges: Iterable[Tuple], name: str = "explicit"):
        self.elements = tuple(dict.fromkeys(as_term(e) for e in elements))
        self.edges = frozenset((as_term(a), as_term(b)) for a, b in edges)
        known = set(self.elements)
        for a, b in self.edges:
            if a not in known or b not in known:
                raise DomainError(f"edge {a!r} < {b!r} mentions an undeclared element")
        self._below = {e: [] for e in self.elements}
        for e in self.elements:
            for a in self.elements:
                if (a, e) in self.edges:
                    self._below[e].append(a)
        self.name = name

    def relation(self, a, b):
        return (a, b) in self.edges

    def in_domain(self, t):
        return t in self._below

    def enumerate_below(self, t):
        return iter(self._below[t])

    def enumerate_domain(self):
        return iter(self.elements)


class FunctionOrder(Ordering):
    """Wrap plain callables as an ordering (handy for ad-hoc bases)."""

    def __init__(self, name: str, relation: Callable[[Term, Term], bool],
                 in_domain: Callable[[Term], bool],
                 enumerate_below: Optional[Callable[[Term], Iterable[Term]]] = None,
                 enumerate_domain: Optional[Callable[[], Iterable[Term]]] = None):
        self.name = name
        self._relation = relation
        self._in_domain = in_domain
        self._below = enumerate_below
        self._domain = enumerate_domain

    def relation(self, a, b):
        return self._relation(a, b)

    def in_domain(self, t):
        return self._in_domain(t)

    def enumerate_below(self, t):
        if self._below is None:
            raise NoEnumerator(f"{self.name} cannot enumerate predecessors")
        return iter(self._below(t))

    def enumerate_domain(self):
        if self._domain is None:
            raise NoEnumerator(f"{self.name} cannot enumerate its domain")
        return iter(self._domain())

    @property
    def has_enumerator(self):
        return self._below is not None


def nat() -> NatOrder:
    return NatOrder()


def chain(k: int) -> ChainOrder:
    return ChainOrder(k)


def explicit(edges: Iterable[Tuple], elements: Optional[Iterable] = None,
             name: str = "explicit") -> ExplicitOrder:
    edges = [(as_term(a), as_term(b)) for a, b in edges]
    if elements is None:
        elements = [x for e in edges for x in e]
    return ExplicitOrder(elements, edges, name)


@dataclass(frozen=True)
class FiniteRestriction:
    elements: Tuple[Term, ...]
    edges: frozenset
    source: str

    def __post_init__(self):
        known = set(self.elements)
        if any(a not in known or b not in known for a, b in self.edges):
            raise ValueError("restriction edges must stay inside its elements")

    def __len__(self):
        return len(self.elements)

    def as_ordering(self) -> ExplicitOrder:
        return ExplicitOrder(self.elements, self.edges, name=f"{self.source}|finite")


def restrict(ord: Ordering, s: Iterable) -> FiniteRestriction:
    elements = tuple(dict.fromkeys(as_term(x) for x in s))
    for x in elements:
        ord.check(x)
    edges = frozenset((a, b) for a in elements for b in elements if ord.relation(a, b))
    return FiniteRestriction(elements, edges, ord.name)


@dataclass(frozen=True)
class AxiomReport:
    transitive: bool
    irreflexive: bool
    linear: bool
    witness: Optional[tuple] = None
    witness_kind: Optional[str] = None

    @property
    def strict_order(self) -> bool:
        return self.transitive and self.irreflexive


def relation_matrix(ord: Ordering, elements: Sequence[Term]):
    return [[ord.relation(a, b) for b in elements] for a in elements]


def _axioms_from_matrix(elements, rel) -> AxiomReport:
    n = len(elements)
    irreflexive = transitive = linear = True
    witness = kind = None

    def note(w, k):
        nonlocal witness, kind
        if witness is None:
            witness, kind = w, k

    for i in range(n):
        if rel[i][i]:
            irreflexive = False
            note((elements[i], elements[i]), "irreflexive")
            break
    for i in range(n):
        row = rel[i]
        for j in range(n):
            if not row[j]:
                continue
            rj = rel[j]
            for k in range(n):
                if rj[k] and not row[k]:
                    transitive = False
                    note((elements[i], elements[j], elements[k]), "transitive")
                    break
            if not transitive:
                break
        if not transitive:
            break
    for i in range(n):
        for j in range(i + 1, n):
            if not rel[i][j] and not rel[j][i]:
                linear = False
                note((elements[i], elements[j]), "linear")
                break
        if not linear:
            break
    return AxiomReport(transitive, irreflexive, linear, witness, kind)


def check_order_axioms(ord: Ordering, s: Iterable) -> AxiomReport:
    """Exhaustively test transitivity, irreflexivity and linearity on ``s``.

    The witness names the first violation found, checking irreflexivity,
    then transitivity, then linearity.  Elements are scanned in the order
    given (duplicates dropped).
    """
    elements = tuple(dict.fromkeys(as_term(x) for x in s))
    for x in elements:
        ord.check(x)
    return _axioms_from_matrix(elements, relation_matrix(ord, elements))


def check_restriction_axioms(r: FiniteRestriction) -> AxiomReport:
    rel = [[(a, b) in r.edges for b in r.elements] for a in r.elements]
    return _axioms_from_matrix(r.elements, rel)
