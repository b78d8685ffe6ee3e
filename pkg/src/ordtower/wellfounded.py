"""Wellfoundedness search, ranks and order types, plus a Cantor normal form oracle.

Membership in the wellfounded part of a relation is not decidable in general,
so :func:`wf_member` returns one of three verdicts, each carrying evidence
that :func:`verify_verdict` re-checks against the relation:

* ``Wellfounded(rank)`` - the whole descent cone was explored; ``rank`` is
  the length of its longest descending chain.
* ``IllFounded(lasso)`` - a descending chain that revisits an element.
* ``Unknown(chain)``    - the budget ran out; ``chain`` is a descending chain
  of ``budget`` steps (or shorter, when a branching/node cap tripped).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import total_ordering
from typing import Callable, Dict, Optional, Tuple

import networkx as nx

from .core import FiniteRestriction, Ordering, Tri, check_restriction_axioms, NoEnumerator
from .terms import DomainError, ExpSeq, Nat, Term, as_term

__all__ = [
    "Wellfounded", "IllFounded", "Unknown", "WfVerdict", "wf_member", "wf_oracle",
    "add_verdict_listener", "remove_verdict_listener",
    "verify_verdict", "EvidenceError", "CycleError", "NotLinear", "rank_finite",
    "order_type_finite", "CnfOrdinal", "cnf_oracle", "embed_exp_cnf",
]


@dataclass(frozen=True)
class Wellfounded:
    rank: int
    tri = Tri.TRUE


@dataclass(frozen=True)
class IllFounded:
    lasso: Tuple[Term, ...]
    tri = Tri.FALSE


@dataclass(frozen=True)
class Unknown:
    chain: Tuple[Term, ...]
    budget: int
    reason: str = "budget"
    tri = Tri.UNKNOWN


WfVerdict = (Wellfounded, IllFounded, Unknown)

_DONE = object()


_listeners: list = []


def add_verdict_listener(fn: Callable[[Ordering, Term, object], None]) -> None:
    """Call ``fn(ord, a, verdict)`` after every :func:`wf_member` search (for audits)."""
    _listeners.append(fn)


def remove_verdict_listener(fn) -> None:
    _listeners.remove(fn)


def wf_member(ord: Ordering, a, budget: int, *, max_branching: int = 4096,
              max_nodes: int = 200_000):
    """Search the descent cone of ``a`` depth first.

    ``budget`` bounds the number of descending steps followed from ``a``.
    ``max_branching`` bounds how many predecessors of a single element are
    examined and ``max_nodes`` bounds the total number of elements visited;
    both exist because predecessor enumerations may be infinite.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    a = ord.check(as_term(a))
    if not ord.has_enumerator:
        raise NoEnumerator(f"{ord.name} cannot enumerate predecessors")
    verdict = _search(ord, a, budget, max_branching, max_nodes)
    for fn in _listeners:
        fn(ord, a, verdict)
    return verdict


def _search(ord, a, budget, max_branching, max_nodes):
    ranks: Dict[Term, int] = {}
    path = [a]
    on_path = {a: 0}
    # frame: [element, predecessor iterator, best rank so far, predecessors seen]
    frames = [[a, iter(ord.enumerate_below(a)), 0, 0]]
    visited = 1
    while frames:
        frame = frames[-1]
        child = next(frame[1], _DONE)
        if child is _DONE:
            frames.pop()
            node = path.pop()
            del on_path[node]
            ranks[node] = frame[2]
            if frames:
                parent = frames[-1]
                parent[2] = max(parent[2], frame[2] + 1)
            continue
        frame[3] += 1
        if child in on_path:
            return IllFounded(tuple(path) + (child,))
        done = ranks.get(child)
        if done is not None:
            frame[2] = max(frame[2], done + 1)
            continue
        if len(path) - 1 >= budget:
            return Unknown(tuple(path), budget)
        if frame[3] > max_branching:
            return Unknown(tuple(path), budget, "branching")
        visited += 1
        if visited > max_nodes:
            return Unknown(tuple(path), budget, "nodes")
        path.append(child)
        on_path[child] = len(path) - 1
        frames.append([child, iter(ord.enumerate_below(child)), 0, 0])
    return Wellfounded(ranks[a])


def wf_oracle(ord: Ordering, budget: int, **kwargs) -> Callable[[Term], object]:
    """A memoizing verdict procedure for ``ord`` at a fixed budget."""
    cache: Dict[Term, object] = {}

    def oracle(t):
        t = as_term(t)
        if t not in cache:
            cache[t] = wf_member(ord, t, budget, **kwargs)
        return cache[t]

    oracle.ordering = ord
    oracle.budget = budget
    return oracle


def as_tri(value) -> Tri:
    if isinstance(value, Tri):
        return value
    if isinstance(value, bool):
        return Tri.of(value)
    return value.tri


class EvidenceError(AssertionError):
    """A verdict's evidence does not check out against its relation."""


def _cone_graph(ord: Ordering, a: Term, limit: int) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_node(a)
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in ord.enumerate_below(x):
            if y not in g:
                if g.number_of_nodes() >= limit:
                    raise EvidenceError("descent cone larger than the verification limit")
                queue.append(y)
            g.add_edge(x, y)
    return g


def verify_verdict(ord: Ordering, a, verdict, *, cone_limit: int = 100_000) -> bool:
    """Re-check a verdict's evidence; raises EvidenceError on any mismatch.

    Ranks are recomputed independently as the longest path in the explicit
    descent cone (breadth-first cone construction, networkx longest path).
    """
    a = as_term(a)
    if isinstance(verdict, Wellfounded):
        g = _cone_graph(ord, a, cone_limit)
        if not nx.is_directed_acyclic_graph(g):
            raise EvidenceError("Wellfounded verdict but the descent cone has a cycle")
        for x, y in g.edges:
            if not ord.relation(y, x):
                raise EvidenceError(f"enumerated predecessor {y!r} is not below {x!r}")
        longest = nx.dag_longest_path_length(g) if g.number_of_edges() else 0
        if longest != verdict.rank:
            raise EvidenceError(f"rank {verdict.rank} but the longest descent is {longest}")
        return True
    if isinstance(verdict, IllFounded):
        chain = verdict.lasso
        if len(chain) < 2 or chain[0] != a:
            raise EvidenceError("lasso must start at the queried element")
        if chain[-1] not in chain[:-1]:
            raise EvidenceError("lasso does not revisit an element")
    elif isinstance(verdict, Unknown):
        chain = verdict.chain
        if not chain or chain[0] != a:
            raise EvidenceError("chain must start at the queried element")
        if verdict.reason == "budget" and len(chain) - 1 != verdict.budget:
            raise EvidenceError(f"chain has {len(chain) - 1} steps, budget is {verdict.budget}")
    else:
        raise TypeError(f"not a verdict: {verdict!r}")
    for x, y in zip(chain, chain[1:]):
        if not ord.relation(y, x):
            raise EvidenceError(f"{y!r} is not below {x!r}")
    return True


class CycleError(ValueError):
    def __init__(self, lasso):
        super().__init__(f"descending cycle: {lasso!r}")
        self.lasso = tuple(lasso)


class NotLinear(ValueError):
    def __init__(self, witness, kind):
        super().__init__(f"not a strict linear order ({kind} fails at {witness!r})")
        self.witness = witness
        self.kind = kind


def rank_finite(r: FiniteRestriction, a) -> int:
    """Rank of ``a`` in a finite restriction: one more than its predecessors' ranks."""
    a = as_term(a)
    if a not in set(r.elements):
        raise DomainError(f"{a!r} is not an element of the restriction")
    # a path of distinct elements never exceeds len(r) - 1 steps, so the
    # search is exact at this budget
    verdict = wf_member(r.as_ordering(), a, max(len(r), 1))
    if isinstance(verdict, IllFounded):
        raise CycleError(verdict.lasso)
    assert isinstance(verdict, Wellfounded)
    return verdict.rank


def order_type_finite(r: FiniteRestriction) -> int:
    report = check_restriction_axioms(r)
    if not (report.transitive and report.irreflexive and report.linear):
        raise NotLinear(report.witness, report.witness_kind)
    return len(r.elements)


@total_ordering
@dataclass(frozen=True)
class CnfOrdinal:
    """An ordinal below epsilon_0 in Cantor normal form.

    ``terms`` holds ``(exponent, coefficient)`` with strictly decreasing
    exponents and positive coefficients; zero is the empty tuple.
    """

    terms: Tuple[Tuple["CnfOrdinal", int], ...] = ()

    def __post_init__(self):
        prev = None
        for e, c in self.terms:
            if not isinstance(c, int) or c <= 0:
                raise ValueError("coefficients must be positive integers")
            if prev is not None and not e < prev:
                raise ValueError("exponents must strictly decrease")
            prev = e

    @classmethod
    def of(cls, n: int) -> "CnfOrdinal":
        if n < 0:
            raise ValueError("negative ordinal")
        return cls(((ZERO, n),)) if n else ZERO

    @property
    def key(self):
        return tuple((e.key, c) for e, c in self.terms)

    def __lt__(self, other):
        if not isinstance(other, CnfOrdinal):
            return NotImplemented
        return self.key < other.key

    def cmp(self, other) -> int:
        a, b = self.key, other.key
        return (a > b) - (a < b)

    def __add__(self, other):
        if not isinstance(other, CnfOrdinal):
            return NotImplemented
        if not other.terms:
            return self
        lead, lead_c = other.terms[0]
        kept = []
        for e, c in self.terms:
            if lead < e:
                kept.append((e, c))
            elif e == lead:
                kept.append((e, c + lead_c))
                return CnfOrdinal(tuple(kept) + other.terms[1:])
            else:
                break
        return CnfOrdinal(tuple(kept) + other.terms)

    def omega_pow(self) -> "CnfOrdinal":
        return CnfOrdinal(((self, 1),))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if not e.terms:
                parts.append(str(c))
                continue
            if e == ONE:
                base = "w"
            elif len(e.terms) == 1 and not e.terms[0][0].terms:
                base = f"w^{e}"
            else:
                base = f"w^({e})"
            parts.append(base if c == 1 else f"{base}*{c}")
        return "+".join(parts)


ZERO = CnfOrdinal(())
ONE = CnfOrdinal(((ZERO, 1),))
OMEGA = ONE.omega_pow()


def cnf_oracle(op: str, x: CnfOrdinal, y: Optional[CnfOrdinal] = None):
    """Dispatch ``cmp`` (returns 'less'/'equal'/'greater'), ``add`` or ``omega_pow``."""
    if op == "cmp":
        return ("less", "equal", "greater")[x.cmp(y) + 1]
    if op == "add":
        return x + y
    if op == "omega_pow":
        return x.omega_pow()
    raise ValueError(f"unknown oracle operation {op!r}")


def embed_exp_cnf(alpha) -> CnfOrdinal:
    """Map ``sum p^e * c`` over naturals to ``sum w^e * (c + 1)``.

    Exponents may themselves be sums (nested towers over naturals); they are
    embedded recursively.  The coefficient shift keeps zero coefficients from
    collapsing terms.
    """
    alpha = as_term(alpha)
    if isinstance(alpha, Nat):
        return CnfOrdinal.of(alpha.n)
    if not isinstance(alpha, ExpSeq):
        raise DomainError(f"cannot embed {alpha!r}")
    terms = []
    for e, c in alpha.summands:
        if not isinstance(c, Nat):
            raise DomainError(f"coefficient {c!r} is not a natural number")
        terms.append((embed_exp_cnf(e), c.n + 1))
    for (e1, _), (e2, _) in zip(terms, terms[1:]):
        if not e2 < e1:
            raise DomainError(f"exponents of {alpha!r} do not strictly decrease")
    return CnfOrdinal(tuple(terms))
