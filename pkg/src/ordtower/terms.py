"""Terms: the single recursive value type every ordering in the package works on.

A term is one of

* ``Nat(n)``         a natural number,
* ``Pair(a, b)``     an ordered pair,
* ``ExpSeq(...)``    a formal sum ``p^e0*c0 + p^e1*c1 + ...`` stored as a tuple
                     of ``(exponent, coefficient)`` pairs,
* ``Succ(x)``        the successor box ``x+1``,
* ``BOTTOM``         the adjoined least coefficient ``1``,
* ``Atom(id)``       a named opaque element (diagram nodes, stream elements).

Equality is structural and is the only notion of term equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Tuple, Union


class DomainError(ValueError):
    """A term was handed to an ordering whose domain does not contain it."""


@dataclass(frozen=True, slots=True)
class Nat:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise TypeError(f"Nat expects a natural number, got {self.n!r}")

    def __repr__(self):
        return f"Nat({self.n})"


@dataclass(frozen=True, slots=True)
class Pair:
    first: "Term"
    second: "Term"


@dataclass(frozen=True, slots=True)
class ExpSeq:
    summands: Tuple[Tuple["Term", "Term"], ...] = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.summands, tuple):
            object.__setattr__(self, "summands", tuple(tuple(s) for s in self.summands))
        object.__setattr__(self, "_hash", hash(("ExpSeq", self.summands)))

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    @property
    def exponents(self):
        return tuple(e for e, _ in self.summands)

    @property
    def coefficients(self):
        return tuple(c for _, c in self.summands)


@dataclass(frozen=True, slots=True)
class Succ:
    base: "Term"

    def __post_init__(self):
        if not isinstance(self.base, (ExpSeq, Nat, Atom)):
            raise TypeError(f"Succ only boxes ExpSeq, Nat or Atom terms, got {self.base!r}")


@dataclass(frozen=True, slots=True)
class Bottom:
    def __repr__(self):
        return "BOTTOM"


BOTTOM = Bottom()


@dataclass(frozen=True, slots=True)
class Atom:
    id: str
    payload: Any = field(default=None, compare=False, hash=False)

    def __repr__(self):
        return f"Atom({self.id!r})"


Term = Union[Nat, Pair, ExpSeq, Succ, Bottom, Atom]
TERM_TYPES = (Nat, Pair, ExpSeq, Succ, Bottom, Atom)
TERM_TYPE_SET = frozenset(TERM_TYPES)
EMPTY = ExpSeq(())


def as_term(x) -> Term:
    """Coerce plain Python ints (and tuples of them, as pairs) to terms."""
    if type(x) in TERM_TYPE_SET:
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Nat(x)
    if isinstance(x, tuple) and len(x) == 2:
        return Pair(as_term(x[0]), as_term(x[1]))
    raise TypeError(f"cannot interpret {x!r} as a term")


def esum(*summands: Iterable) -> ExpSeq:
    """Build ``p^e0*c0 + p^e1*c1 + ...`` from ``(e, c)`` pairs; ints become ``Nat``.

    >>> esum((2, 5), (1, 1))
    ExpSeq(summands=((Nat(2), Nat(5)), (Nat(1), Nat(1))))
    """
    return ExpSeq(tuple((as_term(e), as_term(c)) for e, c in summands))


def unbox(t: Term) -> Term:
    return t.base if isinstance(t, Succ) else t


def term_size(t: Term) -> int:
    if isinstance(t, Pair):
        return 1 + term_size(t.first) + term_size(t.second)
    if isinstance(t, ExpSeq):
        return 1 + sum(term_size(e) + term_size(c) for e, c in t.summands)
    if isinstance(t, Succ):
        return 1 + term_size(t.base)
    return 1
