"""Tower orderings built by iterating the exponential constructor, and the diagram-to-tower map.

A tower of height ``N - 3`` is specified by base orderings ``<_2, ..., <_{N-1}``.
Level ``N-1`` is the top base itself; level ``i < N-1`` is the exponential
ordering whose exponents are level ``i+1`` terms (optionally boxed by a
successor) and whose coefficients come from ``<_i``.  The tower is level 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .constructors import ExpOrdering, SuccOrdering
from .core import Ordering, Tri
from .terms import BOTTOM, Atom, DomainError, ExpSeq, Succ, Term, as_term, unbox
from .wellfounded import as_tri, wf_oracle


class TowerSpec:
    """Height parameter ``N >= 3`` and base orderings indexed ``2 .. N-1``."""

    def __init__(self, N: int, bases: Sequence[Ordering]):
        bases = tuple(bases)
        if N < 3:
            raise ValueError("a tower needs N >= 3")
        if len(bases) != N - 2:
            raise ValueError(f"N={N} needs exactly {N - 2} base orderings, got {len(bases)}")
        self.N = N
        self.bases = bases
        self._levels: Dict[int, Ordering] = {}

    def base(self, i: int) -> Ordering:
        self._check_level(i)
        return self.bases[i - 2]

    def _check_level(self, i: int):
        if not 2 <= i <= self.N - 1:
            raise ValueError(f"level {i} outside 2..{self.N - 1}")

    def ordering(self, level: int = 2) -> Ordering:
        """The relation ``<_{E_level}``."""
        self._check_level(level)
        if level not in self._levels:
            if level == self.N - 1:
                # N = 3: the tower is its single base
                self._levels[level] = self.base(level)
            else:
                above = SuccOrdering(self.ordering(level + 1))
                eo = ExpOrdering(above, self.base(level))
                if level == 2:
                    eo.name = self.name
                    eo.tower_spec = self
                self._levels[level] = eo
        return self._levels[level]

    @property
    def name(self) -> str:
        return f"tower:N={self.N};bases=" + ",".join(b.name for b in self.bases)

    def __repr__(self):
        return f"TowerSpec({self.name})"


def tower(N: int, bases: Sequence[Ordering]) -> Ordering:
    return TowerSpec(N, bases).ordering(2)


def tower_less(spec: TowerSpec, alpha, beta, level: int = 2) -> bool:
    return spec.ordering(level).less(alpha, beta)


def _level_oracles(spec: TowerSpec, wf, budget: int) -> Dict[int, Callable]:
    if wf is None:
        wf = {}
    elif callable(wf):
        wf = {i: wf for i in range(2, spec.N - 1)}
    oracles = dict(wf)
    for i in range(2, spec.N - 1):
        if i not in oracles:
            oracles[i] = wf_oracle(spec.base(i), budget)
    return oracles


def _gated_dom(spec, t, level, oracles, memo) -> Tri:
    key = (t, level)
    if key in memo:
        return memo[key]
    if level == spec.N - 1:
        result = Tri.TRUE
    else:
        above = spec.ordering(level + 1)
        s = t.summands
        parts = []
        for i in range(len(s) - 1):
            x, y = s[i + 1][0], s[i][0]
            parts.append(Tri.of(SuccOrdering(above).relation(x, y)))
        parts.extend(_gated_dom(spec, unbox(e), level + 1, oracles, memo) for e, _ in s)
        parts.extend(as_tri(oracles[level](c)) for _, c in s)
        result = Tri.all(parts)
    memo[key] = result
    return result


def towerw_dom(spec: TowerSpec, alpha, wf=None, level: int = 2, budget: int = 64) -> Tri:
    """Hereditary wellfoundedness gate on a level-valid tower term.

    Every coefficient at every nesting level must be in the wellfounded part of
    its base, and every exponent must itself pass the gate.  ``wf`` is a
    mapping from level to verdict procedure (or one procedure for all
    levels); missing levels get a search at ``budget``.
    """
    alpha = spec.ordering(level).check(as_term(alpha))
    return _gated_dom(spec, alpha, level, _level_oracles(spec, wf, budget), {})


def towerw_less(spec: TowerSpec, alpha, beta, wf=None, level: int = 2, budget: int = 64) -> Tri:
    if not tower_less(spec, alpha, beta, level):
        return Tri.FALSE
    oracles = _level_oracles(spec, wf, budget)
    memo = {}
    return Tri.all(_gated_dom(spec, as_term(t), level, oracles, memo) for t in (alpha, beta))


def tower_bound_lt(spec: TowerSpec, alpha, a, level: int = 2) -> bool:
    """``alpha < a``: every exponent, followed down to the top base, lies below ``a``."""
    alpha = spec.ordering(level).check(as_term(alpha))
    top = SuccOrdering(spec.base(spec.N - 1))
    a = spec.base(spec.N - 1).check(as_term(a))

    def bound(t, i):
        if i == spec.N - 1:
            return top.relation(t, a)
        return all(bound(unbox(e) if i + 1 < spec.N - 1 else e, i + 1) for e, _ in t.summands)

    return bound(alpha, level)


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    level: Optional[int] = None
    path: Tuple[int, ...] = ()
    left: Optional[Term] = None
    right: Optional[Term] = None
    reason: str = ""


def tower_validity(spec: TowerSpec, t, level: int = 2) -> ValidityReport:
    """Locate the first place where ``t`` fails to be a level-valid tower term.

    ``path`` lists summand indices from the outer sum inward.
    """
    t = as_term(t)

    def walk(t, i, path):
        if i == spec.N - 1:
            if not spec.base(i).in_domain(t):
                return ValidityReport(False, i, path, t, None, "not in top base domain")
            return None
        if type(t) is not ExpSeq:
            return ValidityReport(False, i, path, t, None, "expected a sum")
        base = spec.base(i)
        above = SuccOrdering(spec.ordering(i + 1))
        s = t.summands
        for k, (e, c) in enumerate(s):
            if not base.in_domain(c):
                return ValidityReport(False, i, path + (k,), c, None, "coefficient outside base")
            bad = walk(unbox(e), i + 1, path + (k,))
            if bad:
                return bad
        for k in range(len(s) - 1):
            left, right = s[k][0], s[k + 1][0]
            if not above.relation(right, left):
                return ValidityReport(False, i, path + (k + 1,), left, right,
                                      "exponents do not strictly decrease")
        return None

    return walk(t, level, ()) or ValidityReport(True)


class DiagramNode:
    """Abstract stand-in for an ordinal diagram.

    ``seq[i]`` is the sequence ``eta_i^0, ..., eta_i^n`` at level ``i`` (its
    length is ``lh(i)``); entries may refer back to the node itself.
    ``base_token`` is the node as an element of the top base ordering and as a
    coefficient.  ``payload`` carries uninterpreted stage data.  Nodes compare
    by ``id``.
    """

    __slots__ = ("id", "base_token", "seq", "payload")

    def __init__(self, id: str, seq: Optional[Mapping[int, Sequence["DiagramNode"]]] = None,
                 base_token: Optional[Term] = None, payload=None):
        self.id = id
        self.base_token = base_token if base_token is not None else Atom(id)
        self.seq: Dict[int, Tuple[DiagramNode, ...]] = {}
        self.payload = payload
        for i, nodes in (seq or {}).items():
            self.set_sequence(i, nodes)

    def set_sequence(self, level: int, nodes: Iterable["DiagramNode"]):
        nodes = tuple(nodes)
        if not nodes:
            raise ValueError("a diagram sequence has positive length")
        self.seq[level] = nodes

    def lh(self, level: int) -> int:
        return len(self.sequence(level))

    def sequence(self, level: int) -> Tuple["DiagramNode", ...]:
        try:
            return self.seq[level]
        except KeyError:
            raise DomainError(f"diagram {self.id} has no level-{level} sequence") from None

    def __eq__(self, other):
        return isinstance(other, DiagramNode) and other.id == self.id

    def __hash__(self):
        return hash(("DiagramNode", self.id))

    def __repr__(self):
        return f"DiagramNode({self.id!r})"


def coeffs_diagram(d: DiagramNode, i: int) -> frozenset:
    """Level-2 sequence members of ``d``, then one step further per level."""
    if i < 2:
        raise ValueError("coefficient sets start at level 2")
    current = frozenset(d.sequence(2))
    for level in range(3, i + 1):
        current = frozenset(x for rho in current for x in rho.sequence(level))
    return current


def diagram_tower(d: DiagramNode, i: int, spec: TowerSpec, _memo=None) -> Term:
    """The tower image ``E_i(d)``.

    At the top level this is ``d.base_token``.  Below, with ``s = d.seq[i]``
    of length ``n + 1``, it is the sum (in this order)::

        p^E(s[n])*s[n-1] + ... + p^E(s[1])*s[0] + p^(E(s[0])+1)*_1 + p^E(d)*_1

    where ``E`` is the image one level up and ``_1`` is BOTTOM.  Exponent
    descent is not enforced here; use :func:`tower_validity` on the result.
    """
    spec._check_level(i)
    memo = {} if _memo is None else _memo
    key = (d.id, i)
    if key in memo:
        return memo[key]
    if i == spec.N - 1:
        result = d.base_token
    else:
        s = d.sequence(i)
        up = lambda node: diagram_tower(node, i + 1, spec, memo)
        summands = [(up(s[m]), s[m - 1].base_token) for m in range(len(s) - 1, 0, -1)]
        summands.append((Succ(up(s[0])), BOTTOM))
        summands.append((up(d), BOTTOM))
        result = ExpSeq(tuple(summands))
    memo[key] = result
    return result


def check_monotone_embedding(gamma: DiagramNode, eta: DiagramNode, spec: TowerSpec,
                             _memo=None) -> bool:
    """Whether ``T(gamma)`` lies below ``T(eta)`` in the successor-extended tower.

    A checker only: a True/False answer says nothing about whether ``gamma``
    really precedes ``eta`` in the diagram source.
    """
    memo = {} if _memo is None else _memo
    tg = diagram_tower(gamma, 2, spec, memo)
    te = diagram_tower(eta, 2, spec, memo)
    return SuccOrdering(spec.ordering(2)).less(tg, te)
