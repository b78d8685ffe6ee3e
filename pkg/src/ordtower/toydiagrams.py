"""Random toy diagrams whose tower images are known to descend along parent/child edges.

Real ordinal diagrams are out of reach, so this module grows finite families
of :class:`DiagramNode` objects under closure rules that make the
diagram-to-tower map provably monotone on every generated parent/child pair.
The rules are a stand-in for the external closure conditions, not a
reconstruction of them.

The diagram order is a key order on node atoms (the top base).  Coefficient
bases get independent random keys per level, with ``BOTTOM`` least.

A child ``g`` of ``h`` gets a smaller key and is then built level by level
from the top down, so that ``E(g) < E(h)`` one level up is already known when
its level-``i`` sequence is chosen.  With ``s = h.seq[i] = (s0, ..., sn)`` the
child takes one of

* ``s`` unchanged,
* ``(h,) + s`` when ``E(h) < E(s0)`` strictly and ``n < 2``,
* ``s`` with ``sn`` swapped for a pool node ``r`` lying strictly between
  ``E(s(n-1))`` and ``E(sn)`` (for ``n = 0``: ``E(g) <= E(r) < E(s0)``),
* ``s`` with its last entry dropped, when ``n >= 1``,

where ``E`` is the image one level up.  Each choice keeps
``g <= g0 < g1 < ...`` one level up (so exponents descend) and makes the
level-``i`` image of ``g`` smaller than that of ``h``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .constructors import SuccOrdering
from .core import FunctionOrder
from .terms import Atom, Bottom
from .tower import DiagramNode, TowerSpec, diagram_tower

MAX_LH = 3


def _key_order(name: str, keys: Dict[str, Fraction], with_bottom: bool) -> FunctionOrder:
    def rank(t):
        return Fraction(-10**9) if type(t) is Bottom else keys[t.id]

    def relation(a, b):
        return rank(a) < rank(b)

    def in_domain(t):
        if type(t) is Bottom:
            return with_bottom
        return type(t) is Atom and t.id in keys

    return FunctionOrder(name, relation, in_domain)


@dataclass
class DiagramFamily:
    spec: TowerSpec
    nodes: List[DiagramNode] = field(default_factory=list)
    pairs: List[Tuple[DiagramNode, DiagramNode]] = field(default_factory=list)
    keys: Dict[str, Fraction] = field(default_factory=dict)
    memo: dict = field(default_factory=dict)

    def image(self, node: DiagramNode, level: int):
        return diagram_tower(node, level, self.spec, self.memo)

    def lt(self, a: DiagramNode, b: DiagramNode, level: int) -> bool:
        if level == self.spec.N - 1:
            return self.keys[a.id] < self.keys[b.id]
        return self.spec.ordering(level).relation(self.image(a, level), self.image(b, level))


class DiagramGenerator:
    """Grow a :class:`DiagramFamily` of height ``N`` with a seeded RNG."""

    def __init__(self, N: int, seed: Optional[int] = None, candidates: int = 30):
        if N < 3:
            raise ValueError("a tower needs N >= 3")
        self.N = N
        self.rng = random.Random(seed)
        self.candidates = candidates
        self.level_keys: Dict[int, Dict[str, Fraction]] = {i: {} for i in range(2, N - 1)}
        top_keys: Dict[str, Fraction] = {}
        bases = [_key_order(f"toy{i}", self.level_keys[i], True) for i in range(2, N - 1)]
        bases.append(_key_order("toytop", top_keys, False))
        self.family = DiagramFamily(TowerSpec(N, bases), keys=top_keys)

    def _register(self, node: DiagramNode, key: Fraction):
        self.family.keys[node.id] = key
        for keys in self.level_keys.values():
            keys[node.id] = Fraction(self.rng.randrange(10**6), 10**6)
        self.family.nodes.append(node)

    def _fresh_key(self, below: Optional[Fraction] = None) -> Fraction:
        used = set(self.family.keys.values())
        while True:
            step = Fraction(self.rng.randrange(1, 10**6), 10**6)
            key = (below - step) if below is not None else Fraction(self.rng.randrange(10**6), 1000)
            if key not in used:
                return key

    def anchor(self) -> DiagramNode:
        node = DiagramNode(f"d{len(self.family.nodes)}")
        for i in range(2, self.N - 1):
            node.set_sequence(i, (node,))
        self._register(node, self._fresh_key())
        return node

    def child(self, parent: DiagramNode) -> DiagramNode:
        fam = self.family
        node = DiagramNode(f"d{len(fam.nodes)}")
        self._register(node, self._fresh_key(fam.keys[parent.id]))
        for i in range(self.N - 2, 1, -1):
            node.set_sequence(i, self._child_sequence(node, parent, i))
        fam.pairs.append((node, parent))
        return node

    def _child_sequence(self, g: DiagramNode, h: DiagramNode, i: int):
        fam = self.family
        s = h.sequence(i)
        n = len(s) - 1
        up = i + 1
        options = [s]
        if n + 1 < MAX_LH and fam.lt(h, s[0], up):
            options.append((h,) + s)
        if n >= 1:
            options.append(s[:-1])
        pool = self.rng.sample(fam.nodes, min(self.candidates, len(fam.nodes)))
        for r in pool:
            if n >= 1:
                ok = fam.lt(s[n - 1], r, up) and fam.lt(r, s[n], up)
            else:
                ok = (r is g or fam.lt(g, r, up)) and fam.lt(r, s[0], up)
            if ok:
                options.append(s[:-1] + (r,))
                break
        return self.rng.choice(options)

    def grow(self, size: int, anchors: int = 3) -> DiagramFamily:
        for _ in range(anchors):
            self.anchor()
        while len(self.family.nodes) < size:
            self.child(self.rng.choice(self.family.nodes))
        return self.family


def generate(N: int, size: int, seed: Optional[int] = None, anchors: int = 3) -> DiagramFamily:
    return DiagramGenerator(N, seed).grow(size, anchors)


def tower_of(family: DiagramFamily, node: DiagramNode):
    """``T(node)``: the level-2 image."""
    return family.image(node, 2)


def succ_tower(family: DiagramFamily) -> SuccOrdering:
    return SuccOrdering(family.spec.ordering(2))
