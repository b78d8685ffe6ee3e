"""Random toy diagrams mapped into the tower, checked for monotonicity."""

from ordtower import check_monotone_embedding
from ordtower.notation import format_term
from ordtower.toydiagrams import generate, tower_of

family = generate(N=4, size=40, seed=7)
child, parent = family.pairs[-1]
print("child  ", child.id, "->", format_term(tower_of(family, child)))
print("parent ", parent.id, "->", format_term(tower_of(family, parent)))

ok = sum(check_monotone_embedding(g, h, family.spec, family.memo) for g, h in family.pairs)
print(f"{ok} of {len(family.pairs)} parent/child pairs descend in the tower")
