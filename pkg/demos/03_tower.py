"""Tower orderings collapse to their bases for small N and nest E above that."""

from ordtower import TowerSpec, exp, exp_less, nat, tower_less
from ordtower.notation import parse_term

x, y = parse_term("p^2*0"), parse_term("p^1*4+p^0*9")
four = TowerSpec(4, [nat(), nat()])
print("N=4 tower:", tower_less(four, y, x), " E(nat,nat):", exp_less(exp(nat(), nat()), y, x))

three = TowerSpec(3, [nat()])
print("N=3 tower over nat, 3 < 8:", tower_less(three, 3, 8))

# At N=5 the exponents of level 2 are themselves level-3 sums, lifted by succ.
five = TowerSpec(5, [nat(), nat(), nat()])
print("level 2 of N=5:", five.ordering(2).name)
