"""Formal sums over nat, compared against their Cantor normal form shadow."""

from ordtower import add, embed_exp_cnf, esum, exp, exp_dom, exp_less, nat, SeamError
from ordtower.notation import format_term, parse_term

E = exp(nat(), nat())

a = parse_term("p^2*5+p^1*1")
b = parse_term("p^2*5+p^1*2")
print(format_term(a), "<", format_term(b), "?", exp_less(E, a, b))

# A proper prefix sits below its extensions, even with a larger coefficient.
short, longer = esum((3, 9)), esum((3, 9), (0, 0))
print(format_term(short), "<", format_term(longer), "?", exp_less(E, short, longer))

# Shifting coefficients by one turns a sum into an ordinal below epsilon_0.
for t in (short, longer):
    print("  cnf of", format_term(t), "=", embed_exp_cnf(t))

# Exponents must strictly decrease; addition only checks the seam.
print("p^1*0+p^1*1 in domain?", exp_dom(E, parse_term("p^1*0+p^1*1")))
print("p^3*1 + p^1*2 =", format_term(add(esum((3, 1)), esum((1, 2)), E)))
try:
    add(esum((1, 1)), esum((2, 0)), E)
except SeamError as err:
    print("p^1*1 + p^2*0 fails:", err)
