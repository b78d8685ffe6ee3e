"""Bounded descending-chain search, and the evidence each verdict carries.

p^1*0 has infinitely many predecessors p^0*c, so the search gives up on
branching rather than claiming an answer it cannot back up.
"""

from ordtower import as_term, esum, exp, explicit, nat, verify_verdict, wf_member
from ordtower.notation import format_term

cases = [
    ("nat", nat(), 7),
    ("E(nat, nat)", exp(nat(), nat()), esum((1, 0))),
    ("a two-cycle", explicit([(0, 1), (1, 0)]), 0),
]
for label, order, start in cases:
    verdict = wf_member(order, start, budget=40, max_branching=50)
    print(f"{label:>12} from {format_term(as_term(start))}: {verdict}")
    print(" " * 14, "evidence checks out:", verify_verdict(order, start, verdict))
