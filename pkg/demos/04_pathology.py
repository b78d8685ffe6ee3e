"""Orderings that look harmless on every finite piece yet may hide a descent."""

import itertools

from ordtower import (
    GlueOrder, ProofStream, WoClaim, chain, inconsistent_at, kreisel, kreisel_prime, nat,
    never_inconsistent, wf_member,
)

good, bad = kreisel(never_inconsistent()), kreisel(inconsistent_at(3))
print("consistent source, 0..9 from 9:", wf_member(good, 9, 20))
print("source failing at 3, from 10:  ", wf_member(bad, 10, 20))

# The primed variant guards each step by the base order, so chains stay short.
for k in (2, 5, 8):
    kp = kreisel_prime(inconsistent_at(k), nat())
    print(f"kreisel-prime at {k}: max rank over 0..{k + 9} is",
          max(wf_member(kp, a, 64).rank for a in range(k + 10)))

# Gluing: claimed orders keep their own comparisons, unclaimed indices do not.
glue = GlueOrder(ProofStream({0: chain(3), 1: WoClaim(chain(2)), 2: None}, "demo"))
print("first glued elements:", list(itertools.islice(glue.enumerate_domain(), 6)))
