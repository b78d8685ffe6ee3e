"""Shared strategies and brute-force oracles for the test suite."""

import itertools
import random

from hypothesis import strategies as st

from ordtower import BOTTOM, Atom, ExpSeq, Nat, Pair, Succ, esum, explicit

ATOM_IDS = st.text(alphabet="abcxyz019_.-", min_size=1, max_size=4)


def nat_exp_terms(max_exp=5, max_coeff=5, max_len=3):
    """Valid exp(nat, nat) sums: strictly decreasing exponents."""
    def build(data):
        exps, coeffs = data
        return esum(*zip(sorted(exps, reverse=True), coeffs))

    return (st.sets(st.integers(0, max_exp), max_size=max_len)
            .flatmap(lambda s: st.tuples(st.just(s), st.lists(st.integers(0, max_coeff),
                                                              min_size=len(s), max_size=len(s))))
            .map(build))


def any_terms(max_leaves=12):
    """Arbitrary (not necessarily domain-valid) terms, for the notation round trip."""
    leaves = st.one_of(st.integers(0, 50).map(Nat), st.just(BOTTOM), ATOM_IDS.map(Atom))

    def extend(children):
        boxable = st.one_of(children.filter(lambda t: isinstance(t, (ExpSeq, Nat, Atom))))
        return st.one_of(
            st.tuples(children, children).map(lambda p: Pair(*p)),
            st.lists(st.tuples(children, children), max_size=3).map(lambda s: ExpSeq(tuple(s))),
            boxable.map(Succ),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def all_nat_exp_terms(max_exp, max_coeff, max_len):
    """Every valid exp(nat, nat) sum within the bounds (exponents, coefficients inclusive)."""
    out = []
    for length in range(max_len + 1):
        for exps in itertools.combinations(range(max_exp, -1, -1), length):
            for cs in itertools.product(range(max_coeff + 1), repeat=length):
                out.append(esum(*zip(exps, cs)))
    return out


def random_strict_order(rng: random.Random, size: int, density: float = 0.4):
    """A random transitive irreflexive relation on Nat(0..size-1).

    Edges go from a lower to a higher position in a random permutation (so the
    relation is acyclic) and are then closed transitively.
    """
    perm = list(range(size))
    rng.shuffle(perm)
    pos = {x: i for i, x in enumerate(perm)}
    rel = {(a, b) for a in range(size) for b in range(size)
           if pos[a] < pos[b] and rng.random() < density}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return explicit(rel, elements=range(size), name=f"rand{size}")


def descends(relation, chain):
    return all(relation(y, x) for x, y in zip(chain, chain[1:]))


# --- fixture corpus ---------------------------------------------------------------

def random_order_text(rng: random.Random, depth: int = 2) -> str:
    leaves = ["nat", f"chain:{rng.randint(0, 4)}", "kreisel:ok", f"kreisel:bad={rng.randint(0, 9)}",
              "glue:demo", "file:cycle.rel"]
    if depth == 0 or rng.random() < 0.4:
        return rng.choice(leaves)
    kind = rng.choice(["lex", "exp", "succ", "tower", "kreiselprime"])
    sub = lambda: random_order_text(rng, depth - 1)
    if kind in ("lex", "exp"):
        return f"{kind}({sub()},{sub()})"
    if kind == "succ":
        return f"succ({sub()})"
    if kind == "kreiselprime":
        return f"kreiselprime:bad={rng.randint(0, 9)};base={sub()}"
    n = rng.randint(3, 5)
    return f"tower:N={n};bases=" + ",".join(sub() for _ in range(n - 2))


def random_term_text(rng: random.Random) -> str:
    summands = []
    for e in sorted(rng.sample(range(6), rng.randint(0, 3)), reverse=True):
        summands.append(f"p^{e}*{rng.randint(0, 5)}")
    return "+".join(summands) or "0"


def random_fixture_text(rng: random.Random) -> str:
    lines = ["# generated fixture"]
    names = [f"o{i}" for i in range(rng.randint(1, 4))]
    for name in names:
        lines.append(f"[order {name}] expr={random_order_text(rng)}")
    for p in range(rng.randint(0, 4)):
        claim = "notwo" if rng.random() < 0.3 else "wo:" + random_order_text(rng, 1)
        lines.append(f"[stream s{rng.randint(0, 1)}] {p}={claim}")
    for _ in range(rng.randint(1, 6)):
        kind = rng.choice(["cmp", "dom", "wf", "rank", "ordertype", "enum", "dot"])
        parts = [f"kind={kind}", f"order={rng.choice(names)}"]
        if kind == "cmp":
            parts.append(f"args={random_term_text(rng)};{random_term_text(rng)}")
        elif kind in ("dom", "wf", "rank"):
            parts.append(f"args={random_term_text(rng)}")
        if kind in ("rank", "ordertype", "dot"):
            parts.append("set=" + ",".join(random_term_text(rng) for _ in range(3)))
        if kind == "wf":
            parts.append(f"budget={rng.randint(1, 30)}")
        if kind == "enum":
            parts.append(f"max={rng.randint(1, 10)}")
        if rng.random() < 0.5:
            parts.append("expect=" + rng.choice(["LT", "IN", "WELLFOUNDED rank=3", "0 | 1 | 2"]))
        lines.append("[check] " + " ".join(parts))
    return "\n".join(lines) + "\n"


def fixture_corpus(fixture_dir, generated: int = 60, seed: int = 2024):
    """Handwritten fixture files plus seeded random ones, as (name, text) pairs."""
    corpus = [(p.name, p.read_text()) for p in sorted(fixture_dir.glob("*.fixture"))]
    rng = random.Random(seed)
    corpus += [(f"generated-{i}", random_fixture_text(rng)) for i in range(generated)]
    return corpus
