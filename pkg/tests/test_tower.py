import random

import pytest
from hypothesis import given, settings, strategies as st

from ordtower import (
    BOTTOM, EMPTY, Atom, DiagramNode, DomainError, ExpSeq, Nat, Succ, Tri, TowerSpec,
    check_monotone_embedding, check_order_axioms, coeffs_diagram, diagram_tower, esum, exp,
    exp_less, explicit, inconsistent_at, kreisel, nat, tower, tower_bound_lt, tower_less,
    tower_validity, towerw_dom, towerw_less,
)
from ordtower.toydiagrams import generate, tower_of

from helpers import all_nat_exp_terms, nat_exp_terms, random_strict_order


def spec4():
    return TowerSpec(4, [nat(), nat()])


def cycle_coefficients():
    # 9 and 10 descend into each other; the other naturals listed are isolated
    return explicit([(9, 10), (10, 9)], elements=[0, 1, 5, 9, 10], name="cycle")


# --- construction ---------------------------------------------------------------

def test_spec_validation():
    with pytest.raises(ValueError):
        TowerSpec(2, [])
    with pytest.raises(ValueError):
        TowerSpec(4, [nat()])
    with pytest.raises(ValueError):
        spec4().ordering(3 + 1)


def test_tower_names():
    assert tower(4, [nat(), nat()]).name == "tower:N=4;bases=nat,nat"
    assert spec4().ordering(2).tower_spec.N == 4


@pytest.mark.parametrize("spec, a, b, expected", [
    (TowerSpec(4, [nat(), nat()]), esum((1, 3)), esum((2, 0)), True),
    (TowerSpec(5, [nat(), nat(), nat()]),
     ExpSeq(((esum((0, 0)), Nat(1)),)), ExpSeq(((esum((1, 0)), Nat(0)),)), True),
    (TowerSpec(3, [nat()]), 0, 1, True),
    (TowerSpec(3, [nat()]), 1, 1, False),
])
def test_tower_less_examples(spec, a, b, expected):
    assert tower_less(spec, a, b) is expected


def test_tower_level_domain():
    spec = TowerSpec(5, [nat(), nat(), nat()])
    with pytest.raises(DomainError):
        tower_less(spec, esum((1, 0)), EMPTY)  # level-2 exponents must be sums
    assert tower_less(spec, esum((1, 0)), esum((2, 0)), level=3)


# --- gated restriction ----------------------------------------------------------

def test_towerw_dom_examples():
    assert towerw_dom(spec4(), esum((2, 5), (0, 1))) is Tri.TRUE
    cyc = TowerSpec(4, [cycle_coefficients(), nat()])
    assert towerw_dom(cyc, esum((2, 9))) is Tri.FALSE
    assert towerw_dom(cyc, esum((2, 5))) is Tri.TRUE
    kr = TowerSpec(4, [kreisel(inconsistent_at(3)), nat()])
    assert towerw_dom(kr, esum((2, 10)), budget=20) is Tri.UNKNOWN


def test_towerw_dom_is_hereditary():
    spec = TowerSpec(5, [nat(), cycle_coefficients(), nat()])
    inner_bad = esum((1, 9))
    inner_ok = esum((1, 5))
    assert towerw_dom(spec, ExpSeq(((inner_ok, Nat(3)),))) is Tri.TRUE
    assert towerw_dom(spec, ExpSeq(((inner_bad, Nat(3)),))) is Tri.FALSE


def test_towerw_less_examples():
    assert towerw_less(spec4(), esum((1, 3)), esum((2, 0))) is Tri.TRUE
    assert towerw_less(spec4(), esum((2, 0)), esum((1, 3))) is Tri.FALSE
    kr = TowerSpec(4, [kreisel(inconsistent_at(3)), nat()])
    assert towerw_less(kr, esum((1, 10)), esum((2, 0)), budget=20) is Tri.UNKNOWN


@given(nat_exp_terms(), nat_exp_terms())
def test_gating_only_restricts(a, b):
    spec = TowerSpec(4, [kreisel(inconsistent_at(2)), nat()])
    if towerw_less(spec, a, b, budget=8) is Tri.TRUE:
        assert tower_less(spec, a, b)


@pytest.mark.parametrize("alpha, a, expected", [
    (esum((2, 9), (0, 0)), 3, True),
    (esum((3, 0)), 3, False),
    (EMPTY, 0, True),
])
def test_tower_bound_examples(alpha, a, expected):
    assert tower_bound_lt(spec4(), alpha, a) is expected


def test_tower_bound_follows_nested_exponents():
    spec = TowerSpec(5, [nat(), nat(), nat()])
    alpha = ExpSeq(((esum((2, 0), (1, 4)), Nat(0)), (esum((1, 0)), Nat(7))))
    assert tower_bound_lt(spec, alpha, 3)
    assert not tower_bound_lt(spec, alpha, 2)


# --- degeneracy -----------------------------------------------------------------

def test_degenerate_heights_small():
    terms = all_nat_exp_terms(2, 2, 2)
    t3 = TowerSpec(3, [nat()])
    assert all(tower_less(t3, a, b) == (a < b) for a in range(8) for b in range(8))
    t4, E = spec4(), exp(nat(), nat())
    for a in terms:
        for b in terms:
            assert tower_less(t4, a, b) == exp_less(E, a, b)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 5))
def test_tower_axioms_random_bases(seed, N):
    rng = random.Random(seed)
    bases = [random_strict_order(rng, 3) for _ in range(N - 2)]
    spec = TowerSpec(N, bases)
    ord = spec.ordering(2)
    domain = []
    for t in ord.enumerate_domain():
        domain.append(t)
        if len(domain) == 40:
            break
    sample = rng.sample(domain, min(15, len(domain)))
    assert check_order_axioms(ord, sample).strict_order


# --- diagrams -------------------------------------------------------------------

def test_coeffs_diagram_examples():
    a, b, c = DiagramNode("a"), DiagramNode("b"), DiagramNode("c")
    d = DiagramNode("d", {2: (a, b)})
    assert coeffs_diagram(d, 2) == {a, b}
    a.set_sequence(3, (c,))
    e = DiagramNode("e", {2: (a,)})
    assert coeffs_diagram(e, 3) == {c}
    with pytest.raises(DomainError):
        coeffs_diagram(d, 3)  # b has no level-3 sequence


def test_diagram_tower_examples():
    spec = TowerSpec(4, [nat(), nat()])
    tau, sigma = DiagramNode("tau"), DiagramNode("sigma")
    eta = DiagramNode("eta", {2: (tau,)})
    assert diagram_tower(eta, 2, spec) == ExpSeq((
        (Succ(Atom("tau")), BOTTOM), (Atom("eta"), BOTTOM)))
    eta2 = DiagramNode("eta2", {2: (sigma, tau)})
    assert diagram_tower(eta2, 2, spec) == ExpSeq((
        (Atom("tau"), Atom("sigma")), (Succ(Atom("sigma")), BOTTOM), (Atom("eta2"), BOTTOM)))
    assert diagram_tower(eta2, 3, spec) == Atom("eta2")


def test_diagram_validity_reports_bad_descent():
    fam = generate(4, 10, seed=1)
    spec = fam.spec
    lo, hi = sorted(fam.nodes[:2], key=lambda n: fam.keys[n.id])
    bad = DiagramNode("bad", {2: (hi, lo)})  # E(hi) then E(lo): exponents rise
    fam.keys["bad"] = min(fam.keys.values()) - 1
    report = tower_validity(spec, diagram_tower(bad, 2, spec))
    assert not report.ok
    assert report.reason == "exponents do not strictly decrease"
    assert report.left == Atom(lo.id) and report.right == Succ(Atom(hi.id))


def test_monotone_embedding_irreflexive():
    fam = generate(5, 12, seed=3)
    for d in fam.nodes:
        assert not check_monotone_embedding(d, d, fam.spec, fam.memo)


@pytest.mark.parametrize("N", [3, 4, 5])
def test_generator_pairs_descend(N):
    fam = generate(N, 60, seed=N)
    for g, h in fam.pairs:
        assert check_monotone_embedding(g, h, fam.spec, fam.memo)
        assert not check_monotone_embedding(h, g, fam.spec, fam.memo)
    for d in fam.nodes:
        t = tower_of(fam, d)
        assert tower_validity(fam.spec, t).ok
        if N > 3:
            assert len(t) == d.lh(2) + 1
            assert t.summands[-1][1] is BOTTOM and t.summands[-2][1] is BOTTOM


def test_coeffs_subset_of_reachable():
    fam = generate(5, 30, seed=7)
    for d in fam.nodes:
        reach = {x for x in d.sequence(2)}
        assert coeffs_diagram(d, 2) <= reach
        reach3 = {y for x in reach for y in x.sequence(3)}
        assert coeffs_diagram(d, 3) <= reach3
