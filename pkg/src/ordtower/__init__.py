"""Recursive ordering constructors (lexicographic, exponential, tower), a budgeted
wellfoundedness engine with checkable evidence, and pathological orderings."""

from .terms import (
    BOTTOM, EMPTY, Atom, Bottom, DomainError, ExpSeq, Nat, Pair, Succ, Term, as_term, esum,
)
from .core import (
    AxiomReport, ExplicitOrder, FiniteRestriction, FunctionOrder, NoEnumerator, Ordering, Tri,
    chain, check_order_axioms, explicit, less, nat, restrict,
)
from .constructors import (
    ExpOrdering, LexOrdering, SeamError, SuccOrdering, add, dom_up, exp, exp_bound_lt, exp_dom,
    exp_less, expw_less, lex, lex_less, lexw_less, succ, succ_less,
)
from .wellfounded import (
    CnfOrdinal, CycleError, add_verdict_listener, EvidenceError, IllFounded, NotLinear, Unknown, Wellfounded,
    cnf_oracle, embed_exp_cnf, order_type_finite, rank_finite, verify_verdict, wf_member,
    wf_oracle,
)
from .tower import (
    DiagramNode, TowerSpec, ValidityReport, check_monotone_embedding, coeffs_diagram,
    diagram_tower, tower, tower_bound_lt, tower_less, tower_validity, towerw_dom, towerw_less,
)
from .pathology import (
    GlueOrder, KreiselOrder, KreiselPrimeOrder, ProofSource, ProofStream, WoClaim, glue_less,
    inconsistent_at, kreisel, kreisel_less, kreisel_prime, kreisel_prime_less,
    never_inconsistent, validate_source,
)
from .notation import format_term, parse_order, parse_term

__version__ = "0.1.0"
