"""Command-line front end.

Every subcommand prints line-oriented, stable output on stdout.  Failures go
to stderr as a single ``error:<kind>:<message>`` line; the exit status is 0 on
success, 1 for parse/domain/usage errors and failed fixture checks, and 2 when
an internal invariant (such as verdict evidence) does not hold.
"""

from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional

from . import core
from .constructors import ExpOrdering, LexOrdering, exp, expw_less, lex, lexw_less, succ
from .core import NoEnumerator, Ordering, Tri, chain, nat, restrict
from .notation import (
    NotationError, OrderExpr, coerce_term, format_order, format_term, load_fixture,
    parse_order, parse_relation_text, parse_term, split_top,
)
from .pathology import (
    GlueOrder, KreiselOrder, KreiselPrimeOrder, ProofStream, WoClaim, inconsistent_at,
    never_inconsistent,
)
from .terms import DomainError
from .tower import TowerSpec, towerw_less
from .wellfounded import (
    CycleError, EvidenceError, IllFounded, NotLinear, Unknown, Wellfounded, order_type_finite,
    rank_finite, verify_verdict, wf_member, wf_oracle,
)

BUILTIN_STREAMS: Dict[str, Dict[int, Optional[OrderExpr]]] = {
    "demo": {
        0: OrderExpr("chain", (3,)),
        1: OrderExpr("chain", (2,)),
        2: None,
        3: OrderExpr("chain", (4,)),
        4: OrderExpr("nat"),
    },
}


class CliError(Exception):
    def __init__(self, kind: str, message: str, status: int = 1):
        super().__init__(message)
        self.kind = kind
        self.status = status


class Env:
    """Name resolution for ordering expressions: fixture orders, streams, file base dir."""

    def __init__(self, orders=None, streams=None, base_dir: Optional[Path] = None):
        self.orders: Dict[str, OrderExpr] = dict(orders or {})
        self.streams = dict(BUILTIN_STREAMS)
        self.streams.update(streams or {})
        self.base_dir = base_dir or Path.cwd()
        self._cache: Dict[OrderExpr, Ordering] = {}

    def resolve(self, text: str) -> Ordering:
        if text in self.orders:
            return self.build(self.orders[text])
        return self.build(parse_order(text))

    def build(self, e: OrderExpr) -> Ordering:
        if e not in self._cache:
            ord = self._build(e)
            ord.name = format_order(e)
            self._cache[e] = ord
        return self._cache[e]

    def _build(self, e: OrderExpr) -> Ordering:
        k, a = e.kind, e.args
        if k == "nat":
            return nat()
        if k == "chain":
            return chain(a[0])
        if k == "lex":
            return lex(self.build(a[0]), self.build(a[1]))
        if k == "exp":
            return exp(self.build(a[0]), self.build(a[1]))
        if k == "succ":
            return succ(self.build(a[0]))
        if k == "tower":
            return TowerSpec(a[0], [self.build(b) for b in a[1]]).ordering(2)
        if k == "kreisel":
            src = never_inconsistent() if a[0] is None else inconsistent_at(a[0])
            return KreiselOrder(src)
        if k == "kreiselprime":
            return KreiselPrimeOrder(inconsistent_at(a[0]), self.build(a[1]))
        if k == "glue":
            name = a[0]
            if name not in self.streams:
                raise CliError("unknown-stream", f"no stream named {name!r}")
            claims = {p: (None if c is None else WoClaim(self.build(c)))
                      for p, c in self.streams[name].items()}
            return GlueOrder(ProofStream(claims, name))
        if k == "file":
            path = Path(a[0])
            if not path.is_absolute():
                path = self.base_dir / path
            try:
                text = path.read_text()
            except OSError as exc:
                raise CliError("io", f"cannot read {path}: {exc.strerror}") from None
            elements, edges = parse_relation_text(text)
            return core.ExplicitOrder(elements, edges)
        raise CliError("parse", f"unknown ordering kind {k!r}")


def _term(ord: Ordering, text: str):
    t = coerce_term(ord, parse_term(text))
    if not ord.in_domain(t):
        raise CliError("domain", f"{format_term(t)} is not in the domain of {ord.name}")
    return t


def _terms(ord: Ordering, text: str):
    return [_term(ord, x) for x in split_top(text)]


def compare(ord: Ordering, a, b) -> str:
    if a == b:
        return "EQ"
    if ord.relation(a, b):
        return "LT"
    if ord.relation(b, a):
        return "GT"
    return "INCOMPARABLE"


def gated_compare(ord: Ordering, a, b, budget: int) -> str:
    spec = getattr(ord, "tower_spec", None)
    if spec is not None:
        fwd = towerw_less(spec, a, b, budget=budget)
        bwd = towerw_less(spec, b, a, budget=budget)
    elif isinstance(ord, LexOrdering):
        wf = wf_oracle(ord.second, budget)
        fwd, bwd = lexw_less(ord, a, b, wf), lexw_less(ord, b, a, wf)
    elif isinstance(ord, ExpOrdering):
        wf = wf_oracle(ord.coefficient_order, budget)
        fwd, bwd = expw_less(ord, a, b, wf), expw_less(ord, b, a, wf)
    else:
        raise CliError("usage", f"--gated needs a lex, exp or tower ordering, not {ord.name}")
    if fwd is Tri.TRUE:
        return "LT"
    if bwd is Tri.TRUE:
        return "GT"
    if fwd is Tri.FALSE and bwd is Tri.FALSE:
        return "EQ" if a == b else "INCOMPARABLE"
    return "UNKNOWN"


def format_verdict(v) -> str:
    if isinstance(v, Wellfounded):
        return f"WELLFOUNDED rank={v.rank}"
    if isinstance(v, IllFounded):
        return "ILLFOUNDED lasso=" + ",".join(format_term(t) for t in v.lasso)
    line = "UNKNOWN chain=" + ",".join(format_term(t) for t in v.chain)
    if v.reason != "budget":
        line += f" reason={v.reason}"
    return line


def checked_wf(ord: Ordering, t, budget: int):
    verdict = wf_member(ord, t, budget)
    try:
        verify_verdict(ord, t, verdict)
    except EvidenceError as exc:
        raise CliError("internal", f"verdict evidence failed: {exc}", status=2) from None
    return verdict


def dot_text(ord: Ordering, elements) -> str:
    r = restrict(ord, elements)
    label = {e: format_term(e) for e in r.elements}
    lines = ["digraph order {"]
    for e in sorted(r.elements, key=label.get):
        lines.append(f'  "{label[e]}";')
    for a, b in sorted(r.edges, key=lambda ab: (label[ab[0]], label[ab[1]])):
        lines.append(f'  "{label[a]}" -> "{label[b]}";')
    lines.append("}")
    return "\n".join(lines)


def execute(kind: str, env: Env, order: str, args: List[str], budget: int = 64,
            elements: Optional[str] = None, limit: int = 20, gated: bool = False) -> str:
    """Run one query and return its printed output (without trailing newline)."""
    ord = env.resolve(order)
    if kind == "cmp":
        if len(args) != 2:
            raise CliError("usage", "cmp takes two terms")
        a, b = (_term(ord, x) for x in args)
        return gated_compare(ord, a, b, budget) if gated else compare(ord, a, b)
    if kind == "dom":
        if len(args) != 1:
            raise CliError("usage", "dom takes one term")
        t = coerce_term(ord, parse_term(args[0]))
        return "IN" if ord.in_domain(t) else "OUT"
    if kind == "wf":
        if len(args) != 1:
            raise CliError("usage", "wf takes one term")
        return format_verdict(checked_wf(ord, _term(ord, args[0]), budget))
    if kind in ("rank", "ordertype", "dot"):
        if elements is None:
            raise CliError("usage", f"{kind} needs --set")
        elems = _terms(ord, elements)
        if kind == "dot":
            return dot_text(ord, elems)
        r = restrict(ord, elems)
        if kind == "ordertype":
            return str(order_type_finite(r))
        if len(args) != 1:
            raise CliError("usage", "rank takes one term")
        t = _term(ord, args[0])
        if t not in set(r.elements):
            raise CliError("domain", f"{format_term(t)} is not in the --set")
        return str(rank_finite(r, t))
    if kind == "enum":
        out = []
        for t in ord.enumerate_domain():
            if len(out) >= limit:
                break
            out.append(format_term(t))
        return "\n".join(out)
    raise CliError("usage", f"unknown command {kind!r}")


def run_fixture(path: Path) -> tuple:
    fx = load_fixture(path)
    env = Env(fx.orders, fx.streams, path.parent)
    lines, failed = [], 0
    for i, check in enumerate(fx.checks, 1):
        p = dict(check.params)
        args = split_top(p.get("args", ""), ";")
        try:
            result = execute(check.kind, env, p.get("order", ""), args,
                             budget=int(p.get("budget", 64)), elements=p.get("set"),
                             limit=int(p.get("max", 20)), gated=p.get("gated") == "yes")
        except CliError as exc:
            if exc.status == 2:
                raise
            result = f"error:{exc.kind}:{exc}"
        except _USER_ERRORS as exc:
            result = f"error:{_error_kind(exc)}:{exc}"
        result = result.replace("\n", " | ")
        status = ""
        if "expect" in p:
            ok = result == p["expect"]
            failed += not ok
            status = " ok" if ok else f" FAIL expected={p['expect']}"
        lines.append(f"{i} {check.kind} {p.get('order', '')}: {result}{status}")
    return "\n".join(lines), failed


_USER_ERRORS = (NotationError, DomainError, NoEnumerator, CycleError, NotLinear, ValueError)


def _error_kind(exc) -> str:
    return {
        NotationError: "parse", DomainError: "domain", NoEnumerator: "no-enumerator",
        CycleError: "cycle", NotLinear: "not-linear",
    }.get(type(exc), "value")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ordtower", description="Compare, check and explore recursive orderings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("cmp", help="compare two terms")
    c.add_argument("order")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("--gated", action="store_true",
                   help="use the wellfounded-part restriction (lex, exp, tower only)")
    c.add_argument("--budget", type=int, default=64)

    d = sub.add_parser("dom", help="domain membership")
    d.add_argument("order")
    d.add_argument("term")

    w = sub.add_parser("wf", help="wellfoundedness search from a term")
    w.add_argument("order")
    w.add_argument("term")
    w.add_argument("--budget", type=int, default=64)

    r = sub.add_parser("rank", help="rank within a finite restriction")
    r.add_argument("order")
    r.add_argument("term")
    r.add_argument("--set", required=True, dest="elements")

    o = sub.add_parser("ordertype", help="order type of a finite restriction")
    o.add_argument("order")
    o.add_argument("--set", required=True, dest="elements")

    e = sub.add_parser("enum", help="list domain elements")
    e.add_argument("order")
    e.add_argument("--max", type=int, default=20, dest="limit")

    g = sub.add_parser("dot", help="Graphviz digraph of a finite restriction")
    g.add_argument("order")
    g.add_argument("--set", required=True, dest="elements")

    f = sub.add_parser("fixture", help="fixture files")
    fsub = f.add_subparsers(dest="action", required=True, parser_class=_Parser)
    fr = fsub.add_parser("run")
    fr.add_argument("path")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        ns = build_parser().parse_args(argv)
        if ns.command == "fixture":
            text, failed = run_fixture(Path(ns.path))
            print(text)
            if failed:
                raise CliError("check-failed", f"{failed} check(s) did not match")
            return 0
        env = Env()
        if ns.command == "cmp":
            args = [ns.a, ns.b]
        else:
            args = [ns.term] if hasattr(ns, "term") else []
        out = execute(ns.command, env, ns.order, args,
                      budget=getattr(ns, "budget", 64), elements=getattr(ns, "elements", None),
                      limit=getattr(ns, "limit", 20), gated=getattr(ns, "gated", False))
        print(out)
        return 0
    except CliError as exc:
        print(f"error:{exc.kind}:{exc}", file=sys.stderr)
        return exc.status
    except OSError as exc:
        print(f"error:io:{exc}", file=sys.stderr)
        return 1
    except _USER_ERRORS as exc:
        print(f"error:{_error_kind(exc)}:{exc}", file=sys.stderr)
        return 1
    except (AssertionError, EvidenceError) as exc:
        print(f"error:internal:{exc}", file=sys.stderr)
        return 2


class CommandResult(NamedTuple):
    status: int
    output: str
    errors: str


def run_command(argv: List[str]) -> CommandResult:
    """Run the CLI in-process, capturing stdout and stderr."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        status = main(argv)
    return CommandResult(status, out.getvalue(), err.getvalue())


if __name__ == "__main__":
    sys.exit(main())
