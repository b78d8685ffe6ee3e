"""Text syntax for terms, ordering expressions and fixture files.

Terms::

    term     := pair | sum | atomic
    sum      := summand ("+" summand)*
    summand  := "p^" exponent "*" coeff
    exponent := natural ["+1"] | "@"name ["+1"] | "(" term ")" ["+1"]
    coeff    := natural | "_1" | "@"name | pair | "(" term ")"
    atomic   := natural ["+1"] | "_1" | "@"name ["+1"] | "(" term ")" ["+1"]
    pair     := "<" term "," term ">"

A bare ``0`` is the natural zero; inside parentheses it is the empty sum, so
nested empty sums print as ``(0)``.  At top level the empty sum also prints as
``0``; :func:`coerce_term` maps that back when an ordering's domain holds sums.

Ordering expressions::

    nat | chain:<k> | lex(<O>,<O>) | exp(<O>,<O>) | succ(<O>)
    | tower:N=<n>;bases=<O>,...      (exactly n-2 bases, for levels 2..n-1)
    | kreisel:ok | kreisel:bad=<k> | kreiselprime:bad=<k>;base=<O>
    | glue:<stream-name> | file:<path>
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .terms import BOTTOM, EMPTY, Atom, Bottom, ExpSeq, Nat, Pair, Succ, Term


class NotationError(ValueError):
    """Unparseable term, ordering expression or fixture line."""


# ---------------------------------------------------------------------------
# terms

def _fmt_nested(t: Term) -> str:
    if type(t) is ExpSeq:
        return "(" + format_term(t) + ")"
    return format_term(t)


def _fmt_coeff(t: Term) -> str:
    if type(t) in (ExpSeq, Succ):
        return "(" + format_term(t) + ")"
    return format_term(t)


def format_term(t: Term) -> str:
    if type(t) is Nat:
        return str(t.n)
    if t is BOTTOM or type(t) is Bottom:
        return "_1"
    if type(t) is Atom:
        return "@" + t.id
    if type(t) is Pair:
        return f"<{_fmt_nested(t.first)},{_fmt_nested(t.second)}>"
    if type(t) is Succ:
        return _fmt_nested(t.base) + "+1"
    if type(t) is ExpSeq:
        if not t.summands:
            return "0"
        return "+".join(f"p^{_fmt_nested(e)}*{_fmt_coeff(c)}" for e, c in t.summands)
    raise TypeError(f"not a term: {t!r}")


_NAME = re.compile(r"[A-Za-z0-9_.\-]+")
_NUM = re.compile(r"\d+")
_SPLIT_TOKEN = re.compile(r"[A-Za-z0-9_.\-]\s+[A-Za-z0-9_.\-]")


class _TermParser:
    def __init__(self, text: str):
        gap = _SPLIT_TOKEN.search(text)
        if gap:
            raise NotationError(f"whitespace inside a token at offset {gap.start() + 1} in {text!r}")
        self.s = "".join(text.split())
        self.i = 0

    def error(self, msg):
        raise NotationError(f"{msg} at offset {self.i} in {self.s!r}")

    def peek(self, k=1):
        return self.s[self.i:self.i + k]

    def eat(self, tok):
        if self.s.startswith(tok, self.i):
            self.i += len(tok)
            return True
        return False

    def expect(self, tok):
        if not self.eat(tok):
            self.error(f"expected {tok!r}")

    def succ_suffix(self, follow: str) -> bool:
        # "+1" is a successor only when followed by a delimiter, never a summand
        if self.s.startswith("+1", self.i):
            nxt = self.s[self.i + 2:self.i + 3]
            if nxt == "" or nxt in follow:
                self.i += 2
                return True
        return False

    def natural(self):
        m = _NUM.match(self.s, self.i)
        if not m:
            self.error("expected a natural number")
        self.i = m.end()
        return Nat(int(m.group()))

    def name(self):
        m = _NAME.match(self.s, self.i)
        if not m:
            self.error("expected a name")
        self.i = m.end()
        return m.group()

    def group(self) -> Term:
        self.expect("(")
        start = self.i
        inner = self.term(")")
        if self.s[start:self.i] == "0":
            inner = EMPTY
        self.expect(")")
        return inner

    def boxable(self, follow) -> Term:
        c = self.peek()
        if c.isdigit():
            t = self.natural()
        elif c == "@":
            self.i += 1
            t = Atom(self.name())
        elif c == "(":
            t = self.group()
        elif c == "<":
            return self.pair()
        elif self.eat("_1"):
            return BOTTOM
        else:
            self.error("expected a natural, atom, pair or parenthesised term")
        if self.succ_suffix(follow):
            if not isinstance(t, (Nat, Atom, ExpSeq)):
                self.error("only naturals, atoms and sums take +1")
            t = Succ(t)
        return t

    def coeff(self, follow) -> Term:
        c = self.peek()
        if c.isdigit():
            return self.natural()
        if self.eat("_1"):
            return BOTTOM
        if c == "@":
            self.i += 1
            return Atom(self.name())
        if c == "<":
            return self.pair()
        if c == "(":
            return self.group()
        self.error("expected a coefficient")

    def pair(self) -> Term:
        self.expect("<")
        a = self.term(",")
        self.expect(",")
        b = self.term(">")
        self.expect(">")
        return Pair(a, b)

    def term(self, follow: str = "") -> Term:
        if self.peek(2) == "p^":
            summands = []
            while True:
                self.expect("p^")
                e = self.boxable("*")
                self.expect("*")
                c = self.coeff("+" + follow)
                summands.append((e, c))
                if self.peek(3) == "+p^":
                    self.i += 1
                    continue
                return ExpSeq(tuple(summands))
        if self.peek() == "<":
            return self.pair()
        if self.eat("_1"):
            return BOTTOM
        return self.boxable(follow)


def parse_term(text: str) -> Term:
    p = _TermParser(text)
    if not p.s:
        raise NotationError("empty term")
    t = p.term()
    if p.i != len(p.s):
        p.error("trailing input")
    return t


def coerce_term(ord, t: Term) -> Term:
    """Read a top-level ``0`` as the empty sum when the ordering wants sums."""
    if t == Nat(0) and not ord.in_domain(t) and ord.in_domain(EMPTY):
        return EMPTY
    return t


def split_top(text: str, seps: str = ",;") -> List[str]:
    """Split on separators outside ``<...>`` and ``(...)``."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "<(":
            depth += 1
        elif ch in ">)":
            depth -= 1
        if ch in seps and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [x for x in (s.strip() for s in out) if x]


# ---------------------------------------------------------------------------
# ordering expressions

@dataclass(frozen=True)
class OrderExpr:
    kind: str
    args: Tuple = ()

    def __str__(self):
        return format_order(self)


def format_order(e: OrderExpr) -> str:
    k, a = e.kind, e.args
    if k == "nat":
        return "nat"
    if k == "chain":
        return f"chain:{a[0]}"
    if k in ("lex", "exp"):
        return f"{k}({format_order(a[0])},{format_order(a[1])})"
    if k == "succ":
        return f"succ({format_order(a[0])})"
    if k == "tower":
        return f"tower:N={a[0]};bases=" + ",".join(format_order(b) for b in a[1])
    if k == "kreisel":
        return "kreisel:ok" if a[0] is None else f"kreisel:bad={a[0]}"
    if k == "kreiselprime":
        return f"kreiselprime:bad={a[0]};base={format_order(a[1])}"
    if k == "glue":
        return f"glue:{a[0]}"
    if k == "file":
        return f"file:{a[0]}"
    raise ValueError(k)


class _OrderParser:
    def __init__(self, text: str):
        self.s = text.strip()
        self.i = 0

    def error(self, msg):
        raise NotationError(f"{msg} at offset {self.i} in {self.s!r}")

    def eat(self, tok):
        if self.s.startswith(tok, self.i):
            self.i += len(tok)
            return True
        return False

    def expect(self, tok):
        if not self.eat(tok):
            self.error(f"expected {tok!r}")

    def number(self):
        m = _NUM.match(self.s, self.i)
        if not m:
            self.error("expected a number")
        self.i = m.end()
        return int(m.group())

    def order(self) -> OrderExpr:
        if self.eat("nat"):
            return OrderExpr("nat")
        if self.eat("chain:"):
            return OrderExpr("chain", (self.number(),))
        for k in ("lex", "exp"):
            if self.eat(k + "("):
                a = self.order()
                self.expect(",")
                b = self.order()
                self.expect(")")
                return OrderExpr(k, (a, b))
        if self.eat("succ("):
            a = self.order()
            self.expect(")")
            return OrderExpr("succ", (a,))
        if self.eat("tower:N="):
            n = self.number()
            if n < 3:
                self.error("tower needs N >= 3")
            self.expect(";bases=")
            bases = [self.order()]
            for _ in range(n - 3):
                self.expect(",")
                bases.append(self.order())
            return OrderExpr("tower", (n, tuple(bases)))
        if self.eat("kreiselprime:bad="):
            k = self.number()
            self.expect(";base=")
            return OrderExpr("kreiselprime", (k, self.order()))
        if self.eat("kreisel:ok"):
            return OrderExpr("kreisel", (None,))
        if self.eat("kreisel:bad="):
            return OrderExpr("kreisel", (self.number(),))
        if self.eat("glue:"):
            m = _NAME.match(self.s, self.i)
            if not m:
                self.error("expected a stream name")
            self.i = m.end()
            return OrderExpr("glue", (m.group(),))
        if self.eat("file:"):
            m = re.compile(r"[^,;()]+").match(self.s, self.i)
            if not m:
                self.error("expected a path")
            self.i = m.end()
            return OrderExpr("file", (m.group().strip(),))
        self.error("unknown ordering")


def parse_order(text: str) -> OrderExpr:
    p = _OrderParser(text)
    e = p.order()
    if p.i != len(p.s):
        p.error("trailing input")
    return e


# ---------------------------------------------------------------------------
# explicit relation files: one "a < b" edge (spaces around <) or one bare element per line

def parse_relation_text(text: str):
    elements, edges = [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = re.split(r"\s<\s", line)
        if len(parts) > 2:
            raise NotationError(f"one edge per line: {line!r}")
        terms = [parse_term(x) for x in parts]
        elements.extend(terms)
        if len(terms) == 2:
            edges.append(tuple(terms))
    return elements, edges


def format_relation_text(elements, edges) -> str:
    lines = [format_term(e) for e in elements]
    lines += [f"{format_term(a)} < {format_term(b)}" for a, b in edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# fixtures

@dataclass(frozen=True)
class OrderDecl:
    name: str
    expr: OrderExpr


@dataclass(frozen=True)
class StreamDecl:
    name: str
    index: int
    claim: Optional[OrderExpr]  # None: not a wellordering proof


@dataclass(frozen=True)
class CheckDecl:
    kind: str
    params: Tuple[Tuple[str, str], ...] = ()

    def get(self, key, default=None):
        return dict(self.params).get(key, default)


@dataclass(frozen=True)
class Fixture:
    decls: Tuple[Union[OrderDecl, StreamDecl, CheckDecl], ...] = ()

    @property
    def orders(self) -> Dict[str, OrderExpr]:
        return {d.name: d.expr for d in self.decls if isinstance(d, OrderDecl)}

    @property
    def streams(self) -> Dict[str, Dict[int, Optional[OrderExpr]]]:
        out: Dict[str, Dict[int, Optional[OrderExpr]]] = {}
        for d in self.decls:
            if isinstance(d, StreamDecl):
                out.setdefault(d.name, {})[d.index] = d.claim
        return out

    @property
    def checks(self) -> List[CheckDecl]:
        return [d for d in self.decls if isinstance(d, CheckDecl)]


CHECK_KINDS = ("cmp", "dom", "wf", "rank", "ordertype", "enum", "dot")
_HEADER = re.compile(r"^\[(order|stream|check)(?:\s+([A-Za-z0-9_.\-]+))?\]\s*(.*)$")


def _parse_params(body: str, lineno: int) -> List[Tuple[str, str]]:
    params = []
    rest = body.strip()
    while rest:
        m = re.match(r"([a-z_]+)=", rest)
        if not m:
            raise NotationError(f"line {lineno}: expected key=value, got {rest!r}")
        key = m.group(1)
        rest = rest[m.end():]
        if key == "expect":
            params.append((key, rest.strip()))
            break
        value, _, rest = rest.partition(" ")
        params.append((key, value))
        rest = rest.strip()
    return params


def parse_fixture(text: str) -> Fixture:
    decls = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _HEADER.match(line)
        if not m:
            raise NotationError(f"line {lineno}: unrecognised declaration {line!r}")
        section, name, body = m.groups()
        if section == "order":
            if not name:
                raise NotationError(f"line {lineno}: [order] needs a name")
            params = dict(_parse_params(body, lineno))
            if set(params) != {"expr"}:
                raise NotationError(f"line {lineno}: [order] takes exactly expr=")
            decls.append(OrderDecl(name, parse_order(params["expr"])))
        elif section == "stream":
            if not name:
                raise NotationError(f"line {lineno}: [stream] needs a name")
            sm = re.match(r"^(\d+)=(?:wo:(.+)|(notwo))$", body.strip())
            if not sm:
                raise NotationError(f"line {lineno}: expected <index>=wo:<order> or <index>=notwo")
            claim = parse_order(sm.group(2)) if sm.group(2) else None
            decls.append(StreamDecl(name, int(sm.group(1)), claim))
        else:
            if name:
                raise NotationError(f"line {lineno}: [check] takes no name")
            params = _parse_params(body, lineno)
            if not params or params[0][0] != "kind":
                raise NotationError(f"line {lineno}: [check] must start with kind=")
            kind = params[0][1]
            if kind not in CHECK_KINDS:
                raise NotationError(f"line {lineno}: unknown check kind {kind!r}")
            decls.append(CheckDecl(kind, tuple(params[1:])))
    return Fixture(tuple(decls))


def format_fixture(fx: Fixture) -> str:
    lines = []
    for d in fx.decls:
        if isinstance(d, OrderDecl):
            lines.append(f"[order {d.name}] expr={format_order(d.expr)}")
        elif isinstance(d, StreamDecl):
            claim = "notwo" if d.claim is None else "wo:" + format_order(d.claim)
            lines.append(f"[stream {d.name}] {d.index}={claim}")
        else:
            parts = [f"kind={d.kind}"] + [f"{k}={v}" for k, v in d.params]
            lines.append("[check] " + " ".join(parts))
    return "\n".join(lines) + "\n"


def load_fixture(path) -> Fixture:
    return parse_fixture(Path(path).read_text())
