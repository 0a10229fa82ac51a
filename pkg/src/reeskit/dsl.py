"""Parser for the reeskit script language.

    ring A = QQ[x] / (x^2);
    module M = coker A [[x]];
    ring B = A[S] / (x*S);
    map f : A -> B { x -> x };
    rees M;
    compare M via f;

Statements end with ``;``.  ``#`` starts a comment.  Polynomials are kept as
small expression trees and evaluated later in whatever ring the statement
refers to.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


class DSLError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)
        self.message = message


# ---------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<arrow>->)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9']*)
  | (?P<sym>[;=\[\](),+\-*/^:{}])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str       # ident, num, sym, eof
    text: str
    line: int
    col: int
    pos: int = 0


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        s = m.group()
        if kind != "ws":
            out.append(Token("sym" if kind == "arrow" else kind, s, line,
                             pos - line_start + 1, pos))
        nl = s.count("\n")
        if nl:
            line += nl
            line_start = pos + s.rfind("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1, pos))
    return out


# ---------------------------------------------------------------------------
# expression trees

@dataclass(frozen=True)
class Expr:
    op: str                 # num, var, add, sub, mul, div, neg, pow
    args: tuple = ()
    value: Any = None
    line: int = 0
    col: int = 0


def evaluate(e: Expr, ring):
    """Evaluate an expression tree in a PolyRing."""
    op = e.op
    if op == "num":
        return ring.constant(e.value)
    if op == "var":
        if e.value not in ring.variables:
            raise DSLError(f"unknown variable {e.value!r} in {ring}", e.line, e.col)
        return ring.var(e.value)
    if op == "neg":
        return -evaluate(e.args[0], ring)
    if op == "pow":
        return evaluate(e.args[0], ring) ** e.value
    a = evaluate(e.args[0], ring)
    b = evaluate(e.args[1], ring)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b.is_constant() or not b:
            raise DSLError("division only by nonzero constants", e.line, e.col)
        return a / b.constant_value()
    raise AssertionError(op)


# ---------------------------------------------------------------------------
# statements

@dataclass
class Stmt:
    kind: str
    args: dict = field(default_factory=dict)
    line: int = 0
    col: int = 0
    text: str = ""          # source of the statement, whitespace collapsed


@dataclass
class Script:
    items: list[Stmt] = field(default_factory=list)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


COMMANDS = ("gb", "rees", "sym", "tl", "algtl", "blowup", "charts", "nash", "dense",
            "assof", "compare", "inject", "verify", "dual", "show", "closure", "piece",
            "ann", "ext")
DECLS = ("ring", "ideal", "module", "map", "assume")


class Parser:
    def __init__(self, text: str, known: dict[str, str] | None = None):
        self.source = text
        self.toks = tokenize(text)
        self.i = 0
        # name -> kind ('ring', 'ideal', 'module', 'map'); seeded for the REPL
        self.names: dict[str, str] = dict(known or {})

    # token helpers --------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok: Token | None = None):
        tok = tok or self.tok
        raise DSLError(msg, tok.line, tok.col)

    def peek(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("sym", "ident") and t.text == text

    def accept(self, text: str) -> bool:
        if self.peek(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.peek(text):
            got = self.tok.text or "end of input"
            self.error(f"expected {text!r}, got {got!r}")
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> Token:
        t = self.tok
        if t.kind != "ident":
            self.error(f"expected a name, got {t.text or 'end of input'!r}")
        self.i += 1
        return t

    def integer(self) -> int:
        t = self.tok
        if t.kind != "num":
            self.error(f"expected an integer, got {t.text or 'end of input'!r}")
        self.i += 1
        return int(t.text)

    def use(self, kind, tok: Token | None = None) -> str:
        """Consume a name that must already be declared with the given kind(s)."""
        t = tok or self.ident()
        kinds = (kind,) if isinstance(kind, str) else kind
        have = self.names.get(t.text)
        if have is None:
            self.error(f"undefined name {t.text!r}", t)
        if have not in kinds:
            self.error(f"{t.text!r} is a {have}, expected {' or '.join(kinds)}", t)
        return t.text

    def declare(self, tok: Token, kind: str):
        if tok.text in self.names:
            self.error(f"name {tok.text!r} is already defined", tok)
        self.names[tok.text] = kind

    # expressions ---------------------------------------------------------
    def expr(self) -> Expr:
        t = self.tok
        if self.accept("-"):
            left = Expr("neg", (self.term(),), line=t.line, col=t.col)
        else:
            self.accept("+")
            left = self.term()
        while self.peek("+") or self.peek("-"):
            op = self.tok
            self.i += 1
            right = self.term()
            left = Expr("add" if op.text == "+" else "sub", (left, right),
                        line=op.line, col=op.col)
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self.peek("*") or self.peek("/"):
            op = self.tok
            self.i += 1
            right = self.factor()
            left = Expr("mul" if op.text == "*" else "div", (left, right),
                        line=op.line, col=op.col)
        return left

    def factor(self) -> Expr:
        base = self.atom()
        if self.accept("^"):
            t = self.tok
            e = self.integer()
            base = Expr("pow", (base,), value=e, line=t.line, col=t.col)
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Expr("num", value=Fraction(int(t.text)), line=t.line, col=t.col)
        if t.kind == "ident":
            self.i += 1
            return Expr("var", value=t.text, line=t.line, col=t.col)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if self.peek("-"):
            self.i += 1
            return Expr("neg", (self.atom(),), line=t.line, col=t.col)
        self.error(f"unexpected {t.text or 'end of input'!r} in polynomial")

    def expr_list(self, close=")") -> list[Expr]:
        out = []
        if self.peek(close):
            return out
        out.append(self.expr())
        while self.accept(","):
            out.append(self.expr())
        return out

    def paren_list(self) -> list[Expr]:
        self.expect("(")
        out = self.expr_list()
        self.expect(")")
        return out

    def matrix(self) -> list[list[Expr]]:
        start = self.expect("[")
        rows = []
        if not self.peek("]"):
            while True:
                self.expect("[")
                rows.append(self.expr_list("]"))
                self.expect("]")
                if not self.accept(","):
                    break
        self.expect("]")
        if len({len(r) for r in rows}) > 1:
            self.error("ragged matrix: rows have different lengths", start)
        return rows

    # sub-clauses ---------------------------------------------------------
    def field_spec(self):
        t = self.tok
        if self.accept("QQ"):
            return 0
        if self.accept("GF"):
            self.expect("(")
            p = self.integer()
            self.expect(")")
            return p
        self.error("expected QQ or GF(p)", t)

    def ideal_ref(self):
        """Either a declared ideal name or an inline generator list."""
        if self.peek("("):
            return ("inline", self.paren_list())
        return ("name", self.use("ideal"))

    def module_expr(self):
        t = self.tok
        if self.accept("coker"):
            ring = self.use("ring")
            return ("coker", ring, self.matrix())
        if self.accept("image"):
            ring = self.use("ring")
            return ("image", ring, self.matrix())
        if self.accept("free"):
            ring = self.use("ring")
            return ("free", ring, self.integer())
        if self.accept("ideal"):
            if self.peek("("):
                gens = self.paren_list()
                self.expect("in")
                return ("idealmod", ("inline", gens), self.use("ring"))
            return ("idealmod", ("name", self.use("ideal")), None)
        if self.accept("dual"):
            return ("dual", self.module_expr())
        if self.accept("tl"):
            return ("tl", self.module_expr())
        if self.accept("ext"):
            d = self.integer()
            return ("ext", d, self.module_expr())
        if self.accept("sum"):
            parts = [self.module_expr()]
            while self.accept(","):
                parts.append(self.module_expr())
            return ("sum", parts)
        if self.accept("base"):
            m = self.module_expr()
            self.expect("via")
            return ("base", m, self.use("map"))
        if self.accept("("):
            m = self.module_expr()
            self.expect(")")
            return m
        if t.kind == "ident":
            return ("name", self.use("module"))
        self.error("expected a module expression")

    def algebra_expr(self):
        paren = self.accept("(")
        t = self.tok
        if self.accept("rees"):
            a = ("rees", self.module_expr())
        elif self.accept("sym"):
            a = ("sym", self.module_expr())
        elif self.accept("nash"):
            m = self.module_expr()
            d = self.integer()
            self.expect("minus")
            a = ("nash", m, d, self.ideal_ref())
        elif self.accept("closure"):
            inner = self.algebra_expr()
            self.expect("minus")
            a = ("closure", inner, self.ideal_ref())
        else:
            self.error("expected rees, sym, nash or closure", t)
        if paren:
            self.expect(")")
        return a

    # statements -----------------------------------------------------------
    def statement(self) -> Stmt:
        t = self.tok
        if t.kind != "ident":
            self.error(f"expected a statement, got {t.text!r}")
        word = t.text
        self.i += 1
        args: dict = {}
        if word == "ring":
            name = self.ident()
            self.expect("=")
            if self.peek("QQ") or self.peek("GF"):
                args["field"] = self.field_spec()
                args["parent"] = None
            else:
                args["parent"] = self.use("ring")
            args["vars"] = []
            if self.accept("["):
                while not self.peek("]"):
                    args["vars"].append(self.ident().text)
                    if not self.accept(","):
                        break
                self.expect("]")
                if len(set(args["vars"])) != len(args["vars"]):
                    self.error("duplicate variable names", t)
            elif args["parent"] is None:
                self.error("a ring over a field needs a variable list")
            args["relations"] = []
            if self.accept("/"):
                args["relations"] = self.paren_list()
            args["order"] = None
            if self.accept("with"):
                o = self.ident()
                if o.text not in ("lex", "degrevlex"):
                    self.error(f"unknown order {o.text!r}", o)
                args["order"] = o.text
            self.declare(name, "ring")
            args["name"] = name.text
        elif word == "ideal":
            name = self.ident()
            self.expect("=")
            args["gens"] = self.paren_list()
            self.expect("in")
            args["ring"] = self.use("ring")
            self.declare(name, "ideal")
            args["name"] = name.text
        elif word == "module":
            name = self.ident()
            self.expect("=")
            args["expr"] = self.module_expr()
            self.declare(name, "module")
            args["name"] = name.text
        elif word == "map":
            name = self.ident()
            self.expect(":")
            args["source"] = self.use("ring")
            self.expect("->")
            args["target"] = self.use("ring")
            self.expect("{")
            images = {}
            while not self.peek("}"):
                v = self.ident()
                if v.text in images:
                    self.error(f"variable {v.text!r} assigned twice", v)
                self.expect("->")
                images[v.text] = (self.expr(), v)
                if not self.accept(","):
                    break
            self.expect("}")
            args["images"] = images
            self.declare(name, "map")
            args["name"] = name.text
        elif word == "assume":
            self.expect("flat")
            args["map"] = self.use("map")
        elif word in ("rees", "sym", "dual", "blowup", "ann"):
            args["module"] = self.module_expr()
        elif word == "ext":
            args["d"] = self.integer()
            args["module"] = self.module_expr()
        elif word == "tl":
            args["module"] = self.module_expr()
            args["via"] = self.use("map") if self.accept("via") else None
        elif word == "algtl":
            if self.tok.kind == "ident" and self.names.get(self.tok.text) == "ring":
                args["ring"] = self.use("ring")
                self.expect("via")
                args["via"] = self.use("map")
            else:
                args["module"] = self.module_expr()
        elif word == "gb":
            if self.peek("("):
                args["ideal"] = ("inline", self.paren_list())
                self.expect("in")
                args["ring"] = self.use("ring")
            else:
                args["ideal"] = ("name", self.use("ideal"))
        elif word == "charts":
            args["algebra"] = self.algebra_expr()
        elif word == "closure":
            self.i -= 1
            args["algebra"] = self.algebra_expr()
        elif word == "piece":
            args["algebra"] = self.algebra_expr()
            args["n"] = self.integer()
        elif word == "nash":
            args["module"] = self.module_expr()
            args["d"] = self.integer()
            self.expect("minus")
            args["complement"] = self.ideal_ref()
        elif word == "dense":
            args["ring"] = self.use("ring")
            self.expect("minus")
            args["complement"] = self.ideal_ref()
        elif word == "assof":
            args["module"] = self.module_expr()
            args["primes"] = []
            if self.accept("primes"):
                args["primes"].append(self.ideal_ref())
                while self.accept(","):
                    args["primes"].append(self.ideal_ref())
            args["complement"] = self.ideal_ref() if self.accept("minus") else None
        elif word in ("compare", "inject"):
            args["module"] = self.module_expr()
            self.expect("via")
            args["via"] = self.use("map")
            if word == "compare" and self.accept("localize"):
                args["localize"] = self.use("map")
        elif word == "show":
            t2 = self.ident()
            self.use(("ring", "ideal", "module", "map"), t2)
            args["name"] = t2.text
        elif word == "verify":
            pass
        else:
            self.error(f"unknown statement {word!r}", t)
        end = self.expect(";")
        text = " ".join(self.source[t.pos:end.pos].split())
        return Stmt(word, args, t.line, t.col, text)

    def script(self) -> Script:
        items = []
        while self.tok.kind != "eof":
            items.append(self.statement())
        return Script(items)


def parse(text: str, known: dict[str, str] | None = None) -> Script:
    """Parse a whole script; names must be declared before use."""
    return Parser(text, known).script()


# ---------------------------------------------------------------------------
# standalone helpers (round-trips of printed objects)

def parse_polynomial(text: str, ring):
    p = Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p.error(f"trailing input {p.tok.text!r}")
    return evaluate(e, ring)


def parse_ideal(text: str, ring):
    """Parse ``(f1, f2, ...)`` into an Ideal of ``ring`` (PolyRing or AffineRing)."""
    from .groebner import Ideal
    from .polycore import as_affine
    R = as_affine(ring)
    p = Parser(text)
    gens = p.paren_list()
    if p.tok.kind != "eof":
        p.error(f"trailing input {p.tok.text!r}")
    return Ideal(R, [evaluate(g, R.ambient) for g in gens])


def parse_matrix(text: str, ring) -> list[list]:
    from .polycore import as_affine
    R = as_affine(ring)
    p = Parser(text)
    rows = p.matrix()
    if p.tok.kind != "eof":
        p.error(f"trailing input {p.tok.text!r}")
    return [[evaluate(e, R.ambient) for e in row] for row in rows]


def parse_module(text: str, ring):
    """Inverse of the module printer: ``free n`` or ``coker [[...]]``."""
    from .fpmod import coker, free
    text = text.strip()
    if text.startswith("free"):
        return free(ring, int(text[4:]))
    if text.startswith("coker"):
        return coker(ring, parse_matrix(text[5:], ring))
    raise DSLError(f"cannot parse module {text!r}")
