"""Lexer, abstract syntax tree and recursive-descent parser for ``.hsa`` files.

The grammar is in ``docs/grammar.md``.  Every failure is a :class:`DslError`
carrying a line and column; no input makes the parser raise anything else.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

__all__ = [
    "DslError",
    "DslSyntaxError",
    "UndeclaredGenerator",
    "ParityMismatch",
    "DslSemanticError",
    "Token",
    "tokenize",
    "Num",
    "Name",
    "Sum",
    "Prod",
    "Quot",
    "Pow",
    "TensorTerm",
    "TensorSum",
    "GenDecl",
    "Relation",
    "TableEntry",
    "ActionEntry",
    "AlgebraBlock",
    "BicrossBlock",
    "CheckDirective",
    "PresentationDoc",
    "parse_presentation",
    "parse_expression",
    "parse_tensor_expression",
    "SUITES",
    "CHECK_OPTIONS",
    "walk_names",
    "validate",
]

MAX_DEPTH = 200
SUITES = ("confluence", "hopf", "bicross", "built", "mixed")
CHECK_OPTIONS = ("degree", "samples", "seed", "identity_degree")
RESERVED = ("i", "k")


# -- errors --------------------------------------------------------------------

class DslError(Exception):
    """Structured parse or build error at ``(line, col)``, both 1-based."""

    kind = "error"

    def __init__(self, message: str, line: int = 0, col: int = 0, expected: tuple = ()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(sorted(set(expected)))
        where = f"{line}:{col}: " if line else ""
        extra = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}{message}{extra}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "message": self.message, "line": self.line, "col": self.col, "expected": list(self.expected)}


class DslSyntaxError(DslError):
    kind = "syntax"


class UndeclaredGenerator(DslError):
    kind = "undeclared_generator"


class ParityMismatch(DslError):
    kind = "parity_mismatch"


class DslSemanticError(DslError):
    kind = "semantic"


# -- lexer ---------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # ident, int, string, op, eof
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<string>"[^"\n]*")
  | (?P<op><\||[;:,=+\-*/^(){}@])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    line, start = 1, 0
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        col = pos - start + 1
        if m is None:
            ch = text[pos]
            if ch == '"':
                raise DslSyntaxError("unterminated string", line, col)
            raise DslSyntaxError(f"unexpected character {ch!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# -- AST -----------------------------------------------------------------------
# Positions never take part in equality, so parse(print(doc)) == doc.

def _pos() -> tuple:
    return field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: int
    pos: tuple = _pos()


@dataclass(frozen=True)
class Name:
    id: str
    pos: tuple = _pos()


@dataclass(frozen=True)
class Sum:
    terms: tuple  # ((sign, node), ...) with sign "+" or "-"
    pos: tuple = _pos()


@dataclass(frozen=True)
class Prod:
    factors: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class Quot:
    num: object
    den: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    pos: tuple = _pos()


@dataclass(frozen=True)
class TensorTerm:
    slots: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class TensorSum:
    terms: tuple  # ((sign, TensorTerm), ...)
    pos: tuple = _pos()


@dataclass(frozen=True)
class GenDecl:
    names: tuple
    parity: int
    weight: int | None = None
    pos: tuple = _pos()


@dataclass(frozen=True)
class Relation:
    lhs: object
    rhs: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class TableEntry:
    kind: str  # coproduct, counit, antipode
    gen: str
    value: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class ActionEntry:
    acted: str
    acting: str
    value: object
    pos: tuple = _pos()


@dataclass
class AlgebraBlock:
    handle: str
    label: str | None = None
    gens: list = field(default_factory=list)
    supercommutative: bool = False
    relations: list = field(default_factory=list)
    tables: list = field(default_factory=list)
    implicit: bool = False
    pos: tuple = _pos()

    def generator_names(self) -> list[str]:
        return [n for g in self.gens for n in g.names]


@dataclass
class BicrossBlock:
    handle: str
    acting: str
    acted: str
    label: str | None = None
    actions: list = field(default_factory=list)
    coactions: list = field(default_factory=list)  # TableEntry(kind="coact")
    pos: tuple = _pos()


@dataclass(frozen=True)
class CheckDirective:
    suite: str
    target: str
    options: tuple = ()  # ((key, value), ...) in written order
    pos: tuple = _pos()

    def option(self, key: str, default=None):
        for k, v in self.options:
            if k == key:
                return v
        return default


@dataclass
class PresentationDoc:
    name: str | None = None
    conventions: list = field(default_factory=list)  # [(key, value)]
    symbols: list = field(default_factory=list)
    algebras: list = field(default_factory=list)
    bicross: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    def algebra(self, handle: str) -> AlgebraBlock:
        for a in self.algebras:
            if a.handle == handle:
                return a
        raise KeyError(handle)

    def bicross_block(self, handle: str) -> BicrossBlock:
        for b in self.bicross:
            if b.handle == handle:
                return b
        raise KeyError(handle)


# -- parser --------------------------------------------------------------------

IMPLICIT_HANDLE = "main"
_ALG_KEYWORDS = ("gen", "supercommutative", "rel", "coproduct", "counit", "antipode")
_TOP_KEYWORDS = ("name", "convention", "symbol", "algebra", "bicross", "check") + _ALG_KEYWORDS


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.depth = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("op", "ident") and t.text == text

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def error(self, message: str, expected=()) -> DslSyntaxError:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        return DslSyntaxError(f"{message}, found {found}", t.line, t.col, expected)

    def expect(self, text: str, also: tuple = ()) -> Token:
        """Consume ``text``; ``also`` lists other tokens that were valid here."""
        if not self.at(text):
            raise self.error(f"expected {text!r}", (text,) + also)
        return self.advance()

    def ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "ident":
            raise self.error(f"expected {what}", (what,))
        return self.advance()

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.error("expected integer", ("integer",))
        return int(self.advance().text)

    def string(self) -> str:
        if self.tok.kind != "string":
            raise self.error("expected string", ("string",))
        return self.advance().text[1:-1]

    # document
    def document(self) -> PresentationDoc:
        doc = PresentationDoc()
        implicit: AlgebraBlock | None = None
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind != "ident" or t.text not in _TOP_KEYWORDS:
                raise self.error("expected a statement", _TOP_KEYWORDS)
            kw = t.text
            if kw == "name":
                self.advance()
                doc.name = self.string()
                self.expect(";")
            elif kw in ("convention", "symbol"):
                self.advance()
                key = self.ident("key").text
                self.expect("=")
                value = self.string()
                self.expect(";")
                (doc.conventions if kw == "convention" else doc.symbols).append((key, value))
            elif kw == "algebra":
                doc.algebras.append(self.algebra_block())
            elif kw == "bicross":
                doc.bicross.append(self.bicross_block())
            elif kw == "check":
                doc.checks.append(self.check())
            else:
                if implicit is None:
                    implicit = AlgebraBlock(IMPLICIT_HANDLE, implicit=True, pos=(t.line, t.col))
                    doc.algebras.append(implicit)
                self.algebra_item(implicit)
        return doc

    def algebra_block(self) -> AlgebraBlock:
        t = self.expect("algebra")
        handle = self.ident("algebra name").text
        label = self.string() if self.tok.kind == "string" else None
        block = AlgebraBlock(handle, label, pos=(t.line, t.col))
        self.expect("{")
        while not self.at("}"):
            if self.tok.kind != "ident" or self.tok.text not in _ALG_KEYWORDS:
                raise self.error("expected an algebra item", _ALG_KEYWORDS + ("}",))
            self.algebra_item(block)
        self.expect("}")
        return block

    def algebra_item(self, block: AlgebraBlock) -> None:
        t = self.advance()
        pos = (t.line, t.col)
        kw = t.text
        if kw == "gen":
            names = [self.ident("generator name").text]
            while self.at(","):
                self.advance()
                names.append(self.ident("generator name").text)
            self.expect(":", (",",))
            parity = self.parity()
            weight = None
            if self.at("weight"):
                self.advance()
                weight = self.integer()
            self.expect(";", () if weight is not None else ("weight",))
            block.gens.append(GenDecl(tuple(names), parity, weight, pos))
        elif kw == "supercommutative":
            self.expect(";")
            block.supercommutative = True
        elif kw == "rel":
            lhs = self.expr()
            self.expect("=")
            rhs = self.expr()
            self.expect(";")
            block.relations.append(Relation(lhs, rhs, pos))
        else:
            gen = self.ident("generator name").text
            self.expect("=")
            value = self.texpr() if kw == "coproduct" else self.expr()
            self.expect(";")
            block.tables.append(TableEntry(kw, gen, value, pos))

    def parity(self) -> int:
        t = self.tok
        if t.kind == "ident" and t.text in ("even", "odd"):
            self.advance()
            return 0 if t.text == "even" else 1
        if t.kind == "int" and t.text in ("0", "1"):
            self.advance()
            return int(t.text)
        raise self.error("expected parity", ("even", "odd", "0", "1"))

    def bicross_block(self) -> BicrossBlock:
        t = self.expect("bicross")
        handle = self.ident("bicrossproduct name").text
        label = self.string() if self.tok.kind == "string" else None
        self.expect("(")
        acting = self.ident("algebra name").text
        self.expect(",")
        acted = self.ident("algebra name").text
        self.expect(")")
        block = BicrossBlock(handle, acting, acted, label, pos=(t.line, t.col))
        self.expect("{")
        while not self.at("}"):
            s = self.tok
            if self.at("act"):
                self.advance()
                a = self.ident("generator name").text
                self.expect("<|")
                h = self.ident("generator name").text
                self.expect("=")
                value = self.expr()
                self.expect(";")
                block.actions.append(ActionEntry(a, h, value, (s.line, s.col)))
            elif self.at("coact"):
                self.advance()
                h = self.ident("generator name").text
                self.expect("=")
                value = self.texpr()
                self.expect(";")
                block.coactions.append(TableEntry("coact", h, value, (s.line, s.col)))
            else:
                raise self.error("expected a bicrossproduct item", ("act", "coact", "}"))
        self.expect("}")
        return block

    def check(self) -> CheckDirective:
        t = self.expect("check")
        s = self.tok
        if s.kind != "ident" or s.text not in SUITES:
            raise self.error("expected a check suite", SUITES)
        self.advance()
        target = self.ident("target name").text
        opts = []
        while not self.at(";"):
            o = self.tok
            if o.kind != "ident" or o.text not in CHECK_OPTIONS:
                raise self.error("expected a check option", CHECK_OPTIONS + (";",))
            self.advance()
            opts.append((o.text, self.integer()))
        self.expect(";")
        return CheckDirective(s.text, target, tuple(opts), (t.line, t.col))

    # expressions
    def _enter(self) -> None:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")

    def texpr(self) -> TensorSum:
        t = self.tok
        sign = "+"
        if self.at("+") or self.at("-"):
            sign = self.advance().text
        terms = [(sign, self.tterm())]
        while self.at("+") or self.at("-"):
            sign = self.advance().text
            terms.append((sign, self.tterm()))
        return TensorSum(tuple(terms), (t.line, t.col))

    def tterm(self) -> TensorTerm:
        t = self.tok
        slots = [self.term()]
        while self.at("@"):
            self.advance()
            slots.append(self.term())
        return TensorTerm(tuple(slots), (t.line, t.col))

    def expr(self):
        self._enter()
        t = self.tok
        terms = []
        leading = False
        sign = "+"
        if self.at("+") or self.at("-"):
            sign = self.advance().text
            leading = sign == "-"
        terms.append((sign, self.term()))
        while self.at("+") or self.at("-"):
            s = self.advance().text
            terms.append((s, self.term()))
        self.depth -= 1
        if len(terms) == 1 and not leading:
            # a lone "+x" is just x
            return terms[0][1]
        return Sum(tuple(terms), (t.line, t.col))

    def term(self):
        t = self.tok
        items = [self.power()]
        while self.at("*") or self.at("/"):
            op = self.advance().text
            f = self.power()
            if op == "*":
                items.append(f)
            else:
                node = items[0] if len(items) == 1 else Prod(tuple(items), (t.line, t.col))
                items = [Quot(node, f, (t.line, t.col))]
        return items[0] if len(items) == 1 else Prod(tuple(items), (t.line, t.col))

    def power(self):
        t = self.tok
        base = self.atom()
        if self.at("^"):
            self.advance()
            neg = False
            if self.at("-"):
                self.advance()
                neg = True
            e = self.integer()
            return Pow(base, -e if neg else e, (t.line, t.col))
        return base

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Num(int(t.text), (t.line, t.col))
        if t.kind == "ident":
            self.advance()
            return Name(t.text, (t.line, t.col))
        if self.at("("):
            self._enter()
            self.advance()
            e = self.expr()
            self.expect(")")
            self.depth -= 1
            return e
        raise self.error("expected an expression", ("integer", "identifier", "("))


def parse_presentation(text: str) -> PresentationDoc:
    """Parse ``.hsa`` text; raises :class:`DslError` with a position on failure."""
    if not isinstance(text, str):
        raise DslSyntaxError("input must be text", 1, 1)
    try:
        doc = _Parser(text).document()
    except RecursionError:  # pragma: no cover - guarded by MAX_DEPTH
        raise DslSyntaxError("input nested too deeply", 1, 1) from None
    validate(doc)
    return doc


def _parse_whole(text: str, method: str):
    p = _Parser(text)
    node = getattr(p, method)()
    if p.tok.kind != "eof":
        raise p.error("unexpected trailing input", ("end of input",))
    return node


def parse_expression(text: str):
    return _parse_whole(text, "expr")


def parse_tensor_expression(text: str) -> TensorSum:
    return _parse_whole(text, "texpr")


def walk_names(node) -> Iterator[Name]:
    """Every :class:`Name` in an expression tree."""
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Name):
            yield n
        elif isinstance(n, (Sum, TensorSum)):
            stack.extend(x for _, x in n.terms)
        elif isinstance(n, Prod):
            stack.extend(n.factors)
        elif isinstance(n, TensorTerm):
            stack.extend(n.slots)
        elif isinstance(n, Quot):
            stack.extend((n.num, n.den))
        elif isinstance(n, Pow):
            stack.append(n.base)


# -- static checks -------------------------------------------------------------

def _parities(node, par: dict[str, int]) -> frozenset:
    """Parities the terms of ``node`` can have; empty for zero.  Raises on unknown names."""
    if isinstance(node, Num):
        return frozenset({0}) if node.value else frozenset()
    if isinstance(node, Name):
        if node.id in RESERVED:
            return frozenset({0})
        if node.id not in par:
            raise UndeclaredGenerator(f"undeclared generator {node.id!r}", *node.pos)
        return frozenset({par[node.id]})
    if isinstance(node, (Sum, TensorSum)):
        out: frozenset = frozenset()
        for _, t in node.terms:
            out |= _parities(t, par)
        return out
    if isinstance(node, (Prod, TensorTerm)):
        acc = frozenset({0})
        for f in node.factors if isinstance(node, Prod) else node.slots:
            ps = _parities(f, par)
            acc = frozenset((a + b) & 1 for a in acc for b in ps)
        return acc
    if isinstance(node, Quot):
        _parities(node.den, par)
        return _parities(node.num, par)
    if isinstance(node, Pow):
        ps = _parities(node.base, par)
        if node.exp <= 0 or not ps:
            return frozenset({0}) if node.exp <= 0 else ps
        return frozenset((p * node.exp) & 1 for p in ps) if len(ps) == 1 else frozenset({0, 1})
    return frozenset()


def _tensor_parities(node: TensorSum, pars: tuple[dict, ...]) -> frozenset:
    out: frozenset = frozenset()
    for _, term in node.terms:
        if len(term.slots) != len(pars):
            raise DslSemanticError(f"expected {len(pars)} tensor factors, got {len(term.slots)}", *term.pos)
        acc = frozenset({0})
        for slot, par in zip(term.slots, pars):
            ps = _parities(slot, par)
            acc = frozenset((a + b) & 1 for a in acc for b in ps)
        out |= acc
    return out


def _expect_parity(found: frozenset, want: int, what: str, pos: tuple) -> None:
    if found - {want}:
        raise ParityMismatch(f"{what} has a term of the wrong parity", *pos)


def validate(doc: PresentationDoc) -> None:
    """Every referenced generator is declared and every entry is parity-homogeneous."""
    blocks: dict[str, dict[str, int]] = {}
    for block in doc.algebras:
        par = {n: g.parity for g in block.gens for n in g.names}
        blocks[block.handle] = par
        for rel in block.relations:
            found = _parities(rel.lhs, par) | _parities(rel.rhs, par)
            if len(found) > 1:
                raise ParityMismatch("relation mixes even and odd terms", *rel.pos)
        for t in block.tables:
            if t.gen not in par:
                raise UndeclaredGenerator(f"undeclared generator {t.gen!r}", *t.pos)
            if t.kind == "coproduct":
                _expect_parity(_tensor_parities(t.value, (par, par)), par[t.gen], f"coproduct of {t.gen}", t.pos)
            elif t.kind == "counit":
                _expect_parity(_parities(t.value, par), 0, f"counit of {t.gen}", t.pos)
                if par[t.gen] and _parities(t.value, par):
                    raise ParityMismatch(f"counit of odd generator {t.gen} must be 0", *t.pos)
            else:
                _expect_parity(_parities(t.value, par), par[t.gen], f"antipode of {t.gen}", t.pos)
    for block in doc.bicross:
        if block.acting not in blocks or block.acted not in blocks:
            continue  # reported when the model is built
        p1, p2 = blocks[block.acting], blocks[block.acted]
        for a in block.actions:
            for n, par in ((a.acted, p2), (a.acting, p1)):
                if n not in par:
                    raise UndeclaredGenerator(f"undeclared generator {n!r}", *a.pos)
            want = (p2[a.acted] + p1[a.acting]) & 1
            _expect_parity(_parities(a.value, p2), want, f"{a.acted} <| {a.acting}", a.pos)
        for c in block.coactions:
            if c.gen not in p1:
                raise UndeclaredGenerator(f"undeclared generator {c.gen!r}", *c.pos)
            _expect_parity(_tensor_parities(c.value, (p2, p1)), p1[c.gen], f"coaction of {c.gen}", c.pos)
