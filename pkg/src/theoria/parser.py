"""Pratt parser for formulas and types.

Precedence, from loosest: ⇔, ⇒, ∨, ∧, ¬, quantifiers, comparisons (= ≠ ∈ ⊆
and infix predicate operators), set operators (∪ ∩, then ×), user infix
expression operators (one shared tier, not mixable without parentheses),
forward composition ;, ↦, ‥, + −, * ÷, unary minus, application/atoms.

The parser produces well-formed but untyped ASTs; every extension
application resolves against the supplied factory.
"""

from __future__ import annotations

from .errors import FormulaSyntaxError, UnknownOperator
from .factory import CORE, FormulaFactory
from .formula import Formula, mk_node
from .lexer import Token, tokenize
from .signatures import INFIX
from .stypes import (
    BOOL,
    DatatypeInstance,
    GivenType,
    INT,
    PowerSet,
    Product,
    SType,
    TypeParam,
)

_BP_IFF = 10
_BP_IMPLIES = 20
_BP_OR = 30
_BP_AND = 40
_BP_NOT = 44
_BP_QUANT_BODY = 5
_BP_CMP = 60
_BP_SETOP = 70
_BP_CPROD = 75
_BP_USEROP = 80
_BP_FCOMP = 90
_BP_MAPLET = 100
_BP_INTERVAL = 110
_BP_ADD = 120
_BP_MUL = 130
_BP_NEG = 134
_BP_ATOM = 200

_BINARY = {
    "⇔": ("iff", _BP_IFF, _BP_IFF + 1),
    "⇒": ("implies", _BP_IMPLIES, _BP_IMPLIES - 1),
    "∨": ("or", _BP_OR, _BP_OR),
    "∧": ("and", _BP_AND, _BP_AND),
    "=": ("equal", _BP_CMP, _BP_CMP),
    "≠": ("equal", _BP_CMP, _BP_CMP),  # wrapped in ¬ by the parser
    "∈": ("in", _BP_CMP, _BP_CMP),
    "⊆": ("subseteq", _BP_CMP, _BP_CMP),
    "∪": ("union", _BP_SETOP, _BP_SETOP + 1),
    "∩": ("inter", _BP_SETOP, _BP_SETOP + 1),
    "×": ("cprod", _BP_CPROD, _BP_CPROD + 1),
    ";": ("fcomp", _BP_FCOMP, _BP_FCOMP),
    "↦": ("maplet", _BP_MAPLET, _BP_MAPLET + 1),
    "‥": ("interval", _BP_INTERVAL, _BP_INTERVAL),
    "+": ("add", _BP_ADD, _BP_ADD + 1),
    "−": ("sub", _BP_ADD, _BP_ADD + 1),
    "*": ("mul", _BP_MUL, _BP_MUL + 1),
    "÷": ("div", _BP_MUL, _BP_MUL + 1),
}


class _Parser:
    def __init__(self, tokens: list, factory: FormulaFactory):
        self.toks = tokens
        self.pos = 0
        self.factory = factory
        # token text -> operator name, for declared infix operators
        self.infix_ops = {}
        for sig in factory.extensions.values():
            view = factory.op_view(getattr(sig, "name", ""))
            if view is not None and view.notation == INFIX:
                self.infix_ops[view.name] = view
                if view.symbol:
                    self.infix_ops[view.symbol] = view

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text:
            raise FormulaSyntaxError(f"expected {text!r}, found {t.text!r}", t.span)
        return t

    def at_end(self) -> bool:
        return self.peek().type == "eof"

    # -- formulas ----------------------------------------------------------

    def formula(self, min_bp: int = 0) -> Formula:
        left = self.nud()
        while True:
            tok = self.peek()
            op = self.lookahead_infix(tok)
            if op is None:
                return left
            name, lbp, rbp = op
            if lbp <= min_bp:
                return left
            self.next()
            left = self.led(left, tok, name, lbp, rbp)

    def lookahead_infix(self, tok: Token):
        if tok.type == "op" and tok.text in _BINARY:
            return _BINARY[tok.text]
        view = self.infix_ops.get(tok.text) if tok.type in ("ident", "op") else None
        if view is not None:
            bp = _BP_CMP if view.is_predicate else _BP_USEROP
            return (view.name, bp, bp)
        return None

    def led(self, left, tok, name, lbp, rbp):
        view = self.infix_ops.get(tok.text)
        if view is not None and name == view.name:
            return self.user_infix(left, tok, view)
        right = self.formula(rbp)
        if tok.text == "≠":
            return mk_node("not", (mk_node("equal", (left, right)),))
        try:
            return mk_node(name, (left, right))
        except Exception as e:
            raise FormulaSyntaxError(f"bad {tok.text!r} application: {e}", tok.span)

    def user_infix(self, left, tok, view):
        bp = _BP_CMP if view.is_predicate else _BP_USEROP
        operands = [left, self.formula(bp)]
        while True:
            nxt = self.peek()
            nview = self.infix_ops.get(nxt.text) if nxt.type in ("ident", "op") else None
            if nview is None:
                break
            if nview.name != view.name:
                if (_BP_CMP if nview.is_predicate else _BP_USEROP) == bp:
                    raise FormulaSyntaxError(
                        f"mixed infix operators {view.name!r} and {nview.name!r} "
                        "need parentheses",
                        nxt.span,
                    )
                break
            self.next()
            operands.append(self.formula(bp))
        try:
            return mk_node("ext", operands, name=view.name, factory=self.factory)
        except Exception as e:
            raise FormulaSyntaxError(f"bad {view.name!r} application: {e}", tok.span)

    def nud(self) -> Formula:
        tok = self.next()
        text, span = tok.text, tok.span
        if tok.type == "number":
            return Formula("intlit", value=int(text))
        if tok.type == "ident":
            return self.ident_atom(tok)
        if text == "⊤":
            return mk_node("true")
        if text == "⊥":
            return mk_node("false")
        if text == "∅":
            return Formula("emptyset")
        if text == "ℤ":
            return Formula("carrier", ctype=INT)
        if text == "¬":
            return mk_node("not", (self.formula(_BP_NOT),))
        if text in ("∀", "∃"):
            return self.quantifier(text)
        if text == "−":
            return mk_node("neg", (self.formula(_BP_NEG),))
        if text == "ℙ":
            self.expect("(")
            inner = self.formula()
            self.expect(")")
            return mk_node("pow", (inner,))
        if text == "(":
            inner = self.formula()
            self.expect(")")
            return inner
        if text == "{":
            elems = [self.formula()]
            while self.peek().text == ",":
                self.next()
                elems.append(self.formula())
            self.expect("}")
            return mk_node("setext", elems)
        raise FormulaSyntaxError(f"unexpected token {text!r}", span)

    def quantifier(self, glyph: str):
        kind = "forall" if glyph == "∀" else "exists"
        names = [self.expect_ident()]
        while self.peek().text == ",":
            self.next()
            names.append(self.expect_ident())
        dot = self.next()
        if dot.text not in ("·", "."):
            raise FormulaSyntaxError(
                f"expected '·' after bound identifiers, found {dot.text!r}", dot.span
            )
        body = self.formula(_BP_QUANT_BODY)
        return mk_node(kind, (body,), bound=tuple(names))

    def expect_ident(self) -> str:
        t = self.next()
        if t.type != "ident":
            raise FormulaSyntaxError(f"expected identifier, found {t.text!r}", t.span)
        return t.text

    def ident_atom(self, tok: Token) -> Formula:
        name = tok.text
        if name == "BOOL":
            return Formula("carrier", ctype=BOOL)
        view = self.factory.op_view(name)
        if self.peek().text == "(" and view is not None:
            self.next()
            args = []
            if self.peek().text != ")":
                args.append(self.formula())
                while self.peek().text == ",":
                    self.next()
                    args.append(self.formula())
            self.expect(")")
            try:
                return mk_node("ext", args, name=name, factory=self.factory)
            except Exception as e:
                raise FormulaSyntaxError(f"bad {name!r} application: {e}", tok.span)
        if view is not None:
            if not view.arg_types:
                return mk_node("ext", (), name=name, factory=self.factory)
            if view.notation != INFIX:
                raise FormulaSyntaxError(
                    f"operator {name!r} needs {len(view.arg_types)} argument(s)",
                    tok.span,
                )
            # INFIX operator name in operand position: let led handle it.
            raise FormulaSyntaxError(
                f"infix operator {name!r} used without a left operand", tok.span
            )
        if self.factory.axiomatic_type(name) is not None:
            return Formula("carrier", ctype=GivenType(name), factory=self.factory)
        dt = self.factory.datatype(name)
        if dt is not None and not dt.type_params:
            return Formula(
                "carrier", ctype=DatatypeInstance(name, ()), factory=self.factory
            )
        return Formula("ident", name=name)

    # -- types -------------------------------------------------------------

    def type_expr(self) -> SType:
        left = self.type_atom()
        while self.peek().text == "×":
            self.next()
            left = Product(left, self.type_atom())
        return left

    def type_atom(self) -> SType:
        tok = self.next()
        if tok.text == "ℤ":
            return INT
        if tok.text == "(":
            inner = self.type_expr()
            self.expect(")")
            return inner
        if tok.text == "ℙ":
            self.expect("(")
            inner = self.type_expr()
            self.expect(")")
            return PowerSet(inner)
        if tok.type != "ident":
            raise FormulaSyntaxError(f"expected a type, found {tok.text!r}", tok.span)
        name = tok.text
        if name == "BOOL":
            return BOOL
        dt = self.factory.datatype(name)
        if dt is not None:
            args = ()
            if self.peek().text == "(":
                self.next()
                parts = [self.type_expr()]
                while self.peek().text == ",":
                    self.next()
                    parts.append(self.type_expr())
                self.expect(")")
                args = tuple(parts)
            if len(args) != len(dt.type_params):
                raise FormulaSyntaxError(
                    f"datatype {name} expects {len(dt.type_params)} type argument(s)",
                    tok.span,
                )
            return DatatypeInstance(name, args)
        if self.factory.axiomatic_type(name) is not None:
            return GivenType(name)
        return TypeParam(name)


def _symbols(factory: FormulaFactory):
    out = set()
    for name in factory.extensions:
        view = factory.op_view(name)
        if view is not None and view.symbol:
            out.add(view.symbol)
    return out


def parse_formula(text: str, factory: FormulaFactory = CORE,
                  file: str = "<string>") -> Formula:
    """Parse a single formula; the result is well-formed but untyped."""
    toks = tokenize(text, _symbols(factory), file)
    p = _Parser(toks, factory)
    f = p.formula()
    if not p.at_end():
        t = p.peek()
        raise FormulaSyntaxError(f"trailing input {t.text!r}", t.span)
    return f


def parse_type(text: str, factory: FormulaFactory = CORE,
               file: str = "<string>") -> SType:
    toks = tokenize(text, (), file)
    p = _Parser(toks, factory)
    t = p.type_expr()
    if not p.at_end():
        tk = p.peek()
        raise FormulaSyntaxError(f"trailing input {tk.text!r}", tk.span)
    return t
