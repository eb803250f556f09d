"""Pretty-printer, inverse of the parser.

UNICODE mode renders an infix operator's declared symbol; ASCII mode always
uses the operator name.  Core glyphs are identical in both modes, and
parse(print(f)) is structurally equal to f either way.
"""

from __future__ import annotations

from .formula import Formula
from .signatures import INFIX
from .stypes import format_type

ASCII = "ASCII"
UNICODE = "UNICODE"

_BP = {
    "iff": 10,
    "implies": 20,
    "or": 30,
    "and": 40,
    "not": 44,
    "forall": 5,
    "exists": 5,
    "equal": 60,
    "in": 60,
    "subseteq": 60,
    "union": 70,
    "inter": 70,
    "cprod": 75,
    "fcomp": 90,
    "maplet": 100,
    "interval": 110,
    "add": 120,
    "sub": 120,
    "mul": 130,
    "div": 130,
    "neg": 134,
}

_GLYPH = {
    "iff": "⇔",
    "implies": "⇒",
    "or": "∨",
    "and": "∧",
    "equal": "=",
    "in": "∈",
    "subseteq": "⊆",
    "union": "∪",
    "inter": "∩",
    "cprod": "×",
    "fcomp": ";",
    "maplet": "↦",
    "interval": "‥",
    "add": "+",
    "sub": "−",
    "mul": "*",
    "div": "÷",
}

# (left child ctx delta, right child ctx delta) relative to the node bp
_LEFT_ASSOC = {"union", "inter", "cprod", "maplet", "add", "sub", "mul", "div"}
_RIGHT_ASSOC = {"implies"}
_FLAT = {"and", "or", "fcomp"}


def print_formula(f: Formula, mode: str = UNICODE) -> str:
    return _render(f, 0, mode)


def _node_bp(f: Formula) -> int:
    if f.kind == "ext":
        view = f.factory.op_view(f.name)
        if view is not None and view.notation == INFIX:
            return 60 if view.is_predicate else 80
        return 200
    if f.kind == "not" and f.children[0].kind == "equal":
        return 60  # printed as ≠
    return _BP.get(f.kind, 200)


def _render(f: Formula, ctx: int, mode: str) -> str:
    bp = _node_bp(f)
    s = _render_bare(f, bp, mode)
    return f"({s})" if bp < ctx else s


def _render_bare(f: Formula, bp: int, mode: str) -> str:
    kind = f.kind
    if kind == "true":
        return "⊤"
    if kind == "false":
        return "⊥"
    if kind == "ident":
        return f.name
    if kind == "intlit":
        return str(f.value)
    if kind == "emptyset":
        return "∅"
    if kind == "carrier":
        return format_type(f.ctype)
    if kind == "setext":
        return "{" + ", ".join(_render(c, 0, mode) for c in f.children) + "}"
    if kind == "pow":
        return f"ℙ({_render(f.children[0], 0, mode)})"
    if kind in ("forall", "exists"):
        glyph = "∀" if kind == "forall" else "∃"
        body = _render(f.children[0], bp + 1, mode)
        return f"{glyph}{', '.join(f.bound)}· {body}"
    if kind == "not":
        child = f.children[0]
        if child.kind == "equal":
            a = _render(child.children[0], 61, mode)
            b = _render(child.children[1], 61, mode)
            return f"{a} ≠ {b}"
        return f"¬ {_render(child, bp + 1, mode)}"
    if kind == "neg":
        return f"−{_render(f.children[0], bp + 1, mode)}"
    if kind == "ext":
        view = f.factory.op_view(f.name)
        if view is not None and view.notation == INFIX and f.children:
            text = view.symbol if (mode == UNICODE and view.symbol) else view.name
            return f" {text} ".join(_render(c, bp + 1, mode) for c in f.children)
        if not f.children:
            return f.name
        args = ", ".join(_render(c, 0, mode) for c in f.children)
        return f"{f.name}({args})"
    if kind in _FLAT:
        glyph = _GLYPH[kind]
        sep = f" {glyph} " if kind != "fcomp" else ";"
        return sep.join(_render(c, bp + 1, mode) for c in f.children)
    # remaining binary nodes
    glyph = _GLYPH[kind]
    left, right = f.children
    if kind in _LEFT_ASSOC:
        lc, rc = bp, bp + 1
    elif kind in _RIGHT_ASSOC:
        lc, rc = bp + 1, bp
    else:  # non-chaining comparisons, iff, interval
        lc, rc = bp + 1, bp + 1
    return f"{_render(left, lc, mode)} {glyph} {_render(right, rc, mode)}"
