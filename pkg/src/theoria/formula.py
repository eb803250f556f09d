"""Formula ASTs and the factory-checked node constructor.

Every node carries the factory it was built with; `mk_node` unions the
children's factories and fails on a signature conflict.  Associative
operators (∧, ∨, forward composition, and associative extension operators)
are stored flattened as n-ary nodes.

Structural equality and hashing ignore the factory and the inferred types,
so a parsed formula compares equal to its typechecked counterpart.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import (
    ArityMismatch,
    InvalidPosition,
    KindMismatch,
    UnknownOperator,
)
from .factory import CORE, FormulaFactory, factory_union
from .stypes import SType

# kind -> (min arity, max arity or None, predicate children?, is predicate?)
_KINDS = {
    "true": (0, 0, False, True),
    "false": (0, 0, False, True),
    "not": (1, 1, True, True),
    "and": (2, None, True, True),
    "or": (2, None, True, True),
    "implies": (2, 2, True, True),
    "iff": (2, 2, True, True),
    "forall": (1, 1, True, True),
    "exists": (1, 1, True, True),
    "equal": (2, 2, False, True),
    "in": (2, 2, False, True),
    "subseteq": (2, 2, False, True),
    "ident": (0, 0, False, False),
    "intlit": (0, 0, False, False),
    "carrier": (0, 0, False, False),
    "emptyset": (0, 0, False, False),
    "setext": (1, None, False, False),
    "pow": (1, 1, False, False),
    "cprod": (2, 2, False, False),
    "union": (2, 2, False, False),
    "inter": (2, 2, False, False),
    "fcomp": (2, None, False, False),
    "add": (2, 2, False, False),
    "sub": (2, 2, False, False),
    "mul": (2, 2, False, False),
    "div": (2, 2, False, False),
    "neg": (1, 1, False, False),
    "maplet": (2, 2, False, False),
    "interval": (2, 2, False, False),
}

FLATTENED = {"and", "or", "fcomp"}
QUANTIFIERS = {"forall", "exists"}


@dataclass(frozen=True)
class Formula:
    kind: str
    children: tuple = ()
    name: str | None = None  # ident and extension applications
    value: int | None = None  # integer literals
    bound: tuple = ()  # quantifier bound identifier names
    ctype: SType | None = None  # carrier payload
    bound_types: tuple = field(default=(), compare=False)
    type: SType | None = field(default=None, compare=False)
    factory: FormulaFactory = field(default=CORE, compare=False)

    @property
    def is_predicate(self) -> bool:
        if self.kind == "ext":
            view = self.factory.op_view(self.name)
            return view is not None and view.is_predicate
        return _KINDS[self.kind][3]

    def __str__(self):
        from .printer import print_formula

        return print_formula(self)


def mk_node(
    kind: str,
    children=(),
    *,
    name: str | None = None,
    value: int | None = None,
    bound: tuple = (),
    bound_types: tuple = (),
    ctype: SType | None = None,
    factory: FormulaFactory | None = None,
    type: SType | None = None,
) -> Formula:
    """Build a node, unioning and checking the children's factories."""
    children = tuple(children)
    fac = factory if factory is not None else CORE
    for c in children:
        fac = factory_union(fac, c.factory)

    if kind == "ext":
        if name is None:
            raise UnknownOperator("<missing extension name>")
        view = fac.op_view(name)
        if view is None:
            raise UnknownOperator(name)
        if view.associative:
            if len(children) < 2:
                raise ArityMismatch(f"{name} needs at least 2 arguments")
        elif len(children) != len(view.arg_types):
            raise ArityMismatch(
                f"{name} expects {len(view.arg_types)} arguments, got {len(children)}"
            )
        for c in children:
            if c.is_predicate:
                raise KindMismatch(f"predicate argument to operator {name!r}")
        if view.associative:
            children = _flatten_ext(children, name)
        return Formula("ext", children, name=name, factory=fac, type=type)

    if kind not in _KINDS:
        raise KindMismatch(f"unknown node kind {kind!r}")
    lo, hi, pred_children, _ = _KINDS[kind]

    if kind in FLATTENED:
        children = tuple(
            gc for c in children for gc in (c.children if c.kind == kind else (c,))
        )
    if len(children) < lo or (hi is not None and len(children) > hi):
        raise ArityMismatch(f"{kind} got {len(children)} children")
    for c in children:
        if c.is_predicate != pred_children:
            raise KindMismatch(
                f"{'expression' if pred_children else 'predicate'} child "
                f"in {kind} node"
            )
    if kind in QUANTIFIERS:
        if not bound:
            raise ArityMismatch("quantifier with no bound identifiers")
        if not bound_types:
            bound_types = (None,) * len(bound)
        if len(bound_types) != len(bound):
            raise ArityMismatch("bound_types length mismatch")
    return Formula(
        kind,
        children,
        name=name,
        value=value,
        bound=tuple(bound),
        ctype=ctype,
        bound_types=tuple(bound_types),
        factory=fac,
        type=type,
    )


def _flatten_ext(children, name):
    out = []
    for c in children:
        if c.kind == "ext" and c.name == name:
            out.extend(c.children)
        else:
            out.append(c)
    return tuple(out)


# Convenience constructors ---------------------------------------------------

def TRUE():
    return mk_node("true")


def FALSE():
    return mk_node("false")


def lnot(p):
    return mk_node("not", (p,))


def land(*ps):
    return mk_node("and", ps)


def lor(*ps):
    return mk_node("or", ps)


def implies(p, q):
    return mk_node("implies", (p, q))


def forall(names, body, bound_types=()):
    return mk_node("forall", (body,), bound=tuple(names), bound_types=bound_types)


def exists(names, body, bound_types=()):
    return mk_node("exists", (body,), bound=tuple(names), bound_types=bound_types)


def equal(a, b):
    return mk_node("equal", (a, b))


def member(a, b):
    return mk_node("in", (a, b))


def ident(name, type=None):
    return Formula("ident", name=name, type=type)


def intlit(n):
    return Formula("intlit", value=n)


def carrier(t, factory=CORE):
    return Formula("carrier", ctype=t, factory=factory)


def emptyset():
    return Formula("emptyset")


def ext(name, args, factory):
    return mk_node("ext", args, name=name, factory=factory)


def conjoin(preds) -> Formula:
    """Conjunction with ⊤-elimination; empty or all-⊤ collapses to ⊤."""
    kept = []
    for p in preds:
        if p.kind == "true":
            continue
        if p.kind == "and":
            kept.extend(p.children)
        else:
            kept.append(p)
    if not kept:
        return TRUE()
    if len(kept) == 1:
        return kept[0]
    return mk_node("and", kept)


# Traversal ------------------------------------------------------------------

def rebuild(f: Formula, children) -> Formula:
    """`f` with new children, re-running the factory and flattening checks."""
    return mk_node(
        f.kind,
        children,
        name=f.name,
        value=f.value,
        bound=f.bound,
        bound_types=f.bound_types,
        ctype=f.ctype,
        factory=f.factory,
        type=f.type,
    )


def positions(f: Formula) -> list:
    """All tree paths in pre-order; () is the root."""
    out = [()]
    for i, c in enumerate(f.children):
        out.extend((i, *p) for p in positions(c))
    return out


def subformula_at(f: Formula, path) -> Formula:
    node = f
    for i in path:
        if not (0 <= i < len(node.children)):
            raise InvalidPosition(f"no child {i} at {node.kind} node")
        node = node.children[i]
    return node


def replace_at(f: Formula, path, new: Formula) -> Formula:
    if not path:
        return new
    i = path[0]
    if not (0 <= i < len(f.children)):
        raise InvalidPosition(f"no child {path[0]} at {f.kind} node")
    children = list(f.children)
    children[i] = replace_at(children[i], path[1:], new)
    return rebuild(f, children)


def free_idents(f: Formula, bound=frozenset()) -> dict:
    """Free identifier occurrences, name -> type of first occurrence."""
    out = {}
    if f.kind == "ident":
        if f.name not in bound:
            out.setdefault(f.name, f.type)
        return out
    inner = bound | set(f.bound)
    for c in f.children:
        for n, t in free_idents(c, inner).items():
            out.setdefault(n, t)
    return out


def iter_nodes(f: Formula):
    yield f
    for c in f.children:
        yield from iter_nodes(c)


def strip_types(f: Formula) -> Formula:
    """Erase inferred types (used to compare parsed vs typechecked trees)."""
    children = tuple(strip_types(c) for c in f.children)
    return replace(
        f,
        children=children,
        type=None,
        bound_types=(None,) * len(f.bound),
    )
