"""Pattern matching producing specialisations.

Type parameters match arbitrary types and pattern variables match
expressions.  Associative operators are matched with a greedy algorithm:
operands left to right, a metavariable operand takes the minimal run of
consecutive subject operands (extending only when the rest cannot match),
and the first success is returned.  Commutativity is deliberately ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, replace as _dc_replace

from .formula import Formula, mk_node
from .specialise import Specialisation
from .stypes import (
    DatatypeInstance,
    PowerSet,
    Product,
    SType,
    TypeParam,
)


@dataclass(frozen=True)
class Pattern:
    """A formula whose designated free identifiers and type parameters are
    the match unknowns."""

    formula: Formula
    metavars: frozenset = frozenset()
    type_metavars: frozenset = frozenset()


def match(p: Pattern, subject: Formula) -> Specialisation | None:
    """Single greedy match of `subject` against `p`, or None."""
    m = _Matcher(p.metavars, p.type_metavars)
    if not m.walk(p.formula, subject, frozenset()):
        return None
    return m.result()


def match_types(pattern_type: SType, subject_type: SType,
                type_metavars) -> dict | None:
    """Type-level matching: metavariable parameters bind arbitrary types."""
    m = _Matcher(frozenset(), frozenset(type_metavars))
    if not m.match_type(pattern_type, subject_type):
        return None
    return dict(m.tbind)


def match_assoc(pattern_operands, subject_operands, metavars,
                type_metavars=frozenset(), kind: str = "fcomp",
                opname: str | None = None) -> Specialisation | None:
    """Greedy matching of two flattened associative operand lists."""
    m = _Matcher(frozenset(metavars), frozenset(type_metavars))
    if not m.assoc(list(pattern_operands), list(subject_operands),
                   frozenset(), kind, opname):
        return None
    return m.result()


class _Matcher:
    def __init__(self, metavars, type_metavars):
        self.metavars = metavars
        self.type_metavars = type_metavars
        self.bind: dict = {}
        self.tbind: dict = {}
        self.var_types: dict = {}

    def result(self) -> Specialisation:
        return Specialisation(dict(self.tbind), dict(self.bind),
                              dict(self.var_types))

    # -- types -------------------------------------------------------------

    def match_type(self, pt: SType, st: SType) -> bool:
        if isinstance(pt, TypeParam) and pt.name in self.type_metavars:
            if pt.name in self.tbind:
                return self.tbind[pt.name] == st
            self.tbind[pt.name] = st
            return True
        match pt, st:
            case PowerSet(a), PowerSet(b):
                return self.match_type(a, b)
            case Product(a1, b1), Product(a2, b2):
                return self.match_type(a1, a2) and self.match_type(b1, b2)
            case DatatypeInstance(n1, a1), DatatypeInstance(n2, a2):
                return (
                    n1 == n2
                    and len(a1) == len(a2)
                    and all(self.match_type(x, y) for x, y in zip(a1, a2))
                )
            case _:
                return pt == st

    # -- formulas ----------------------------------------------------------

    def bind_var(self, name: str, declared: SType | None, value: Formula) -> bool:
        if name in self.bind:
            return self.bind[name] == value
        if declared is not None and value.type is not None:
            if not self.match_type(declared, value.type):
                return False
        self.bind[name] = value
        if declared is not None:
            self.var_types.setdefault(name, declared)
        return True

    def is_metavar(self, f: Formula, shadowed) -> bool:
        return (
            f.kind == "ident" and f.name in self.metavars and f.name not in shadowed
        )

    def walk(self, p: Formula, s: Formula, shadowed) -> bool:
        if self.is_metavar(p, shadowed):
            if s.is_predicate:
                return False
            return self.bind_var(p.name, p.type, s)
        if p.kind != s.kind:
            return False
        if p.kind == "ident":
            return p.name == s.name
        if p.kind == "intlit":
            return p.value == s.value
        if p.kind == "carrier":
            return self.match_type(p.ctype, s.ctype)
        if p.kind == "ext":
            if p.name != s.name:
                return False
            view = p.factory.op_view(p.name) or s.factory.op_view(s.name)
            if view is not None and view.associative:
                return self.assoc(
                    list(p.children), list(s.children), shadowed, "ext", p.name,
                    s.factory,
                )
            return self.children(p, s, shadowed)
        if p.kind in ("and", "or", "fcomp"):
            return self.assoc(list(p.children), list(s.children), shadowed,
                              p.kind, None, s.factory)
        if p.kind in ("forall", "exists"):
            if p.bound != s.bound:
                return False
            return self.children(p, s, shadowed | set(p.bound))
        return self.children(p, s, shadowed)

    def children(self, p: Formula, s: Formula, shadowed) -> bool:
        if len(p.children) != len(s.children):
            return False
        return all(
            self.walk(pc, sc, shadowed) for pc, sc in zip(p.children, s.children)
        )

    def assoc(self, pops, sops, shadowed, kind, opname, factory=None) -> bool:
        if not pops:
            return not sops
        head, rest = pops[0], pops[1:]
        if self.is_metavar(head, shadowed):
            # leave at least one operand for every remaining pattern operand
            max_take = len(sops) - len(rest)
            for k in range(1, max_take + 1):
                snapshot = (dict(self.bind), dict(self.tbind), dict(self.var_types))
                value = _run_node(kind, opname, sops[:k], factory)
                if self.bind_var(head.name, head.type, value) and self.assoc(
                    rest, sops[k:], shadowed, kind, opname, factory
                ):
                    return True
                self.bind, self.tbind, self.var_types = snapshot
            return False
        if not sops:
            return False
        snapshot = (dict(self.bind), dict(self.tbind), dict(self.var_types))
        if self.walk(head, sops[0], shadowed) and self.assoc(
            rest, sops[1:], shadowed, kind, opname, factory
        ):
            return True
        self.bind, self.tbind, self.var_types = snapshot
        return False


def _run_node(kind, opname, run, factory) -> Formula:
    """A taken run of k >= 2 operands binds as the flattened node over it."""
    if len(run) == 1:
        return run[0]
    node = mk_node(kind, run, name=opname,
                   factory=factory if kind == "ext" else None)
    return _dc_replace(node, type=_run_type(kind, node, run))


def _run_type(kind, node, run):
    if kind == "fcomp":
        first, last = run[0].type, run[-1].type
        match first, last:
            case PowerSet(Product(a, _)), PowerSet(Product(_, d)):
                return PowerSet(Product(a, d))
        return None
    if kind == "ext":
        return run[0].type
    return None  # and / or: predicates
