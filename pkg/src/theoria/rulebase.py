"""Rule bases: an ordered list of theories ready for proving.

A rule base owns the combined formula factory, the rule patterns typed for
matching (rule variables generalized to polymorphic patterns), WD condition
lookup and definition lookup.  Rule order is theory order first, then
declaration order inside each theory.
"""

from __future__ import annotations

from dataclasses import dataclass

from .factory import CORE, FormulaFactory, factory_union
from .formula import Formula, free_idents, iter_nodes
from .stypes import param_names
from .theory import (
    Axiomatic,
    Direct,
    Inductive,
    InferenceRule,
    RewriteRule,
    Theory,
    compile_factory,
)
from .typecheck import TypeEnvironment, typecheck_group


@dataclass(frozen=True)
class PreparedRewrite:
    theory: Theory
    rule: RewriteRule
    lhs: Formula  # typed pattern
    cases: tuple  # typed (condition, rhs) pairs
    metavars: frozenset
    type_metavars: frozenset


@dataclass(frozen=True)
class PreparedInference:
    theory: Theory
    rule: InferenceRule
    givens: tuple  # typed patterns
    infer: Formula
    metavars: frozenset
    type_metavars: frozenset


def _pattern_type_params(formulas) -> frozenset:
    names: set = set()
    for f in formulas:
        for node in iter_nodes(f):
            for t in (node.type, node.ctype, *(node.bound_types or ())):
                if t is not None:
                    names |= param_names(t)
    return frozenset(names)


class RuleBase:
    def __init__(self, theories):
        self.theories = tuple(theories)
        fac = CORE
        for t in self.theories:
            fac = factory_union(fac, compile_factory(t))
        self.factory = fac
        self._rewrites = None
        self._inferences = None

    def _env(self, t: Theory) -> TypeEnvironment:
        return TypeEnvironment({}, frozenset(t.type_params))

    def rewrites(self) -> list:
        if self._rewrites is None:
            out = []
            for t in self.theories:
                for rule in t.rewrite_rules:
                    group = [rule.lhs]
                    for cond, rhs in rule.cases:
                        group.extend((cond, rhs))
                    typed, _ = typecheck_group(group, self._env(t), self.factory,
                                               generalize=True)
                    cases = tuple(
                        (typed[1 + 2 * i], typed[2 + 2 * i])
                        for i in range(len(rule.cases))
                    )
                    mv = frozenset(free_idents(typed[0])) | frozenset(
                        n for f in typed[1:] for n in free_idents(f)
                    )
                    out.append(PreparedRewrite(
                        t, rule, typed[0], cases, mv,
                        _pattern_type_params(typed) | frozenset(t.type_params),
                    ))
            self._rewrites = out
        return self._rewrites

    def inferences(self) -> list:
        if self._inferences is None:
            out = []
            for t in self.theories:
                for rule in t.inference_rules:
                    typed, _ = typecheck_group(
                        [rule.infer, *rule.givens], self._env(t), self.factory,
                        generalize=True,
                    )
                    mv = frozenset(n for f in typed for n in free_idents(f))
                    out.append(PreparedInference(
                        t, rule, tuple(typed[1:]), typed[0], mv,
                        _pattern_type_params(typed) | frozenset(t.type_params),
                    ))
            self._inferences = out
        return self._inferences

    def find_rewrite(self, name: str) -> PreparedRewrite | None:
        return next((p for p in self.rewrites() if p.rule.name == name), None)

    def find_inference(self, name: str) -> PreparedInference | None:
        return next((p for p in self.inferences() if p.rule.name == name), None)

    def defining_theory(self, opname: str) -> Theory | None:
        """The theory holding an expandable definition of `opname`."""
        for t in self.theories:
            opdef = t.operator(opname)
            if opdef is not None and isinstance(opdef.definition,
                                               (Direct, Inductive)):
                return t
        return None

    def wd_lookup(self, opname: str):
        """Declared WD condition of an operator, as (argument names, predicate)."""
        for t in self.theories:
            opdef = t.operator(opname)
            if opdef is None:
                continue
            d = opdef.definition
            if isinstance(d, Axiomatic) and d.wd_condition is not None:
                return ([n for n, _ in opdef.signature.args], d.wd_condition)
        return None

    def theory_of_rule(self, name: str) -> Theory | None:
        p = self.find_rewrite(name) or self.find_inference(name)
        return p.theory if p is not None else None
