"""Theories: datatypes, operators, rules; validation and compilation.

A theory compiles to a formula factory (its imports plus its own extension
signatures) and contributes a rule base.  Validation checks structure and
typing only; it never tries to prove rules sound against definitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DuplicateExtension, IncompatibleFactories, NotExpandable, TheoriaError
from .factory import CORE, FormulaFactory, factory_union, factory_with
from .formula import Formula, TRUE, forall, free_idents, lnot, member, mk_node
from .signatures import DatatypeSig, AxiomaticTypeSig, OperatorSig, PREDICATE
from .specialise import Specialisation, specialise
from .stypes import DatatypeInstance, GivenType, SType, TypeParam
from .typecheck import TypeEnvironment, typecheck, typecheck_group

FORWARD = "FORWARD"
BACKWARD = "BACKWARD"
BOTH = "BOTH"


@dataclass(frozen=True)
class Direct:
    body: Formula


@dataclass(frozen=True)
class InductiveCase:
    constructor: str
    params: tuple  # fresh names bound to the constructor's destructor values
    body: Formula


@dataclass(frozen=True)
class Inductive:
    scrutinee: str  # name of the matched argument
    cases: tuple


@dataclass(frozen=True)
class Axiomatic:
    defining_axioms: tuple = ()
    wd_condition: Formula | None = None


@dataclass(frozen=True)
class OperatorDef:
    signature: OperatorSig
    definition: object = None  # Direct | Inductive | Axiomatic | None


@dataclass(frozen=True)
class RewriteRule:
    name: str
    lhs: Formula
    cases: tuple  # tuple of (condition, rhs)
    complete: bool = True
    automatic: bool = False


@dataclass(frozen=True)
class InferenceRule:
    name: str
    givens: tuple
    infer: Formula
    applicability: str = BOTH
    automatic: bool = False


@dataclass(frozen=True)
class Theory:
    name: str
    type_params: tuple = ()
    datatypes: tuple = ()  # DatatypeSig
    axiomatic_types: tuple = ()  # AxiomaticTypeSig
    operators: tuple = ()  # OperatorDef
    rewrite_rules: tuple = ()
    inference_rules: tuple = ()
    axioms: tuple = ()  # tuple of (name, Formula)
    imports: tuple = ()  # imported factories

    def operator(self, name: str) -> OperatorDef | None:
        return next((o for o in self.operators if o.signature.name == name), None)

    def rewrite_rule(self, name: str) -> RewriteRule | None:
        return next((r for r in self.rewrite_rules if r.name == name), None)

    def inference_rule(self, name: str) -> InferenceRule | None:
        return next((r for r in self.inference_rules if r.name == name), None)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    subject: str
    message: str

    def __str__(self):
        return f"[{self.code}] {self.subject}: {self.message}"


def compile_factory(t: Theory, imports=None) -> FormulaFactory:
    """Union of the imports plus the theory's own extension signatures."""
    fac = CORE
    for imp in imports if imports is not None else t.imports:
        fac = factory_union(fac, imp)
    sigs = list(t.datatypes) + list(t.axiomatic_types) + [
        o.signature for o in t.operators
    ]
    merged = dict(fac.extensions)
    for sig in sigs:
        if sig.name in merged:
            raise DuplicateExtension(sig.name)
        merged[sig.name] = sig
    return FormulaFactory(merged)


def generated_axioms(t: Theory, factory: FormulaFactory | None = None) -> list:
    """Non-emptiness and maximality per axiomatic type, then user axioms."""
    fac = factory if factory is not None else compile_factory(t)
    out = []
    for ax in t.axiomatic_types:
        s = Formula("carrier", ctype=GivenType(ax.name), factory=fac)
        non_empty = lnot(mk_node("equal", (s, Formula("emptyset"))))
        maximal = forall(("x",), member(Formula("ident", name="x"), s))
        env = TypeEnvironment()
        out.append((f"{ax.name}.non_emptiness", typecheck(non_empty, env, fac)))
        out.append((f"{ax.name}.maximality", typecheck(maximal, env, fac)))
    out.extend(t.axioms)
    return out


def _theory_env(t: Theory) -> TypeEnvironment:
    return TypeEnvironment({}, frozenset(t.type_params))


def _constructor_case_env(t, fac, opdef, case) -> dict:
    """Argument types in scope for one inductive case."""
    sig = opdef.signature
    scrut_type = dict(sig.args)[opdef.definition.scrutinee]
    if not isinstance(scrut_type, DatatypeInstance):
        raise TheoriaError(f"scrutinee of {sig.name} is not datatype-typed")
    dt = fac.datatype(scrut_type.name)
    cons = next(c for c in dt.constructors if c.name == case.constructor)
    inst = dict(zip(dt.type_params, scrut_type.args))
    from .stypes import subst_params

    env = {n: ty for n, ty in sig.args if n != opdef.definition.scrutinee}
    for p, (_, dty) in zip(case.params, cons.destructors):
        env[p] = subst_params(dty, inst)
    return env


def validate_theory(t: Theory) -> list:
    """Empty list iff every structural and typing invariant holds."""
    diags = []
    try:
        fac = compile_factory(t)
    except (DuplicateExtension, IncompatibleFactories) as e:
        return [Diagnostic("DuplicateExtension", t.name, str(e))]
    env = _theory_env(t)

    for opdef in t.operators:
        sig = opdef.signature
        arg_env = env.with_vars(dict(sig.args))
        d = opdef.definition
        if isinstance(d, Direct):
            extra = set(free_idents(d.body)) - {n for n, _ in sig.args}
            if extra:
                diags.append(Diagnostic(
                    "UnboundDefinitionVariable", sig.name,
                    f"direct definition mentions {sorted(extra)}"))
                continue
            try:
                body = typecheck(d.body, arg_env, fac)
            except TheoriaError as e:
                diags.append(Diagnostic("TypeError", sig.name, str(e)))
                continue
            if sig.formula_kind == PREDICATE:
                if not body.is_predicate:
                    diags.append(Diagnostic(
                        "KindMismatch", sig.name, "predicate operator with "
                        "expression body"))
            elif body.type != sig.result_type:
                diags.append(Diagnostic(
                    "TypeError", sig.name,
                    f"body type {body.type} differs from declared "
                    f"{sig.result_type}"))
        elif isinstance(d, Inductive):
            arg_types = dict(sig.args)
            if d.scrutinee not in arg_types:
                diags.append(Diagnostic(
                    "UnknownScrutinee", sig.name,
                    f"no argument named {d.scrutinee}"))
                continue
            st = arg_types[d.scrutinee]
            if not isinstance(st, DatatypeInstance) or fac.datatype(st.name) is None:
                diags.append(Diagnostic(
                    "InvalidScrutinee", sig.name,
                    f"argument {d.scrutinee} is not datatype-typed"))
                continue
            dt = fac.datatype(st.name)
            declared = [c.name for c in dt.constructors]
            seen = [c.constructor for c in d.cases]
            for c in declared:
                if c not in seen:
                    diags.append(Diagnostic(
                        "IncompleteInduction", sig.name, f"missing case {c}"))
            for c in seen:
                if c not in declared:
                    diags.append(Diagnostic(
                        "UnknownConstructor", sig.name, f"no constructor {c}"))
            if sorted(set(seen)) != sorted(seen):
                diags.append(Diagnostic(
                    "DuplicateCase", sig.name, "constructor matched twice"))
            if any(d2.code in ("IncompleteInduction", "UnknownConstructor",
                              "DuplicateCase") and d2.subject == sig.name
                   for d2 in diags):
                continue
            for case in d.cases:
                case_env = env.with_vars(_constructor_case_env(t, fac, opdef, case))
                try:
                    body = typecheck(case.body, case_env, fac)
                except TheoriaError as e:
                    diags.append(Diagnostic("TypeError", sig.name, str(e)))
                    continue
                if sig.formula_kind == PREDICATE:
                    if not body.is_predicate:
                        diags.append(Diagnostic(
                            "KindMismatch", sig.name,
                            f"case {case.constructor} yields an expression"))
                elif body.type != sig.result_type:
                    diags.append(Diagnostic(
                        "TypeError", sig.name,
                        f"case {case.constructor} has type {body.type}, "
                        f"declared {sig.result_type}"))
        elif isinstance(d, Axiomatic) and d.wd_condition is not None:
            try:
                wdc = typecheck(d.wd_condition, arg_env, fac)
                if not wdc.is_predicate:
                    diags.append(Diagnostic(
                        "KindMismatch", sig.name, "WD condition is not a predicate"))
            except TheoriaError as e:
                diags.append(Diagnostic("TypeError", sig.name, str(e)))

    for rule in t.rewrite_rules:
        lhs_free = set(free_idents(rule.lhs))
        for i, (cond, rhs) in enumerate(rule.cases):
            extra = set(free_idents(rhs)) - lhs_free
            if extra:
                diags.append(Diagnostic(
                    "UnboundRhsVariable", rule.name,
                    f"case {i}: rhs mentions {sorted(extra)}"))
        if any(d2.subject == rule.name for d2 in diags):
            continue
        try:
            group = [rule.lhs]
            for cond, rhs in rule.cases:
                group.extend((cond, rhs))
            typed, _ = typecheck_group(group, env, fac, generalize=True)
            lhs_t = typed[0]
            for i, (cond, rhs) in enumerate(rule.cases):
                cond_t, rhs_t = typed[1 + 2 * i], typed[2 + 2 * i]
                if not cond_t.is_predicate:
                    diags.append(Diagnostic(
                        "KindMismatch", rule.name, f"case {i} condition is not "
                        "a predicate"))
                if rhs_t.is_predicate != lhs_t.is_predicate or (
                    not lhs_t.is_predicate and rhs_t.type != lhs_t.type
                ):
                    diags.append(Diagnostic(
                        "TypeError", rule.name,
                        f"case {i}: rhs type differs from lhs"))
        except TheoriaError as e:
            diags.append(Diagnostic("TypeError", rule.name, str(e)))

    for rule in t.inference_rules:
        try:
            typed, _ = typecheck_group([rule.infer, *rule.givens], env, fac,
                                       generalize=True)
            for f in typed:
                if not f.is_predicate:
                    diags.append(Diagnostic(
                        "KindMismatch", rule.name, "inference clauses must be "
                        "predicates"))
                    break
        except TheoriaError as e:
            diags.append(Diagnostic("TypeError", rule.name, str(e)))

    names = [r.name for r in t.rewrite_rules] + [r.name for r in t.inference_rules]
    names += [n for n, _ in t.axioms]
    dup = {n for n in names if names.count(n) > 1}
    for n in sorted(dup):
        diags.append(Diagnostic("DuplicateName", n, "rule or axiom name reused"))

    for name, ax in t.axioms:
        try:
            typed = typecheck(ax, env, fac)
            if not typed.is_predicate:
                diags.append(Diagnostic("KindMismatch", name,
                                        "axiom is not a predicate"))
        except TheoriaError as e:
            diags.append(Diagnostic("TypeError", name, str(e)))

    return diags


def expand_definition_formula(app: Formula, t: Theory) -> Formula:
    """Unfold one application of a directly or inductively defined operator."""
    if app.kind != "ext":
        raise NotExpandable(f"{app} is not an operator application")
    opdef = t.operator(app.name)
    if opdef is None or opdef.definition is None or isinstance(
        opdef.definition, Axiomatic
    ):
        raise NotExpandable(f"operator {app.name!r} has no expandable definition")
    fac = compile_factory(t)
    sig = opdef.signature
    d = opdef.definition

    # instantiate the signature's type parameters from the actual arguments
    from .matcher import match_types

    tmap: dict = {}
    params = set()
    for _, ty in sig.args:
        from .stypes import param_names

        params |= param_names(ty)
    for (argname, ty), actual in zip(sig.args, app.children):
        if actual.type is not None:
            got = match_types(ty, actual.type, params)
            if got is not None:
                for k, v in got.items():
                    tmap.setdefault(k, v)

    actuals = dict(zip((n for n, _ in sig.args), app.children))
    if isinstance(d, Direct):
        body = typecheck(d.body, _theory_env(t).with_vars(dict(sig.args)), fac)
        s = Specialisation(tmap, actuals)
        return specialise(body, s)

    scrut = actuals[d.scrutinee]
    view = fac.op_view(scrut.name) if scrut.kind == "ext" else None
    if view is None or view.role != "constructor":
        raise NotExpandable("inductive scrutinee is not constructor-headed")
    case = next((c for c in d.cases if c.constructor == scrut.name), None)
    if case is None:
        raise NotExpandable(f"no case for constructor {scrut.name!r}")
    opdef_env = _theory_env(t).with_vars(
        _constructor_case_env(t, fac, opdef, case)
    )
    body = typecheck(case.body, opdef_env, fac)
    vmap = {n: e for n, e in actuals.items() if n != d.scrutinee}
    vmap.update(zip(case.params, scrut.children))
    return specialise(body, Specialisation(tmap, vmap))
