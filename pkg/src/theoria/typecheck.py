"""Type checking and inference for the extended language.

Inference is first-order syntactic unification over `SType`; there is no
subtyping.  Unannotated bound identifiers and unknown free identifiers get
metavariables which must be fully resolved, otherwise the check fails with
`UnresolvedTypeParam`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import TypingError, UnresolvedTypeParam
from .factory import CORE, FormulaFactory, factory_union
from .formula import Formula
from .stypes import (
    DatatypeInstance,
    INT,
    PowerSet,
    Product,
    SType,
    TypeMeta,
    TypeParam,
    format_type,
    subst_params,
)


@dataclass(frozen=True)
class TypeEnvironment:
    vars: dict = field(default_factory=dict)
    type_params: frozenset = frozenset()

    def __post_init__(self):
        clash = set(self.vars) & set(self.type_params)
        if clash:
            raise TypingError(f"identifier shadows type parameter: {sorted(clash)}")

    def with_vars(self, extra: dict) -> "TypeEnvironment":
        merged = dict(self.vars)
        merged.update(extra)
        return TypeEnvironment(merged, self.type_params)


EMPTY_ENV = TypeEnvironment()


class _Checker:
    def __init__(self, factory: FormulaFactory, generalize: bool = False):
        self.factory = factory
        self.subst: dict = {}
        self.counter = 0
        self.free: dict = {}  # inferred types of unknown free identifiers
        self.generalize = generalize
        self.gen_names: dict = {}  # residual meta uid -> fresh TypeParam

    def fresh(self) -> TypeMeta:
        self.counter += 1
        return TypeMeta(self.counter)

    def resolve(self, t: SType) -> SType:
        while isinstance(t, TypeMeta) and t.uid in self.subst:
            t = self.subst[t.uid]
        return t

    def unify(self, a: SType, b: SType):
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(a, TypeMeta):
            if self._occurs(a, b):
                raise TypingError(f"cannot construct infinite type {format_type(b)}")
            self.subst[a.uid] = b
            return
        if isinstance(b, TypeMeta):
            return self.unify(b, a)
        match a, b:
            case PowerSet(x), PowerSet(y):
                self.unify(x, y)
            case Product(x1, y1), Product(x2, y2):
                self.unify(x1, x2)
                self.unify(y1, y2)
            case DatatypeInstance(n1, a1), DatatypeInstance(n2, a2) if (
                n1 == n2 and len(a1) == len(a2)
            ):
                for x, y in zip(a1, a2):
                    self.unify(x, y)
            case _:
                raise TypingError(
                    f"type mismatch: expected {format_type(self.zonk_soft(a))}, "
                    f"found {format_type(self.zonk_soft(b))}",
                    expected=a,
                    found=b,
                )

    def _occurs(self, m: TypeMeta, t: SType) -> bool:
        t = self.resolve(t)
        match t:
            case TypeMeta(uid):
                return uid == m.uid
            case PowerSet(inner):
                return self._occurs(m, inner)
            case Product(left, right):
                return self._occurs(m, left) or self._occurs(m, right)
            case DatatypeInstance(_, args):
                return any(self._occurs(m, a) for a in args)
            case _:
                return False

    def zonk_soft(self, t: SType) -> SType:
        t = self.resolve(t)
        match t:
            case PowerSet(inner):
                return PowerSet(self.zonk_soft(inner))
            case Product(left, right):
                return Product(self.zonk_soft(left), self.zonk_soft(right))
            case DatatypeInstance(name, args):
                return DatatypeInstance(name, tuple(self.zonk_soft(a) for a in args))
            case _:
                return t

    def zonk(self, t: SType, what: str) -> SType:
        t = self.zonk_soft(t)
        if _has_meta(t):
            if self.generalize:
                return self._generalize(t)
            raise UnresolvedTypeParam(
                f"could not infer a type for {what} (got {format_type(t)})"
            )
        return t

    def _generalize(self, t: SType) -> SType:
        """Residual metavariables become fresh rigid type parameters
        (polymorphic rule patterns)."""
        match t:
            case TypeMeta(uid):
                if uid not in self.gen_names:
                    self.gen_names[uid] = TypeParam(f"_T{len(self.gen_names)}")
                return self.gen_names[uid]
            case PowerSet(inner):
                return PowerSet(self._generalize(inner))
            case Product(left, right):
                return Product(self._generalize(left), self._generalize(right))
            case DatatypeInstance(name, args):
                return DatatypeInstance(
                    name, tuple(self._generalize(a) for a in args)
                )
            case _:
                return t

    # -- annotation --------------------------------------------------------

    def annotate(self, f: Formula, scope: dict) -> Formula:
        kind = f.kind
        if kind == "ident":
            if f.name in scope:
                t = scope[f.name]
            else:
                t = self.free.setdefault(f.name, self.fresh())
            return replace(f, type=t)
        if kind == "intlit":
            return replace(f, type=INT)
        if kind == "carrier":
            return replace(f, type=PowerSet(f.ctype))
        if kind == "emptyset":
            return replace(f, type=PowerSet(self.fresh()))

        if kind in ("forall", "exists"):
            bts = [
                bt if bt is not None else self.fresh()
                for bt in (f.bound_types or (None,) * len(f.bound))
            ]
            inner = dict(scope)
            inner.update(zip(f.bound, bts))
            body = self.annotate(f.children[0], inner)
            return replace(f, children=(body,), bound_types=tuple(bts))

        children = tuple(self.annotate(c, scope) for c in f.children)
        ts = [c.type for c in children]

        if kind == "ext":
            view = self.factory.op_view(f.name)
            inst = {p: self.fresh() for p in view.type_params}
            if view.associative:
                want = subst_params(view.arg_types[0], inst)
                for c, t in zip(children, ts):
                    self._unify_at(want, t, c)
                rt = want
            else:
                for c, t, at in zip(children, ts, view.arg_types):
                    self._unify_at(subst_params(at, inst), t, c)
                rt = (
                    subst_params(view.result_type, inst)
                    if view.result_type is not None
                    else None
                )
            return replace(f, children=children, type=rt)

        rt = None
        if kind == "equal":
            self.unify(ts[0], ts[1])
        elif kind == "in":
            self.unify(PowerSet(ts[0]), ts[1])
        elif kind == "subseteq":
            m = self.fresh()
            self.unify(ts[0], PowerSet(m))
            self.unify(ts[1], PowerSet(m))
        elif kind in ("add", "sub", "mul", "div", "neg"):
            for t in ts:
                self.unify(INT, t)
            rt = INT
        elif kind == "interval":
            for t in ts:
                self.unify(INT, t)
            rt = PowerSet(INT)
        elif kind == "maplet":
            rt = Product(ts[0], ts[1])
        elif kind == "setext":
            for t in ts[1:]:
                self.unify(ts[0], t)
            rt = PowerSet(ts[0])
        elif kind == "pow":
            m = self.fresh()
            self.unify(ts[0], PowerSet(m))
            rt = PowerSet(PowerSet(m))
        elif kind == "cprod":
            ma, mb = self.fresh(), self.fresh()
            self.unify(ts[0], PowerSet(ma))
            self.unify(ts[1], PowerSet(mb))
            rt = PowerSet(Product(ma, mb))
        elif kind in ("union", "inter"):
            m = self.fresh()
            for t in ts:
                self.unify(t, PowerSet(m))
            rt = PowerSet(m)
        elif kind == "fcomp":
            links = [(self.fresh(), self.fresh()) for _ in ts]
            for t, (a, b) in zip(ts, links):
                self.unify(t, PowerSet(Product(a, b)))
            for (_, b), (a2, _) in zip(links, links[1:]):
                self.unify(b, a2)
            rt = PowerSet(Product(links[0][0], links[-1][1]))
        # predicate connectives: nothing to do
        return replace(f, children=children, type=rt)

    def _unify_at(self, expected, found, node):
        try:
            self.unify(expected, found)
        except TypingError as e:
            if e.expected is None:
                raise
            raise TypingError(
                f"in {node}: expected {format_type(self.zonk_soft(expected))}, "
                f"found {format_type(self.zonk_soft(found))}",
                expected=e.expected,
                found=e.found,
            ) from None

    def finish(self, f: Formula) -> Formula:
        children = tuple(self.finish(c) for c in f.children)
        t = self.zonk(f.type, str(f)) if f.type is not None else None
        bts = tuple(
            self.zonk(bt, f"bound identifier {n}") if bt is not None else None
            for n, bt in zip(f.bound, f.bound_types)
        )
        return replace(f, children=children, type=t, bound_types=bts)


def _has_meta(t: SType) -> bool:
    match t:
        case TypeMeta():
            return True
        case PowerSet(inner):
            return _has_meta(inner)
        case Product(left, right):
            return _has_meta(left) or _has_meta(right)
        case DatatypeInstance(_, args):
            return any(_has_meta(a) for a in args)
        case _:
            return False


def typecheck_group(formulas, env: TypeEnvironment | None = None,
                    factory: FormulaFactory | None = None,
                    generalize: bool = False):
    """Typecheck formulas in one shared inference context.

    Unknown free identifiers keep a consistent inferred type across all the
    formulas.  With `generalize`, residual inference variables become fresh
    type parameters instead of failing (polymorphic rule patterns).
    Returns (typed formulas, inferred free-identifier types).
    """
    env = env or EMPTY_ENV
    if factory is None:
        factory = CORE
        for f in formulas:
            factory = factory_union(factory, f.factory)
    checker = _Checker(factory, generalize)
    annotated = [checker.annotate(f, dict(env.vars)) for f in formulas]
    typed = [checker.finish(f) for f in annotated]
    inferred = {
        n: checker.zonk(t, f"free identifier {n}") for n, t in checker.free.items()
    }
    return typed, inferred


def typecheck(f: Formula, env: TypeEnvironment | None = None,
              factory: FormulaFactory | None = None) -> Formula:
    """Return `f` with every expression node annotated with its type."""
    typed, _ = typecheck_group([f], env, factory)
    return typed[0]
