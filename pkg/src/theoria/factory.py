"""Formula factories: the core language plus a set of extension signatures.

Factory ids are content-addressed (a hash of the sorted signatures), so two
factories with equal extension sets always get equal ids.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .errors import DuplicateExtension, IncompatibleFactories
from .signatures import (
    AxiomaticTypeSig,
    DatatypeSig,
    EXPRESSION,
    OperatorSig,
    PREDICATE,
    PREFIX,
    introduced_names,
    signature_equal,
)
from .stypes import DatatypeInstance, SType, TypeParam

# Names the concrete syntax reserves; extensions may not shadow them.
CORE_KEYWORDS = frozenset(
    {
        "BOOL", "ℤ", "⊤", "⊥", "∅", "true", "false",
        "theory", "datatype", "axiomatic", "operator", "constructor",
        "rewrite", "inference", "axiom", "case", "end", "type",
        "direct", "inductive", "lhs", "rhs", "infer", "given",
        "forall", "exists",
    }
)


@dataclass(frozen=True)
class OpView:
    """Uniform application view of an operator, constructor or destructor."""

    name: str
    role: str  # "operator" | "constructor" | "destructor"
    type_params: tuple
    arg_types: tuple
    result_type: SType | None  # None for predicates
    notation: str = PREFIX
    associative: bool = False
    commutative: bool = False
    symbol: str | None = None

    @property
    def is_predicate(self) -> bool:
        return self.result_type is None


class FormulaFactory:
    """Immutable map of extension names to signatures, plus lookup tables."""

    def __init__(self, extensions: dict):
        self.extensions = dict(extensions)
        names = {}
        views = {}
        for sig in self.extensions.values():
            for n in introduced_names(sig):
                if n in CORE_KEYWORDS:
                    raise DuplicateExtension(n)
                if n in names:
                    raise DuplicateExtension(n)
                names[n] = sig
            if isinstance(sig, OperatorSig):
                params = sorted(
                    set().union(*(_type_params(t) for _, t in sig.args), set())
                    | (_type_params(sig.result_type) if sig.result_type else set())
                )
                views[sig.name] = OpView(
                    sig.name,
                    "operator",
                    tuple(params),
                    tuple(t for _, t in sig.args),
                    sig.result_type,
                    sig.notation,
                    sig.associative,
                    sig.commutative,
                    sig.symbol,
                )
            elif isinstance(sig, DatatypeSig):
                inst = DatatypeInstance(
                    sig.name, tuple(TypeParam(p) for p in sig.type_params)
                )
                for cons in sig.constructors:
                    views[cons.name] = OpView(
                        cons.name,
                        "constructor",
                        sig.type_params,
                        tuple(t for _, t in cons.destructors),
                        inst,
                    )
                    for dname, dtype in cons.destructors:
                        views[dname] = OpView(
                            dname, "destructor", sig.type_params, (inst,), dtype
                        )
        self._names = names
        self._views = views
        self.id = _content_id(self.extensions)

    def __eq__(self, other):
        return isinstance(other, FormulaFactory) and self.id == other.id

    def __hash__(self):
        return hash(self.id)

    def __repr__(self):
        return f"FormulaFactory({sorted(self.extensions)}, id={self.id[:8]})"

    def owner(self, name: str):
        """The signature that introduced `name`, or None."""
        return self._names.get(name)

    def op_view(self, name: str) -> OpView | None:
        return self._views.get(name)

    def datatype(self, name: str) -> DatatypeSig | None:
        sig = self.extensions.get(name)
        return sig if isinstance(sig, DatatypeSig) else None

    def axiomatic_type(self, name: str) -> AxiomaticTypeSig | None:
        sig = self.extensions.get(name)
        return sig if isinstance(sig, AxiomaticTypeSig) else None


def _type_params(t: SType) -> set:
    from .stypes import param_names

    return param_names(t)


def _content_id(extensions: dict) -> str:
    payload = "\n".join(repr(extensions[k]) for k in sorted(extensions))
    return hashlib.sha256(payload.encode()).hexdigest()


CORE = FormulaFactory({})


def conflict_name(f1: FormulaFactory, f2: FormulaFactory) -> str | None:
    """First introduced name on which the two factories disagree, or None."""
    for name in sorted(f1._names.keys() & f2._names.keys()):
        if not signature_equal(f1._names[name], f2._names[name]):
            return name
    return None


def factories_compatible(f1: FormulaFactory, f2: FormulaFactory) -> bool:
    return conflict_name(f1, f2) is None


def factory_union(f1: FormulaFactory, f2: FormulaFactory) -> FormulaFactory:
    if f1.id == f2.id:
        return f1
    bad = conflict_name(f1, f2)
    if bad is not None:
        raise IncompatibleFactories(bad)
    merged = dict(f1.extensions)
    merged.update({k: v for k, v in f2.extensions.items() if k not in merged})
    return FormulaFactory(merged)


def factory_with(base: FormulaFactory, sigs) -> FormulaFactory:
    """`base` extended with new signatures; duplicates must be signature-equal."""
    merged = dict(base.extensions)
    for sig in sigs:
        if sig.name in merged:
            if not signature_equal(merged[sig.name], sig):
                raise IncompatibleFactories(sig.name)
            continue
        merged[sig.name] = sig
    return FormulaFactory(merged)
