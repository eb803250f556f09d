"""Extension signatures: datatypes, axiomatic types, operators.

Signatures carry everything relevant to parsing and matching, but never
operator definitions; two operators with the same signature and different
definition bodies compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidSignature
from .stypes import SType

PREFIX = "PREFIX"
INFIX = "INFIX"
EXPRESSION = "EXPRESSION"
PREDICATE = "PREDICATE"


@dataclass(frozen=True)
class ConstructorSig:
    name: str
    destructors: tuple = ()  # tuple of (name, SType)


@dataclass(frozen=True)
class DatatypeSig:
    name: str
    type_params: tuple = ()
    constructors: tuple = ()  # tuple of ConstructorSig, order-sensitive


@dataclass(frozen=True)
class AxiomaticTypeSig:
    name: str


@dataclass(frozen=True)
class OperatorSig:
    name: str
    notation: str = PREFIX
    formula_kind: str = EXPRESSION
    args: tuple = ()  # tuple of (name, SType)
    result_type: SType | None = None  # None for predicates
    associative: bool = False
    commutative: bool = False
    # Presentation only; not part of signature equality.
    symbol: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.notation == INFIX and len(self.args) < 2:
            raise InvalidSignature(
                f"INFIX operator {self.name!r} needs at least 2 arguments"
            )
        if self.formula_kind == PREDICATE and self.result_type is not None:
            raise InvalidSignature(f"predicate operator {self.name!r} has a result type")
        if self.formula_kind == EXPRESSION and self.result_type is None:
            raise InvalidSignature(f"expression operator {self.name!r} needs a result type")
        if self.associative:
            if self.notation != INFIX:
                raise InvalidSignature(f"associative operator {self.name!r} must be INFIX")
            if len(self.args) != 2:
                raise InvalidSignature(
                    f"associative operator {self.name!r} must declare exactly 2 arguments"
                )
            t0, t1 = self.args[0][1], self.args[1][1]
            if t0 != t1 or self.result_type != t0:
                raise InvalidSignature(
                    f"associative operator {self.name!r} needs equal argument "
                    "and result types"
                )


ExtensionSignature = (DatatypeSig, AxiomaticTypeSig, OperatorSig)


def signature_equal(s1, s2) -> bool:
    """Signature-level equality: names, types and flags, never definitions."""
    return s1 == s2


def introduced_names(sig) -> list:
    """Every identifier a signature brings into scope."""
    if isinstance(sig, DatatypeSig):
        names = [sig.name]
        for cons in sig.constructors:
            names.append(cons.name)
            names.extend(d for d, _ in cons.destructors)
        return names
    return [sig.name]
