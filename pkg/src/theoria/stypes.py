"""Types of the mathematical language.

A relation type A ↔ B is represented as PowerSet(Product(A, B)); there is
no separate constructor for it.
"""

from __future__ import annotations

from dataclasses import dataclass


class SType:
    """Base class for types."""

    __slots__ = ()

    def __str__(self):
        return format_type(self)


@dataclass(frozen=True)
class IntType(SType):
    pass


@dataclass(frozen=True)
class BoolType(SType):
    pass


@dataclass(frozen=True)
class TypeParam(SType):
    name: str


@dataclass(frozen=True)
class GivenType(SType):
    name: str


@dataclass(frozen=True)
class PowerSet(SType):
    inner: SType


@dataclass(frozen=True)
class Product(SType):
    left: SType
    right: SType


@dataclass(frozen=True)
class DatatypeInstance(SType):
    name: str
    args: tuple


@dataclass(frozen=True)
class TypeMeta(SType):
    """Inference metavariable; never appears in a fully typed formula."""

    uid: int


INT = IntType()
BOOL = BoolType()


def relation(a: SType, b: SType) -> SType:
    return PowerSet(Product(a, b))


def subst_params(t: SType, mapping: dict) -> SType:
    """Replace every TypeParam whose name is in `mapping`."""
    match t:
        case TypeParam(name) if name in mapping:
            return mapping[name]
        case PowerSet(inner):
            return PowerSet(subst_params(inner, mapping))
        case Product(left, right):
            return Product(subst_params(left, mapping), subst_params(right, mapping))
        case DatatypeInstance(name, args):
            return DatatypeInstance(name, tuple(subst_params(a, mapping) for a in args))
        case _:
            return t


def param_names(t: SType) -> set:
    match t:
        case TypeParam(name):
            return {name}
        case PowerSet(inner):
            return param_names(inner)
        case Product(left, right):
            return param_names(left) | param_names(right)
        case DatatypeInstance(_, args):
            return set().union(*(param_names(a) for a in args)) if args else set()
        case _:
            return set()


def contains_meta(t: SType) -> bool:
    match t:
        case TypeMeta():
            return True
        case PowerSet(inner):
            return contains_meta(inner)
        case Product(left, right):
            return contains_meta(left) or contains_meta(right)
        case DatatypeInstance(_, args):
            return any(contains_meta(a) for a in args)
        case _:
            return False


def format_type(t: SType, prec: int = 0) -> str:
    """Render a type; `prec` 0 = top, 1 = product operand."""
    match t:
        case IntType():
            return "ℤ"
        case BoolType():
            return "BOOL"
        case TypeParam(name) | GivenType(name):
            return name
        case PowerSet(inner):
            return f"ℙ({format_type(inner)})"
        case Product(left, right):
            body = f"{format_type(left, 1)} × {format_type(right, 1)}"
            return f"({body})" if prec >= 1 else body
        case DatatypeInstance(name, args):
            if not args:
                return name
            return f"{name}({', '.join(format_type(a) for a in args)})"
        case TypeMeta(uid):
            return f"?{uid}"
    raise TypeError(f"not a type: {t!r}")
