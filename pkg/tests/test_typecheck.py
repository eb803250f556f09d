import pytest

from theoria.errors import TypingError, UnresolvedTypeParam
from theoria.parser import parse_formula
from theoria.stypes import (
    DatatypeInstance,
    GivenType,
    INT,
    PowerSet,
    Product,
    TypeParam,
)
from theoria.typecheck import TypeEnvironment, typecheck, typecheck_group


def tc(text, fac, vars=None, params=frozenset()):
    env = TypeEnvironment(vars or {}, frozenset(params))
    return typecheck(parse_formula(text, fac), env, fac)


def test_cons_instantiates_element_type(list_rb):
    f = tc("cons(1, nil)", list_rb.factory)
    assert f.type == DatatypeInstance("List", (INT,))
    assert f.children[1].type == DatatypeInstance("List", (INT,))


def test_destructor_types(list_rb):
    f = tc("head(cons(1, nil))", list_rb.factory)
    assert f.type == INT
    g = tc("tail(cons(1, nil))", list_rb.factory)
    assert g.type == DatatypeInstance("List", (INT,))


def test_arithmetic_and_sets(list_rb):
    fac = list_rb.factory
    assert tc("1 + 2 * 3", fac).type == INT
    assert tc("{1, 2}", fac).type == PowerSet(INT)
    assert tc("1 ‥ 3", fac).type == PowerSet(INT)
    assert tc("{1 ↦ 2} ; {2 ↦ 3}", fac).type == PowerSet(Product(INT, INT))


def test_free_ident_types_inferred_consistently(list_rb):
    typed, inferred = typecheck_group(
        [parse_formula("x + 1 = y", list_rb.factory),
         parse_formula("y = 2", list_rb.factory)],
        factory=list_rb.factory)
    assert inferred == {"x": INT, "y": INT}


def test_quantifier_binds_with_inferred_type(list_rb):
    f = tc("∀x· x ∈ {1, 2}", list_rb.factory)
    assert f.bound_types == (INT,)


def test_axiomatic_carrier_membership(real_rb):
    f = tc("∀x· x ∈ Real", real_rb.factory)
    assert f.is_predicate
    assert f.children[0].children[1].type == PowerSet(GivenType("Real"))


def test_type_error_on_kind_confusion(list_rb):
    with pytest.raises(TypingError):
        tc("x ⊆ y", list_rb.factory, vars={"x": INT})


def test_type_error_reports_mismatch(list_rb):
    with pytest.raises(TypingError):
        tc("cons(1, 2)", list_rb.factory)


def test_unresolved_type_fails_without_generalize(list_rb):
    with pytest.raises(UnresolvedTypeParam):
        tc("l = nil", list_rb.factory)


def test_generalize_names_residual_params(list_rb):
    typed, inferred = typecheck_group(
        [parse_formula("l = nil", list_rb.factory)],
        factory=list_rb.factory, generalize=True)
    assert inferred["l"] == DatatypeInstance("List", (TypeParam("_T0"),))


def test_shadowing_type_param_rejected():
    with pytest.raises(TypingError):
        TypeEnvironment({"T": INT}, frozenset({"T"}))


def test_occurs_check(list_rb):
    with pytest.raises(TypingError):
        tc("x = {x}", list_rb.factory)


def test_polymorphic_operator_applications_independent(list_rb):
    # the two list_length applications instantiate the signature separately
    typed, _ = typecheck_group(
        [parse_formula("list_length(cons(1, nil)) = list_length(cons(nil, nil))",
                       list_rb.factory)],
        factory=list_rb.factory, generalize=True)
    f = typed[0]
    lhs_arg = f.children[0].children[0]
    rhs_arg = f.children[1].children[0]
    assert lhs_arg.type == DatatypeInstance("List", (INT,))
    assert rhs_arg.type == DatatypeInstance(
        "List", (DatatypeInstance("List", (TypeParam("_T0"),)),))
