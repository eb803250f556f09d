"""Specialisation: simultaneous substitution with the type-safety property."""

import random

import pytest

from theoria.errors import InconsistentSpecialisation
from theoria.formula import Formula, free_idents, strip_types
from theoria.parser import parse_formula
from theoria.printer import print_formula
from theoria.specialise import Specialisation, apply_type, compose, specialise
from theoria.stypes import (
    DatatypeInstance,
    GivenType,
    INT,
    PowerSet,
    TypeParam,
    subst_params,
)
from theoria.typecheck import TypeEnvironment, typecheck
from conftest import make_sequent
from genutil import LIST_T, T, gen_expr, gen_pred


def test_apply_type_examples():
    s = Specialisation({"T": INT})
    assert apply_type(LIST_T, s) == DatatypeInstance("List", (INT,))
    s2 = Specialisation({"S": PowerSet(GivenType("S'"))})
    assert apply_type(TypeParam("S"), s2) == PowerSet(GivenType("S'"))
    assert apply_type(INT, s2) == INT


def test_variable_substitution(list_rb):
    fac = list_rb.factory
    f = parse_formula("x = head(l)", fac)
    s = Specialisation({}, {"x": parse_formula("1 + 2", fac)})
    assert specialise(f, s) == parse_formula("1 + 2 = head(l)", fac)


def test_quantifier_shadowing(list_rb):
    fac = list_rb.factory
    f = parse_formula("x = 0 ∧ (∀x· x ∈ {0})", fac)
    s = Specialisation({}, {"x": parse_formula("5", fac)})
    out = specialise(f, s)
    assert out == parse_formula("5 = 0 ∧ (∀x· x ∈ {0})", fac)


def test_capture_avoided_by_renaming(list_rb):
    fac = list_rb.factory
    f = parse_formula("∀x· x + y = y", fac)
    s = Specialisation({}, {"y": parse_formula("x", fac)})
    out = specialise(f, s)
    assert out.bound != ("x",)
    body = out.children[0]
    # the substituted x must remain free, distinct from the renamed binder
    assert "x" in free_idents(out)


def test_type_and_var_domains_disjoint():
    with pytest.raises(InconsistentSpecialisation):
        Specialisation({"x": INT}, {"x": Formula("intlit", value=1)})


def test_inconsistent_value_type_rejected(list_rb):
    fac = list_rb.factory
    f = typecheck(parse_formula("x + 1", fac),
                  TypeEnvironment({"x": INT}), fac)
    bad = typecheck(parse_formula("cons(1, nil)", fac), TypeEnvironment(), fac)
    s = Specialisation({}, {"x": bad}, {"x": INT})
    with pytest.raises(InconsistentSpecialisation):
        specialise(f, s)


def test_compose_applies_second_to_first(list_rb):
    fac = list_rb.factory
    s1 = Specialisation({}, {"x": parse_formula("y + 1", fac)})
    s2 = Specialisation({}, {"y": parse_formula("2", fac)})
    c = compose(s1, s2)
    assert c.var_map["x"] == parse_formula("2 + 1", fac)
    assert c.var_map["y"] == parse_formula("2", fac)


def _random_case(rng, fac):
    env_vars = {"x": T, "y": T, "l": LIST_T, "n": INT}
    env = TypeEnvironment(env_vars, frozenset({"T"}))
    f = typecheck(gen_pred(rng, env_vars, fac, 3), env, fac)
    t_actual = rng.choice([INT, DatatypeInstance("List", (INT,))])
    tmap = {"T": t_actual}
    sub_env = {"x": t_actual, "y": t_actual,
               "l": DatatypeInstance("List", (t_actual,)), "n": INT}
    vmap, vtypes = {}, {}
    for v, declared in env_vars.items():
        if rng.random() < 0.7:
            value = gen_expr(rng, subst_params(declared, tmap), sub_env, fac, 2)
            value = typecheck(value, TypeEnvironment(sub_env), fac)
            vmap[v] = value
            vtypes[v] = declared
    return f, Specialisation(tmap, vmap, vtypes), TypeEnvironment(sub_env)


def test_type_safety_randomized(list_rb):
    # specialising a well-typed formula yields a well-typed formula
    rng = random.Random(2024)
    fac = list_rb.factory
    for _ in range(300):
        f, s, sub_env = _random_case(rng, fac)
        out = specialise(f, s)
        rechecked = typecheck(out, sub_env, fac)
        assert strip_types(rechecked) == strip_types(out)


def test_type_safety_on_typed_expressions(list_rb):
    # output type equals the type half applied to the input type
    rng = random.Random(99)
    fac = list_rb.factory
    env_vars = {"x": T, "l": LIST_T, "n": INT}
    env = TypeEnvironment(env_vars, frozenset({"T"}))
    for _ in range(200):
        t = rng.choice([T, LIST_T, INT])
        e = typecheck(gen_expr(rng, t, env_vars, fac, 3), env, fac)
        tmap = {"T": INT}
        sub_env = TypeEnvironment({"x": INT,
                                   "l": DatatypeInstance("List", (INT,)),
                                   "n": INT})
        s = Specialisation(tmap, {}, {})
        out = specialise(e, s)
        assert typecheck(out, sub_env, fac).type == apply_type(e.type, s)
