"""Well-definedness predicates."""

import random

from theoria.factory import CORE
from theoria.formula import strip_types
from theoria.parser import parse_formula
from theoria.printer import print_formula
from theoria.wd import wd

from genutil import LIST_T, T, gen_pred, wd_conditions


def w(text, fac=CORE, lookup=None):
    return print_formula(wd(parse_formula(text, fac), lookup))


def test_total_operators_are_trivially_defined():
    assert w("x + y") == "⊤"
    assert w("x = y ∧ y ∈ s") == "⊤"
    assert w("∀x· x ∈ s") == "⊤"


def test_division_needs_nonzero_divisor():
    assert w("x ÷ y") == "y ≠ 0"
    assert w("(a ÷ b) ÷ c") == "b ≠ 0 ∧ c ≠ 0"
    assert w("a ÷ b = c ÷ d") == "b ≠ 0 ∧ d ≠ 0"


def test_declared_wd_condition_instantiated(real_rb):
    fac = real_rb.factory
    got = wd(parse_formula("rdiv(a, b ⊕ c)", fac), real_rb.wd_lookup)
    assert strip_types(got) == strip_types(parse_formula("b ⊕ c ≠ zero", fac))


def test_nested_declared_conditions(real_rb):
    fac = real_rb.factory
    got = wd(parse_formula("rdiv(rdiv(a, b), c)", fac), real_rb.wd_lookup)
    want = parse_formula("b ≠ zero ∧ c ≠ zero", fac)
    assert strip_types(got) == strip_types(want)


def test_extension_without_condition_is_total(list_rb):
    assert w("list_length(cons(1, nil))", list_rb.factory,
             list_rb.wd_lookup) == "⊤"


def test_matches_structural_oracle(list_rb):
    # random formulas: wd is ⊤ exactly when the oracle finds no conditions,
    # and every division's divisor shows up
    rng = random.Random(11)
    fac = list_rb.factory
    env = {"x": T, "l": LIST_T, "n": None}
    from theoria.stypes import INT

    env["n"] = INT
    for _ in range(200):
        f = gen_pred(rng, env, fac, 3)
        conditions = wd_conditions(f)
        got = wd(f)
        assert (got.kind == "true") == (not conditions)
        if len(conditions) > 1:
            assert got.kind == "and"
            distinct = {print_formula(c) for c in got.children}
            want = {f"{print_formula(d)} ≠ 0" for _, d in conditions}
            assert distinct == want
