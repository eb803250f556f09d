"""Theory parsing, validation, generated axioms and definition expansion."""

import pytest

from theoria.errors import NotExpandable
from theoria.formula import strip_types
from theoria.parser import parse_formula
from theoria.printer import print_formula
from theoria.theory import (
    expand_definition_formula,
    generated_axioms,
    validate_theory,
)
from theoria.theoryio import parse_sequents, parse_theory


def test_bundled_theories_validate(list_theory, real_theory):
    assert validate_theory(list_theory) == []
    assert validate_theory(real_theory) == []


def test_parsed_structure(list_theory):
    assert list_theory.name == "ListTheory"
    dt = list_theory.datatypes[0]
    assert [c.name for c in dt.constructors] == ["nil", "cons"]
    assert list_theory.operator("list_length") is not None
    assert list_theory.rewrite_rule("isEmpty_rewrite").complete
    assert list_theory.rewrite_rule("isEmpty_nil_rewrite").automatic
    assert not list_theory.rewrite_rule("isEmpty_rewrite").automatic


def test_generated_axioms_exactly_two_per_axiomatic_type(real_theory):
    axs = generated_axioms(real_theory)
    names = [n for n, _ in axs]
    assert names[:2] == ["Real.non_emptiness", "Real.maximality"]
    assert print_formula(axs[0][1]) == "Real ≠ ∅"
    assert print_formula(axs[1][1]) == "∀x· x ∈ Real"
    # user axioms follow the generated pair
    assert "sum_zero" in names


def test_direct_expansion(list_rb, list_theory):
    fac = list_rb.factory
    from theoria.typecheck import TypeEnvironment, typecheck

    app = typecheck(parse_formula("list_isEmpty(cons(1, nil))", fac),
                    TypeEnvironment(), fac)
    out = expand_definition_formula(app, list_theory)
    assert strip_types(out) == strip_types(
        parse_formula("cons(1, nil) = nil", fac))


def test_inductive_expansion(list_rb, list_theory):
    # nil's element type stays parametric, so use the generalizing group API
    from theoria.typecheck import typecheck_group

    fac = list_rb.factory

    typed, _ = typecheck_group([parse_formula("list_length(nil)", fac)],
                               factory=fac, generalize=True)
    out = expand_definition_formula(typed[0], list_theory)
    assert print_formula(out) == "0"

    typed2, _ = typecheck_group(
        [parse_formula("list_length(cons(a, nil))", fac)],
        factory=fac, generalize=True)
    out2 = expand_definition_formula(typed2[0], list_theory)
    assert strip_types(out2) == strip_types(
        parse_formula("1 + list_length(nil)", fac))


def test_axiomatic_operator_not_expandable(real_rb, real_theory):
    app = parse_formula("a ⊕ b", real_rb.factory)
    with pytest.raises(NotExpandable):
        expand_definition_formula(app, real_theory)


def test_inductive_needs_constructor_head(list_rb, list_theory):
    from theoria.typecheck import typecheck_group

    fac = list_rb.factory
    typed, _ = typecheck_group([parse_formula("list_length(l)", fac)],
                               factory=fac, generalize=True)
    with pytest.raises(NotExpandable):
        expand_definition_formula(typed[0], list_theory)


BROKEN_RHS = """\
theory Broken
rewrite bad
  lhs x + y
  rhs x + z
end
"""


def test_unbound_rhs_variable_diagnosed():
    t = parse_theory(BROKEN_RHS)
    diags = validate_theory(t)
    assert any(d.code == "UnboundRhsVariable" for d in diags)


MISSING_CASE = """\
theory Broken
datatype D
  constructor one
  constructor two
end
operator f expression (d: D) : ℤ
  inductive d
  case one: 1
end
"""


def test_incomplete_induction_diagnosed():
    diags = validate_theory(parse_theory(MISSING_CASE))
    assert any(d.code == "IncompleteInduction" for d in diags)


BAD_TYPE = """\
theory Broken
operator f expression (n: ℤ) : ℤ
  direct n = 0
end
"""


def test_expression_operator_with_predicate_body_diagnosed():
    diags = validate_theory(parse_theory(BAD_TYPE))
    assert diags and all(d.subject == "f" for d in diags)


DUP_RULE = """\
theory Broken
rewrite r
  lhs x + 0
  rhs x
end
inference r
  infer 0 = 0
end
"""


def test_duplicate_rule_name_diagnosed():
    diags = validate_theory(parse_theory(DUP_RULE))
    assert any(d.code == "DuplicateName" for d in diags)


def test_sequent_parsing(list_rb):
    text = """\
theory ListTheory
sequent po1
  ident l : List(ℤ)
  hyp h1: l = nil
  goal list_isEmpty(l)
end
"""
    specs = parse_sequents(text, list_rb.factory)
    assert len(specs) == 1
    spec = specs[0]
    assert spec.name == "po1"
    assert spec.theory_names == ("ListTheory",)
    assert spec.hypotheses[0][0] == "h1"
    assert spec.goal == parse_formula("list_isEmpty(l)", list_rb.factory)


def test_theory_imports_compose(list_theory, real_theory, both_rb):
    # one rule base over both theories; names from each resolve
    fac = both_rb.factory
    f = parse_formula("list_isEmpty(nil) ∧ a smr b", fac)
    assert f.is_predicate
