"""A tour of the language layer: parsing, typing, printing, extensions.

Run from the repository root:

    python3 demos/01_formulas_and_theories.py
"""

from pathlib import Path

from theoria import (
    RuleBase,
    parse_formula,
    parse_theory,
    print_formula,
    typecheck_group,
)
from theoria.factory import CORE
from theoria.theory import generated_axioms, validate_theory

HERE = Path(__file__).resolve().parent

# The core language needs no theory at all: sets, arithmetic, quantifiers.
f = parse_formula("∀x· x ∈ s ⇒ x + 1 ≠ 0", CORE)
print("core formula:", print_formula(f))

# Division and subtraction accept their plain keyboard spellings.
assert parse_formula("a - b / c", CORE) == parse_formula("a − b ÷ c", CORE)

# Theories extend the factory with datatypes and operators.
list_theory = parse_theory((HERE / "workspace" / "list.thy").read_text("utf-8"))
real_theory = parse_theory((HERE / "workspace" / "real.thy").read_text("utf-8"))
for t in (list_theory, real_theory):
    assert validate_theory(t) == [], t.name
    print(f"theory {t.name}: "
          f"{len(t.operators)} operators, "
          f"{len(t.rewrite_rules)} rewrites, "
          f"{len(t.inference_rules)} inferences")

rb = RuleBase([list_theory, real_theory])

# Extension operators parse in prefix form and, when declared infix, by
# name or by glyph; all three are the same node.
g1 = parse_formula("sum(a, b)", rb.factory)
g2 = parse_formula("a sum b", rb.factory)
g3 = parse_formula("a ⊕ b", rb.factory)
assert g1 == g2 == g3
print("infix operator:", print_formula(g3))

# Typechecking a group of formulas shares the types of free identifiers,
# so `l` below is forced to a concrete list type by its second use.
typed, env = typecheck_group(
    [parse_formula("¬ list_isEmpty(l)", rb.factory),
     parse_formula("l = cons(1, nil)", rb.factory)],
    factory=rb.factory, generalize=True)
print("inferred type of l:", env["l"])

# Axiomatic types come with two generated axioms, before any user axiom.
for name, ax in generated_axioms(real_theory)[:2]:
    print(f"generated axiom {name}: {print_formula(ax)}")
