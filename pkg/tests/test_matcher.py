"""Pattern matching, including the greedy associative algorithm."""

import itertools
import random

from theoria.factory import CORE
from theoria.formula import Formula, mk_node, strip_types
from theoria.matcher import Pattern, match, match_assoc, match_types
from theoria.parser import parse_formula
from theoria.specialise import specialise
from theoria.stypes import GivenType, INT, PowerSet, Product, TypeParam

from genutil import assoc_matchable


def ids(*names):
    return [Formula("ident", name=n) for n in names]


def fc(text):
    return parse_formula(text, CORE)


# -- the two golden forward-composition rows ----------------------------------

def test_golden_row_one():
    # pattern f;{x↦c} against g;h;{y↦c}: f takes the run g;h
    pattern = fc("f ; {x ↦ c}")
    subject = fc("g ; h ; {y ↦ c}")
    s = match(Pattern(pattern, frozenset({"f", "x", "c"})), subject)
    assert s is not None
    assert s.var_map["f"] == fc("g ; h")
    assert s.var_map["x"] == Formula("ident", name="y")
    assert s.var_map["c"] == Formula("ident", name="c")


def test_golden_row_two_first_result_only():
    # pattern e;f against g;h;{y↦c}: greedy returns e:=g, f:=h;{y↦c}
    pattern = fc("e ; f")
    subject = fc("g ; h ; {y ↦ c}")
    s = match(Pattern(pattern, frozenset({"e", "f"})), subject)
    assert s is not None
    assert s.var_map["e"] == Formula("ident", name="g")
    assert s.var_map["f"] == fc("h ; {y ↦ c}")
    # and NOT the alternative split e:=g;h, f:={y↦c}
    assert s.var_map["e"] != fc("g ; h")


def test_type_matching_rows():
    # a metavariable type parameter matches an arbitrary type
    S = TypeParam("S")
    assert match_types(S, PowerSet(GivenType("S")), {"S"}) == {
        "S": PowerSet(GivenType("S"))}
    assert match_types(S, Product(GivenType("S"), GivenType("T")), {"S"}) == {
        "S": Product(GivenType("S"), GivenType("T"))}
    assert match_types(PowerSet(S), INT, {"S"}) is None


def test_match_specialise_round_trip():
    pattern = fc("f ; {x ↦ c}")
    subject = fc("g ; h ; {y ↦ c}")
    s = match(Pattern(pattern, frozenset({"f", "x", "c"})), subject)
    assert strip_types(specialise(pattern, s)) == strip_types(subject)


def test_nonlinear_pattern():
    p = Pattern(fc("x = x"), frozenset({"x"}))
    assert match(p, fc("1 + 2 = 1 + 2")) is not None
    assert match(p, fc("1 + 2 = 2 + 1")) is None


def test_subject_identifier_matches_same_named_metavar():
    # pattern variable c matches the subject's own identifier c
    s = match(Pattern(fc("c + 1"), frozenset({"c"})), fc("c + 1"))
    assert s is not None and s.var_map["c"] == Formula("ident", name="c")


def test_constant_operands_must_align():
    s = match(Pattern(fc("f ; g"), frozenset({"f"})), fc("a ; b ; c"))
    assert s is None  # g cannot swallow the trailing run


def test_quantifier_matching_requires_same_binders():
    p = Pattern(fc("∀z· z ∈ s"), frozenset({"s"}))
    assert match(p, fc("∀z· z ∈ {1}")) is not None
    assert match(p, fc("∀w· w ∈ {1}")) is None


def test_bound_names_shadow_metavars():
    p = Pattern(fc("∀x· x ∈ s"), frozenset({"x", "s"}))
    s = match(p, fc("∀x· x ∈ {1}"))
    assert s is not None and "x" not in s.var_map


def test_and_or_match_pairwise():
    p = Pattern(fc("a = 1 ∧ b = 2"), frozenset({"a", "b"}))
    s = match(p, fc("u = 1 ∧ v = 2"))
    assert s.var_map["a"] == Formula("ident", name="u")


def test_assoc_ext_operator(real_rb):
    fac = real_rb.factory
    p = parse_formula("x ⊕ zero", fac)
    subject = parse_formula("a ⊕ b ⊕ zero", fac)
    s = match(Pattern(p, frozenset({"x"})), subject)
    assert s is not None
    assert s.var_map["x"] == parse_formula("a ⊕ b", fac)


def test_commutativity_ignored(real_rb):
    fac = real_rb.factory
    p = parse_formula("x ⊕ zero", fac)
    assert match(Pattern(p, frozenset({"x"})), parse_formula("zero ⊕ a", fac)) is None


def test_greedy_agrees_with_exhaustive_oracle():
    # patterns <=3 operands over {M1, M2, a}, subjects <=5 over {a, b, c}
    metavars = frozenset({"M1", "M2"})
    pattern_alphabet = ["M1", "M2", "a"]
    subject_alphabet = ["a", "b", "c"]
    checked = disagreements = 0
    for plen in (1, 2, 3):
        for pops in itertools.product(pattern_alphabet, repeat=plen):
            for slen in range(1, 6):
                for sops in itertools.product(subject_alphabet, repeat=slen):
                    got = match_assoc(ids(*pops), ids(*sops), metavars,
                                      kind="fcomp")
                    want = assoc_matchable(pops, sops, metavars)
                    checked += 1
                    if (got is not None) != want:
                        disagreements += 1
    assert checked > 10000
    assert disagreements == 0
