"""Reasoners, proof trees, pruning and automatic tactics."""

import pytest

from theoria.errors import (
    BudgetExceeded,
    DirectionNotAllowed,
    InvalidPosition,
    RuleNotApplicable,
    UnknownNode,
)
from theoria.parser import parse_formula
from theoria.printer import print_formula
from theoria.prooftree import CLOSED, OPEN, ProofTree
from theoria.reasoners import (
    AND_SPLIT,
    EXPAND,
    HYP,
    MANUAL_INFERENCE,
    MANUAL_REWRITE,
    TRUE_GOAL,
    applicable_rules,
    apply_to,
)
from theoria.rulebase import RuleBase
from theoria.stypes import GivenType, INT, DatatypeInstance
from theoria.tactics import auto_prove, auto_tactic
from theoria.theoryio import parse_theory

from conftest import make_sequent

REAL = GivenType("Real")
LINT = DatatypeInstance("List", (INT,))


def test_structural_closures(list_rb, sequent_of):
    s = sequent_of(list_rb, "⊤")
    tree = ProofTree(s)
    assert apply_to(tree, 0, list_rb, TRUE_GOAL, {}) == []
    assert tree.status == CLOSED

    s2 = sequent_of(list_rb, "x = 1", hyps=("x = 1",))
    t2 = ProofTree(s2)
    apply_to(t2, 0, list_rb, HYP, {})
    assert t2.status == CLOSED

    s3 = sequent_of(list_rb, "x = 1 ∧ y = 2", hyps=("x = 1", "y = 2"))
    t3 = ProofTree(s3)
    kids = apply_to(t3, 0, list_rb, AND_SPLIT, {})
    assert [print_formula(t3.node(k).sequent.goal) for k in kids] == [
        "x = 1", "y = 2"]


def test_manual_rewrite_goal(list_rb, sequent_of):
    s = sequent_of(list_rb, "list_isEmpty(nil)")
    tree = ProofTree(s)
    kids = apply_to(tree, 0, list_rb, MANUAL_REWRITE,
                    {"rule": "isEmpty_nil_rewrite", "hyp": None,
                     "position": []})
    assert len(kids) == 1  # WD trivial, unconditional, complete
    assert tree.node(kids[0]).sequent.goal.kind == "true"
    assert tree.root.rule_app.wd_trivial


def test_manual_rewrite_in_hypothesis(list_rb, sequent_of):
    s = sequent_of(list_rb, "x = 1", hyps=("list_isEmpty(nil) ∧ x = 1",),
                   idents={"x": INT})
    tree = ProofTree(s)
    kids = apply_to(tree, 0, list_rb, MANUAL_REWRITE,
                    {"rule": "isEmpty_nil_rewrite", "hyp": 0,
                     "position": [0]})
    child = tree.node(kids[0])
    assert print_formula(child.sequent.hypotheses[0]) == "⊤ ∧ x = 1"
    assert print_formula(child.sequent.goal) == "x = 1"


def test_conditional_complete_rewrite_splits(list_rb, sequent_of):
    s = sequent_of(list_rb, "list_isEmpty(l)", idents={"l": LINT})
    tree = ProofTree(s)
    kids = apply_to(tree, 0, list_rb, MANUAL_REWRITE,
                    {"rule": "isEmpty_rewrite", "hyp": None, "position": []})
    assert len(kids) == 2  # complete rule: no completeness antecedent
    c1, c2 = (tree.node(k).sequent for k in kids)
    assert print_formula(c1.hypotheses[-1]) == "l = nil"
    assert c1.goal.kind == "true"
    assert print_formula(c2.hypotheses[-1]) == "l ≠ nil"
    assert c2.goal.kind == "false"


def test_incomplete_rewrite_adds_completeness_antecedent(sequent_of):
    text = """\
theory Part
operator pos predicate (n: ℤ)
end
rewrite pos_rewrite
  lhs pos(n)
  case n = 1: ⊤
  incomplete
end
"""
    rb = RuleBase([parse_theory(text)])
    s = make_sequent(rb, "pos(k)", idents={"k": INT})
    tree = ProofTree(s)
    kids = apply_to(tree, 0, rb, MANUAL_REWRITE,
                    {"rule": "pos_rewrite", "hyp": None, "position": []})
    assert len(kids) == 2
    assert print_formula(tree.node(kids[1]).sequent.goal) == "k = 1"


def test_rewrite_wd_antecedent_first(real_rb, sequent_of):
    s = sequent_of(real_rb, "rdiv(a, b) ⊕ zero = rdiv(a, b)",
                   idents={"a": REAL, "b": REAL})
    tree = ProofTree(s)
    kids = apply_to(tree, 0, real_rb, MANUAL_REWRITE,
                    {"rule": "sum_zero_rewrite", "hyp": None,
                     "position": [0]})
    assert len(kids) == 2
    assert print_formula(tree.node(kids[0]).sequent.goal) == "b ≠ zero"
    assert print_formula(tree.node(kids[1]).sequent.goal) == (
        "rdiv(a, b) = rdiv(a, b)")
    assert not tree.root.rule_app.wd_trivial


def test_rewrite_bad_position(list_rb, sequent_of):
    s = sequent_of(list_rb, "list_isEmpty(nil)")
    tree = ProofTree(s)
    with pytest.raises(InvalidPosition):
        apply_to(tree, 0, list_rb, MANUAL_REWRITE,
                 {"rule": "isEmpty_nil_rewrite", "hyp": None,
                  "position": [4]})


def test_rewrite_not_matching(list_rb, sequent_of):
    s = sequent_of(list_rb, "x = 1", idents={"x": INT})
    tree = ProofTree(s)
    with pytest.raises(RuleNotApplicable):
        apply_to(tree, 0, list_rb, MANUAL_REWRITE,
                 {"rule": "isEmpty_nil_rewrite", "hyp": None, "position": []})


def test_backward_zero_given_inference_closes(list_rb, sequent_of):
    s = sequent_of(list_rb, "list_isEmpty(nil)")
    tree = ProofTree(s)
    kids = apply_to(tree, 0, list_rb, MANUAL_INFERENCE,
                    {"rule": "isEmpty_nil_inference", "direction": "BACKWARD",
                     "hyp": None})
    assert kids == [] and tree.status == CLOSED


def test_backward_only_rule_refuses_forward(list_rb, sequent_of):
    s = sequent_of(list_rb, "list_isEmpty(nil)", hyps=("list_isEmpty(nil)",))
    tree = ProofTree(s)
    with pytest.raises(DirectionNotAllowed):
        apply_to(tree, 0, list_rb, MANUAL_INFERENCE,
                 {"rule": "isEmpty_nil_inference", "direction": "FORWARD",
                  "hyp": 0})


def test_forward_inference_adds_hypothesis(list_rb, sequent_of):
    s = sequent_of(list_rb, "¬ list_isEmpty(m)",
                   hyps=("m = cons(1, nil)",), idents={"m": LINT})
    tree = ProofTree(s)
    kids = apply_to(tree, 0, list_rb, MANUAL_INFERENCE,
                    {"rule": "cons_not_empty", "direction": "FORWARD",
                     "hyp": 0})
    assert len(kids) == 1
    final = tree.node(kids[0]).sequent
    assert print_formula(final.hypotheses[-1]) == "¬ list_isEmpty(m)"
    # the goal is now a hypothesis; close with the identity reasoner
    apply_to(tree, kids[0], list_rb, HYP, {})
    assert tree.status == CLOSED


def test_forward_needs_matching_hypothesis(list_rb, sequent_of):
    s = sequent_of(list_rb, "¬ list_isEmpty(m)", hyps=("m = nil",),
                   idents={"m": LINT})
    tree = ProofTree(s)
    with pytest.raises(RuleNotApplicable):
        apply_to(tree, 0, list_rb, MANUAL_INFERENCE,
                 {"rule": "cons_not_empty", "direction": "FORWARD", "hyp": 0})


def test_backward_two_given_inference(real_rb, sequent_of):
    # both givens of transitivity mention the middle term, which the goal
    # cannot bind: the rule is honestly inapplicable without it
    s = sequent_of(real_rb, "a smr c", hyps=("a smr b", "b smr c"),
                   idents={"a": REAL, "b": REAL, "c": REAL})
    tree = ProofTree(s)
    with pytest.raises(RuleNotApplicable):
        apply_to(tree, 0, real_rb, MANUAL_INFERENCE,
                 {"rule": "smr_transitive", "direction": "BACKWARD",
                  "hyp": None})
    # forward from the first hypothesis binds x and y; z stays free
    with pytest.raises(RuleNotApplicable):
        apply_to(tree, 0, real_rb, MANUAL_INFERENCE,
                 {"rule": "smr_transitive", "direction": "FORWARD", "hyp": 0})


def test_expand_definition_goal(list_rb, sequent_of):
    s = sequent_of(list_rb, "list_length(nil) = 0")
    tree = ProofTree(s)
    kids = apply_to(tree, 0, list_rb, EXPAND,
                    {"hyp": None, "position": [0]})
    assert print_formula(tree.node(kids[0]).sequent.goal) == "0 = 0"


def test_expand_under_binder(list_rb, sequent_of):
    s = sequent_of(list_rb, "∀k· list_length(nil) = k ∗ 0".replace("∗", "*"))
    tree = ProofTree(s)
    kids = apply_to(tree, 0, list_rb, EXPAND,
                    {"hyp": None, "position": [0, 0]})
    child = tree.node(kids[0]).sequent.goal
    assert child.kind == "forall"
    assert print_formula(child.children[0].children[0]) == "0"


def test_prune_reopens(list_rb, sequent_of):
    s = sequent_of(list_rb, "list_isEmpty(nil)")
    tree = ProofTree(s)
    auto_prove(tree, list_rb)
    assert tree.status == CLOSED
    tree.prune(0)
    assert tree.status == OPEN
    assert len(tree.nodes) == 1 and tree.root.rule_app is None
    with pytest.raises(UnknownNode):
        tree.prune(99)


def test_prune_then_same_tactic_reproduces(list_rb, sequent_of):
    s = sequent_of(list_rb, "¬ list_isEmpty(cons(a, nil))")
    tree = ProofTree(s)
    auto_prove(tree, list_rb)
    shape1 = [(n.sequent.goal, n.rule_app.reasoner_id if n.rule_app else None)
              for n in tree.sorted_nodes()]
    tree.prune(0)
    auto_prove(tree, list_rb)
    shape2 = [(n.sequent.goal, n.rule_app.reasoner_id if n.rule_app else None)
              for n in tree.sorted_nodes()]
    assert [g for g, _ in shape1] == [g for g, _ in shape2]
    assert [r for _, r in shape1] == [r for _, r in shape2]


def test_auto_tactic_no_rules_no_change(real_rb, sequent_of):
    s = sequent_of(real_rb, "a smr b", idents={"a": REAL, "b": REAL})
    tree = ProofTree(s)
    report = auto_tactic(tree, real_rb, "theory.autoRewrite")
    assert report.applications == 0 and len(tree.nodes) == 1


def test_one_rule_per_node_and_report_counts(list_rb, sequent_of):
    goals = ["list_isEmpty(nil)", "list_length(nil) = 0",
             "¬ list_isEmpty(cons(a, nil))"]
    for g in goals:
        tree = ProofTree(make_sequent(list_rb, g))
        reports = auto_prove(tree, list_rb)
        apps = sum(r.applications for r in reports)
        closed_nodes = [n for n in tree.nodes.values() if n.rule_app]
        assert len(closed_nodes) == apps
        for n in closed_nodes:
            names = [x for x in (n.rule_app.rule_name,) if x]
            assert len(names) <= 1  # exactly one rule, or a structural step
        assert tree.status == CLOSED


def test_budget_exceeded_on_looping_rules():
    text = """\
theory Loop
operator flip predicate (n: ℤ)
end
operator flop predicate (n: ℤ)
end
rewrite flip_flop auto
  lhs flip(n)
  rhs flop(n)
end
rewrite flop_flip auto
  lhs flop(n)
  rhs flip(n)
end
"""
    rb = RuleBase([parse_theory(text)])
    s = make_sequent(rb, "flip(0)")
    tree = ProofTree(s)
    with pytest.raises(BudgetExceeded) as e:
        auto_tactic(tree, rb, "theory.autoRewrite", budget=25)
    assert e.value.report.applications > 25
    assert len(tree.nodes) > 25  # partial progress retained


def test_applicable_rules_enumeration(list_rb, sequent_of):
    s = sequent_of(list_rb, "list_isEmpty(nil)")
    found = applicable_rules(s, list_rb)
    keys = [(a.reasoner_id, a.rule_name) for a in found]
    assert (MANUAL_REWRITE, "isEmpty_nil_rewrite") in keys
    assert (MANUAL_REWRITE, "isEmpty_rewrite") in keys
    assert (MANUAL_INFERENCE, "isEmpty_nil_inference") in keys
    assert any(a.reasoner_id == EXPAND for a in found)


def test_applicable_rules_empty_rule_base(sequent_of):
    rb = RuleBase([])
    s = make_sequent(rb, "x = 1", idents={"x": INT})
    assert applicable_rules(s, rb) == []


def test_antecedent_factories_compatible(list_rb, sequent_of):
    from theoria.factory import factories_compatible

    s = sequent_of(list_rb, "list_isEmpty(l)", idents={"l": LINT})
    tree = ProofTree(s)
    kids = apply_to(tree, 0, list_rb, MANUAL_REWRITE,
                    {"rule": "isEmpty_rewrite", "hyp": None, "position": []})
    for k in kids:
        assert factories_compatible(tree.node(k).sequent.factory, s.factory)
