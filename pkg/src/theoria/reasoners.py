"""Reasoners: the single-step rules that close a proof node.

Every reasoner maps a sequent plus a serializable input to a rule
application and its antecedent sequents.  Theory rules and definition
expansion always emit the consolidated WD antecedent first: one conjunction
of the WD predicates of all instantiation expressions, omitted (and flagged
on the application) when it simplifies to ⊤.

The structural reasoners (⊤ goal, hypothesis identity, conjunction split)
depend on no theory, so proofs using only them can be reused without
replay; every theory reasoner is context dependent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DirectionNotAllowed,
    NotExpandable,
    RuleNotApplicable,
)
from .formula import (
    Formula,
    conjoin,
    free_idents,
    mk_node,
    positions,
    replace_at,
    subformula_at,
)
from .matcher import Pattern, match
from .prooftree import ProofTree, RuleApplication, Sequent
from .rulebase import PreparedInference, PreparedRewrite, RuleBase
from .specialise import Specialisation, specialise
from .theory import BACKWARD, BOTH, FORWARD, expand_definition_formula
from .typecheck import TypeEnvironment, typecheck_group
from .wd import wd

TRUE_GOAL = "core.trueGoal"
HYP = "core.hyp"
AND_SPLIT = "core.andSplit"
MANUAL_REWRITE = "theory.manualRewrite"
AUTO_REWRITE = "theory.autoRewrite"
MANUAL_INFERENCE = "theory.manualInference"
AUTO_INFERENCE = "theory.autoInference"
EXPAND = "theory.expandDefinition"
AUTO_EXPAND = "theory.autoExpand"

CORE_REASONERS = (TRUE_GOAL, HYP, AND_SPLIT)


def _retype(seq: Sequent) -> Sequent:
    """Re-infer types across the sequent's formulas as one group."""
    group = [*seq.hypotheses, seq.goal]
    typed, _ = typecheck_group(group, TypeEnvironment(), seq.factory,
                               generalize=True)
    return Sequent(tuple(typed[:-1]), typed[-1], seq.factory, seq.origin)


def _instantiation_wd(s: Specialisation, rb: RuleBase) -> Formula:
    """One conjunction over the WD of every bound instantiation expression,
    in variable name order."""
    return conjoin(
        wd(s.var_map[v], rb.wd_lookup) for v in sorted(s.var_map)
    )


def _target(seq: Sequent, hyp_index):
    if hyp_index is None:
        return seq.goal
    if not (0 <= hyp_index < len(seq.hypotheses)):
        raise RuleNotApplicable(f"no hypothesis {hyp_index}")
    return seq.hypotheses[hyp_index]


def _with_target(seq: Sequent, hyp_index, new: Formula,
                 extra_hyps=()) -> Sequent:
    if hyp_index is None:
        return seq.add_hypotheses(extra_hyps).with_goal(new)
    hyps = list(seq.hypotheses)
    hyps[hyp_index] = new
    out = Sequent(tuple(dict.fromkeys(hyps)), seq.goal, seq.factory, seq.origin)
    return out.add_hypotheses(extra_hyps)


# -- structural reasoners -----------------------------------------------------

def true_goal_step(seq: Sequent):
    if seq.goal.kind != "true":
        raise RuleNotApplicable("goal is not ⊤")
    return RuleApplication(TRUE_GOAL, {}), []


def hyp_step(seq: Sequent):
    if seq.goal not in seq.hypotheses:
        raise RuleNotApplicable("goal is not a hypothesis")
    return RuleApplication(HYP, {}), []


def and_split_step(seq: Sequent):
    if seq.goal.kind != "and":
        raise RuleNotApplicable("goal is not a conjunction")
    return (
        RuleApplication(AND_SPLIT, {}),
        [seq.with_goal(c) for c in seq.goal.children],
    )


# -- rewriting ----------------------------------------------------------------

def _rewrite_at(seq, rb, pr: PreparedRewrite, hyp_index, position):
    target = _target(seq, hyp_index)
    sub = subformula_at(target, tuple(position))
    s = match(Pattern(pr.lhs, pr.metavars, pr.type_metavars), sub)
    if s is None:
        raise RuleNotApplicable(
            f"rule {pr.rule.name!r} does not match at that position")
    antecedents = []
    wd_pred = _instantiation_wd(s, rb)
    wd_trivial = wd_pred.kind == "true"
    if not wd_trivial:
        antecedents.append(_retype(seq.with_goal(wd_pred)))
    conds = []
    for cond, rhs in pr.cases:
        cond_s = specialise(cond, s)
        rhs_s = specialise(rhs, s)
        new_target = replace_at(target, tuple(position), rhs_s)
        extra = () if cond_s.kind == "true" else (cond_s,)
        antecedents.append(_retype(_with_target(seq, hyp_index, new_target,
                                                extra)))
        conds.append(cond_s)
    if not pr.rule.complete:
        completeness = conds[0] if len(conds) == 1 else mk_node("or", conds)
        antecedents.append(_retype(seq.with_goal(completeness)))
    return wd_trivial, antecedents


def rewrite_step(seq: Sequent, rb: RuleBase, rule_name: str, hyp_index,
                 position):
    pr = rb.find_rewrite(rule_name)
    if pr is None:
        raise RuleNotApplicable(f"no rewrite rule named {rule_name!r}")
    wd_trivial, ants = _rewrite_at(seq, rb, pr, hyp_index, position)
    app = RuleApplication(
        MANUAL_REWRITE,
        {"rule": rule_name, "hyp": hyp_index, "position": list(position)},
        rule_name, pr.theory.name, context_dependent=True,
        wd_trivial=wd_trivial,
    )
    return app, ants


def auto_rewrite_step(seq: Sequent, rb: RuleBase, rule_name: str):
    """Apply an automatic rewrite rule at the first matching position:
    goal before hypotheses, outermost-leftmost inside each."""
    pr = rb.find_rewrite(rule_name)
    if pr is None or not pr.rule.automatic:
        raise RuleNotApplicable(f"no automatic rewrite rule {rule_name!r}")
    for hyp_index, target in _scan_targets(seq):
        for pos in positions(target):
            if match(Pattern(pr.lhs, pr.metavars, pr.type_metavars),
                     subformula_at(target, pos)) is None:
                continue
            wd_trivial, ants = _rewrite_at(seq, rb, pr, hyp_index, pos)
            app = RuleApplication(
                AUTO_REWRITE, {"rule": rule_name}, rule_name, pr.theory.name,
                context_dependent=True, wd_trivial=wd_trivial,
            )
            return app, ants
    raise RuleNotApplicable(f"rule {rule_name!r} matches nowhere")


def _scan_targets(seq: Sequent):
    yield None, seq.goal
    for i, h in enumerate(seq.hypotheses):
        yield i, h


# -- inference ----------------------------------------------------------------

def _check_bound(pi: PreparedInference, s: Specialisation, formulas):
    unbound = set()
    for f in formulas:
        unbound |= (set(free_idents(f)) & pi.metavars) - set(s.var_map)
    if unbound:
        raise RuleNotApplicable(
            f"rule {pi.rule.name!r} leaves {sorted(unbound)[0]!r} uninstantiated")


def _inference_backward(seq, rb, pi: PreparedInference):
    s = match(Pattern(pi.infer, pi.metavars, pi.type_metavars), seq.goal)
    if s is None:
        raise RuleNotApplicable(
            f"rule {pi.rule.name!r} does not match the goal")
    _check_bound(pi, s, pi.givens)
    antecedents = []
    wd_pred = _instantiation_wd(s, rb)
    wd_trivial = wd_pred.kind == "true"
    if not wd_trivial:
        antecedents.append(_retype(seq.with_goal(wd_pred)))
    for g in pi.givens:
        antecedents.append(_retype(seq.with_goal(specialise(g, s))))
    return wd_trivial, antecedents


def _inference_forward(seq, rb, pi: PreparedInference, hyp_index):
    if pi.givens:
        if hyp_index is None:
            raise RuleNotApplicable(
                f"forward use of {pi.rule.name!r} needs a hypothesis")
        s = match(Pattern(pi.givens[0], pi.metavars, pi.type_metavars),
                  _target(seq, hyp_index))
        if s is None:
            raise RuleNotApplicable(
                f"rule {pi.rule.name!r} does not match that hypothesis")
    else:
        s = Specialisation()
    _check_bound(pi, s, (*pi.givens[1:], pi.infer))
    antecedents = []
    wd_pred = _instantiation_wd(s, rb)
    wd_trivial = wd_pred.kind == "true"
    if not wd_trivial:
        antecedents.append(_retype(seq.with_goal(wd_pred)))
    inferred = specialise(pi.infer, s)
    for g in pi.givens[1:]:
        g_s = specialise(g, s)
        if g_s not in seq.hypotheses:
            antecedents.append(_retype(seq.with_goal(g_s)))
    antecedents.append(_retype(seq.add_hypotheses((inferred,))))
    return wd_trivial, antecedents


def _run_inference(seq, rb, pi, direction, hyp_index):
    if pi.rule.applicability != BOTH and pi.rule.applicability != direction:
        raise DirectionNotAllowed(
            f"rule {pi.rule.name!r} is {pi.rule.applicability.lower()}-only")
    if direction == BACKWARD:
        return _inference_backward(seq, rb, pi)
    if direction == FORWARD:
        return _inference_forward(seq, rb, pi, hyp_index)
    raise RuleNotApplicable(f"unknown direction {direction!r}")


def inference_step(seq: Sequent, rb: RuleBase, rule_name: str, direction: str,
                   hyp_index=None):
    pi = rb.find_inference(rule_name)
    if pi is None:
        raise RuleNotApplicable(f"no inference rule named {rule_name!r}")
    wd_trivial, ants = _run_inference(seq, rb, pi, direction, hyp_index)
    app = RuleApplication(
        MANUAL_INFERENCE,
        {"rule": rule_name, "direction": direction, "hyp": hyp_index},
        rule_name, pi.theory.name, context_dependent=True,
        wd_trivial=wd_trivial,
    )
    return app, ants


def auto_inference_step(seq: Sequent, rb: RuleBase, rule_name: str):
    """Automatic inference: backward on the goal, then forward on each
    hypothesis in turn."""
    pi = rb.find_inference(rule_name)
    if pi is None or not pi.rule.automatic:
        raise RuleNotApplicable(f"no automatic inference rule {rule_name!r}")
    attempts = []
    if pi.rule.applicability in (BOTH, BACKWARD):
        attempts.append((BACKWARD, None))
    if pi.rule.applicability in (BOTH, FORWARD):
        if pi.givens:
            attempts.extend((FORWARD, i) for i in range(len(seq.hypotheses)))
        else:
            attempts.append((FORWARD, None))
    for direction, hyp_index in attempts:
        try:
            wd_trivial, ants = _run_inference(seq, rb, pi, direction, hyp_index)
        except RuleNotApplicable:
            continue
        app = RuleApplication(
            AUTO_INFERENCE, {"rule": rule_name}, rule_name, pi.theory.name,
            context_dependent=True, wd_trivial=wd_trivial,
        )
        return app, ants
    raise RuleNotApplicable(f"rule {rule_name!r} applies nowhere")


# -- definition expansion -----------------------------------------------------

def _expand_at(seq, rb, hyp_index, position):
    target = _target(seq, hyp_index)
    sub = subformula_at(target, tuple(position))
    if sub.kind != "ext":
        raise NotExpandable(f"{sub} is not an operator application")
    t = rb.defining_theory(sub.name)
    if t is None:
        raise NotExpandable(
            f"operator {sub.name!r} has no expandable definition in scope")
    expanded = expand_definition_formula(sub, t)
    wd_pred = conjoin(wd(c, rb.wd_lookup) for c in sub.children)
    wd_trivial = wd_pred.kind == "true"
    antecedents = []
    if not wd_trivial:
        antecedents.append(_retype(seq.with_goal(wd_pred)))
    new_target = replace_at(target, tuple(position), expanded)
    antecedents.append(_retype(_with_target(seq, hyp_index, new_target)))
    return t, wd_trivial, antecedents


def expand_step(seq: Sequent, rb: RuleBase, hyp_index, position):
    t, wd_trivial, ants = _expand_at(seq, rb, hyp_index, position)
    app = RuleApplication(
        EXPAND, {"hyp": hyp_index, "position": list(position)},
        None, t.name, context_dependent=True, wd_trivial=wd_trivial,
    )
    return app, ants


def auto_expand_step(seq: Sequent, rb: RuleBase):
    """Expand the first expandable application: goal before hypotheses,
    outermost-leftmost inside each."""
    for hyp_index, target in _scan_targets(seq):
        for pos in positions(target):
            sub = subformula_at(target, pos)
            if sub.kind != "ext" or rb.defining_theory(sub.name) is None:
                continue
            try:
                t, wd_trivial, ants = _expand_at(seq, rb, hyp_index, pos)
            except NotExpandable:
                continue
            app = RuleApplication(
                AUTO_EXPAND, {}, None, t.name,
                context_dependent=True, wd_trivial=wd_trivial,
            )
            return app, ants
    raise RuleNotApplicable("nothing to expand")


# -- dispatch -----------------------------------------------------------------

def run_reasoner(seq: Sequent, rb: RuleBase, reasoner_id: str, input: dict):
    """Re-execute a reasoner from its stored input."""
    if reasoner_id == TRUE_GOAL:
        return true_goal_step(seq)
    if reasoner_id == HYP:
        return hyp_step(seq)
    if reasoner_id == AND_SPLIT:
        return and_split_step(seq)
    if reasoner_id == MANUAL_REWRITE:
        return rewrite_step(seq, rb, input["rule"], input.get("hyp"),
                            input.get("position", ()))
    if reasoner_id == AUTO_REWRITE:
        return auto_rewrite_step(seq, rb, input["rule"])
    if reasoner_id == MANUAL_INFERENCE:
        return inference_step(seq, rb, input["rule"], input["direction"],
                              input.get("hyp"))
    if reasoner_id == AUTO_INFERENCE:
        return auto_inference_step(seq, rb, input["rule"])
    if reasoner_id == EXPAND:
        return expand_step(seq, rb, input.get("hyp"),
                           input.get("position", ()))
    if reasoner_id == AUTO_EXPAND:
        return auto_expand_step(seq, rb)
    raise RuleNotApplicable(f"unknown reasoner {reasoner_id!r}")


def apply_to(tree: ProofTree, node_id: int, rb: RuleBase, reasoner_id: str,
             input: dict) -> list:
    """Run a reasoner on a pending node and attach the antecedents."""
    node = tree.node(node_id)
    app, ants = run_reasoner(node.sequent, rb, reasoner_id, input)
    return tree.apply(node_id, app, ants)


# -- enumeration --------------------------------------------------------------

@dataclass(frozen=True)
class Applicable:
    reasoner_id: str
    input: dict
    rule_name: str | None = None
    theory_name: str | None = None


def applicable_rules(seq: Sequent, rb: RuleBase) -> list:
    """Everything that would succeed on this sequent, structural reasoners
    first, then theory rules in theory and declaration order."""
    out = []
    for rid, step in ((TRUE_GOAL, true_goal_step), (HYP, hyp_step),
                      (AND_SPLIT, and_split_step)):
        try:
            step(seq)
        except RuleNotApplicable:
            continue
        out.append(Applicable(rid, {}))

    for pr in rb.rewrites():
        for hyp_index, target in _scan_targets(seq):
            for pos in positions(target):
                if match(Pattern(pr.lhs, pr.metavars, pr.type_metavars),
                         subformula_at(target, pos)) is None:
                    continue
                out.append(Applicable(
                    MANUAL_REWRITE,
                    {"rule": pr.rule.name, "hyp": hyp_index,
                     "position": list(pos)},
                    pr.rule.name, pr.theory.name))

    for pi in rb.inferences():
        if pi.rule.applicability in (BOTH, BACKWARD):
            try:
                _inference_backward(seq, rb, pi)
                out.append(Applicable(
                    MANUAL_INFERENCE,
                    {"rule": pi.rule.name, "direction": BACKWARD, "hyp": None},
                    pi.rule.name, pi.theory.name))
            except RuleNotApplicable:
                pass
        if pi.rule.applicability in (BOTH, FORWARD):
            targets = range(len(seq.hypotheses)) if pi.givens else (None,)
            for i in targets:
                try:
                    _inference_forward(seq, rb, pi, i)
                    out.append(Applicable(
                        MANUAL_INFERENCE,
                        {"rule": pi.rule.name, "direction": FORWARD, "hyp": i},
                        pi.rule.name, pi.theory.name))
                except RuleNotApplicable:
                    pass

    for hyp_index, target in _scan_targets(seq):
        for pos in positions(target):
            sub = subformula_at(target, pos)
            if sub.kind != "ext":
                continue
            t = rb.defining_theory(sub.name)
            if t is None:
                continue
            try:
                _expand_at(seq, rb, hyp_index, pos)
            except (NotExpandable, RuleNotApplicable):
                continue
            out.append(Applicable(
                EXPAND, {"hyp": hyp_index, "position": list(pos)},
                None, t.name))
    return out
