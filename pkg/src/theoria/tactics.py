"""Automated tactics: repeated application of automatic rules.

A tactic sweeps the pending leaves and applies, per leaf, the first
automatic rule that succeeds (theory order, then declaration order, then
outermost-leftmost position), until no leaf changes.  Structural closure
(⊤ goal, hypothesis identity) is always attempted first, so a rewrite to ⊤
closes in the same run.  Every application consumes one step from the
budget; exceeding it raises `BudgetExceeded` with the progress retained.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import BudgetExceeded, RuleNotApplicable
from .prooftree import ProofTree
from .reasoners import (
    AUTO_EXPAND,
    AUTO_INFERENCE,
    AUTO_REWRITE,
    HYP,
    TRUE_GOAL,
    auto_expand_step,
    auto_inference_step,
    auto_rewrite_step,
    hyp_step,
    true_goal_step,
)
from .rulebase import RuleBase

DEFAULT_BUDGET = 1000
BUDGET_ENV = "THEORIA_STEP_BUDGET"


@dataclass(frozen=True)
class TacticStep:
    node_id: int
    reasoner_id: str
    rule_name: str | None
    theory_name: str | None
    children: tuple
    wd_trivial: bool = False


@dataclass
class TacticReport:
    tactic: str
    steps: list = field(default_factory=list)

    @property
    def applications(self) -> int:
        return len(self.steps)


def step_budget() -> int:
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


def _try_close(tree: ProofTree, leaf, report: TacticReport) -> bool:
    for rid, step in ((TRUE_GOAL, true_goal_step), (HYP, hyp_step)):
        try:
            app, ants = step(leaf.sequent)
        except RuleNotApplicable:
            continue
        tree.apply(leaf.id, app, ants)
        report.steps.append(TacticStep(leaf.id, rid, None, None, ()))
        return True
    return False


def _candidates(tactic: str, seq, rb: RuleBase):
    if tactic == AUTO_REWRITE:
        for pr in rb.rewrites():
            if pr.rule.automatic:
                yield lambda name=pr.rule.name: auto_rewrite_step(seq, rb, name)
    elif tactic == AUTO_INFERENCE:
        for pi in rb.inferences():
            if pi.rule.automatic:
                yield lambda name=pi.rule.name: auto_inference_step(seq, rb, name)
    elif tactic == AUTO_EXPAND:
        yield lambda: auto_expand_step(seq, rb)
    else:
        raise RuleNotApplicable(f"unknown tactic {tactic!r}")


def auto_tactic(tree: ProofTree, rb: RuleBase, tactic: str,
                budget: int | None = None) -> TacticReport:
    """Run one automatic tactic to quiescence; returns the step report."""
    limit = budget if budget is not None else step_budget()
    report = TacticReport(tactic)
    while True:
        progressed = False
        for leaf in tree.pending_leaves():
            if _try_close(tree, leaf, report):
                progressed = True
                continue
            for attempt in _candidates(tactic, leaf.sequent, rb):
                try:
                    app, ants = attempt()
                except RuleNotApplicable:
                    continue
                children = tree.apply(leaf.id, app, ants)
                report.steps.append(TacticStep(
                    leaf.id, app.reasoner_id, app.rule_name, app.theory_name,
                    tuple(children), app.wd_trivial))
                progressed = True
                break
            if report.applications > limit:
                raise BudgetExceeded(
                    f"step budget {limit} exhausted", report=report)
        if not progressed:
            return report


DEFAULT_ORDER = (AUTO_EXPAND, AUTO_REWRITE, AUTO_INFERENCE)


def auto_prove(tree: ProofTree, rb: RuleBase, budget: int | None = None,
               order=DEFAULT_ORDER) -> list:
    """Run the automatic tactics round-robin, in the given order, until the
    tree stops changing; returns the reports in order."""
    limit = budget if budget is not None else step_budget()
    reports = []
    spent = 0
    while True:
        before = len(tree.nodes)
        for tactic in order:
            try:
                report = auto_tactic(tree, rb, tactic, limit - spent)
            except BudgetExceeded as e:
                reports.append(e.report)
                raise BudgetExceeded(str(e), report=reports) from None
            reports.append(report)
            spent += report.applications
        if len(tree.nodes) == before:
            return reports
