"""Driving the prover by hand: one rule per node, WD antecedent first.

Run from the repository root:

    python3 demos/02_interactive_proof.py
"""

from pathlib import Path

from theoria import RuleBase, parse_formula, parse_theory, print_formula
from theoria.prooftree import ProofTree, Sequent
from theoria.reasoners import (
    MANUAL_REWRITE,
    TRUE_GOAL,
    applicable_rules,
    apply_to,
)
from theoria.typecheck import TypeEnvironment, typecheck_group
from theoria.stypes import GivenType

HERE = Path(__file__).resolve().parent
rb = RuleBase([parse_theory(
    (HERE / "workspace" / "real.thy").read_text("utf-8"))])


def sequent(goal_text, idents):
    typed, _ = typecheck_group([parse_formula(goal_text, rb.factory)],
                               TypeEnvironment(dict(idents)), rb.factory,
                               generalize=True)
    return Sequent((), typed[0], rb.factory, "demo")


# The divisor b makes the goal only conditionally well defined.
seq = sequent("rdiv(a, b) ⊕ zero = rdiv(a, b)",
              {"a": GivenType("Real"), "b": GivenType("Real")})
tree = ProofTree(seq)
print("goal:", print_formula(seq.goal))

# Ask the kernel what it could do at the root before committing.
for a in applicable_rules(seq, rb)[:5]:
    print("applicable:", a.reasoner_id, a.rule_name or "", a.input)

# Rewrite the left summand with x ⊕ zero = x.  The instantiation mentions
# rdiv, so a well-definedness antecedent is emitted before the rewrite
# takes effect; discharging the WD goal is part of the proof.
children = apply_to(tree, 0, rb, MANUAL_REWRITE,
                    {"rule": "sum_zero_rewrite", "hyp": None,
                     "position": [0]})
for cid in children:
    print(f"antecedent {cid}:", print_formula(tree.node(cid).sequent.goal))

# RealTheory provides no reflexivity or nonzero-ness rules, so both
# antecedents honestly stay open; the kernel never pretends progress.
print("status:", tree.status)
print("pending leaves:", [n.id for n in tree.pending_leaves()])

# Pruning the root discards the whole attempt.
tree.prune(0)
print("after prune:", tree.status, "with", len(tree.nodes), "node")
