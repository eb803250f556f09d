"""Sequents and proof trees.

Each non-pending node is closed by exactly one rule application; its
children are the application's antecedents.  Pruning removes the subtree
below a node and reopens it as pending.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import UnknownNode
from .factory import CORE, FormulaFactory, factory_union
from .formula import Formula

OPEN = "OPEN"
CLOSED = "CLOSED"
STALE = "STALE"


@dataclass(frozen=True)
class Sequent:
    hypotheses: tuple  # tuple of Formula, ordered, duplicate-free
    goal: Formula
    factory: FormulaFactory = CORE
    origin: str = ""  # PO name; the proof context is retrieved from it

    def __post_init__(self):
        fac = self.factory
        for f in (*self.hypotheses, self.goal):
            fac = factory_union(fac, f.factory)
        object.__setattr__(self, "factory", fac)

    def with_goal(self, goal: Formula) -> "Sequent":
        return replace(self, goal=goal)

    def add_hypotheses(self, hyps) -> "Sequent":
        fresh = [h for h in hyps if h not in self.hypotheses]
        return replace(self, hypotheses=self.hypotheses + tuple(fresh))

    def __str__(self):
        hs = ", ".join(str(h) for h in self.hypotheses)
        return f"{hs} ⊢ {self.goal}"


@dataclass(frozen=True)
class RuleApplication:
    reasoner_id: str
    input: dict  # serializable reasoner input
    rule_name: str | None = None
    theory_name: str | None = None
    context_dependent: bool = False
    wd_trivial: bool = False  # WD antecedent simplified to ⊤ and was omitted


@dataclass
class ProofNode:
    id: int
    sequent: Sequent
    rule_app: RuleApplication | None = None  # None = PENDING
    children: list = field(default_factory=list)
    stale: bool = False  # replay could not reproduce this node


class ProofTree:
    def __init__(self, root: Sequent):
        self.nodes = {0: ProofNode(0, root)}
        self.root_id = 0
        self._next = 1

    @property
    def root(self) -> ProofNode:
        return self.nodes[self.root_id]

    def node(self, node_id: int) -> ProofNode:
        if node_id not in self.nodes:
            raise UnknownNode(f"no proof node {node_id}")
        return self.nodes[node_id]

    def pending_leaves(self) -> list:
        return [n for n in self.sorted_nodes() if n.rule_app is None]

    def sorted_nodes(self) -> list:
        return [self.nodes[i] for i in sorted(self.nodes)]

    @property
    def status(self) -> str:
        pending = self.pending_leaves()
        if not pending:
            return CLOSED
        if any(n.stale for n in self.nodes.values()):
            return STALE
        return OPEN

    def apply(self, node_id: int, app: RuleApplication, antecedents) -> list:
        """Close a pending node with one rule application; children are the
        antecedent sequents, in order."""
        node = self.node(node_id)
        if node.rule_app is not None:
            raise UnknownNode(f"node {node_id} is already closed")
        ids = []
        for seq in antecedents:
            nid = self._next
            self._next += 1
            self.nodes[nid] = ProofNode(nid, seq)
            ids.append(nid)
        node.rule_app = app
        node.children = ids
        return ids

    def prune(self, node_id: int) -> None:
        """Remove the subtree below `node_id` and reopen it as pending."""
        node = self.node(node_id)
        stack = list(node.children)
        while stack:
            child = self.nodes.pop(stack.pop())
            stack.extend(child.children)
        node.rule_app = None
        node.children = []
        node.stale = False
