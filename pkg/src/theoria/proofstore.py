"""Versioned proof serialization, reuse checking and replay.

A stored proof keeps every node's sequent, the rule application that closed
it, and a snapshot of the extension signatures in scope.  Reuse against a
current proof obligation is a three-way verdict: REUSABLE (attach as is),
NEEDS_REPLAY (some step depends on theory content, so re-execute it), or
INCOMPATIBLE (the snapshot and the current factory disagree on a name).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CorruptProof, TheoriaError
from .factory import CORE, FormulaFactory, conflict_name, factory_with
from .formula import Formula, mk_node
from .prooftree import ProofNode, ProofTree, RuleApplication, Sequent
from .rulebase import RuleBase
from .signatures import AxiomaticTypeSig, ConstructorSig, DatatypeSig, OperatorSig
from .stypes import (
    BOOL,
    DatatypeInstance,
    GivenType,
    INT,
    PowerSet,
    Product,
    SType,
    TypeParam,
)

PROOF_FORMAT = "theoria-proof"
PROOF_VERSION = 1

REUSABLE = "REUSABLE"
NEEDS_REPLAY = "NEEDS_REPLAY"
INCOMPATIBLE = "INCOMPATIBLE"


# -- types --------------------------------------------------------------------

def type_to_json(t: SType) -> dict:
    if t == INT:
        return {"k": "int"}
    if t == BOOL:
        return {"k": "bool"}
    match t:
        case TypeParam(name):
            return {"k": "param", "name": name}
        case GivenType(name):
            return {"k": "given", "name": name}
        case PowerSet(inner):
            return {"k": "pow", "of": type_to_json(inner)}
        case Product(left, right):
            return {"k": "prod", "left": type_to_json(left),
                    "right": type_to_json(right)}
        case DatatypeInstance(name, args):
            return {"k": "data", "name": name,
                    "args": [type_to_json(a) for a in args]}
    raise CorruptProof(f"unserializable type {t!r}")


def type_from_json(d: dict) -> SType:
    try:
        k = d["k"]
        if k == "int":
            return INT
        if k == "bool":
            return BOOL
        if k == "param":
            return TypeParam(d["name"])
        if k == "given":
            return GivenType(d["name"])
        if k == "pow":
            return PowerSet(type_from_json(d["of"]))
        if k == "prod":
            return Product(type_from_json(d["left"]),
                           type_from_json(d["right"]))
        if k == "data":
            return DatatypeInstance(
                d["name"], tuple(type_from_json(a) for a in d["args"]))
    except (KeyError, TypeError) as e:
        raise CorruptProof(f"bad type record: {e}") from None
    raise CorruptProof(f"bad type tag {k!r}")


# -- formulas -----------------------------------------------------------------

def formula_to_json(f: Formula) -> dict:
    out: dict = {"kind": f.kind}
    if f.name is not None:
        out["name"] = f.name
    if f.value is not None:
        out["value"] = f.value
    if f.bound:
        out["bound"] = list(f.bound)
    if f.ctype is not None:
        out["ctype"] = type_to_json(f.ctype)
    if f.children:
        out["children"] = [formula_to_json(c) for c in f.children]
    return out


def formula_from_json(d: dict, factory: FormulaFactory) -> Formula:
    try:
        children = tuple(
            formula_from_json(c, factory) for c in d.get("children", ())
        )
        ctype = type_from_json(d["ctype"]) if "ctype" in d else None
        return mk_node(
            d["kind"], children,
            name=d.get("name"), value=d.get("value"),
            bound=tuple(d.get("bound", ())), ctype=ctype, factory=factory,
        )
    except CorruptProof:
        raise
    except (KeyError, TypeError, TheoriaError) as e:
        raise CorruptProof(f"bad formula record: {e}") from None


# -- signatures ---------------------------------------------------------------

def signature_to_json(sig) -> dict:
    if isinstance(sig, AxiomaticTypeSig):
        return {"class": "axiomatic", "name": sig.name}
    if isinstance(sig, DatatypeSig):
        return {
            "class": "datatype", "name": sig.name,
            "params": list(sig.type_params),
            "constructors": [
                {"name": c.name,
                 "destructors": [[n, type_to_json(t)]
                                 for n, t in c.destructors]}
                for c in sig.constructors
            ],
        }
    if isinstance(sig, OperatorSig):
        return {
            "class": "operator", "name": sig.name,
            "notation": sig.notation, "formula_kind": sig.formula_kind,
            "args": [[n, type_to_json(t)] for n, t in sig.args],
            "result": type_to_json(sig.result_type)
            if sig.result_type is not None else None,
            "associative": sig.associative, "commutative": sig.commutative,
            "symbol": sig.symbol,
        }
    raise CorruptProof(f"unserializable signature {sig!r}")


def signature_from_json(d: dict):
    try:
        cls = d["class"]
        if cls == "axiomatic":
            return AxiomaticTypeSig(d["name"])
        if cls == "datatype":
            return DatatypeSig(
                d["name"], tuple(d["params"]),
                tuple(
                    ConstructorSig(
                        c["name"],
                        tuple((n, type_from_json(t))
                              for n, t in c["destructors"]),
                    )
                    for c in d["constructors"]
                ),
            )
        if cls == "operator":
            return OperatorSig(
                d["name"], d["notation"], d["formula_kind"],
                tuple((n, type_from_json(t)) for n, t in d["args"]),
                type_from_json(d["result"]) if d["result"] is not None else None,
                d["associative"], d["commutative"], d["symbol"],
            )
    except (KeyError, TypeError, TheoriaError) as e:
        raise CorruptProof(f"bad signature record: {e}") from None
    raise CorruptProof(f"bad signature class {cls!r}")


# -- proofs -------------------------------------------------------------------

@dataclass(frozen=True)
class StoredNode:
    id: int
    hypotheses: tuple
    goal: Formula
    rule: RuleApplication | None
    children: tuple


@dataclass(frozen=True)
class StoredProof:
    po: str
    signatures: tuple
    nodes: dict  # id -> StoredNode
    root: int
    status: str

    def factory(self) -> FormulaFactory:
        try:
            return factory_with(CORE, self.signatures)
        except TheoriaError as e:
            raise CorruptProof(f"inconsistent signature snapshot: {e}") from None


def store_proof(tree: ProofTree, po: str) -> StoredProof:
    sigs = tuple(
        tree.root.sequent.factory.extensions[k]
        for k in sorted(tree.root.sequent.factory.extensions)
    )
    nodes = {
        n.id: StoredNode(n.id, n.sequent.hypotheses, n.sequent.goal,
                         n.rule_app, tuple(n.children))
        for n in tree.sorted_nodes()
    }
    return StoredProof(po, sigs, nodes, tree.root_id, tree.status)


def proof_to_json(p: StoredProof) -> dict:
    return {
        "format": PROOF_FORMAT,
        "version": PROOF_VERSION,
        "po": p.po,
        "status": p.status,
        "signatures": [signature_to_json(s) for s in p.signatures],
        "root": p.root,
        "nodes": [
            {
                "id": n.id,
                "hypotheses": [formula_to_json(h) for h in n.hypotheses],
                "goal": formula_to_json(n.goal),
                "rule": _rule_to_json(n.rule),
                "children": list(n.children),
            }
            for n in p.nodes.values()
        ],
    }


def _rule_to_json(app: RuleApplication | None):
    if app is None:
        return None
    return {
        "reasoner": app.reasoner_id,
        "input": app.input,
        "rule": app.rule_name,
        "theory": app.theory_name,
        "context_dependent": app.context_dependent,
        "wd_trivial": app.wd_trivial,
    }


def _rule_from_json(d):
    if d is None:
        return None
    try:
        return RuleApplication(
            d["reasoner"], dict(d["input"]), d.get("rule"), d.get("theory"),
            bool(d.get("context_dependent", True)),
            bool(d.get("wd_trivial", False)),
        )
    except (KeyError, TypeError) as e:
        raise CorruptProof(f"bad rule record: {e}") from None


def proof_from_json(data: dict) -> StoredProof:
    if not isinstance(data, dict) or data.get("format") != PROOF_FORMAT:
        raise CorruptProof("not a proof file")
    if data.get("version") != PROOF_VERSION:
        raise CorruptProof(f"unsupported proof version {data.get('version')!r}")
    try:
        sigs = tuple(signature_from_json(s) for s in data["signatures"])
        fac = factory_with(CORE, sigs)
        nodes = {}
        for n in data["nodes"]:
            nodes[n["id"]] = StoredNode(
                n["id"],
                tuple(formula_from_json(h, fac) for h in n["hypotheses"]),
                formula_from_json(n["goal"], fac),
                _rule_from_json(n["rule"]),
                tuple(n["children"]),
            )
        p = StoredProof(data["po"], sigs, nodes, data["root"],
                        data.get("status", "OPEN"))
    except CorruptProof:
        raise
    except (KeyError, TypeError, TheoriaError) as e:
        raise CorruptProof(f"malformed proof file: {e}") from None
    if p.root not in p.nodes:
        raise CorruptProof("root node missing")
    for n in p.nodes.values():
        if any(c not in p.nodes for c in n.children):
            raise CorruptProof(f"node {n.id} has a dangling child")
    return p


# -- reuse and replay ---------------------------------------------------------

@dataclass(frozen=True)
class ReuseVerdict:
    kind: str  # REUSABLE | NEEDS_REPLAY | INCOMPATIBLE
    detail: str | None = None


def check_reusable(p: StoredProof, seq: Sequent) -> ReuseVerdict:
    snapshot = p.factory()
    bad = conflict_name(snapshot, seq.factory)
    if bad is not None:
        return ReuseVerdict(INCOMPATIBLE, bad)
    root = p.nodes[p.root]
    if root.goal != seq.goal or root.hypotheses != seq.hypotheses:
        return ReuseVerdict(INCOMPATIBLE, "root sequent changed")
    if any(n.rule is not None and n.rule.context_dependent
           for n in p.nodes.values()):
        return ReuseVerdict(NEEDS_REPLAY, "proof has theory-dependent steps")
    return ReuseVerdict(REUSABLE)


def reuse(p: StoredProof, seq: Sequent) -> ProofTree:
    """Attach a stored proof verbatim, without re-executing any step."""
    tree = ProofTree(seq)

    def go(sid: int, live_id: int):
        sn = p.nodes[sid]
        if sn.rule is None:
            return
        ants = [
            Sequent(p.nodes[c].hypotheses, p.nodes[c].goal, seq.factory,
                    seq.origin)
            for c in sn.children
        ]
        ids = tree.apply(live_id, sn.rule, ants)
        for csid, cid in zip(sn.children, ids):
            go(csid, cid)

    go(p.root, tree.root_id)
    return tree


def replay(p: StoredProof, seq: Sequent, rb: RuleBase) -> ProofTree:
    """Re-execute every stored step against the current rule base.  Steps
    that fail leave their node pending and flagged, making the tree STALE."""
    from .reasoners import run_reasoner

    tree = ProofTree(seq)

    def go(sid: int, live_id: int):
        sn = p.nodes[sid]
        if sn.rule is None:
            return
        live = tree.node(live_id)
        try:
            app, ants = run_reasoner(live.sequent, rb, sn.rule.reasoner_id,
                                     sn.rule.input)
        except TheoriaError:
            live.stale = True
            return
        ids = tree.apply(live_id, app, ants)
        if len(ids) != len(sn.children):
            live.stale = True
        for csid, cid in zip(sn.children, ids):
            go(csid, cid)

    go(p.root, tree.root_id)
    return tree
