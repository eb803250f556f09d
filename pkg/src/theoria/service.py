"""JSON-over-HTTP API exposing a proof workspace.

Formulas cross the wire twice: as canonical strings for display and as
structural JSON for position picking.  Mutations take a per-PO lock and
persist the proof only after the step succeeds, so a failed application
leaves the stored proof untouched.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .errors import BudgetExceeded, TheoriaError, UnknownNode
from .formula import Formula
from .printer import print_formula
from .proofstore import formula_to_json
from .reasoners import AUTO_EXPAND, AUTO_INFERENCE, AUTO_REWRITE, applicable_rules, apply_to
from .tactics import DEFAULT_ORDER, auto_prove, auto_tactic
from .workspace import Workspace

API_VERSION = 1


def _formula_json(f: Formula) -> dict:
    return {
        "text": print_formula(f, "UNICODE"),
        "ascii": print_formula(f, "ASCII"),
        "structure": formula_to_json(f),
    }


def _rule_json(app):
    if app is None:
        return None
    return {
        "reasoner": app.reasoner_id,
        "input": app.input,
        "rule": app.rule_name,
        "theory": app.theory_name,
        "wd_trivial": app.wd_trivial,
    }


def _tree_json(po) -> dict:
    return {
        "po": po.name,
        "status": po.status,
        "root": po.tree.root_id,
        "nodes": [
            {
                "id": n.id,
                "hypotheses": [_formula_json(h) for h in n.sequent.hypotheses],
                "goal": _formula_json(n.sequent.goal),
                "rule": _rule_json(n.rule_app),
                "children": list(n.children),
                "stale": n.stale,
            }
            for n in po.tree.sorted_nodes()
        ],
    }


class ApplyRequest(BaseModel):
    node: int
    reasoner: str
    input: dict = {}


class AutoRequest(BaseModel):
    tactic: str = "ALL"  # ALL | AUTO_EXPAND | AUTO_REWRITE | AUTO_INFERENCE


class PruneRequest(BaseModel):
    node: int


class ReplayRequest(BaseModel):
    po: str | None = None  # all POs when omitted


def create_app(ws: Workspace, frontend_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="theoria", version=str(API_VERSION))
    locks: dict = {}

    def lock(name: str) -> threading.Lock:
        return locks.setdefault(name, threading.Lock())

    def get_po(name: str):
        if name not in ws.pos:
            raise HTTPException(404, f"no proof obligation named {name!r}")
        return ws.pos[name]

    @app.get("/pos")
    def list_pos():
        return [
            {
                "id": po.name,
                "status": po.status,
                "theories": list(po.spec.theory_names),
                "seq_file": po.seq_path.name,
            }
            for po in ws.pos.values()
        ]

    @app.get("/pos/{name}/tree")
    def get_tree(name: str):
        return _tree_json(get_po(name))

    @app.get("/pos/{name}/nodes/{node_id}/applicable")
    def get_applicable(name: str, node_id: int):
        po = get_po(name)
        try:
            node = po.tree.node(node_id)
        except UnknownNode as e:
            raise HTTPException(404, str(e)) from None
        if node.rule_app is not None:
            return []
        return [
            {
                "reasoner": a.reasoner_id,
                "input": a.input,
                "rule": a.rule_name,
                "theory": a.theory_name,
            }
            for a in applicable_rules(node.sequent, po.rulebase)
        ]

    @app.post("/pos/{name}/apply")
    def post_apply(name: str, req: ApplyRequest):
        po = get_po(name)
        with lock(name):
            try:
                apply_to(po.tree, req.node, po.rulebase, req.reasoner,
                         req.input)
            except UnknownNode as e:
                raise HTTPException(404, str(e)) from None
            except TheoriaError as e:
                raise HTTPException(422, str(e)) from None
            ws.save_proof(name)
            return _tree_json(po)

    @app.post("/pos/{name}/auto")
    def post_auto(name: str, req: AutoRequest):
        po = get_po(name)
        with lock(name):
            try:
                if req.tactic == "ALL":
                    reports = auto_prove(po.tree, po.rulebase)
                elif req.tactic in (AUTO_EXPAND, AUTO_REWRITE, AUTO_INFERENCE):
                    reports = [auto_tactic(po.tree, po.rulebase, req.tactic)]
                else:
                    raise HTTPException(422, f"unknown tactic {req.tactic!r}")
            except BudgetExceeded as e:
                raise HTTPException(422, str(e)) from None
            ws.save_proof(name)
            return {
                "tree": _tree_json(po),
                "report": [
                    {
                        "tactic": r.tactic,
                        "steps": [
                            {
                                "node": s.node_id,
                                "reasoner": s.reasoner_id,
                                "rule": s.rule_name,
                                "theory": s.theory_name,
                                "children": list(s.children),
                            }
                            for s in r.steps
                        ],
                    }
                    for r in reports
                ],
            }

    @app.post("/pos/{name}/prune")
    def post_prune(name: str, req: PruneRequest):
        po = get_po(name)
        with lock(name):
            try:
                po.tree.prune(req.node)
            except UnknownNode as e:
                raise HTTPException(404, str(e)) from None
            ws.save_proof(name)
            return _tree_json(po)

    @app.post("/replay")
    def post_replay(req: ReplayRequest):
        names = [req.po] if req.po is not None else list(ws.pos)
        out = []
        for n in names:
            po = get_po(n)
            with lock(n):
                ws.attach_proof(n)
                verdict = po.verdict
                out.append({
                    "po": n,
                    "verdict": verdict.kind if verdict else "NO_STORED_PROOF",
                    "detail": verdict.detail if verdict else None,
                    "status": po.status,
                })
        return out

    static = Path(frontend_dir) if frontend_dir else Path("frontend/dist")
    if static.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static, html=True), name="ui")
    return app
