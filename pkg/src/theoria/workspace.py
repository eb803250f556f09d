"""Workspaces: a directory of theory, sequent and proof files.

`*.thy` files are loaded in name order; each `*.seq` file names the
theories its sequents are stated against, and every proof obligation gets
one `<name>.prf.json` proof file next to its `.seq`.  Stored proofs are
attached on load: reusable ones verbatim, context-dependent ones by
replay, incompatible ones discarded in favour of a fresh tree.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CorruptProof, TheoriaError
from .prooftree import ProofTree, Sequent
from .proofstore import (
    INCOMPATIBLE,
    NEEDS_REPLAY,
    REUSABLE,
    ReuseVerdict,
    check_reusable,
    proof_from_json,
    proof_to_json,
    replay,
    reuse,
    store_proof,
)
from .rulebase import RuleBase
from .theory import Theory, validate_theory
from .theoryio import SequentSpec, parse_sequents, parse_theory
from .typecheck import TypeEnvironment, typecheck_group


@dataclass
class ProofObligation:
    name: str
    seq_path: Path
    spec: SequentSpec
    rulebase: RuleBase
    sequent: Sequent
    tree: ProofTree
    verdict: ReuseVerdict | None = None  # reuse verdict of the stored proof

    @property
    def proof_path(self) -> Path:
        return self.seq_path.with_name(f"{self.name}.prf.json")

    @property
    def status(self) -> str:
        return self.tree.status


def _leading_theory_names(text: str) -> list:
    names = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"theory\s+(.+)", line)
        if not m:
            break
        names.extend(p.strip() for p in m.group(1).split(","))
    return names


class Workspace:
    def __init__(self, root, attach_proofs: bool = True):
        self.root = Path(root)
        if not self.root.is_dir():
            raise TheoriaError(f"not a directory: {self.root}")
        self.theories: dict = {}
        self.diagnostics: dict = {}
        self.pos: dict = {}
        self._load_theories()
        self._load_sequents()
        if attach_proofs:
            self.attach_proofs()

    # -- loading -----------------------------------------------------------

    def _load_theories(self):
        for path in sorted(self.root.glob("*.thy")):
            t = parse_theory(path.read_text(encoding="utf-8"), file=str(path))
            if t.name in self.theories:
                raise TheoriaError(f"{path}: duplicate theory {t.name!r}")
            self.theories[t.name] = t
            self.diagnostics[t.name] = validate_theory(t)

    def _rulebase_for(self, names, path) -> RuleBase:
        theories = []
        for n in names:
            if n not in self.theories:
                raise TheoriaError(f"{path}: unknown theory {n!r}")
            theories.append(self.theories[n])
        return RuleBase(theories)

    def _load_sequents(self):
        for path in sorted(self.root.glob("*.seq")):
            text = path.read_text(encoding="utf-8")
            rb = self._rulebase_for(_leading_theory_names(text), path)
            for spec in parse_sequents(text, rb.factory, str(path)):
                if spec.name in self.pos:
                    raise TheoriaError(
                        f"{path}: duplicate proof obligation {spec.name!r}")
                seq = self._build_sequent(spec, rb)
                self.pos[spec.name] = ProofObligation(
                    spec.name, path, spec, rb, seq, ProofTree(seq))

    def _build_sequent(self, spec: SequentSpec, rb: RuleBase) -> Sequent:
        env = TypeEnvironment(spec.idents)
        group = [f for _, f in spec.hypotheses] + [spec.goal]
        typed, _ = typecheck_group(group, env, rb.factory, generalize=True)
        return Sequent(tuple(typed[:-1]), typed[-1], rb.factory, spec.name)

    # -- proofs ------------------------------------------------------------

    def attach_proofs(self):
        """Load each PO's stored proof and reuse or replay it."""
        for name in self.pos:
            self.attach_proof(name)

    def attach_proof(self, name: str):
        po = self.po(name)
        if po.proof_path.exists():
            try:
                data = json.loads(po.proof_path.read_text(encoding="utf-8"))
                stored = proof_from_json(data)
            except (OSError, ValueError, CorruptProof) as e:
                raise CorruptProof(f"{po.proof_path}: {e}") from None
            po.verdict = check_reusable(stored, po.sequent)
            if po.verdict.kind == REUSABLE:
                po.tree = reuse(stored, po.sequent)
            elif po.verdict.kind == NEEDS_REPLAY:
                po.tree = replay(stored, po.sequent, po.rulebase)
            else:
                po.tree = ProofTree(po.sequent)

    def save_proof(self, name: str):
        po = self.po(name)
        data = proof_to_json(store_proof(po.tree, po.name))
        tmp = po.proof_path.with_suffix(".tmp")
        tmp.write_text(
            json.dumps(data, ensure_ascii=False, indent=1), encoding="utf-8")
        os.replace(tmp, po.proof_path)

    def save_all(self):
        for name in self.pos:
            self.save_proof(name)

    # -- access ------------------------------------------------------------

    def po(self, name: str) -> ProofObligation:
        if name not in self.pos:
            raise TheoriaError(f"no proof obligation named {name!r}")
        return self.pos[name]

    def statuses(self) -> dict:
        return {name: po.status for name, po in self.pos.items()}
