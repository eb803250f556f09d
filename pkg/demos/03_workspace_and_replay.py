"""Workspaces end to end: auto tactics, stored proofs, reuse and replay.

Run from the repository root (writes proof files into a scratch copy):

    python3 demos/03_workspace_and_replay.py
"""

import shutil
import tempfile
from pathlib import Path

from theoria import Workspace, auto_prove

HERE = Path(__file__).resolve().parent

scratch = Path(tempfile.mkdtemp(prefix="theoria-demo-"))
for f in (HERE / "workspace").glob("*"):
    if f.suffix in (".thy", ".seq"):
        shutil.copy(f, scratch / f.name)

ws = Workspace(scratch)
print("obligations:", ", ".join(ws.pos))

# Run the automatic tactic pipeline on everything and persist the results.
for name, po in ws.pos.items():
    auto_prove(po.tree, po.rulebase)
    ws.save_proof(name)
    print(f"{name}: {po.status} ({len(po.tree.nodes)} nodes)")

# A fresh workspace object picks the stored proofs back up.  Proofs that
# only used structural steps attach verbatim; proofs that used theory
# rules are replayed against the current rule base.
ws2 = Workspace(scratch)
for name, po in ws2.pos.items():
    verdict = po.verdict.kind if po.verdict else "NO_STORED_PROOF"
    print(f"{name}: stored proof {verdict}, now {po.status}")

# Rename a rule that one proof depends on and reload: the affected proof
# replays to a stale tree instead of silently staying green.
thy = (scratch / "list.thy").read_text("utf-8")
(scratch / "list.thy").write_text(
    thy.replace("eq_refl_rewrite", "eq_refl_renamed"), encoding="utf-8")
ws3 = Workspace(scratch)
for name, po in ws3.pos.items():
    if po.verdict:
        print(f"after rename, {name}: {po.verdict.kind} -> {po.status}")

shutil.rmtree(scratch)
