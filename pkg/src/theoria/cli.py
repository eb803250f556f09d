"""Command line: check theories, prove obligations, serve the HTTP API.

Exit codes: 0 success, 1 check or proof failure, 2 bad invocation or
unreadable input.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .errors import BudgetExceeded, TheoriaError
from .reasoners import AUTO_EXPAND, AUTO_INFERENCE, AUTO_REWRITE
from .tactics import DEFAULT_ORDER, auto_prove
from .theory import validate_theory
from .theoryio import parse_theory
from .workspace import Workspace

_TACTICS = {"expand": AUTO_EXPAND, "rewrite": AUTO_REWRITE,
            "inference": AUTO_INFERENCE}


@click.group()
def main():
    """Interactive proof kernel for theory extensions."""


@main.command()
@click.argument("paths", nargs=-1, required=True,
                type=click.Path(path_type=Path))
def check(paths):
    """Validate theory files; print one diagnostic per finding."""
    failed = False
    for path in _theory_files(paths):
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            click.echo(f"{path}: {e}", err=True)
            sys.exit(2)
        try:
            t = parse_theory(text, file=str(path))
        except TheoriaError as e:
            click.echo(f"{path}: {e}")
            failed = True
            continue
        diags = validate_theory(t)
        for d in diags:
            click.echo(f"{path}: {d}")
        if diags:
            failed = True
        else:
            click.echo(f"{path}: theory {t.name} OK")
    sys.exit(1 if failed else 0)


def _theory_files(paths):
    out = []
    for p in paths:
        if p.is_dir():
            out.extend(sorted(p.glob("*.thy")))
        else:
            out.append(p)
    if not out:
        click.echo("no theory files found", err=True)
        sys.exit(2)
    return out


@main.command()
@click.argument("workspace", type=click.Path(path_type=Path))
@click.option("--po", "pos", multiple=True, help="Prove only the named POs.")
@click.option("--auto", is_flag=True, help="Run the automatic tactics.")
@click.option("--replay", "replay_", is_flag=True,
              help="Reuse or replay stored proofs first.")
@click.option("--report", "report_", is_flag=True,
              help="Print every rule application.")
@click.option("--order", default="expand,rewrite,inference",
              show_default=True, help="Auto tactic order.")
def prove(workspace, pos, auto, replay_, report_, order):
    """Load a workspace, optionally prove its POs, and persist the proofs."""
    try:
        tactic_order = tuple(_TACTICS[w.strip()] for w in order.split(","))
    except KeyError as e:
        click.echo(f"unknown tactic {e.args[0]!r} in --order", err=True)
        sys.exit(2)
    try:
        ws = Workspace(workspace, attach_proofs=replay_)
    except (TheoriaError, OSError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)
    names = list(pos) if pos else list(ws.pos)
    unknown = [n for n in names if n not in ws.pos]
    if unknown:
        click.echo(f"error: no proof obligation named {unknown[0]!r}", err=True)
        sys.exit(2)
    failed = False
    for name in names:
        po = ws.po(name)
        if replay_ and po.verdict is not None:
            click.echo(f"{name}: stored proof {po.verdict.kind}"
                       + (f" ({po.verdict.detail})" if po.verdict.detail else ""))
        applications = 0
        if auto:
            try:
                reports = auto_prove(po.tree, po.rulebase, order=tactic_order)
            except BudgetExceeded as e:
                reports = e.report or []
                click.echo(f"{name}: {e}")
            applications = sum(r.applications for r in reports)
            if report_:
                for r in reports:
                    for s in r.steps:
                        label = s.rule_name or s.reasoner_id
                        click.echo(f"{name}:   node {s.node_id}: {label}")
        if auto or replay_:
            ws.save_proof(name)
        click.echo(f"{name}: {po.status} ({applications} applications)")
        if po.status != "CLOSED":
            failed = True
    sys.exit(1 if failed else 0)


@main.command()
@click.argument("workspace", type=click.Path(path_type=Path))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(workspace, host, port):
    """Serve the proof workspace over HTTP."""
    import uvicorn

    from .service import create_app

    try:
        ws = Workspace(workspace)
    except (TheoriaError, OSError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)
    try:
        uvicorn.run(create_app(ws), host=host, port=port, log_level="warning")
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)
