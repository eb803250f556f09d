"""HTTP API behaviour, including persistence atomicity."""

import shutil
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from theoria.service import create_app
from theoria.workspace import Workspace

FIXTURES = Path(__file__).resolve().parent.parent / "demos" / "workspace"


@pytest.fixture
def ws_dir(tmp_path):
    for name in ("list.thy", "real.thy", "lists.seq", "reals.seq"):
        shutil.copy(FIXTURES / name, tmp_path / name)
    return tmp_path


@pytest.fixture
def client(ws_dir):
    return TestClient(create_app(Workspace(ws_dir)))


def test_list_pos(client):
    pos = client.get("/pos").json()
    ids = {p["id"] for p in pos}
    assert "list_nil_empty" in ids and "real_sum_zero" in ids
    assert all(p["status"] == "OPEN" for p in pos)


def test_tree_shape(client):
    t = client.get("/pos/list_hyp_identity/tree").json()
    assert t["root"] == 0 and len(t["nodes"]) == 1
    root = t["nodes"][0]
    assert root["rule"] is None
    assert root["goal"]["text"] == "l = cons(1, nil)"
    assert root["goal"]["ascii"] == "l = cons(1, nil)"
    assert root["goal"]["structure"]["kind"] == "equal"
    assert root["hypotheses"][0]["text"] == "l = cons(1, nil)"


def test_unknown_po_404(client):
    assert client.get("/pos/nope/tree").status_code == 404
    assert client.get("/pos/nope/nodes/0/applicable").status_code == 404


def test_applicable_lists_position(client):
    rules = client.get("/pos/real_sum_zero/nodes/0/applicable").json()
    hits = [r for r in rules if r["rule"] == "sum_zero_rewrite"]
    assert hits and hits[0]["input"]["position"] == [0]
    assert hits[0]["reasoner"] == "theory.manualRewrite"


def test_apply_produces_wd_antecedent_and_persists(client, ws_dir):
    r = client.post("/pos/real_sum_zero/apply", json={
        "node": 0,
        "reasoner": "theory.manualRewrite",
        "input": {"rule": "sum_zero_rewrite", "hyp": None, "position": [0]},
    })
    assert r.status_code == 200
    goals = [n["goal"]["text"] for n in r.json()["nodes"]]
    assert goals[1] == "b ≠ zero"
    assert goals[2] == "rdiv(a, b) = rdiv(a, b)"
    assert (ws_dir / "real_sum_zero.prf.json").exists()


def test_failed_apply_is_atomic(client, ws_dir):
    # persist a valid step, then watch a bad one leave the file untouched
    ok = client.post("/pos/list_nil_empty/apply", json={
        "node": 0,
        "reasoner": "theory.manualRewrite",
        "input": {"rule": "isEmpty_nil_rewrite", "hyp": None, "position": []},
    })
    assert ok.status_code == 200
    path = ws_dir / "list_nil_empty.prf.json"
    before = path.read_bytes()
    bad = client.post("/pos/list_nil_empty/apply", json={
        "node": 1,
        "reasoner": "theory.manualRewrite",
        "input": {"rule": "no_such_rule", "hyp": None, "position": []},
    })
    assert bad.status_code == 422
    assert path.read_bytes() == before


def test_apply_unknown_node_404(client):
    r = client.post("/pos/list_nil_empty/apply", json={
        "node": 42, "reasoner": "core.trueGoal", "input": {}})
    assert r.status_code == 404


def test_auto_all_closes(client):
    r = client.post("/pos/list_cons_not_empty/auto", json={"tactic": "ALL"})
    assert r.status_code == 200
    body = r.json()
    assert body["tree"]["status"] == "CLOSED"
    steps = [s for rep in body["report"] for s in rep["steps"]]
    closed = [n for n in body["tree"]["nodes"] if n["rule"]]
    assert len(steps) == len(closed)


def test_auto_single_tactic(client):
    r = client.post("/pos/list_nil_empty/auto",
                    json={"tactic": "theory.autoExpand"})
    assert r.status_code == 200
    assert r.json()["tree"]["status"] == "OPEN"
    assert client.post("/pos/list_nil_empty/auto",
                       json={"tactic": "bogus"}).status_code == 422


def test_prune_resets(client):
    client.post("/pos/list_nil_empty/auto", json={"tactic": "ALL"})
    r = client.post("/pos/list_nil_empty/prune", json={"node": 0})
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "OPEN" and len(body["nodes"]) == 1


def test_replay_endpoint(client, ws_dir):
    client.post("/pos/list_nil_empty/auto", json={"tactic": "ALL"})
    out = client.post("/replay", json={"po": "list_nil_empty"}).json()
    assert out == [{"po": "list_nil_empty", "verdict": "NEEDS_REPLAY",
                    "detail": "proof has theory-dependent steps",
                    "status": "CLOSED"}]
    out2 = client.post("/replay", json={}).json()
    by_po = {o["po"]: o for o in out2}
    assert by_po["real_sum_zero"]["verdict"] == "NO_STORED_PROOF"


def test_serve_and_prove_agree(client, ws_dir):
    from click.testing import CliRunner

    from theoria.cli import main

    client.post("/pos/list_length_nil/auto", json={"tactic": "ALL"})
    api_tree = client.get("/pos/list_length_nil/tree").json()
    r = CliRunner().invoke(main, ["prove", str(ws_dir), "--po",
                                  "list_length_nil", "--replay"])
    assert r.exit_code == 0
    assert "list_length_nil: CLOSED" in r.output
    assert api_tree["status"] == "CLOSED"
