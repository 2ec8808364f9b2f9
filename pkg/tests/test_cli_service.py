import json

import httpx
import pytest
from fastapi.testclient import TestClient

from suboplex import acceptance, api, cli, topology
from suboplex.errors import CrossCheckError
from suboplex.service import app

DELTA3 = '{"kind":"delta","n":3}'


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dims_example(capsys):
    code, out, err = run(capsys, "dims", "--class", DELTA3)
    assert code == 0 and not err
    assert json.loads(out) == {"dim_h": 2, "dim_SR": 4, "dim_VC": 1}


def test_class_from_file(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(DELTA3)
    code, out, _ = run(capsys, "dims", "--class", str(p))
    assert code == 0 and json.loads(out)["dim_h"] == 2


def test_separate_parity_from_quadratic_threshold_exits_one(capsys):
    code, out, _ = run(capsys, "separate", "--class", '{"kind":"polythr","d":2,"k":1}', "--target", "parity")
    assert code == 1
    res = json.loads(out)
    assert res["member"] is False and res["diff"] and res["certificate"]
    assert res["weakly_representable"] is False
    assert res["projection"]["holds"]


def test_separate_member_exits_zero(capsys):
    code, out, _ = run(capsys, "separate", "--class", '{"kind":"polythr","d":2,"k":2}', "--target", "parity")
    assert code == 0 and json.loads(out)["member"] is True


def test_farkas_hole_example(capsys, tmp_path):
    p = tmp_path / "basis.json"
    p.write_text('{"basis": [[1,-1,0],[0,0,1]]}')
    code, out, _ = run(capsys, "farkas", "--subspace", str(p))
    assert code == 1
    res = json.loads(out)
    assert res["certificate"]["kind"] == "hole" and res["certificate"]["g"] == "+--"


def test_farkas_witness(capsys):
    code, out, _ = run(capsys, "farkas", "--subspace", '{"basis": [[1,1,1],[1,0,0]]}')
    assert code == 0
    cert = json.loads(out)["certificate"]
    assert cert["kind"] == "witness" and all(int(v) > 0 for v in cert["x"])


def test_cm_negative_verdict_has_witness(capsys):
    code, out, _ = run(capsys, "cm", "--class", DELTA3)
    assert code == 1 and "witness" in json.loads(out)


def test_resolve_and_composites(capsys):
    code, out, _ = run(capsys, "resolve", "--resolution", '{"kind":"wt","n":4,"k":2}')
    res = json.loads(out)
    assert code == 0 and res["report"]["is_minimal"] and res["betti"]
    spec = '{"kind":"join","left":{"kind":"flag","p":2,"d":2},"right":{"kind":"point","f":"0001"}}'
    code, out, _ = run(capsys, "resolve", "--resolution", spec)
    assert code == 0 and json.loads(out)["report"]["is_resolution"]


@pytest.mark.parametrize("argv", [
    ["dims"],
    ["dims", "--class", '{"kind":"nope"}'],
    ["dims", "--class", "{not json"],
    ["dims", "--class", "/no/such/file.json"],
    ["dims", "--class", DELTA3, "--threads", "0"],
    ["separate", "--class", DELTA3, "--target", "0101"],
    ["farkas"],
    ["farkas", "--subspace", '{"basis": [[1,1,1]]}'],
    ["bogus-verb"],
])
def test_usage_and_input_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and not out
    body = json.loads(err)
    assert body["exit_code"] == 2 and body["error"]["code"] and body["error"]["message"]


def test_face_limit_flag_and_env(capsys, monkeypatch):
    code, _, err = run(capsys, "betti", "--class", '{"kind":"complete","n":4}', "--limit-faces", "5")
    assert code == 2 and json.loads(err)["error"]["code"] == "size_limit"
    monkeypatch.setenv("SUBOPLEX_LIMIT_FACES", "5")
    code, _, err = run(capsys, "betti", "--class", '{"kind":"complete","n":4}')
    assert code == 2 and json.loads(err)["error"]["code"] == "size_limit"


def test_output_is_byte_stable_across_threads(capsys):
    outs = set()
    for threads in ("1", "3", "8"):
        for _ in range(2):
            code, out, _ = run(capsys, "analyze", "--class", '{"kind":"wt","n":5,"k":2}', "--threads", threads,
                               "--field", "both")
            assert code == 0
            outs.add(out)
    assert len(outs) == 1


def test_csv_and_text_formats(capsys):
    code, out, _ = run(capsys, "--format", "csv", "betti", "--class", DELTA3)
    lines = out.strip().splitlines()
    assert lines[0] == "field,i,pf,rank" and "rational,2,...,1" in lines
    code, out, _ = run(capsys, "--format", "text", "dims", "--class", DELTA3)
    assert out.strip().splitlines() == ["dim_h: 2", "dim_SR: 4", "dim_VC: 1"]
    code, out, _ = run(capsys, "--format", "csv", "dims", "--class", DELTA3)
    assert out.strip().splitlines()[0] == "key,value"


def test_discrepancy_exits_three(capsys, monkeypatch):
    def broken(*a, **k):
        raise CrossCheckError("injected")

    monkeypatch.setattr(api, "_tables", broken)
    code, out, err = run(capsys, "dims", "--class", DELTA3)
    assert code == 3 and not out
    assert json.loads(err)["error"]["code"] == "discrepancy"


def test_verify_paper_filter(capsys):
    code, out, _ = run(capsys, "--format", "text", "verify-paper", "--filter", "flag")
    assert code == 0
    assert out.strip().splitlines() == [ln for ln in out.strip().splitlines() if "criterion  3" in ln]
    assert out.startswith("[PASS]")


def test_verify_paper_catches_an_injected_homology_bug(capsys, monkeypatch):
    real = topology._homology_from_faces

    def off_by_one(faces, field_name):
        h = real(faces, field_name)
        return {k + 1: r for k, r in h.items()}

    def clear():
        acceptance._betti.cache_clear()
        topology._members_homology.cache_clear()

    clear()
    monkeypatch.setattr(topology, "_homology_from_faces", off_by_one)
    try:
        code, out, _ = run(capsys, "--format", "text", "verify-paper", "--filter", "1")
    finally:
        clear()
    assert code == 3
    assert out.startswith("[FAIL] criterion  1")


# ----------------------------------------------------------------------------
# HTTP service


@pytest.fixture()
def client():
    return TestClient(app)


def test_service_routes(client):
    assert client.get("/health").json()["status"] == "ok"
    r = client.post("/dims", json={"class": {"kind": "delta", "n": 3}})
    assert r.status_code == 200
    body = r.json()
    assert body["ok"] and body["exit_code"] == 0 and body["result"]["dim_SR"] == 4
    r = client.post("/separate", json={"class": {"kind": "linthr", "d": 2}, "target": "parity"})
    assert r.status_code == 200 and r.json()["exit_code"] == 1


def test_service_errors(client, monkeypatch):
    r = client.post("/dims", json={"class": {"kind": "nope"}})
    assert r.status_code == 400 and r.json()["error"]["code"] == "input"
    r = client.post("/dims", json={"klass": {}})
    assert r.status_code == 422
    r = client.post("/betti", json={"class": {"kind": "complete", "n": 4}, "limit_faces": 5})
    assert r.status_code == 413
    monkeypatch.setattr(api, "_tables", lambda *a, **k: (_ for _ in ()).throw(CrossCheckError("injected")))
    r = client.post("/dims", json={"class": {"kind": "delta", "n": 3}})
    assert r.status_code == 500 and r.json()["exit_code"] == 3


def test_cli_through_server(capsys, monkeypatch, client):
    def post(url, json=None, timeout=None):
        return client.post(httpx.URL(url).path, json=json)

    monkeypatch.setattr(httpx, "post", post)
    code, out, _ = run(capsys, "--server", "http://testserver", "dims", "--class", DELTA3)
    assert code == 0 and json.loads(out) == {"dim_h": 2, "dim_SR": 4, "dim_VC": 1}
    code, _, err = run(capsys, "--server", "http://testserver", "dims", "--class", '{"kind":"nope"}')
    assert code == 2 and json.loads(err)["error"]["code"] == "input"
    code, out, _ = run(capsys, "--server", "http://testserver", "cm", "--class", DELTA3)
    assert code == 1
