import io
import os
import zipfile

import pytest
from fastapi.testclient import TestClient

from catsd import casestudy
from catsd.engine import classify
from catsd.service import create_app


@pytest.fixture()
def client(tmp_path):
    app = create_app(os.path.join(tmp_path, "store"))
    with TestClient(app) as c:
        yield c


def fixture_zip() -> bytes:
    root = casestudy.data_path()
    buffer = io.BytesIO()
    with zipfile.ZipFile(buffer, "w") as zf:
        for name in sorted(os.listdir(root)):
            zf.write(os.path.join(root, name), name)
    return buffer.getvalue()


def import_fixture(client) -> dict:
    response = client.post(
        "/projects/import",
        params={"name": "Case study"},
        content=fixture_zip(),
        headers={"content-type": "application/zip"},
    )
    assert response.status_code == 201, response.text
    document = response.json()
    assert document["report"]["ok"], document["report"]
    return document


def put_module(client, project_id, stem, rows):
    meta = client.get(f"/projects/{project_id}").json()
    response = client.put(
        f"/projects/{project_id}/modules/{stem}",
        params={"version": meta["version"]},
        json=rows,
    )
    assert response.status_code == 200, response.text
    return response.json()


# ------------------------------------------------------------- project CRUD

def test_create_list_get_delete(client):
    created = client.post("/projects", json={"name": "Recruitment"})
    assert created.status_code == 201
    meta = created.json()
    assert meta["name"] == "Recruitment"
    assert meta["version"] == 1
    assert meta["updated_at"] >= meta["created_at"]

    listed = client.get("/projects").json()
    assert [p["id"] for p in listed] == [meta["id"]]

    document = client.get(f"/projects/{meta['id']}").json()
    assert document["modules"] == {}

    assert client.delete(f"/projects/{meta['id']}").status_code == 204
    assert client.get(f"/projects/{meta['id']}").status_code == 404
    assert client.delete(f"/projects/{meta['id']}").status_code == 404


def test_unknown_project_and_module_are_404(client):
    assert client.get("/projects/nope").status_code == 404
    assert client.post("/projects/nope/execute").status_code == 404
    assert client.get("/projects/nope/export").status_code == 404
    meta = client.post("/projects", json={"name": "p"}).json()
    response = client.put(
        f"/projects/{meta['id']}/modules/not_a_module",
        params={"version": 1},
        json=[],
    )
    assert response.status_code == 404


def test_import_execute_matches_direct_classification(client):
    document = import_fixture(client)
    response = client.post(f"/projects/{document['id']}/execute")
    assert response.status_code == 200
    payload = response.json()

    project = casestudy.load()
    oracle = classify(project.actions, project.performances, project.model).to_dict()
    assert payload == oracle

    by_action = {a["action"]: a for a in payload["assignments"]}
    assert by_action["a4"]["accepted"] == ["Paratroopers"]
    assert by_action["a11"]["accepted"] == ["Commandos", "Special Operations"]
    assert by_action["a7"]["dummy"]
    snipers_a17 = next(o for o in by_action["a17"]["outcomes"] if o["category"] == "Snipers")
    assert not snipers_a17["accepted"]
    assert snipers_a17["likeness"] == pytest.approx(0.78, abs=0.005)


def test_execute_is_read_only_and_repeatable(client):
    document = import_fixture(client)
    first = client.post(f"/projects/{document['id']}/execute").json()
    second = client.post(f"/projects/{document['id']}/execute").json()
    assert first == second
    meta = client.get(f"/projects/{document['id']}").json()
    assert meta["version"] == document["version"]
    assert meta["last_results"] == first


def test_execute_stamps_the_executed_version(client):
    document = import_fixture(client)
    pid = document["id"]
    client.post(f"/projects/{pid}/execute")
    meta = client.get(f"/projects/{pid}").json()
    assert meta["executed_version"] == meta["version"]

    # an edit after the run leaves the stamp behind, marking results stale
    put_module(client, pid, "weights", meta["modules"]["weights"])
    meta = client.get(f"/projects/{pid}").json()
    assert meta["executed_version"] == meta["version"] - 1


def test_execute_accepts_epsilon(client):
    document = import_fixture(client)
    response = client.post(f"/projects/{document['id']}/execute", json={"epsilon": 0.021})
    by_action = {a["action"]: a for a in response.json()["assignments"]}
    assert "Snipers" in by_action["a17"]["accepted"]


def test_execute_with_no_actions_returns_empty_report(client):
    meta = client.post("/projects", json={"name": "empty"}).json()
    pid = meta["id"]
    put_module(client, pid, "criteria", [
        {"id": "c1", "name": "First", "direction": "Maximize",
         "scale_type": "Cardinal", "min": 0, "max": 10, "sd_function": "ramp"},
    ])
    put_module(client, pid, "sd_functions", [
        {"function_id": "ramp", "condition": "d <= -5", "value": "-1"},
        {"function_id": "ramp", "condition": "-5 < d <= 0", "value": "d/5 + 1"},
        {"function_id": "ramp", "condition": "0 < d <= 5", "value": "-d/5 + 1"},
        {"function_id": "ramp", "condition": "d > 5", "value": "-1"},
    ])
    put_module(client, pid, "reference_actions", [
        {"category": "Only", "ref_id": "b1", "c1": 5},
    ])
    put_module(client, pid, "weights", [{"category": "Only", "c1": 1}])
    put_module(client, pid, "interactions", [])
    put_module(client, pid, "thresholds", [{"category": "Only", "value": 0.6}])
    put_module(client, pid, "actions", [])
    put_module(client, pid, "performance", [])

    response = client.post(f"/projects/{pid}/execute")
    assert response.status_code == 200
    payload = response.json()
    assert payload["assignments"] == []
    assert payload["categories"] == ["Only"]


# ------------------------------------------------------- writes and guards

def test_put_module_requires_fresh_version_token(client):
    document = import_fixture(client)
    pid = document["id"]
    rows = [
        {"category": "Commandos", "value": 0.7},
        {"category": "Paratroopers", "value": 0.5},
        {"category": "Special Operations", "value": 0.65},
        {"category": "Snipers", "value": 0.8},
    ]
    ok = client.put(f"/projects/{pid}/modules/thresholds", params={"version": 1}, json=rows)
    assert ok.status_code == 200
    assert ok.json()["version"] == 2

    stale = client.put(f"/projects/{pid}/modules/thresholds", params={"version": 1}, json=rows)
    assert stale.status_code == 409
    assert stale.json()["current_version"] == 2

    missing = client.put(f"/projects/{pid}/modules/thresholds", json=rows)
    assert missing.status_code == 400


def test_put_module_rejects_malformed_rows(client):
    document = import_fixture(client)
    pid = document["id"]
    bad_shape = client.put(
        f"/projects/{pid}/modules/weights", params={"version": 1}, json={"not": "a list"}
    )
    assert bad_shape.status_code == 400
    assert bad_shape.json()["issues"][0]["code"] == "BAD_FORMAT"

    bad_column = client.put(
        f"/projects/{pid}/modules/thresholds", params={"version": 1},
        json=[{"category": "Commandos"}],
    )
    assert bad_column.status_code == 400
    assert "MISSING_COLUMN" in {i["code"] for i in bad_column.json()["issues"]}

    bad_number = client.put(
        f"/projects/{pid}/modules/thresholds", params={"version": 1},
        json=[{"category": "Commandos", "value": "lots"}],
    )
    assert bad_number.status_code == 400
    assert "BAD_VALUE" in {i["code"] for i in bad_number.json()["issues"]}
    # nothing was written
    assert client.get(f"/projects/{pid}").json()["version"] == 1


def test_semantic_problems_surface_on_execute(client):
    document = import_fixture(client)
    pid = document["id"]
    put_module(client, pid, "thresholds", [
        {"category": "Commandos", "value": 1.5},
        {"category": "Paratroopers", "value": 0.5},
        {"category": "Special Operations", "value": 0.65},
        {"category": "Snipers", "value": 0.8},
    ])
    response = client.post(f"/projects/{pid}/execute")
    assert response.status_code == 422
    codes = {issue["code"] for issue in response.json()["issues"]}
    assert "THRESHOLD_OUT_OF_RANGE" in codes


def test_weakening_overload_rejected_on_execute(client):
    document = import_fixture(client)
    pid = document["id"]
    meta = client.get(f"/projects/{pid}").json()
    rows = meta["modules"]["interactions"]
    doubled = []
    for row in rows:
        row = dict(row)
        if row["kind"] == "MutualWeakening":
            row["value"] = str(2 * float(row["value"]))
        doubled.append(row)
    put_module(client, pid, "interactions", doubled)
    response = client.post(f"/projects/{pid}/execute")
    assert response.status_code == 422
    assert "NON_NEGATIVITY_VIOLATION" in {i["code"] for i in response.json()["issues"]}


# ------------------------------------------------------ export and copies

def test_export_round_trips_through_import(client):
    document = import_fixture(client)
    exported = client.get(f"/projects/{document['id']}/export")
    assert exported.status_code == 200
    assert exported.headers["content-type"] == "application/zip"

    again = client.post("/projects/import", content=exported.content)
    assert again.status_code == 201
    first = client.post(f"/projects/{document['id']}/execute").json()
    second = client.post(f"/projects/{again.json()['id']}/execute").json()
    assert first == second

    archive = zipfile.ZipFile(io.BytesIO(exported.content))
    stored = {info.filename: archive.read(info) for info in archive.infolist()}
    original = zipfile.ZipFile(io.BytesIO(fixture_zip()))
    for name in original.namelist():
        assert stored[name] == original.read(name), name


def test_duplicate_copies_modules_but_not_identity(client):
    document = import_fixture(client)
    copy = client.post(f"/projects/{document['id']}/duplicate")
    assert copy.status_code == 201
    copy_meta = copy.json()
    assert copy_meta["id"] != document["id"]
    assert copy_meta["name"] == "Case study (copy)"
    assert copy_meta["version"] == 1
    first = client.post(f"/projects/{document['id']}/execute").json()
    second = client.post(f"/projects/{copy_meta['id']}/execute").json()
    assert first == second


def test_import_rejects_non_zip_bodies(client):
    response = client.post("/projects/import", content=b"not a zip at all")
    assert response.status_code == 400
    assert response.json()["issues"][0]["code"] == "BAD_FORMAT"


# -------------------------------------------------- stateless computations

def test_srf_weights_for_printed_ranking(client):
    response = client.post("/compute/srf-weights", json={
        "subsets": [["PF"], ["NR", "SA", "MechR", "VP", "PmA"], ["Intel"], ["Pers", "Med"]],
        "blanks": [1, 1, 0],
        "z": 4,
    })
    assert response.status_code == 200
    body = response.json()
    assert body["weights"]["PF"] == "1"
    assert body["weights"]["NR"] == body["weights"]["PmA"] == "2.2"
    assert body["weights"]["Intel"] == "3.4"
    assert body["weights"]["Pers"] == body["weights"]["Med"] == "4"
    assert body["exact"]["NR"] == "11/5"
    assert body["order"][0] == "PF"


def test_srf_weights_error_paths(client):
    degenerate = client.post("/compute/srf-weights", json={"subsets": [["a"]], "blanks": [], "z": 1})
    assert degenerate.status_code == 422
    assert degenerate.json()["issues"][0]["code"] == "Z_OUT_OF_RANGE"

    malformed = client.post("/compute/srf-weights", json={"subsets": [["a"], ["b"]], "blanks": [0]})
    assert malformed.status_code == 400
    assert malformed.json()["issues"][0]["code"] == "BAD_FORMAT"


def test_fit_thresholds_returns_exact_fractions(client):
    response = client.post("/compute/fit-thresholds", json={"points": [
        {"threshold": "t_prime", "level": 70, "difference": 10},
        {"threshold": "t_prime", "level": 135, "difference": 20},
        {"threshold": "u", "level": 70, "difference": 20},
        {"threshold": "u", "level": 135, "difference": 40},
    ]})
    assert response.status_code == 200
    fits = response.json()["thresholds"]
    assert fits["t_prime"] == {"kind": "affine", "slope": "2/13", "intercept": "-10/13"}
    assert fits["u"] == {"kind": "affine", "slope": "4/13", "intercept": "-20/13"}

    flat = client.post("/compute/fit-thresholds", json={"points": [
        {"threshold": "t", "level": 10, "difference": 3},
        {"threshold": "t", "level": 50, "difference": 3},
    ]})
    assert flat.json()["thresholds"]["t"] == {"kind": "constant", "value": "3"}


def test_fit_thresholds_validates_points(client):
    lopsided = client.post("/compute/fit-thresholds", json={"points": [
        {"threshold": "t", "level": 10, "difference": 3},
    ]})
    assert lopsided.status_code == 400

    shapeless = client.post("/compute/fit-thresholds", json={"points": "nope"})
    assert shapeless.status_code == 400


def test_deck_intensities_endpoint(client):
    response = client.post("/compute/deck-intensities", json={
        "subsets": [["a"], ["b"], ["c"]],
        "blanks": [1, 0],
        "component": "f2",
    })
    assert response.status_code == 200
    body = response.json()
    assert body["intensities"] == {"0": "0", "1": "2/3", "2": "1"}
    assert body["values"]["1"] == pytest.approx(2 / 3)

    degenerate = client.post("/compute/deck-intensities", json={
        "subsets": [["only"]], "blanks": [], "component": "f3",
    })
    assert degenerate.status_code == 422
    assert degenerate.json()["issues"][0]["code"] == "DEGENERATE_RANKING"


def test_openapi_document_served(client):
    response = client.get("/spec")
    assert response.status_code == 200
    paths = response.json()["paths"]
    assert "/projects" in paths
    assert "/projects/{project_id}/execute" in paths
