import json

import jsonschema
import numpy as np
import pytest
from fastapi.testclient import TestClient

from missview.ingest import write_table
from missview.schemas import SCENE_SCHEMA, STATS_SCHEMA
from missview.server import create_app

from conftest import random_masked_dataset


@pytest.fixture
def client(tmp_path):
    ds = random_masked_dataset(seed=88, n_vars=5, n_items=100)
    (tmp_path / "demo.csv").write_text(write_table(ds))
    app = create_app(data_dir=str(tmp_path))
    return TestClient(app)


@pytest.fixture
def empty_client():
    return TestClient(create_app())


def test_health(empty_client):
    r = empty_client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


def test_datasets_empty_list(empty_client):
    assert empty_client.get("/datasets").json() == []


def test_datasets_listing(client):
    body = client.get("/datasets").json()
    assert len(body) == 1
    assert body[0]["id"] == "demo"
    assert body[0]["n_items"] == 100
    assert {v["name"] for v in body[0]["variables"]} == {f"x{k}" for k in range(1, 6)}


def test_upload_grows_listing(client):
    r = client.post("/datasets?id=new", content=b"a,b\n1,2\n3,NaN\n")
    assert r.status_code == 201
    ids = {d["id"] for d in client.get("/datasets").json()}
    assert ids == {"demo", "new"}


def test_upload_ragged_csv_400(client):
    r = client.post("/datasets?id=bad", content=b"a,b\n1\n")
    assert r.status_code == 400
    assert "row" in r.json()["detail"]


def test_upload_duplicate_id_409(client):
    r = client.post("/datasets?id=demo", content=b"a\n1\n")
    assert r.status_code == 409


def test_stats_unknown_id_404(client):
    assert client.get("/datasets/nope/stats").status_code == 404


def test_stats_unknown_select_400(client):
    assert client.get("/datasets/demo/stats?select=zzz").status_code == 400


def test_stats_schema_valid(client):
    body = client.get("/datasets/demo/stats").json()
    jsonschema.validate(body, STATS_SCHEMA)


def test_stats_select_restricts_cm(client):
    body = client.get("/datasets/demo/stats?select=x3").json()
    assert len(body["cm"]) == 4
    assert all(c["selected"] == "x3" for c in body["cm"])


def test_stats_cache_determinism(client):
    b1 = client.get("/datasets/demo/stats").content
    b2 = client.get("/datasets/demo/stats").content
    assert b1 == b2


def test_scene_schema_valid_all_layouts(client):
    for url in (
        "/datasets/demo/scene?layout=linear&arcs=all",
        "/datasets/demo/scene?layout=linear&select=x1",
        "/datasets/demo/scene?layout=radial&select=x2",
        "/datasets/demo/scene?layout=heatmap&select=x1&attach=true",
        "/datasets/demo/scene?layout=pc&select=x4&attach=true",
    ):
        r = client.get(url)
        assert r.status_code == 200, url
        jsonschema.validate(r.json(), SCENE_SCHEMA)


def test_scene_linear_all_link_count_matches_stats(client):
    stats = client.get("/datasets/demo/stats").json()
    positive = sum(1 for p in stats["pairs"] if p["jm"] > 0)
    scene = client.get("/datasets/demo/scene?layout=linear&arcs=all").json()
    assert len(scene["links"]) == positive


def test_scene_radial_without_select_400(client):
    assert client.get("/datasets/demo/scene?layout=radial").status_code == 400


def test_scene_pc_with_categorical_400(client):
    client.post("/datasets?id=cat", content=b"a,c\n1,x\n2,y\n")
    assert client.get("/datasets/cat/scene?layout=pc").status_code == 400


def test_scene_heatmap_rows_sorted_by_selection(client):
    scene = client.get("/datasets/demo/scene?layout=heatmap&select=x2").json()
    ds = random_masked_dataset(seed=88, n_vars=5, n_items=100)
    var = ds.variable("x2")
    order = scene["cells"]["order"]
    recorded = [i for i in order if not var.mask[i]]
    vals = [var.values[i] for i in recorded]
    assert vals == sorted(vals)
    assert all(var.mask[i] for i in order[len(recorded):])


def test_schema_endpoints(client):
    assert client.get("/schema/stats").json() == STATS_SCHEMA
    assert client.get("/schema/scene").json() == SCENE_SCHEMA


def test_unknown_layout_400(client):
    assert client.get("/datasets/demo/scene?layout=spiral").status_code == 400
