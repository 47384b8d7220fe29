"""HTTP JSON API exposing datasets, missingness statistics, and scenes.

Selection state lives entirely in each request; datasets are immutable
snapshots swapped atomically on upload, so concurrent readers never observe
partial state.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import scene as scene_mod
from .data import Dataset
from .ingest import IngestConfig, ParseError, parse_table
from .schemas import SCENE_SCHEMA, STATS_SCHEMA
from .stats import DEFAULT_BINS, randomness_report


class ApiCatalog:
    """Datasets keyed by id with a per-dataset stats cache."""

    def __init__(self):
        self._lock = threading.Lock()
        self._datasets: dict[str, Dataset] = {}
        self._stats_cache: dict[tuple, dict] = {}

    def ids(self) -> list[str]:
        with self._lock:
            return sorted(self._datasets)

    def get(self, dataset_id: str) -> Optional[Dataset]:
        with self._lock:
            return self._datasets.get(dataset_id)

    def put(self, dataset_id: str, ds: Dataset, replace: bool = True) -> bool:
        with self._lock:
            if not replace and dataset_id in self._datasets:
                return False
            self._datasets[dataset_id] = ds
            self._stats_cache = {
                k: v for k, v in self._stats_cache.items() if k[0] != dataset_id
            }
            return True

    def stats(self, dataset_id: str, bins: int, select: Optional[str]) -> dict:
        key = (dataset_id, bins, select)
        with self._lock:
            cached = self._stats_cache.get(key)
            ds = self._datasets.get(dataset_id)
        if cached is not None:
            return cached
        if ds is None:
            raise KeyError(dataset_id)
        report = randomness_report(ds, bins=bins, select=select)
        with self._lock:
            self._stats_cache[key] = report
        return report


def load_directory(catalog: ApiCatalog, data_dir: Path):
    for path in sorted(Path(data_dir).glob("*.csv")):
        with open(path, "r", encoding="utf-8") as fh:
            ds = parse_table(fh, IngestConfig())
        catalog.put(path.stem, ds)


def create_app(data_dir: Optional[str] = None, cors: bool = True) -> FastAPI:
    app = FastAPI(title="missview", version="0.1.0")
    if cors:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=["*"],
            allow_methods=["*"],
            allow_headers=["*"],
        )
    catalog = ApiCatalog()
    app.state.catalog = catalog
    if data_dir:
        load_directory(catalog, Path(data_dir))

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/schema/stats")
    def schema_stats():
        return STATS_SCHEMA

    @app.get("/schema/scene")
    def schema_scene():
        return SCENE_SCHEMA

    @app.get("/datasets")
    def list_datasets():
        out = []
        for dataset_id in catalog.ids():
            ds = catalog.get(dataset_id)
            out.append(
                {
                    "id": dataset_id,
                    "n_items": ds.n_items,
                    "variables": [
                        {"name": v.name, "kind": v.kind} for v in ds.variables
                    ],
                }
            )
        return out

    @app.post("/datasets", status_code=201)
    async def upload_dataset(
        request: Request,
        id: str = Query(...),
        delimiter: str = Query(","),
        missing_tokens: str = Query("NaN,NA,"),
    ):
        body = await request.body()
        try:
            cfg = IngestConfig(
                delimiter=delimiter,
                missing_tokens=tuple(missing_tokens.split(",")),
            )
            ds = parse_table(body, cfg)
        except (ParseError, ValueError) as e:
            raise HTTPException(status_code=400, detail=str(e))
        if not catalog.put(id, ds, replace=False):
            raise HTTPException(status_code=409, detail=f"dataset {id!r} already exists")
        return {"id": id, "n_items": ds.n_items}

    def _get_dataset(dataset_id: str) -> Dataset:
        ds = catalog.get(dataset_id)
        if ds is None:
            raise HTTPException(status_code=404, detail=f"unknown dataset {dataset_id!r}")
        return ds

    @app.get("/datasets/{dataset_id}/stats")
    def dataset_stats(
        dataset_id: str,
        bins: int = Query(DEFAULT_BINS, ge=1),
        select: Optional[str] = Query(None),
    ):
        ds = _get_dataset(dataset_id)
        if select is not None and select not in ds.variable_names:
            raise HTTPException(status_code=400, detail=f"unknown variable {select!r}")
        return catalog.stats(dataset_id, bins, select)

    @app.get("/datasets/{dataset_id}/scene")
    def dataset_scene(
        dataset_id: str,
        layout: str = Query(...),
        select: Optional[str] = Query(None),
        arcs: str = Query("selected"),
        attach: bool = Query(False),
        bins: int = Query(DEFAULT_BINS, ge=1),
    ):
        ds = _get_dataset(dataset_id)
        if layout not in ("linear", "radial", "heatmap", "pc"):
            raise HTTPException(status_code=400, detail=f"unknown layout {layout!r}")
        if arcs not in ("selected", "all"):
            raise HTTPException(status_code=400, detail=f"unknown arc mode {arcs!r}")
        if select is not None and select not in ds.variable_names:
            raise HTTPException(status_code=400, detail=f"unknown variable {select!r}")
        try:
            built = scene_mod.build_scene(
                ds,
                layout,
                selection=select,
                arc_mode="all" if arcs == "all" else "selected",
                attach_glyphs=attach,
                bins=bins,
            )
        except (ValueError, KeyError) as e:
            raise HTTPException(status_code=400, detail=str(e))
        return built.to_json_obj()

    return app
