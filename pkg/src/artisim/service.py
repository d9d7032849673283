"""HTTP/JSON service exposing the engine to the explorer UI.

Endpoints:

    GET  /api/health
    GET  /api/dataset            dataset summary
    GET  /api/weights            current weight vector and its mode
    PUT  /api/weights            replace the whole vector (or switch mode)
    GET  /api/matrix             similarity matrix at current weights
    GET  /api/graph?rule=...     graph at current weights (n=, t= params)
    POST /api/sweep              {"delta": 0.25, "rule": "maximal"}

Every response carries the dataset snapshot version so clients can
detect staleness. The session is read-mostly: the snapshot and the
current weights live in one immutable view object that is replaced
atomically, so no request observes a torn weights/snapshot pair.
Weight updates replace the whole vector; there is no per-slider patch.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, replace

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import ArtisimError, ConfigError
from .formats import (Dataset, graph_payload, save_dataset, sweep_payload)
from .graphs import GraphRule, build_graph, sweep
from .metrics import (DEFAULT_FORMULA, PerspectiveSet, WeightVector,
                      as_fraction, similarity_matrix, weights_implied,
                      weights_uniform)
from .model import CLOSURE_NONE, Artifact, with_closure


@dataclass(frozen=True)
class SessionView:
    """One consistent snapshot of everything a request needs."""

    dataset: Dataset
    artifacts: tuple[Artifact, ...]  # closure already applied
    pset: PerspectiveSet
    weights: WeightVector
    rule: GraphRule
    formula: str
    closure: str
    version: str


class SessionState:
    """Holder for the current view; replaced whole, never mutated."""

    def __init__(self, dataset: Dataset, *, weights: WeightVector | None = None,
                 rule: GraphRule | None = None, formula: str = DEFAULT_FORMULA,
                 closure: str = CLOSURE_NONE):
        self._lock = threading.Lock()
        artifacts = tuple(with_closure(a, dataset.structure, closure)
                          for a in dataset.artifacts)
        pset = dataset.perspective_set()
        if weights is None:
            # implied weighting is the default scheme for interactive use
            weights = weights_implied(pset, artifacts)
        if len(weights) != len(pset):
            raise ConfigError(f"weight vector has {len(weights)} entries "
                              f"for {len(pset)} perspectives")
        self._view = SessionView(
            dataset=dataset, artifacts=artifacts, pset=pset, weights=weights,
            rule=rule or GraphRule("maximal"), formula=formula,
            closure=closure,
            version=hashlib.sha256(save_dataset(dataset)).hexdigest()[:12])

    @property
    def view(self) -> SessionView:
        return self._view

    def set_weights(self, weights: WeightVector) -> SessionView:
        with self._lock:
            view = self._view
            if len(weights) != len(view.pset):
                raise ConfigError(
                    f"weight vector has {len(weights)} entries for "
                    f"{len(view.pset)} perspectives")
            self._view = replace(view, weights=weights)
            return self._view


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception:
        raise ConfigError("request body is not valid JSON") from None
    if not isinstance(body, dict):
        raise ConfigError("expected a JSON object")
    return body


def _weights_body(view: SessionView, body: dict) -> WeightVector:
    mode = body.get("mode", "expert")
    if mode == "uniform":
        return weights_uniform(view.pset)
    if mode == "implied":
        return weights_implied(view.pset, view.artifacts)
    if mode != "expert":
        raise ConfigError(f"unknown weights mode {mode!r}")
    raw = body.get("weights")
    if not isinstance(raw, list) or not raw:
        raise ConfigError("expert mode requires a nonempty weights list")
    try:
        entries = tuple(as_fraction(w) for w in raw)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ConfigError(f"cannot parse weights {raw!r}") from None
    return WeightVector(entries).normalize()


def _rule_from_params(view: SessionView, rule: str | None,
                      n: int | None, t: float | str | None) -> GraphRule:
    if rule is None:
        return view.rule
    if rule == "knn":
        if n is None:
            raise ConfigError("rule=knn requires the n parameter")
        return GraphRule("knn", n=n)
    if rule == "threshold":
        if t is None:
            raise ConfigError("rule=threshold requires the t parameter")
        return GraphRule("threshold", t=as_fraction(t))
    # accept compact "knn:2" spellings too
    return GraphRule.parse(rule)


def _weights_payload(view: SessionView) -> dict:
    return {
        "weights": view.weights.as_floats(),
        "normalized": view.weights.normalized,
        "mode": view.weights.mode,
        "formula": view.formula,
        "snapshot_version": view.version,
    }


def create_app(dataset: Dataset, *, weights: WeightVector | None = None,
               rule: GraphRule | None = None, formula: str = DEFAULT_FORMULA,
               closure: str = CLOSURE_NONE, ui_dir: str | None = None) -> FastAPI:
    state = SessionState(dataset, weights=weights, rule=rule, formula=formula,
                         closure=closure)
    app = FastAPI(title="artisim", version="0.1.0")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    app.state.session = state

    @app.exception_handler(ArtisimError)
    async def _artisim_error(request: Request, exc: ArtisimError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.get("/api/health")
    def health():
        return {"status": "ok", "snapshot_version": state.view.version}

    @app.get("/api/dataset")
    def dataset_summary():
        view = state.view
        ds = view.dataset
        return {
            "name": ds.metadata.get("name", ""),
            "metadata": dict(ds.metadata),
            "closure": view.closure,
            "artifacts": [
                {"id": a.id, "group": a.group, "era": a.era,
                 "size": len(a.attributes)}
                for a in ds.artifacts
            ],
            "groups": sorted({a.group for a in ds.artifacts}),
            "eras": sorted({a.era for a in ds.artifacts}),
            "perspectives": [
                {"id": p.id, "name": p.name, "size": len(p.attributes)}
                for p in view.pset
            ],
            "snapshot_version": view.version,
        }

    @app.get("/api/weights")
    def get_weights():
        return _weights_payload(state.view)

    @app.api_route("/api/weights", methods=["PUT", "POST"])
    async def put_weights(request: Request):
        body = await _json_body(request)
        view = state.set_weights(_weights_body(state.view, body))
        return _weights_payload(view)

    @app.get("/api/matrix")
    def get_matrix():
        view = state.view
        matrix = similarity_matrix(view.pset, view.weights, view.artifacts,
                                   formula=view.formula)
        return {
            "ids": list(matrix.ids),
            "values": [[float(v) for v in row] for row in matrix.values],
            "formula": matrix.formula,
            "weights": view.weights.as_floats(),
            "snapshot_version": view.version,
        }

    @app.get("/api/graph")
    def get_graph(rule: str | None = None, n: int | None = None,
                  t: str | None = None):
        view = state.view
        graph_rule = _rule_from_params(view, rule, n, t)
        matrix = similarity_matrix(view.pset, view.weights, view.artifacts,
                                   formula=view.formula)
        payload = graph_payload(build_graph(matrix, graph_rule))
        payload["snapshot_version"] = view.version
        return payload

    @app.post("/api/sweep")
    async def post_sweep(request: Request):
        body = await _json_body(request)
        if "delta" not in body:
            raise ConfigError("expected a JSON object with a delta field")
        view = state.view
        rule = _rule_from_params(view, body.get("rule"), body.get("n"),
                                 body.get("t"))
        report = sweep(view.pset, view.artifacts, as_fraction(body["delta"]),
                       rule, formula=view.formula)
        payload = sweep_payload(report)
        payload["snapshot_version"] = view.version
        return payload

    if ui_dir:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def serve(dataset: Dataset, *, host: str = "127.0.0.1", port: int = 8765,
          closure: str = CLOSURE_NONE, formula: str = DEFAULT_FORMULA,
          ui_dir: str | None = None) -> None:
    """Run the service until terminated; raises on startup failure
    (for example when the port is already bound)."""
    import uvicorn
    app = create_app(dataset, closure=closure, formula=formula, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
