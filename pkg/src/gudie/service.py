"""HTTP facade over the pipeline for interactive exploration.

Sessions hold an immutable loaded graph plus cached propagation results
keyed by (vudie, ludie, h, gamma). Threshold, decay, and seed changes reuse
the cached propagation, which is what makes interactive steering cheap.
"""

from __future__ import annotations

import json
import tempfile
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import RunConfig
from .errors import (ConfigError, ExpansionBudgetError, GudieError,
                     IngestionError, UnknownNodeError)
from .expansion import ExpansionParams, seeds_expansion
from .fixtures import FIXTURE_NAMES, fixture_by_name
from .graph import PropertyGraph, load_graph
from .graphunits import induce, obtain_graphunits, units_payload
from .interest import (EdgeInterestSpec, NodeInterestSpec, edge_spec_from_dict,
                       initialize, node_spec_from_dict)
from .pipeline import run_stats
from .propagation import PropagatedInterest, PropagationParams, propagate_interest

DEFAULT_TTL_SECONDS = 3600.0


@dataclass(slots=True)
class GraphSession:
    """One loaded graph and its propagation cache."""

    graph: PropertyGraph
    created: float
    last_access: float
    cache: dict[str, tuple[Any, PropagatedInterest]] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory session registry with TTL eviction on access."""

    def __init__(self, ttl_seconds: float = DEFAULT_TTL_SECONDS):
        self.ttl = ttl_seconds
        self._sessions: dict[str, GraphSession] = {}
        self._lock = threading.Lock()

    def create(self, graph: PropertyGraph) -> str:
        session_id = uuid.uuid4().hex
        now = time.monotonic()
        with self._lock:
            self._evict(now)
            self._sessions[session_id] = GraphSession(graph, now, now)
        return session_id

    def get(self, session_id: str) -> GraphSession:
        now = time.monotonic()
        with self._lock:
            self._evict(now)
            session = self._sessions.get(session_id)
            if session is None:
                raise KeyError(session_id)
            session.last_access = now
            return session

    def _evict(self, now: float) -> None:
        expired = [sid for sid, s in self._sessions.items()
                   if now - s.last_access > self.ttl]
        for sid in expired:
            del self._sessions[sid]


class GraphUnitQuery(BaseModel):
    seeds: list[str]
    h: int | None = None
    k: float | None = None
    gamma: str | None = None
    theta: str | None = None
    vudie: dict | None = None
    ludie: dict | None = None
    edge_mode: str | None = None


def _resolve_specs(query: GraphUnitQuery,
                   defaults: RunConfig) -> tuple[NodeInterestSpec, EdgeInterestSpec]:
    vudie = node_spec_from_dict(query.vudie) if query.vudie is not None else defaults.vudie
    ludie = edge_spec_from_dict(query.ludie) if query.ludie is not None else defaults.ludie
    return vudie, ludie


def _propagation_cache_key(vudie: NodeInterestSpec, ludie: EdgeInterestSpec,
                           hops: int, gamma: str) -> str:
    return json.dumps(
        {"vudie": vudie.to_dict(), "ludie": ludie.to_dict(), "h": hops, "gamma": gamma},
        sort_keys=True,
    )


def create_app(ttl_seconds: float = DEFAULT_TTL_SECONDS,
               budget: int | None = None) -> FastAPI:
    app = FastAPI(title="gudie", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )
    store = SessionStore(ttl_seconds)
    defaults = RunConfig()
    if budget is not None:
        defaults.budget = budget

    def get_session(session_id: str) -> GraphSession:
        try:
            return store.get(session_id)
        except KeyError:
            raise HTTPException(404, f"unknown session {session_id!r}") from None

    def cached_propagation(session: GraphSession, vudie: NodeInterestSpec,
                           ludie: EdgeInterestSpec, hops: int, gamma: str):
        key = _propagation_cache_key(vudie, ludie, hops, gamma)
        # single-flight: concurrent misses for one session compute once
        with session.lock:
            hit = session.cache.get(key)
            if hit is None:
                state = initialize(session.graph, vudie, ludie)
                propagated = propagate_interest(
                    session.graph, state, PropagationParams(hops=hops, aggregator=gamma))
                hit = (state, propagated)
                session.cache[key] = hit
        return hit

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/sessions")
    async def create_session(request: Request) -> dict:
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            nodes_file = form.get("nodes")
            tx_file = form.get("transactions")
            if nodes_file is None or tx_file is None:
                raise HTTPException(
                    400, "multipart upload needs 'nodes' and 'transactions' files")
            try:
                with tempfile.TemporaryDirectory() as tmp:
                    nodes_path = Path(tmp) / "nodes.csv"
                    tx_path = Path(tmp) / "transactions.csv"
                    nodes_path.write_bytes(await nodes_file.read())
                    tx_path.write_bytes(await tx_file.read())
                    graph = load_graph(nodes_path, tx_path)
            except IngestionError as exc:
                raise HTTPException(400, f"ingestion failed: {exc}") from None
        else:
            try:
                body = await request.json()
            except Exception:
                raise HTTPException(
                    400, "expected a multipart CSV pair or a JSON fixture request"
                ) from None
            if not isinstance(body, dict) or "fixture" not in body:
                raise HTTPException(
                    400, f"JSON body must name a fixture, one of {list(FIXTURE_NAMES)}")
            try:
                graph = fixture_by_name(str(body["fixture"])).graph
            except ConfigError as exc:
                raise HTTPException(400, str(exc)) from None
        session_id = store.create(graph)
        return {"session_id": session_id, "summary": graph.summary()}

    @app.get("/sessions/{session_id}/summary")
    def session_summary(session_id: str) -> dict:
        return get_session(session_id).graph.summary()

    @app.post("/sessions/{session_id}/graphunits")
    def query_graphunit(session_id: str, query: GraphUnitQuery):
        session = get_session(session_id)
        graph = session.graph
        if not query.seeds:
            raise HTTPException(400, "at least one seed is required")
        try:
            vudie, ludie = _resolve_specs(query, defaults)
            hops = query.h if query.h is not None else defaults.hops
            gamma = query.gamma if query.gamma is not None else defaults.gamma
            threshold = query.k if query.k is not None else defaults.threshold
            theta = query.theta if query.theta is not None else defaults.theta
            edge_mode = query.edge_mode if query.edge_mode is not None else defaults.edge_mode
            params = ExpansionParams(threshold=threshold, decay=theta)
            PropagationParams(hops=hops, aggregator=gamma)  # validates h and gamma
            if edge_mode not in ("induced", "path_edges"):
                raise ValueError(f"unknown edge mode {edge_mode!r}")
        except (ConfigError, ValueError) as exc:
            raise HTTPException(400, str(exc)) from None

        for seed in query.seeds:
            if not graph.has_node(seed):
                raise HTTPException(404, f"unknown seed {seed!r}")
        try:
            state, propagated = cached_propagation(session, vudie, ludie, hops, gamma)
            index = seeds_expansion(graph, propagated, query.seeds, params,
                                    budget=defaults.budget)
            units = {seed: induce(graph, unit, edge_mode)
                     for seed, unit in obtain_graphunits(index).items()}
        except ExpansionBudgetError as exc:
            return JSONResponse(
                status_code=409,
                content={"detail": str(exc), "partial_result": False},
            )
        except ValueError as exc:
            raise HTTPException(400, str(exc)) from None
        return units_payload(graph, units, propagated.scores, state.edge_scores,
                             run_stats(index))

    @app.get("/sessions/{session_id}/neighborhood")
    def neighborhood(session_id: str, node: str, radius: int = 1):
        session = get_session(session_id)
        graph = session.graph
        if radius < 1:
            raise HTTPException(400, f"radius must be >= 1, got {radius}")
        if not graph.has_node(node):
            raise HTTPException(404, f"unknown node {node!r}")

        center = graph.index_of(node)
        visited = {center}
        frontier = [center]
        for _ in range(radius):
            next_frontier = []
            for i in frontier:
                nbrs, _ = graph.neighbors_of_index(i)
                for m in nbrs:
                    m = int(m)
                    if m not in visited:
                        visited.add(m)
                        next_frontier.append(m)
            frontier = next_frontier

        # reuse scores from the default-parameter propagation cache when warm
        default_key = _propagation_cache_key(defaults.vudie, defaults.ludie,
                                             defaults.hops, defaults.gamma)
        cached = session.cache.get(default_key)
        node_scores = cached[1].scores if cached else None
        edge_scores = cached[0].edge_scores if cached else None

        members = sorted(visited, key=graph.id_of)
        node_rows = [
            {
                "id": graph.id_of(i),
                "type": graph.nodes[i].node_type,
                "score": float(node_scores[i]) if node_scores is not None else None,
            }
            for i in members
        ]
        edge_rows = []
        seen = set()
        for i in visited:
            nbrs, eids = graph.neighbors_of_index(i)
            for m, e in zip(nbrs, eids):
                e = int(e)
                if int(m) in visited and e not in seen:
                    seen.add(e)
                    edge = graph.edges[e]
                    src, dst = sorted((graph.id_of(edge.u), graph.id_of(edge.v)))
                    edge_rows.append({
                        "src": src,
                        "dst": dst,
                        "score": float(edge_scores[e]) if edge_scores is not None else None,
                        "fraud_rate": sum(t.is_fraud for t in edge.transactions)
                                      / len(edge.transactions),
                    })
        edge_rows.sort(key=lambda row: (row["src"], row["dst"]))
        return {"center": node, "radius": radius, "nodes": node_rows, "edges": edge_rows}

    @app.exception_handler(GudieError)
    def handle_gudie_error(request: Request, exc: GudieError):
        status = 400
        if isinstance(exc, UnknownNodeError):
            status = 404
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    return app


app = create_app()
