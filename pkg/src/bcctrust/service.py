"""HTTP service for the investigation workbench.

Loads built k-BCC graphs once at startup (immutable thereafter) and runs
the trust search per request, so /search is a pure function of the loaded
graphs and the request body. The latest successful network per (session,
k) is kept so /node dossiers can report result membership; sessions exist
only for that promote-and-rerun loop and never affect /search results.

All bodies are json; errors carry machine-readable ``stage`` and
``reason`` fields. Responses are serialized canonically (sorted keys) so
identical requests return byte-identical bodies.
"""

from __future__ import annotations

import json
import re
import threading
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .errors import NoSuspectsPresentError, UsageError
from .graph import AddressRegistry, TrustGraph, read_edge_list
from .report import network_to_dict, summary_report
from .search import SuspectList, TrustNetwork, intermediary_frequency, run_trust_search

EDGE_FILE_RE = re.compile(r"^k(\d+)\.edges\.csv$")
DEFAULT_SESSION = "default"


class SearchRequest(BaseModel):
    k: int
    suspects: list[str]
    single_path: bool = False
    session: str = Field(default=DEFAULT_SESSION, min_length=1)


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(
        content=json.dumps(payload, indent=2, sort_keys=True) + "\n",
        status_code=status_code,
        media_type="application/json",
    )


def _error(status_code: int, stage: str, reason: str) -> Response:
    return _json_response({"stage": stage, "reason": reason}, status_code)


def create_app(graphs: dict[int, TrustGraph]) -> FastAPI:
    app = FastAPI(title="bcctrust", docs_url=None, redoc_url=None)
    # the workbench is served as static files from anywhere; responses are
    # read-only analytics, so a permissive policy is fine
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])
    app.state.graphs = dict(graphs)
    # session -> k -> last successful TrustNetwork
    app.state.sessions: dict[str, dict[int, TrustNetwork]] = {}
    app.state.lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    def malformed_request(request: Request, exc: RequestValidationError) -> Response:
        first = exc.errors()[0] if exc.errors() else {}
        where = ".".join(str(part) for part in first.get("loc", ()) if part != "body")
        reason = f"{where}: {first.get('msg', 'invalid request body')}" if where else "invalid request body"
        return _error(400, "request", reason)

    @app.get("/graphs")
    def list_graphs() -> Response:
        summaries = [
            {"k": k, "nodes": g.node_count, "edges": g.edge_count}
            for k, g in sorted(app.state.graphs.items())
        ]
        return _json_response({"graphs": summaries})

    @app.post("/search")
    def search(request: SearchRequest) -> Response:
        graph = app.state.graphs.get(request.k)
        if graph is None:
            return _error(404, "search", f"no graph loaded for k={request.k}")
        try:
            suspects = SuspectList.from_addresses(request.suspects)
        except UsageError as exc:
            return _error(400, "search", str(exc))
        try:
            trustnet = run_trust_search(graph, suspects, single_path=request.single_path)
        except NoSuspectsPresentError as exc:
            return _json_response(
                {
                    "empty": True,
                    "k": request.k,
                    "absent": list(exc.absent),
                    "network": None,
                    "report": None,
                }
            )
        with app.state.lock:
            app.state.sessions.setdefault(request.session, {})[request.k] = trustnet
        return _json_response(
            {
                "empty": False,
                "k": request.k,
                "network": network_to_dict(trustnet),
                "report": summary_report(trustnet).to_dict(),
            }
        )

    @app.get("/node/{address}")
    def node_dossier(address: str, session: str = DEFAULT_SESSION) -> Response:
        known = False
        per_graph = {}
        node_ids = {}
        for k, g in sorted(app.state.graphs.items()):
            node = g.registry.resolve(address)
            present = node is not None and g.has_node(node)
            known = known or node is not None
            node_ids[k] = node
            per_graph[str(k)] = {
                "present": present,
                "in_degree": g.in_degree(node) if present else 0,
                "out_degree": g.out_degree(node) if present else 0,
            }
        if not known:
            return _error(404, "node", f"unknown address {address!r}")
        with app.state.lock:
            session_results = dict(app.state.sessions.get(session, {}))
        results = {}
        for k in sorted(app.state.graphs):
            trustnet = session_results.get(k)
            if trustnet is None:
                results[str(k)] = None
                continue
            node = node_ids[k]
            present = node is not None and trustnet.graph.has_node(node)
            roles = []
            if present:
                if any(node == mi for mi, _ in trustnet.mi_mm.values()):
                    roles.append("mi")
                if any(node == mm for _, mm in trustnet.mi_mm.values()):
                    roles.append("mm")
            intermediary_counts = {}
            if present:
                for suspect in trustnet.suspects:
                    ranked = dict(intermediary_frequency(trustnet, suspect))
                    count = ranked.get(node, 0)
                    if count:
                        address_of = trustnet.registry.reverse_resolve(suspect)
                        intermediary_counts[address_of] = count
            results[str(k)] = {
                "present": present,
                "suspect": present and node in trustnet.suspects,
                "role": roles[0] if roles else "none",
                "intermediary_counts": intermediary_counts,
            }
        return _json_response({"address": address, "graphs": per_graph, "results": results})

    return app


def load_graph_dir(path) -> dict[int, TrustGraph]:
    """Load every ``k<k>.edges.csv`` in the directory over one shared registry."""
    directory = Path(path)
    registry = AddressRegistry()
    graphs: dict[int, TrustGraph] = {}
    for entry in sorted(directory.iterdir()):
        match = EDGE_FILE_RE.match(entry.name)
        if match:
            graphs[int(match.group(1))] = read_edge_list(entry, registry)
    if not graphs:
        raise UsageError(f"no k<k>.edges.csv files found in {directory}")
    return graphs


def create_app_from_dir(path) -> FastAPI:
    return create_app(load_graph_dir(path))
