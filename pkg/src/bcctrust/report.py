"""Trust-network exports and the summary report.

Exports are byte-deterministic: nodes sort by address, edges by
(src, dst) address pair, and every mapping serializes with sorted keys.
The json format round-trips (import_network restores an equivalent
TrustNetwork); graphml and dot exist for external renderers and carry the
same node/edge attributes:

  node: address (string), suspect (bool), role (none|mi|mm)
  edge: labels (comma-joined R-labels)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any
from xml.sax.saxutils import escape

from .errors import UsageError
from .graph import AddressRegistry, TrustGraph
from .search import PathResult, TrustNetwork, hop_distance, intermediary_frequency

EXPORT_FORMATS = ("json", "graphml", "dot")
FORMAT_NAME = "bcc-trust-network"
FORMAT_VERSION = 1
TOP_INTERMEDIARIES = 5


def _node_role(trustnet: TrustNetwork, node: int) -> str:
    # a node can in principle top both measures; mi wins for the single
    # role attribute, the mi_mm map keeps the full identities
    if any(node == mi for mi, _ in trustnet.mi_mm.values()):
        return "mi"
    if any(node == mm for _, mm in trustnet.mi_mm.values()):
        return "mm"
    return "none"


def _sorted_nodes(trustnet: TrustNetwork) -> list[tuple[str, int]]:
    resolve = trustnet.registry.reverse_resolve
    return sorted((resolve(int(n)), int(n)) for n in trustnet.graph.nodes())


def _sorted_edges(trustnet: TrustNetwork) -> list[tuple[str, str, tuple[int, int]]]:
    resolve = trustnet.registry.reverse_resolve
    return sorted((resolve(u), resolve(v), (u, v)) for u, v in trustnet.graph.edges())


def _edge_labels(trustnet: TrustNetwork, edge: tuple[int, int]) -> list[str]:
    return sorted({label for _, label in trustnet.provenance.get(edge, frozenset())})


def network_to_dict(trustnet: TrustNetwork) -> dict[str, Any]:
    """The canonical json document structure for a trust network."""
    resolve = trustnet.registry.reverse_resolve
    suspect_set = set(trustnet.suspects)
    nodes = [
        {
            "address": address,
            "suspect": node in suspect_set,
            "role": _node_role(trustnet, node),
        }
        for address, node in _sorted_nodes(trustnet)
    ]
    edges = [
        {
            "src": src,
            "dst": dst,
            "labels": sorted(
                ({"ego": resolve(ego), "label": label} for ego, label in trustnet.provenance[edge]),
                key=lambda tag: (tag["label"], tag["ego"]),
            ),
        }
        for src, dst, edge in _sorted_edges(trustnet)
    ]
    paths = [
        {
            "label": res.label,
            "ego": resolve(res.ego),
            "source": resolve(res.source),
            "target": resolve(res.target),
            "paths": [[resolve(n) for n in p] for p in res.paths],
        }
        for res in sorted(
            trustnet.path_results,
            key=lambda r: (r.label, resolve(r.ego), resolve(r.source), resolve(r.target)),
        )
    ]
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "nodes": nodes,
        "edges": edges,
        "suspects": [resolve(s) for s in trustnet.suspects],
        "mi_mm": {
            resolve(ego): {"mi": resolve(mi), "mm": resolve(mm)}
            for ego, (mi, mm) in trustnet.mi_mm.items()
        },
        "paths": paths,
        "absent": list(trustnet.absent),
        "dropped": [
            {"ego": resolve(ego), "reason": reason} for ego, reason in trustnet.dropped
        ],
    }


def _to_json(trustnet: TrustNetwork) -> str:
    return json.dumps(network_to_dict(trustnet), indent=2, sort_keys=True) + "\n"


def _to_graphml(trustnet: TrustNetwork) -> str:
    suspect_set = set(trustnet.suspects)
    nodes = _sorted_nodes(trustnet)
    local = {node: i for i, (_, node) in enumerate(nodes)}
    lines = [
        '<?xml version="1.0" encoding="utf-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="d_address" for="node" attr.name="address" attr.type="string"/>',
        '  <key id="d_suspect" for="node" attr.name="suspect" attr.type="boolean"/>',
        '  <key id="d_role" for="node" attr.name="role" attr.type="string"/>',
        '  <key id="d_labels" for="edge" attr.name="labels" attr.type="string"/>',
        '  <graph id="trust" edgedefault="directed">',
    ]
    for address, node in nodes:
        lines.append(f'    <node id="n{local[node]}">')
        lines.append(f'      <data key="d_address">{escape(address)}</data>')
        lines.append(f'      <data key="d_suspect">{"true" if node in suspect_set else "false"}</data>')
        lines.append(f'      <data key="d_role">{_node_role(trustnet, node)}</data>')
        lines.append("    </node>")
    for _, _, edge in _sorted_edges(trustnet):
        labels = ",".join(_edge_labels(trustnet, edge))
        lines.append(f'    <edge source="n{local[edge[0]]}" target="n{local[edge[1]]}">')
        lines.append(f'      <data key="d_labels">{escape(labels)}</data>')
        lines.append("    </edge>")
    lines.append("  </graph>")
    lines.append("</graphml>")
    return "\n".join(lines) + "\n"


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_dot(trustnet: TrustNetwork) -> str:
    suspect_set = set(trustnet.suspects)
    lines = ["digraph trust {"]
    for address, node in _sorted_nodes(trustnet):
        attrs = [f"suspect={'true' if node in suspect_set else 'false'}", f"role={_node_role(trustnet, node)}"]
        lines.append(f'  {_dot_quote(address)} [{" ".join(attrs)}];')
    for src, dst, edge in _sorted_edges(trustnet):
        labels = ",".join(_edge_labels(trustnet, edge))
        lines.append(f'  {_dot_quote(src)} -> {_dot_quote(dst)} [labels="{labels}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_network(trustnet: TrustNetwork, fmt: str) -> str:
    """Serialize the network; deterministic bytes for identical inputs."""
    if fmt == "json":
        return _to_json(trustnet)
    if fmt == "graphml":
        return _to_graphml(trustnet)
    if fmt == "dot":
        return _to_dot(trustnet)
    raise UsageError(f"unknown export format {fmt!r} (expected one of {', '.join(EXPORT_FORMATS)})")


def import_network(text: str, registry: AddressRegistry | None = None) -> TrustNetwork:
    """Rebuild a TrustNetwork from its json export."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not a trust network document: {exc.msg}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise UsageError("not a trust network document")
    if registry is None:
        registry = AddressRegistry()
    add = registry.add
    nodes = [add(n["address"]) for n in doc["nodes"]]
    provenance = {
        (add(e["src"]), add(e["dst"])): frozenset(
            (add(tag["ego"]), tag["label"]) for tag in e["labels"]
        )
        for e in doc["edges"]
    }
    graph = TrustGraph.from_edges(registry, provenance.keys(), nodes=nodes)
    path_results = tuple(
        PathResult(
            label=p["label"],
            ego=add(p["ego"]),
            source=add(p["source"]),
            target=add(p["target"]),
            paths=tuple(tuple(add(a) for a in path) for path in p["paths"]),
        )
        for p in doc["paths"]
    )
    return TrustNetwork(
        graph=graph,
        provenance=provenance,
        suspects=tuple(add(a) for a in doc["suspects"]),
        mi_mm={
            add(ego): (add(pair["mi"]), add(pair["mm"]))
            for ego, pair in doc["mi_mm"].items()
        },
        path_results=path_results,
        absent=tuple(doc.get("absent", ())),
        dropped=tuple((add(d["ego"]), d["reason"]) for d in doc.get("dropped", ())),
    )


@dataclass(frozen=True)
class SuspectSummary:
    address: str
    in_network: bool
    hops_to_mi: dict[str, int | None]
    hops_to_mm: dict[str, int | None]
    end_node: bool
    top_intermediaries: list[tuple[str, int]]


@dataclass(frozen=True)
class NetworkReport:
    node_count: int
    edge_count: int
    mi_addresses: list[str]
    mm_addresses: list[str]
    suspects: list[SuspectSummary]
    end_nodes: list[str]
    absent: list[str]
    dropped: list[dict[str, str]]

    def to_dict(self) -> dict[str, Any]:
        return {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "mi": self.mi_addresses,
            "mm": self.mm_addresses,
            "suspects": [
                {
                    "address": s.address,
                    "in_network": s.in_network,
                    "hops_to_mi": s.hops_to_mi,
                    "hops_to_mm": s.hops_to_mm,
                    "end_node": s.end_node,
                    "top_intermediaries": [
                        {"address": a, "count": c} for a, c in s.top_intermediaries
                    ],
                }
                for s in self.suspects
            ],
            "end_nodes": self.end_nodes,
            "absent": self.absent,
            "dropped": self.dropped,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [
            f"trust network: {self.node_count} nodes, {self.edge_count} edges",
            f"MI: {', '.join(self.mi_addresses) or '-'}",
            f"MM: {', '.join(self.mm_addresses) or '-'}",
            "",
            "suspects:",
        ]
        for s in self.suspects:
            if not s.in_network:
                lines.append(f"  {s.address}: not in network")
                continue
            hops_mi = ", ".join(f"{a}={h if h is not None else 'unreachable'}" for a, h in s.hops_to_mi.items())
            hops_mm = ", ".join(f"{a}={h if h is not None else 'unreachable'}" for a, h in s.hops_to_mm.items())
            flags = " [end node]" if s.end_node else ""
            lines.append(f"  {s.address}{flags}")
            lines.append(f"    hops to MI: {hops_mi or '-'}")
            lines.append(f"    hops to MM: {hops_mm or '-'}")
            if s.top_intermediaries:
                ranked = ", ".join(f"{a} ({c})" for a, c in s.top_intermediaries)
                lines.append(f"    intermediaries: {ranked}")
        if self.absent:
            lines.append("")
            lines.append("absent suspects: " + ", ".join(self.absent))
        if self.dropped:
            lines.append("")
            for item in self.dropped:
                lines.append(f"dropped ego {item['ego']}: {item['reason']}")
        return "\n".join(lines) + "\n"


def summary_report(trustnet: TrustNetwork) -> NetworkReport:
    """Per-suspect hop distances, intermediary rankings, and end-node flags."""
    resolve = trustnet.registry.reverse_resolve
    mi_nodes = trustnet.mi_nodes()
    mm_nodes = trustnet.mm_nodes()
    summaries = []
    end_nodes = []
    for suspect in trustnet.suspects:
        address = resolve(suspect)
        in_network = trustnet.graph.has_node(suspect)
        if not in_network:
            summaries.append(SuspectSummary(address, False, {}, {}, False, []))
            continue
        hops_mi = {resolve(mi): hop_distance(trustnet, suspect, mi) for mi in mi_nodes}
        hops_mm = {resolve(mm): hop_distance(trustnet, suspect, mm) for mm in mm_nodes}
        end_node = trustnet.graph.out_degree(suspect) == 0
        if end_node:
            end_nodes.append(address)
        ranked = intermediary_frequency(trustnet, suspect)[:TOP_INTERMEDIARIES]
        summaries.append(
            SuspectSummary(
                address,
                True,
                hops_mi,
                hops_mm,
                end_node,
                [(resolve(n), int(c)) for n, c in ranked],
            )
        )
    return NetworkReport(
        node_count=trustnet.graph.node_count,
        edge_count=trustnet.graph.edge_count,
        mi_addresses=[resolve(n) for n in mi_nodes],
        mm_addresses=[resolve(n) for n in mm_nodes],
        suspects=summaries,
        end_nodes=end_nodes,
        absent=list(trustnet.absent),
        dropped=[{"ego": resolve(e), "reason": r} for e, r in trustnet.dropped],
    )
