"""Shortest-paths trust-network search.

For every suspect present in the graph, the search extracts the ego
subnetwork, picks its most-influential (MI) and middle-man (MM) nodes, and
collects seven labelled path sets inside that subnetwork:

  R1/R2  ego -> MI   (direct edge if it exists, else all geodesics)
  R3/R4  ego -> MM   (same fallback)
  R5     each other suspect -> MI   (all geodesics)
  R6     each other suspect -> MM   (all geodesics)
  R7     ego -> each other suspect  (all geodesics)

A subnetwork whose MI or MM selection is degenerate (tied top scores, or a
vanished measure) contributes nothing. The surviving paths merge into one
sparse trust network with per-edge provenance.

All geodesics between a pair are retrieved by default because the
intermediary-frequency analysis counts how often a node appears across
them; ``single_path=True`` keeps only the lexicographically smallest
geodesic for comparison runs.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import kernels
from .centrality import select_mi, select_mm
from .corpus import normalize_address
from .ego import ego_subnetwork
from .errors import NodeNotFoundError, NoSuspectsPresentError, UsageError
from .graph import TrustGraph

log = logging.getLogger(__name__)

R_LABELS = ("R1", "R2", "R3", "R4", "R5", "R6", "R7")


@dataclass(frozen=True)
class SuspectList:
    """Ordered suspect addresses, normalized, first occurrence wins."""

    addresses: tuple[str, ...]

    def __post_init__(self):
        if not self.addresses:
            raise UsageError("suspect list is empty")

    @classmethod
    def from_addresses(cls, items: Iterable[str]) -> "SuspectList":
        return cls(tuple(dict.fromkeys(normalize_address(a) for a in items if a.strip())))

    @classmethod
    def from_file(cls, path) -> "SuspectList":
        with open(path, encoding="utf-8") as fh:
            return cls.from_addresses(line for line in fh if line.strip())

    def resolve_present(self, graph: TrustGraph) -> tuple[list[int], list[str]]:
        """Split into (node ids present in graph, absent addresses)."""
        present: list[int] = []
        absent: list[str] = []
        for address in self.addresses:
            node = graph.registry.resolve(address)
            if node is not None and graph.has_node(node):
                present.append(node)
            else:
                absent.append(address)
        return present, absent


@dataclass(frozen=True)
class PathResult:
    """One labelled path set from a single ego subnetwork run."""

    label: str
    ego: int
    source: int
    target: int
    paths: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TrustNetwork:
    """Merged R1-R7 network with per-edge provenance."""

    graph: TrustGraph
    provenance: Mapping[tuple[int, int], frozenset[tuple[int, str]]]
    suspects: tuple[int, ...]
    mi_mm: Mapping[int, tuple[int, int]]
    path_results: tuple[PathResult, ...]
    absent: tuple[str, ...] = ()
    dropped: tuple[tuple[int, str], ...] = ()

    @property
    def registry(self):
        return self.graph.registry

    def suspects_in_network(self) -> list[int]:
        return [s for s in self.suspects if self.graph.has_node(s)]

    def mi_nodes(self) -> list[int]:
        return sorted({mi for mi, _ in self.mi_mm.values()})

    def mm_nodes(self) -> list[int]:
        return sorted({mm for _, mm in self.mi_mm.values()})


def all_geodesics(graph: TrustGraph, source: int, target: int) -> set[tuple[int, ...]]:
    """Every directed shortest path from source to target (registry ids).

    Empty set when the target is unreachable. Enumeration walks the
    shortest-path DAG backwards from the target, so only nodes on geodesics
    are ever visited.
    """
    if source == target:
        raise UsageError("geodesics are defined for distinct endpoints")
    src = graph.to_local(source)
    dst = graph.to_local(target)
    out_indptr, out_indices = graph.out_csr
    dist = kernels.bfs_distances(out_indptr, out_indices, graph.node_count, src)
    if dist[dst] < 0:
        return set()
    in_indptr, in_indices = graph.in_csr
    ids = graph.nodes()

    paths: set[tuple[int, ...]] = set()
    # stack of (node, remaining suffix from node to target), expanded by
    # stepping to predecessors one BFS level closer to the source
    stack: list[tuple[int, tuple[int, ...]]] = [(dst, (dst,))]
    while stack:
        node, suffix = stack.pop()
        if node == src:
            paths.add(tuple(int(ids[i]) for i in suffix))
            continue
        level = dist[node] - 1
        for j in range(in_indptr[node], in_indptr[node + 1]):
            pred = int(in_indices[j])
            if dist[pred] == level:
                stack.append((pred, (pred, *suffix)))
    return paths


def direct_path(graph: TrustGraph, source: int, target: int) -> tuple[int, int] | None:
    """The 1-hop path when the edge exists, else None (caller falls back)."""
    if graph.has_edge(source, target):
        return (int(source), int(target))
    return None


def _address_key(graph: TrustGraph, path: tuple[int, ...]) -> tuple[str, ...]:
    return tuple(graph.registry.reverse_resolve(n) for n in path)


def _canonical_paths(
    graph: TrustGraph, paths: set[tuple[int, ...]], single_path: bool
) -> tuple[tuple[int, ...], ...]:
    ordered = sorted(paths, key=lambda p: _address_key(graph, p))
    if single_path and ordered:
        return (ordered[0],)
    return tuple(ordered)


def run_trust_search(
    graph: TrustGraph, suspects: SuspectList, single_path: bool = False
) -> TrustNetwork:
    """Run the full search over every suspect's ego subnetwork and merge.

    Absent suspects are skipped with a diagnostic; raises
    NoSuspectsPresentError when nobody on the list is in the graph.
    """
    present, absent = suspects.resolve_present(graph)
    for address in absent:
        log.info("suspect %s is absent from the graph; skipped", address)
    if not present:
        raise NoSuspectsPresentError(tuple(absent))

    results: list[PathResult] = []
    dropped: list[tuple[int, str]] = []
    mi_mm: dict[int, tuple[int, int]] = {}

    for ego in present:
        subnet = ego_subnetwork(graph, ego)
        sub = subnet.subgraph
        mi_sel = select_mi(sub, exclude=(ego,))
        mm_sel = select_mm(sub, exclude=(ego,))
        if mi_sel.is_degenerate or mm_sel.is_degenerate:
            reason = "; ".join(
                f"{kind} {sel.status}"
                for kind, sel in (("mi", mi_sel), ("mm", mm_sel))
                if sel.is_degenerate
            )
            dropped.append((ego, reason))
            log.info(
                "dropped ego subnetwork of %s (%s)",
                graph.registry.reverse_resolve(ego),
                reason,
            )
            continue
        mi, mm = mi_sel.node, mm_sel.node
        assert mi is not None and mm is not None
        mi_mm[ego] = (mi, mm)
        others = [s for s in present if s != ego and sub.has_node(s)]

        def emit(label: str, source: int, target: int, paths: set[tuple[int, ...]]):
            canonical = _canonical_paths(sub, paths, single_path)
            if canonical:
                results.append(PathResult(label, ego, int(source), int(target), canonical))
            else:
                log.debug(
                    "no %s path %s -> %s in ego subnetwork of %s",
                    label, source, target, ego,
                )

        # ego -> MI: direct edge wins, else all geodesics
        direct = direct_path(sub, ego, mi)
        if direct is not None:
            emit("R1", ego, mi, {direct})
        else:
            emit("R2", ego, mi, all_geodesics(sub, ego, mi))
        # ego -> MM
        direct = direct_path(sub, ego, mm)
        if direct is not None:
            emit("R3", ego, mm, {direct})
        else:
            emit("R4", ego, mm, all_geodesics(sub, ego, mm))
        # other suspects -> MI / MM, ego -> other suspects
        for other in others:
            if other != mi:
                emit("R5", other, mi, all_geodesics(sub, other, mi))
            if other != mm:
                emit("R6", other, mm, all_geodesics(sub, other, mm))
            emit("R7", ego, other, all_geodesics(sub, ego, other))

    provenance: dict[tuple[int, int], set[tuple[int, str]]] = {}
    nodes: set[int] = set()
    for res in results:
        for path in res.paths:
            nodes.update(path)
            for u, v in zip(path, path[1:]):
                provenance.setdefault((u, v), set()).add((res.ego, res.label))

    merged = TrustGraph.from_edges(graph.registry, provenance.keys(), nodes=nodes)
    return TrustNetwork(
        graph=merged,
        provenance={edge: frozenset(tags) for edge, tags in provenance.items()},
        suspects=tuple(present),
        mi_mm=mi_mm,
        path_results=tuple(results),
        absent=tuple(absent),
        dropped=tuple(dropped),
    )


def intermediary_frequency(trustnet: TrustNetwork, suspect: int) -> list[tuple[int, int]]:
    """Non-suspect interior nodes of paths touching the suspect, ranked.

    Sorted by descending count, ties broken by address lexicographic order.
    """
    if suspect not in trustnet.suspects:
        raise NodeNotFoundError(f"node {suspect} is not a suspect of this trust network")
    suspect_set = set(trustnet.suspects)
    counts: Counter[int] = Counter()
    for res in trustnet.path_results:
        for path in res.paths:
            if suspect not in path:
                continue
            for node in path[1:-1]:
                if node not in suspect_set:
                    counts[node] += 1
    resolve = trustnet.registry.reverse_resolve
    return sorted(counts.items(), key=lambda item: (-item[1], resolve(item[0])))


def hop_distance(trustnet: TrustNetwork, source: int, target: int) -> int | None:
    """BFS hop count inside the merged network; None when unreachable."""
    graph = trustnet.graph
    if not graph.has_node(source):
        raise NodeNotFoundError(f"node {source} is not in the trust network")
    if not graph.has_node(target):
        raise NodeNotFoundError(f"node {target} is not in the trust network")
    out_indptr, out_indices = graph.out_csr
    dist = kernels.bfs_distances(out_indptr, out_indices, graph.node_count, graph.to_local(source))
    d = int(dist[graph.to_local(target)])
    return d if d >= 0 else None


def common_nodes(a: TrustNetwork, b: TrustNetwork) -> set[int]:
    """Nodes shared by two trust networks built over the same registry."""
    if a.registry is not b.registry:
        raise UsageError("trust networks do not share a registry")
    return {int(n) for n in a.graph.nodes()} & {int(n) for n in b.graph.nodes()}
