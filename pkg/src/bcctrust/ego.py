"""Ego subnetwork extraction.

An ego subnetwork is the induced subgraph on the ego, everything the ego
reaches (out-component), everything that reaches the ego (in-component),
and all links among those nodes. Reachability is unbounded: suspects can
sit many hops from the central nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .errors import NodeNotFoundError
from .graph import TrustGraph, induced_subgraph


@dataclass(frozen=True)
class EgoNetwork:
    ego: int
    in_component: frozenset[int]
    out_component: frozenset[int]
    subgraph: TrustGraph

    @property
    def node_ids(self) -> frozenset[int]:
        return self.in_component | self.out_component | {self.ego}


def ego_subnetwork(graph: TrustGraph, ego: int) -> EgoNetwork:
    """Extract the ego subnetwork of ``ego`` (a registry id present in graph).

    Raises NodeNotFoundError when the ego is absent, which signals that the
    suspect simply does not appear in this k-BCC network.
    """
    if not graph.has_node(ego):
        raise NodeNotFoundError(f"ego node {ego} is not present in this graph")
    local = graph.to_local(ego)
    n = graph.node_count
    out_indptr, out_indices = graph.out_csr
    in_indptr, in_indices = graph.in_csr
    forward = kernels.bfs_distances(out_indptr, out_indices, n, local)
    backward = kernels.bfs_distances(in_indptr, in_indices, n, local)
    ids = graph.nodes()
    out_component = frozenset(int(v) for v in ids[forward > 0])
    in_component = frozenset(int(v) for v in ids[backward > 0])
    members = out_component | in_component | {int(ego)}
    return EgoNetwork(int(ego), in_component, out_component, induced_subgraph(graph, members))
